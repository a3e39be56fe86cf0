//! Abelian group arithmetic over `Z^k` and finite products of cyclic groups.
//!
//! Elements are fixed-length coordinate vectors. In a finite product every
//! coordinate is kept reduced into `[0, n_i)`, so two elements are equal
//! exactly when their coordinate vectors are.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Largest subset accepted by the brute-force compatible-order search.
pub const COMPATIBLE_ORDER_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupCtx {
    /// `Z^rank`.
    FreeAbelian { rank: usize },
    /// `Z/n_1 x ... x Z/n_t`, every modulus at least 2.
    FiniteProduct { moduli: Vec<i64> },
}

/// `p(G)`: the least size of a nonzero finite subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PValue {
    Finite(u64),
    Infinite,
}

impl fmt::Display for PValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PValue::Finite(p) => write!(f, "{p}"),
            PValue::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl GroupCtx {
    pub fn free(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Domain("free abelian rank must be at least 1".into()));
        }
        Ok(GroupCtx::FreeAbelian { rank })
    }

    pub fn finite(moduli: Vec<i64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::Domain(
                "a finite product needs at least one modulus".into(),
            ));
        }
        if let Some(bad) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::Domain(format!("modulus {bad} is below 2")));
        }
        Ok(GroupCtx::FiniteProduct { moduli })
    }

    pub fn cyclic(n: i64) -> Result<Self> {
        Self::finite(vec![n])
    }

    pub fn integers() -> Self {
        GroupCtx::FreeAbelian { rank: 1 }
    }

    pub fn dim(&self) -> usize {
        match self {
            GroupCtx::FreeAbelian { rank } => *rank,
            GroupCtx::FiniteProduct { moduli } => moduli.len(),
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        matches!(self, GroupCtx::FreeAbelian { .. })
    }

    /// Total number of elements, `None` for `Z^k`.
    pub fn order(&self) -> Option<u128> {
        match self {
            GroupCtx::FreeAbelian { .. } => None,
            GroupCtx::FiniteProduct { moduli } => moduli
                .iter()
                .try_fold(1u128, |acc, &n| acc.checked_mul(n as u128)),
        }
    }

    /// Builds an element, reducing coordinates for finite products.
    pub fn element(&self, coords: impl Into<Vec<i64>>) -> Result<GroupElement> {
        let mut coords = coords.into();
        if coords.len() != self.dim() {
            return Err(Error::Structural(format!(
                "element has {} coordinates, group has dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        if let GroupCtx::FiniteProduct { moduli } = self {
            for (c, &n) in coords.iter_mut().zip(moduli) {
                *c = c.rem_euclid(n);
            }
        }
        Ok(GroupElement(coords))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.dim()])
    }

    /// Checks that `x` has the right dimension and is canonically reduced.
    pub fn check(&self, x: &GroupElement) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::Structural(format!(
                "element {x} has dimension {}, group has dimension {}",
                x.dim(),
                self.dim()
            )));
        }
        if let GroupCtx::FiniteProduct { moduli } = self {
            if x.0.iter().zip(moduli).any(|(&c, &n)| c < 0 || c >= n) {
                return Err(Error::Structural(format!("element {x} is not reduced")));
            }
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        let coords = match self {
            GroupCtx::FreeAbelian { .. } => {
                x.0.iter()
                    .zip(&y.0)
                    .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
                    .collect::<Result<Vec<_>>>()?
            }
            GroupCtx::FiniteProduct { moduli } => {
                x.0.iter()
                    .zip(&y.0)
                    .zip(moduli)
                    .map(|((&a, &b), &n)| ((a as i128 + b as i128) % n as i128) as i64)
                    .collect()
            }
        };
        Ok(GroupElement(coords))
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        let coords = match self {
            GroupCtx::FreeAbelian { .. } => {
                x.0.iter()
                    .map(|a| a.checked_neg().ok_or(Error::Overflow))
                    .collect::<Result<Vec<_>>>()?
            }
            GroupCtx::FiniteProduct { moduli } => {
                x.0.iter().zip(moduli).map(|(&a, &n)| (n - a) % n).collect()
            }
        };
        Ok(GroupElement(coords))
    }

    /// The `m`-fold sum `x + ... + x`.
    pub fn scalar_mul(&self, m: i64, x: &GroupElement) -> Result<GroupElement> {
        if m < 1 {
            return Err(Error::Domain(format!("multiplier {m} must be at least 1")));
        }
        self.check(x)?;
        let coords = match self {
            GroupCtx::FreeAbelian { .. } => {
                x.0.iter()
                    .map(|a| a.checked_mul(m).ok_or(Error::Overflow))
                    .collect::<Result<Vec<_>>>()?
            }
            GroupCtx::FiniteProduct { moduli } => {
                x.0.iter()
                    .zip(moduli)
                    .map(|(&a, &n)| ((a as i128 * m as i128) % n as i128) as i64)
                    .collect()
            }
        };
        Ok(GroupElement(coords))
    }

    /// Additive order of `x`; `None` means infinite.
    pub fn element_order(&self, x: &GroupElement) -> Result<Option<u64>> {
        self.check(x)?;
        match self {
            GroupCtx::FreeAbelian { .. } => Ok(if x.is_zero() { Some(1) } else { None }),
            GroupCtx::FiniteProduct { moduli } => {
                let mut ord: u64 = 1;
                for (&c, &n) in x.0.iter().zip(moduli) {
                    let k = (n / gcd(c, n)) as u64;
                    ord = lcm(ord, k);
                }
                Ok(Some(ord))
            }
        }
    }

    pub fn p_of_g(&self) -> PValue {
        match self {
            GroupCtx::FreeAbelian { .. } => PValue::Infinite,
            GroupCtx::FiniteProduct { moduli } => PValue::Finite(
                moduli
                    .iter()
                    .map(|&n| least_prime_factor(n as u64))
                    .min()
                    .expect("finite product has at least one modulus"),
            ),
        }
    }

    /// Lexicographic comparison; only defined on torsion-free groups.
    pub fn lex_compare(&self, x: &GroupElement, y: &GroupElement) -> Result<Ordering> {
        if !self.is_torsion_free() {
            return Err(Error::UnsupportedOrder(
                "a group with torsion admits no compatible total order".into(),
            ));
        }
        self.check(x)?;
        self.check(y)?;
        Ok(x.0.cmp(&y.0))
    }

    /// `{a, 2a, ..., ma}` listed by multiplier. Errors when two multiples coincide.
    pub fn multiples(&self, a: &GroupElement, m: i64) -> Result<Vec<GroupElement>> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::Domain("generator must be nonzero".into()));
        }
        if m < 1 {
            return Err(Error::Domain(format!("m = {m} must be at least 1")));
        }
        if let Some(ord) = self.element_order(a)? {
            if (m as u64) >= ord {
                return Err(Error::TorsionCollision(format!(
                    "{a} has order {ord}, not above m = {m}"
                )));
            }
        }
        (1..=m).map(|i| self.scalar_mul(i, a)).collect()
    }

    /// `[m]_a` with its order: lexicographic on `Z^k` (reversed multiplier
    /// order when `a` is negative), multiplier order with `0` below on finite
    /// products.
    pub fn m_bracket(&self, a: &GroupElement, m: i64) -> Result<OrderedSubset> {
        let elems = self.multiples(a, m)?;
        match self {
            GroupCtx::FreeAbelian { .. } => OrderedSubset::lexicographic(self, elems),
            GroupCtx::FiniteProduct { .. } => OrderedSubset::from_ascending(self, elems, Some(0)),
        }
    }

    /// Whether `x` is strictly above zero lexicographically.
    pub fn is_positive_element(&self, x: &GroupElement) -> Result<bool> {
        Ok(self.lex_compare(x, &self.zero())? == Ordering::Greater)
    }
}

pub fn add(ctx: &GroupCtx, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
    ctx.add(x, y)
}

pub fn scalar_mul(ctx: &GroupCtx, m: i64, x: &GroupElement) -> Result<GroupElement> {
    ctx.scalar_mul(m, x)
}

pub fn p_of_g(ctx: &GroupCtx) -> PValue {
    ctx.p_of_g()
}

pub fn m_bracket(ctx: &GroupCtx, a: &GroupElement, m: i64) -> Result<OrderedSubset> {
    ctx.m_bracket(a, m)
}

/// `A + B`, deduplicated.
pub fn sumset(
    ctx: &GroupCtx,
    a: &BTreeSet<GroupElement>,
    b: &BTreeSet<GroupElement>,
) -> Result<BTreeSet<GroupElement>> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(ctx.add(x, y)?);
        }
    }
    Ok(out)
}

/// `ceil(log2(p))`, `None` standing for infinity.
pub fn ceil_log2(p: PValue) -> Option<u32> {
    match p {
        PValue::Infinite => None,
        PValue::Finite(0) | PValue::Finite(1) => Some(0),
        PValue::Finite(p) => Some(u64::BITS - (p - 1).leading_zeros()),
    }
}

/// `m < ceil(log2 p(G)) / 2`; always true on torsion-free groups.
pub fn sufficiently_small(ctx: &GroupCtx, m: i64) -> bool {
    match ceil_log2(ctx.p_of_g()) {
        None => true,
        Some(c) => 2 * (m as i128) < c as i128,
    }
}

/// The set `E(M) ∪ E(N) ∪ (E(M)+E(N)) ∪ {n*y : y ∈ E(N)} ∪ {0}`.
pub fn total_small_set(
    ctx: &GroupCtx,
    em: &BTreeSet<GroupElement>,
    en: &BTreeSet<GroupElement>,
    n: i64,
) -> Result<BTreeSet<GroupElement>> {
    let mut all: BTreeSet<GroupElement> = em.union(en).cloned().collect();
    all.extend(sumset(ctx, em, en)?);
    for y in en {
        all.insert(ctx.scalar_mul(n, y)?);
    }
    all.insert(ctx.zero());
    Ok(all)
}

/// Whether the set from [`total_small_set`] is smaller than `ceil(log2 p(G))`.
pub fn total_small_condition(
    ctx: &GroupCtx,
    em: &BTreeSet<GroupElement>,
    en: &BTreeSet<GroupElement>,
    n: i64,
) -> Result<bool> {
    match ceil_log2(ctx.p_of_g()) {
        None => Ok(true),
        Some(c) => Ok((total_small_set(ctx, em, en, n)?.len() as u64) < c as u64),
    }
}

/// `n < max{2, (-5 + sqrt(5 + 4*ceil(log2 p(G)))) / 2}`, evaluated exactly as
/// `n < 2 || (2n + 5)^2 < 5 + 4*ceil(log2 p(G))`.
pub fn paving_rank_admissible(ctx: &GroupCtx, n: i64) -> bool {
    if n < 2 {
        return true;
    }
    match ceil_log2(ctx.p_of_g()) {
        None => true,
        Some(c) => {
            let lhs = (2 * n as i128 + 5).pow(2);
            lhs < 5 + 4 * c as i128
        }
    }
}

/// A finite subset together with a total order on it.
///
/// `elements` is stored ascending. `zero_position` is the number of elements
/// strictly below `0` in the ambient order, when that is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedSubset {
    ctx: GroupCtx,
    elements: Vec<GroupElement>,
    zero_position: Option<usize>,
    compatible: bool,
}

impl OrderedSubset {
    /// Orders `elems` lexicographically. Torsion-free groups only.
    pub fn lexicographic(
        ctx: &GroupCtx,
        elems: impl IntoIterator<Item = GroupElement>,
    ) -> Result<Self> {
        if !ctx.is_torsion_free() {
            return Err(Error::UnsupportedOrder(
                "lexicographic order requires a torsion-free group".into(),
            ));
        }
        let set: BTreeSet<GroupElement> = elems.into_iter().collect();
        for x in &set {
            ctx.check(x)?;
        }
        let zero = ctx.zero();
        let zero_position = set.iter().filter(|x| **x < zero).count();
        let elements: Vec<_> = set.into_iter().collect();
        Ok(Self::build(ctx, elements, Some(zero_position)))
    }

    /// Takes the given sequence as the order, smallest first.
    pub fn from_ascending(
        ctx: &GroupCtx,
        elements: Vec<GroupElement>,
        zero_position: Option<usize>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for x in &elements {
            ctx.check(x)?;
            if !seen.insert(x) {
                return Err(Error::Domain(format!("element {x} listed twice")));
            }
        }
        let zero = ctx.zero();
        if let Some(k) = elements.iter().position(|x| *x == zero) {
            if zero_position.is_some_and(|z| z != k) {
                return Err(Error::Domain(
                    "zero position disagrees with the listed order".into(),
                ));
            }
            return Ok(Self::build(ctx, elements, Some(k)));
        }
        if zero_position.is_some_and(|z| z > elements.len()) {
            return Err(Error::Domain("zero position out of range".into()));
        }
        Ok(Self::build(ctx, elements, zero_position))
    }

    fn build(ctx: &GroupCtx, elements: Vec<GroupElement>, zero_position: Option<usize>) -> Self {
        let compatible = order_is_compatible(ctx, &elements);
        OrderedSubset {
            ctx: ctx.clone(),
            elements,
            zero_position,
            compatible,
        }
    }

    pub fn ctx(&self) -> &GroupCtx {
        &self.ctx
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_compatible(&self) -> bool {
        self.compatible
    }

    pub fn position(&self, x: &GroupElement) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }

    pub fn compare(&self, x: &GroupElement, y: &GroupElement) -> Option<Ordering> {
        Some(self.position(x)?.cmp(&self.position(y)?))
    }

    pub fn extrema(&self) -> Result<(GroupElement, GroupElement)> {
        match (self.elements.first(), self.elements.last()) {
            (Some(lo), Some(hi)) => Ok((lo.clone(), hi.clone())),
            _ => Err(Error::Domain("extrema of an empty set".into())),
        }
    }

    /// Every element strictly above `0`.
    pub fn is_positive(&self) -> Result<bool> {
        if self.elements.is_empty() {
            return Err(Error::Domain("positivity of an empty set".into()));
        }
        let z = self.zero_position.ok_or_else(|| {
            Error::UnsupportedOrder("the position of 0 in this order is unknown".into())
        })?;
        Ok(z == 0 && !self.elements[0].is_zero())
    }
}

/// Checks `a ⪯ b ⇒ a+c ⪯ b+c` for every triple whose translates stay inside the set.
fn order_is_compatible(ctx: &GroupCtx, ascending: &[GroupElement]) -> bool {
    let pos: HashMap<&GroupElement, usize> =
        ascending.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let rank: Vec<usize> = (0..ascending.len()).collect();
    permutation_is_compatible(&rank, &translation_table(ctx, ascending, &pos))
}

/// `table[i][k] = Some(j)` when `elems[i] + elems[k] == elems[j]`.
fn translation_table(
    ctx: &GroupCtx,
    elems: &[GroupElement],
    pos: &HashMap<&GroupElement, usize>,
) -> Vec<Vec<Option<usize>>> {
    elems
        .iter()
        .map(|x| {
            elems
                .iter()
                .map(|c| ctx.add(x, c).ok().and_then(|s| pos.get(&s).copied()))
                .collect()
        })
        .collect()
}

fn permutation_is_compatible(rank: &[usize], table: &[Vec<Option<usize>>]) -> bool {
    let k = rank.len();
    for (a, row) in table.iter().enumerate() {
        for (c, &ac) in row.iter().enumerate() {
            let Some(ac) = ac else { continue };
            for b in 0..k {
                if a == b || rank[a] > rank[b] {
                    continue;
                }
                let Some(bc) = table[b][c] else { continue };
                if rank[ac] > rank[bc] {
                    return false;
                }
            }
        }
    }
    true
}

/// Brute-force search for a compatible total order on a small subset.
pub fn find_compatible_order(
    ctx: &GroupCtx,
    set: &BTreeSet<GroupElement>,
) -> Result<Option<OrderedSubset>> {
    if set.len() > COMPATIBLE_ORDER_LIMIT {
        return Err(Error::SizeLimit(format!(
            "compatible-order search handles at most {COMPATIBLE_ORDER_LIMIT} elements, got {}",
            set.len()
        )));
    }
    let elems: Vec<GroupElement> = set.iter().cloned().collect();
    for x in &elems {
        ctx.check(x)?;
    }
    let pos: HashMap<&GroupElement, usize> =
        elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let table = translation_table(ctx, &elems, &pos);
    let k = elems.len();
    // perm[r] = index of the element at rank r
    let mut perm: Vec<usize> = (0..k).collect();
    let mut rank = vec![0usize; k];
    loop {
        for (r, &i) in perm.iter().enumerate() {
            rank[i] = r;
        }
        if permutation_is_compatible(&rank, &table) {
            let ordered: Vec<GroupElement> = perm.iter().map(|&i| elems[i].clone()).collect();
            return OrderedSubset::from_ascending(ctx, ordered, None).map(Some);
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn least_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}
