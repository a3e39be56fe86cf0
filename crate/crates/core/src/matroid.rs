//! Matroids over group ground sets, stored as explicit basis systems.
//!
//! A basis is a bitmask over the ground list, so the ground set is capped at
//! 64 elements. Circuit and hyperplane enumeration is exponential and capped
//! at [`ENUMERATION_LIMIT`] elements.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::group::{sufficiently_small, GroupCtx, GroupElement};

/// Bitmask over indices into a matroid's ground list.
pub type IndexSet = u64;

pub const MAX_GROUND: usize = 64;
pub const ENUMERATION_LIMIT: usize = 20;
pub const ISOMORPHISM_LIMIT: usize = 8;

pub fn mask_of(indices: &[usize]) -> IndexSet {
    indices.iter().fold(0, |acc, &i| acc | (1 << i))
}

pub fn indices_of(mask: IndexSet) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Lexicographic order on the sorted index lists of two sets.
pub fn lex_cmp(a: IndexSet, b: IndexSet) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let d = diff.trailing_zeros();
    let above = if d >= 63 { 0 } else { u64::MAX << (d + 1) };
    let (a_has, other) = if (a >> d) & 1 == 1 {
        (true, b)
    } else {
        (false, a)
    };
    // the set without `d` wins only if it stops before `d`
    let other_ends = other & above == 0;
    if a_has != other_ends {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// All `k`-subsets of `0..n`, in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<IndexSet> {
    fn rec(start: usize, n: usize, k: usize, acc: IndexSet, out: &mut Vec<IndexSet>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n - k {
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PanhandleParams {
    pub n: usize,
    pub s: usize,
    pub m: usize,
    pub a: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertParams {
    pub m: usize,
    pub a: GroupElement,
    pub s_set: Vec<GroupElement>,
}

impl SchubertParams {
    /// Builds the parameters from multiplier indices, `S = {i*a : i in multipliers}`.
    pub fn from_multipliers(
        ctx: &GroupCtx,
        m: usize,
        a: &GroupElement,
        multipliers: &[usize],
    ) -> Result<Self> {
        let s_set = multipliers
            .iter()
            .map(|&i| ctx.scalar_mul(i as i64, a))
            .collect::<Result<Vec<_>>>()?;
        Ok(SchubertParams {
            m,
            a: a.clone(),
            s_set,
        })
    }

    /// 1-based multipliers of the elements of `S`, sorted ascending.
    pub fn multipliers(&self, ctx: &GroupCtx) -> Result<Vec<usize>> {
        let ground = ctx.multiples(&self.a, self.m as i64)?;
        let mut out = Vec::with_capacity(self.s_set.len());
        for x in &self.s_set {
            let i = ground
                .iter()
                .position(|g| g == x)
                .ok_or_else(|| Error::Domain(format!("{x} is not in [{}]_a", self.m)))?;
            out.push(i + 1);
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain("S lists an element twice".into()));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    ctx: GroupCtx,
    ground: Vec<GroupElement>,
    /// In lexicographic order of index lists.
    bases: Vec<IndexSet>,
    lookup: HashSet<IndexSet>,
    rank: usize,
}

impl Matroid {
    /// Validated construction from an explicit basis list.
    pub fn from_bases(
        ctx: &GroupCtx,
        ground: Vec<GroupElement>,
        bases: &[Vec<usize>],
    ) -> Result<Self> {
        check_ground(ctx, &ground)?;
        if bases.is_empty() {
            return Err(Error::Domain("basis list is empty".into()));
        }
        let mut masks = Vec::with_capacity(bases.len());
        for b in bases {
            if let Some(&bad) = b.iter().find(|&&i| i >= ground.len()) {
                return Err(Error::Domain(format!(
                    "basis index {bad} out of range for ground of size {}",
                    ground.len()
                )));
            }
            let mask = mask_of(b);
            if mask.count_ones() as usize != b.len() {
                return Err(Error::Domain(format!("basis {b:?} repeats an index")));
            }
            masks.push(mask);
        }
        let n = masks[0].count_ones() as usize;
        if let Some(b) = masks.iter().find(|b| b.count_ones() as usize != n) {
            return Err(Error::InvalidBasisSystem(format!(
                "bases have unequal sizes ({} and {n})",
                b.count_ones()
            )));
        }
        if n == 0 {
            return Err(Error::Domain("rank must be at least 1".into()));
        }
        let m = Self::from_masks(ctx.clone(), ground, masks);
        if let Some(i) = m.loops().first() {
            return Err(Error::Loop(*i));
        }
        if let Some((b1, b2, x)) = m.exchange_violation() {
            return Err(Error::InvalidBasisSystem(format!(
                "exchange fails for {:?}, {:?} at element {x}",
                indices_of(b1),
                indices_of(b2)
            )));
        }
        Ok(m)
    }

    /// Trusted construction; the caller guarantees equal-size, deduplicated masks.
    pub(crate) fn from_masks(
        ctx: GroupCtx,
        ground: Vec<GroupElement>,
        masks: Vec<IndexSet>,
    ) -> Self {
        let lookup: HashSet<IndexSet> = masks.iter().copied().collect();
        let mut bases: Vec<IndexSet> = lookup.iter().copied().collect();
        bases.sort_by(|a, b| lex_cmp(*a, *b));
        let rank = bases.first().map_or(0, |b| b.count_ones() as usize);
        Matroid {
            ctx,
            ground,
            bases,
            lookup,
            rank,
        }
    }

    pub fn uniform(ctx: &GroupCtx, ground: Vec<GroupElement>, n: usize) -> Result<Self> {
        check_ground(ctx, &ground)?;
        if n < 1 || n > ground.len() {
            return Err(Error::Domain(format!(
                "uniform rank {n} outside 1..={}",
                ground.len()
            )));
        }
        let masks = k_subsets(ground.len(), n);
        Ok(Self::from_masks(ctx.clone(), ground, masks))
    }

    /// `P_{n,s,m}(a)`: `n`-subsets of `[m]_a` meeting `[s]_a` in at least `n-1` elements.
    pub fn panhandle(ctx: &GroupCtx, p: &PanhandleParams) -> Result<Self> {
        let PanhandleParams { n, s, m, .. } = *p;
        if !(1 <= n && n <= s && s < m) {
            return Err(Error::Domain(format!(
                "panhandle needs 1 <= n <= s < m, got n={n} s={s} m={m}"
            )));
        }
        let ground = bracket_ground(ctx, &p.a, m)?;
        let head: IndexSet = (1u64 << s) - 1;
        let masks = k_subsets(m, n)
            .into_iter()
            .filter(|b| (b & head).count_ones() as usize + 1 >= n)
            .collect();
        Ok(Self::from_masks(ctx.clone(), ground, masks))
    }

    /// `SM_m(a, S)`: `n`-subsets `T` whose `i`-th smallest element is at most
    /// the `i`-th smallest of `S`, comparing by multiplier.
    pub fn schubert(ctx: &GroupCtx, p: &SchubertParams) -> Result<Self> {
        let ground = bracket_ground(ctx, &p.a, p.m)?;
        let top = p.multipliers(ctx)?;
        let n = top.len();
        if n < 1 {
            return Err(Error::Domain("S must be nonempty".into()));
        }
        let masks = k_subsets(p.m, n)
            .into_iter()
            .filter(|&t| indices_of(t).iter().zip(&top).all(|(&ti, &si)| ti < si))
            .collect();
        Ok(Self::from_masks(ctx.clone(), ground, masks))
    }

    /// Bases are the complements of the bases of `self`. May have loops or rank 0.
    pub fn dual(&self) -> Matroid {
        let full = full_mask(self.ground.len());
        let masks = self.bases.iter().map(|b| full & !b).collect();
        Self::from_masks(self.ctx.clone(), self.ground.clone(), masks)
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        if self.ctx != other.ctx {
            return Err(Error::GroundMismatch(
                "matroids live in different groups".into(),
            ));
        }
        let mine: HashSet<&GroupElement> = self.ground.iter().collect();
        if let Some(x) = other.ground.iter().find(|x| mine.contains(x)) {
            return Err(Error::Disjointness(format!("{x} lies in both ground sets")));
        }
        let total = self.ground.len() + other.ground.len();
        if total > MAX_GROUND {
            return Err(Error::SizeLimit(format!("direct sum has {total} elements")));
        }
        let shift = self.ground.len();
        let mut ground = self.ground.clone();
        ground.extend(other.ground.iter().cloned());
        let masks = self
            .bases
            .iter()
            .flat_map(|&b1| other.bases.iter().map(move |&b2| b1 | (b2 << shift)))
            .collect();
        Ok(Self::from_masks(self.ctx.clone(), ground, masks))
    }

    pub fn ctx(&self) -> &GroupCtx {
        &self.ctx
    }

    pub fn ground(&self) -> &[GroupElement] {
        &self.ground
    }

    pub fn ground_set(&self) -> BTreeSet<GroupElement> {
        self.ground.iter().cloned().collect()
    }

    pub fn ground_mask(&self) -> IndexSet {
        full_mask(self.ground.len())
    }

    pub fn bases(&self) -> &[IndexSet] {
        &self.bases
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_basis(&self, set: IndexSet) -> bool {
        self.lookup.contains(&set)
    }

    pub fn is_independent(&self, set: IndexSet) -> bool {
        let k = set.count_ones() as usize;
        if k > self.rank {
            return false;
        }
        if k == self.rank {
            return self.is_basis(set);
        }
        self.bases.iter().any(|b| b & set == set)
    }

    pub fn rank_of(&self, set: IndexSet) -> usize {
        self.bases
            .iter()
            .map(|b| (b & set).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.ground.iter().position(|g| g == x)
    }

    pub fn elements_of(&self, set: IndexSet) -> Vec<GroupElement> {
        indices_of(set)
            .into_iter()
            .map(|i| self.ground[i].clone())
            .collect()
    }

    /// Ground indices that lie in no basis.
    pub fn loops(&self) -> Vec<usize> {
        let covered = self.bases.iter().fold(0, |acc, b| acc | b);
        indices_of(self.ground_mask() & !covered)
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    /// First `(B1, B2, x)` for which no `y ∈ B2∖B1` makes `(B1∖{x})∪{y}` a basis.
    pub fn exchange_violation(&self) -> Option<(IndexSet, IndexSet, usize)> {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                if b1 == b2 {
                    continue;
                }
                for x in indices_of(b1 & !b2) {
                    let without = b1 & !(1 << x);
                    let ok = indices_of(b2 & !b1)
                        .into_iter()
                        .any(|y| self.is_basis(without | (1 << y)));
                    if !ok {
                        return Some((b1, b2, x));
                    }
                }
            }
        }
        None
    }

    pub fn satisfies_exchange(&self) -> bool {
        self.exchange_violation().is_none()
    }

    fn require_enumerable(&self) -> Result<()> {
        if self.ground.len() > ENUMERATION_LIMIT {
            return Err(Error::SizeLimit(format!(
                "enumeration handles at most {ENUMERATION_LIMIT} ground elements, got {}",
                self.ground.len()
            )));
        }
        Ok(())
    }

    /// Minimal dependent sets, smallest first.
    pub fn circuits(&self) -> Result<Vec<IndexSet>> {
        self.require_enumerable()?;
        let e = self.ground.len();
        let mut out = Vec::new();
        for k in 1..=(self.rank + 1).min(e) {
            for c in k_subsets(e, k) {
                if self.is_independent(c) {
                    continue;
                }
                if indices_of(c)
                    .into_iter()
                    .all(|x| self.is_independent(c & !(1 << x)))
                {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }

    /// `X ∪ {e : r(X ∪ e) = r(X)}`.
    pub fn closure(&self, set: IndexSet) -> IndexSet {
        let r = self.rank_of(set);
        (0..self.ground.len())
            .filter(|&e| set & (1 << e) == 0 && self.rank_of(set | (1 << e)) == r)
            .fold(set, |acc, e| acc | (1 << e))
    }

    /// Flats of rank `r(M) - 1`, as closures of independent `(r-1)`-sets.
    pub fn hyperplanes(&self) -> Result<Vec<IndexSet>> {
        self.require_enumerable()?;
        if self.rank == 0 {
            return Ok(Vec::new());
        }
        let mut seen = BTreeSet::new();
        let mut independents = HashSet::new();
        for &b in &self.bases {
            for x in indices_of(b) {
                independents.insert(b & !(1 << x));
            }
        }
        for i in independents {
            seen.insert(self.closure(i));
        }
        let mut out: Vec<IndexSet> = seen.into_iter().collect();
        out.sort_by(|a, b| lex_cmp(*a, *b));
        Ok(out)
    }

    /// Every circuit has at least `r(M)` elements.
    pub fn is_paving(&self) -> Result<bool> {
        let circuits = self.circuits()?;
        Ok(circuits
            .iter()
            .all(|c| c.count_ones() as usize >= self.rank))
    }

    pub fn is_sparse_paving(&self) -> Result<bool> {
        Ok(self.is_paving()? && self.dual().is_paving()?)
    }

    /// Whether the hyperplanes form a non-trivial `(r-1)`-partition of the ground set.
    pub fn check_d_partition(&self) -> Result<bool> {
        if self.rank < 2 {
            return Err(Error::Precondition(format!(
                "d-partition check needs rank at least 2, got {}",
                self.rank
            )));
        }
        if !self.is_paving()? {
            return Err(Error::Precondition("matroid is not paving".into()));
        }
        let hyperplanes = self.hyperplanes()?;
        let d = self.rank - 1;
        let full = self.ground_mask();
        if hyperplanes
            .iter()
            .any(|&h| h == full || (h.count_ones() as usize) < d)
        {
            return Ok(false);
        }
        Ok(k_subsets(self.ground.len(), d)
            .into_iter()
            .all(|x| hyperplanes.iter().filter(|&&h| h & x == x).count() == 1))
    }

    /// Exhaustive search for a ground bijection carrying bases onto bases.
    pub fn is_isomorphic(&self, other: &Matroid) -> Result<bool> {
        let e = self.ground.len();
        if e > ISOMORPHISM_LIMIT {
            return Err(Error::SizeLimit(format!(
                "isomorphism search handles at most {ISOMORPHISM_LIMIT} elements"
            )));
        }
        if e != other.ground.len()
            || self.rank != other.rank
            || self.bases.len() != other.bases.len()
        {
            return Ok(false);
        }
        let mut perm: Vec<usize> = (0..e).collect();
        loop {
            let maps = self.bases.iter().all(|&b| {
                let image = indices_of(b)
                    .into_iter()
                    .fold(0, |acc, i| acc | (1 << perm[i]));
                other.is_basis(image)
            });
            if maps {
                return Ok(true);
            }
            if !crate::group::next_permutation(&mut perm) {
                return Ok(false);
            }
        }
    }
}

/// Whether `SM_m(a, S)` is the uniform matroid, i.e. `S = {(m-n+1)a, ..., ma}`.
pub fn is_uniform_schubert(ctx: &GroupCtx, p: &SchubertParams) -> Result<bool> {
    let mult = p.multipliers(ctx)?;
    let n = mult.len();
    Ok(mult.iter().copied().eq(p.m - n + 1..=p.m))
}

fn full_mask(len: usize) -> IndexSet {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

fn check_ground(ctx: &GroupCtx, ground: &[GroupElement]) -> Result<()> {
    if ground.len() > MAX_GROUND {
        return Err(Error::SizeLimit(format!(
            "ground sets are limited to {MAX_GROUND} elements"
        )));
    }
    let mut seen = HashSet::new();
    for x in ground {
        ctx.check(x)?;
        if !seen.insert(x) {
            return Err(Error::Domain(format!("ground element {x} repeated")));
        }
    }
    Ok(())
}

/// `[m]_a` in multiplier order, refusing torsion groups where `m` is not small enough.
fn bracket_ground(ctx: &GroupCtx, a: &GroupElement, m: usize) -> Result<Vec<GroupElement>> {
    if m > MAX_GROUND {
        return Err(Error::SizeLimit(format!("m = {m} exceeds {MAX_GROUND}")));
    }
    let ground = ctx.multiples(a, m as i64)?;
    if !sufficiently_small(ctx, m as i64) {
        return Err(Error::OrderUnavailable(format!(
            "m = {m} is not below ceil(log2 p(G))/2 for p(G) = {}",
            ctx.p_of_g()
        )));
    }
    Ok(ground)
}
