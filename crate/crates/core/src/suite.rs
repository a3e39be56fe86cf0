//! Verification campaigns.
//!
//! Each campaign expands into a list of self-contained [`Instance`]s. An
//! instance carries full constructor parameters, so any failure can be
//! replayed with [`evaluate`]. Iff-characterizations are swept exhaustively
//! inside their bounds; sufficient conditions are sampled from a seeded RNG.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{
    paving_rank_admissible, total_small_condition, total_small_set, GroupCtx, GroupElement,
    OrderedSubset,
};
use crate::io::{CtxDoc, ElementDoc, MatroidSpec};
use crate::matching::{basis_matched_into, group_matching, validate_witness, Engine};
use crate::matroid::{
    indices_of, is_uniform_schubert, k_subsets, IndexSet, Matroid, SchubertParams,
};

pub const CAMPAIGNS: [&str; 9] = [
    "examples",
    "asy-panhandle",
    "asymmetric-schubert",
    "paving",
    "paving-general",
    "losonczy",
    "small-sets",
    "engines",
    "structure",
];

/// `2^31 - 1`, prime.
pub const MERSENNE_31: i64 = 2_147_483_647;

/// Extra hypotheses an instance must satisfy before its expected verdict applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    None,
    /// Positive ground sets of size `n+1`, sparse paving `N`, `max E(M) ⪯ n min E(N)`
    /// under the lexicographic order.
    PavingTorsionFree,
    /// The same plus the rank bound on `n` and the total smallness of the
    /// combined set, under the natural order of residues.
    PavingGeneral,
    /// `|A| = |B| < p(G)` and `0 ∉ B`.
    SmallSets,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// The basis exchange axiom holds.
    BasisExchange,
    /// Hyperplanes form a non-trivial `(n-1)`-partition and meet pairwise in at most `n-2` elements.
    DPartition,
    /// For a Schubert matroid: being uniform by parameters agrees with being isomorphic to `U_{n,m}`.
    UniformSchubert,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Instance {
    /// Is `m` matched to `n`? `expected: None` only checks engine agreement.
    MatroidPair {
        label: String,
        m: MatroidSpec,
        n: MatroidSpec,
        expected: Option<bool>,
        hypothesis: Hypothesis,
    },
    /// Is there a group matching from `a` to `b`?
    GroupPair {
        ctx: CtxDoc,
        a: Vec<ElementDoc>,
        b: Vec<ElementDoc>,
        expected: bool,
        hypothesis: Hypothesis,
    },
    Property {
        label: String,
        matroid: MatroidSpec,
        property: Property,
    },
    /// The basis system, as sets of group elements, equals `expected` exactly.
    Bases {
        label: String,
        matroid: MatroidSpec,
        expected: Vec<Vec<ElementDoc>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: Instance,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CampaignResult {
    pub campaign: String,
    pub instances: usize,
    /// Draws rejected by the hypothesis filter before evaluation.
    pub skipped: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

impl CampaignResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct CampaignOptions {
    pub seed: u64,
    pub trials: usize,
    pub max_m: usize,
    /// Smallest rank included in the panhandle/Schubert sweeps.
    pub min_n: usize,
    pub modulus: Option<i64>,
    pub max_size: Option<usize>,
    /// Also sweep a generator of `Z/(2^31 - 1)`.
    pub with_torsion: bool,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            seed: 0,
            trials: 1000,
            max_m: 7,
            min_n: 1,
            modulus: None,
            max_size: None,
            with_torsion: false,
        }
    }
}

/// Runs a campaign by id.
pub fn run_campaign(id: &str, opts: &CampaignOptions) -> Result<CampaignResult> {
    let gens = generators(opts.with_torsion);
    let bounds = SweepBounds {
        max_m: opts.max_m,
        min_n: opts.min_n,
    };
    match id {
        "examples" => verify_examples(),
        "asy-panhandle" => verify_asy_panhandle(&bounds, &gens),
        "asymmetric-schubert" => verify_asymmetric_schubert(&bounds, &gens),
        "paving" => verify_paving_theorem(opts.trials, opts.seed),
        "paving-general" => {
            verify_paving_general(opts.trials, opts.seed, opts.modulus.unwrap_or(MERSENNE_31))
        }
        "losonczy" => {
            let universes = match opts.modulus {
                Some(k) => vec![Universe::Cyclic(k)],
                None => vec![Universe::Cyclic(9), Universe::IntRange(-4, 4)],
            };
            let mut results = universes
                .iter()
                .map(|u| verify_losonczy(u, opts.max_size.unwrap_or(u.len())))
                .collect::<Result<Vec<_>>>()?;
            Ok(merge("losonczy", &mut results))
        }
        "small-sets" => verify_small_sets(opts.modulus.unwrap_or(13), opts.trials, opts.seed),
        "engines" => verify_engines(opts.trials.clamp(1, 500), opts.seed),
        "structure" => verify_structure(opts.max_m, &gens),
        other => Err(Error::UnknownCampaign(other.to_string())),
    }
}

fn merge(name: &str, parts: &mut [CampaignResult]) -> CampaignResult {
    let mut out = CampaignResult {
        campaign: name.to_string(),
        instances: 0,
        skipped: 0,
        failures: Vec::new(),
        notes: Vec::new(),
        elapsed_ms: 0,
    };
    for p in parts.iter_mut() {
        out.instances += p.instances;
        out.skipped += p.skipped;
        out.failures.append(&mut p.failures);
        out.notes.append(&mut p.notes);
        out.elapsed_ms += p.elapsed_ms;
    }
    out
}

/// Evaluates one instance; `Ok(None)` means it passed, `Ok(Some(detail))` that it failed.
pub fn evaluate(instance: &Instance) -> Result<Option<String>> {
    match instance {
        Instance::MatroidPair {
            m,
            n,
            expected,
            hypothesis,
            ..
        } => {
            let m = m.build()?;
            let n = n.build()?;
            if let Err(why) = check_pair_hypothesis(&m, &n, *hypothesis) {
                return Ok(Some(format!("hypothesis violated: {why}")));
            }
            evaluate_pair(&m, &n, *expected)
        }
        Instance::GroupPair {
            ctx,
            a,
            b,
            expected,
            hypothesis,
        } => {
            let ctx = ctx.build()?;
            let a: BTreeSet<GroupElement> =
                a.iter().map(|x| x.build(&ctx)).collect::<Result<_>>()?;
            let b: BTreeSet<GroupElement> =
                b.iter().map(|x| x.build(&ctx)).collect::<Result<_>>()?;
            if *hypothesis == Hypothesis::SmallSets {
                let small = match ctx.p_of_g() {
                    crate::PValue::Infinite => true,
                    crate::PValue::Finite(p) => (a.len() as u64) < p,
                };
                if a.len() != b.len() || !small || b.contains(&ctx.zero()) {
                    return Ok(Some("hypothesis violated: need |A|=|B|<p(G), 0 ∉ B".into()));
                }
            }
            let found = group_matching(&ctx, &a, &b)?;
            if let Some(pairs) = &found {
                let targets: BTreeSet<&GroupElement> = pairs.iter().map(|(_, y)| y).collect();
                let valid = targets.len() == b.len()
                    && pairs
                        .iter()
                        .all(|(x, y)| ctx.add(x, y).map(|s| !a.contains(&s)).unwrap_or(false));
                if !valid {
                    return Ok(Some("returned bijection fails re-validation".into()));
                }
            }
            Ok((found.is_some() != *expected).then(|| {
                format!(
                    "expected matching = {expected}, found = {}",
                    found.is_some()
                )
            }))
        }
        Instance::Property {
            matroid, property, ..
        } => {
            let mat = matroid.build()?;
            evaluate_property(&mat, matroid, *property)
        }
        Instance::Bases {
            matroid, expected, ..
        } => {
            let m = matroid.build()?;
            let got: BTreeSet<BTreeSet<GroupElement>> = m
                .bases()
                .iter()
                .map(|&b| m.elements_of(b).into_iter().collect())
                .collect();
            let want: BTreeSet<BTreeSet<GroupElement>> = expected
                .iter()
                .map(|b| b.iter().map(|x| x.build(m.ctx())).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            if got.len() != m.bases().len() || want.len() != expected.len() {
                return Ok(Some("duplicate basis".into()));
            }
            Ok((got != want).then(|| {
                format!(
                    "got {} bases, expected {}; sets differ",
                    got.len(),
                    want.len()
                )
            }))
        }
    }
}

/// Per-basis comparison of both engines, plus the expected overall verdict.
fn evaluate_pair(m: &Matroid, n: &Matroid, expected: Option<bool>) -> Result<Option<String>> {
    if m.rank() != n.rank() {
        return Err(Error::RankMismatch {
            left: m.rank(),
            right: n.rank(),
        });
    }
    let mut matched = true;
    for &b in m.bases() {
        let brute = basis_matched_into(m, b, n, Engine::BruteForce)?;
        let inter = basis_matched_into(m, b, n, Engine::Intersection)?;
        if brute.is_some() != inter.is_some() {
            return Ok(Some(format!(
                "engines disagree on basis {:?}: brute force {}, intersection {}",
                indices_of(b),
                brute.is_some(),
                inter.is_some()
            )));
        }
        for w in brute.iter().chain(inter.iter()) {
            if !validate_witness(m, n, w) {
                return Ok(Some(format!(
                    "invalid witness for basis {:?}",
                    indices_of(b)
                )));
            }
        }
        if brute.is_none() {
            matched = false;
            if expected.is_none() {
                continue;
            }
            if expected == Some(true) {
                return Ok(Some(format!(
                    "expected matched, but basis {:?} has no partner",
                    indices_of(b)
                )));
            }
            break;
        }
    }
    match expected {
        Some(want) if want != matched => {
            Ok(Some(format!("expected matched = {want}, got {matched}")))
        }
        _ => Ok(None),
    }
}

fn evaluate_property(
    m: &Matroid,
    spec: &MatroidSpec,
    property: Property,
) -> Result<Option<String>> {
    match property {
        Property::BasisExchange => Ok(m.exchange_violation().map(|(b1, b2, x)| {
            format!(
                "exchange fails for {:?}, {:?} at {x}",
                indices_of(b1),
                indices_of(b2)
            )
        })),
        Property::DPartition => {
            if !m.check_d_partition()? {
                return Ok(Some("hyperplanes do not form an (n-1)-partition".into()));
            }
            let hs = m.hyperplanes()?;
            for (i, &h1) in hs.iter().enumerate() {
                for &h2 in &hs[i + 1..] {
                    if (h1 & h2).count_ones() as usize > m.rank() - 2 {
                        return Ok(Some(format!(
                            "hyperplanes {:?} and {:?} share more than n-2 elements",
                            indices_of(h1),
                            indices_of(h2)
                        )));
                    }
                }
            }
            Ok(None)
        }
        Property::UniformSchubert => {
            let MatroidSpec::Schubert(doc) = spec else {
                return Err(Error::Domain(
                    "uniform-Schubert check needs a Schubert spec".into(),
                ));
            };
            let params = doc.params(m.ctx())?;
            let by_params = is_uniform_schubert(m.ctx(), &params)?;
            let u = Matroid::uniform(m.ctx(), m.ground().to_vec(), m.rank())?;
            let by_iso = m.is_isomorphic(&u)?;
            Ok((by_params != by_iso).then(|| {
                format!("parameter test says uniform = {by_params}, isomorphism says {by_iso}")
            }))
        }
    }
}

/// Re-checks the paving hypotheses from scratch.
fn check_pair_hypothesis(
    m: &Matroid,
    n: &Matroid,
    hypothesis: Hypothesis,
) -> std::result::Result<(), String> {
    let err = |e: Error| e.to_string();
    match hypothesis {
        Hypothesis::None | Hypothesis::SmallSets => Ok(()),
        Hypothesis::PavingTorsionFree | Hypothesis::PavingGeneral => {
            let ctx = m.ctx();
            let rank = m.rank();
            if n.rank() != rank {
                return Err("ranks differ".into());
            }
            if m.ground().len() != rank + 1 || n.ground().len() != rank + 1 {
                return Err("ground sets must have n+1 elements".into());
            }
            if !n.is_sparse_paving().map_err(err)? {
                return Err("N is not sparse paving".into());
            }
            let em = m.ground_set();
            let en = n.ground_set();
            let order = if hypothesis == Hypothesis::PavingTorsionFree {
                let all: Vec<GroupElement> = total_small_set(ctx, &em, &en, rank as i64)
                    .map_err(err)?
                    .into_iter()
                    .collect();
                OrderedSubset::lexicographic(ctx, all).map_err(err)?
            } else {
                if !paving_rank_admissible(ctx, rank as i64) {
                    return Err(format!("rank {rank} too large for p(G) = {}", ctx.p_of_g()));
                }
                if !total_small_condition(ctx, &em, &en, rank as i64).map_err(err)? {
                    return Err("combined set is not small enough".into());
                }
                natural_order(
                    ctx,
                    total_small_set(ctx, &em, &en, rank as i64).map_err(err)?,
                )?
            };
            if !order.is_compatible() {
                return Err("order on the combined set is not compatible".into());
            }
            let zero = order
                .position(&ctx.zero())
                .expect("combined set contains 0");
            if em
                .iter()
                .chain(&en)
                .any(|x| order.position(x).unwrap() <= zero)
            {
                return Err("ground sets are not positive".into());
            }
            let x = em.iter().max_by_key(|x| order.position(x)).unwrap();
            let y = en.iter().min_by_key(|x| order.position(x)).unwrap();
            let ny = ctx.scalar_mul(rank as i64, y).map_err(err)?;
            if order.position(x) > order.position(&ny) {
                return Err(format!("max E(M) = {x} exceeds n * min E(N) = {ny}"));
            }
            Ok(())
        }
    }
}

/// Residues ordered by their representative in `[0, n)`; torsion groups only.
fn natural_order(
    ctx: &GroupCtx,
    set: BTreeSet<GroupElement>,
) -> std::result::Result<OrderedSubset, String> {
    let ascending: Vec<GroupElement> = set.into_iter().collect();
    OrderedSubset::from_ascending(ctx, ascending, None).map_err(|e| e.to_string())
}

fn finish(
    name: &str,
    started: Instant,
    instances: Vec<Instance>,
    skipped: usize,
    notes: Vec<String>,
) -> CampaignResult {
    let mut failures: Vec<Failure> = instances
        .par_iter()
        .filter_map(|inst| match evaluate(inst) {
            Ok(None) => None,
            Ok(Some(detail)) => Some(Failure {
                instance: inst.clone(),
                detail,
            }),
            Err(e) => Some(Failure {
                instance: inst.clone(),
                detail: format!("error: {e}"),
            }),
        })
        .collect();
    failures.sort_by_cached_key(|f| serde_json::to_string(&f.instance).unwrap_or_default());
    CampaignResult {
        campaign: name.to_string(),
        instances: instances.len(),
        skipped,
        failures,
        notes,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

pub fn generators(with_torsion: bool) -> Vec<(GroupCtx, GroupElement)> {
    let z = GroupCtx::integers();
    let z3 = GroupCtx::free(3).expect("rank 3");
    let mut out = vec![
        (z.clone(), z.element([1]).expect("dimension 1")),
        (z3.clone(), z3.element([2, -1, 0]).expect("dimension 3")),
    ];
    if with_torsion {
        let c = GroupCtx::cyclic(MERSENNE_31).expect("valid modulus");
        out.push((c.clone(), c.element([1]).expect("dimension 1")));
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct SweepBounds {
    pub max_m: usize,
    pub min_n: usize,
}

fn check_sweep_bound(max_m: usize, limit: usize) -> Result<()> {
    if max_m > limit {
        return Err(Error::SizeLimit(format!("max_m = {max_m} exceeds {limit}")));
    }
    Ok(())
}

/// Sources `M` of a sweep: every panhandle `P_{n,s,m}` and every Schubert `SM_m(S)`.
fn sweep_sources(ctx: &GroupCtx, a: &GroupElement, n: usize, m: usize) -> Result<Vec<MatroidSpec>> {
    let mut out: Vec<MatroidSpec> = (n..m)
        .map(|s| MatroidSpec::panhandle(ctx, n, s, m, a))
        .collect();
    for s in k_subsets(m, n) {
        let mult: Vec<usize> = indices_of(s).iter().map(|i| i + 1).collect();
        let params = SchubertParams::from_multipliers(ctx, m, a, &mult)?;
        out.push(MatroidSpec::schubert(ctx, &params));
    }
    Ok(out)
}

/// `M` matched to `P_{n,s',m}(a)` exactly when `s' = m - 1`.
pub fn verify_asy_panhandle(
    bounds: &SweepBounds,
    gens: &[(GroupCtx, GroupElement)],
) -> Result<CampaignResult> {
    let started = Instant::now();
    check_sweep_bound(bounds.max_m, 8)?;
    let mut instances = Vec::new();
    for (ctx, a) in gens {
        for m in 2..=bounds.max_m {
            if !crate::group::sufficiently_small(ctx, m as i64) {
                continue;
            }
            for n in bounds.min_n.max(1)..m {
                let sources = sweep_sources(ctx, a, n, m)?;
                for s_prime in n..m {
                    let target = MatroidSpec::panhandle(ctx, n, s_prime, m, a);
                    for src in &sources {
                        instances.push(Instance::MatroidPair {
                            label: format!("asy-panhandle n={n} s'={s_prime} m={m}"),
                            m: src.clone(),
                            n: target.clone(),
                            expected: Some(s_prime == m - 1),
                            hypothesis: Hypothesis::None,
                        });
                    }
                }
            }
        }
    }
    Ok(finish("asy-panhandle", started, instances, 0, Vec::new()))
}

/// `M` matched to `SM_m(a, S')` exactly when `S'` is the top `n` multiples.
pub fn verify_asymmetric_schubert(
    bounds: &SweepBounds,
    gens: &[(GroupCtx, GroupElement)],
) -> Result<CampaignResult> {
    let started = Instant::now();
    check_sweep_bound(bounds.max_m, 7)?;
    let mut instances = Vec::new();
    for (ctx, a) in gens {
        for m in 2..=bounds.max_m {
            if !crate::group::sufficiently_small(ctx, m as i64) {
                continue;
            }
            for n in bounds.min_n.max(1)..m {
                let sources = sweep_sources(ctx, a, n, m)?;
                for s in k_subsets(m, n) {
                    let mult: Vec<usize> = indices_of(s).iter().map(|i| i + 1).collect();
                    let params = SchubertParams::from_multipliers(ctx, m, a, &mult)?;
                    let uniform = is_uniform_schubert(ctx, &params)?;
                    let target = MatroidSpec::schubert(ctx, &params);
                    instances.push(Instance::Property {
                        label: format!("uniform Schubert S'={mult:?} m={m}"),
                        matroid: target.clone(),
                        property: Property::UniformSchubert,
                    });
                    for src in &sources {
                        instances.push(Instance::MatroidPair {
                            label: format!("asymmetric-schubert n={n} S'={mult:?} m={m}"),
                            m: src.clone(),
                            n: target.clone(),
                            expected: Some(uniform),
                            hypothesis: Hypothesis::None,
                        });
                    }
                }
            }
        }
    }
    Ok(finish(
        "asymmetric-schubert",
        started,
        instances,
        0,
        Vec::new(),
    ))
}

fn sample_distinct(rng: &mut ChaCha8Rng, lo: i64, hi: i64, k: usize) -> Vec<i64> {
    let pool: Vec<i64> = (lo..=hi).collect();
    let mut picked: Vec<i64> = pool.choose_multiple(rng, k).copied().collect();
    picked.sort_unstable();
    picked
}

/// Basis masks of a rank-`n` matroid on `n+1` elements: a nonempty family of
/// complements of single elements. At least two members keeps it loopless.
fn random_corank_one(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<usize>> {
    let full = (1u64 << (n + 1)) - 1;
    loop {
        let pick: u64 = rng.gen_range(1..=full);
        if pick.count_ones() >= 2 {
            return indices_of(pick)
                .into_iter()
                .map(|i| indices_of(full & !(1 << i)))
                .collect();
        }
    }
}

/// `U_{n,n+1}`, or `U_{n-1,n} ⊕ U_{1,1}` with the coloop at `coloop`.
fn sparse_paving_corank_one(n: usize, coloop: Option<usize>) -> Vec<Vec<usize>> {
    let full = (1u64 << (n + 1)) - 1;
    (0..=n)
        .filter(|&i| Some(i) != coloop)
        .map(|i| indices_of(full & !(1 << i)))
        .collect()
}

struct PavingDraw {
    n: usize,
    em: Vec<i64>,
    en: Vec<i64>,
    m_bases: Vec<Vec<usize>>,
    n_bases: Vec<Vec<usize>>,
}

fn draw_paving(rng: &mut ChaCha8Rng, max_n: usize) -> PavingDraw {
    let n = rng.gen_range(1..=max_n);
    let hi = 10 * n as i64;
    let em = sample_distinct(rng, 1, hi, n + 1);
    let en = sample_distinct(rng, 1, hi, n + 1);
    let coloop = (n >= 2 && rng.gen_bool(0.5)).then(|| rng.gen_range(0..=n));
    PavingDraw {
        n,
        m_bases: random_corank_one(rng, n),
        n_bases: sparse_paving_corank_one(n, coloop),
        em,
        en,
    }
}

fn paving_instance(
    ctx: &GroupCtx,
    d: &PavingDraw,
    hypothesis: Hypothesis,
    label: &str,
) -> Result<Instance> {
    let elems = |xs: &[i64]| -> Result<Vec<GroupElement>> {
        xs.iter().map(|&x| ctx.element([x])).collect()
    };
    let m = Matroid::from_bases(ctx, elems(&d.em)?, &d.m_bases)?;
    let n = Matroid::from_bases(ctx, elems(&d.en)?, &d.n_bases)?;
    Ok(Instance::MatroidPair {
        label: format!("{label} n={}", d.n),
        m: MatroidSpec::explicit(&m),
        n: MatroidSpec::explicit(&n),
        expected: Some(true),
        hypothesis,
    })
}

/// Sampled torsion-free instances: rank `n <= 5` on `n+1` positive integers,
/// `N` sparse paving, `max E(M) <= n min E(N)`; every one must be matched.
pub fn verify_paving_theorem(trials: usize, seed: u64) -> Result<CampaignResult> {
    let started = Instant::now();
    let ctx = GroupCtx::integers();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = Vec::with_capacity(trials);
    let mut skipped = 0;
    while instances.len() < trials {
        let d = draw_paving(&mut rng, 5);
        if d.em[d.n] > d.n as i64 * d.en[0] {
            skipped += 1;
            continue;
        }
        instances.push(paving_instance(
            &ctx,
            &d,
            Hypothesis::PavingTorsionFree,
            "paving",
        )?);
    }
    Ok(finish("paving", started, instances, skipped, Vec::new()))
}

/// Sampled instances over `Z/modulus` with the rank bound and total smallness enforced.
pub fn verify_paving_general(trials: usize, seed: u64, modulus: i64) -> Result<CampaignResult> {
    let started = Instant::now();
    let ctx = GroupCtx::cyclic(modulus)?;
    let max_n = (1..=5)
        .take_while(|&n| paving_rank_admissible(&ctx, n as i64))
        .last();
    let Some(max_n) = max_n else {
        return Err(Error::Domain(format!(
            "no admissible rank for modulus {modulus}"
        )));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = Vec::with_capacity(trials);
    let mut skipped = 0;
    let mut attempts = 0usize;
    while instances.len() < trials {
        attempts += 1;
        if attempts > trials.saturating_mul(1000).max(1000) {
            return Err(Error::Domain(format!(
                "too few admissible draws for modulus {modulus}"
            )));
        }
        let d = draw_paving(&mut rng, max_n);
        let em: BTreeSet<GroupElement> =
            d.em.iter()
                .map(|&x| ctx.element([x]))
                .collect::<Result<_>>()?;
        let en: BTreeSet<GroupElement> =
            d.en.iter()
                .map(|&x| ctx.element([x]))
                .collect::<Result<_>>()?;
        let combined = total_small_set(&ctx, &em, &en, d.n as i64)?;
        let compatible = natural_order(&ctx, combined).is_ok_and(|o| o.is_compatible());
        if d.em[d.n] > d.n as i64 * d.en[0]
            || !compatible
            || !total_small_condition(&ctx, &em, &en, d.n as i64)?
        {
            skipped += 1;
            continue;
        }
        instances.push(paving_instance(
            &ctx,
            &d,
            Hypothesis::PavingGeneral,
            "paving-general",
        )?);
    }
    let notes = vec![format!("modulus {modulus}: ranks 1..={max_n} admissible")];
    Ok(finish("paving-general", started, instances, skipped, notes))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Universe {
    /// All of `Z/k`.
    Cyclic(i64),
    /// `{lo, ..., hi}` inside `Z`.
    IntRange(i64, i64),
}

impl Universe {
    pub fn len(&self) -> usize {
        match *self {
            Universe::Cyclic(k) => k.max(0) as usize,
            Universe::IntRange(lo, hi) => (hi - lo + 1).max(0) as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn ctx_and_elements(&self) -> Result<(GroupCtx, Vec<GroupElement>)> {
        match *self {
            Universe::Cyclic(k) => {
                let ctx = GroupCtx::cyclic(k)?;
                let elems = (0..k).map(|x| ctx.element([x])).collect::<Result<_>>()?;
                Ok((ctx, elems))
            }
            Universe::IntRange(lo, hi) => {
                let ctx = GroupCtx::integers();
                let elems = (lo..=hi).map(|x| ctx.element([x])).collect::<Result<_>>()?;
                Ok((ctx, elems))
            }
        }
    }
}

/// Every nonempty `A` in the universe with `|A| <= max_size` matches to itself iff `0 ∉ A`.
pub fn verify_losonczy(universe: &Universe, max_size: usize) -> Result<CampaignResult> {
    let started = Instant::now();
    if universe.len() > 12 {
        return Err(Error::SizeLimit(format!(
            "universe has {} elements, at most 12 allowed",
            universe.len()
        )));
    }
    let (ctx, elems) = universe.ctx_and_elements()?;
    let ctx_doc = CtxDoc::from_ctx(&ctx);
    let mut instances = Vec::new();
    for mask in 1u64..(1 << elems.len()) {
        if mask.count_ones() as usize > max_size {
            continue;
        }
        let a: Vec<ElementDoc> = indices_of(mask)
            .into_iter()
            .map(|i| ElementDoc::from_element(&elems[i]))
            .collect();
        let has_zero = indices_of(mask).into_iter().any(|i| elems[i].is_zero());
        instances.push(Instance::GroupPair {
            ctx: ctx_doc.clone(),
            a: a.clone(),
            b: a,
            expected: !has_zero,
            hypothesis: Hypothesis::None,
        });
    }
    let note = format!("{universe:?}, |A| <= {max_size}");
    Ok(finish("losonczy", started, instances, 0, vec![note]))
}

/// Random `A, B ⊆ Z/p` with `|A| = |B| < p` and `0 ∉ B` always admit a matching.
pub fn verify_small_sets(p: i64, trials: usize, seed: u64) -> Result<CampaignResult> {
    let started = Instant::now();
    if !(2..=17).contains(&p) || (2..p).any(|d| p % d == 0) {
        return Err(Error::Domain(format!("p = {p} must be a prime at most 17")));
    }
    let ctx = GroupCtx::cyclic(p)?;
    let ctx_doc = CtxDoc::from_ctx(&ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = Vec::with_capacity(trials);
    let mut skipped = 0;
    while instances.len() < trials {
        let n = rng.gen_range(1..=p) as usize;
        let a = sample_distinct(&mut rng, 0, p - 1, n);
        let b = sample_distinct(&mut rng, 0, p - 1, n);
        if n as i64 >= p || b.contains(&0) {
            skipped += 1;
            continue;
        }
        instances.push(Instance::GroupPair {
            ctx: ctx_doc.clone(),
            a: a.into_iter().map(ElementDoc::Scalar).collect(),
            b: b.into_iter().map(ElementDoc::Scalar).collect(),
            expected: true,
            hypothesis: Hypothesis::SmallSets,
        });
    }
    Ok(finish(
        "small-sets",
        started,
        instances,
        skipped,
        Vec::new(),
    ))
}

/// Random basis system of rank `n` on `e` indices, drawn from a mix of families.
fn random_shape(rng: &mut ChaCha8Rng, n: usize, e: usize) -> Vec<IndexSet> {
    match rng.gen_range(0..6) {
        1 if n < e => {
            let s = rng.gen_range(n..e);
            let head = (1u64 << s) - 1;
            k_subsets(e, n)
                .into_iter()
                .filter(|b| (b & head).count_ones() as usize + 1 >= n)
                .collect()
        }
        2 => {
            let mut top: Vec<usize> = (0..e).collect::<Vec<_>>();
            top.shuffle(rng);
            let mut top = top[..n].to_vec();
            top.sort_unstable();
            k_subsets(e, n)
                .into_iter()
                .filter(|&t| indices_of(t).iter().zip(&top).all(|(ti, si)| ti <= si))
                .collect()
        }
        3 if n >= 2 => {
            let splits: Vec<(usize, usize)> = (1..e)
                .flat_map(|e1| (1..n).map(move |k| (e1, k)))
                .filter(|&(e1, k)| k <= e1 && n - k <= e - e1)
                .collect();
            let Some(&(e1, k)) = splits.choose(rng) else {
                return k_subsets(e, n);
            };
            let left = k_subsets(e1, k);
            let right = k_subsets(e - e1, n - k);
            left.iter()
                .flat_map(|&l| right.iter().map(move |&r| l | (r << e1)))
                .collect()
        }
        4 if n < e => {
            // dual of a panhandle of rank e - n
            let r = e - n;
            let s = rng.gen_range(r..e);
            let head = (1u64 << s) - 1;
            let full = (1u64 << e) - 1;
            k_subsets(e, r)
                .into_iter()
                .filter(|b| (b & head).count_ones() as usize + 1 >= r)
                .map(|b| full & !b)
                .collect()
        }
        5 if e == n + 1 => {
            let full = (1u64 << e) - 1;
            let pick: u64 = rng.gen_range(1..=full);
            indices_of(pick)
                .into_iter()
                .map(|i| full & !(1 << i))
                .collect()
        }
        _ => k_subsets(e, n),
    }
}

fn random_ground(rng: &mut ChaCha8Rng, ctx: &GroupCtx, e: usize) -> Result<Vec<GroupElement>> {
    let pool: Vec<i64> = match ctx {
        GroupCtx::FiniteProduct { moduli } => (0..moduli[0]).collect(),
        GroupCtx::FreeAbelian { .. } => (-6..=9).collect(),
    };
    let picked: Vec<i64> = pool.choose_multiple(rng, e).copied().collect();
    picked.into_iter().map(|x| ctx.element([x])).collect()
}

fn random_matroid(rng: &mut ChaCha8Rng, ctx: &GroupCtx, n: usize, max_e: usize) -> Result<Matroid> {
    loop {
        let e = rng.gen_range(n..=max_e);
        let shape: Vec<Vec<usize>> = random_shape(rng, n, e)
            .into_iter()
            .map(indices_of)
            .collect();
        let ground = random_ground(rng, ctx, e)?;
        match Matroid::from_bases(ctx, ground, &shape) {
            Ok(m) => return Ok(m),
            Err(Error::Loop(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// Brute-force and intersection engines agree basis by basis on random pairs.
pub fn verify_engines(trials: usize, seed: u64) -> Result<CampaignResult> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctxs = [
        GroupCtx::integers(),
        GroupCtx::cyclic(11)?,
        GroupCtx::cyclic(13)?,
        GroupCtx::cyclic(17)?,
    ];
    let mut instances = Vec::with_capacity(trials);
    while instances.len() < trials {
        let ctx = ctxs.choose(&mut rng).expect("nonempty").clone();
        let n = rng.gen_range(1..=5);
        let m = random_matroid(&mut rng, &ctx, n, 8)?;
        let other = random_matroid(&mut rng, &ctx, n, 8)?;
        instances.push(Instance::MatroidPair {
            label: format!("engines rank {n}"),
            m: MatroidSpec::explicit(&m),
            n: MatroidSpec::explicit(&other),
            expected: None,
            hypothesis: Hypothesis::None,
        });
    }
    Ok(finish("engines", started, instances, 0, Vec::new()))
}

/// Basis exchange for every family member with `m <= max_m`, their duals and
/// small direct sums of uniform matroids, and the
/// `(n-1)`-partition property for every sparse paving one of rank at least 2.
pub fn verify_structure(max_m: usize, gens: &[(GroupCtx, GroupElement)]) -> Result<CampaignResult> {
    let started = Instant::now();
    let mut instances = Vec::new();
    let mut push = |label: String, spec: MatroidSpec, m: &Matroid| -> Result<()> {
        instances.push(Instance::Property {
            label: label.clone(),
            matroid: spec.clone(),
            property: Property::BasisExchange,
        });
        if m.rank() >= 2 && m.is_sparse_paving()? {
            instances.push(Instance::Property {
                label,
                matroid: spec,
                property: Property::DPartition,
            });
        }
        Ok(())
    };
    for (ctx, a) in gens {
        for m in 1..=max_m {
            if !crate::group::sufficiently_small(ctx, m as i64) {
                continue;
            }
            let ground = ctx.multiples(a, m as i64)?;
            for n in 1..=m {
                let u = Matroid::uniform(ctx, ground.clone(), n)?;
                let spec = MatroidSpec::Uniform(crate::io::UniformDoc {
                    ctx: Some(CtxDoc::from_ctx(ctx)),
                    n,
                    ground: ground.iter().map(ElementDoc::from_element).collect(),
                });
                push(format!("U_{{{n},{m}}}"), spec, &u)?;
                for spec in sweep_sources(ctx, a, n, m)? {
                    let built = spec.build()?;
                    push(format!("family n={n} m={m}"), spec.clone(), &built)?;
                    let dual = MatroidSpec::Dual(Box::new(spec));
                    push(format!("dual family n={n} m={m}"), dual, &built.dual())?;
                }
            }
        }
    }
    // the two sparse paving matroids of rank n on n+1 elements
    let z = GroupCtx::integers();
    for n in 2..=6 {
        let ground: Vec<GroupElement> = (1..=n as i64 + 1)
            .map(|x| z.element([x]))
            .collect::<Result<_>>()?;
        for coloop in [None, Some(n)] {
            let m = Matroid::from_bases(&z, ground.clone(), &sparse_paving_corank_one(n, coloop))?;
            push(
                format!("corank-one sparse paving n={n}"),
                MatroidSpec::explicit(&m),
                &m,
            )?;
        }
    }
    for e1 in 1..8 {
        for e2 in 1..=8 - e1 {
            for k1 in 1..=e1 {
                for k2 in 1..=e2 {
                    let left = uniform_spec(&z, 1..=e1 as i64, k1);
                    let right = uniform_spec(&z, 11..=10 + e2 as i64, k2);
                    let sum = MatroidSpec::DirectSum(Box::new(left), Box::new(right));
                    let built = sum.build()?;
                    push(format!("U_{{{k1},{e1}}} + U_{{{k2},{e2}}}"), sum, &built)?;
                }
            }
        }
    }
    Ok(finish("structure", started, instances, 0, Vec::new()))
}

fn uniform_spec(ctx: &GroupCtx, range: std::ops::RangeInclusive<i64>, n: usize) -> MatroidSpec {
    MatroidSpec::Uniform(crate::io::UniformDoc {
        ctx: Some(CtxDoc::from_ctx(ctx)),
        n,
        ground: range.map(ElementDoc::Scalar).collect(),
    })
}

fn z3_elements(rows: &[[i64; 3]]) -> Vec<ElementDoc> {
    rows.iter()
        .map(|r| ElementDoc::Vector(r.to_vec()))
        .collect()
}

/// The worked `P_{3,4,5}` and `SM_5` examples over `Z^3` with `a = (2,-1,0)`.
pub fn verify_examples() -> Result<CampaignResult> {
    let started = Instant::now();
    let ctx = GroupCtx::free(3)?;
    let a = ctx.element([2, -1, 0])?;
    let p = MatroidSpec::panhandle(&ctx, 3, 4, 5, &a);
    let sm_s = MatroidSpec::schubert(
        &ctx,
        &SchubertParams::from_multipliers(&ctx, 5, &a, &[1, 2, 5])?,
    );
    let sm_t = MatroidSpec::schubert(
        &ctx,
        &SchubertParams::from_multipliers(&ctx, 5, &a, &[3, 4, 5])?,
    );

    const A1: [i64; 3] = [2, -1, 0];
    const A2: [i64; 3] = [4, -2, 0];
    const A3: [i64; 3] = [6, -3, 0];
    const A4: [i64; 3] = [8, -4, 0];
    const A5: [i64; 3] = [10, -5, 0];
    let panhandle_bases = [
        [A1, A2, A3],
        [A1, A3, A4],
        [A1, A2, A4],
        [A2, A3, A4],
        [A1, A2, A5],
        [A1, A3, A5],
        [A1, A4, A5],
        [A2, A3, A5],
        [A2, A4, A5],
        [A3, A4, A5],
    ];
    let schubert_bases = [[A1, A2, A3], [A1, A2, A4], [A1, A2, A5]];

    let pair =
        |label: &str, m: &MatroidSpec, n: &MatroidSpec, expected: bool| Instance::MatroidPair {
            label: label.to_string(),
            m: m.clone(),
            n: n.clone(),
            expected: Some(expected),
            hypothesis: Hypothesis::None,
        };
    let instances = vec![
        Instance::Bases {
            label: "P_{3,4,5} basis system".into(),
            matroid: p.clone(),
            expected: panhandle_bases.iter().map(|b| z3_elements(b)).collect(),
        },
        Instance::Bases {
            label: "SM_5(S) basis system".into(),
            matroid: sm_s.clone(),
            expected: schubert_bases.iter().map(|b| z3_elements(b)).collect(),
        },
        pair("P_{3,4,5} -> P_{3,4,5}", &p, &p, true),
        pair("SM_5(S) -> SM_5(S)", &sm_s, &sm_s, false),
        pair("P_{3,4,5} -> SM_5(S)", &p, &sm_s, false),
        pair("SM_5(S) -> P_{3,4,5}", &sm_s, &p, true),
        pair("SM_5(T) -> SM_5(T)", &sm_t, &sm_t, true),
        pair("P_{3,4,5} -> SM_5(T)", &p, &sm_t, true),
    ];
    let notes = vec![
        "S = {a, 2a, 5a}, T = {3a, 4a, 5a}, a = (2,-1,0) in Z^3".to_string(),
        "P_{3,4,5} -> SM_5(S) is not matched (S is not the top three multiples); \
         the reverse direction SM_5(S) -> P_{3,4,5} is matched since s = m - 1"
            .to_string(),
    ];
    Ok(finish("examples", started, instances, 0, notes))
}

/// Replays a recorded failure; `true` when it still fails.
pub fn replay(failure: &Failure) -> Result<bool> {
    Ok(evaluate(&failure.instance)?.is_some())
}
