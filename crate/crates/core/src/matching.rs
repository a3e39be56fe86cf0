//! Matchings in abelian groups and between matroid bases.
//!
//! A basis `{a_1..a_n}` of `M` is matched to a basis `{b_1..b_n}` of `N` when,
//! under some pairing, every `a_i + b_i` lies outside `E(M)`. Such a pairing
//! exists exactly when the bipartite graph with edges `a + b ∉ E(M)` has a
//! perfect matching. `M` is matched to `N` when each of its bases is matched
//! to some basis of `N`.

use std::collections::{BTreeSet, HashSet};

use crate::bipartite::BipartiteGraph;
use crate::error::{Error, Result};
use crate::group::{GroupCtx, GroupElement};
use crate::intersection::{matroid_intersection, TransversalMatroid};
use crate::matroid::{indices_of, IndexSet, Matroid};

pub const DEFAULT_BRUTE_FORCE_THRESHOLD: usize = 64;

/// How `basis_matched_into` searches for a target basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    /// Try every basis of `N` in lexicographic order.
    BruteForce,
    /// Independent assignment via matroid intersection.
    Intersection,
    /// Brute force when `N` has at most `threshold` bases, intersection otherwise.
    Auto { threshold: usize },
}

impl Default for Engine {
    fn default() -> Self {
        Engine::Auto {
            threshold: DEFAULT_BRUTE_FORCE_THRESHOLD,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchWitness {
    pub source: IndexSet,
    pub target: IndexSet,
    /// `(i, j)`: ground index `i` of `M` paired with ground index `j` of `N`,
    /// sorted by `i`.
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisOutcome {
    pub basis: IndexSet,
    pub witness: Option<MatchWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchReport {
    pub matched: bool,
    pub per_basis: Vec<BasisOutcome>,
    pub counterexample: Option<IndexSet>,
}

impl MatchReport {
    pub fn witnesses(&self) -> impl Iterator<Item = &MatchWitness> {
        self.per_basis.iter().filter_map(|o| o.witness.as_ref())
    }
}

/// A bijection `f: A -> B` with `a + f(a) ∉ A`, as pairs sorted by `a`.
pub fn group_matching(
    ctx: &GroupCtx,
    a: &BTreeSet<GroupElement>,
    b: &BTreeSet<GroupElement>,
) -> Result<Option<Vec<(GroupElement, GroupElement)>>> {
    if a.len() != b.len() {
        return Err(Error::Domain(format!(
            "group matching needs |A| = |B|, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let left: Vec<&GroupElement> = a.iter().collect();
    let right: Vec<&GroupElement> = b.iter().collect();
    let mut g = BipartiteGraph::new(left.len(), right.len());
    for (i, x) in left.iter().enumerate() {
        for (j, y) in right.iter().enumerate() {
            if !a.contains(&ctx.add(x, y)?) {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g.perfect_left_matching().map(|mate| {
        mate.into_iter()
            .enumerate()
            .map(|(i, j)| (left[i].clone(), right[j].clone()))
            .collect()
    }))
}

fn require_same_group(m: &Matroid, n: &Matroid) -> Result<()> {
    if m.ctx() != n.ctx() {
        return Err(Error::GroundMismatch(
            "matroids live in different groups".into(),
        ));
    }
    Ok(())
}

/// Edges `(i, j)` between the source basis (slot `i` = its `i`-th element) and
/// every ground element `j` of `N`, present when the sum avoids `E(M)`.
fn escape_graph(m: &Matroid, source: &[usize], n: &Matroid) -> Result<BipartiteGraph> {
    let ground: HashSet<&GroupElement> = m.ground().iter().collect();
    let mut g = BipartiteGraph::new(source.len(), n.ground().len());
    for (slot, &i) in source.iter().enumerate() {
        for (j, y) in n.ground().iter().enumerate() {
            if !ground.contains(&m.ctx().add(&m.ground()[i], y)?) {
                g.add_edge(slot, j);
            }
        }
    }
    Ok(g)
}

fn pairing_within(
    graph: &BipartiteGraph,
    source: &[usize],
    target: IndexSet,
) -> Option<Vec<(usize, usize)>> {
    let keep = indices_of(target);
    let restricted: Vec<Vec<usize>> = (0..graph.left_len())
        .map(|slot| {
            keep.iter()
                .enumerate()
                .filter(|(_, &j)| graph.has_edge(slot, j))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    BipartiteGraph::from_adjacency(restricted, keep.len())
        .perfect_left_matching()
        .map(|mate| {
            mate.into_iter()
                .enumerate()
                .map(|(slot, k)| (source[slot], keep[k]))
                .collect()
        })
}

/// A pairing of `source` (a basis of `M`) with `target` (a basis of `N`) whose
/// sums all avoid `E(M)`.
pub fn basis_pair_matched(
    m: &Matroid,
    source: IndexSet,
    n: &Matroid,
    target: IndexSet,
) -> Result<Option<Vec<(usize, usize)>>> {
    require_same_group(m, n)?;
    if source.count_ones() != target.count_ones() {
        return Err(Error::RankMismatch {
            left: source.count_ones() as usize,
            right: target.count_ones() as usize,
        });
    }
    let src = indices_of(source);
    let graph = escape_graph(m, &src, n)?;
    Ok(pairing_within(&graph, &src, target))
}

/// Some basis of `N` that `source` is matched to, with its pairing.
pub fn basis_matched_into(
    m: &Matroid,
    source: IndexSet,
    n: &Matroid,
    engine: Engine,
) -> Result<Option<MatchWitness>> {
    require_same_group(m, n)?;
    if m.rank() != n.rank() {
        return Err(Error::RankMismatch {
            left: m.rank(),
            right: n.rank(),
        });
    }
    if !m.is_basis(source) {
        return Err(Error::Domain(format!(
            "{:?} is not a basis of M",
            indices_of(source)
        )));
    }
    let src = indices_of(source);
    let graph = escape_graph(m, &src, n)?;
    let use_brute = match engine {
        Engine::BruteForce => true,
        Engine::Intersection => false,
        Engine::Auto { threshold } => n.bases().len() <= threshold,
    };
    let found = if use_brute {
        n.bases()
            .iter()
            .find_map(|&t| pairing_within(&graph, &src, t).map(|pairs| (t, pairs)))
    } else {
        let transversal = TransversalMatroid::new(graph.clone());
        matroid_intersection(&transversal, n, n.rank())?.map(|t| {
            let pairs = pairing_within(&graph, &src, t)
                .expect("a common independent set is matchable by construction");
            (t, pairs)
        })
    };
    Ok(found.map(|(target, pairs)| MatchWitness {
        source,
        target,
        pairs,
    }))
}

/// Decides whether `M` is matched to `N`, stopping at the first basis of `M`
/// (in lexicographic order) that matches nowhere.
pub fn matroid_matched(m: &Matroid, n: &Matroid) -> Result<MatchReport> {
    matroid_matched_with(m, n, Engine::default())
}

pub fn matroid_matched_with(m: &Matroid, n: &Matroid, engine: Engine) -> Result<MatchReport> {
    require_same_group(m, n)?;
    if m.rank() != n.rank() {
        return Err(Error::RankMismatch {
            left: m.rank(),
            right: n.rank(),
        });
    }
    if m.rank() == 0 {
        return Err(Error::Domain("matchability needs positive rank".into()));
    }
    for (name, x) in [("M", m), ("N", n)] {
        if let Some(i) = x.loops().first() {
            return Err(Error::Precondition(format!(
                "{name} has a loop at index {i}"
            )));
        }
    }
    let mut per_basis = Vec::with_capacity(m.bases().len());
    for &b in m.bases() {
        let witness = basis_matched_into(m, b, n, engine)?;
        let failed = witness.is_none();
        per_basis.push(BasisOutcome { basis: b, witness });
        if failed {
            return Ok(MatchReport {
                matched: false,
                per_basis,
                counterexample: Some(b),
            });
        }
    }
    Ok(MatchReport {
        matched: true,
        per_basis,
        counterexample: None,
    })
}

/// Re-checks a witness from scratch: bijection, target basis, sums outside `E(M)`.
pub fn validate_witness(m: &Matroid, n: &Matroid, w: &MatchWitness) -> bool {
    if !m.is_basis(w.source) || !n.is_basis(w.target) {
        return false;
    }
    let sources: IndexSet = w.pairs.iter().fold(0, |acc, &(i, _)| acc | (1 << i));
    let targets: IndexSet = w.pairs.iter().fold(0, |acc, &(_, j)| acc | (1 << j));
    if w.pairs.len() != m.rank() || sources != w.source || targets != w.target {
        return false;
    }
    let ground: HashSet<&GroupElement> = m.ground().iter().collect();
    w.pairs.iter().all(|&(i, j)| {
        m.ctx()
            .add(&m.ground()[i], &n.ground()[j])
            .map(|s| !ground.contains(&s))
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{mask_of, PanhandleParams};

    fn ints(ctx: &GroupCtx, xs: &[i64]) -> BTreeSet<GroupElement> {
        xs.iter().map(|&x| ctx.element([x]).unwrap()).collect()
    }

    fn panhandle(ctx: &GroupCtx, a: &GroupElement, n: usize, s: usize, m: usize) -> Matroid {
        Matroid::panhandle(
            ctx,
            &PanhandleParams {
                n,
                s,
                m,
                a: a.clone(),
            },
        )
        .unwrap()
    }

    #[test]
    fn group_matching_examples() {
        let z = GroupCtx::integers();
        let a = ints(&z, &[1, 2]);
        let f = group_matching(&z, &a, &a).unwrap().unwrap();
        for (x, y) in &f {
            assert!(!a.contains(&z.add(x, y).unwrap()));
        }
        // 1 -> 1 gives 2 ∈ A, so the only valid bijection swaps
        assert_eq!(f[0].1, z.element([2]).unwrap());

        let with_zero = ints(&z, &[0, 3, 5]);
        assert!(group_matching(&z, &with_zero, &with_zero)
            .unwrap()
            .is_none());

        assert!(matches!(
            group_matching(&z, &ints(&z, &[1]), &ints(&z, &[1, 2])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn basis_pair_examples() {
        let z = GroupCtx::integers();
        let one = Matroid::uniform(&z, vec![z.element([1]).unwrap()], 1).unwrap();
        assert_eq!(
            basis_pair_matched(&one, 1, &one, 1).unwrap(),
            Some(vec![(0, 0)])
        );

        // E(M) = {1,2,3,4}, both bases {1,2}: sums 2,3,3,4 all lie in E(M)
        let ground: Vec<_> = ints(&z, &[1, 2, 3, 4]).into_iter().collect();
        let u = Matroid::uniform(&z, ground, 2).unwrap();
        assert_eq!(basis_pair_matched(&u, 0b11, &u, 0b11).unwrap(), None);

        let a = z.element([1]).unwrap();
        let p = panhandle(&z, &a, 3, 4, 5);
        let got = basis_pair_matched(&p, mask_of(&[0, 1, 2]), &p, mask_of(&[2, 3, 4]))
            .unwrap()
            .unwrap();
        // a->5a, 2a->4a, 3a->3a is the only pairing whose sums all leave [5]_a
        assert_eq!(got, vec![(0, 4), (1, 3), (2, 2)]);

        assert!(matches!(
            basis_pair_matched(&p, 0b111, &p, 0b11),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn basis_matched_into_examples() {
        let z = GroupCtx::integers();
        let a = z.element([1]).unwrap();
        for engine in [Engine::BruteForce, Engine::Intersection] {
            for (n, m) in [(2, 4), (3, 5), (3, 6)] {
                let p = panhandle(&z, &a, n, m - 1, m);
                let low = mask_of(&(0..n).collect::<Vec<_>>());
                let w = basis_matched_into(&p, low, &p, engine).unwrap().unwrap();
                assert_eq!(w.target, mask_of(&(m - n..m).collect::<Vec<_>>()));
                assert!(validate_witness(&p, &p, &w));
            }
            let p = panhandle(&z, &a, 3, 3, 5);
            assert!(basis_matched_into(&p, 0b111, &p, engine).unwrap().is_none());
        }
    }

    #[test]
    fn uniform_target_always_matches() {
        let z = GroupCtx::integers();
        let a = z.element([1]).unwrap();
        let target = panhandle(&z, &a, 3, 5, 6);
        for s in 3..6 {
            let src = panhandle(&z, &a, 3, s, 6);
            for &b in src.bases() {
                assert!(basis_matched_into(&src, b, &target, Engine::Intersection)
                    .unwrap()
                    .is_some());
            }
        }
    }

    #[test]
    fn matroid_matched_guards() {
        let z = GroupCtx::integers();
        let a = z.element([1]).unwrap();
        let p3 = panhandle(&z, &a, 3, 4, 5);
        let p2 = panhandle(&z, &a, 2, 4, 5);
        assert!(matches!(
            matroid_matched(&p3, &p2),
            Err(Error::RankMismatch { .. })
        ));

        let c = GroupCtx::cyclic(1_048_583).unwrap();
        let other = panhandle(&c, &c.element([1]).unwrap(), 3, 4, 5);
        assert!(matches!(
            matroid_matched(&p3, &other),
            Err(Error::GroundMismatch(_))
        ));
    }

    #[test]
    fn report_records_first_counterexample() {
        let z = GroupCtx::integers();
        let a = z.element([1]).unwrap();
        let p = panhandle(&z, &a, 3, 3, 5);
        let r = matroid_matched(&p, &p).unwrap();
        assert!(!r.matched);
        assert_eq!(r.counterexample, Some(0b111));
        assert_eq!(r.per_basis.last().unwrap().witness, None);
    }
}
