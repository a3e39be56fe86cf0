use std::collections::BTreeSet;

use proptest::prelude::*;

use mmatch::group::{find_compatible_order, sumset};
use mmatch::matroid::{indices_of, k_subsets};
use mmatch::{
    group_matching, matroid_matched, GroupCtx, GroupElement, Matroid, PValue, PanhandleParams,
    SchubertParams,
};

fn ctx_strategy() -> impl Strategy<Value = GroupCtx> {
    prop_oneof![
        (1usize..=3).prop_map(|k| GroupCtx::free(k).unwrap()),
        prop::collection::vec(2i64..=20, 1..=3).prop_map(|m| GroupCtx::finite(m).unwrap()),
    ]
}

fn element(ctx: &GroupCtx, raw: &[i64]) -> GroupElement {
    let coords: Vec<i64> = (0..ctx.dim()).map(|i| raw[i % raw.len()]).collect();
    let coords = match ctx {
        GroupCtx::FiniteProduct { moduli } => coords
            .iter()
            .zip(moduli)
            .map(|(x, m)| x.rem_euclid(*m))
            .collect(),
        GroupCtx::FreeAbelian { .. } => coords,
    };
    ctx.element(coords).unwrap()
}

fn raw() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-50i64..=50, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn group_axioms(ctx in ctx_strategy(), x in raw(), y in raw(), z in raw()) {
        let (x, y, z) = (element(&ctx, &x), element(&ctx, &y), element(&ctx, &z));
        let xy = ctx.add(&x, &y).unwrap();
        prop_assert_eq!(&xy, &ctx.add(&y, &x).unwrap());
        prop_assert_eq!(
            ctx.add(&xy, &z).unwrap(),
            ctx.add(&x, &ctx.add(&y, &z).unwrap()).unwrap()
        );
        prop_assert_eq!(ctx.add(&x, &ctx.zero()).unwrap(), x.clone());
        prop_assert!(ctx.add(&x, &ctx.neg(&x).unwrap()).unwrap().is_zero());
        prop_assert_eq!(ctx.scalar_mul(2, &x).unwrap(), ctx.add(&x, &x).unwrap());
    }
}

proptest! {
    #[test]
    fn lex_order_is_translation_invariant(k in 1usize..=3, x in raw(), y in raw(), z in raw()) {
        let ctx = GroupCtx::free(k).unwrap();
        let (x, y, z) = (element(&ctx, &x), element(&ctx, &y), element(&ctx, &z));
        let before = ctx.lex_compare(&x, &y).unwrap();
        let after = ctx
            .lex_compare(&ctx.add(&x, &z).unwrap(), &ctx.add(&y, &z).unwrap())
            .unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn m_bracket_lists_multiples(k in 1usize..=3, a in raw(), m in 1i64..=8) {
        let ctx = GroupCtx::free(k).unwrap();
        let a = element(&ctx, &a);
        prop_assume!(!a.is_zero());
        let bracket = ctx.m_bracket(&a, m).unwrap();
        prop_assert_eq!(bracket.len(), m as usize);
        prop_assert!(bracket.is_compatible());
        for j in 1..=m {
            prop_assert!(bracket.position(&ctx.scalar_mul(j, &a).unwrap()).is_some());
        }
    }

    #[test]
    fn sumset_is_symmetric(
        ctx in ctx_strategy(),
        a in prop::collection::vec(raw(), 1..5),
        b in prop::collection::vec(raw(), 1..5),
    ) {
        let a: BTreeSet<_> = a.iter().map(|r| element(&ctx, r)).collect();
        let b: BTreeSet<_> = b.iter().map(|r| element(&ctx, r)).collect();
        let ab = sumset(&ctx, &a, &b).unwrap();
        prop_assert_eq!(&ab, &sumset(&ctx, &b, &a).unwrap());
        prop_assert!(ab.len() <= a.len() * b.len());
        prop_assert!(ab.len() >= a.len().max(b.len()) || !ctx.is_torsion_free());
    }

    #[test]
    fn compatible_orders_recheck(n in 2i64..=12, picks in prop::collection::btree_set(0i64..12, 1..=5)) {
        let ctx = GroupCtx::cyclic(n).unwrap();
        let set: BTreeSet<GroupElement> =
            picks.iter().map(|&x| ctx.element([x % n]).unwrap()).collect();
        if let Some(order) = find_compatible_order(&ctx, &set).unwrap() {
            let elems = order.elements();
            prop_assert_eq!(elems.len(), set.len());
            // x < y and x+z, y+z in the set imply x+z < y+z
            for (i, x) in elems.iter().enumerate() {
                for y in &elems[i + 1..] {
                    for z in elems {
                        let (xz, yz) = (ctx.add(x, z).unwrap(), ctx.add(y, z).unwrap());
                        if let (Some(p), Some(q)) = (order.position(&xz), order.position(&yz)) {
                            prop_assert!(p < q);
                        }
                    }
                }
            }
        }
    }
}

/// Finite groups with at most 64 elements: p(G) is the least element order.
#[test]
fn p_of_g_is_least_nonzero_order() {
    let mut shapes: Vec<Vec<i64>> = (2..=64).map(|n| vec![n]).collect();
    for a in 2..=8 {
        for b in 2..=8 {
            if a * b <= 64 {
                shapes.push(vec![a, b]);
            }
        }
    }
    shapes.push(vec![2, 2, 2]);
    shapes.push(vec![3, 3, 3]);
    shapes.push(vec![2, 4, 6]);
    for moduli in shapes {
        let ctx = GroupCtx::finite(moduli.clone()).unwrap();
        let mut least = u64::MAX;
        let mut all: Vec<Vec<i64>> = vec![vec![]];
        for &m in &moduli {
            all = all
                .into_iter()
                .flat_map(|v| {
                    (0..m).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        for coords in all.into_iter().skip(1) {
            let x = ctx.element(coords).unwrap();
            let mut acc = x.clone();
            let mut order = 1;
            while !acc.is_zero() {
                acc = ctx.add(&acc, &x).unwrap();
                order += 1;
            }
            least = least.min(order);
        }
        assert_eq!(ctx.p_of_g(), PValue::Finite(least), "moduli {moduli:?}");
    }
    assert_eq!(GroupCtx::free(2).unwrap().p_of_g(), PValue::Infinite);
}

fn ints(xs: impl IntoIterator<Item = i64>) -> Vec<GroupElement> {
    let z = GroupCtx::integers();
    xs.into_iter().map(|x| z.element([x]).unwrap()).collect()
}

fn family_strategy() -> impl Strategy<Value = (usize, usize, usize, Vec<usize>)> {
    (2usize..=7).prop_flat_map(|m| {
        (1..m).prop_flat_map(move |n| {
            (
                Just(m),
                Just(n),
                n..m,
                Just((1..=m).collect::<Vec<_>>()).prop_shuffle(),
            )
                .prop_map(move |(m, n, s, perm)| {
                    let mut top: Vec<usize> = perm[..n].to_vec();
                    top.sort_unstable();
                    (m, n, s, top)
                })
        })
    })
}

fn families(m: usize, n: usize, s: usize, top: &[usize]) -> (Matroid, Matroid) {
    let z = GroupCtx::integers();
    let a = z.element([1]).unwrap();
    let p = Matroid::panhandle(
        &z,
        &PanhandleParams {
            n,
            s,
            m,
            a: a.clone(),
        },
    )
    .unwrap();
    let params = SchubertParams::from_multipliers(&z, m, &a, top).unwrap();
    (p, Matroid::schubert(&z, &params).unwrap())
}

proptest! {
    #[test]
    fn family_structure((m, n, s, top) in family_strategy()) {
        let (p, sm) = families(m, n, s, &top);
        for mat in [&p, &sm] {
            prop_assert!(mat.satisfies_exchange());
            prop_assert_eq!(mat.rank_of(mat.ground_mask()), n);
            let dual = mat.dual();
            prop_assert!(dual.satisfies_exchange());
            let back = dual.dual();
            prop_assert_eq!(back.bases(), mat.bases());
        }
        // the Schubert basis system is a down-set under the componentwise order
        let bases: BTreeSet<u64> = sm.bases().iter().copied().collect();
        for t in k_subsets(m, n) {
            let ti = indices_of(t);
            let below_some = bases.iter().any(|&b| {
                ti.iter().zip(indices_of(b)).all(|(x, y)| *x <= y)
            });
            prop_assert_eq!(below_some, bases.contains(&t));
        }
    }

    #[test]
    fn witnesses_revalidate((m, n, s, top) in family_strategy(), shift in 0i64..5) {
        let (p, _) = families(m, n, s, &top);
        let z = GroupCtx::integers();
        // same shape on shifted ground
        let shape: Vec<Vec<usize>> = p.bases().iter().map(|&b| indices_of(b)).collect();
        let q = Matroid::from_bases(&z, ints((1..=m as i64).map(|x| x + shift)), &shape).unwrap();
        let report = matroid_matched(&p, &q).unwrap();
        let em = p.ground_set();
        for w in report.witnesses() {
            prop_assert!(p.is_basis(w.source) && q.is_basis(w.target));
            let left: BTreeSet<usize> = w.pairs.iter().map(|x| x.0).collect();
            let right: BTreeSet<usize> = w.pairs.iter().map(|x| x.1).collect();
            prop_assert_eq!(left, indices_of(w.source).into_iter().collect::<BTreeSet<_>>());
            prop_assert_eq!(right, indices_of(w.target).into_iter().collect::<BTreeSet<_>>());
            for &(i, j) in &w.pairs {
                let sum = z.add(&p.ground()[i], &q.ground()[j]).unwrap();
                prop_assert!(!em.contains(&sum));
            }
        }
        prop_assert_eq!(report.matched, report.counterexample.is_none());
    }

    /// Enlarging the target basis system to all n-subsets cannot break matchedness.
    #[test]
    fn uniform_target_dominates((m, n, s, top) in family_strategy()) {
        let (p, sm) = families(m, n, s, &top);
        let z = GroupCtx::integers();
        let u = Matroid::uniform(&z, p.ground().to_vec(), n).unwrap();
        for target in [&p, &sm] {
            if target.is_loopless() && matroid_matched(&p, target).unwrap().matched {
                prop_assert!(matroid_matched(&p, &u).unwrap().matched);
            }
        }
    }

    #[test]
    fn self_matching_without_zero(picks in prop::collection::btree_set(-20i64..=20, 1..=8)) {
        let z = GroupCtx::integers();
        let a: BTreeSet<GroupElement> = picks.iter().map(|&x| z.element([x]).unwrap()).collect();
        let found = group_matching(&z, &a, &a).unwrap();
        prop_assert_eq!(found.is_some(), !picks.contains(&0));
    }

    #[test]
    fn small_sets_match(
        p in prop::sample::select(vec![5i64, 7, 11, 13]),
        seed in prop::collection::vec(0i64..100, 2..=24),
    ) {
        let ctx = GroupCtx::cyclic(p).unwrap();
        let half = seed.len() / 2;
        let a: BTreeSet<GroupElement> =
            seed[..half].iter().map(|x| ctx.element([x % p]).unwrap()).collect();
        let b: BTreeSet<GroupElement> = seed[half..]
            .iter()
            .filter(|x| *x % p != 0)
            .map(|x| ctx.element([x % p]).unwrap())
            .take(a.len())
            .collect();
        prop_assume!(a.len() == b.len() && (a.len() as i64) < p);
        prop_assert!(group_matching(&ctx, &a, &b).unwrap().is_some());
    }
}
