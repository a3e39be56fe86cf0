//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use mmatch::io::MatroidSpec;
use mmatch::suite::{
    evaluate, generators, replay, verify_asy_panhandle, verify_asymmetric_schubert, verify_engines,
    verify_examples, verify_losonczy, verify_paving_theorem, verify_small_sets, verify_structure,
    CampaignResult, Instance, SweepBounds, Universe,
};
use mmatch::{GroupCtx, Matroid, SchubertParams};

struct Verdict {
    passed: bool,
    detail: String,
}

fn check(id: usize, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> bool {
    let started = Instant::now();
    let v = f();
    let elapsed = started.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let passed = v.passed && in_time;
    let budget = limit.map_or(String::new(), |l| {
        format!(" (limit {:.0} s)", l.as_secs_f64())
    });
    println!(
        "criterion {id} [{}] {title}: {}; {:.2} s{budget}",
        if passed { "PASS" } else { "FAIL" },
        v.detail,
        elapsed.as_secs_f64(),
    );
    passed
}

fn summary(r: &CampaignResult) -> String {
    format!(
        "{} instances, {} skipped, {} failures",
        r.instances,
        r.skipped,
        r.failures.len()
    )
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Instances an exhaustive panhandle sweep must contain: for each generator,
/// `m`, and `n`, every source against every `s'`.
fn expected_panhandle_count(max_m: usize, min_n: usize, gens: usize) -> usize {
    let mut total = 0;
    for m in 2..=max_m {
        for n in min_n..m {
            let sources = (m - n) + binom(m, n);
            total += sources * (m - n);
        }
    }
    total * gens
}

fn expected_schubert_count(max_m: usize, gens: usize) -> usize {
    let mut total = 0;
    for m in 2..=max_m {
        for n in 1..m {
            let sources = (m - n) + binom(m, n);
            total += binom(m, n) * (sources + 1);
        }
    }
    total * gens
}

/// `A` admits a matching onto `B` (`a + f(a) ∉ A`), by subset DP over `B`.
fn oracle_group_matching(a: &[i64], b: &[i64], modulus: Option<i64>) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let norm = |x: i64| modulus.map_or(x, |k| x.rem_euclid(k));
    let in_a: BTreeSet<i64> = a.iter().map(|&x| norm(x)).collect();
    let k = b.len();
    let mut reachable = vec![false; 1 << k];
    reachable[0] = true;
    for mask in 0..1usize << k {
        if !reachable[mask] {
            continue;
        }
        let i = mask.count_ones() as usize;
        if i == k {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if mask & (1 << j) == 0 && !in_a.contains(&norm(a[i] + y)) {
                reachable[mask | (1 << j)] = true;
            }
        }
    }
    reachable[(1 << k) - 1]
}

/// Bases of `P_{n,s,m}` and `SM_m(S)` on `{1..m}`, built independently.
fn oracle_panhandle(n: usize, s: usize, m: usize) -> Vec<Vec<i64>> {
    subsets(m, n)
        .into_iter()
        .filter(|b| b.iter().filter(|&&x| x <= s as i64).count() + 1 >= n)
        .collect()
}

fn oracle_schubert(m: usize, top: &[i64]) -> Vec<Vec<i64>> {
    subsets(m, top.len())
        .into_iter()
        .filter(|t| t.iter().zip(top).all(|(x, y)| x <= y))
        .collect()
}

fn subsets(m: usize, n: usize) -> Vec<Vec<i64>> {
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize == n)
        .map(|mask| {
            (0..m)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| i as i64 + 1)
                .collect()
        })
        .collect()
}

fn oracle_matched(m_bases: &[Vec<i64>], ground: &BTreeSet<i64>, n_bases: &[Vec<i64>]) -> bool {
    // the matroid condition excludes sums landing anywhere in E(M)
    let excluded: Vec<i64> = ground.iter().copied().collect();
    m_bases.iter().all(|b| {
        n_bases
            .iter()
            .any(|t| oracle_matching_avoiding(b, t, &excluded))
    })
}

fn oracle_matching_avoiding(a: &[i64], b: &[i64], excluded: &[i64]) -> bool {
    let k = b.len();
    let mut reachable = vec![false; 1 << k];
    reachable[0] = true;
    for mask in 0..1usize << k {
        if !reachable[mask] || mask.count_ones() as usize == k {
            continue;
        }
        let i = mask.count_ones() as usize;
        for (j, &y) in b.iter().enumerate() {
            if mask & (1 << j) == 0 && !excluded.contains(&(a[i] + y)) {
                reachable[mask | (1 << j)] = true;
            }
        }
    }
    reachable[(1 << k) - 1]
}

fn element_sets(m: &Matroid) -> BTreeSet<BTreeSet<Vec<i64>>> {
    m.bases()
        .iter()
        .map(|&b| {
            m.elements_of(b)
                .iter()
                .map(|x| x.coords().to_vec())
                .collect()
        })
        .collect()
}

fn main() {
    let mut results = Vec::new();
    let gens = generators(false);

    results.push(check(
        1,
        "basis systems of P_{3,4,5} and SM_5(S)",
        Some(Duration::from_secs(1)),
        || {
            let z3 = GroupCtx::free(3).unwrap();
            let a = z3.element([2, -1, 0]).unwrap();
            let p = MatroidSpec::panhandle(&z3, 3, 4, 5, &a).build().unwrap();
            let params = SchubertParams::from_multipliers(&z3, 5, &a, &[1, 2, 5]).unwrap();
            let sm = Matroid::schubert(&z3, &params).unwrap();
            let mult = |k: i64| vec![2 * k, -k, 0];
            let to_sets = |rows: &[[i64; 3]]| -> BTreeSet<BTreeSet<Vec<i64>>> {
                rows.iter()
                    .map(|r| r.iter().map(|&k| mult(k)).collect())
                    .collect()
            };
            let want_p = to_sets(&[
                [1, 2, 3],
                [1, 3, 4],
                [1, 2, 4],
                [2, 3, 4],
                [1, 2, 5],
                [1, 3, 5],
                [1, 4, 5],
                [2, 3, 5],
                [2, 4, 5],
                [3, 4, 5],
            ]);
            let want_sm = to_sets(&[[1, 2, 3], [1, 2, 4], [1, 2, 5]]);
            let got_p = element_sets(&p);
            let got_sm = element_sets(&sm);
            let campaign = verify_examples().unwrap();
            Verdict {
                passed: got_p == want_p && got_sm == want_sm && campaign.passed(),
                detail: format!(
                    "{} panhandle bases, {} Schubert bases, examples campaign {}",
                    got_p.len(),
                    got_sm.len(),
                    summary(&campaign)
                ),
            }
        },
    ));

    results.push(check(2, "panhandle sweep m <= 7", Some(Duration::from_secs(120)), || {
        let r = verify_asy_panhandle(&SweepBounds { max_m: 7, min_n: 1 }, &gens).unwrap();
        let rank_one = r
            .failures
            .iter()
            .filter(|f| matches!(&f.instance, Instance::MatroidPair { n: MatroidSpec::Panhandle(t), .. } if t.n == 1 && t.s + 1 < t.m))
            .count();
        let higher = verify_asy_panhandle(&SweepBounds { max_m: 7, min_n: 2 }, &gens).unwrap();
        // independent check over Z with a = 1
        let mut oracle_disagreements = 0;
        for m in 2..=7usize {
            let ground: BTreeSet<i64> = (1..=m as i64).collect();
            for n in 1..m {
                for s2 in n..m {
                    let target = oracle_panhandle(n, s2, m);
                    let mut sources: Vec<Vec<Vec<i64>>> =
                        (n..m).map(|s| oracle_panhandle(n, s, m)).collect();
                    sources.extend(subsets(m, n).iter().map(|top| oracle_schubert(m, top)));
                    for src in sources {
                        let got = oracle_matched(&src, &ground, &target);
                        if got != (s2 == m - 1) {
                            oracle_disagreements += 1;
                        }
                    }
                }
            }
        }
        Verdict {
            passed: r.passed(),
            detail: format!(
                "{}; {rank_one} of them at n = 1 with s' < m - 1; n >= 2: {}; independent oracle over Z finds {oracle_disagreements} exceptions",
                summary(&r),
                summary(&higher)
            ),
        }
    }));

    results.push(check(
        3,
        "Schubert sweep m <= 6",
        Some(Duration::from_secs(120)),
        || {
            let r = verify_asymmetric_schubert(&SweepBounds { max_m: 6, min_n: 1 }, &gens).unwrap();
            let mut oracle_disagreements = 0;
            for m in 2..=6usize {
                let ground: BTreeSet<i64> = (1..=m as i64).collect();
                for n in 1..m {
                    let mut sources: Vec<Vec<Vec<i64>>> =
                        (n..m).map(|s| oracle_panhandle(n, s, m)).collect();
                    sources.extend(subsets(m, n).iter().map(|top| oracle_schubert(m, top)));
                    for top in subsets(m, n) {
                        let uniform = top[0] == (m - n + 1) as i64;
                        let target = oracle_schubert(m, &top);
                        for src in &sources {
                            if oracle_matched(src, &ground, &target) != uniform {
                                oracle_disagreements += 1;
                            }
                        }
                    }
                }
            }
            Verdict {
                passed: r.passed() && oracle_disagreements == 0,
                detail: format!(
                    "{}; independent oracle over Z finds {oracle_disagreements} exceptions",
                    summary(&r)
                ),
            }
        },
    ));

    results.push(check(
        4,
        "sampled torsion-free paving instances",
        Some(Duration::from_secs(60)),
        || {
            let r = verify_paving_theorem(1000, 0).unwrap();
            let replays_fail = r.failures.iter().all(|f| replay(f).unwrap_or(true));
            let mut oracle_disagreements = 0;
            for f in r.failures.iter().take(20) {
                // failures must also fail under the independent oracle
                if let Instance::MatroidPair { m, n, .. } = &f.instance {
                    let (m, n) = (m.build().unwrap(), n.build().unwrap());
                    let ints = |x: &Matroid| -> Vec<Vec<i64>> {
                        x.bases()
                            .iter()
                            .map(|&b| x.elements_of(b).iter().map(|e| e.coords()[0]).collect())
                            .collect()
                    };
                    let ground: BTreeSet<i64> = m.ground().iter().map(|e| e.coords()[0]).collect();
                    if oracle_matched(&ints(&m), &ground, &ints(&n)) {
                        oracle_disagreements += 1;
                    }
                }
            }
            Verdict {
                passed: r.instances == 1000
                    && r.passed()
                    && replays_fail
                    && oracle_disagreements == 0,
                detail: summary(&r),
            }
        },
    ));

    results.push(check(
        5,
        "self-matchings in Z/9 and {-4..4}",
        Some(Duration::from_secs(30)),
        || {
            let cyclic = verify_losonczy(&Universe::Cyclic(9), 9).unwrap();
            let range = verify_losonczy(&Universe::IntRange(-4, 4), 9).unwrap();
            let mut oracle_disagreements = 0;
            for (universe, modulus) in [
                ((0..9).collect::<Vec<i64>>(), Some(9)),
                ((-4..=4).collect(), None),
            ] {
                for mask in 1u32..1 << 9 {
                    let a: Vec<i64> = (0..9)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| universe[i])
                        .collect();
                    if oracle_group_matching(&a, &a, modulus) == a.contains(&0) {
                        oracle_disagreements += 1;
                    }
                }
            }
            Verdict {
                passed: cyclic.instances == 511
                    && range.instances == 511
                    && cyclic.passed()
                    && range.passed()
                    && oracle_disagreements == 0,
                detail: format!(
                    "Z/9: {}; {{-4..4}}: {}; oracle exceptions {oracle_disagreements}",
                    summary(&cyclic),
                    summary(&range)
                ),
            }
        },
    ));

    results.push(check(
        6,
        "random small sets in Z/13",
        Some(Duration::from_secs(10)),
        || {
            let r = verify_small_sets(13, 1000, 0).unwrap();
            Verdict {
                passed: r.instances == 1000 && r.passed(),
                detail: summary(&r),
            }
        },
    ));

    results.push(check(
        7,
        "engine agreement on 500 random pairs",
        Some(Duration::from_secs(60)),
        || {
            let r = verify_engines(500, 0).unwrap();
            let agreed = r.instances - r.failures.len();
            Verdict {
                passed: r.instances == 500 && r.passed(),
                detail: format!("{agreed}/{} agree", r.instances),
            }
        },
    ));

    results.push(check(
        8,
        "basis exchange and hyperplane partitions",
        None,
        || {
            let r = verify_structure(7, &gens).unwrap();
            Verdict {
                passed: r.passed(),
                detail: summary(&r),
            }
        },
    ));

    results.push(check(
        9,
        "sweeps are exhaustive at full scale",
        None,
        || {
            let p = verify_asy_panhandle(&SweepBounds { max_m: 7, min_n: 1 }, &gens).unwrap();
            let s = verify_asymmetric_schubert(&SweepBounds { max_m: 6, min_n: 1 }, &gens).unwrap();
            let want_p = expected_panhandle_count(7, 1, gens.len());
            let want_s = expected_schubert_count(6, gens.len());
            // a replayed instance must give the same verdict
            let stable = p
                .failures
                .iter()
                .take(10)
                .all(|f| evaluate(&f.instance).unwrap().is_some());
            Verdict {
                passed: p.instances == want_p && s.instances == want_s && stable,
                detail: format!(
                    "panhandle {} of {want_p} combinations, Schubert {} of {want_s}",
                    p.instances, s.instances
                ),
            }
        },
    ));

    let failed = results.iter().filter(|&&ok| !ok).count();
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
