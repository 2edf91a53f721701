//! The fast paths against the brute-force oracles.

use mondrian_core::filters::{side_subsets, Axis};
use mondrian_core::oracle::{naive_tiler, random_guillotine, subset_sum_all, OracleOutcome};
use mondrian_core::pieces::{piece_set, CaseSpec, FreeCatalog, PieceCatalog};
use mondrian_core::solver::{solve, EngineProblem, Outcome, SearchOptions, Symmetry};
use mondrian_core::Unlimited;
use proptest::prelude::*;

fn check_subsets<C: PieceCatalog>(cat: &C, min_size: usize) -> Result<(), TestCaseError> {
    let (w, h) = cat.board();
    for (axis, target) in [(Axis::Horizontal, w), (Axis::Vertical, h)] {
        let values: Vec<(usize, u32)> = cat
            .pieces()
            .iter()
            .map(|p| (p.class, axis.span(p)))
            .collect();
        let fast: Vec<Vec<usize>> = side_subsets(cat, axis, min_size)
            .into_iter()
            .map(|s| s.members)
            .collect();
        prop_assert_eq!(fast, subset_sum_all(&values, target as u64, min_size));
    }
    Ok(())
}

fn verdict(o: &Outcome) -> bool {
    match o {
        Outcome::Found(t) => {
            t.validate().expect("solver tiling must validate");
            true
        }
        Outcome::Exhausted => false,
        Outcome::Limit => panic!("unlimited search hit a limit"),
    }
}

fn oracle_verdict(o: &OracleOutcome) -> bool {
    if let OracleOutcome::Found(t) = o {
        t.validate().expect("oracle tiling must validate");
    }
    o.is_found()
}

/// Entries as the naive tiler wants them, one class per rectangle.
fn entries(rects: &[(u32, u32)], rotations: bool) -> Vec<(usize, u32, u32)> {
    let mut out = Vec::new();
    for (c, &(w, h)) in rects.iter().enumerate() {
        out.push((c, w, h));
        if rotations && w != h {
            out.push((c, h, w));
        }
    }
    out
}

fn non_congruent(rects: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    let mut seen = Vec::new();
    rects
        .into_iter()
        .filter(|&(w, h)| {
            let key = (w.min(h), w.max(h));
            let fresh = !seen.contains(&key);
            seen.push(key);
            fresh
        })
        .collect()
}

#[test]
fn subsets_of_small_piece_sets_match_the_power_set() {
    // The power set doubles per entry, so only a few of the largest sets.
    let (mut checked, mut large) = (0, 0);
    for n in 1..=200 {
        for m in n..=n + 40 {
            for r in 2..=12 {
                let Ok(case) = CaseSpec::new(n, m, r) else {
                    continue;
                };
                let Ok(ps) = piece_set(case) else { continue };
                if ps.len() > 20 || (ps.len() > 16 && large >= 12) {
                    continue;
                }
                large += usize::from(ps.len() > 16);
                for min_size in [1, 2] {
                    check_subsets(&ps, min_size).unwrap();
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 500, "only {checked} piece sets checked");
}

#[test]
fn pmp_solver_matches_naive_tiler_on_small_boards() {
    for w in 1..=9 {
        for h in 1..=9 {
            for r in 2..=(w * h) {
                let Ok(case) = CaseSpec::new(w, h, r) else {
                    continue;
                };
                let Ok(ps) = piece_set(case) else { continue };
                let naive: Vec<(usize, u32, u32)> = ps
                    .pieces()
                    .iter()
                    .map(|p| (p.class, p.width, p.height))
                    .collect();
                let expected = oracle_verdict(&naive_tiler(w, h, &naive));
                for symmetry in [Symmetry::Auto, Symmetry::Off] {
                    let p = EngineProblem::pmp(
                        &ps,
                        SearchOptions {
                            symmetry,
                            node_limit: None,
                        },
                    )
                    .unwrap();
                    assert_eq!(
                        verdict(&solve(&p, &mut Unlimited).outcome),
                        expected,
                        "{case} {symmetry:?}"
                    );
                }
            }
        }
    }
}

fn small_instance() -> impl Strategy<Value = (u32, u32, Vec<(u32, u32)>, bool)> {
    (1u32..=12, 1u32..=12, any::<bool>()).prop_flat_map(|(w, h, rotations)| {
        let side = 1u32..=w.max(h);
        (
            Just(w),
            Just(h),
            prop::collection::vec((side.clone(), side), 1..=10).prop_map(non_congruent),
            Just(rotations),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn subsets_of_free_catalogs_match_the_power_set(
        w in 1u32..=40,
        h in 1u32..=40,
        rects in prop::collection::vec((1u32..=40, 1u32..=40), 1..=12),
        min_size in 1usize..=3,
    ) {
        let cat = FreeCatalog::from_rectangles(w, h, &non_congruent(rects));
        prop_assume!(cat.pieces().len() <= 20);
        check_subsets(&cat, min_size)?;
    }

    #[test]
    fn generic_solver_matches_naive_tiler((w, h, rects, rotations) in small_instance()) {
        let p = EngineProblem::generic(w, h, &rects, rotations, SearchOptions::default()).unwrap();
        let expected = oracle_verdict(&naive_tiler(w, h, &entries(&rects, rotations)));
        prop_assert_eq!(verdict(&solve(&p, &mut Unlimited).outcome), expected);
    }

    #[test]
    fn mutated_guillotine_instances_agree(
        w in 2u32..=12,
        h in 2u32..=12,
        cuts in 1u32..=8,
        seed in any::<u64>(),
        swap in (0usize..10, 1u32..=12, 1u32..=12),
    ) {
        let Ok(inst) = random_guillotine(w, h, cuts, seed) else { return Ok(()) };
        let mut rects = inst.pieces.clone();
        let i = swap.0 % rects.len();
        rects[i] = (swap.1.min(w.max(h)), swap.2.min(w.max(h)));
        let rects = non_congruent(rects);
        for rotations in [true, false] {
            let p = EngineProblem::generic(w, h, &rects, rotations, SearchOptions::default()).unwrap();
            let expected = oracle_verdict(&naive_tiler(w, h, &entries(&rects, rotations)));
            prop_assert_eq!(verdict(&solve(&p, &mut Unlimited).outcome), expected);
        }
    }
}
