mod common;

use std::f64::consts::PI;

use cauchylike::displacement::cl2full;
use cauchylike::gsa::{
    adjoint_repr, build_gather_plan, collapse_knots, gsa_schur_complement, inverse_generators,
    SchurState,
};
use cauchylike::oracle::{dense_cond1, dense_schur_complement, dense_solve, norm_inf, rel_error};
use cauchylike::{
    clsolve, clsolve_with, CauchyLike, Error, PivotStrategy, SolveOptions, SolvePath,
};
use common::{c, max_abs_diff, random_cauchy_like, Lcg};
use ndarray::Array2;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn all_pivots() -> Vec<PivotStrategy> {
    (0..=5)
        .map(|k| PivotStrategy::from_code(k, 3).unwrap())
        .collect()
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}

/// Right knots with every value repeated `mult` times (last group may be shorter).
fn repeated_knots(n: usize, mult: usize, r: usize, seed: u64) -> CauchyLike<C64> {
    let mut g = Lcg(seed);
    let groups = n.div_ceil(mult);
    let t = (0..n)
        .map(|k| C64::from_polar(1.0, 2.0 * PI * (k as f64 + 0.5) / n as f64))
        .collect();
    let s = (0..n)
        .map(|j| C64::from_polar(0.5, 2.0 * PI * (j % groups) as f64 / groups as f64))
        .collect();
    CauchyLike::new(t, s, g.cmat(n, r), g.cmat(n, r)).unwrap()
}

#[test]
fn schur_complement_matches_dense_on_8x8() {
    for seed in 0..20 {
        let repr = random_cauchy_like(8, 3, seed);
        let a = cl2full(&repr).unwrap();
        for p in 1..8 {
            let (t, s, g, h) =
                gsa_schur_complement(repr.t(), repr.s(), repr.g(), repr.h(), p).unwrap();
            let sc = cl2full(&CauchyLike::new(t, s, g, h).unwrap()).unwrap();
            let want = dense_schur_complement(&a, p).unwrap();
            assert!(
                max_abs_diff(&sc, &want) <= 1e-10 * norm_inf(&want).max(1.0),
                "seed {seed} p {p}"
            );
        }
    }
}

#[test]
fn schur_complement_rejects_bad_order() {
    let repr = random_cauchy_like(4, 2, 1);
    assert!(gsa_schur_complement(repr.t(), repr.s(), repr.g(), repr.h(), 4).is_err());
}

#[test]
fn inverse_generators_invert_densely() {
    for n in [1, 2, 5, 16, 32] {
        for piv in [
            PivotStrategy::Partial,
            PivotStrategy::Gu { period: 10 },
            PivotStrategy::Complete,
        ] {
            let repr = random_cauchy_like(n, 2, n as u64);
            let inv = inverse_generators(&repr, piv).unwrap();
            let prod = cl2full(&inv).unwrap().dot(&cl2full(&repr).unwrap());
            let err = norm_inf(&(prod - Array2::<C64>::eye(n)));
            assert!(err <= 1e-8, "n = {n}, {piv:?}: {err:e}");
        }
    }
}

#[test]
fn adjoint_representation_is_conjugate_transpose() {
    let repr = random_cauchy_like(6, 2, 9);
    let a = cl2full(&repr).unwrap();
    let b = cl2full(&adjoint_repr(&repr)).unwrap();
    assert!(max_abs_diff(&b, &a.t().mapv(|v| v.conj())) <= 1e-13);
}

#[test]
fn gu_refresh_leaves_entries_unchanged() {
    for seed in 0..5 {
        let n = 24;
        let repr = random_cauchy_like(n, 4, seed);
        let b = Lcg(seed).cmat(n, 1);
        let mut st =
            SchurState::new(&repr, &b, &SolveOptions::new(PivotStrategy::Partial)).unwrap();
        for _ in 0..6 {
            st.step().unwrap();
        }
        let before: Vec<C64> = (6..n)
            .flat_map(|i| (6..n).map(move |j| (i, j)))
            .map(|(i, j)| st.live_entry(i, j).unwrap())
            .collect();
        let scale = before.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        st.gu_refresh();
        let after: Vec<C64> = (6..n)
            .flat_map(|i| (6..n).map(move |j| (i, j)))
            .map(|(i, j)| st.live_entry(i, j).unwrap())
            .collect();
        let diff = before
            .iter()
            .zip(&after)
            .fold(0.0f64, |m, (x, y)| m.max((x - y).norm()));
        assert!(diff <= 1e-12 * scale.max(1.0), "seed {seed}: {diff:e}");
    }
}

#[test]
fn exact_duplicates_need_gathering() {
    let repr = repeated_knots(30, 3, 3, 4);
    let b = Lcg(4).cmat(30, 2);
    let plain = clsolve_with(
        &repr,
        &b,
        &SolveOptions::new(PivotStrategy::Partial).path(SolvePath::Plain),
    );
    assert!(matches!(plain, Err(Error::RepeatedRightKnots { .. })));
    for piv in [
        PivotStrategy::Gu { period: 10 },
        PivotStrategy::Complete,
        PivotStrategy::SweetBrent,
    ] {
        assert_eq!(
            clsolve(&repr, &b, piv).unwrap_err(),
            Error::PivotIncompatibleWithRepeatedKnots
        );
    }
    let plan = build_gather_plan(repr.s());
    assert_eq!((plan.distinct(), plan.max_multiplicity()), (10, 3));
}

#[test]
fn too_many_repeats_is_structurally_singular() {
    let repr = repeated_knots(12, 4, 3, 2);
    let b = Array2::<C64>::ones((12, 1));
    let err = clsolve(&repr, &b, PivotStrategy::Partial).unwrap_err();
    assert!(err.is_singularity(), "{err:?}");
}

#[test]
fn collapse_merges_only_close_knots() {
    let s = vec![c(1.0, 0.0), c(1.0 + 1e-14, 0.0), c(2.0, 0.0), c(2.0, 1e-3)];
    assert_eq!(
        collapse_knots(&s, 1e-12),
        vec![c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(2.0, 1e-3)]
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_pivot_matches_dense(n in 1usize..=48, r in 1usize..=5, d in 1usize..=3, seed: u64) {
        let repr = random_cauchy_like(n, r, seed);
        let a = cl2full(&repr).unwrap();
        prop_assume!(dense_cond1(&a) < 1e6);
        let b = Lcg(seed ^ 0xabc).cmat(n, d);
        let want = dense_solve(&a, &b).unwrap();
        for piv in all_pivots() {
            let rep = clsolve(&repr, &b, piv).unwrap();
            prop_assert!(rel_error(&rep.x, &want) <= 1e-8, "{:?}", piv);
            prop_assert!((0.0..=1.0).contains(&rep.rcond_u));
            prop_assert!(is_permutation(&rep.row_perm) && is_permutation(&rep.col_perm));
        }
    }

    #[test]
    fn gathered_path_matches_dense(n in 2usize..=64, mult in 1usize..=4, extra in 0usize..=2, seed: u64) {
        let r = mult + extra;
        let repr = repeated_knots(n, mult, r, seed);
        let a = cl2full(&repr).unwrap();
        prop_assume!(dense_cond1(&a) < 1e8);
        let b = Lcg(seed).cmat(n, 2);
        let want = dense_solve(&a, &b).unwrap();
        for piv in [PivotStrategy::None, PivotStrategy::Partial] {
            let rep = clsolve(&repr, &b, piv).unwrap();
            prop_assert!(rel_error(&rep.x, &want) <= 1e-8, "{:?}", piv);
        }
    }

    #[test]
    fn growth_trace_starts_at_input_and_ends_empty(n in 1usize..=32, seed: u64) {
        let repr = random_cauchy_like(n, 2, seed);
        let b = Lcg(seed).cmat(n, 1);
        let rep = clsolve_with(&repr, &b, &SolveOptions::new(PivotStrategy::Partial).track_growth(true)).unwrap();
        let tr = rep.growth.unwrap();
        prop_assert_eq!(tr.left.len(), n + 1);
        let g0 = repr.g().iter().fold(0.0f64, |m, v| m.max(v.norm()));
        prop_assert!((tr.left[0] - g0).abs() <= 1e-15 * g0);
        prop_assert_eq!(tr.right[n], 0.0);
        prop_assert!(tr.left_ratio() >= 1.0 && tr.right_ratio() >= 1.0);
    }
}
