use num_complex::Complex64;
use proptest::prelude::*;

use padicwave_core::pseudodiff::{apply, Symbol};
use padicwave_core::solver::{solve, SpectralProblem};
use padicwave_core::wavelets::{enumerate_indices, synthesize, CoefficientMap};
use padicwave_core::{Ball, Prime, TestFunction, WaveletIndex};

const TOL: f64 = 1e-9;

/// Wavelets inside `B_1` with `γ ∈ {0, 1}`.
fn span(p: u64, n: usize) -> Vec<WaveletIndex> {
    let p = Prime::new(p).unwrap();
    enumerate_indices(&Ball::centered(p, n, 1), 0, 1, &vec![1; n]).unwrap()
}

fn combination(idx: &[WaveletIndex], c: &[(f64, f64)]) -> TestFunction {
    let map: CoefficientMap = idx.iter().cloned().zip(c.iter().map(|&(a, b)| Complex64::new(a, b))).collect();
    synthesize(&map).unwrap()
}

fn case() -> impl Strategy<Value = (Vec<WaveletIndex>, Vec<(f64, f64)>, Vec<(f64, f64)>)> {
    prop_oneof![Just((2u64, 1usize)), Just((3, 1)), Just((2, 2))].prop_flat_map(|(p, n)| {
        let idx = span(p, n);
        let coeffs = proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), idx.len());
        (Just(idx), coeffs.clone(), coeffs)
    })
}

fn solve_with(sym: Symbol, rhs: &TestFunction, idx: &[WaveletIndex]) -> TestFunction {
    solve(&SpectralProblem::new(sym, rhs.clone(), idx.to_vec(), TOL).unwrap()).unwrap().solution
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solution_is_linear_in_rhs((idx, u, v) in case(), a in -2.0f64..2.0, b in -2.0f64..2.0, beta in 0.2f64..2.5) {
        let (f, g) = (combination(&idx, &u), combination(&idx, &v));
        let sum = f.scale(a.into()).add(&g.scale(b.into())).unwrap();
        let sym = Symbol::power_re(beta);
        let lhs = solve_with(sym.clone(), &sum, &idx);
        let rhs = solve_with(sym.clone(), &f, &idx).scale(a.into()).add(&solve_with(sym, &g, &idx).scale(b.into())).unwrap();
        prop_assert!(lhs.l2_distance(&rhs).unwrap() < TOL * (1.0 + lhs.l2_norm()));
    }

    /// Solving with `D^β` is `D^{-β}`, and two solves chain like `D^{β1+β2}`.
    #[test]
    fn solves_follow_the_semigroup((idx, u, _v) in case(), b1 in 0.2f64..2.0, b2 in -1.0f64..2.0) {
        let f = combination(&idx, &u);
        let u1 = solve_with(Symbol::power_re(b1), &f, &idx);
        let direct = apply(&Symbol::power_re(-b1), &f).unwrap();
        prop_assert!(u1.l2_distance(&direct).unwrap() < TOL * (1.0 + u1.l2_norm()));
        let chained = solve_with(Symbol::power_re(b2), &u1, &idx);
        let once = solve_with(Symbol::power_re(b1 + b2), &f, &idx);
        prop_assert!(chained.l2_distance(&once).unwrap() < TOL * (1.0 + once.l2_norm()));
    }
}
