use num_complex::Complex64;
use proptest::prelude::*;

use padicwave_core::fourier::fourier;
use padicwave_core::{Ball, CosetGrid, PAdicVector, Prime, TestFunction};

fn prime() -> impl Strategy<Value = Prime> {
    prop_oneof![Just(2u64), Just(3), Just(5)].prop_map(|p| Prime::new(p).unwrap())
}

/// A random function on `B_N(c)` with at most a few hundred cells.
fn function() -> impl Strategy<Value = TestFunction> {
    (prime(), 1usize..=2, -2i64..=2, 1i64..=2, any::<u64>()).prop_flat_map(|(p, n, big_n, depth, seed)| {
        let depth = if p.get() == 5 && n == 2 { 1 } else { depth };
        let grid = {
            let c = PAdicVector::from_ratios(p, &vec![((seed % 97) as i64, p.get().pow((seed % 3) as u32) as i64); n])
                .unwrap();
            CosetGrid::new(Ball::new(big_n, c), big_n - depth).unwrap()
        };
        let len = grid.len();
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len).prop_map(move |v| {
            TestFunction::new(grid.clone(), v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap()
        })
    })
}

fn point(p: Prime, n: usize, raw: &[(i64, u32)]) -> PAdicVector {
    let ratios: Vec<(i64, i64)> = raw.iter().take(n).map(|&(a, e)| (a, p.get().pow(e) as i64)).collect();
    PAdicVector::from_ratios(p, &ratios).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integral_survives_refinement(f in function(), extra in 1i64..=2) {
        let g = f.grid();
        let fine = CosetGrid::new(g.ball().clone(), g.cell_exp() - extra).unwrap();
        let r = f.resample(&fine).unwrap();
        let scale = f.support().measure_f64();
        prop_assert!((r.integrate() - f.integrate()).norm() < 1e-12 * scale);
        prop_assert!((r.l2_norm() - f.l2_norm()).abs() < 1e-12 * scale);
    }

    #[test]
    fn inner_product_is_positive(f in function()) {
        let ip = f.inner_product(&f).unwrap();
        let scale = f.support().measure_f64();
        prop_assert!(ip.re >= 0.0 && ip.im.abs() < 1e-12 * scale);
        prop_assert!((ip.re - f.l2_norm().powi(2)).abs() < 1e-12 * scale);
    }

    #[test]
    fn affine_pullbacks_compose(
        f in function(),
        g1 in -2i64..=2, g2 in -2i64..=2,
        a1 in -20i64..20, a2 in -20i64..20, e1 in 0u32..3, e2 in 0u32..3,
        pts in proptest::collection::vec((-200i64..200, 0u32..4), 20),
    ) {
        // f(p^{g1}x - a1) then (p^{g2}x - a2): f(p^{g1+g2}x - p^{g1}a2 - a1)
        let p = f.prime();
        let n = f.dim();
        let a1v = point(p, n, &vec![(a1, e1); n]);
        let a2v = point(p, n, &vec![(a2, e2); n]);
        let twice = f.affine_pullback(g1, &a1v).unwrap().affine_pullback(g2, &a2v).unwrap();
        let once = f.affine_pullback(g1 + g2, &a2v.scale_p(g1).add(&a1v)).unwrap();
        for chunk in pts.chunks(2) {
            let x = point(p, n, &[chunk[0], chunk[chunk.len() - 1]]);
            let direct = f.evaluate(&x.scale_p(g1 + g2).sub(&a2v.scale_p(g1)).sub(&a1v)).unwrap();
            prop_assert_eq!(twice.evaluate(&x).unwrap(), direct);
            prop_assert_eq!(once.evaluate(&x).unwrap(), direct);
        }
    }

    /// Zero mean exactly when the transform vanishes on `B_{-N}`.
    #[test]
    fn zero_mean_iff_transform_vanishes_near_origin(f in function(), centre in any::<bool>()) {
        let f = if centre { f.centered().unwrap() } else { f };
        let omega = TestFunction::indicator(f.support());
        let mean = f.integrate() / f.support().measure_f64();
        let g = f.sub(&omega.scale(mean)).unwrap();
        prop_assert!(g.is_lizorkin());
        let big_n = f.grid().support_exp();
        let near = |h: &TestFunction| {
            let fh = fourier(h).unwrap();
            let ball = Ball::centered(h.prime(), h.dim(), -big_n);
            let probe = CosetGrid::new(ball, fh.grid().cell_exp().min(-big_n)).unwrap();
            fh.resample(&probe).unwrap().sup_norm()
        };
        prop_assert!(near(&g) < 1e-12);
        if f.integrate().norm() > 1e-6 {
            prop_assert!(near(&f) > 1e-9);
        }
    }
}
