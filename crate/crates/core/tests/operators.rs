use num_complex::Complex64;
use proptest::prelude::*;

use padicwave_core::fourier::fourier;
use padicwave_core::pseudodiff::{
    apply, gamma_p, log_kernel_pairing, riesz_kernel_pairing, riesz_pairing, transpose, Symbol, TabulatedSymbol,
};
use padicwave_core::{Ball, CosetGrid, PAdicVector, Prime, TestFunction};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn prime() -> impl Strategy<Value = Prime> {
    prop_oneof![Just(2u64), Just(3), Just(5)].prop_map(|p| Prime::new(p).unwrap())
}

fn grid(p: Prime, n: usize, big_n: i64, depth: i64, centre: i64) -> CosetGrid {
    let c = PAdicVector::from_ratios(p, &vec![(centre, p.get() as i64); n]).unwrap();
    CosetGrid::new(Ball::new(big_n, c), big_n - depth).unwrap()
}

fn values(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| Complex64::new(a, b)), len)
}

/// Subtract the mean so the result has vanishing integral.
fn lizorkin(g: CosetGrid, v: Vec<Complex64>) -> TestFunction {
    let f = TestFunction::new(g, v).unwrap();
    let mean = f.integrate() / f.support().measure_f64();
    f.sub(&TestFunction::indicator(f.support()).scale(mean)).unwrap()
}

/// Random Lizorkin function on a small ball, centred or not.
fn function() -> impl Strategy<Value = TestFunction> {
    (prime(), 1usize..=2, -1i64..=1, 1i64..=2, -30i64..30).prop_flat_map(|(p, n, big_n, depth, centre)| {
        let depth = if p.get() == 5 && n == 2 { 1 } else { depth };
        let g = grid(p, n, big_n, depth, centre);
        values(g.len()).prop_map(move |v| lizorkin(g.clone(), v))
    })
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

/// `∫ f g`, no conjugation.
fn bilinear(f: &TestFunction, g: &TestFunction) -> Complex64 {
    f.mul(g).unwrap().integrate()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn output_stays_lizorkin(f in function(), alpha in -2.0f64..2.0) {
        let out = apply(&Symbol::power_re(alpha), &f).unwrap();
        prop_assert!(out.is_lizorkin());
        prop_assert_eq!(out.support().radius_exp(), f.support().radius_exp());
        prop_assert!(out.support().contains(f.grid().center()).unwrap());
    }

    #[test]
    fn symbols_compose_as_operators(f in function(), a in -2.0f64..2.0, b in -2.0f64..2.0, t in -3.0f64..3.0) {
        let (sa, sb) = (Symbol::power(Complex64::new(a, t)), Symbol::power_re(b));
        let both = apply(&Symbol::product(sa.clone(), sb.clone()), &f).unwrap();
        let seq = apply(&sa, &apply(&sb, &f).unwrap()).unwrap();
        prop_assert!(both.sup_distance(&seq).unwrap() < 1e-9 * (1.0 + both.sup_norm()));
        let back = apply(&Symbol::reciprocal(sa.clone()), &apply(&sa, &f).unwrap()).unwrap();
        prop_assert!(back.sup_distance(&f).unwrap() < 1e-9 * (1.0 + f.sup_norm()));
    }

    #[test]
    fn transpose_is_the_bilinear_adjoint(
        p in prime(),
        n in 1usize..=2,
        centres in (-10i64..10, -10i64..10),
        table in values(125 * 125),
        fv in values(25 * 25),
        gv in values(25 * 25),
    ) {
        // Lizorkin functions on unit balls with cells of radius p^{-1} have
        // transforms on the sphere |ξ| = p, which the table covers.
        let pp = p.get() as usize;
        let f = lizorkin(grid(p, n, 0, 1, centres.0), fv[..pp.pow(n as u32)].to_vec());
        let g = lizorkin(grid(p, n, 0, 1, if centres.1 % 2 == 0 { centres.0 } else { centres.1 }), gv[..pp.pow(n as u32)].to_vec());
        let mut k = 0;
        let t = TabulatedSymbol::from_fn(p, n, 1, 1, 0, |_| { k += 1; table[k % table.len()] }).unwrap();
        let sym = Symbol::Tabulated(t);
        let lhs = bilinear(&apply(&sym, &f).unwrap(), &g);
        let rhs = bilinear(&f, &apply(&transpose(&sym), &g).unwrap());
        prop_assert!(close(lhs, rhs, 1e-10), "{} vs {}", lhs, rhs);
    }

    /// `(D^{-α} f)(0) = ⟨κ_α, f(-·)⟩`.
    #[test]
    fn riesz_potential_at_origin(f in function(), alpha in 0.2f64..3.0) {
        let n = f.dim() as f64;
        prop_assume!((alpha - n).abs() > 1e-3);
        let zero = PAdicVector::zero(f.prime(), f.dim());
        let direct = apply(&Symbol::power_re(-alpha), &f).unwrap().evaluate(&zero).unwrap();
        let kernel = riesz_kernel_pairing(c(alpha), &f.reflect().unwrap()).unwrap();
        prop_assert!(close(direct, kernel, 1e-9), "{} vs {}", direct, kernel);
    }

    #[test]
    fn log_kernel_inverts_the_critical_power(f in function()) {
        let zero = PAdicVector::zero(f.prime(), f.dim());
        let direct = apply(&Symbol::power_re(-(f.dim() as f64)), &f).unwrap().evaluate(&zero).unwrap();
        let kernel = log_kernel_pairing(&f.reflect().unwrap()).unwrap();
        prop_assert!(close(direct, kernel, 1e-9), "{} vs {}", direct, kernel);
    }

    /// `⟨|x|^{α-n}, F[φ]⟩ = Γ(α) ⟨|ξ|^{-α}, φ⟩` for any test function.
    #[test]
    fn riesz_kernel_transforms_to_a_power(
        p in prime(), n in 1usize..=2, big_n in -1i64..=1, centre in -30i64..30,
        v in values(125), alpha in -2.0f64..3.0,
    ) {
        let n_f = n as f64;
        prop_assume!(alpha.abs() > 1e-2 && (alpha - n_f).abs() > 1e-2);
        let g = grid(p, n, big_n, 1, centre);
        let len = g.len();
        let phi = TestFunction::new(g, v[..len].to_vec()).unwrap();
        let lhs = riesz_pairing(c(alpha), &fourier(&phi).unwrap()).unwrap();
        let rhs = gamma_p(p, n, c(alpha)).unwrap().value * riesz_pairing(c(n_f - alpha), &phi).unwrap();
        prop_assert!(close(lhs, rhs, 1e-9), "{} vs {}", lhs, rhs);
    }
}
