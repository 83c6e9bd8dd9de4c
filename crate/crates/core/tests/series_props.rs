use num_complex::Complex64;
use paraprod::algebra::{Poly, Scalar, ZPoly};
use paraprod::experiments::{random_expr, random_zpoly};
use paraprod::expr::parse;
use paraprod::rewrite::evaluate_exact;
use paraprod::series::{apply_expr, symbol_series, FloatSeries, SymbolSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly_pair(seed: u64) -> (ZPoly, ZPoly) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (random_zpoly(&mut rng, 5, false), random_zpoly(&mut rng, 4, true))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn float_mode_matches_exact(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng, 4, 3);
        let (f, g) = (random_zpoly(&mut rng, 4, false), random_zpoly(&mut rng, 3, true));
        let exact = evaluate_exact(&e, &f, &g);
        let n = 4 + 3 * e.letter_count() + 2;
        let fl = apply_expr(&e, &FloatSeries::from_poly(&f, n), &FloatSeries::from_poly(&g, n));
        let want = FloatSeries::from_poly(&exact, n);
        prop_assert!(fl.max_abs_diff(&want) <= 1e-12 * (1.0 + want.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max)), "{}", e);
    }

    #[test]
    fn multiplication_splits(seed in any::<u64>()) {
        let (f, g) = poly_pair(seed);
        let n = 12;
        let (fs, gs) = (FloatSeries::from_poly(&f, n), FloatSeries::from_poly(&g, n));
        let m = apply_expr(&parse("M").unwrap(), &fs, &gs);
        let split = apply_expr(&parse("S + T + d0{w}").unwrap(), &fs, &gs);
        prop_assert!(m.max_abs_diff(&split) <= 1e-12);
    }

    #[test]
    fn real_powers_invert(beta in -2.0f64..2.0, c in prop::collection::vec(-1.0f64..1.0, 3)) {
        let mut p: Vec<Scalar> = c.iter().map(|&x| Scalar::approx_f64(x)).collect();
        p[0] = Scalar::from_int(2);
        let s = symbol_series(&SymbolSpec::poly(Poly::new(p)), 40).unwrap();
        let prod = s.pow_real(beta).unwrap().mul(&s.pow_real(-beta).unwrap());
        prop_assert!(prod.max_abs_diff(&FloatSeries::constant(Complex64::new(1.0, 0.0), 40)) <= 1e-10);
    }
}

#[test]
fn t_raises_powers_of_the_log_kernel() {
    let n = 200;
    let g = symbol_series(&SymbolSpec::LogEKernel, n).unwrap();
    let u = g.sub(&FloatSeries::constant(g.coeff(0), n));
    let t = parse("T").unwrap();
    for k in 1..=5u32 {
        let lhs = apply_expr(&t, &u.pow(k), &g);
        let rhs = u.pow(k + 1).scale(&Complex64::new(1.0 / (k + 1) as f64, 0.0));
        assert!(lhs.max_abs_diff(&rhs) <= 1e-10, "n = {k}");
    }
}
