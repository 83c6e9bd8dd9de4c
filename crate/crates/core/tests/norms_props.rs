use paraprod::algebra::{Poly, Scalar, ZPoly};
use paraprod::expr::parse;
use paraprod::norms::{hardy_norm, operator_matrix, operator_norm_trunc};
use paraprod::series::SymbolSpec;
use proptest::prelude::*;

fn zpoly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec((-4i64..=4, -4i64..=4), 1..6)
        .prop_map(|c| Poly::new(c.into_iter().map(|(a, b)| Scalar::ratio(a, 2) + Scalar::i() * Scalar::ratio(b, 3)).collect()))
}

fn l2(p: &ZPoly) -> f64 {
    p.coeffs().iter().map(|c| c.to_c64().norm_sqr()).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn hardy_norm_is_coefficient_norm(p in zpoly()) {
        let h = hardy_norm(&SymbolSpec::poly(p.clone()), 2.0, 64);
        prop_assert!((h - l2(&p)).abs() <= 1e-10 * (1.0 + l2(&p)));
    }

    #[test]
    fn power_norms_nest(p in zpoly()) {
        prop_assume!(!p.is_zero());
        // ||f^m||^(1/m) over H^2 is nondecreasing in m
        let r: Vec<f64> = (1..=4u32).map(|m| l2(&p.pow(m)).powf(1.0 / m as f64)).collect();
        for w in r.windows(2) {
            prop_assert!(w[0] <= w[1] * (1.0 + 1e-12), "{:?}", r);
        }
    }

    #[test]
    fn finite_sections_grow(word in "[MST](\\*[MST]){0,2}", g in zpoly(), alpha in 0i32..=2) {
        let e = parse(&word).unwrap();
        let mut last = 0.0;
        for n in [4usize, 8, 16] {
            let v = operator_norm_trunc(&operator_matrix(&e, &g, alpha, n).unwrap(), 1e-13).unwrap();
            prop_assert!(v >= last * (1.0 - 1e-9), "{} N={}: {} < {}", word, n, v, last);
            last = v;
        }
    }
}
