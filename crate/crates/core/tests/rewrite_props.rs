use paraprod::algebra::{Poly, Scalar, WPoly, ZPoly};
use paraprod::experiments::{random_expr, random_zpoly, reassociate};
use paraprod::expr::{Letter, OperatorExpr};
use paraprod::rewrite::{evaluate_exact, normalize, st_monomial_action};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn zpow(l: usize) -> ZPoly {
    Poly::monomial(Scalar::from_int(1), l)
}

/// Random expression and symbol with `g(0) != 0`, degree at most 4.
fn case() -> impl Strategy<Value = (OperatorExpr, ZPoly)> {
    any::<u64>().prop_map(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (random_expr(&mut rng, 6, 4), random_zpoly(&mut rng, 4, true))
    })
}

fn delta_free(seed: u64) -> OperatorExpr {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let e = random_expr(&mut rng, 5, 4);
        if e.is_delta_free() {
            return e;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_acts_like_the_expression((e, g) in case()) {
        let c = normalize(&e).unwrap();
        let back = c.to_expr().unwrap_or_else(|| OperatorExpr::delta(Poly::zero()));
        for l in 0..=12 {
            prop_assert_eq!(evaluate_exact(&e, &zpow(l), &g), evaluate_exact(&back, &zpow(l), &g), "{} on z^{}", e, l);
        }
    }

    #[test]
    fn reassociation_does_not_change_the_normal_form((e, _g) in case()) {
        prop_assert_eq!(normalize(&reassociate(&e)).unwrap(), normalize(&e).unwrap());
        let swapped = OperatorExpr::Sum(vec![e.clone(), OperatorExpr::t()]);
        let back = OperatorExpr::Sum(vec![OperatorExpr::t(), e.clone()]);
        prop_assert_eq!(normalize(&swapped).unwrap(), normalize(&back).unwrap());
    }

    #[test]
    fn homogeneity((e, _g) in case(), n in -5i64..=5, d in 1i64..=4, im in -2i64..=2) {
        let c: WPoly = Poly::constant(Scalar::ratio(n, d) + Scalar::i() * Scalar::from_int(im));
        let lhs = normalize(&e.clone().scaled(c.clone())).unwrap();
        prop_assert_eq!(lhs, normalize(&e).unwrap().scale(&c));
    }

    #[test]
    fn delta_part_is_divisible_by_w(seed in any::<u64>()) {
        let e = delta_free(seed);
        prop_assert!(normalize(&e).unwrap().delta_divisible_by_w(), "{}", e);
    }
}

#[test]
fn leading_term_law() {
    let g: ZPoly = Poly::new(vec![Scalar::from_int(3), Scalar::ratio(-2, 5)]);
    let u = g.sub(&Poly::constant(g.constant_term()));
    let b = u.coeff(1);
    for m in 1..=4u32 {
        for j in 0..=m {
            let mut letters = vec![OperatorExpr::letter(Letter::S); (m - j) as usize];
            letters.extend(vec![OperatorExpr::letter(Letter::T); j as usize]);
            let word = OperatorExpr::product(letters);
            for n in 1..=4u32 {
                let out = evaluate_exact(&word, &u.pow(n), &g);
                let (c, deg) = st_monomial_action(m, j, n);
                assert_eq!(out.degree(), Some(deg as usize), "m={m} j={j} n={n}");
                assert_eq!(out.leading().unwrap().clone(), c * b.pow(deg), "m={m} j={j} n={n}");
            }
        }
    }
}
