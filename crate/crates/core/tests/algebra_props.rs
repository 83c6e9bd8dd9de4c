use paraprod::algebra::{upoly_m_transform, upoly_s_transform, upoly_t_transform, Poly, Scalar, UPoly, WPoly};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=5, -4i64..=4).prop_map(|(n, d, im)| Scalar::ratio(n, d) + Scalar::i() * Scalar::ratio(im, 3))
}

fn wpoly() -> impl Strategy<Value = WPoly> {
    prop::collection::vec(scalar(), 0..4).prop_map(Poly::new)
}

fn upoly() -> impl Strategy<Value = UPoly> {
    prop::collection::vec(wpoly(), 0..4).prop_map(Poly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wpoly_ring_axioms(a in wpoly(), b in wpoly(), c in wpoly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&WPoly::one()), a.clone());
    }

    #[test]
    fn upoly_ring_axioms(a in upoly(), b in upoly(), c in upoly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(b.add(&c).mul(&a), b.mul(&a).add(&c.mul(&a)));
        prop_assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn scalar_field(a in scalar(), b in scalar()) {
        prop_assume!(b != Scalar::from_int(0));
        prop_assert_eq!(&(&a / &b) * &b, a.clone());
        prop_assert_eq!(b.inv().unwrap() * b.clone(), Scalar::from_int(1));
    }

    #[test]
    fn transforms_are_linear(a in upoly(), b in upoly(), c in wpoly()) {
        let combo = a.add(&b.scale(&c));
        for t in [upoly_t_transform, upoly_s_transform, upoly_m_transform] {
            prop_assert_eq!(t(&combo), t(&a).add(&t(&b).scale(&c)));
        }
    }

    #[test]
    fn transform_degrees(p in upoly()) {
        prop_assume!(!p.is_zero());
        let d = p.degree().unwrap();
        prop_assert_eq!(upoly_t_transform(&p).degree(), Some(d + 1));
        if d == 0 {
            prop_assert!(upoly_s_transform(&p).is_zero());
        } else {
            prop_assert_eq!(upoly_s_transform(&p).degree(), Some(d + 1));
        }
    }
}
