use paraprod::algebra::{Poly, Scalar, ZPoly};
use paraprod::classify::{classify_expr, detect_poly_in_tgm, SpaceClass, Verdict};
use paraprod::expr::{parse, Atom, OperatorExpr};
use proptest::prelude::*;

fn spaces() -> [SpaceClass; 3] {
    [SpaceClass::bergman(0.0, 2.0), SpaceClass::bergman(1.5, 3.0), SpaceClass::hardy(2.0)]
}

/// Mostly zero, so every branch of the order-two case split shows up.
fn coef() -> impl Strategy<Value = i64> {
    prop_oneof![3 => Just(0i64), 2 => -3i64..=3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_two_operators(a in prop::array::uniform5(coef()), p0 in -2i64..=2, p1 in -2i64..=2) {
        let text = format!(
            "({})*T + ({})*T^2 + ({})*S*T + ({})*S + ({})*S^2 + d0{{w*({p0}) + w*({p1})*u}}",
            a[0], a[1], a[2], a[3], a[4]
        );
        let e = parse(&text).unwrap();
        for sp in spaces() {
            let v = classify_expr(&e, sp).unwrap().verdict;
            let power = |m| if sp.is_hardy() { Verdict::IffGPowerInBMOA(m) } else { Verdict::IffGPowerInBloch(m) };
            if a[3] != 0 || a[4] != 0 {
                prop_assert_eq!(v, Verdict::IffGInHinfty, "{}", text);
            } else if a[2] != 0 {
                prop_assert_eq!(v, power(2), "{}", text);
            } else if a[0] != 0 || a[1] != 0 {
                prop_assert_eq!(v, power(1), "{}", text);
            } else {
                prop_assert!(matches!(v, Verdict::Zero | Verdict::TrivialIffGPowerInSpace(_)), "{}: {:?}", text, v);
            }
        }
    }

    #[test]
    fn verdict_ignores_nonzero_scaling(word in "[MST](\\*[MST]){0,3}", n in 1i64..=7, d in 1i64..=3, im in -2i64..=2) {
        let c = Scalar::ratio(n, d) + Scalar::i() * Scalar::from_int(im);
        let e = parse(&word).unwrap();
        let scaled = e.clone().scaled(Poly::constant(c));
        for sp in spaces() {
            let (a, b) = (classify_expr(&scaled, sp).unwrap().verdict, classify_expr(&e, sp).unwrap().verdict);
            // the uncovered message prints P_n, which does scale
            prop_assert_eq!((a.tag(), a.power()), (b.tag(), b.power()));
        }
    }

    #[test]
    fn detects_polynomials_in_t_gm(m in 1u32..=4, q in prop::collection::vec(-3i64..=3, 1..4)) {
        prop_assume!(q.iter().any(|&c| c != 0));
        // Q(x) = sum q_i x^(i+1), built as a sum of scaled powers of the atom
        let atom = OperatorExpr::Atom(Atom::T(m));
        let mut terms = Vec::new();
        let mut expect = ZPoly::zero();
        for (i, &c) in q.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let k = i as u32 + 1;
            let t = if k == 1 { atom.clone() } else { atom.clone().pow(k) };
            terms.push(t.scaled(Poly::constant(Scalar::from_int(c))));
            expect = expect.add(&Poly::monomial(Scalar::from_int(c), k as usize));
        }
        let e = OperatorExpr::sum(terms);
        prop_assert_eq!(detect_poly_in_tgm(&e), Some((m, expect)));
    }
}
