use num_bigint::BigInt;
use num_rational::BigRational;

use super::CanonicalForm;
use crate::algebra::{Poly, Scalar, UPoly, WPoly, ZPoly};
use crate::expr::{Atom, OperatorExpr};

/// Exact action on polynomials `f` for a polynomial symbol `g`.
pub trait ExactAction {
    fn apply_exact(&self, f: &ZPoly, g: &ZPoly) -> ZPoly;
}

pub fn evaluate_exact<L: ExactAction + ?Sized>(l: &L, f: &ZPoly, g: &ZPoly) -> ZPoly {
    l.apply_exact(f, g)
}

fn w_at(c: &WPoly, g0: &Scalar) -> Scalar {
    c.eval(g0)
}

/// `P(g − g(0))` with `w ↦ g(0)`.
fn upoly_at(p: &UPoly, g: &ZPoly) -> ZPoly {
    let g0 = g.constant_term();
    let g_minus = g.sub(&Poly::constant(g0.clone()));
    p.eval_with(&g_minus, |c| Poly::constant(w_at(c, &g0)))
}

fn t_apply(f: &ZPoly, gm: &ZPoly) -> ZPoly {
    f.mul(&gm.derivative()).antiderivative()
}

fn s_apply(f: &ZPoly, gm: &ZPoly) -> ZPoly {
    f.derivative().mul(gm).antiderivative()
}

impl ExactAction for OperatorExpr {
    fn apply_exact(&self, f: &ZPoly, g: &ZPoly) -> ZPoly {
        match self {
            OperatorExpr::Sum(ts) => ts.iter().fold(ZPoly::zero(), |acc, t| acc.add(&t.apply_exact(f, g))),
            OperatorExpr::Product(fs) => fs.iter().rev().fold(f.clone(), |acc, x| x.apply_exact(&acc, g)),
            OperatorExpr::Power(b, n) => (0..*n).fold(f.clone(), |acc, _| b.apply_exact(&acc, g)),
            OperatorExpr::ScalarMul(c, x) => x.apply_exact(f, g).scale(&w_at(c, &g.constant_term())),
            OperatorExpr::Atom(a) => match a {
                Atom::M(m) => f.mul(&g.pow(*m)),
                Atom::S(m) => s_apply(f, &g.pow(*m)),
                Atom::T(m) => t_apply(f, &g.pow(*m)),
                Atom::Delta(p) => upoly_at(p, g).scale(&f.constant_term()),
            },
        }
    }
}

impl ExactAction for CanonicalForm {
    fn apply_exact(&self, f: &ZPoly, g: &ZPoly) -> ZPoly {
        let g0 = g.constant_term();
        let max_k = self.st.keys().map(|&(_, k)| k).max().unwrap_or(0);
        let mut t_pow = vec![f.clone()];
        for k in 1..=max_k {
            let next = t_apply(&t_pow[k as usize - 1], g);
            t_pow.push(next);
        }
        let mut out = upoly_at(&self.delta, g).scale(&f.constant_term());
        for (&(j, k), c) in &self.st {
            let mut x = t_pow[k as usize].clone();
            for _ in 0..j {
                x = s_apply(&x, g);
            }
            out = out.add(&x.scale(&w_at(c, &g0)));
        }
        out
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, k| a * BigInt::from(k))
}

/// Predicted leading term of `S^{m−j} T^j (g − g(0))^n` for `g` of degree
/// one: coefficient `n!/((m+n)(n+j−1)!)` of `(g − g(0))^{m+n}`.
pub fn st_monomial_action(m: u32, j: u32, n: u32) -> (Scalar, u32) {
    assert!(j <= m && n >= 1);
    let num = factorial(n as u64);
    let den = BigInt::from(m + n) * factorial((n + j - 1) as u64);
    (Scalar::real(BigRational::new(num, den)), m + n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::rewrite::normalize;

    fn z(v: &[i64]) -> ZPoly {
        Poly::new(v.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    #[test]
    fn letter_examples() {
        let out = evaluate_exact(&OperatorExpr::t(), &z(&[0, 0, 1]), &z(&[0, 1]));
        assert_eq!(out, Poly::monomial(Scalar::ratio(1, 3), 3));
        let out = evaluate_exact(&parse("S*T").unwrap(), &z(&[1]), &z(&[1, 1]));
        assert_eq!(out, Poly::new(vec![Scalar::from_int(0), Scalar::from_int(1), Scalar::ratio(1, 2)]));
    }

    #[test]
    fn canonical_matches_expression() {
        let g = z(&[2, -1, 3]);
        for s in ["T*S", "M^2*T", "(S*T)^2 - 3*M", "T(g^2)*S(g^2)", "d0{w*u^2}*M"] {
            let e = parse(s).unwrap();
            let c = normalize(&e).unwrap();
            for l in 0..6 {
                let f = Poly::monomial(Scalar::from_int(1), l);
                assert_eq!(evaluate_exact(&e, &f, &g), evaluate_exact(&c, &f, &g), "{s} on z^{l}");
            }
        }
    }

    #[test]
    fn monomial_action_values() {
        assert_eq!(st_monomial_action(1, 1, 1), (Scalar::ratio(1, 2), 2));
        assert_eq!(st_monomial_action(2, 0, 1), (Scalar::ratio(1, 3), 3));
        assert_eq!(st_monomial_action(1, 0, 2), (Scalar::ratio(2, 3), 3));
    }
}
