//! Exact arithmetic: ℚ(i) scalars, polynomials over them, and the three
//! transforms a trivial operator `P(g−g(0))·δ₀` undergoes when composed on
//! the left with `T_g`, `S_g` or `M_g`.
//!
//! Two formal symbols appear: `w` stands for `g(0)` and `u` for `g − g(0)`.
//! A [`WPoly`] is a polynomial in `w`; a [`UPoly`] is a polynomial in `u`
//! whose coefficients are [`WPoly`]s.

mod poly;
mod scalar;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use poly::Poly;
pub use scalar::Scalar;

/// Commutative ring with exact division by positive integers.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul_rational(&self, q: &BigRational) -> Self;
}

/// Polynomial in the symbol `w = g(0)`.
pub type WPoly = Poly<Scalar>;
/// Polynomial in `u = g − g(0)` with [`WPoly`] coefficients.
pub type UPoly = Poly<WPoly>;
/// Plain one-variable polynomial with scalar coefficients (in `z`, or the
/// formal variable of the grouped polynomials `P_k`).
pub type ZPoly = Poly<Scalar>;

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The symbol `w` as a [`WPoly`].
pub fn w() -> WPoly {
    Poly::x()
}

/// The symbol `u` as a [`UPoly`].
pub fn u() -> UPoly {
    Poly::x()
}

/// Embeds a scalar as a constant [`UPoly`].
pub fn upoly_const(c: Scalar) -> UPoly {
    Poly::constant(Poly::constant(c))
}

/// True if every coefficient of `c` is free of `w`.
pub fn is_w_free(c: &WPoly) -> bool {
    c.degree().unwrap_or(0) == 0
}

/// Divides by `w` if possible.
pub fn upoly_div_w(p: &UPoly) -> Option<UPoly> {
    if p.coeffs().iter().any(|c| !Ring::is_zero(&c.constant_term())) {
        return None;
    }
    Some(p.map(|c| c.shift_down()))
}

/// `Q(u) = ∫₀ᵘ P(ζ) dζ`, the payload of `T_g ∘ (P(g−g(0))·δ₀)`.
pub fn upoly_t_transform(p: &UPoly) -> UPoly {
    p.antiderivative()
}

/// `Q(u) = w·(P(u) − P(0)) + ∫₀ᵘ ζ·P′(ζ) dζ`, the payload of
/// `S_g ∘ (P(g−g(0))·δ₀)`. Constants are annihilated since `S_g 1 = 0`.
pub fn upoly_s_transform(p: &UPoly) -> UPoly {
    let without_const = p.sub(&Poly::constant(p.constant_term()));
    let w_part = without_const.map(|c| c.mul(&w()));
    let zeta_dp = p.derivative().shift_up(1).antiderivative();
    w_part.add(&zeta_dp)
}

/// `Q(u) = (u + w)·P(u)`: multiplication by `g = (g − g(0)) + g(0)`.
pub fn upoly_m_transform(p: &UPoly) -> UPoly {
    let g = u().add(&Poly::constant(w()));
    g.mul(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64, d: i64) -> WPoly {
        Poly::constant(Scalar::ratio(n, d))
    }

    fn u_pow(n: usize) -> UPoly {
        Poly::monomial(WPoly::one(), n)
    }

    #[test]
    fn t_transform_examples() {
        assert_eq!(upoly_t_transform(&UPoly::one()), u());
        assert!(upoly_t_transform(&UPoly::zero()).is_zero());
        for n in 0..6 {
            let expected = Poly::monomial(c(1, n as i64 + 1), n + 1);
            assert_eq!(upoly_t_transform(&u_pow(n)), expected);
        }
    }

    #[test]
    fn s_transform_examples() {
        assert!(upoly_s_transform(&UPoly::one()).is_zero());
        // u -> w·u + u²/2
        let expected = Poly::new(vec![WPoly::zero(), w(), c(1, 2)]);
        assert_eq!(upoly_s_transform(&u()), expected);
        for n in 1..6usize {
            let expected = Poly::monomial(w(), n).add(&Poly::monomial(c(n as i64, n as i64 + 1), n + 1));
            assert_eq!(upoly_s_transform(&u_pow(n)), expected);
        }
    }

    #[test]
    fn m_transform_examples() {
        assert_eq!(upoly_m_transform(&UPoly::one()), u().add(&Poly::constant(w())));
        assert_eq!(
            upoly_m_transform(&u()),
            u_pow(2).add(&Poly::monomial(w(), 1))
        );
        assert!(upoly_m_transform(&UPoly::zero()).is_zero());
    }

    #[test]
    fn m_is_s_plus_t_plus_w_delta() {
        // M-transform = S-transform + T-transform + w·P(0)
        let p = Poly::new(vec![c(3, 1), c(-1, 2), w(), c(2, 5)]);
        let lhs = upoly_m_transform(&p);
        let rhs = upoly_s_transform(&p)
            .add(&upoly_t_transform(&p))
            .add(&Poly::constant(p.constant_term().mul(&w())));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn w_division() {
        let p = Poly::new(vec![w(), w().mul(&w())]);
        assert_eq!(upoly_div_w(&p), Some(Poly::new(vec![WPoly::one(), w()])));
        assert_eq!(upoly_div_w(&UPoly::one()), None);
    }
}
