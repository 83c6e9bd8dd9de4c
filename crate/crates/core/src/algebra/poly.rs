use num_bigint::BigInt;
use num_rational::BigRational;

use super::Ring;

/// Dense univariate polynomial, lowest degree first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(R::one())
    }

    /// `c·x^deg`
    pub fn monomial(c: R, deg: usize) -> Self {
        let mut v = vec![R::zero(); deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    /// The variable itself.
    pub fn x() -> Self {
        Poly::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Value at 0.
    pub fn constant_term(&self) -> R {
        self.coeff(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul_rational(q)).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Division by `x`, dropping the constant term.
    pub fn shift_down(&self) -> Self {
        Poly::new(self.coeffs.iter().skip(1).cloned().collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c.mul_rational(&BigRational::from_integer(BigInt::from(n))))
                .collect(),
        )
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(R::zero());
        for (n, c) in self.coeffs.iter().enumerate() {
            let q = BigRational::new(BigInt::from(1), BigInt::from(n as u64 + 1));
            v.push(c.mul_rational(&q));
        }
        Poly::new(v)
    }

    /// Horner evaluation at `x` in any ring `T`, lifting coefficients with `lift`.
    pub fn eval_with<T: Ring>(&self, x: &T, lift: impl Fn(&R) -> T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&lift(c));
        }
        acc
    }

    pub fn eval(&self, x: &R) -> R {
        self.eval_with(x, |c| c.clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        Poly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Poly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn mul_rational(&self, q: &BigRational) -> Self {
        self.scale_rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;

    fn p(v: &[i64]) -> Poly<Scalar> {
        Poly::new(v.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn calculus() {
        // (1+z)^2 = 1 + 2z + z^2
        assert_eq!(p(&[1, 1]).pow(2), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 2, 1]).derivative(), p(&[2, 2]));
        let a = p(&[1, 1]).antiderivative();
        assert_eq!(a.coeffs()[2], Scalar::ratio(1, 2));
        assert_eq!(a.derivative(), p(&[1, 1]));
    }

    #[test]
    fn horner() {
        assert_eq!(p(&[1, 2, 1]).eval(&Scalar::from_int(2)), Scalar::from_int(9));
    }
}
