use std::collections::HashMap;

use super::{CanonicalForm, RewriteError};
use crate::algebra::{upoly_m_transform, upoly_s_transform, upoly_t_transform, Scalar, UPoly, WPoly};
use crate::expr::{Atom, Letter, OperatorExpr};

pub const DEFAULT_TERM_LIMIT: usize = 1_000_000;

/// Reduces expressions to [`CanonicalForm`], caching `T·S^jT^k`.
#[derive(Debug)]
pub struct Normalizer {
    limit: usize,
    t_cache: HashMap<(u32, u32), CanonicalForm>,
}

impl Default for Normalizer {
    fn default() -> Self {
        Normalizer::new()
    }
}

/// Normalizes with a fresh [`Normalizer`] and the default term limit.
pub fn normalize(e: &OperatorExpr) -> Result<CanonicalForm, RewriteError> {
    Normalizer::new().normalize(e)
}

impl Normalizer {
    pub fn new() -> Self {
        Normalizer::with_limit(DEFAULT_TERM_LIMIT)
    }

    pub fn with_limit(limit: usize) -> Self {
        Normalizer { limit, t_cache: HashMap::new() }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    fn guard(&self, c: &CanonicalForm) -> Result<(), RewriteError> {
        let terms = c.term_count();
        if terms > self.limit {
            Err(RewriteError::TooLarge { terms, limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn normalize(&mut self, e: &OperatorExpr) -> Result<CanonicalForm, RewriteError> {
        let out = match e {
            OperatorExpr::Atom(a) => self.atom(a)?,
            OperatorExpr::Sum(ts) => {
                let mut acc = CanonicalForm::zero();
                for t in ts {
                    acc.add_assign(&self.normalize(t)?);
                    self.guard(&acc)?;
                }
                acc
            }
            OperatorExpr::Product(fs) => {
                let mut iter = fs.iter().rev();
                let mut acc = match iter.next() {
                    Some(last) => self.normalize(last)?,
                    None => return Ok(CanonicalForm::zero()),
                };
                for f in iter {
                    let left = self.normalize(f)?;
                    acc = self.compose(&left, &acc)?;
                }
                acc
            }
            OperatorExpr::Power(b, n) => {
                let base = self.normalize(b)?;
                let mut acc = base.clone();
                for _ in 1..*n {
                    acc = self.compose(&base, &acc)?;
                }
                acc
            }
            OperatorExpr::ScalarMul(c, x) => self.normalize(x)?.scale(c),
        };
        self.guard(&out)?;
        Ok(out)
    }

    fn atom(&mut self, a: &Atom) -> Result<CanonicalForm, RewriteError> {
        Ok(match a {
            // M_{g^m} = M_g^m
            Atom::M(m) => {
                let mut acc = CanonicalForm::word(1, 0)
                    .add(&CanonicalForm::word(0, 1))
                    .add(&CanonicalForm::delta_only(UPoly::constant(crate::algebra::w())));
                for _ in 1..*m {
                    acc = self.letter(Letter::M, &acc)?;
                }
                acc
            }
            // S_{g^m} = S_g^m
            Atom::S(m) => CanonicalForm::word(*m, 0),
            // T_{g^m} = m·S_g^{m−1} T_g
            Atom::T(m) => CanonicalForm::word(m - 1, 1).scale(&WPoly::constant(Scalar::from_int(*m as i64))),
            Atom::Delta(p) => CanonicalForm::delta_only(p.clone()),
        })
    }

    /// `A ∘ B` for canonical `A`, `B`.
    pub fn compose(&mut self, a: &CanonicalForm, b: &CanonicalForm) -> Result<CanonicalForm, RewriteError> {
        let max_k = a.st.keys().map(|&(_, k)| k).max().unwrap_or(0);
        // t_pow[k] = T^k ∘ B
        let mut t_pow = vec![b.clone()];
        for k in 1..=max_k {
            let next = self.letter(Letter::T, &t_pow[k as usize - 1])?;
            t_pow.push(next);
        }
        let mut out = CanonicalForm::zero();
        for (&(j, k), c) in &a.st {
            let mut x = t_pow[k as usize].clone();
            for _ in 0..j {
                x = self.letter(Letter::S, &x)?;
            }
            out.add_assign(&x.scale(c));
            self.guard(&out)?;
        }
        // (D₁δ₀)∘B = D₁·(Bf)(0)·δ₀ and (Bf)(0) = D₂(0)·f(0).
        let b0 = b.delta.constant_term();
        if !b0.is_zero() && !a.delta.is_zero() {
            out.delta = out.delta.add(&a.delta.map(|c| c.mul(&b0)));
        }
        Ok(out)
    }

    /// `L ∘ X` for a single letter `L`.
    pub fn letter(&mut self, l: Letter, x: &CanonicalForm) -> Result<CanonicalForm, RewriteError> {
        let out = match l {
            Letter::S => CanonicalForm {
                st: x.st.iter().map(|(&(j, k), c)| ((j + 1, k), c.clone())).collect(),
                delta: upoly_s_transform(&x.delta),
            },
            Letter::T => {
                let mut out = CanonicalForm::delta_only(upoly_t_transform(&x.delta));
                for (&(j, k), c) in &x.st {
                    if j == 0 {
                        out.add_term(0, k + 1, c);
                    } else {
                        let r = self.t_word(j, k)?;
                        out.add_assign(&r.scale(c));
                    }
                }
                out
            }
            Letter::M => {
                // M = S + T + w·δ₀, with δ₀∘X = X.delta(0)·δ₀.
                let mut out = self.letter(Letter::S, &x.st_part())?;
                out.add_assign(&self.letter(Letter::T, &x.st_part())?);
                out.delta = out.delta.add(&upoly_m_transform(&x.delta));
                out
            }
        };
        self.guard(&out)?;
        Ok(out)
    }

    /// `T ∘ S^j T^k` for `j ≥ 1`.
    fn t_word(&mut self, j: u32, k: u32) -> Result<CanonicalForm, RewriteError> {
        if let Some(c) = self.t_cache.get(&(j, k)) {
            return Ok(c.clone());
        }
        let out = if j == 1 && k == 0 {
            // T S = S T − T² − w·u·δ₀
            let mut c = CanonicalForm::word(1, 1).sub(&CanonicalForm::word(0, 2));
            c.delta = crate::algebra::u().scale(&crate::algebra::w()).neg();
            c
        } else {
            // T S Y = S (T Y) − T (T Y) with Y = S^{j−1}T^k nonempty, so δ₀ Y = 0.
            let r = self.letter(Letter::T, &CanonicalForm::word(j - 1, k))?;
            let sr = self.letter(Letter::S, &r)?;
            let tr = self.letter(Letter::T, &r)?;
            sr.sub(&tr)
        };
        self.t_cache.insert((j, k), out.clone());
        Ok(out)
    }
}

impl CanonicalForm {
    fn st_part(&self) -> CanonicalForm {
        CanonicalForm { st: self.st.clone(), delta: UPoly::zero() }
    }
}
