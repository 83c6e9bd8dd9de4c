//! Canonical ST-form of operator expressions and exact evaluation on
//! polynomials.
//!
//! Every element of the algebra has a unique expansion
//! `Σ c_{j,k} S^j T^k + D(g − g(0))·δ₀` with `j + k ≥ 1`, which is what
//! [`CanonicalForm`] stores. [`normalize`] computes it by prepending one
//! letter at a time to an already canonical suffix.

mod evaluate;
mod normalize;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{is_w_free, upoly_div_w, Poly, Scalar, UPoly, WPoly, ZPoly};
use crate::expr::{format_upoly, format_wpoly, OperatorExpr};

pub use evaluate::{evaluate_exact, st_monomial_action, ExactAction};
pub use normalize::{normalize, Normalizer, DEFAULT_TERM_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("normal form exceeded {limit} terms (reached {terms}); raise the limit or simplify the input")]
    TooLarge { terms: usize, limit: usize },
    #[error("coefficient of S^{j}T^{k} depends on w = g(0): {coef}")]
    WDependentCoefficient { j: u32, k: u32, coef: String },
}

/// Coordinates in the basis `{S^j T^k : j + k ≥ 1} ∪ {u^i δ₀}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CanonicalForm {
    /// `(j, k) ↦ c_{j,k}`; zero coefficients are never stored.
    pub st: BTreeMap<(u32, u32), WPoly>,
    pub delta: UPoly,
}

impl CanonicalForm {
    pub fn zero() -> Self {
        CanonicalForm::default()
    }

    /// The basis word `S^j T^k`.
    pub fn word(j: u32, k: u32) -> Self {
        assert!(j + k >= 1, "S^0 T^0 is not in the algebra");
        let mut st = BTreeMap::new();
        st.insert((j, k), WPoly::one());
        CanonicalForm { st, delta: UPoly::zero() }
    }

    pub fn delta_only(delta: UPoly) -> Self {
        CanonicalForm { st: BTreeMap::new(), delta }
    }

    pub fn is_zero(&self) -> bool {
        self.st.is_empty() && self.delta.is_zero()
    }

    /// True when the operator kills every `z^ℓ`, i.e. only a δ₀-part remains.
    pub fn is_trivial(&self) -> bool {
        self.st.is_empty()
    }

    pub fn coef(&self, j: u32, k: u32) -> WPoly {
        self.st.get(&(j, k)).cloned().unwrap_or_else(WPoly::zero)
    }

    pub fn add_term(&mut self, j: u32, k: u32, c: &WPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.st.entry((j, k)).or_insert_with(WPoly::zero);
        *entry = entry.add(c);
        if entry.is_zero() {
            self.st.remove(&(j, k));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (&(j, k), c) in &o.st {
            self.add_term(j, k, c);
        }
        self.delta = self.delta.add(&o.delta);
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&WPoly::constant(Scalar::from_int(-1))))
    }

    pub fn scale(&self, c: &WPoly) -> Self {
        if c.is_zero() {
            return CanonicalForm::zero();
        }
        CanonicalForm {
            st: self.st.iter().map(|(&jk, a)| (jk, a.mul(c))).collect(),
            delta: self.delta.map(|a| a.mul(c)),
        }
    }

    /// Number of stored basis coefficients.
    pub fn term_count(&self) -> usize {
        self.st.len() + self.delta.coeffs().len()
    }

    /// Basis words in display order: descending `S`-power, then ascending `T`-power.
    pub fn ordered_terms(&self) -> Vec<((u32, u32), &WPoly)> {
        let mut v: Vec<_> = self.st.iter().map(|(&jk, c)| (jk, c)).collect();
        v.sort_by(|((j1, k1), _), ((j2, k2), _)| j2.cmp(j1).then(k1.cmp(k2)));
        v
    }

    /// True if every coefficient of the δ₀-part has a factor `w`.
    pub fn delta_divisible_by_w(&self) -> bool {
        upoly_div_w(&self.delta).is_some()
    }

    /// The form written back as an expression in the parser's grammar.
    pub fn to_expr(&self) -> Option<OperatorExpr> {
        let mut terms = Vec::new();
        for ((j, k), c) in self.ordered_terms() {
            let mut factors = Vec::new();
            if j > 0 {
                factors.push(OperatorExpr::s().pow(j));
            }
            if k > 0 {
                factors.push(OperatorExpr::t().pow(k));
            }
            let w = OperatorExpr::product(factors);
            terms.push(if *c == WPoly::one() { w } else { w.scaled(c.clone()) });
        }
        if !self.delta.is_zero() {
            if format_upoly(&self.delta).starts_with('-') {
                let minus = WPoly::constant(Scalar::from_int(-1));
                terms.push(OperatorExpr::delta(self.delta.neg()).scaled(minus));
            } else {
                terms.push(OperatorExpr::delta(self.delta.clone()));
            }
        }
        if terms.is_empty() {
            None
        } else {
            Some(OperatorExpr::sum(terms))
        }
    }

    pub fn to_json(&self) -> Value {
        let st: Vec<Value> = self
            .ordered_terms()
            .into_iter()
            .map(|((j, k), c)| json!({"j": j, "k": k, "coef": format_wpoly(c)}))
            .collect();
        json!({"st": st, "delta": format_upoly(&self.delta)})
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_expr() {
            Some(e) => write!(f, "{e}"),
            None => f.write_str("0"),
        }
    }
}

/// The grouped shape `Σ_k S^k T P_k(T) + S P_{n+1}(S) + w P_{n+2}(u) δ₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupedForm {
    /// Largest `j` with some `c_{j,k} ≠ 0`, `k ≥ 1`; `-1` when there is none.
    pub n: i64,
    /// `P_0, …, P_n`.
    pub p: Vec<ZPoly>,
    /// `P_{n+1}(z) = Σ_{j≥1} c_{j,0} z^{j−1}`.
    pub pn1: ZPoly,
    /// δ₀-part divided by `w`, or the raw δ₀-part when `w` does not divide it.
    pub pn2: UPoly,
    /// True when `pn2` is the quotient by `w`.
    pub pn2_divided: bool,
}

impl GroupedForm {
    /// `P_n`, if `n ≥ 0`.
    pub fn top(&self) -> Option<&ZPoly> {
        self.p.last()
    }
}

pub fn group(c: &CanonicalForm) -> Result<GroupedForm, RewriteError> {
    let mut scalars: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
    for (&(j, k), coef) in &c.st {
        if !is_w_free(coef) {
            return Err(RewriteError::WDependentCoefficient { j, k, coef: format_wpoly(coef) });
        }
        scalars.insert((j, k), coef.constant_term());
    }
    let n = scalars.keys().filter(|(_, k)| *k >= 1).map(|(j, _)| *j as i64).max().unwrap_or(-1);
    let mut p = vec![Vec::new(); (n + 1).max(0) as usize];
    let mut pn1 = Vec::new();
    let put = |v: &mut Vec<Scalar>, i: usize, s: &Scalar| {
        if v.len() <= i {
            v.resize(i + 1, Scalar::from_int(0));
        }
        v[i] = s.clone();
    };
    for (&(j, k), s) in &scalars {
        if k >= 1 {
            put(&mut p[j as usize], (k - 1) as usize, s);
        } else {
            put(&mut pn1, (j - 1) as usize, s);
        }
    }
    let (pn2, pn2_divided) = match upoly_div_w(&c.delta) {
        Some(q) => (q, true),
        None => (c.delta.clone(), false),
    };
    Ok(GroupedForm {
        n,
        p: p.into_iter().map(Poly::new).collect(),
        pn1: Poly::new(pn1),
        pn2,
        pn2_divided,
    })
}

pub fn is_trivial(c: &CanonicalForm) -> bool {
    c.is_trivial()
}

/// `[A, B] = AB − BA`.
pub fn commutator(a: &OperatorExpr, b: &OperatorExpr) -> OperatorExpr {
    iterated_commutator(a, b, 1)
}

/// `[A, B]_k = Σ_{j=0}^k (−1)^j C(k, j) B^j A B^{k−j}`.
pub fn iterated_commutator(a: &OperatorExpr, b: &OperatorExpr, k: u32) -> OperatorExpr {
    assert!(k >= 1, "iterated commutator needs k >= 1");
    let mut terms = Vec::with_capacity(k as usize + 1);
    let mut binom: i64 = 1;
    for j in 0..=k {
        let mut factors = Vec::new();
        if j > 0 {
            factors.push(b.clone().pow(j));
        }
        factors.push(a.clone());
        if k - j > 0 {
            factors.push(b.clone().pow(k - j));
        }
        let word = OperatorExpr::product(factors);
        let c = if j % 2 == 0 { binom } else { -binom };
        terms.push(if c == 1 { word } else { word.scaled(WPoly::constant(Scalar::from_int(c))) });
        binom = binom * (k - j) as i64 / (j + 1) as i64;
    }
    OperatorExpr::sum(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{u, w};
    use crate::expr::parse;

    fn nf(s: &str) -> CanonicalForm {
        normalize(&parse(s).unwrap()).unwrap()
    }

    fn sc(n: i64) -> WPoly {
        WPoly::constant(Scalar::from_int(n))
    }

    #[test]
    fn ts_identity() {
        let c = nf("T*S");
        assert_eq!(c.coef(1, 1), sc(1));
        assert_eq!(c.coef(0, 2), sc(-1));
        assert_eq!(c.st.len(), 2);
        assert_eq!(c.delta, u().scale(&w()).neg());
        assert_eq!(c.to_string(), "S*T - T^2 - d0{w*u}");
        assert_eq!(
            c.to_json().to_string(),
            r#"{"st":[{"j":1,"k":1,"coef":"1"},{"j":0,"k":2,"coef":"-1"}],"delta":"-w*u"}"#
        );
    }

    #[test]
    fn printed_form_renormalizes() {
        for s in ["T*S", "M^2", "(S*T)^2", "T(g^3)", "M", "M*T*S*M", "2*w*T*S - d0{u^2}"] {
            let c = nf(s);
            assert_eq!(nf(&c.to_string()), c, "{s}");
        }
    }

    #[test]
    fn grouping() {
        let g = group(&nf("T*S")).unwrap();
        assert_eq!(g.n, 1);
        assert_eq!(g.p[1], ZPoly::one());
        assert_eq!(g.p[0], Poly::monomial(Scalar::from_int(-1), 1));
        assert!(g.pn1.is_zero());
        assert_eq!(g.pn2, u().neg());
        assert!(g.pn2_divided);

        let g = group(&nf("S^2")).unwrap();
        assert_eq!(g.n, -1);
        assert_eq!(g.pn1, ZPoly::x());

        assert!(matches!(group(&nf("w*T")), Err(RewriteError::WDependentCoefficient { j: 0, k: 1, .. })));
        let raw = group(&nf("d0{u}")).unwrap();
        assert!(!raw.pn2_divided);
    }

    #[test]
    fn trivial_forms() {
        assert!(is_trivial(&nf("d0{w*u}")));
        assert!(!is_trivial(&nf("T")));
        let c = nf("M - S - T");
        assert!(is_trivial(&c));
        assert_eq!(c.delta, UPoly::constant(w()));
    }

    #[test]
    fn commutator_shapes() {
        let c = normalize(&commutator(&OperatorExpr::s(), &OperatorExpr::t())).unwrap();
        assert_eq!(c, nf("T^2 + d0{w*u}"));
        let c = normalize(&iterated_commutator(&OperatorExpr::s().pow(2), &OperatorExpr::t(), 3)).unwrap();
        let expected = Poly::monomial(WPoly::monomial(Scalar::ratio(1, 6), 2), 3);
        assert_eq!(c, CanonicalForm::delta_only(expected));
    }
}
