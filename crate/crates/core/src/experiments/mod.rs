//! Reproducible verification suites. Each returns a [`Report`] with the
//! parameters it ran under, what it measured, and the checks it asserted.

mod exact;
mod numeric;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::algebra::{Poly, Scalar, UPoly, WPoly, ZPoly};
use crate::expr::{Atom, OperatorExpr};
use crate::norms::NormError;
use crate::rewrite::RewriteError;
use crate::series::SeriesError;

pub use exact::{
    commutator_closed_form, delta_det, pochhammer, power_det, verify_commutators, verify_determinants,
    verify_nesting, verify_oracle, verify_trivial,
};
pub use numeric::{
    bloch_upper_estimate, counterexample_bounded, counterexample_growth, dilation_monotonicity, growth_lower_bound,
    pointwise_bound_check, power_inequality_scan, vmoa_probe, BoundedParams, GrowthParams,
};

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("parameter out of range: {0}")]
    Guard(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Norm(#[from] NormError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Informational,
}

#[derive(Clone, Debug, Serialize)]
pub struct Observation {
    pub label: String,
    pub value: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub name: String,
    pub parameters: Map<String, Value>,
    pub observations: Vec<Observation>,
    pub checks: Vec<Check>,
    pub verdict: Outcome,
}

impl Report {
    pub fn new(name: &str) -> Self {
        Report {
            name: name.to_string(),
            parameters: Map::new(),
            observations: Vec::new(),
            checks: Vec::new(),
            verdict: Outcome::Informational,
        }
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) {
        self.parameters.insert(key.to_string(), v.into());
    }

    pub fn observe(&mut self, label: &str, v: impl Into<Value>) {
        self.observations.push(Observation { label: label.to_string(), value: v.into() });
    }

    /// Records an asserted condition; any failing check makes the verdict `fail`.
    pub fn check(&mut self, label: &str, holds: bool) -> bool {
        self.checks.push(Check { label: label.to_string(), holds });
        holds
    }

    pub fn finish(mut self, informational: bool) -> Self {
        self.verdict = if self.checks.iter().any(|c| !c.holds) {
            Outcome::Fail
        } else if informational {
            Outcome::Informational
        } else {
            Outcome::Pass
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Outcome::Fail
    }

    pub fn check_holds(&self, label: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.label == label).map(|c| c.holds)
    }

    pub fn observation(&self, label: &str) -> Option<&Value> {
        self.observations.iter().find(|o| o.label == label).map(|o| &o.value)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}: {}", self.name, serde_json::to_string(&self.verdict).unwrap().trim_matches('"'))?;
        for (k, v) in &self.parameters {
            writeln!(f, "  param {k} = {v}")?;
        }
        for o in &self.observations {
            writeln!(f, "  {} = {}", o.label, o.value)?;
        }
        for c in &self.checks {
            writeln!(f, "  [{}] {}", if c.holds { "ok" } else { "FAILED" }, c.label)?;
        }
        Ok(())
    }
}

/// Small real rational `p/q` with `|p| ≤ max_num`, `1 ≤ q ≤ max_den`.
pub fn random_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Scalar {
    Scalar::ratio(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

/// Random polynomial of degree `≤ deg_max` with small rational coefficients.
pub fn random_zpoly(rng: &mut ChaCha8Rng, deg_max: usize, nonzero_constant: bool) -> ZPoly {
    let deg = rng.gen_range(0..=deg_max);
    let mut c: Vec<Scalar> = (0..=deg).map(|_| random_rational(rng, 5, 4)).collect();
    if nonzero_constant {
        while c[0] == Scalar::from_int(0) {
            c[0] = random_rational(rng, 5, 4);
        }
    }
    Poly::new(c)
}

fn random_wpoly(rng: &mut ChaCha8Rng) -> WPoly {
    loop {
        let p = Poly::new((0..rng.gen_range(1..=2)).map(|_| random_rational(rng, 3, 2)).collect());
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_delta(rng: &mut ChaCha8Rng, max_deg: usize) -> UPoly {
    loop {
        let deg = rng.gen_range(0..=max_deg);
        let p: UPoly = Poly::new((0..=deg).map(|_| random_wpoly(rng)).collect());
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random expression with `letter_count() ≤ max_letters` and nesting depth
/// `≤ max_depth`, mixing sums, products, powers, scalings, generalized atoms
/// and `d0` atoms.
pub fn random_expr(rng: &mut ChaCha8Rng, max_letters: usize, max_depth: usize) -> OperatorExpr {
    assert!(max_letters >= 1);
    gen_expr(rng, max_letters, max_depth)
}

fn gen_atom(rng: &mut ChaCha8Rng, budget: usize) -> OperatorExpr {
    let roll = rng.gen_range(0..100);
    if roll < 10 {
        return OperatorExpr::delta(random_delta(rng, budget.min(3) - 1));
    }
    let m = if budget >= 2 && roll >= 88 { 2 } else { 1 };
    match rng.gen_range(0..3) {
        0 => OperatorExpr::Atom(Atom::M(m)),
        1 => OperatorExpr::Atom(Atom::S(m)),
        _ => OperatorExpr::Atom(Atom::T(m)),
    }
}

fn gen_expr(rng: &mut ChaCha8Rng, budget: usize, depth: usize) -> OperatorExpr {
    if depth == 0 || budget == 1 || rng.gen_bool(0.25) {
        return gen_atom(rng, budget);
    }
    match rng.gen_range(0..10) {
        0..=2 => {
            let n = rng.gen_range(2..=3);
            OperatorExpr::Sum((0..n).map(|_| gen_expr(rng, budget, depth - 1)).collect())
        }
        3..=6 => {
            let n = rng.gen_range(2..=budget.min(3));
            let mut left = budget;
            let mut fs = Vec::with_capacity(n);
            for i in 0..n {
                let share = if i + 1 == n { left } else { rng.gen_range(1..=left - (n - 1 - i)) };
                left -= share;
                fs.push(gen_expr(rng, share, depth - 1));
            }
            OperatorExpr::Product(fs)
        }
        7 => {
            let n = rng.gen_range(2..=budget.min(3)) as u32;
            OperatorExpr::Power(Box::new(gen_expr(rng, budget / n as usize, depth - 1)), n)
        }
        _ => OperatorExpr::ScalarMul(random_wpoly(rng), Box::new(gen_expr(rng, budget, depth - 1))),
    }
}

/// Same operator, different association: powers unrolled, products
/// left-nested, sums reversed.
pub fn reassociate(e: &OperatorExpr) -> OperatorExpr {
    match e {
        OperatorExpr::Sum(ts) => OperatorExpr::Sum(ts.iter().rev().map(reassociate).collect()),
        OperatorExpr::Product(fs) => {
            let mut it = fs.iter().map(reassociate);
            let first = it.next().expect("nonempty product");
            it.fold(first, |acc, f| OperatorExpr::Product(vec![acc, f]))
        }
        OperatorExpr::Power(b, n) => {
            let b = reassociate(b);
            (1..*n).fold(b.clone(), |acc, _| OperatorExpr::Product(vec![b.clone(), acc]))
        }
        OperatorExpr::ScalarMul(c, x) => OperatorExpr::ScalarMul(c.clone(), Box::new(reassociate(x))),
        OperatorExpr::Atom(_) => e.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generators_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let e = random_expr(&mut rng, 6, 4);
            assert!(e.letter_count() <= 6, "{e}");
            let g = random_zpoly(&mut rng, 4, true);
            assert!(g.degree().unwrap_or(0) <= 4 && g.constant_term() != Scalar::from_int(0));
        }
    }

    #[test]
    fn report_verdicts() {
        let mut r = Report::new("x");
        r.param("n", 3);
        r.observe("v", 1.5);
        r.check("a", true);
        let r = r.finish(false);
        assert_eq!(r.verdict, Outcome::Pass);
        assert_eq!(r.to_json()["verdict"], "pass");
        let mut r = Report::new("y");
        r.check("b", false);
        assert_eq!(r.finish(true).verdict, Outcome::Fail);
    }
}
