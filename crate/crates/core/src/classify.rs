//! Boundedness verdicts for elements of the paraproduct algebra on
//! weighted Bergman spaces `A^p_α` (α > −1) and Hardy spaces `H^p` (α = −1).
//!
//! The verdict is read off the grouped form
//! `Σ_k S^k T P_k(T) + S P_{n+1}(S) + w P_{n+2}(u) δ₀`. None of the verdicts
//! say anything about compactness.

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::{is_w_free, Ring, ZPoly};
use crate::expr::{format_zpoly, Atom, Letter, OperatorExpr};
use crate::rewrite::{group, normalize, GroupedForm, RewriteError};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpaceKind {
    Bergman { alpha: f64 },
    Hardy,
}

/// `A^p_α`, with `H^p` as the case α = −1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpaceClass {
    pub kind: SpaceKind,
    /// Recorded only; no verdict depends on it.
    pub p: f64,
}

impl SpaceClass {
    pub fn bergman(alpha: f64, p: f64) -> Self {
        assert!(alpha > -1.0, "Bergman weight must exceed -1");
        SpaceClass { kind: SpaceKind::Bergman { alpha }, p }
    }

    pub fn hardy(p: f64) -> Self {
        SpaceClass { kind: SpaceKind::Hardy, p }
    }

    /// `α = −1` gives the Hardy space.
    pub fn from_alpha(alpha: f64, p: f64) -> Self {
        if alpha == -1.0 {
            SpaceClass::hardy(p)
        } else {
            SpaceClass::bergman(alpha, p)
        }
    }

    pub fn is_hardy(&self) -> bool {
        matches!(self.kind, SpaceKind::Hardy)
    }

    pub fn alpha(&self) -> f64 {
        match self.kind {
            SpaceKind::Bergman { alpha } => alpha,
            SpaceKind::Hardy => -1.0,
        }
    }

    pub fn name(&self) -> &'static str {
        if self.is_hardy() {
            "hardy"
        } else {
            "bergman"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Zero,
    /// Bounded iff `g^d` lies in the space itself.
    TrivialIffGPowerInSpace(u32),
    IffGInHinfty,
    IffGPowerInBloch(u32),
    IffGPowerInBMOA(u32),
    /// `g^m ∈ BMOA` suffices; whether it is necessary is open.
    SufficientGPowerBMOANecessityOpen(u32),
    Uncovered(String),
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Zero => "Zero",
            Verdict::TrivialIffGPowerInSpace(_) => "TrivialIffGPowerInSpace",
            Verdict::IffGInHinfty => "IffGInHinfty",
            Verdict::IffGPowerInBloch(_) => "IffGPowerInBloch",
            Verdict::IffGPowerInBMOA(_) => "IffGPowerInBMOA",
            Verdict::SufficientGPowerBMOANecessityOpen(_) => "SufficientGPowerBMOA_NecessityOpen",
            Verdict::Uncovered(_) => "Uncovered",
        }
    }

    pub fn power(&self) -> Option<u32> {
        match self {
            Verdict::TrivialIffGPowerInSpace(d)
            | Verdict::IffGPowerInBloch(d)
            | Verdict::IffGPowerInBMOA(d)
            | Verdict::SufficientGPowerBMOANecessityOpen(d) => Some(*d),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pw = |d: u32| if d == 1 { "g".to_string() } else { format!("g^{d}") };
        match self {
            Verdict::Zero => write!(f, "zero operator (always bounded)"),
            Verdict::TrivialIffGPowerInSpace(d) => write!(f, "bounded iff {} in the space", pw(*d)),
            Verdict::IffGInHinfty => write!(f, "bounded iff g in H^inf"),
            Verdict::IffGPowerInBloch(d) => write!(f, "bounded iff {} in Bloch", pw(*d)),
            Verdict::IffGPowerInBMOA(d) => write!(f, "bounded iff {} in BMOA", pw(*d)),
            Verdict::SufficientGPowerBMOANecessityOpen(d) => {
                write!(f, "bounded if {} in BMOA; necessity open", pw(*d))
            }
            Verdict::Uncovered(note) => write!(f, "uncovered: {note}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub theorem: String,
    pub quote: String,
}

fn prov(theorem: &str, quote: &str) -> Provenance {
    Provenance { theorem: theorem.to_string(), quote: quote.to_string() }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    pub space: SpaceClass,
    pub provenance: Vec<Provenance>,
}

pub const COMPACTNESS_NOTE: &str =
    "compactness is not assessed; T_g-type and S_g-type criteria differ and are not computed";

impl Classification {
    pub fn to_json(&self) -> Value {
        let prov: Vec<Value> =
            self.provenance.iter().map(|p| json!({"theorem": p.theorem, "quote": p.quote})).collect();
        json!({
            "verdict": self.verdict.tag(),
            "power": self.verdict.power(),
            "space": self.space.name(),
            "provenance": prov,
        })
    }
}

fn bloch_or_bmoa(m: u32, sp: SpaceClass) -> Verdict {
    if sp.is_hardy() {
        Verdict::IffGPowerInBMOA(m)
    } else {
        Verdict::IffGPowerInBloch(m)
    }
}

pub fn classify(gf: &GroupedForm, sp: SpaceClass) -> Classification {
    let done = |verdict, provenance| Classification { verdict, space: sp, provenance };
    if gf.n < 0 && gf.pn1.is_zero() {
        if gf.pn2.is_zero() {
            return done(Verdict::Zero, vec![prov("basis uniqueness", "all canonical coordinates vanish")]);
        }
        let d = gf.pn2.degree().unwrap_or(0) as u32;
        return done(
            Verdict::TrivialIffGPowerInSpace(d),
            vec![prov("trivial-operator criterion", "w·P(u)·d0 is bounded iff g^deg P lies in the space")],
        );
    }
    if !gf.pn1.is_zero() {
        return done(
            Verdict::IffGInHinfty,
            vec![prov("pure S-part criterion", "a nonzero S·P(S) component forces g in H^inf, and H^inf suffices")],
        );
    }
    let n = gf.n as u32;
    let top = gf.top().expect("n >= 0 when st is non-empty");
    if n == 0 {
        return done(
            bloch_or_bmoa(1, sp),
            vec![prov(
                "polynomial in T_g",
                "T·P_0(T) + trivial part: P(T_g) bounded implies T_g bounded, i.e. g in Bloch (BMOA on H^p)",
            )],
        );
    }
    if top.is_constant() {
        return done(
            bloch_or_bmoa(n + 1, sp),
            vec![prov(
                "leading group with constant P_n",
                "P_n is a nonzero constant; dividing it out reduces to P_n = 1, bounded iff T_{g^(n+1)} is",
            )],
        );
    }
    if !top.constant_term().is_zero() {
        if sp.is_hardy() {
            return done(
                Verdict::SufficientGPowerBMOANecessityOpen(n + 1),
                vec![
                    prov("nested BMOA powers", "g^(n+1) in BMOA is sufficient on H^p"),
                    prov("open question", "necessity of g^(n+1) in BMOA on H^p is unresolved"),
                ],
            );
        }
        return done(
            Verdict::IffGPowerInBloch(n + 1),
            vec![prov("leading group with P_n(0) != 0", "on A^p_alpha, alpha > -1, bounded iff g^(n+1) in Bloch")],
        );
    }
    done(
        Verdict::Uncovered(format!(
            "P_{n}(0) = 0 with P_{n} = {}; S_g T_g^2 shows no H^inf/Bloch/BMOA power condition characterizes this class",
            format_zpoly(top)
        )),
        vec![prov("log-kernel counterexample", "g = log(e/(1-z)) lies in BMOA yet S_g T_g^2 is unbounded on every A^p_alpha")],
    )
}

/// Recognizes `Q(T_{g^m})` written in the single atom `T(g^m)`, with `Q(0) = 0`.
pub fn detect_poly_in_tgm(e: &OperatorExpr) -> Option<(u32, ZPoly)> {
    fn walk(e: &OperatorExpr, m: &mut Option<u32>) -> Option<ZPoly> {
        match e {
            OperatorExpr::Atom(Atom::T(k)) => {
                if m.is_some_and(|mm| mm != *k) {
                    return None;
                }
                *m = Some(*k);
                Some(ZPoly::x())
            }
            OperatorExpr::Atom(_) => None,
            OperatorExpr::Sum(ts) => {
                let mut acc = ZPoly::zero();
                for t in ts {
                    acc = acc.add(&walk(t, m)?);
                }
                Some(acc)
            }
            OperatorExpr::Product(fs) => {
                let mut acc = ZPoly::one();
                for f in fs {
                    acc = acc.mul(&walk(f, m)?);
                }
                Some(acc)
            }
            OperatorExpr::Power(b, n) => Some(walk(b, m)?.pow(*n)),
            OperatorExpr::ScalarMul(c, x) => {
                if !is_w_free(c) {
                    return None;
                }
                Some(walk(x, m)?.scale(&c.constant_term()))
            }
        }
    }
    let mut m = None;
    let q = walk(e, &mut m)?;
    if q.is_zero() {
        return None;
    }
    Some((m?, q))
}

/// Normalizes, groups and classifies, letting a `Q(T(g^m))` match take precedence.
pub fn classify_expr(e: &OperatorExpr, sp: SpaceClass) -> Result<Classification, RewriteError> {
    if let Some((m, q)) = detect_poly_in_tgm(e) {
        return Ok(Classification {
            verdict: bloch_or_bmoa(m, sp),
            space: sp,
            provenance: vec![prov(
                "polynomial in T_g",
                &format!("expression is Q(T_(g^{m})) with Q(z) = {}; bounded iff T_(g^{m}) is", format_zpoly(&q)),
            )],
        });
    }
    let c = normalize(e)?;
    Ok(classify(&group(&c)?, sp))
}

/// Verdicts for all nine two-letter words, keyed `"A*B"` (B acts first).
pub fn two_letter_table(sp: SpaceClass) -> Vec<(String, Classification)> {
    let letters = [Letter::M, Letter::S, Letter::T];
    let mut out = Vec::with_capacity(9);
    for a in letters {
        for b in letters {
            let e = OperatorExpr::Product(vec![OperatorExpr::letter(a), OperatorExpr::letter(b)]);
            let c = classify_expr(&e, sp).expect("two-letter words normalize");
            out.push((format!("{}*{}", a.as_str(), b.as_str()), c));
        }
    }
    out
}
