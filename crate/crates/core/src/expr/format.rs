use serde_json::{json, Value};

use super::{Atom, OperatorExpr};
use crate::algebra::{Ring, Scalar, UPoly, WPoly, ZPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// Re-parseable ASCII, e.g. `S*T - T^2 - d0{w*u}`.
    Plain,
    Latex,
    /// Compact JSON of the syntax tree.
    Json,
}

pub fn format(e: &OperatorExpr, style: Style) -> String {
    match style {
        Style::Plain => plain(e),
        Style::Latex => latex(e),
        Style::Json => to_json(e).to_string(),
    }
}

/// One monomial `c · x₁^a₁ · x₂^a₂ ⋯`. The sign is pulled out when `c`
/// reads as negative.
fn monomial(c: &Scalar, vars: &[(&str, usize)], out: &mut String, first: bool) {
    let neg = c.is_negative_like();
    let mag = if neg { -c } else { c.clone() };
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push(if neg { '-' } else { '+' });
    }
    let factors: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(x, e)| if *e == 1 { x.to_string() } else { format!("{x}^{e}") })
        .collect();
    let one = Scalar::from_int(1);
    let complex = !mag.is_real() && !mag.is_imaginary();
    if factors.is_empty() {
        if complex && (neg || !first) {
            out.push_str(&format!("({mag})"));
        } else {
            out.push_str(&mag.to_string());
        }
        return;
    }
    if mag != one {
        if complex {
            out.push_str(&format!("({mag})*"));
        } else {
            out.push_str(&format!("{mag}*"));
        }
    }
    out.push_str(&factors.join("*"));
}

fn poly_string(p: &ZPoly, var: &str) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if Ring::is_zero(c) {
            continue;
        }
        let first = out.is_empty();
        monomial(c, &[(var, k)], &mut out, first);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_zpoly(p: &ZPoly) -> String {
    poly_string(p, "z")
}

pub fn format_wpoly(p: &WPoly) -> String {
    poly_string(p, "w")
}

/// Terms ordered by ascending power of `u`, then of `w`.
pub fn format_upoly(p: &UPoly) -> String {
    let mut out = String::new();
    for (b, wc) in p.coeffs().iter().enumerate() {
        for (a, c) in wc.coeffs().iter().enumerate() {
            if Ring::is_zero(c) {
                continue;
            }
            let first = out.is_empty();
            monomial(c, &[("w", a), ("u", b)], &mut out, first);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn atom_plain(a: &Atom) -> String {
    let letter = |l: &str, m: u32| if m == 1 { l.to_string() } else { format!("{l}(g^{m})") };
    match a {
        Atom::M(m) => letter("M", *m),
        Atom::S(m) => letter("S", *m),
        Atom::T(m) => letter("T", *m),
        Atom::Delta(p) if *p == UPoly::one() => "d0".to_string(),
        Atom::Delta(p) => format!("d0{{{}}}", format_upoly(p)),
    }
}

/// Splits a coefficient into (negated?, text-of-magnitude) for `c*X` forms.
fn coef_parts(c: &WPoly) -> (bool, String) {
    let nonzero: Vec<(usize, &Scalar)> =
        c.coeffs().iter().enumerate().filter(|(_, s)| !Ring::is_zero(*s)).collect();
    if nonzero.len() != 1 {
        return (false, format!("({})", format_wpoly(c)));
    }
    let (k, s) = nonzero[0];
    let neg = s.is_negative_like();
    let mag = if neg { -s } else { s.clone() };
    let mut body = String::new();
    monomial(&mag, &[("w", k)], &mut body, true);
    if !mag.is_real() && !mag.is_imaginary() && k == 0 {
        body = format!("({body})");
    }
    (neg, body)
}

fn plain(e: &OperatorExpr) -> String {
    match e {
        OperatorExpr::Atom(a) => atom_plain(a),
        OperatorExpr::Power(b, n) => match **b {
            OperatorExpr::Atom(_) => format!("{}^{n}", plain(b)),
            _ => format!("({})^{n}", plain(b)),
        },
        OperatorExpr::Product(fs) => fs
            .iter()
            .map(|f| match f {
                OperatorExpr::Sum(_) | OperatorExpr::Product(_) | OperatorExpr::ScalarMul(..) => {
                    format!("({})", plain(f))
                }
                _ => plain(f),
            })
            .collect::<Vec<_>>()
            .join("*"),
        OperatorExpr::ScalarMul(c, x) => {
            let (neg, body) = scaled_parts(c, x);
            if neg {
                format!("-{body}")
            } else {
                body
            }
        }
        OperatorExpr::Sum(ts) => {
            let mut out = String::new();
            for (i, t) in ts.iter().enumerate() {
                let (neg, body) = match t {
                    OperatorExpr::ScalarMul(c, x) => scaled_parts(c, x),
                    OperatorExpr::Sum(_) => (false, format!("({})", plain(t))),
                    _ => (false, plain(t)),
                };
                match (i, neg) {
                    (0, true) => out.push('-'),
                    (0, false) => {}
                    (_, true) => out.push_str(" - "),
                    (_, false) => out.push_str(" + "),
                }
                out.push_str(&body);
            }
            out
        }
    }
}

/// `c*X` with the sign of `c` split off.
fn scaled_parts(c: &WPoly, x: &OperatorExpr) -> (bool, String) {
    let operand = match x {
        OperatorExpr::Sum(_) | OperatorExpr::ScalarMul(..) => format!("({})", plain(x)),
        _ => plain(x),
    };
    let (neg, coef) = coef_parts(c);
    if neg && coef == "1" {
        (true, operand)
    } else {
        (neg, format!("{coef}*{operand}"))
    }
}

fn latex_scalar_poly(text: &str) -> String {
    text.replace('*', " ")
        .replace('w', "g(0)")
        .replace('u', "(g-g(0))")
}

fn latex(e: &OperatorExpr) -> String {
    let sub = |l: &str, m: u32| if m == 1 { format!("{l}_g") } else { format!("{l}_{{g^{{{m}}}}}") };
    match e {
        OperatorExpr::Atom(Atom::M(m)) => sub("M", *m),
        OperatorExpr::Atom(Atom::S(m)) => sub("S", *m),
        OperatorExpr::Atom(Atom::T(m)) => sub("T", *m),
        OperatorExpr::Atom(Atom::Delta(p)) if *p == UPoly::one() => "\\delta_0".to_string(),
        OperatorExpr::Atom(Atom::Delta(p)) => {
            format!("\\left({}\\right)\\delta_0", latex_scalar_poly(&format_upoly(p)))
        }
        OperatorExpr::Power(b, n) => match **b {
            OperatorExpr::Atom(_) => format!("{}^{{{n}}}", latex(b)),
            _ => format!("\\left({}\\right)^{{{n}}}", latex(b)),
        },
        OperatorExpr::Product(fs) => fs
            .iter()
            .map(|f| match f {
                OperatorExpr::Sum(_) | OperatorExpr::ScalarMul(..) => format!("\\left({}\\right)", latex(f)),
                _ => latex(f),
            })
            .collect::<Vec<_>>()
            .join(" "),
        OperatorExpr::ScalarMul(c, x) => {
            let (neg, body) = latex_scaled_parts(c, x);
            if neg {
                format!("-{body}")
            } else {
                body
            }
        }
        OperatorExpr::Sum(ts) => {
            let mut out = String::new();
            for (i, t) in ts.iter().enumerate() {
                let (neg, body) = match t {
                    OperatorExpr::ScalarMul(c, x) => latex_scaled_parts(c, x),
                    OperatorExpr::Sum(_) => (false, format!("\\left({}\\right)", latex(t))),
                    _ => (false, latex(t)),
                };
                match (i, neg) {
                    (0, true) => out.push('-'),
                    (0, false) => {}
                    (_, true) => out.push_str(" - "),
                    (_, false) => out.push_str(" + "),
                }
                out.push_str(&body);
            }
            out
        }
    }
}

fn latex_scaled_parts(c: &WPoly, x: &OperatorExpr) -> (bool, String) {
    let inner = match x {
        OperatorExpr::Sum(_) | OperatorExpr::ScalarMul(..) => format!("\\left({}\\right)", latex(x)),
        _ => latex(x),
    };
    let (neg, coef) = coef_parts(c);
    if coef == "1" {
        (neg, inner)
    } else {
        (neg, format!("{} {inner}", latex_scalar_poly(&coef)))
    }
}

/// Syntax tree as JSON. Coefficients are emitted in the plain text syntax.
pub fn to_json(e: &OperatorExpr) -> Value {
    match e {
        OperatorExpr::Atom(Atom::M(m)) => json!({"atom": "M", "power": m}),
        OperatorExpr::Atom(Atom::S(m)) => json!({"atom": "S", "power": m}),
        OperatorExpr::Atom(Atom::T(m)) => json!({"atom": "T", "power": m}),
        OperatorExpr::Atom(Atom::Delta(p)) => json!({"atom": "d0", "payload": format_upoly(p)}),
        OperatorExpr::Power(b, n) => json!({"pow": {"base": to_json(b), "exp": n}}),
        OperatorExpr::Product(fs) => json!({"product": fs.iter().map(to_json).collect::<Vec<_>>()}),
        OperatorExpr::Sum(ts) => json!({"sum": ts.iter().map(to_json).collect::<Vec<_>>()}),
        OperatorExpr::ScalarMul(c, x) => json!({"scale": {"coef": format_wpoly(c), "expr": to_json(x)}}),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{u, w, Poly};
    use crate::expr::parse;

    #[test]
    fn plain_examples() {
        for s in ["S*T - T^2 - d0{w*u}", "T*S", "M^3", "T(g^2)*S", "2*(S + T)", "(S*T)^2", "-T", "d0"] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn upoly_text() {
        let p = u().scale(&w()).neg();
        assert_eq!(format_upoly(&p), "-w*u");
        let q = Poly::new(vec![w().mul(&w()), Poly::constant(Scalar::ratio(1, 2))]);
        assert_eq!(format_upoly(&q), "w^2+1/2*u");
        assert_eq!(format_upoly(&UPoly::zero()), "0");
    }

    #[test]
    fn complex_coefficients() {
        let c = Poly::constant(Scalar::from_int(-1) + Scalar::i());
        let e = OperatorExpr::t().scaled(c);
        let text = e.to_string();
        assert_eq!(parse(&text).unwrap(), e);
    }

    #[test]
    fn json_and_latex() {
        let e = parse("S*T^2").unwrap();
        let v = to_json(&e);
        assert_eq!(v["product"][1]["pow"]["exp"], 2);
        assert_eq!(format(&e, Style::Latex), "S_g T_g^{2}");
        let e = parse("S*T - T^2 - d0{w*u}").unwrap();
        assert_eq!(format(&e, Style::Latex), "S_g T_g - T_g^{2} - \\left(g(0) (g-g(0))\\right)\\delta_0");
        assert_eq!(format(&parse("2*w*T").unwrap(), Style::Latex), "2 g(0) T_g");
    }
}
