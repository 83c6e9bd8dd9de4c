use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::{ExactSeries, FloatSeries, Series, SeriesError};
use crate::algebra::{Scalar, ZPoly};
use crate::expr::parse_scalar;

/// Something that can be evaluated, with its derivative, anywhere in 𝔻.
pub trait Analytic {
    fn value(&self, z: Complex64) -> Complex64;
    fn deriv(&self, z: Complex64) -> Complex64;
}

/// A concrete analytic function on the disc.
///
/// Text form: `logE`, `poly(1,1/2,-i)`, `pow(logE,0.6)`, `dil(logE,0.5[,im])`,
/// `h(lambda,alpha,p)` and `f(gamma,lambda)`.
#[derive(Clone, Debug, PartialEq)]
pub enum SymbolSpec {
    Polynomial(ZPoly),
    /// `1 − log(1 − z) = log(e/(1 − z))`.
    LogEKernel,
    /// `exp(β log base)`; `base(0)` must be nonzero.
    Power(Box<SymbolSpec>, f64),
    /// `z ↦ base(λz)`, `|λ| ≤ 1`.
    Dilated(Box<SymbolSpec>, Complex64),
    /// Normalized kernel `(1−|λ|²)^{(α+2)/p} (1 − λ̄z)^{−(2α+4)/p}`.
    TestH { lambda: Complex64, alpha: f64, p: f64 },
    /// `z (1 − λ̄z)^{−γ}`.
    TestF { gamma: f64, lambda: Complex64 },
}

impl SymbolSpec {
    pub fn poly(p: ZPoly) -> Self {
        SymbolSpec::Polynomial(p)
    }

    pub fn power(self, beta: f64) -> Self {
        SymbolSpec::Power(Box::new(self), beta)
    }

    pub fn dilated(self, lambda: Complex64) -> Self {
        SymbolSpec::Dilated(Box::new(self), lambda)
    }

    pub fn validate(&self) -> Result<(), SeriesError> {
        match self {
            SymbolSpec::Polynomial(_) | SymbolSpec::LogEKernel => Ok(()),
            SymbolSpec::Power(b, _) => {
                b.validate()?;
                if b.value(Complex64::new(0.0, 0.0)).norm() == 0.0 {
                    return Err(SeriesError::ZeroConstantTerm("pow"));
                }
                Ok(())
            }
            SymbolSpec::Dilated(b, l) => {
                if l.norm() > 1.0 + 1e-15 {
                    return Err(SeriesError::OutOfRange(format!("dilation |lambda| = {} > 1", l.norm())));
                }
                b.validate()
            }
            SymbolSpec::TestH { lambda, alpha, p } => {
                if lambda.norm() >= 1.0 || *alpha < -1.0 || *p <= 0.0 {
                    return Err(SeriesError::OutOfRange("h needs |lambda| < 1, alpha >= -1, p > 0".into()));
                }
                Ok(())
            }
            SymbolSpec::TestF { gamma, lambda } => {
                if lambda.norm() >= 1.0 || *gamma <= 0.0 {
                    return Err(SeriesError::OutOfRange("f needs |lambda| < 1 and gamma > 0".into()));
                }
                Ok(())
            }
        }
    }

    /// Polynomial degree, if the function is a polynomial.
    pub fn poly_degree(&self) -> Option<usize> {
        match self {
            SymbolSpec::Polynomial(p) => Some(p.degree().unwrap_or(0)),
            SymbolSpec::Dilated(b, _) => b.poly_degree(),
            _ => None,
        }
    }
}

fn binomial_kernel(gamma: f64, lambda: Complex64, scale: f64, shift: usize, n: usize) -> FloatSeries {
    let lb = lambda.conj();
    let mut v = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut c = Complex64::new(scale, 0.0);
    for k in 0..=n {
        if k + shift > n {
            break;
        }
        v[k + shift] = c;
        c = c * lb * ((gamma + k as f64) / (k as f64 + 1.0));
    }
    Series::from_coeffs(v, n)
}

/// `h_λ` truncated at `N`.
pub fn test_function_h(lambda: Complex64, alpha: f64, p: f64, n: usize) -> FloatSeries {
    let gamma = (2.0 * alpha + 4.0) / p;
    let scale = (1.0 - lambda.norm_sqr()).powf((alpha + 2.0) / p);
    binomial_kernel(gamma, lambda, scale, 0, n)
}

/// `f_{γ,λ}` truncated at `N`.
pub fn test_function_f(gamma: f64, lambda: Complex64, n: usize) -> FloatSeries {
    binomial_kernel(gamma, lambda, 1.0, 1, n)
}

pub fn symbol_series(spec: &SymbolSpec, n: usize) -> Result<FloatSeries, SeriesError> {
    spec.validate()?;
    Ok(match spec {
        SymbolSpec::Polynomial(p) => Series::from_poly(p, n),
        SymbolSpec::LogEKernel => Series::from_coeffs(
            (0..=n).map(|k| Complex64::new(if k == 0 { 1.0 } else { 1.0 / k as f64 }, 0.0)).collect(),
            n,
        ),
        SymbolSpec::Power(b, beta) => symbol_series(b, n)?.pow_real(*beta)?,
        SymbolSpec::Dilated(b, l) => {
            let base = symbol_series(b, n)?;
            let mut lk = Complex64::new(1.0, 0.0);
            let mut v = Vec::with_capacity(n + 1);
            for c in base.coeffs() {
                v.push(c * lk);
                lk *= l;
            }
            Series::from_coeffs(v, n)
        }
        SymbolSpec::TestH { lambda, alpha, p } => test_function_h(*lambda, *alpha, *p, n),
        SymbolSpec::TestF { gamma, lambda } => test_function_f(*gamma, *lambda, n),
    })
}

/// Exact-mode series; real powers, dilations and test kernels are float only.
pub fn symbol_series_exact(spec: &SymbolSpec, n: usize) -> Result<ExactSeries, SeriesError> {
    match spec {
        SymbolSpec::Polynomial(p) => Ok(Series::from_poly(p, n)),
        SymbolSpec::LogEKernel => Ok(Series::from_coeffs(
            (0..=n).map(|k| if k == 0 { Scalar::from_int(1) } else { Scalar::ratio(1, k as i64) }).collect(),
            n,
        )),
        _ => Err(SeriesError::FloatOnly("this symbol")),
    }
}

fn principal_pow(x: Complex64, beta: f64) -> Complex64 {
    (x.ln() * beta).exp()
}

impl Analytic for SymbolSpec {
    fn value(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self {
            SymbolSpec::Polynomial(p) => {
                p.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_c64())
            }
            SymbolSpec::LogEKernel => one - (one - z).ln(),
            SymbolSpec::Power(b, beta) => principal_pow(b.value(z), *beta),
            SymbolSpec::Dilated(b, l) => b.value(l * z),
            SymbolSpec::TestH { lambda, alpha, p } => {
                let gamma = (2.0 * alpha + 4.0) / p;
                let scale = (1.0 - lambda.norm_sqr()).powf((alpha + 2.0) / p);
                principal_pow(one - lambda.conj() * z, -gamma) * scale
            }
            SymbolSpec::TestF { gamma, lambda } => z * principal_pow(one - lambda.conj() * z, -gamma),
        }
    }

    fn deriv(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self {
            SymbolSpec::Polynomial(p) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, c) in p.coeffs().iter().enumerate().skip(1).rev() {
                    acc = acc * z + c.to_c64() * k as f64;
                }
                acc
            }
            SymbolSpec::LogEKernel => one / (one - z),
            SymbolSpec::Power(b, beta) => principal_pow(b.value(z), beta - 1.0) * b.deriv(z) * *beta,
            SymbolSpec::Dilated(b, l) => b.deriv(l * z) * l,
            SymbolSpec::TestH { lambda, alpha, p } => {
                let gamma = (2.0 * alpha + 4.0) / p;
                let scale = (1.0 - lambda.norm_sqr()).powf((alpha + 2.0) / p);
                principal_pow(one - lambda.conj() * z, -gamma - 1.0) * lambda.conj() * gamma * scale
            }
            SymbolSpec::TestF { gamma, lambda } => {
                let lb = lambda.conj();
                let base = one - lb * z;
                principal_pow(base, -gamma) + z * principal_pow(base, -gamma - 1.0) * lb * *gamma
            }
        }
    }
}

fn fmt_c(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else {
        format!("{},{}", c.re, c.im)
    }
}

impl fmt::Display for SymbolSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolSpec::Polynomial(p) => {
                let args: Vec<String> = if p.is_zero() {
                    vec!["0".into()]
                } else {
                    p.coeffs().iter().map(|c| c.to_string()).collect()
                };
                write!(f, "poly({})", args.join(","))
            }
            SymbolSpec::LogEKernel => f.write_str("logE"),
            SymbolSpec::Power(b, beta) => write!(f, "pow({b},{beta})"),
            SymbolSpec::Dilated(b, l) => write!(f, "dil({b},{})", fmt_c(*l)),
            SymbolSpec::TestH { lambda, alpha, p } => write!(f, "h({},{alpha},{p})", fmt_c(*lambda)),
            SymbolSpec::TestF { gamma, lambda } => write!(f, "f({gamma},{})", fmt_c(*lambda)),
        }
    }
}

/// Splits at top-level commas.
fn split_args(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn num(s: &str) -> Result<f64, SeriesError> {
    s.parse::<f64>().map_err(|_| SeriesError::InvalidSpec(format!("expected a number, got '{s}'")))
}

/// Complex from one or two trailing numeric arguments.
fn complex(args: &[&str]) -> Result<Complex64, SeriesError> {
    match args {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(SeriesError::InvalidSpec("expected re[,im]".into())),
    }
}

impl FromStr for SymbolSpec {
    type Err = SeriesError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let t = text.trim();
        if t == "logE" {
            return Ok(SymbolSpec::LogEKernel);
        }
        let open = t.find('(').ok_or_else(|| SeriesError::InvalidSpec(format!("unknown symbol '{t}'")))?;
        if !t.ends_with(')') {
            return Err(SeriesError::InvalidSpec(format!("missing ')' in '{t}'")));
        }
        let name = &t[..open];
        let args = split_args(&t[open + 1..t.len() - 1]);
        let bad = |msg: &str| SeriesError::InvalidSpec(format!("{name}: {msg}"));
        let spec = match name {
            "poly" => {
                let coeffs = args
                    .iter()
                    .map(|a| parse_scalar(a).map_err(|e| bad(&e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                SymbolSpec::Polynomial(ZPoly::new(coeffs))
            }
            "pow" if args.len() == 2 => SymbolSpec::Power(Box::new(args[0].parse()?), num(args[1])?),
            "dil" if (2..=3).contains(&args.len()) => {
                SymbolSpec::Dilated(Box::new(args[0].parse()?), complex(&args[1..])?)
            }
            "h" if (3..=4).contains(&args.len()) => {
                let lambda = if args.len() == 4 { complex(&[args[0], args[3]])? } else { complex(&args[..1])? };
                SymbolSpec::TestH { lambda, alpha: num(args[1])?, p: num(args[2])? }
            }
            "f" if (2..=3).contains(&args.len()) => {
                SymbolSpec::TestF { gamma: num(args[0])?, lambda: complex(&args[1..])? }
            }
            _ => return Err(bad("unknown symbol or wrong number of arguments")),
        };
        spec.validate()?;
        Ok(spec)
    }
}
