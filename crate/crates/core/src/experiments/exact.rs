//! Suites in exact arithmetic. No floating point is used here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{random_expr, random_rational, random_zpoly, reassociate, ExperimentError, Report};
use crate::algebra::{Poly, Scalar, UPoly, WPoly, ZPoly};
use crate::expr::{parse, parse_zpoly, Atom, OperatorExpr};
use crate::norms::moment;
use crate::rewrite::{evaluate_exact, iterated_commutator, normalize, CanonicalForm};

fn zmono(l: usize) -> ZPoly {
    Poly::monomial(Scalar::from_int(1), l)
}

/// Number of `ℓ ≤ max_l` where `E` and its canonical form act differently on `z^ℓ`.
fn oracle_mismatches(e: &OperatorExpr, c: &CanonicalForm, g: &ZPoly, max_l: usize) -> usize {
    (0..=max_l).filter(|&l| evaluate_exact(e, &zmono(l), g) != evaluate_exact(c, &zmono(l), g)).count()
}

pub fn verify_oracle(trials: usize, seed: u64) -> Result<Report, ExperimentError> {
    const MAX_L: usize = 12;
    let mut rep = Report::new("oracle");
    rep.param("trials", trials);
    rep.param("seed", seed);
    rep.param("max_letters", 6);
    rep.param("max_depth", 4);
    rep.param("max_l", MAX_L);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases: Vec<(OperatorExpr, ZPoly)> =
        (0..trials).map(|_| (random_expr(&mut rng, 6, 4), random_zpoly(&mut rng, 4, true))).collect();
    cases.push((parse("T*S").unwrap(), parse_zpoly("1+z").unwrap()));
    cases.push((parse("S*d0{u^2} + d0{w}*T - M*d0").unwrap(), parse_zpoly("2-z+z^3").unwrap()));

    let results: Vec<(usize, bool)> = cases
        .par_iter()
        .map(|(e, g)| -> Result<(usize, bool), ExperimentError> {
            let c = normalize(e)?;
            let same = normalize(&reassociate(e))? == c;
            Ok((oracle_mismatches(e, &c, g, MAX_L), same))
        })
        .collect::<Result<_, _>>()?;
    let mismatches: usize = results.iter().map(|r| r.0).sum();
    let reassoc = results.iter().filter(|r| !r.1).count();
    rep.observe("cases", cases.len());
    rep.observe("mismatches", mismatches);
    rep.observe("reassociation_mismatches", reassoc);
    rep.check("evaluate(E) == evaluate(normalize(E)) on every z^l", mismatches == 0);
    rep.check("re-associated variants normalize identically", reassoc == 0);
    Ok(rep.finish(false))
}

/// `[S^k, T]_j` in closed form: for `j ≤ k`
/// `k!/(k−j)!·T^j S^{k−j} T^j − ((−1)^j/j!)·w^k u^j δ₀`, and only the δ₀ term for `j > k`.
pub fn commutator_closed_form(k: u32, j: u32) -> OperatorExpr {
    let mut jfact = BigInt::one();
    for i in 1..=j {
        jfact *= i;
    }
    let sign = if j % 2 == 0 { -1 } else { 1 };
    let dc = Scalar::real(BigRational::new(sign.into(), jfact));
    let delta: UPoly = Poly::monomial(Poly::monomial(dc, k as usize), j as usize);
    let mut terms = Vec::new();
    if j <= k {
        let mut c = 1i64;
        for i in (k - j + 1)..=k {
            c *= i as i64;
        }
        let mut fs = vec![OperatorExpr::t().pow(j)];
        if k > j {
            fs.push(OperatorExpr::s().pow(k - j));
        }
        fs.push(OperatorExpr::t().pow(j));
        terms.push(OperatorExpr::product(fs).scaled(WPoly::constant(Scalar::from_int(c))));
    }
    terms.push(OperatorExpr::delta(delta));
    OperatorExpr::sum(terms)
}

pub fn verify_commutators(k_max: u32, j_max: u32) -> Result<Report, ExperimentError> {
    if k_max == 0 || j_max == 0 || k_max > 5 || j_max > 7 {
        return Err(ExperimentError::Guard(format!("need 1 <= k <= 5 and 1 <= j <= 7, got k={k_max}, j={j_max}")));
    }
    let mut rep = Report::new("commutators");
    rep.param("k_max", k_max);
    rep.param("j_max", j_max);
    let pairs: Vec<(u32, u32)> = (1..=k_max).flat_map(|k| (1..=j_max).map(move |j| (k, j))).collect();
    let outcomes: Vec<(u32, u32, bool, Option<bool>)> = pairs
        .par_iter()
        .map(|&(k, j)| -> Result<_, ExperimentError> {
            let lhs = normalize(&iterated_commutator(&OperatorExpr::s().pow(k), &OperatorExpr::t(), j))?;
            let ok = lhs == normalize(&commutator_closed_form(k, j))?;
            // [S^k, T] = T·T_{g^k} + w^k u δ₀
            let first = if j == 1 {
                let delta: UPoly = Poly::monomial(Poly::monomial(Scalar::from_int(1), k as usize), 1);
                let alt = OperatorExpr::sum(vec![
                    OperatorExpr::product(vec![OperatorExpr::t(), OperatorExpr::Atom(Atom::T(k))]),
                    OperatorExpr::delta(delta),
                ]);
                Some(lhs == normalize(&alt)?)
            } else {
                None
            };
            Ok((k, j, ok, first))
        })
        .collect::<Result<_, _>>()?;
    let failures: Vec<String> = outcomes.iter().filter(|o| !o.2).map(|o| format!("k={},j={}", o.0, o.1)).collect();
    let first_fail = outcomes.iter().filter(|o| o.3 == Some(false)).count();
    rep.observe("pairs", outcomes.len());
    rep.observe("closed_form_failures", failures.clone());
    rep.check("closed form matches for every (k, j)", failures.is_empty());
    rep.check("j = 1 form T*T(g^k) + w^k u d0 matches", first_fail == 0);
    Ok(rep.finish(false))
}

/// Rising factorial `(k)_ℓ = k(k+1)⋯(k+ℓ−1)`.
pub fn pochhammer(k: i64, l: u32) -> BigInt {
    (0..l as i64).fold(BigInt::one(), |acc, i| acc * (k + i))
}

fn det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut d = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let p = a[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    d
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `D_n^{(m)} = det(1/(n+m−j+k)!)_{j,k=0..m}`.
pub fn power_det(n: u32, m: u32) -> BigRational {
    let rows = (0..=m as i64)
        .map(|j| {
            (0..=m as i64)
                .map(|k| BigRational::new(BigInt::one(), factorial((n as i64 + m as i64 - j + k) as u64)))
                .collect()
        })
        .collect();
    det(rows)
}

/// `Δ_n^{(m)}`: row `i`, column `c` holds `(n+m+1−i+c)_i`.
pub fn delta_det(n: u32, m: u32) -> BigRational {
    let rows = (0..=m as i64)
        .map(|i| {
            (0..=m as i64)
                .map(|c| BigRational::from_integer(pochhammer(n as i64 + m as i64 + 1 - i + c, i as u32)))
                .collect()
        })
        .collect();
    det(rows)
}

pub fn verify_determinants(m_max: u32, n_max: u32) -> Result<Report, ExperimentError> {
    if m_max == 0 || m_max > 6 || n_max > 6 {
        return Err(ExperimentError::Guard(format!("need 1 <= m <= 6 and n <= 6, got m={m_max}, n={n_max}")));
    }
    let mut rep = Report::new("determinants");
    rep.param("m_max", m_max);
    rep.param("n_max", n_max);
    let (mut zero_d, mut bad_ratio, mut bad_rec, mut bad_base) = (0, 0, 0, 0);
    for m in 1..=m_max {
        for n in 0..=n_max {
            let d = power_det(n, m);
            let delta = delta_det(n, m);
            if d.is_zero() {
                zero_d += 1;
            }
            if delta.is_zero() || !(&d / &delta).is_positive() {
                bad_ratio += 1;
            }
            if m == 1 && delta != BigRational::one() {
                bad_base += 1;
            }
            if m >= 2 && delta != BigRational::from_integer(factorial(m as u64)) * delta_det(n + 1, m - 1) {
                bad_rec += 1;
            }
        }
    }
    let spot = power_det(1, 1);
    rep.observe("D(m=1,n=1)", spot.to_string());
    rep.observe("Delta(m=m_max,n=0)", delta_det(0, m_max).to_string());
    rep.check("D_n^(m) != 0", zero_d == 0);
    rep.check("D_n^(m) / Delta_n^(m) > 0", bad_ratio == 0);
    rep.check("Delta^(1) = 1", bad_base == 0);
    rep.check("Delta^(m)_n = m! Delta^(m-1)_(n+1)", bad_rec == 0);
    rep.check("D(m=1,n=1) = 1/12", spot == BigRational::new(1.into(), 12.into()));
    Ok(rep.finish(false))
}

/// `‖p − p(0)‖²` with monomial weights `moment(k, alpha)`.
fn centered_sqnorm(p: &ZPoly, alpha: i32) -> Result<BigRational, ExperimentError> {
    let mut s = BigRational::zero();
    for (k, c) in p.coeffs().iter().enumerate().skip(1) {
        s += c.norm_sqr() * moment(k as u32, alpha)?;
    }
    Ok(s)
}

/// Radical-free nesting inequality `‖f^m − f^m(0)‖^{2n} ≤ ‖f^n − f^n(0)‖^{2m}`.
fn nesting_holds(f: &ZPoly, m: u32, n: u32, alpha: i32) -> Result<bool, ExperimentError> {
    let a = centered_sqnorm(&f.pow(m), alpha)?;
    let b = centered_sqnorm(&f.pow(n), alpha)?;
    Ok(num_traits::pow(a, n as usize) <= num_traits::pow(b, m as usize))
}

pub const NESTING_PAIRS: [(u32, u32); 3] = [(1, 2), (2, 3), (1, 3)];

pub fn verify_nesting(trials: usize, deg_max: usize, seed: u64) -> Result<Report, ExperimentError> {
    let mut rep = Report::new("nesting");
    rep.param("trials", trials);
    rep.param("deg_max", deg_max);
    rep.param("seed", seed);
    rep.param("pairs", "(1,2),(2,3),(1,3)");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fs: Vec<ZPoly> = (0..trials).map(|_| random_zpoly(&mut rng, deg_max, false)).collect();
    fs.push(parse_zpoly("1+z").unwrap());
    fs.push(parse_zpoly("3/2").unwrap());
    let violations = |alpha: i32| -> Result<usize, ExperimentError> {
        let per: Vec<usize> = fs
            .par_iter()
            .map(|f| -> Result<usize, ExperimentError> {
                let mut v = 0;
                for &(m, n) in &NESTING_PAIRS {
                    if !nesting_holds(f, m, n, alpha)? {
                        v += 1;
                    }
                }
                Ok(v)
            })
            .collect::<Result<_, _>>()?;
        Ok(per.iter().sum())
    };
    let (vh, va) = (violations(-1)?, violations(0)?);
    rep.observe("polynomials", fs.len());
    rep.observe("violations_h2", vh);
    rep.observe("violations_a2", va);
    rep.check("nesting holds in H^2", vh == 0);
    rep.check("nesting holds in A^2_0", va == 0);
    Ok(rep.finish(false))
}

/// Symbol with a nonzero linear term and a constant term unlikely to be a
/// root of any small-integer coefficient in `w`.
fn generic_symbol(rng: &mut ChaCha8Rng) -> ZPoly {
    let mut c = vec![Scalar::ratio(rng.gen_range(101..=199), 97)];
    let mut lin = random_rational(rng, 5, 4);
    while lin == Scalar::from_int(0) {
        lin = random_rational(rng, 5, 4);
    }
    c.push(lin);
    for _ in 0..rng.gen_range(0..=2) {
        c.push(random_rational(rng, 5, 4));
    }
    Poly::new(c)
}

pub fn verify_trivial(trials: usize, seed: u64) -> Result<Report, ExperimentError> {
    let mut rep = Report::new("trivial");
    rep.param("trials", trials);
    rep.param("seed", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(OperatorExpr, ZPoly)> = (0..trials)
        .map(|i| {
            let e = random_expr(&mut rng, 5, 4);
            // every third case is built to be trivial: E − E' plus a δ₀ tail
            let e = if i % 3 == 0 {
                let tail = OperatorExpr::delta(Poly::monomial(Poly::monomial(Scalar::from_int(1), 1), 1));
                OperatorExpr::Sum(vec![e.clone(), reassociate(&e).scaled(WPoly::constant(Scalar::from_int(-1))), tail])
            } else {
                e
            };
            (e, generic_symbol(&mut rng))
        })
        .collect();
    let results: Vec<(bool, bool)> = cases
        .par_iter()
        .map(|(e, g)| -> Result<(bool, bool), ExperimentError> {
            let triv = normalize(e)?.is_trivial();
            let kills = (1..=e.letter_count() + 1).all(|l| evaluate_exact(e, &zmono(l), g).is_zero());
            Ok((triv, kills))
        })
        .collect::<Result<_, _>>()?;
    let disagreements = results.iter().filter(|r| r.0 != r.1).count();
    rep.observe("trivial_cases", results.iter().filter(|r| r.0).count());
    rep.observe("nontrivial_cases", results.iter().filter(|r| !r.0).count());
    rep.observe("disagreements", disagreements);
    rep.check("is_trivial agrees with L(z^l) = 0 for 1 <= l <= letters + 1", disagreements == 0);
    Ok(rep.finish(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{u, w};

    #[test]
    fn closed_form_examples() {
        let c = normalize(&commutator_closed_form(2, 2)).unwrap();
        assert_eq!(c.st.len(), 1);
        assert_eq!(c.coef(0, 4), WPoly::constant(Scalar::from_int(2)));
        let want = u().pow(2).scale(&w().pow(2).scale(&Scalar::ratio(-1, 2)));
        assert_eq!(c.delta, want);
        let c = normalize(&commutator_closed_form(2, 3)).unwrap();
        assert!(c.st.is_empty());
        assert_eq!(c.delta, u().pow(3).scale(&w().pow(2).scale(&Scalar::ratio(1, 6))));
    }

    #[test]
    fn determinant_values() {
        assert_eq!(power_det(1, 1), BigRational::new(1.into(), 12.into()));
        for n in 0..5 {
            assert_eq!(delta_det(n, 2), BigRational::from_integer(2.into()));
            assert_eq!(delta_det(n, 3), BigRational::from_integer(12.into()));
        }
        assert_eq!(pochhammer(3, 0), BigInt::one());
        assert_eq!(pochhammer(3, 3), BigInt::from(60));
    }

    #[test]
    fn nesting_examples() {
        let f = parse_zpoly("1+z").unwrap();
        assert_eq!(centered_sqnorm(&f, -1).unwrap(), BigRational::one());
        assert_eq!(centered_sqnorm(&f.pow(2), -1).unwrap(), BigRational::from_integer(5.into()));
        assert!(nesting_holds(&parse_zpoly("7").unwrap(), 1, 2, 0).unwrap());
    }

    #[test]
    fn small_suites_pass() {
        assert!(verify_oracle(10, 3).unwrap().passed());
        assert!(verify_commutators(2, 3).unwrap().passed());
        assert!(verify_determinants(3, 3).unwrap().passed());
        assert!(verify_nesting(10, 3, 5).unwrap().passed());
        assert!(verify_trivial(15, 7).unwrap().passed());
        assert!(verify_commutators(6, 1).is_err());
    }
}
