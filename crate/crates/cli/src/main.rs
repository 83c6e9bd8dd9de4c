mod args;

use std::process::ExitCode;

use clap::Parser;
use num_complex::Complex64;
use serde_json::{json, Value};
use thiserror::Error;

use args::{Cli, Command, Experiment, NormKind, SpaceArg, Suite};
use paraprod::classify::{classify_expr, two_letter_table, Classification, SpaceClass, COMPACTNESS_NOTE};
use paraprod::experiments::{self as ex, BoundedParams, ExperimentError, GrowthParams, Report};
use paraprod::expr::{format, format_zpoly, parse, parse_zpoly, OperatorExpr, ParseError, Style};
use paraprod::norms::{
    bergman_norm, bloch_seminorm, garsia_bmoa, hardy_norm, operator_matrix, operator_norm_trunc, polar_grid,
    radius_ladder, sup_norm, QuadConfig,
};
use paraprod::rewrite::{evaluate_exact, normalize};
use paraprod::series::{apply_expr, symbol_series, FloatSeries, SymbolSpec};

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot parse {what} {input:?}: {err}\n  {input}\n  {caret}^", caret = " ".repeat(err.offset))]
    Parse { what: &'static str, input: String, err: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
}

impl From<paraprod::rewrite::RewriteError> for CliError {
    fn from(e: paraprod::rewrite::RewriteError) -> Self {
        CliError::Experiment(e.into())
    }
}

impl From<paraprod::norms::NormError> for CliError {
    fn from(e: paraprod::norms::NormError) -> Self {
        CliError::Experiment(e.into())
    }
}

impl From<paraprod::series::SeriesError> for CliError {
    fn from(e: paraprod::series::SeriesError) -> Self {
        CliError::Experiment(e.into())
    }
}

/// What a subcommand produced: text and JSON views of the same data, and
/// whether a verification failed.
struct Output {
    text: String,
    json: Value,
    failed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, failed: false }
    }
}

fn parse_expr(s: &str) -> Result<OperatorExpr, CliError> {
    parse(s).map_err(|err| CliError::Parse { what: "expression", input: s.to_string(), err })
}

fn parse_poly(s: &str) -> Result<paraprod::algebra::ZPoly, CliError> {
    parse_zpoly(s).map_err(|err| CliError::Parse { what: "polynomial", input: s.to_string(), err })
}

fn parse_spec(s: &str) -> Result<SymbolSpec, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("cannot parse series spec {s:?}: {e}")))
}

fn space_class(space: SpaceArg, alpha: f64, p: f64) -> Result<SpaceClass, CliError> {
    if p <= 0.0 {
        return Err(CliError::Usage(format!("p must be positive, got {p}")));
    }
    match space {
        SpaceArg::Hardy => Ok(SpaceClass::hardy(p)),
        SpaceArg::Bergman if alpha > -1.0 => Ok(SpaceClass::bergman(alpha, p)),
        SpaceArg::Bergman => Err(CliError::Usage(format!("bergman spaces need alpha > -1, got {alpha}"))),
    }
}

fn classification_text(c: &Classification) -> String {
    let mut s = format!("verdict: {}\n  {}\n", c.verdict.tag(), c.verdict);
    for p in &c.provenance {
        s += &format!("source: {}\n  {}\n", p.theorem, p.quote);
    }
    s
}

fn report_output(r: Report) -> Output {
    Output { text: r.to_string(), json: r.to_json(), failed: !r.passed() }
}

fn complex_pairs(f: &FloatSeries) -> String {
    let mut s = String::from("n,re,im\n");
    for (k, c) in f.coeffs().iter().enumerate() {
        s += &format!("{k},{:e},{:e}\n", c.re, c.im);
    }
    s
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.cmd {
        Command::Normalize { expr, latex } => {
            let c = normalize(&parse_expr(&expr)?)?;
            let text = if latex {
                c.to_expr().map(|e| format(&e, Style::Latex)).unwrap_or_else(|| "0".into())
            } else {
                c.to_string()
            };
            Ok(Output::ok(text + "\n", c.to_json()))
        }
        Command::Classify { expr, space, alpha, p } => {
            let sp = space_class(space, alpha, p)?;
            let c = classify_expr(&parse_expr(&expr)?, sp)?;
            let mut j = c.to_json();
            j["expression"] = json!(expr);
            j["note"] = json!(COMPACTNESS_NOTE);
            let text = format!("{expr} on {}\n{}note: {COMPACTNESS_NOTE}\n", sp.name(), classification_text(&c));
            Ok(Output::ok(text, j))
        }
        Command::Eval { expr, g, f, exact, series, n } => {
            let e = parse_expr(&expr)?;
            let fp = parse_poly(&f)?;
            if exact {
                let gp = parse_poly(g.as_deref().expect("clap requires --g"))?;
                let out = evaluate_exact(&e, &fp, &gp);
                let s = format_zpoly(&out);
                Ok(Output::ok(s.clone() + "\n", json!({ "result": s })))
            } else {
                let spec = parse_spec(series.as_deref().expect("clap requires a mode"))?;
                let gs = symbol_series(&spec, n)?;
                let out = apply_expr(&e, &FloatSeries::from_poly(&fp, n), &gs);
                Ok(Output::ok(complex_pairs(&out), json!({ "N": n, "coeffs": out.to_json() })))
            }
        }
        Command::Norm { kind, f, alpha, p, nodes, angles, refinement, k, ladder } => {
            let spec = parse_spec(&f)?;
            spec.validate()?;
            let grid = || polar_grid(&radius_ladder(ladder), angles);
            let value = match kind {
                NormKind::Bergman if alpha > -1.0 => {
                    let cfg = QuadConfig { radial_nodes: nodes, angular_nodes: angles, refinement, focus_angle: None };
                    bergman_norm(&spec, alpha, p, &cfg)
                }
                NormKind::Bergman if alpha == -1.0 => hardy_norm(&spec, p, k),
                NormKind::Bergman => return Err(CliError::Usage(format!("alpha must be >= -1, got {alpha}"))),
                NormKind::Hardy => hardy_norm(&spec, p, k),
                NormKind::Bloch => bloch_seminorm(&spec, &grid()),
                NormKind::Sup => sup_norm(&spec, &grid()),
                NormKind::Bmoa => garsia_bmoa(&spec, &grid(), k),
            };
            let kind = format!("{kind:?}").to_lowercase();
            let j = json!({ "kind": kind, "f": spec.to_string(), "alpha": alpha, "p": p, "value": value });
            Ok(Output::ok(format!("{value:.15e}\n"), j))
        }
        Command::Opnorm { expr, g, alpha, trunc, tol } => {
            let mx = operator_matrix(&parse_expr(&expr)?, &parse_poly(&g)?, alpha, trunc)?;
            let v = operator_norm_trunc(&mx, tol)?;
            let j = json!({ "expr": expr, "g": g, "alpha": alpha, "trunc": trunc, "value": v });
            Ok(Output::ok(format!("{v:.15e}\n"), j))
        }
        Command::Verify { suite, seed, trials, k_max, j_max, m_max, n_max, deg_max } => Ok(report_output(match suite {
            Suite::Oracle => ex::verify_oracle(trials, seed)?,
            Suite::Commutators => ex::verify_commutators(k_max, j_max)?,
            Suite::Determinants => ex::verify_determinants(m_max, n_max)?,
            Suite::Nesting => ex::verify_nesting(trials, deg_max, seed)?,
            Suite::Trivial => ex::verify_trivial(trials, seed)?,
        })),
        Command::Experiment { which } => Ok(report_output(run_experiment(which)?)),
        Command::Table { space } => {
            let sp = space_class(space, 0.0, 2.0)?;
            let rows = two_letter_table(sp);
            let mut text = String::new();
            for (word, c) in &rows {
                text += &format!("{word:<4} {:<18} {}\n", c.verdict.tag(), c.verdict);
            }
            let j: Vec<Value> = rows
                .iter()
                .map(|(word, c)| {
                    let mut v = c.to_json();
                    v["word"] = json!(word);
                    v
                })
                .collect();
            Ok(Output::ok(text, json!({ "space": sp.name(), "rows": j })))
        }
    }
}

fn run_experiment(which: Experiment) -> Result<Report, CliError> {
    Ok(match which {
        Experiment::CounterexampleGrowth { k, alpha, p, ladder, nodes } => {
            ex::counterexample_growth(&GrowthParams { k, alpha, p, radii: radius_ladder(ladder), nodes })?
        }
        Experiment::CounterexampleBounded { beta, eps, alpha, p, ladder, trunc, factor_trunc, bloch_ladder } => {
            ex::counterexample_bounded(&BoundedParams {
                beta,
                eps,
                alpha,
                p,
                lambdas: radius_ladder(ladder),
                n: trunc,
                factor_n: factor_trunc,
                bloch_radii: radius_ladder(bloch_ladder),
            })?
        }
        Experiment::Dilation { expr, g, alpha, radii, trunc } => {
            ex::dilation_monotonicity(&parse_expr(&expr)?, &parse_poly(&g)?, alpha, &radii, trunc)?
        }
        Experiment::PowerInequality { g, n, deg, samples, alpha, seed } => {
            ex::power_inequality_scan(&parse_poly(&g)?, n, deg, samples, alpha, seed)?
        }
        Experiment::PointwiseBound { g, gamma, lambda, k_max, t_points, trunc } => {
            let lambdas: Vec<Complex64> = lambda.iter().map(|&l| Complex64::new(l, 0.0)).collect();
            let ts: Vec<f64> = (0..t_points).map(|i| i as f64 / t_points as f64).collect();
            ex::pointwise_bound_check(&parse_spec(&g)?, gamma, &lambdas, k_max, &ts, trunc)?
        }
        Experiment::VmoaProbe { f, ladder } => {
            let mut a = vec![0.0];
            a.extend(radius_ladder(ladder));
            ex::vmoa_probe(&parse_spec(&f)?, &a)?
        }
    })
}

fn init_threads() {
    if let Some(n) = std::env::var("PARAPROD_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    init_threads();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string(&out.json).expect("json output"));
            } else {
                print!("{}", out.text);
            }
            if out.failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
