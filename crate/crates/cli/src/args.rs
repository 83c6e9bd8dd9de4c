use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use paraprod::experiments::DEFAULT_SEED;

#[derive(Parser, Debug)]
#[command(name = "paraprod", version, about = "Canonical forms, boundedness verdicts and numerics for analytic paraproducts")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SpaceArg {
    Bergman,
    Hardy,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum NormKind {
    Bergman,
    Hardy,
    Bloch,
    Bmoa,
    Sup,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    Oracle,
    Commutators,
    Determinants,
    Nesting,
    Trivial,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rewrite an expression into S^j T^k words plus a d0 part.
    Normalize {
        expr: String,
        #[arg(long, conflicts_with = "json")]
        latex: bool,
    },
    /// Boundedness verdict with its source.
    Classify {
        expr: String,
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
    },
    /// Apply an expression to f, exactly for polynomial g or as truncated series.
    #[command(group(ArgGroup::new("mode").required(true).args(["exact", "series"])))]
    Eval {
        expr: String,
        /// Symbol polynomial in z (exact mode).
        #[arg(long, requires = "exact")]
        g: Option<String>,
        /// Input polynomial in z.
        #[arg(long)]
        f: String,
        #[arg(long, requires = "g")]
        exact: bool,
        /// Symbol as a series spec, e.g. logE or pow(logE,0.6).
        #[arg(long)]
        series: Option<String>,
        /// Truncation order in series mode.
        #[arg(long = "N", default_value_t = 32)]
        n: usize,
    },
    /// Norm or seminorm of a function given as a series spec.
    Norm {
        #[arg(long, value_enum)]
        kind: NormKind,
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Gauss nodes per radial panel.
        #[arg(long, default_value_t = 32)]
        nodes: usize,
        /// Angular nodes (Bergman) or points per circle (grids).
        #[arg(long, default_value_t = 256)]
        angles: usize,
        /// Geometric panels toward the boundary.
        #[arg(long, default_value_t = 4)]
        refinement: usize,
        /// Boundary points for hardy and bmoa.
        #[arg(long, default_value_t = 1024)]
        k: usize,
        /// Grid radii 1 - 10^-j for j = 1..=ladder.
        #[arg(long, default_value_t = 6)]
        ladder: u32,
    },
    /// Norm of the N x N finite section on A^2_alpha.
    Opnorm {
        expr: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        alpha: i32,
        #[arg(long, default_value_t = 100)]
        trunc: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Exact verification suites.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        k_max: u32,
        #[arg(long, default_value_t = 7)]
        j_max: u32,
        #[arg(long, default_value_t = 6)]
        m_max: u32,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
        #[arg(long, default_value_t = 4)]
        deg_max: usize,
    },
    /// Numerical experiments.
    Experiment {
        #[command(subcommand)]
        which: Experiment,
    },
    /// Verdicts for the nine two-letter words.
    Table {
        #[arg(long, value_enum)]
        space: SpaceArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum Experiment {
    CounterexampleGrowth {
        #[arg(long, default_value_t = 2.0)]
        k: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 6)]
        ladder: u32,
        #[arg(long, default_value_t = 24)]
        nodes: usize,
    },
    CounterexampleBounded {
        #[arg(long, default_value_t = 0.6)]
        beta: f64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 5)]
        ladder: u32,
        #[arg(long, default_value_t = 4096)]
        trunc: usize,
        #[arg(long, default_value_t = 256)]
        factor_trunc: usize,
        #[arg(long, default_value_t = 6)]
        bloch_ladder: u32,
    },
    Dilation {
        #[arg(long, default_value = "S*T")]
        expr: String,
        #[arg(long, default_value = "1+z")]
        g: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        alpha: i32,
        #[arg(long, value_delimiter = ',', default_value = "0.3,0.6,0.9")]
        radii: Vec<f64>,
        #[arg(long, default_value_t = 150)]
        trunc: usize,
    },
    PowerInequality {
        #[arg(long, default_value = "z")]
        g: String,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 8)]
        deg: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        alpha: i32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    PointwiseBound {
        #[arg(long, default_value = "logE")]
        g: String,
        #[arg(long, default_value_t = 8.0)]
        gamma: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.9")]
        lambda: Vec<f64>,
        #[arg(long, default_value_t = 3)]
        k_max: u32,
        /// Number of equispaced t in [0, 1).
        #[arg(long, default_value_t = 20)]
        t_points: usize,
        #[arg(long, default_value_t = 1000)]
        trunc: usize,
    },
    VmoaProbe {
        #[arg(long, default_value = "pow(logE,0.6)")]
        f: String,
        /// Points a = 0 and 1 - 10^-j for j = 1..=ladder.
        #[arg(long, default_value_t = 5)]
        ladder: u32,
    },
}
