//! `segprop`: batch front end for the segment-propagator engine.
//!
//! Every subcommand is a pure function of its flags: identical
//! invocations produce byte-identical output. CSV carries a `#`-prefixed
//! version header and 17-significant-digit floats; `--format json` emits
//! one JSON object per row instead.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use segprop_core::{
    classical_path, compare_kernels, image_kernel, modes, reflection, spectral_kernel, trace,
    well_levels_oracle, well_levels_quantization, BoundaryKind, EvolutionTime, KernelResult,
    NumericPolicy, SegmentConfig,
};

#[derive(Parser)]
#[command(
    name = "segprop",
    version,
    about = "Propagators on a segment: spectral sums, image sums with reflection phases, \
             step-barrier phases and finite-well spectra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the first eigenmodes (n, k, E) of a boundary combination
    Spectrum(SpectrumArgs),
    /// Evaluate the propagator on a grid by either or both routes
    Propagate(PropagateArgs),
    /// Shorthand for `propagate --method both`
    Compare(CompareArgs),
    /// Emit classical reflected-path polylines for plotting
    Paths(PathsArgs),
    /// Partition sum over evolution times
    Trace(TraceArgs),
    /// Reflection amplitude and phase for a step barrier
    Barrier(BarrierArgs),
    /// Bound levels of the symmetric finite well
    Well(WellArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BcArg {
    #[value(name = "DD", alias = "dd")]
    Dd,
    #[value(name = "NN", alias = "nn")]
    Nn,
    #[value(name = "ND", alias = "nd")]
    Nd,
    #[value(name = "DN", alias = "dn")]
    Dn,
}

impl BcArg {
    fn endpoints(self) -> (BoundaryKind, BoundaryKind) {
        use BoundaryKind::{Dirichlet, Neumann};
        match self {
            BcArg::Dd => (Dirichlet, Dirichlet),
            BcArg::Nn => (Neumann, Neumann),
            BcArg::Nd => (Neumann, Dirichlet),
            BcArg::Dn => (Dirichlet, Neumann),
        }
    }
}

#[derive(Args)]
struct PhysicalArgs {
    /// Boundary conditions, left endpoint first
    #[arg(long, value_enum, default_value = "DD")]
    bc: BcArg,
    /// Segment length L
    #[arg(long = "L", value_name = "L", default_value_t = 1.0)]
    length: f64,
    /// Particle mass m
    #[arg(long = "m", value_name = "M", default_value_t = 1.0)]
    mass: f64,
    /// Reduced Planck constant
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
}

impl PhysicalArgs {
    fn config(&self) -> Result<SegmentConfig> {
        let (left, right) = self.bc.endpoints();
        Ok(SegmentConfig::new(
            self.length,
            self.mass,
            self.hbar,
            left,
            right,
        )?)
    }
}

#[derive(Args)]
struct PolicyArgs {
    /// Certified absolute truncation target for series tails
    #[arg(long, default_value_t = 1e-12)]
    abs_tol: f64,
    /// Relative tolerance used in comparisons
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    /// Hard cap on series terms
    #[arg(long, default_value_t = 100_000)]
    max_terms: usize,
}

impl PolicyArgs {
    fn policy(&self) -> Result<NumericPolicy> {
        Ok(NumericPolicy::new(
            self.abs_tol,
            self.rel_tol,
            self.max_terms,
        )?)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

/// A scalar `v` or an inclusive linear grid `start:stop:count`.
#[derive(Clone, Debug)]
struct Grid(Vec<f64>);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| -> std::result::Result<f64, String> {
            t.parse::<f64>().map_err(|e| format!("'{t}': {e}"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [single] => Ok(Grid(vec![parse(single)?])),
            [start, stop, count] => {
                let (a, b) = (parse(start)?, parse(stop)?);
                let n: usize = count.parse().map_err(|e| format!("'{count}': {e}"))?;
                if n < 1 {
                    return Err("grid count must be >= 1".into());
                }
                if n == 1 {
                    return Ok(Grid(vec![a]));
                }
                let step = (b - a) / (n - 1) as f64;
                Ok(Grid((0..n).map(|i| a + step * i as f64).collect()))
            }
            _ => Err(format!("'{s}' is not a number or start:stop:count grid")),
        }
    }
}

#[derive(Args)]
struct TimeArgs {
    /// Euclidean duration tau (dt = -i tau); accepts start:stop:count
    #[arg(long, conflicts_with_all = ["dt_re", "dt_im"])]
    tau: Option<Grid>,
    /// Real part of a complex dt (requires --dt-im)
    #[arg(long, requires = "dt_im", allow_negative_numbers = true)]
    dt_re: Option<f64>,
    /// Imaginary part of a complex dt; must be < 0 unless --allow-real-time
    #[arg(long, requires = "dt_re", allow_negative_numbers = true)]
    dt_im: Option<f64>,
    /// Admit im(dt) = 0; series cannot certify truncation there
    #[arg(long)]
    allow_real_time: bool,
}

impl TimeArgs {
    fn resolve(&self) -> Result<Vec<EvolutionTime>> {
        if let Some(grid) = &self.tau {
            return grid
                .0
                .iter()
                .map(|&tau| Ok(EvolutionTime::euclidean(tau)?))
                .collect();
        }
        match (self.dt_re, self.dt_im) {
            (Some(re), Some(im)) => {
                let dt = if im == 0.0 && self.allow_real_time {
                    EvolutionTime::real_time(re)?
                } else {
                    EvolutionTime::new(re, im)?
                };
                Ok(vec![dt])
            }
            _ => bail!("either --tau or --dt-re/--dt-im is required"),
        }
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    physical: PhysicalArgs,
    /// Number of modes to list
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Spectral,
    Image,
    Both,
}

#[derive(Args)]
struct PropagateArgs {
    #[command(flatten)]
    physical: PhysicalArgs,
    /// Start position(s); accepts start:stop:count
    #[arg(long)]
    x: Grid,
    /// End position(s); accepts start:stop:count
    #[arg(long)]
    y: Grid,
    #[command(flatten)]
    time: TimeArgs,
    #[arg(long, value_enum, default_value = "both")]
    method: Method,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    physical: PhysicalArgs,
    /// Start position(s); accepts start:stop:count
    #[arg(long)]
    x: Grid,
    /// End position(s); accepts start:stop:count
    #[arg(long)]
    y: Grid,
    #[command(flatten)]
    time: TimeArgs,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct PathsArgs {
    /// Image indices, comma separated (e.g. 0,1,-1,2)
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0",
        allow_hyphen_values = true
    )]
    r: Vec<i64>,
    #[arg(long)]
    x: f64,
    #[arg(long)]
    y: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t0: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    t1: f64,
    /// Segment length L
    #[arg(long = "L", value_name = "L", default_value_t = 1.0)]
    length: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    physical: PhysicalArgs,
    #[command(flatten)]
    time: TimeArgs,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct BarrierArgs {
    /// Particle energy (0 < E < h)
    #[arg(long = "E", value_name = "E")]
    energy: f64,
    /// Barrier height
    #[arg(long = "h", value_name = "H")]
    height: f64,
    #[arg(long = "m", value_name = "M", default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WellMethod {
    Quantization,
    Oracle,
    Both,
}

#[derive(Args)]
struct WellArgs {
    /// Well width L
    #[arg(long = "L", value_name = "L")]
    length: f64,
    /// Wall height h
    #[arg(long = "h", value_name = "H")]
    height: f64,
    #[arg(long = "m", value_name = "M", default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    #[arg(long, value_enum, default_value = "both")]
    method: WellMethod,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(flatten)]
    out: OutputArgs,
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Propagate(args) => cmd_propagate(args),
        Command::Compare(args) => cmd_propagate(PropagateArgs {
            physical: args.physical,
            x: args.x,
            y: args.y,
            time: args.time,
            method: Method::Both,
            policy: args.policy,
            out: args.out,
        }),
        Command::Paths(args) => cmd_paths(args),
        Command::Trace(args) => cmd_trace(args),
        Command::Barrier(args) => cmd_barrier(args),
        Command::Well(args) => cmd_well(args),
    }
}

/// 17-significant-digit rendering; round-trips every f64.
fn fe(v: f64) -> String {
    format!("{v:.16e}")
}

fn bc_name(cfg: &SegmentConfig) -> String {
    cfg.bc_tag().iter().collect()
}

struct Emitter {
    format: Format,
    buf: String,
}

impl Emitter {
    fn new(format: Format) -> Self {
        let mut buf = String::new();
        if matches!(format, Format::Csv) {
            let _ = writeln!(buf, "# segprop {}", env!("CARGO_PKG_VERSION"));
        }
        Emitter { format, buf }
    }

    fn comment(&mut self, text: &str) {
        if matches!(self.format, Format::Csv) {
            let _ = writeln!(self.buf, "# {text}");
        }
    }

    fn header(&mut self, columns: &[&str]) {
        if matches!(self.format, Format::Csv) {
            let _ = writeln!(self.buf, "{}", columns.join(","));
        }
    }

    /// One row: pre-rendered CSV cells plus the JSON form of the record.
    fn row<T: Serialize>(&mut self, cells: &[String], record: &T) -> Result<()> {
        match self.format {
            Format::Csv => {
                let _ = writeln!(self.buf, "{}", cells.join(","));
            }
            Format::Json => {
                let line = serde_json::to_string(record).context("serializing row")?;
                let _ = writeln!(self.buf, "{line}");
            }
        }
        Ok(())
    }

    fn finish(self, output: Option<&PathBuf>) -> Result<()> {
        match output {
            Some(path) => std::fs::write(path, self.buf)
                .with_context(|| format!("writing {}", path.display()))?,
            None => {
                use std::io::Write as _;
                std::io::stdout()
                    .lock()
                    .write_all(self.buf.as_bytes())
                    .context("writing standard output")?;
            }
        }
        Ok(())
    }
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<()> {
    #[derive(Serialize)]
    struct Row<'a> {
        bc: &'a str,
        n: u32,
        k: f64,
        #[serde(rename = "E")]
        energy: f64,
    }

    let cfg = args.physical.config()?;
    let spectrum = modes(&cfg, args.count)?;
    let bc = bc_name(&cfg);
    let mut em = Emitter::new(args.out.format);
    em.header(&["bc", "n", "k", "E"]);
    for mode in spectrum.modes() {
        em.row(
            &[bc.clone(), mode.n.to_string(), fe(mode.k), fe(mode.energy)],
            &Row {
                bc: &bc,
                n: mode.n,
                k: mode.k,
                energy: mode.energy,
            },
        )?;
    }
    em.finish(args.out.output.as_ref())
}

#[derive(Serialize)]
struct SingleRow<'a> {
    bc: &'a str,
    method: &'a str,
    x: f64,
    y: f64,
    dt_re: f64,
    dt_im: f64,
    re: f64,
    im: f64,
    terms: usize,
    tail_bound: f64,
}

#[derive(Serialize)]
struct BothRow<'a> {
    bc: &'a str,
    x: f64,
    y: f64,
    dt_re: f64,
    dt_im: f64,
    spectral_re: f64,
    spectral_im: f64,
    image_re: f64,
    image_im: f64,
    abs_diff: f64,
    rel_diff: f64,
    terms_spectral: usize,
    terms_image: usize,
}

fn cmd_propagate(args: PropagateArgs) -> Result<()> {
    let cfg = args.physical.config()?;
    let policy = args.policy.policy()?;
    let times = args.time.resolve()?;
    let bc = bc_name(&cfg);
    let mut em = Emitter::new(args.out.format);

    let single_columns = [
        "bc",
        "method",
        "x",
        "y",
        "dt_re",
        "dt_im",
        "re",
        "im",
        "terms",
        "tail_bound",
    ];
    let both_columns = [
        "bc",
        "x",
        "y",
        "dt_re",
        "dt_im",
        "spectral_re",
        "spectral_im",
        "image_re",
        "image_im",
        "abs_diff",
        "rel_diff",
        "terms_spectral",
        "terms_image",
    ];
    match args.method {
        Method::Both => em.header(&both_columns),
        _ => em.header(&single_columns),
    }

    let single = |em: &mut Emitter,
                  method: &str,
                  x: f64,
                  y: f64,
                  dt: EvolutionTime,
                  result: KernelResult|
     -> Result<()> {
        let cells = [
            bc.clone(),
            method.to_string(),
            fe(x),
            fe(y),
            fe(dt.delta().re),
            fe(dt.delta().im),
            fe(result.value.re),
            fe(result.value.im),
            result.terms_used.to_string(),
            fe(result.tail_bound),
        ];
        em.row(
            &cells,
            &SingleRow {
                bc: &bc,
                method,
                x,
                y,
                dt_re: dt.delta().re,
                dt_im: dt.delta().im,
                re: result.value.re,
                im: result.value.im,
                terms: result.terms_used,
                tail_bound: result.tail_bound,
            },
        )
    };

    for &x in &args.x.0 {
        for &y in &args.y.0 {
            for &dt in &times {
                match args.method {
                    Method::Spectral => {
                        let r = spectral_kernel(&cfg, x, y, dt, &policy)?;
                        single(&mut em, "spectral", x, y, dt, r)?;
                    }
                    Method::Image => {
                        let r = image_kernel(&cfg, x, y, dt, &policy)?;
                        single(&mut em, "image", x, y, dt, r)?;
                    }
                    Method::Both => {
                        let report = compare_kernels(&cfg, x, y, dt, &policy)?;
                        let cells = [
                            bc.clone(),
                            fe(x),
                            fe(y),
                            fe(dt.delta().re),
                            fe(dt.delta().im),
                            fe(report.spectral.value.re),
                            fe(report.spectral.value.im),
                            fe(report.image.value.re),
                            fe(report.image.value.im),
                            fe(report.abs_diff),
                            fe(report.rel_diff),
                            report.spectral.terms_used.to_string(),
                            report.image.terms_used.to_string(),
                        ];
                        em.row(
                            &cells,
                            &BothRow {
                                bc: &bc,
                                x,
                                y,
                                dt_re: dt.delta().re,
                                dt_im: dt.delta().im,
                                spectral_re: report.spectral.value.re,
                                spectral_im: report.spectral.value.im,
                                image_re: report.image.value.re,
                                image_im: report.image.value.im,
                                abs_diff: report.abs_diff,
                                rel_diff: report.rel_diff,
                                terms_spectral: report.spectral.terms_used,
                                terms_image: report.image.terms_used,
                            },
                        )?;
                    }
                }
            }
        }
    }
    em.finish(args.out.output.as_ref())
}

fn cmd_paths(args: PathsArgs) -> Result<()> {
    #[derive(Serialize)]
    struct Row {
        r: i64,
        vertices: Vec<(f64, f64)>,
    }

    let mut em = Emitter::new(args.out.format);
    em.header(&["t", "x"]);
    for &r in &args.r {
        let vertices = classical_path(r, args.x, args.y, args.t0, args.t1, args.length)?;
        em.comment(&format!("r={r}"));
        match args.out.format {
            Format::Csv => {
                for (t, pos) in &vertices {
                    em.row::<()>(&[fe(*t), fe(*pos)], &())?;
                }
            }
            Format::Json => em.row(&[], &Row { r, vertices })?,
        }
    }
    em.finish(args.out.output.as_ref())
}

fn cmd_trace(args: TraceArgs) -> Result<()> {
    #[derive(Serialize)]
    struct Row<'a> {
        bc: &'a str,
        dt_re: f64,
        dt_im: f64,
        re: f64,
        im: f64,
        terms: usize,
        tail_bound: f64,
    }

    let cfg = args.physical.config()?;
    let policy = args.policy.policy()?;
    let bc = bc_name(&cfg);
    let mut em = Emitter::new(args.out.format);
    em.header(&["bc", "dt_re", "dt_im", "re", "im", "terms", "tail_bound"]);
    for dt in args.time.resolve()? {
        let result = trace(&cfg, dt, &policy)?;
        em.row(
            &[
                bc.clone(),
                fe(dt.delta().re),
                fe(dt.delta().im),
                fe(result.value.re),
                fe(result.value.im),
                result.terms_used.to_string(),
                fe(result.tail_bound),
            ],
            &Row {
                bc: &bc,
                dt_re: dt.delta().re,
                dt_im: dt.delta().im,
                re: result.value.re,
                im: result.value.im,
                terms: result.terms_used,
                tail_bound: result.tail_bound,
            },
        )?;
    }
    em.finish(args.out.output.as_ref())
}

fn cmd_barrier(args: BarrierArgs) -> Result<()> {
    #[derive(Serialize)]
    struct Row {
        #[serde(rename = "E")]
        energy: f64,
        h: f64,
        k: f64,
        q: f64,
        #[serde(rename = "R_re")]
        r_re: f64,
        #[serde(rename = "R_im")]
        r_im: f64,
        theta: f64,
    }

    let s = reflection(args.energy, args.height, args.mass, args.hbar)?;
    let mut em = Emitter::new(args.out.format);
    em.header(&["E", "h", "k", "q", "R_re", "R_im", "theta"]);
    em.row(
        &[
            fe(s.energy),
            fe(s.height),
            fe(s.k),
            fe(s.q),
            fe(s.r_amp.re),
            fe(s.r_amp.im),
            fe(s.theta),
        ],
        &Row {
            energy: s.energy,
            h: s.height,
            k: s.k,
            q: s.q,
            r_re: s.r_amp.re,
            r_im: s.r_amp.im,
            theta: s.theta,
        },
    )?;
    em.finish(args.out.output.as_ref())
}

fn cmd_well(args: WellArgs) -> Result<()> {
    #[derive(Serialize)]
    struct Row<'a> {
        method: &'a str,
        n: u32,
        k: f64,
        #[serde(rename = "E")]
        energy: f64,
    }

    #[derive(Serialize)]
    struct BothRow {
        n: u32,
        k_quantization: f64,
        #[serde(rename = "E_quantization")]
        e_quantization: f64,
        k_oracle: f64,
        #[serde(rename = "E_oracle")]
        e_oracle: f64,
        #[serde(rename = "abs_dE")]
        abs_de: f64,
    }

    let policy = args.policy.policy()?;
    let mut em = Emitter::new(args.out.format);
    em.comment("level convention: k*L - theta(E) = n*pi with theta in (0, pi), n >= 0");
    match args.method {
        WellMethod::Quantization | WellMethod::Oracle => {
            let (name, result) = match args.method {
                WellMethod::Quantization => (
                    "quantization",
                    well_levels_quantization(
                        args.length,
                        args.height,
                        args.mass,
                        args.hbar,
                        &policy,
                    )?,
                ),
                _ => (
                    "oracle",
                    well_levels_oracle(args.length, args.height, args.mass, args.hbar)?,
                ),
            };
            em.header(&["method", "n", "k", "E"]);
            for level in &result.levels {
                em.row(
                    &[
                        name.to_string(),
                        level.n.to_string(),
                        fe(level.k),
                        fe(level.energy),
                    ],
                    &Row {
                        method: name,
                        n: level.n,
                        k: level.k,
                        energy: level.energy,
                    },
                )?;
            }
        }
        WellMethod::Both => {
            let quant =
                well_levels_quantization(args.length, args.height, args.mass, args.hbar, &policy)?;
            let oracle = well_levels_oracle(args.length, args.height, args.mass, args.hbar)?;
            if quant.levels.len() != oracle.levels.len() {
                bail!(
                    "level counts disagree: quantization found {}, oracle found {}",
                    quant.levels.len(),
                    oracle.levels.len()
                );
            }
            em.header(&[
                "n",
                "k_quantization",
                "E_quantization",
                "k_oracle",
                "E_oracle",
                "abs_dE",
            ]);
            for (a, b) in quant.levels.iter().zip(&oracle.levels) {
                em.row(
                    &[
                        a.n.to_string(),
                        fe(a.k),
                        fe(a.energy),
                        fe(b.k),
                        fe(b.energy),
                        fe((a.energy - b.energy).abs()),
                    ],
                    &BothRow {
                        n: a.n,
                        k_quantization: a.k,
                        e_quantization: a.energy,
                        k_oracle: b.k,
                        e_oracle: b.energy,
                        abs_de: (a.energy - b.energy).abs(),
                    },
                )?;
            }
        }
    }
    em.finish(args.out.output.as_ref())
}
