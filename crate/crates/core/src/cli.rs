//! Command-line front end: `solve`, `msd`, `kernel eval`, `verify` and the
//! figure presets.
//!
//! Exit codes: 0 success, 2 configuration or parameter error, 3 numerical
//! accuracy failure (including a failed `verify`), 4 I/O failure.

use crate::emit::{self, fmt9, Series};
use crate::error::{Error, Result};
use crate::laplace::{Equation, LaplaceImage, MemoryKernel, SubordinationDensity, Variant};
use crate::moments::{self, AsymptoticParams, ICMomentSpec, MomentPath, MomentReport, VelocityMomentSpec};
use crate::operators::{self, InitialCondition, Profile, SolutionField, TransportParams, Velocity};
use crate::properties::{self, VerificationReport, WaveForm};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "memkernel", version, about = "Memory-kernel GFPE/GDWE solvers")]
struct Cli {
    /// Reproduce a figure configuration.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Directory for preset output.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// JSON file with preset settings (`preset`, `out_dir`); flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Solve on a grid and emit CSV, SVG or JSON.
    Solve {
        #[arg(value_enum)]
        equation: EqArg,
        #[command(flatten)]
        args: ProblemArgs,
    },
    /// Mean, second moment and MSD.
    Msd {
        #[arg(value_enum)]
        equation: EqArg,
        #[command(flatten)]
        args: ProblemArgs,
        /// auto (closed form when available), ilt or asymptotic.
        #[arg(long, value_enum, default_value_t = MsdMethod::Auto)]
        method: MsdMethod,
    },
    /// Kernel utilities.
    Kernel {
        #[command(subcommand)]
        op: KernelOp,
    },
    /// Numerical identity checks; prints a JSON report.
    Verify {
        #[command(subcommand)]
        check: VerifyCmd,
        /// Write the report here instead of standard output.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum EqArg {
    Gfpe,
    Gdwe,
}

impl From<EqArg> for Equation {
    fn from(e: EqArg) -> Self {
        match e {
            EqArg::Gfpe => Equation::Gfpe,
            EqArg::Gdwe => Equation::Gdwe,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MsdMethod {
    Auto,
    Ilt,
    Asymptotic,
}

/// Output format of `solve`.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Svg,
    Json,
}

/// Figure configurations.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Fig1,
    Fig2,
    Fig2a,
    Fig3,
}

#[derive(Args, Debug, Default)]
struct ProblemArgs {
    /// JSON run configuration; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Kernel id, e.g. power_law:0.5, distributed_order, gdwe_power:0.75.
    #[arg(long)]
    kernel: Option<String>,
    /// Initial profile: delta, box:ε, gaussian:σ or custom:path.csv.
    #[arg(long)]
    ic: Option<String>,
    /// Initial velocity (GDWE): zero, neg-derivative, box-spikes:ε, gaussian-slope:σ, custom:path.csv.
    #[arg(long)]
    v0: Option<String>,
    /// Diffusion coefficient.
    #[arg(long = "B")]
    b: Option<f64>,
    /// Drift.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    /// Wave speed.
    #[arg(long)]
    a: Option<f64>,
    /// Time(s), comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<f64>,
    /// Grid as lo:hi:n.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file (standard output when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum KernelOp {
    /// Evaluate the kernel image at complex s, or a subordination density with --variant.
    Eval {
        #[arg(long)]
        kernel: String,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        im: f64,
        /// f_sM, F_half or F_mixed.
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        xi: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// ∫ density dξ against its Laplace-side mass.
    Normalization {
        #[arg(long)]
        kernel: String,
        #[arg(long)]
        variant: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = properties::NORMALIZATION_TOL)]
        tol: f64,
    },
    /// Kernel self-reproduction.
    Efros {
        #[arg(long)]
        kernel1: String,
        #[arg(long)]
        kernel2: String,
        #[arg(long, default_value_t = 1.0)]
        y: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = properties::EFROS_TOL)]
        tol: f64,
    },
    /// Mittag-Leffler composition law.
    MlComposition {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long, default_value_t = 1.0)]
        t2: f64,
    },
    /// Wave-operator composition law.
    WaveComposition {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long, default_value_t = 1.0)]
        t2: f64,
        /// Use u instead of √u inside the cosines.
        #[arg(long)]
        literal: bool,
    },
    /// Sign alternation of image derivatives.
    Cmf {
        #[arg(long)]
        kernel: String,
        /// Check the density image G^m e^{-ξ s G} instead of the kernel image.
        #[arg(long)]
        variant: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        xi: f64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.5, 1.0, 2.0])]
        s: Vec<f64>,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Fractional PDE residual of the solver output.
    PdeResidual {
        #[arg(long)]
        kernel: String,
        #[arg(long, default_value = "delta")]
        ic: String,
        #[arg(long = "B", default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
}

/// Settings readable from `--config` files. Every field is optional.
#[derive(Debug, Clone, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub kernel: Option<String>,
    pub ic: Option<String>,
    pub v0: Option<String>,
    #[serde(rename = "B")]
    pub b: Option<f64>,
    pub mu: Option<f64>,
    pub a: Option<f64>,
    pub t: Option<Vec<f64>>,
    pub grid: Option<String>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub preset: Option<Preset>,
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

/// Fully resolved problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub equation: Equation,
    pub kernel: MemoryKernel,
    pub ic: InitialCondition,
    pub tp: TransportParams,
    pub times: Vec<f64>,
    pub grid: Vec<f64>,
}

/// Parse `lo:hi:n`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!("grid '{s}' is not lo:hi:n")));
    }
    let num = |p: &str| p.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad grid bound '{p}'")));
    let n = parts[2]
        .trim()
        .parse::<usize>()
        .map_err(|_| Error::Config(format!("bad grid size '{}'", parts[2])))?;
    operators::solve::uniform_grid(num(parts[0])?, num(parts[1])?, n)
}

fn resolve(equation: Equation, args: &ProblemArgs) -> Result<(Problem, Option<Format>, Option<PathBuf>)> {
    let cfg = match &args.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let kernel_id = args
        .kernel
        .clone()
        .or(cfg.kernel)
        .ok_or_else(|| Error::Config("no kernel given (--kernel)".into()))?;
    let kernel = MemoryKernel::parse(&kernel_id)?;
    if kernel.equation != equation {
        return Err(Error::Config(format!("kernel '{kernel_id}' does not belong to the {equation}")));
    }
    let profile = Profile::parse(args.ic.as_deref().or(cfg.ic.as_deref()).unwrap_or("delta"))?;
    let velocity = Velocity::parse(args.v0.as_deref().or(cfg.v0.as_deref()).unwrap_or("zero"))?;
    let ic = InitialCondition::new(profile).with_velocity(velocity);
    let tp = TransportParams::new(
        args.b.or(cfg.b).unwrap_or(1.0),
        args.mu.or(cfg.mu).unwrap_or(0.0),
        args.a.or(cfg.a).unwrap_or(1.0),
    );
    match equation {
        Equation::Gfpe => tp.check_gfpe()?,
        Equation::Gdwe => tp.check_gdwe()?,
    }
    let times = if !args.t.is_empty() { args.t.clone() } else { cfg.t.unwrap_or_else(|| vec![1.0]) };
    if times.is_empty() || times.iter().any(|t| !(*t > 0.0) || !t.is_finite()) {
        return Err(Error::Config("times must be positive".into()));
    }
    let grid = match args.grid.as_deref().or(cfg.grid.as_deref()) {
        Some(g) => parse_grid(g)?,
        None => operators::solve::default_grid(),
    };
    let out = args.out.clone().or(cfg.out);
    let format = args.format.or(cfg.format);
    Ok((
        Problem {
            equation,
            kernel,
            ic,
            tp,
            times,
            grid,
        },
        format,
        out,
    ))
}

/// Solve `p` at each of its times.
pub fn solve_problem(p: &Problem) -> Result<Vec<SolutionField>> {
    p.times
        .iter()
        .map(|&t| match p.equation {
            Equation::Gfpe => operators::solve_gfpe(&p.kernel, &p.ic, &p.tp, &p.grid, t),
            Equation::Gdwe => operators::solve_gdwe(&p.kernel, &p.ic, &p.tp, &p.grid, t),
        })
        .collect()
}

fn field_json(f: &SolutionField) -> serde_json::Value {
    serde_json::json!({ "meta": f.meta, "x": f.grid, "value": f.values })
}

fn infer_format(out: Option<&Path>) -> Format {
    match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("svg") => Format::Svg,
        Some("json") => Format::Json,
        _ => Format::Csv,
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    path.with_file_name(format!("{stem}_{suffix}.{ext}"))
}

fn emit_fields(fields: &[SolutionField], format: Format, out: Option<&Path>, w: &mut dyn Write) -> Result<()> {
    let title = fields
        .first()
        .map(|f| format!("{} {} ic={}", f.meta.equation, f.meta.kernel, f.meta.ic))
        .unwrap_or_default();
    match format {
        Format::Csv => {
            for f in fields {
                let text = emit::csv_string(&f.grid, &f.values);
                match out {
                    Some(p) if fields.len() == 1 => std::fs::write(p, text)?,
                    Some(p) => std::fs::write(with_suffix(p, &format!("t{}", fmt9(f.meta.t))), text)?,
                    None => {
                        if fields.len() > 1 {
                            writeln!(w, "# t={}", fmt9(f.meta.t))?;
                        }
                        w.write_all(text.as_bytes())?;
                    }
                }
            }
        }
        Format::Svg => {
            let series: Vec<Series<'_>> = fields
                .iter()
                .map(|f| Series {
                    label: format!("t={}", fmt9(f.meta.t)),
                    x: &f.grid,
                    y: &f.values,
                })
                .collect();
            let text = emit::svg_string(&title, &series);
            match out {
                Some(p) => std::fs::write(p, text)?,
                None => w.write_all(text.as_bytes())?,
            }
        }
        Format::Json => {
            let v = serde_json::json!({ "fields": fields.iter().map(field_json).collect::<Vec<_>>() });
            let text = emit::json_string(&v)?;
            match out {
                Some(p) => std::fs::write(p, text)?,
                None => writeln!(w, "{text}")?,
            }
        }
    }
    Ok(())
}

fn msd_report(p: &Problem, t: f64, method: MsdMethod) -> Result<MomentReport> {
    let spec = ICMomentSpec::from_profile(&p.ic.profile)?;
    if method == MsdMethod::Asymptotic {
        let params = AsymptoticParams {
            b: p.tp.b,
            mu: p.tp.mu,
            a: p.tp.a,
            c: spec.c,
        };
        let v = moments::msd_asymptotic(&p.kernel, p.equation, &params, t)?;
        return Ok(MomentReport {
            mean: f64::NAN,
            second_moment: f64::NAN,
            msd: v,
            method: moments::MomentMethod::Tauberian,
        });
    }
    let path = if method == MsdMethod::Ilt { MomentPath::NumericIlt } else { MomentPath::Auto };
    match p.equation {
        Equation::Gfpe => moments::msd_gfpe_by(&p.kernel, &spec, p.tp.b, p.tp.mu, t, path),
        Equation::Gdwe => {
            let v = VelocityMomentSpec::from_velocity(&p.ic.velocity, &p.ic.profile);
            moments::msd_gdwe_by(&p.kernel, &spec, &v, p.tp.a, t, path)
        }
    }
}

fn default_variant(k: &MemoryKernel) -> Variant {
    match k.equation {
        Equation::Gfpe => Variant::FsM,
        Equation::Gdwe => Variant::FHalf,
    }
}

fn verify(check: &VerifyCmd) -> Result<VerificationReport> {
    match check {
        VerifyCmd::Normalization { kernel, variant, t, tol } => {
            let k = MemoryKernel::parse(kernel)?;
            let v = match variant {
                Some(s) => s.parse()?,
                None => default_variant(&k),
            };
            let d = SubordinationDensity::new(k, v)?;
            properties::check_normalization_with(&d, *t, *tol)
        }
        VerifyCmd::Efros { kernel1, kernel2, y, t, tol } => {
            let k1 = MemoryKernel::parse(kernel1)?;
            let k2 = MemoryKernel::parse(kernel2)?;
            properties::check_efros_with(&k1, &k2, *y, *t, *tol)
        }
        VerifyCmd::MlComposition { alpha, t0, t2 } => properties::check_ml_composition(*alpha, *t0, *t2),
        VerifyCmd::WaveComposition { a, kappa, t0, t2, literal } => {
            let form = if *literal { WaveForm::Literal } else { WaveForm::SqrtU };
            properties::check_wave_composition_form(*a, *kappa, *t0, *t2, form)
        }
        VerifyCmd::Cmf { kernel, variant, xi, s, n } => {
            let k = MemoryKernel::parse(kernel)?;
            let image = match variant {
                Some(v) => SubordinationDensity::new(k, v.parse()?)?.image(*xi),
                None => {
                    let kk = k.clone();
                    LaplaceImage::new(move |z: Complex64| kk.eval(z))
                }
            };
            properties::check_complete_monotonicity(&image, s, *n)
        }
        VerifyCmd::PdeResidual { kernel, ic, b, mu, a, x, t } => {
            let k = MemoryKernel::parse(kernel)?;
            let ic = InitialCondition::new(Profile::parse(ic)?);
            properties::check_pde_residual(k.equation, &k, &ic, &TransportParams::new(*b, *mu, *a), *x, *t)
        }
    }
}

/// One curve of a preset.
#[derive(Debug, Clone)]
pub struct PresetCurve {
    /// File stem, e.g. `fig1_I`.
    pub name: String,
    /// Legend label.
    pub label: String,
    pub field: SolutionField,
}

/// Compute the curves of a figure preset on the default grid.
pub fn preset_curves(p: Preset) -> Result<Vec<PresetCurve>> {
    let grid = operators::solve::default_grid();
    let roman = ["I", "II", "III"];
    let mut out = Vec::new();
    match p {
        Preset::Fig1 => {
            let k = MemoryKernel::power_law(0.5)?;
            let tp = TransportParams::new(1.0, 1.0, 1.0);
            let ics = [InitialCondition::delta(), InitialCondition::boxed(1.0)?, InitialCondition::gaussian(1.0)?];
            for (ic, r) in ics.iter().zip(roman) {
                let field = operators::solve_gfpe(&k, ic, &tp, &grid, 1.0)?;
                out.push(PresetCurve {
                    name: format!("fig1_{r}"),
                    label: format!("{r}: {}", ic.profile),
                    field,
                });
            }
        }
        Preset::Fig2 => {
            let k = MemoryKernel::gdwe_power(0.75)?;
            let tp = TransportParams::new(1.0, 0.0, 1.0);
            let ics = [InitialCondition::delta(), InitialCondition::boxed(0.5)?, InitialCondition::gaussian(1.0)?];
            for (ic, r) in ics.iter().zip(roman) {
                let field = operators::solve_gdwe(&k, ic, &tp, &grid, 1.0)?;
                out.push(PresetCurve {
                    name: format!("fig2_{r}"),
                    label: format!("{r}: {}", ic.profile),
                    field,
                });
            }
        }
        Preset::Fig2a => {
            let k = MemoryKernel::gdwe_power(0.75)?;
            let tp = TransportParams::new(1.0, 0.0, 1.0);
            let ic = InitialCondition::gaussian(1.0)?;
            for t in [1.0, 2.0, 3.0] {
                let field = operators::solve_gdwe(&k, &ic, &tp, &grid, t)?;
                out.push(PresetCurve {
                    name: format!("fig2a_t{t}"),
                    label: format!("t={t}"),
                    field,
                });
            }
        }
        Preset::Fig3 => {
            let k = MemoryKernel::gdwe_power(0.75)?;
            let tp = TransportParams::new(1.0, 0.0, 1.0);
            for (sigma, r) in [0.5, 1.0, 1.5].into_iter().zip(roman) {
                let ic = InitialCondition::gaussian(1.0)?.with_velocity(Velocity::GaussianSlope { sigma });
                let field = operators::solve_gdwe(&k, &ic, &tp, &grid, 1.0)?;
                out.push(PresetCurve {
                    name: format!("fig3_{r}"),
                    label: format!("{r}: σ={sigma}"),
                    field,
                });
            }
        }
    }
    Ok(out)
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig2a => "fig2a",
            Preset::Fig3 => "fig3",
        }
    }
}

/// Write one CSV per curve, a combined SVG and a JSON summary into `dir`.
pub fn write_preset(p: Preset, dir: &Path, w: &mut dyn Write) -> Result<Vec<PresetCurve>> {
    let curves = preset_curves(p)?;
    std::fs::create_dir_all(dir)?;
    let mut summary = Vec::new();
    for c in &curves {
        emit::write_csv(dir.join(format!("{}.csv", c.name)), &c.field.grid, &c.field.values)?;
        let (xmin, vmin) = c.field.min();
        let maxima = c.field.local_maxima().len();
        writeln!(
            w,
            "{} mass={} min={} at x={} maxima={}",
            c.name,
            fmt9(c.field.mass()),
            fmt9(vmin),
            fmt9(xmin),
            maxima
        )?;
        summary.push(serde_json::json!({
            "name": c.name,
            "label": c.label,
            "mass": c.field.mass(),
            "min": vmin,
            "argmin": xmin,
            "maxima": maxima,
            "meta": c.field.meta,
        }));
    }
    let series: Vec<Series<'_>> = curves
        .iter()
        .map(|c| Series {
            label: c.label.clone(),
            x: &c.field.grid,
            y: &c.field.values,
        })
        .collect();
    emit::write_svg(dir.join(format!("{}.svg", p.name())), p.name(), &series)?;
    emit::write_json(dir.join(format!("{}.json", p.name())), &serde_json::json!({ "preset": p.name(), "curves": summary }))?;
    Ok(curves)
}

fn execute(cli: Cli, w: &mut dyn Write) -> Result<i32> {
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let preset = cli.preset.or(cfg.preset);
    match (cli.cmd, preset) {
        (Some(_), Some(_)) => Err(Error::Config("--preset cannot be combined with a subcommand".into())),
        (None, None) => Err(Error::Config("nothing to do: give a subcommand or --preset".into())),
        (None, Some(p)) => {
            let dir = cli.out_dir.or(cfg.out_dir).unwrap_or_else(|| PathBuf::from("."));
            write_preset(p, &dir, w)?;
            Ok(0)
        }
        (Some(cmd), None) => run_cmd(cmd, w),
    }
}

fn run_cmd(cmd: Cmd, w: &mut dyn Write) -> Result<i32> {
    match cmd {
        Cmd::Solve { equation, args } => {
            let (p, format, out) = resolve(equation.into(), &args)?;
            let fields = solve_problem(&p)?;
            let format = format.unwrap_or_else(|| infer_format(out.as_deref()));
            emit_fields(&fields, format, out.as_deref(), w)?;
            Ok(0)
        }
        Cmd::Msd { equation, args, method } => {
            let (p, format, out) = resolve(equation.into(), &args)?;
            let reports = p.times.iter().map(|&t| msd_report(&p, t, method)).collect::<Result<Vec<_>>>()?;
            let text = if format == Some(Format::Json) {
                let v: Vec<_> = p
                    .times
                    .iter()
                    .zip(&reports)
                    .map(|(t, r)| serde_json::json!({ "t": t, "report": r }))
                    .collect();
                emit::json_string(&v)? + "\n"
            } else if reports.len() == 1 {
                format!("{}\n", fmt9(reports[0].msd))
            } else {
                p.times
                    .iter()
                    .zip(&reports)
                    .map(|(t, r)| format!("{},{}\n", fmt9(*t), fmt9(r.msd)))
                    .collect()
            };
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => w.write_all(text.as_bytes())?,
            }
            Ok(0)
        }
        Cmd::Kernel {
            op: KernelOp::Eval { kernel, s, im, variant, xi, t },
        } => {
            let k = MemoryKernel::parse(&kernel)?;
            match variant {
                Some(v) => {
                    let (xi, t) = match (xi, t) {
                        (Some(x), Some(t)) => (x, t),
                        _ => return Err(Error::Config("density evaluation needs --xi and --t".into())),
                    };
                    let d = SubordinationDensity::new(k, v.parse()?)?;
                    writeln!(w, "{}", fmt9(d.eval(xi, t)?))?;
                }
                None => {
                    let v = k.eval(Complex64::new(s, im));
                    if im == 0.0 && s > 0.0 {
                        writeln!(w, "{}", fmt9(v.re))?;
                    } else {
                        writeln!(w, "{} {}", fmt9(v.re), fmt9(v.im))?;
                    }
                }
            }
            Ok(0)
        }
        Cmd::Verify { check, out } => {
            let r = verify(&check)?;
            let text = emit::json_string(&r)? + "\n";
            match out {
                Some(p) => std::fs::write(p, text)?,
                None => w.write_all(text.as_bytes())?,
            }
            Ok(if r.pass { 0 } else { 3 })
        }
    }
}

/// Run the command line `argv` (including the program name), writing results to `out`.
pub fn run_with_output<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("memkernel: {e}");
            e.exit_code()
        }
    }
}

/// Run with standard output.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_with_output(argv, &mut lock)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_s(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let mut v = vec!["memkernel"];
        v.extend_from_slice(args);
        let code = run_with_output(v, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn msd_gdwe_gaussian() {
        let (c, out) = run_s(&["msd", "gdwe", "--kernel", "gdwe_power:0.75", "--ic", "gaussian:1", "--a", "1", "--t", "1"]);
        assert_eq!(c, 0);
        assert!(out.starts_with("2.504505"), "{out}");
    }

    #[test]
    fn ml_composition_passes() {
        let (c, out) = run_s(&["verify", "ml-composition", "--alpha", "1", "--t0", "0", "--t2", "1"]);
        assert_eq!(c, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pass"], true);
        assert!(v["max_abs_residual"].as_f64().unwrap() < 1e-4);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_s(&["solve", "gfpe", "--kernel", "nope"]).0, 2);
        assert_eq!(run_s(&["solve", "gfpe", "--kernel", "gdwe_power:0.75"]).0, 2);
        assert_eq!(run_s(&["msd", "gfpe", "--kernel", "power_law:0.5", "--t", "-1"]).0, 2);
        assert_eq!(run_s(&["bogus"]).0, 2);
        assert_eq!(run_s(&[]).0, 2);
        let (c, _) = run_s(&["verify", "wave-composition", "--kappa", "2", "--literal"]);
        assert_eq!(c, 3);
        let (c, _) = run_s(&["solve", "gfpe", "--kernel", "power_law:0.5", "--out", "/nonexistent/dir/x.csv", "--grid", "-1:1:5"]);
        assert_eq!(c, 4);
    }

    #[test]
    fn kernel_eval() {
        let (c, out) = run_s(&["kernel", "eval", "--kernel", "power_law:0.5", "--s", "4"]);
        assert_eq!(c, 0);
        assert_eq!(out.trim(), "0.5");
    }

    #[test]
    fn config_and_flags() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.json");
        std::fs::write(&cfg, r#"{"kernel": "power_law:0.5", "B": 2.0, "t": [1.0]}"#).unwrap();
        let (_, a) = run_s(&["msd", "gfpe", "--config", cfg.to_str().unwrap()]);
        let (_, b) = run_s(&["msd", "gfpe", "--config", cfg.to_str().unwrap(), "--B", "1"]);
        assert!(a.starts_with("4.5135166"), "{a}");
        assert!(b.starts_with("2.25675833"), "{b}");
        std::fs::write(&cfg, r#"{"kernal": "x"}"#).unwrap();
        assert_eq!(run_s(&["msd", "gfpe", "--config", cfg.to_str().unwrap()]).0, 2);
    }

    #[test]
    fn grid_spec() {
        assert_eq!(parse_grid("-1:1:5").unwrap(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("1:0:5").is_err());
    }
}
