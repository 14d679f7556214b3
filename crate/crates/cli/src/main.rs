use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use serde_json::{json, Value};

use qdlab::bundled::{normalize, Bundled};
use qdlab::cover::build_cover;
use qdlab::deformation::{affine_deform, geodesic_flow, teich_disk_point};
use qdlab::delaunay::delaunayize;
use qdlab::homology::homology_data;
use qdlab::io::{cover_to_json, homology_tag, homology_to_json, parse_surface, surface_to_json, to_pretty, AnySurface};
use qdlab::periods::{period_map, PeriodVector};
use qdlab::report::CheckReport;
use qdlab::strata::SymbolPoset;
use qdlab::suite::{
    demailly_report, disk_report, first_variation_report, laplacian_report, run_suite, thurston_report, SuiteConfig,
};
use qdlab::svg::render;
use qdlab::{FlatSurface, QdError, Result, ScalarMode, Q};

#[derive(Parser)]
#[command(name = "qdlab", version, about = "Half-translation surfaces, period coordinates and Levi-form checks")]
struct Cli {
    /// Scalar backend: exact rationals or binary64.
    #[arg(long, global = true, default_value = "exact")]
    mode: ScalarMode,
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Override the tolerance of floating checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Render the resulting surface as an SVG triangle net.
    #[arg(long, global = true)]
    emit_svg: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a surface (file or bundled name) and write it in the requested mode.
    Build { surface: String },
    /// Flip to a Delaunay triangulation.
    Delaunay {
        surface: String,
        #[arg(long)]
        emit_flips: Option<PathBuf>,
    },
    /// Orientation double cover with involution and projection tables.
    Cover { surface: String },
    /// Anti-invariant homology of a cover file.
    Homology { cover: PathBuf },
    /// Period coordinates of a cover in the basis of a homology file.
    Periods { cover: PathBuf, homology: PathBuf },
    /// Teichmüller geodesic flow for time t.
    Flow {
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Move the periods of a cover by a relative period vector.
    Deform {
        cover: PathBuf,
        homology: PathBuf,
        #[arg(long)]
        v: PathBuf,
    },
    /// Point of the Teichmüller disk through a surface.
    Disk {
        surface: String,
        #[arg(long)]
        d0: f64,
        /// Complex parameter such as `0.1+0.2i`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Numerical and exact checks; `all --suite bundled` runs the acceptance suite.
    Verify {
        check: Check,
        #[arg(long)]
        surface: Option<String>,
        #[arg(long)]
        suite: Option<Suite>,
        /// Write the report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Random families or pairs per check.
        #[arg(long, default_value_t = 50)]
        samples: u64,
    },
    /// Strata of quadratic differentials with their degeneration order.
    Strata {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    FirstVariation,
    Laplacian,
    Disk,
    Demailly,
    Thurston,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Bundled,
}

fn io_error(path: &Path, e: std::io::Error) -> QdError {
    QdError::Malformed(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| io_error(path, e))
}

fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| QdError::Malformed(format!("{}: {e}", path.display())))
}

/// A bundled name or a path to a surface file.
fn load_surface(arg: &str, mode: ScalarMode) -> Result<AnySurface> {
    let s = match Bundled::from_name(arg) {
        Some(b) => parse_surface(b.data())?,
        None => parse_surface(&read(Path::new(arg))?)?,
    };
    s.into_mode(mode)
}

fn exact(s: AnySurface) -> Result<FlatSurface<Q>> {
    match s.into_mode(ScalarMode::Exact)? {
        AnySurface::Exact(s) => Ok(s),
        AnySurface::Float(_) => unreachable!(),
    }
}

fn load_cover_base(path: &Path, mode: ScalarMode) -> Result<AnySurface> {
    let v = read_json(path)?;
    let base = v.get("base").ok_or_else(|| QdError::Malformed("cover JSON has no `base` surface".into()))?;
    qdlab::io::surface_from_value(base)?.into_mode(mode)
}

macro_rules! with_surface {
    ($any:expr, $s:ident => $body:expr) => {
        match $any {
            AnySurface::Exact($s) => $body,
            AnySurface::Float($s) => $body,
        }
    };
}

struct Output<'a> {
    cli: &'a Cli,
}

impl Output<'_> {
    fn emit(&self, v: &Value) -> Result<()> {
        let text = to_pretty(v);
        match &self.cli.out {
            Some(p) => write(p, &text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn svg<S: qdlab::Scalar>(&self, s: &FlatSurface<S>, title: &str) -> Result<()> {
        match &self.cli.emit_svg {
            Some(p) => write(p, &render(s, title)),
            None => Ok(()),
        }
    }
}

fn suite_config(cli: &Cli) -> SuiteConfig {
    SuiteConfig { seed: cli.seed, tolerance: cli.tol }
}

/// Runs the command; `Ok(false)` means a check failed.
fn run(cli: &Cli) -> Result<bool> {
    let out = Output { cli };
    match &cli.command {
        Command::Build { surface } => {
            let s = load_surface(surface, cli.mode)?;
            with_surface!(&s, x => out.svg(x, surface))?;
            out.emit(&with_surface!(&s, x => surface_to_json(x)))?;
        }
        Command::Delaunay { surface, emit_flips } => {
            let s = load_surface(surface, cli.mode)?;
            let (json, flips) = with_surface!(&s, x => {
                let (d, flips) = delaunayize(x)?;
                out.svg(&d, surface)?;
                (surface_to_json(&d), flips)
            });
            if let Some(p) = emit_flips {
                write(p, &to_pretty(&serde_json::to_value(&flips).expect("flip records serialize")))?;
            }
            out.emit(&json)?;
        }
        Command::Cover { surface } => {
            let s = load_surface(surface, cli.mode)?;
            let json = with_surface!(&s, x => {
                let c = build_cover(x);
                out.svg(c.cover(), &format!("double cover of {surface}"))?;
                cover_to_json(&c)
            });
            out.emit(&json)?;
        }
        Command::Homology { cover } => {
            let base = load_cover_base(cover, cli.mode)?;
            let h = with_surface!(&base, x => homology_data(&build_cover(x))?);
            out.emit(&homology_to_json(&h))?;
        }
        Command::Periods { cover, homology } => {
            let base = load_cover_base(cover, cli.mode)?;
            let tag = homology_tag(&read_json(homology)?)?;
            let json = with_surface!(&base, x => {
                let c = build_cover(x);
                let h = homology_data(&c)?;
                if h.tag() != tag {
                    return Err(QdError::BasisMismatch { expected: h.tag().to_string(), found: tag });
                }
                period_map(&c, &h)?.to_json()
            });
            out.emit(&json)?;
        }
        Command::Flow { surface, t } => {
            let s = load_surface(surface, cli.mode)?;
            let f = with_surface!(&s, x => geodesic_flow(x, *t));
            out.svg(&f, &format!("{surface} at t = {t}"))?;
            out.emit(&surface_to_json(&f))?;
        }
        Command::Deform { cover, homology, v } => {
            let base = load_cover_base(cover, cli.mode)?;
            let tag = homology_tag(&read_json(homology)?)?;
            let v = read_json(v)?;
            let json = with_surface!(&base, x => {
                let c = build_cover(x);
                let h = homology_data(&c)?;
                if h.tag() != tag {
                    return Err(QdError::BasisMismatch { expected: h.tag().to_string(), found: tag });
                }
                let d = affine_deform(&c, &h, &PeriodVector::from_json(&v)?)?;
                out.svg(d.base(), "deformed surface")?;
                surface_to_json(d.base())
            });
            out.emit(&json)?;
        }
        Command::Disk { surface, d0, lambda } => {
            let l: Complex<f64> =
                lambda.parse().map_err(|_| QdError::Malformed(format!("cannot parse lambda `{lambda}`")))?;
            let s = load_surface(surface, cli.mode)?;
            let p = with_surface!(&s, x => teich_disk_point(x, *d0, l)?);
            if let Some(x) = &p.surface {
                out.svg(x, &format!("{surface}, d0 = {d0}, lambda = {lambda}"))?;
            }
            out.emit(&json!({
                "d0": d0,
                "lambda": [l.re, l.im],
                "m": [p.m.re, p.m.im],
                "distance": p.distance,
                "surface": p.surface.as_ref().map(surface_to_json),
            }))?;
        }
        Command::Verify { check, surface, suite, report, samples } => {
            return verify(cli, &out, *check, surface.as_deref(), suite.is_some(), report.as_deref(), *samples);
        }
        Command::Strata { g, m, dot } => {
            let p = SymbolPoset::new(*g, *m);
            if let Some(path) = dot {
                write(path, &p.to_dot())?;
            }
            let mut v = serde_json::to_value(&p).expect("posets serialize");
            v["labels"] = json!(p.nodes.iter().map(|s| s.to_string()).collect::<Vec<_>>());
            v["maximal"] = json!(p.maximal());
            out.emit(&v)?;
        }
    }
    Ok(true)
}

fn emit_report(cli: &Cli, out: &Output, report: Option<&Path>, v: &Value) -> Result<()> {
    match report.or(cli.out.as_deref()) {
        Some(p) => write(p, &to_pretty(v)),
        None => out.emit(v),
    }
}

fn verify(
    cli: &Cli,
    out: &Output,
    check: Check,
    surface: Option<&str>,
    suite: bool,
    report: Option<&Path>,
    samples: u64,
) -> Result<bool> {
    let cfg = suite_config(cli);
    if matches!(check, Check::All) && (suite || surface.is_none()) {
        let r = run_suite(&cfg);
        for c in &r.criteria {
            let status = if c.passed { "PASS" } else { "FAIL" };
            eprintln!("{status} [{:>2}] {} ({:.2} s): {}", c.id, c.name, c.seconds, c.detail);
        }
        emit_report(cli, out, report, &serde_json::to_value(&r).expect("suite reports serialize"))?;
        return Ok(r.passed);
    }
    let need = || surface.ok_or_else(|| QdError::Malformed("this check needs --surface".into()));
    let load = |name: &str| exact(load_surface(name, ScalarMode::Exact)?);
    let reports: Vec<CheckReport> = match check {
        Check::FirstVariation => vec![first_variation_report(&load(need()?)?, &cfg, samples)?],
        Check::Laplacian => vec![laplacian_report(&load(need()?)?, &cfg, samples)?],
        Check::Disk => {
            let s = load(need()?)?;
            if let Some(x) = teich_disk_point(&normalize(&s), 0.7, Complex::new(0.225, 0.225))?.surface {
                out.svg(&x, "disk point d0 = 0.7, lambda = 0.225+0.225i")?;
            }
            vec![disk_report(&s, &cfg)?]
        }
        Check::Demailly => vec![demailly_report(&cfg)],
        Check::Thurston => vec![thurston_report(&load(need()?)?, &cfg, samples)?],
        Check::All => {
            let s = load(need()?)?;
            vec![
                first_variation_report(&s, &cfg, samples)?,
                laplacian_report(&s, &cfg, samples)?,
                disk_report(&s, &cfg)?,
                demailly_report(&cfg),
                thurston_report(&s, &cfg, samples)?,
            ]
        }
    };
    let passed = reports.iter().all(|r| r.passed);
    let v = json!({
        "seed": cli.seed,
        "surface": surface,
        "passed": passed,
        "checks": reports,
    });
    emit_report(cli, out, report, &v)?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
