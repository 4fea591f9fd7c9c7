//! Command-line driver: shear construction, convolution, certification,
//! zero location, rendering and example fixtures.
//!
//! Exit codes: 0 on success or a passed certification, 1 on a failed
//! certification, 2 on usage or input errors.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use harmconv::certify::{
    certify_halfplane, certify_strip, convexity_in_direction, region_membership, remark1_witness,
    CertificationReport, SweepGrid,
};
use harmconv::convolution::{convolve, convolve_f0};
use harmconv::harmonic::{
    canonical_f0, example_map, shear, Dilatation, HarmonicMap, NamedMap, TargetDomain,
};
use harmconv::render::{parse_dump, render_map, write_dump, RenderSpec, Viewport};
use harmconv::series::ComplexPolynomial;
use harmconv::zerocheck::{count_zeros_in_disk, schur_cohn, CountMethod};
use harmconv::{Complex64, Error, DEFAULT_ORDER, DEFAULT_R_MAX};
use serde::Deserialize;

/// Environment variable overriding the directory for relative output paths.
pub const OUT_DIR_ENV: &str = "HARMCONV_OUT_DIR";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "harmconv",
    version,
    about = "Harmonic shears, convolutions and univalence certificates"
)]
struct Cli {
    /// Grid defaults as `key = value` lines (radii, angles, r_max, order, samples).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Shear a target domain with a dilatation and dump the coefficients.
    Shear {
        /// `right`, `slanted:GAMMA` or `strip:ALPHA`.
        #[arg(long)]
        target: String,
        /// `mono:THETA:N` or `mobius:A`.
        #[arg(long, allow_hyphen_values = true)]
        dilatation: String,
        #[arg(long)]
        order: Option<usize>,
        /// Write the dump here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Convolve two maps, each a named example or a dump file.
    Convolve {
        first: String,
        second: String,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a certification and print its report.
    Certify(CertifyArgs),
    /// Count zeros in the unit disk of a polynomial given by ascending
    /// coefficients (`re` or `re,im`).
    Zeros {
        #[arg(required = true, allow_hyphen_values = true, num_args = 1..)]
        coefficients: Vec<String>,
    },
    /// Render images of concentric circles as SVG.
    Render {
        /// Named map (f0, f1, f2, f3, F1, F2, F3) or a dump file.
        #[arg(long)]
        map: String,
        /// Comma-separated circle radii in (0, 1).
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0)]
        rays: usize,
        #[arg(long)]
        samples: Option<usize>,
        /// `x_min,x_max,y_min,y_max`; fitted to the curves when absent.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        viewport: Option<Vec<f64>>,
        #[arg(long)]
        output: PathBuf,
    },
    /// Write coefficient dumps of the convolution examples F1, F2, F3.
    Examples {
        #[arg(long, default_value = ".")]
        dir: PathBuf,
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct CertifyArgs {
    /// Theorem instance: 1 (slanted pair), 2 and 3 (half-plane), 5 and 6 (strip).
    #[arg(long, conflicts_with_all = ["remark", "region"])]
    theorem: Option<u32>,
    /// Remark instance; only 1 (higher-power counterexamples) exists.
    #[arg(long, conflicts_with = "region")]
    remark: Option<u32>,
    /// Image-region claim of F1, F2 or F3.
    #[arg(long)]
    region: Option<String>,
    /// Power of the monomial dilatation.
    #[arg(long)]
    n: Option<u32>,
    /// Single rotation angle; 16 equally spaced angles when absent.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Mobius parameter; a fixed family when absent.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Strip parameter in [pi/2, pi).
    #[arg(long)]
    alpha: Option<f64>,
    /// Slant angles of the two shears of theorem 1.
    #[arg(long)]
    gamma1: Option<f64>,
    #[arg(long)]
    gamma2: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
    /// Also write the reports as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

/// Grid and truncation defaults, overridable by `--config`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    pub radii: usize,
    pub angles: usize,
    pub r_max: f64,
    pub order: usize,
    pub samples: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            radii: 100,
            angles: 256,
            r_max: DEFAULT_R_MAX,
            order: DEFAULT_ORDER,
            samples: 256,
        }
    }
}

impl Settings {
    /// Reads `key = value` lines (a TOML subset); `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| format!("config: {}", e.message()))
    }

    fn grid(&self, r_max: Option<f64>) -> Result<SweepGrid, Error> {
        SweepGrid::uniform(self.radii, self.angles, r_max.unwrap_or(self.r_max))
    }
}

enum Failure {
    Usage(String),
    Certification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Resolves relative output paths against `$HARMCONV_OUT_DIR` when set.
fn output_path(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<PathBuf, Failure> {
    let path = output_path(path);
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)
            .map_err(|e| Failure::Usage(format!("{}: {e}", parent.display())))?;
    }
    fs::write(&path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(path)
}

fn load_map(source: &str, order: usize) -> Result<HarmonicMap, Failure> {
    if let Ok(named) = NamedMap::from_str(source) {
        return Ok(match named {
            NamedMap::F0 => canonical_f0(order),
            other => example_map(other, order),
        });
    }
    let text = fs::read_to_string(source).map_err(|e| {
        Failure::Usage(format!(
            "`{source}` is neither a named map nor a readable dump: {e}"
        ))
    })?;
    Ok(parse_dump(&text)?)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => {
            let written = write_file(p, text)?;
            let _ = writeln!(out, "wrote {}", written.display());
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    Ok(())
}

fn parse_coefficient(s: &str) -> Result<Complex64, Failure> {
    let bad = || {
        Failure::Usage(format!(
            "cannot parse coefficient `{s}` (expected `re` or `re,im`)"
        ))
    };
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (re, im),
        None => (s, "0"),
    };
    Ok(Complex64::new(
        re.trim().parse().map_err(|_| bad())?,
        im.trim().parse().map_err(|_| bad())?,
    ))
}

fn thetas(single: Option<f64>) -> Vec<f64> {
    match single {
        Some(t) => vec![t],
        None => (0..16).map(|j| TAU * j as f64 / 16.0).collect(),
    }
}

fn certify(args: &CertifyArgs, settings: &Settings, out: &mut dyn Write) -> Outcome {
    let grid = settings.grid(args.r_max)?;
    let mut reports: Vec<CertificationReport> = Vec::new();
    match (args.theorem, args.remark, args.region.as_deref()) {
        (Some(2), None, None) => {
            let n = args.n.unwrap_or(2);
            if !(1..=2).contains(&n) {
                return Err(Failure::Usage(format!(
                    "theorem 2 covers n = 1, 2; use --remark 1 for n = {n}"
                )));
            }
            for t in thetas(args.theta) {
                reports.push(certify_halfplane(&Dilatation::monomial(t, n)?, &grid)?);
            }
        }
        (Some(3), None, None) => {
            let family = args
                .a
                .map(|a| vec![a])
                .unwrap_or_else(|| vec![-0.99, -0.5, 0.0, 0.5, 0.99]);
            for a in family {
                reports.push(certify_halfplane(&Dilatation::mobius(a)?, &grid)?);
            }
        }
        (Some(5), None, None) => {
            let alpha = args.alpha.unwrap_or(FRAC_PI_2);
            let powers = args.n.map(|n| vec![n]).unwrap_or_else(|| vec![1, 2]);
            for n in powers {
                for t in thetas(args.theta) {
                    reports.push(certify_strip(&Dilatation::monomial(t, n)?, alpha, &grid)?);
                }
            }
        }
        (Some(6), None, None) => {
            let alpha = args.alpha.unwrap_or(FRAC_PI_2);
            let family = args
                .a
                .map(|a| vec![a])
                .unwrap_or_else(|| vec![0.0, 0.25, 0.5, 0.75, 0.99]);
            for a in family {
                reports.push(certify_strip(&Dilatation::mobius(a)?, alpha, &grid)?);
            }
        }
        (Some(1), None, None) => {
            let g1 = args.gamma1.unwrap_or(FRAC_PI_4);
            let g2 = args.gamma2.unwrap_or(FRAC_PI_4);
            let order = settings.order.max(2048);
            let zero = Dilatation::zero(order);
            let f1 = shear(TargetDomain::SlantedHalfPlane { gamma: g1 }, &zero, order)?;
            let f2 = shear(TargetDomain::SlantedHalfPlane { gamma: g2 }, &zero, order)?;
            // series evaluation needs room inside the radius of convergence
            let grid = settings.grid(Some(args.r_max.unwrap_or(0.98)))?;
            let pair = convolve(&f1, &f2);
            match convexity_in_direction(&pair, -(g1 + g2), &grid) {
                Ok(r) => reports.push(r),
                Err(Error::NotLocallyUnivalent {
                    max_modulus,
                    witness,
                }) => {
                    let _ = writeln!(
                        out,
                        "not locally univalent: max |w| = {max_modulus} at {witness}"
                    );
                    return Err(Failure::Certification);
                }
                Err(e) => return Err(e.into()),
            }
        }
        (None, Some(1), None) => {
            let n = args
                .n
                .ok_or_else(|| Failure::Usage("--remark 1 needs --n".into()))?;
            let (z0, modulus) = remark1_witness(n)?;
            let found = modulus > 1.0;
            let _ = writeln!(
                out,
                "remark 1, n = {n}: |w~({:.6})| = {modulus:.6} -> {}",
                z0.re,
                if found {
                    "witness found (not locally univalent)"
                } else {
                    "no witness"
                }
            );
            return if found {
                Ok(())
            } else {
                Err(Failure::Certification)
            };
        }
        (None, None, Some(name)) => {
            let which = NamedMap::from_str(name)?;
            match region_membership(which, &grid) {
                Ok(r) => reports.push(r),
                Err(Error::RegionViolation { point, image }) => {
                    let _ = writeln!(
                        out,
                        "{which}: image {image} of {point} violates the claimed region"
                    );
                    return Err(Failure::Certification);
                }
                Err(e) => return Err(e.into()),
            }
        }
        (Some(t), None, None) => {
            return Err(Failure::Usage(format!("no certification for theorem {t}")))
        }
        (None, Some(r), None) => {
            return Err(Failure::Usage(format!("no certification for remark {r}")))
        }
        _ => {
            return Err(Failure::Usage(
                "certify needs one of --theorem, --remark, --region".into(),
            ))
        }
    }
    for r in &reports {
        let _ = writeln!(out, "{r}");
    }
    if let Some(path) = &args.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Failure::Usage(format!("csv: {e}"));
        w.write_record(CertificationReport::CSV_HEADER)
            .map_err(csv_err)?;
        for r in &reports {
            w.write_record(r.csv_record()).map_err(csv_err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Failure::Usage(format!("csv: {e}")))?;
        let written = write_file(path, &String::from_utf8_lossy(&bytes))?;
        let _ = writeln!(out, "wrote {}", written.display());
    }
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Certification)
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Outcome {
    let settings = match &cli.config {
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Settings::parse(&text).map_err(Failure::Usage)?
        }
        None => Settings::default(),
    };
    match cli.command {
        Command::Shear {
            target,
            dilatation,
            order,
            output,
        } => {
            let t = TargetDomain::from_str(&target)?;
            let w = Dilatation::from_str(&dilatation)?;
            let map = shear(t, &w, order.unwrap_or(settings.order))?;
            emit(out, output.as_deref(), &write_dump(&map))
        }
        Command::Convolve {
            first,
            second,
            order,
            output,
        } => {
            let order = order.unwrap_or(settings.order);
            let a = load_map(&first, order)?;
            let b = load_map(&second, order)?;
            let map = if first == "f0" {
                convolve_f0(&b)
            } else if second == "f0" {
                convolve_f0(&a)
            } else {
                convolve(&a, &b)
            };
            emit(out, output.as_deref(), &write_dump(&map))
        }
        Command::Certify(args) => certify(&args, &settings, out),
        Command::Zeros { coefficients } => {
            let coeffs = coefficients
                .iter()
                .map(|s| parse_coefficient(s))
                .collect::<Result<Vec<_>, _>>()?;
            let f = ComplexPolynomial::trimmed(coeffs)?;
            let count = count_zeros_in_disk(&f)?;
            let method = match count.method {
                CountMethod::CohnChain => "cohn-chain",
                CountMethod::Oracle => "oracle",
            };
            let _ = writeln!(out, "degree {}", f.degree());
            let _ = writeln!(
                out,
                "zeros inside |z| < 1: {} (method {method})",
                count.inside
            );
            match schur_cohn(&f) {
                Ok(sc) => {
                    for (nu, m) in sc.determinants.iter().enumerate() {
                        let _ = writeln!(out, "M_{} = {m:.16e}", nu + 1);
                    }
                    let _ = writeln!(out, "all zeros inside: {}", sc.all_inside);
                }
                Err(e) => {
                    let _ = writeln!(out, "Schur-Cohn determinants unavailable: {e}");
                }
            }
            Ok(())
        }
        Command::Render {
            map,
            radii,
            rays,
            samples,
            viewport,
            output,
        } => {
            let mut spec = RenderSpec::new(load_map(&map, settings.order)?);
            if let Some(r) = radii {
                spec.radii = r;
            }
            spec.rays = rays;
            spec.samples = samples.unwrap_or(settings.samples);
            spec.viewport = match viewport.as_deref() {
                None => None,
                Some(&[x_min, x_max, y_min, y_max]) => Some(Viewport {
                    x_min,
                    x_max,
                    y_min,
                    y_max,
                }),
                Some(_) => return Err(Failure::Usage("--viewport needs four numbers".into())),
            };
            let svg = render_map(&spec)?;
            let written = write_file(&output, &svg)?;
            let _ = writeln!(out, "wrote {}", written.display());
            Ok(())
        }
        Command::Examples { dir, order } => {
            let order = order.unwrap_or(settings.order);
            for which in [NamedMap::Conv1, NamedMap::Conv2, NamedMap::Conv3] {
                let path = dir.join(format!("{}.txt", which.name()));
                let written = write_file(&path, &write_dump(&example_map(which, order)))?;
                let _ = writeln!(out, "wrote {}", written.display());
            }
            Ok(())
        }
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => EXIT_PASS,
        Err(Failure::Certification) => EXIT_FAIL,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
