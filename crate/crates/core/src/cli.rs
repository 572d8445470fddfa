//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 when the root finder does
//! not converge.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::coamoeba::{
    line2_membership_tol, sample_plane_curve, write_csv, write_ply, CurveScheme, LineT2,
    PointCloud, TorusPoint,
};
use crate::error::{Error, Result};
use crate::laurent::{parse, LaurentPolynomial, WeightVector};
use crate::lines3d::{
    coamoeba_segments, contour_image, differential_rank, lines_intersect, phase_limit_lines,
    sample_membrane, HalfPlane, LineInP3, MembraneOptions, RootP1,
};
use crate::phase_limit::{
    degenerate, phase_limit_summary, predicted_limit, windowed_distance, DEFAULT_WINDOW,
};
use crate::polytope::{newton_polytope, normal_fan};

#[derive(Parser, Debug)]
#[command(
    name = "coamoeba",
    version,
    about = "Coamoebae and phase limit sets of subvarieties of complex tori"
)]
struct Cli {
    /// Print angles in degrees instead of radians.
    #[arg(long, global = true)]
    degrees: bool,
    /// Seed for stochastic sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write point clouds here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Ply,
    JsonReport,
}

#[derive(Args, Debug)]
struct PolyArgs {
    /// Laurent polynomial, e.g. "x + y + 1".
    #[arg(long)]
    poly: String,
    /// Comma-separated variable names.
    #[arg(long, default_value = "x,y", value_delimiter = ',')]
    vars: Vec<String>,
}

impl PolyArgs {
    fn polynomial(&self) -> Result<LaurentPolynomial> {
        parse(&self.poly, &self.vars)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample the coamoeba of a plane curve.
    SampleCurve {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, default_value_t = 100_000)]
        points: usize,
    },
    /// Classify a point against the coamoeba of the line a x + b y + c = 0.
    Membership {
        /// Coefficients a,b,c as complex literals.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        line: Vec<String>,
        /// Angles alpha,beta in radians.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1..)]
        point: Vec<f64>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Initial form of a polynomial for a weight vector.
    Initial {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weight: Vec<i64>,
    },
    /// Normal fan of the Newton polytope, as JSON.
    Fan {
        #[command(flatten)]
        poly: PolyArgs,
    },
    /// Cones of the logarithmic limit set with initial forms and codual families.
    Limits {
        #[command(flatten)]
        poly: PolyArgs,
    },
    /// Sample fibers of the toric degeneration along a weight.
    Degenerate {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weight: Vec<i64>,
        /// Decreasing positive parameters.
        #[arg(long = "t", value_delimiter = ',', default_value = "0.1,0.01,0.001")]
        ts: Vec<f64>,
        #[arg(long, default_value_t = 100_000)]
        points: usize,
    },
    /// Lines in P^3 given by four roots.
    #[command(subcommand)]
    Line3(Line3Command),
}

#[derive(Args, Debug)]
struct LineArgs {
    /// Four roots: complex literals or `inf`.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "forms"
    )]
    roots: Vec<String>,
    /// Eight complex literals a0,b0,...,a3,b3 for the forms a_i s + b_i t.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    forms: Vec<String>,
}

impl LineArgs {
    fn line(&self) -> Result<LineInP3> {
        match (self.roots.is_empty(), self.forms.is_empty()) {
            (false, true) => {
                let roots: Vec<RootP1> = self
                    .roots
                    .iter()
                    .map(|s| parse_root(s))
                    .collect::<Result<_>>()?;
                let roots: [RootP1; 4] = roots.try_into().map_err(|v: Vec<RootP1>| {
                    Error::InvalidArgument(format!("expected 4 roots, got {}", v.len()))
                })?;
                LineInP3::from_roots(roots)
            }
            (true, false) => {
                let c: Vec<Complex64> = self
                    .forms
                    .iter()
                    .map(|s| parse_complex(s))
                    .collect::<Result<_>>()?;
                if c.len() != 8 {
                    return Err(Error::InvalidArgument(format!(
                        "expected 8 form coefficients, got {}",
                        c.len()
                    )));
                }
                LineInP3::from_linear_forms([
                    [c[0], c[1]],
                    [c[2], c[3]],
                    [c[4], c[5]],
                    [c[6], c[7]],
                ])
            }
            _ => Err(Error::InvalidArgument(
                "give exactly one of --roots and --forms".into(),
            )),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Line3Command {
    /// Sample the membrane arg(phi(C)).
    Sample {
        #[command(flatten)]
        line: LineArgs,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = HalfPlaneArg::Both)]
        half_plane: HalfPlaneArg,
        /// Jitter grid nodes using --seed.
        #[arg(long)]
        jitter: bool,
    },
    /// Generic, real line, or three distinct roots.
    Classify {
        #[command(flatten)]
        line: LineArgs,
    },
    /// Phase limit lines and their intersecting pairs.
    Limits {
        #[command(flatten)]
        line: LineArgs,
    },
    /// The twelve segments of a generic line.
    Segments {
        #[command(flatten)]
        line: LineArgs,
    },
    /// Image of the contour around the roots of a real line.
    Contour {
        #[command(flatten)]
        line: LineArgs,
        #[arg(long, default_value_t = 1e-3)]
        epsilon: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Rank of the differential of arg . phi at a parameter.
    Rank {
        #[command(flatten)]
        line: LineArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum HalfPlaneArg {
    Upper,
    Lower,
    Both,
}

impl From<HalfPlaneArg> for HalfPlane {
    fn from(h: HalfPlaneArg) -> Self {
        match h {
            HalfPlaneArg::Upper => HalfPlane::Upper,
            HalfPlaneArg::Lower => HalfPlane::Lower,
            HalfPlaneArg::Both => HalfPlane::Both,
        }
    }
}

/// Parses `a+bi`, `a`, `bi`, `-i` and similar; `inf` is rejected here.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidArgument(format!("malformed complex literal '{s}'"));
    let num = |x: &str| -> Result<f64> {
        let v: f64 = x.parse().map_err(|_| bad())?;
        if v.is_finite()
            && !x.to_ascii_lowercase().contains("inf")
            && !x.to_ascii_lowercase().contains("nan")
        {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(num(&t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (num(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => num(x)?,
    };
    Ok(Complex64::new(re, im))
}

/// A complex literal or `inf`.
pub fn parse_root(s: &str) -> Result<RootP1> {
    if s.trim().eq_ignore_ascii_case("inf") {
        Ok(RootP1::Infinity)
    } else {
        parse_complex(s).map(RootP1::Finite)
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        2
    } else {
        1
    }
}

/// `run(argv)`: parses the arguments (including the program name) and
/// executes one subcommand, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    if let Some(n) = std::env::var("COAMOEBA_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // only the first configuration of the global pool takes effect
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let result = execute(&cli, out);
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn weight(entries: &[i64], f: &LaurentPolynomial) -> Result<WeightVector> {
    if entries.len() != f.rank() {
        return Err(Error::RankMismatch {
            expected: f.rank(),
            found: entries.len(),
        });
    }
    Ok(WeightVector::new(entries.to_vec()))
}

fn angle(cli: &Cli, a: f64) -> f64 {
    if cli.degrees {
        a.to_degrees()
    } else {
        a
    }
}

fn angles(cli: &Cli, a: &[f64]) -> Vec<f64> {
    a.iter().map(|&x| angle(cli, x)).collect()
}

fn open_output(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit_cloud_to(
    cli: &Cli,
    cloud: &PointCloud,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<()> {
    let mut file;
    let sink: &mut dyn Write = match path {
        Some(p) => {
            file = open_output(p)?;
            &mut file
        }
        None => out,
    };
    match cli.format {
        Format::Csv => write_csv(cloud, sink, cli.degrees),
        Format::Ply => write_ply(cloud, sink, cli.degrees),
        Format::JsonReport => {
            let report = json!({
                "rank": cloud.rank(),
                "points": cloud.len(),
                "provenance": cloud.provenance(),
            });
            writeln!(
                sink,
                "{}",
                serde_json::to_string_pretty(&report).expect("json")
            )?;
            Ok(())
        }
    }
}

fn emit_cloud(cli: &Cli, cloud: &PointCloud, out: &mut dyn Write) -> Result<()> {
    emit_cloud_to(cli, cloud, cli.output.as_deref(), out)
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("json")
    )?;
    Ok(())
}

/// `fibers.csv` becomes `fibers.t0.csv`, `fibers.t1.csv`, ...
fn indexed_path(path: &Path, k: usize) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.t{k}.{}", ext.to_string_lossy()),
        None => format!("{stem}.t{k}"),
    };
    path.with_file_name(name)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::SampleCurve { poly, points } => {
            let f = poly.polynomial()?;
            let sample = sample_plane_curve(&f, &CurveScheme::with_budget(*points))?;
            emit_cloud(cli, &sample.cloud, out)
        }
        Command::Membership { line, point, tol } => {
            let c: Vec<Complex64> = line
                .iter()
                .map(|s| parse_complex(s))
                .collect::<Result<_>>()?;
            if c.len() != 3 {
                return Err(Error::InvalidArgument(format!(
                    "--line needs 3 coefficients, got {}",
                    c.len()
                )));
            }
            if point.len() != 2 {
                return Err(Error::InvalidArgument(format!(
                    "--point needs 2 angles, got {}",
                    point.len()
                )));
            }
            let l = LineT2::new(c[0], c[1], c[2])?;
            let m = line2_membership_tol(&l, &TorusPoint::new(point.clone()), *tol)?;
            if cli.format == Format::JsonReport {
                emit_json(out, &json!({ "membership": m }))
            } else {
                writeln!(out, "{m}")?;
                Ok(())
            }
        }
        Command::Initial { poly, weight: w } => {
            let f = poly.polynomial()?;
            let g = f.initial_form(&weight(w, &f)?)?;
            writeln!(out, "{}", g.to_text(&poly.vars))?;
            Ok(())
        }
        Command::Fan { poly } => {
            let f = poly.polynomial()?;
            let fan = normal_fan(&newton_polytope(&f)?)?;
            emit_json(out, &fan.to_json())
        }
        Command::Limits { poly } => {
            let report = phase_limit_summary(&poly.polynomial()?)?;
            if cli.format == Format::JsonReport {
                emit_json(out, &report.to_json())
            } else {
                write!(out, "{}", report.to_text())?;
                Ok(())
            }
        }
        Command::Degenerate {
            poly,
            weight: w,
            ts,
            points,
        } => {
            let f = poly.polynomial()?;
            let w = weight(w, &f)?;
            let predicted = predicted_limit(&f, &w)?;
            let fibers = degenerate(&f, &w, ts, &CurveScheme::with_budget(*points))?;
            let mut rows = Vec::new();
            for (k, fiber) in fibers.iter().enumerate() {
                let d = windowed_distance(fiber, &predicted, DEFAULT_WINDOW);
                rows.push(json!({ "t": fiber.t, "points": fiber.sample.cloud.len(), "windowed_distance": d }));
                if let Some(path) = &cli.output {
                    emit_cloud_to(cli, &fiber.sample.cloud, Some(&indexed_path(path, k)), out)?;
                }
            }
            let limit: Vec<String> = predicted.iter().map(|h| h.to_text()).collect();
            if cli.format == Format::JsonReport || cli.output.is_some() {
                emit_json(
                    out,
                    &json!({ "initial_form": f.initial_form(&w)?.to_text(&poly.vars), "limit": limit, "fibers": rows }),
                )
            } else {
                writeln!(
                    out,
                    "initial form {}",
                    f.initial_form(&w)?.to_text(&poly.vars)
                )?;
                for h in &limit {
                    writeln!(out, "limit {h}")?;
                }
                for fiber in &fibers {
                    let d = windowed_distance(fiber, &predicted, DEFAULT_WINDOW);
                    let d = d.map_or("none".to_string(), |d| format!("{d:.6e}"));
                    writeln!(
                        out,
                        "t={} points={} windowed_distance={d}",
                        fiber.t,
                        fiber.sample.cloud.len()
                    )?;
                }
                Ok(())
            }
        }
        Command::Line3(cmd) => line3(cli, cmd, out),
    }
}

fn line3(cli: &Cli, cmd: &Line3Command, out: &mut dyn Write) -> Result<()> {
    let report = cli.format == Format::JsonReport;
    match cmd {
        Line3Command::Sample {
            line,
            samples,
            half_plane,
            jitter,
        } => {
            let l = line.line()?;
            let mut options = MembraneOptions::new(*samples, (*half_plane).into());
            if *jitter {
                options.jitter_seed = Some(cli.seed);
            }
            emit_cloud(cli, &sample_membrane(&l, &options)?, out)
        }
        Line3Command::Classify { line } => {
            let c = line.line()?.classify();
            if report {
                return emit_json(out, &serde_json::to_value(c).expect("json"));
            }
            writeln!(out, "{}", c.kind)?;
            Ok(())
        }
        Line3Command::Limits { line } => {
            let l = line.line()?;
            let h = phase_limit_lines(&l)?;
            let pairs = lines_intersect(&h);
            if report {
                return emit_json(out, &json!({ "lines": h, "intersecting_pairs": pairs }));
            }
            for (k, hk) in h.iter().enumerate() {
                writeln!(
                    out,
                    "h{k} free={} fixed={:?}",
                    hk.free_index,
                    angles(cli, &hk.fixed_angles)
                )?;
            }
            let pairs: Vec<String> = pairs.iter().map(|(a, b)| format!("(h{a},h{b})")).collect();
            writeln!(
                out,
                "intersecting {}",
                if pairs.is_empty() {
                    "none".into()
                } else {
                    pairs.join(" ")
                }
            )?;
            Ok(())
        }
        Line3Command::Segments { line } => {
            let segs = coamoeba_segments(&line.line()?)?;
            if report {
                return emit_json(out, &serde_json::to_value(&segs).expect("json"));
            }
            for s in &segs {
                writeln!(
                    out,
                    "direction={} fixed={:?} interval=({}, {}) circle={} arc={}->{}",
                    s.direction_index,
                    angles(cli, &s.fixed_angles),
                    angle(cli, s.interval.0),
                    angle(cli, s.interval.1),
                    s.source.circle,
                    s.source.from,
                    s.source.to
                )?;
            }
            Ok(())
        }
        Line3Command::Contour {
            line,
            epsilon,
            points,
        } => {
            let img = contour_image(&line.line()?, *epsilon, *points)?;
            emit_cloud(cli, &img.cloud, out)
        }
        Line3Command::Rank { line, x } => {
            let r = differential_rank(&line.line()?, parse_complex(x)?)?;
            writeln!(out, "{r}")?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1").unwrap(), c(1.0, 0.0));
        assert_eq!(parse_complex("-0.5").unwrap(), c(-0.5, 0.0));
        assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1-2i").unwrap(), c(1.0, -2.0));
        assert_eq!(parse_complex("1e-3+2.5e+1i").unwrap(), c(1e-3, 25.0));
        assert_eq!(parse_complex(" 3 + i ").unwrap(), c(3.0, 1.0));
        for bad in ["", "inf", "nan", "1+", "x", "1+2k", "1e400"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
        assert_eq!(parse_root("inf").unwrap(), RootP1::Infinity);
    }

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("coamoeba").chain(args.iter().copied()),
            &mut o,
            &mut e,
        );
        (
            code,
            String::from_utf8(o).unwrap(),
            String::from_utf8(e).unwrap(),
        )
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            run_str(&["membership", "--line", "1,1,1", "--point", "3.1415926,0"]).0,
            0
        );
        assert_eq!(
            run_str(&["membership", "--line", "1,1,x", "--point", "0,0"]).0,
            1
        );
        assert_eq!(run_str(&["--bogus"]).0, 1);
        assert_eq!(run_str(&["--help"]).0, 0);
        assert_eq!(
            run_str(&["fan", "--poly", "x*y*z*w", "--vars", "x,y,z,w"]).0,
            1
        );
    }
}
