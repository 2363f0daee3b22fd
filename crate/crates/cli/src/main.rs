//! `polymod` — conformal modules and half-plane maps of the stretched
//! P-pentomino and L-tetromino.
//!
//! Exit codes: 0 success, 2 domain/usage error, 3 numerical error,
//! 4 I/O error, 5 cross-check failure.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polymod_core::{oracle, pentomino, scmap, shapes, tetromino, Error};

#[derive(Parser)]
#[command(name = "polymod", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Shape {
    Pent,
    Tet,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one pipeline and print the full parameter record.
    Solve {
        shape: Shape,
        #[arg(long = "H")]
        h: f64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Solve over a log-spaced range of stretch factors.
    Sweep {
        shape: Shape,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Trace the polygon boundary through the Schwarz-Christoffel map and
    /// write it as CSV.
    Boundary {
        shape: Shape,
        #[arg(long = "H")]
        h: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Compare the analytic module against the grid oracle.
    Check {
        shape: Shape,
        #[arg(long = "H")]
        h: f64,
        #[arg(long)]
        grid: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(match err {
                Error::Domain(_) | Error::Setup(_) => 2u8,
                Error::Bracket(_) | Error::Numerical(_) | Error::Inconsistent(_) => 3u8,
            })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Solve { shape, h, format } => {
            let record = solve_record(shape, h)?;
            print!("{}", render(&[record], format, false));
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            shape,
            from,
            to,
            count,
            format,
        } => {
            if !(from > 0.0 && from < to) || count < 2 {
                return Err(Error::Domain("need 0 < from < to and count >= 2".into()));
            }
            let mut records = Vec::with_capacity(count);
            let (lf, lt) = (from.ln(), to.ln());
            for i in 0..count {
                // keep the endpoints exact
                let h = if i == 0 {
                    from
                } else if i == count - 1 {
                    to
                } else {
                    (lf + (lt - lf) * i as f64 / (count - 1) as f64).exp()
                };
                records.push(solve_record(shape, h)?);
            }
            print!("{}", render(&records, format, true));
            Ok(ExitCode::SUCCESS)
        }
        Command::Boundary {
            shape,
            h,
            samples,
            out,
        } => {
            if samples < 2 {
                return Err(Error::Domain("need samples >= 2".into()));
            }
            let quad_tol = std::env::var("POLYMOD_QUAD_TOL")
                .ok()
                .and_then(|s| s.parse::<f64>().ok())
                .unwrap_or(1e-11);
            let (spec, trace) = match shape {
                Shape::Pent => {
                    let sol = pentomino::solve_pentomino(h)?;
                    let spec = scmap::build_sc_pent_with_tol(&sol, quad_tol)?;
                    let trace = spec.trace_boundary(samples)?;
                    (spec, trace)
                }
                Shape::Tet => {
                    let sol = tetromino::solve_tetromino(h)?;
                    let spec = scmap::build_sc_tet_with_tol(&sol, quad_tol)?;
                    let trace = spec.trace_boundary(samples)?;
                    (spec, trace)
                }
            };
            let mut body = String::new();
            let _ = writeln!(
                body,
                "# polymod boundary {} H={}",
                shape_name(shape),
                fmt(h)
            );
            let _ = writeln!(body, "# prevertex -> vertex correspondence:");
            for p in &spec.prevertices {
                let loc = match p.location {
                    scmap::PrevertexLocation::Finite(x) => fmt(x),
                    scmap::PrevertexLocation::Infinity => "inf".to_string(),
                };
                let _ = writeln!(
                    body,
                    "#   {} -> ({}, {})",
                    loc,
                    fmt(p.target_vertex.re),
                    fmt(p.target_vertex.im)
                );
            }
            let _ = writeln!(body, "x,y");
            for p in &trace {
                let _ = writeln!(body, "{},{}", fmt(p.re), fmt(p.im));
            }
            if let Err(e) = std::fs::write(&out, body) {
                eprintln!("cannot write {}: {e}", out.display());
                return Ok(ExitCode::from(4));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { shape, h, grid } => {
            if grid < 16 {
                return Err(Error::Domain(format!("grid {grid} too coarse, need >= 16")));
            }
            let (analytic, quad) = match shape {
                Shape::Pent => (
                    pentomino::solve_pentomino(h)?.module,
                    shapes::pentomino_quadrilateral(h),
                ),
                Shape::Tet => (
                    tetromino::solve_tetromino(h)?.module,
                    shapes::tetromino_quadrilateral(h),
                ),
            };
            let rich = oracle::richardson(&quad, &[grid / 2, grid])?;
            let gap = (analytic - rich.value).abs();
            println!("analytic module: {}", fmt(analytic));
            println!(
                "oracle module:   {} +/- {} (order {:.2}{})",
                fmt(rich.value),
                fmt(rich.error_estimate),
                rich.order,
                if rich.warning {
                    ", warning: non-monotone"
                } else {
                    ""
                }
            );
            println!("absolute gap:    {}", fmt(gap));
            println!("relative gap:    {}", fmt(gap / analytic));
            let _ = std::io::stdout().flush();
            if check_passes(gap, rich.error_estimate) {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("cross-check failed: gap exceeds 3x the oracle error bar");
                Ok(ExitCode::from(5))
            }
        }
    }
}

/// Cross-check verdict: the analytic and oracle modules must agree within
/// three oracle error bars.
fn check_passes(gap: f64, error_bar: f64) -> bool {
    gap <= 3.0 * error_bar.max(f64::EPSILON)
}

struct Record {
    shape: &'static str,
    h: f64,
    module: f64,
    asymptote: f64,
    fields: Vec<(&'static str, f64)>,
    diag: Vec<(&'static str, f64)>,
}

fn shape_name(shape: Shape) -> &'static str {
    match shape {
        Shape::Pent => "pentomino",
        Shape::Tet => "tetromino",
    }
}

fn solve_record(shape: Shape, h: f64) -> Result<Record, Error> {
    match shape {
        Shape::Pent => {
            let s = pentomino::solve_pentomino(h)?;
            let d = s.diagnostics();
            Ok(Record {
                shape: "pentomino",
                h,
                module: s.module,
                asymptote: h / 2.0,
                fields: vec![
                    ("lambda", s.lambda.k()),
                    ("a", s.a),
                    ("alpha0", s.alpha0),
                    ("c2", s.c2),
                    ("alpha1", s.alpha1),
                    ("alpha2", s.alpha2),
                    ("alpha3", s.alpha3),
                    ("beta1", s.beta1),
                    ("beta2", s.beta2),
                    ("beta3", s.beta3),
                    ("mu", s.mu.k()),
                    ("module", s.module),
                ],
                diag: vec![
                    ("residual_alpha0", d.residual_alpha0),
                    ("h_gap_alpha1", d.h_gap_alpha1),
                    ("h_gap_alpha2", d.h_gap_alpha2),
                    ("h_gap_alpha3", d.h_gap_alpha3),
                    ("mu_consistency", d.mu_consistency),
                    ("lambda_prime", s.lambda.complement()),
                    ("mu_prime", s.mu.complement()),
                ],
            })
        }
        Shape::Tet => {
            let s = tetromino::solve_tetromino(h)?;
            let d = s.diagnostics();
            Ok(Record {
                shape: "tetromino",
                h,
                module: s.module,
                asymptote: h,
                fields: vec![
                    ("lambda", s.lambda.k()),
                    ("alpha0", s.alpha0),
                    ("c", s.alpha2),
                    ("alpha1", s.alpha1),
                    ("alpha2", s.alpha2),
                    ("alpha3", s.alpha3),
                    ("beta1", s.beta1),
                    ("beta2", s.beta2),
                    ("beta3", s.beta3),
                    ("A", s.a_cross),
                    ("mu", s.mu.k()),
                    ("module", s.module),
                ],
                diag: vec![
                    ("residual_alpha0", d.residual_alpha0),
                    ("h_gap_alpha1", d.h_gap_alpha1),
                    ("h_gap_alpha3", d.h_gap_alpha3),
                    ("mu_consistency", d.mu_consistency),
                    ("lambda_prime", s.lambda.complement()),
                    ("mu_prime", s.mu.complement()),
                ],
            })
        }
    }
}

/// 17 significant digits: enough to round-trip any IEEE double.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn render(records: &[Record], format: Format, sweep: bool) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            if sweep {
                out.push_str("[\n");
            }
            for (i, r) in records.iter().enumerate() {
                out.push('{');
                let _ = write!(out, "\"shape\":\"{}\",\"H\":{}", r.shape, fmt(r.h));
                for (k, v) in &r.fields {
                    let _ = write!(out, ",\"{k}\":{}", fmt(*v));
                }
                if sweep {
                    let _ = write!(
                        out,
                        ",\"module_minus_asymptote\":{}",
                        fmt(r.module - r.asymptote)
                    );
                }
                out.push_str(",\"diag\":{");
                for (j, (k, v)) in r.diag.iter().enumerate() {
                    if j > 0 {
                        out.push(',');
                    }
                    let _ = write!(out, "\"{k}\":{}", fmt(*v));
                }
                out.push_str("}}");
                if sweep {
                    if i + 1 < records.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
            }
            if sweep {
                out.push_str("]\n");
            } else {
                out.push('\n');
            }
        }
        Format::Csv => {
            out.push_str("shape,H");
            for (k, _) in &records[0].fields {
                let _ = write!(out, ",{k}");
            }
            if sweep {
                out.push_str(",module_minus_asymptote");
            }
            for (k, _) in &records[0].diag {
                let _ = write!(out, ",diag_{k}");
            }
            out.push('\n');
            for r in records {
                let _ = write!(out, "{},{}", r.shape, fmt(r.h));
                for (_, v) in &r.fields {
                    let _ = write!(out, ",{}", fmt(*v));
                }
                if sweep {
                    let _ = write!(out, ",{}", fmt(r.module - r.asymptote));
                }
                for (_, v) in &r.diag {
                    let _ = write!(out, ",{}", fmt(*v));
                }
                out.push('\n');
            }
        }
        Format::Table => {
            for r in records {
                let _ = writeln!(out, "shape   {}", r.shape);
                let _ = writeln!(out, "H       {}", fmt(r.h));
                for (k, v) in &r.fields {
                    let _ = writeln!(out, "{k:<7} {}", fmt(*v));
                }
                if sweep {
                    let _ = writeln!(
                        out,
                        "module_minus_asymptote {}",
                        fmt(r.module - r.asymptote)
                    );
                }
                for (k, v) in &r.diag {
                    let _ = writeln!(out, "diag.{k} {}", fmt(*v));
                }
                out.push('\n');
            }
        }
    }
    out
}
