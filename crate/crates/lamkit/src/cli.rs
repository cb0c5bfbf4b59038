//! The `lamkit` command line.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_rational::BigRational;

use crate::chords::Chord;
use crate::circle::Angle;
use crate::dyncore::periodic_rotational_classes;
use crate::error::{LamError, Result};
use crate::lamination::{
    canonical_diameter, canonical_of_quadratic_gap, canonical_of_rotational, check_invariance, classify_smp, clean,
    project_through_gap, quadratic_canonical, Lamination,
};
use crate::lamsets::{enumerate_rotational, LamSet};
use crate::quadgap::{build_gap, classify_critical, vassal};
use crate::render::{render_lamination, RenderSpec};

fn parse_chord(s: &str) -> std::result::Result<Chord, String> {
    s.parse::<Chord>().map_err(|e| e.to_string())
}

fn parse_rho(s: &str) -> std::result::Result<BigRational, String> {
    let bad = || format!("cannot parse rotation number from `{s}`");
    let (p, q) = s.split_once('/').ok_or_else(bad)?;
    let p: i64 = p.trim().parse().map_err(|_| bad())?;
    let q: i64 = q.trim().parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(BigRational::new(p.into(), q.into()))
}

/// A comma-separated angle list taken as one argument.
type AngleList = Vec<Angle>;

fn parse_set(s: &str) -> std::result::Result<AngleList, String> {
    s.split(',').map(|t| t.trim().parse().map_err(|e: LamError| e.to_string())).collect()
}

#[derive(Parser, Debug)]
#[command(name = "lamkit", version, about = "Exact tools for invariant laminations of the circle")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a critical chord of sigma_3.
    ClassifyCriticalLeaf {
        #[arg(value_parser = parse_chord)]
        chord: Chord,
    },
    /// Build the invariant gap U(c) of a critical chord.
    BuildGap {
        #[arg(value_parser = parse_chord)]
        chord: Chord,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Build the vassal gap of the periodic-type gap U(c).
    Vassal {
        #[arg(value_parser = parse_chord)]
        chord: Chord,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Build a canonical lamination and write it to a file.
    BuildCanonical {
        #[command(subcommand)]
        recipe: Recipe,
    },
    /// List rotational sets with a given rotation number.
    FindRotational {
        #[arg(long)]
        d: u32,
        #[arg(long, value_parser = parse_rho)]
        rho: BigRational,
        #[arg(long, default_value_t = 1)]
        orbits: usize,
    },
    /// Check sibling invariance of a lamination file.
    CheckInvariance {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Remove isolated leaves until none remain.
    Clean {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide which SMP case a cubic lamination falls into.
    ClassifySmp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        period_bound: usize,
    },
    /// Report the periodic rotational classes.
    CoreReport {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        period_bound: usize,
    },
    /// Push a lamination through the gap U(c) to a sigma_2 lamination.
    Project {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = parse_chord)]
        chord: Chord,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a lamination file as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 800)]
        size: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum Recipe {
    /// Canonical lamination of U(c).
    QuadraticGap {
        #[arg(long, value_parser = parse_chord)]
        chord: Chord,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The lamination of the diameter 0-1/2.
    Diameter {
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical lamination of a rotational set of sigma_3.
    Rotational {
        #[arg(long, value_parser = parse_set)]
        set: AngleList,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical lamination of a rotational set of sigma_2.
    QuadraticD2 {
        #[arg(long, value_parser = parse_set)]
        set: AngleList,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn io_err(path: &std::path::Path, e: std::io::Error) -> LamError {
    LamError::Unsupported(format!("{}: {e}", path.display()))
}

fn read_lam(path: &std::path::Path) -> Result<Lamination> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    Lamination::from_text(&text)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<String> {
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| io_err(p, e))?;
            Ok(String::new())
        }
        None => Ok(text.to_string()),
    }
}

fn lam_summary(l: &Lamination) -> String {
    format!(
        "recipe={} d={} depth={} leaves={} gaps={} finite_gaps={}\n",
        l.recipe,
        l.d,
        l.depth,
        l.len(),
        l.gaps.len(),
        l.finite_gaps.len()
    )
}

/// Outcome of a command: text for stdout and whether it succeeded.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn done(text: String) -> Result<Outcome> {
    Ok(Outcome { text, ok: true })
}

pub fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::ClassifyCriticalLeaf { chord } => done(classify_critical(chord)?.to_text()),
        Command::BuildGap { chord, depth } => {
            let g = build_gap(chord, *depth)?;
            let vs: Vec<String> = g.vertices(*depth).iter().map(|v| v.to_string()).collect();
            let major_hole = crate::lamsets::fmt_rational(&g.arcs[0].length());
            done(format!("{g}\nmajor: {}\nmajor_hole: {major_hole}\nvertices: {}\n", g.major(), vs.join(",")))
        }
        Command::Vassal { chord, depth } => {
            let u = build_gap(chord, *depth)?;
            let v = vassal(&u, *depth)?;
            let vs: Vec<String> = v.gap.vertices(*depth).iter().map(|x| x.to_string()).collect();
            done(format!(
                "{}\nm2: {}\npieces: [{}, {}] [{}, {}]\nvertices: {}\n",
                v.gap,
                v.m2,
                v.pieces[0].start,
                v.pieces[0].end,
                v.pieces[1].start,
                v.pieces[1].end,
                vs.join(",")
            ))
        }
        Command::BuildCanonical { recipe } => {
            let (lam, out) = match recipe {
                Recipe::QuadraticGap { chord, depth, out } => {
                    (canonical_of_quadratic_gap(&build_gap(chord, *depth)?, *depth)?, out)
                }
                Recipe::Diameter { depth, out } => (canonical_diameter(*depth)?, out),
                Recipe::Rotational { set, depth, out } => {
                    (canonical_of_rotational(&LamSet::new(3, set.clone())?, *depth)?, out)
                }
                Recipe::QuadraticD2 { set, depth, out } => {
                    (quadratic_canonical(&LamSet::new(2, set.clone())?, *depth)?, out)
                }
            };
            let text = emit(out, &lam.to_text())?;
            done(if out.is_some() { lam_summary(&lam) } else { text })
        }
        Command::FindRotational { d, rho, orbits } => {
            if *d != 2 && *d != 3 {
                return Err(LamError::Unsupported(format!("degree {d}")));
            }
            let sets = enumerate_rotational(*d, rho, *orbits)?;
            let mut s = String::new();
            for g in sets {
                let rep = g.classify_rotational();
                s.push_str(&format!("{} type={}\n", g.to_text(), rep.type_tag));
            }
            done(s)
        }
        Command::CheckInvariance { input } => {
            let r = check_invariance(&read_lam(input)?);
            Ok(Outcome { ok: r.is_ok(), text: r.to_text() })
        }
        Command::Clean { input, out } => {
            let r = clean(&read_lam(input)?)?;
            if let Some(p) = out {
                fs::write(p, r.core.to_text()).map_err(|e| io_err(p, e))?;
            }
            done(r.to_text())
        }
        Command::ClassifySmp { input, period_bound } => {
            let v = classify_smp(&read_lam(input)?, *period_bound)?;
            done(format!("{}\n", v.summary()))
        }
        Command::CoreReport { input, period_bound } => {
            done(periodic_rotational_classes(&read_lam(input)?, *period_bound).to_text())
        }
        Command::Project { input, chord, out } => {
            let lam = read_lam(input)?;
            let u = build_gap(chord, lam.depth)?;
            let p = project_through_gap(&u, &lam)?;
            let text = emit(out, &p.to_text())?;
            done(if out.is_some() { lam_summary(&p) } else { text })
        }
        Command::Render { input, out, size } => {
            let lam = read_lam(input)?;
            let spec = RenderSpec { size: *size, ..RenderSpec::default() };
            fs::write(out, render_lamination(&lam, &spec)).map_err(|e| io_err(out, e))?;
            done(format!("wrote {}\n", out.display()))
        }
    }
}

/// Run the command line and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            print!("{}", o.text);
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e @ LamError::Parse { .. }) => {
            eprintln!("error: {e}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
