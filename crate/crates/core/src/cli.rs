//! Command-line front end. [`run`] does all the work and returns the text
//! it would print, so the binary stays a one-liner and tests can call it
//! directly.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{bayer_stillman_experiment, bounds_report};
use crate::error::{Error, Result};
use crate::groebner::{saturate_irrelevant, Ideal};
use crate::hrao::{hartshorne_rao, PairMode};
use crate::invariants::{a_invariant_top, betti_table, ceiling, hilbert_data};
use crate::io::{format_ideal, ideal_strings, json_report, IdealFile};
use crate::poly::{MonomialOrder, Polynomial};
use crate::topdim::top_dimensional_part;

#[derive(Parser, Debug)]
#[command(name = "cmreg", version, about = "Regularity and related invariants of homogeneous ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print a JSON record instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Override the seed from the ideal file.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Random trials (bounds, bs-experiment) and retry budget (topdim, hrao).
    #[arg(long, global = true, default_value_t = 5)]
    pub trials: usize,
    /// Override the monomial order from the ideal file.
    #[arg(long, global = true)]
    pub order: Option<String>,
    /// Ceiling for Betti scans, in ideal convention. Values below the
    /// certified bound mark results as truncated.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub ceiling_override: Option<i64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Gröbner basis and initial ideal.
    Gb { file: PathBuf },
    /// Hilbert function, series and polynomial of A/I.
    Hilbert { file: PathBuf },
    /// Castelnuovo-Mumford regularity.
    Reg { file: PathBuf },
    /// Graded Betti table of I.
    Betti { file: PathBuf },
    /// Codimension and dimension.
    Codim { file: PathBuf },
    /// Saturation with respect to the irrelevant ideal, as an ideal file.
    Saturate { file: PathBuf },
    /// Top-dimensional part of the scheme of I.
    Topdim { file: PathBuf },
    /// Hartshorne-Rao module of a saturated ideal.
    Hrao {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Linear)]
        mode: Mode,
    },
    /// Every regularity bound, evaluated.
    Bounds { file: PathBuf },
    /// reg(I) against reg(in(I)) in random coordinates.
    BsExperiment { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Linear,
    Jacobian,
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parse arguments (including the program name) and run.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { stdout: text, ..Default::default() }
            } else {
                Outcome { stderr: text, code, ..Default::default() }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok((stdout, code)) => Outcome {
            stdout,
            stderr: String::new(),
            code,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}

fn load(cli: &Cli, path: &PathBuf) -> Result<Ideal> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut file = IdealFile::parse(&text)?;
    if let Some(seed) = cli.seed {
        file.seed = seed;
    }
    if let Some(order) = &cli.order {
        file.order = order.parse::<MonomialOrder>()?;
    }
    file.ideal()
}

fn emit<T: Serialize>(cli: &Cli, command: &str, value: &T, text: String) -> String {
    if cli.json {
        let mut s = json_report(command, value);
        s.push('\n');
        s
    } else {
        text
    }
}

fn fmt_dims(d: &BTreeMap<i64, u64>) -> String {
    if d.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = d.iter().map(|(k, v)| format!("{k} ↦ {v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn fmt_opt(v: Option<i64>) -> String {
    v.map_or("-∞".into(), |v| v.to_string())
}

#[derive(Serialize)]
struct GbRecord {
    order: String,
    elements: Vec<String>,
    initial_ideal: Vec<String>,
}

#[derive(Serialize)]
struct RegRecord {
    reg_ideal: Option<i64>,
    reg_quotient: i64,
    ceiling: i64,
    truncated: bool,
}

#[derive(Serialize)]
struct CodimRecord {
    codim: usize,
    krull_dim: usize,
    dim_proj: i64,
}

#[derive(Serialize)]
struct SaturateRecord {
    saturation: Vec<String>,
    was_saturated: bool,
}

#[derive(Serialize)]
struct TopDimRecord<'a> {
    #[serde(flatten)]
    result: &'a crate::topdim::TopDimResult,
    a_invariant: Option<i64>,
}

fn dispatch(cli: &Cli) -> Result<(String, i32)> {
    let names = |i: &Ideal| -> String { format!("({})", ideal_strings(i).join(", ")) };
    match &cli.command {
        Command::Gb { file } => {
            let i = load(cli, file)?;
            let gb = i.groebner();
            let rec = GbRecord {
                order: i.ring().order().to_string(),
                elements: gb.elements().iter().map(|g| g.to_string()).collect(),
                initial_ideal: gb
                    .leading_monomials()
                    .iter()
                    .map(|m| Polynomial::monomial(i.ring(), m.clone(), 1).to_string())
                    .collect(),
            };
            let mut text = format!("reduced Gröbner basis ({}), {} elements\n", rec.order, rec.elements.len());
            for e in &rec.elements {
                let _ = writeln!(text, "  {e}");
            }
            let _ = writeln!(text, "in(I) = ({})", rec.initial_ideal.join(", "));
            Ok((emit(cli, "gb", &rec, text), 0))
        }
        Command::Hilbert { file } => {
            let i = load(cli, file)?;
            let h = hilbert_data(&i)?;
            let values: Vec<String> = h.values.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            let text = format!(
                "H(μ): {}\nseries numerator: {:?}\nHilbert polynomial: {}\nscheme degree: {}\ndim Proj: {}\nreg(H) = {}\n",
                values.join(" "),
                h.series_numerator,
                h.polynomial_string(),
                h.scheme_degree,
                h.dim_proj,
                h.reg_h
            );
            Ok((emit(cli, "hilbert", &h, text), 0))
        }
        Command::Reg { file } => {
            let i = load(cli, file)?;
            let table = betti_table(&i, cli.ceiling_override)?;
            let reg_ideal = table.regularity()?;
            let certified = ceiling(&i)?;
            let rec = RegRecord {
                reg_ideal,
                reg_quotient: reg_ideal.map_or(0, |r| r - 1),
                ceiling: table.ceiling,
                truncated: table.truncated,
            };
            let text = format!(
                "reg(I) = {} (ideal convention); reg(A/I) = {}; ceiling used = {}\n",
                reg_ideal.map_or("undefined".into(), |r| r.to_string()),
                rec.reg_quotient,
                cli.ceiling_override.unwrap_or(certified.ideal)
            );
            Ok((emit(cli, "reg", &rec, text), 0))
        }
        Command::Betti { file } => {
            let i = load(cli, file)?;
            let t = betti_table(&i, cli.ceiling_override)?;
            let mut text = t.render();
            match t.regularity() {
                Ok(r) => {
                    let _ = writeln!(text, "reg(I) = {}", r.map_or("undefined".into(), |r| r.to_string()));
                }
                Err(_) => {
                    let _ = writeln!(text, "truncated at ceiling {}: regularity not certified", t.ceiling);
                }
            }
            Ok((emit(cli, "betti", &t, text), 0))
        }
        Command::Codim { file } => {
            let i = load(cli, file)?;
            let rec = CodimRecord {
                codim: i.codim()?,
                krull_dim: i.krull_dim(),
                dim_proj: i.dim_proj()?,
            };
            let text = format!(
                "codim(I) = {}; dim A/I = {}; dim Proj(A/I) = {}\n",
                rec.codim, rec.krull_dim, rec.dim_proj
            );
            Ok((emit(cli, "codim", &rec, text), 0))
        }
        Command::Saturate { file } => {
            let i = load(cli, file)?;
            let sat = saturate_irrelevant(&i);
            let rec = SaturateRecord {
                saturation: ideal_strings(&sat),
                was_saturated: sat == i,
            };
            Ok((emit(cli, "saturate", &rec, format_ideal(&sat)), 0))
        }
        Command::Topdim { file } => {
            let i = load(cli, file)?;
            let res = top_dimensional_part(&i, cli.trials)?;
            let a = a_invariant_top(&i)?;
            let seq = &res.sequence;
            let g: Vec<String> = seq.g.iter().map(|p| p.to_string()).collect();
            let mut text = format!(
                "codim r = {}; σ = {}\ng = ({})\n",
                seq.r,
                seq.sigma,
                g.join(", ")
            );
            match &res.h {
                Some(h) => {
                    let _ = writeln!(
                        text,
                        "h = {h} (degree {}); d_h = {}",
                        res.h_degree.unwrap(),
                        res.h_min_degree.unwrap()
                    );
                }
                None if res.via_linkage => {
                    text.push_str("no single h works; I_S = J : (J : I)\n")
                }
                None => text.push_str("complete intersection: I_S is the saturation\n"),
            }
            let _ = writeln!(text, "I_S = {}", names(&res.i_s));
            let _ = writeln!(text, "residual I : I_S = {}", names(&res.residual));
            let _ = writeln!(text, "a-invariant of A/I (oracle) = {}", fmt_opt(a));
            if let Some(b) = res.degree_bound {
                let _ = writeln!(
                    text,
                    "T-trick basis degree: observed {}, predicted {}",
                    b.observed, b.predicted
                );
            }
            let rec = TopDimRecord {
                result: &res,
                a_invariant: a,
            };
            Ok((emit(cli, "topdim", &rec, text), 0))
        }
        Command::Hrao { file, mode } => {
            let i = load(cli, file)?;
            let mode = match mode {
                Mode::Linear => PairMode::Linear,
                Mode::Jacobian => PairMode::Jacobian,
            };
            let h = hartshorne_rao(&i, mode, cli.trials)?;
            let pair: Vec<String> = h.pair.iter().map(|p| p.to_string()).collect();
            let text = format!(
                "pair: {}\nH^1 (Koszul): {}\nH^1 (Ext duality): {}\nlast nonzero degree: {}\nagreement: {}\n",
                pair.join(", "),
                fmt_dims(&h.module.dims),
                fmt_dims(&h.oracle.dims),
                fmt_opt(h.last_nonzero_degree),
                if h.oracle_agreement { "yes" } else { "NO" }
            );
            let code = if h.oracle_agreement { 0 } else { 1 };
            Ok((emit(cli, "hrao", &h, text), code))
        }
        Command::Bounds { file } => {
            let i = load(cli, file)?;
            let reps = bounds_report(&i, cli.trials)?;
            let mut text = String::new();
            for r in &reps {
                let _ = writeln!(text, "{}", r.summary());
            }
            let failed = reps
                .iter()
                .any(|r| r.hypotheses_verified && r.holds == Some(false));
            Ok((emit(cli, "bounds", &reps, text), if failed { 1 } else { 0 }))
        }
        Command::BsExperiment { file } => {
            let i = load(cli, file)?;
            let e = bayer_stillman_experiment(&i, cli.trials)?;
            let mut text = format!(
                "reg(I) = {}; reg(in(I)) in given coordinates = {}\n",
                e.reg, e.reg_initial_given
            );
            for t in &e.trials {
                let _ = writeln!(
                    text,
                    "trial {}: reg(in) = {} (deg-rev-lex), {} (deg-lex)",
                    t.index,
                    t.reg_initial,
                    t.reg_initial_deglex.map_or("not computed".into(), |r| r.to_string())
                );
            }
            let _ = writeln!(
                text,
                "inequality in every trial: {}; equality attained: {}",
                e.inequality_always, e.equality_attained
            );
            let code = if e.inequality_always { 0 } else { 1 };
            Ok((emit(cli, "bs-experiment", &e, text), code))
        }
    }
}

