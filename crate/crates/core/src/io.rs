//! The line-oriented ideal file format and JSON report plumbing.
//!
//! ```text
//! # twisted cubic
//! char 32003
//! vars x y z w
//! order degrevlex
//! seed 0
//! gen y^2 - x*z
//! gen y*z - x*w
//! gen z^2 - y*w
//! ```

use std::path::Path;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::field::is_prime;
use crate::poly::{parse_polynomial, MonomialOrder, Polynomial, Ring, DEFAULT_CHARACTERISTIC};

/// Version marker written into every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

/// A parsed ideal file before ring construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFile {
    pub characteristic: u64,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    pub seed: u64,
    /// `(line, expression)`.
    pub gens: Vec<(usize, String)>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

impl IdealFile {
    pub fn parse(text: &str) -> Result<IdealFile> {
        let mut characteristic = None;
        let mut vars: Option<Vec<String>> = None;
        let mut order = MonomialOrder::DegRevLex;
        let mut seed = 0;
        let mut gens = Vec::new();
        let mut last = 0;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            last = line;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let (key, rest) = content
                .split_once(char::is_whitespace)
                .map(|(a, b)| (a, b.trim()))
                .unwrap_or((content, ""));
            match key {
                "char" => {
                    let p: u64 = rest
                        .parse()
                        .map_err(|_| parse_err(line, format!("bad characteristic '{rest}'")))?;
                    if !is_prime(p) || p == 2 {
                        return Err(parse_err(line, format!("characteristic {p} is not prime (odd primes only)")));
                    }
                    characteristic = Some(p);
                }
                "vars" => {
                    let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                    if names.is_empty() {
                        return Err(parse_err(line, "no variable names"));
                    }
                    for n in &names {
                        let ok = n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                            && n.chars().all(|c| c.is_alphanumeric() || c == '_');
                        if !ok {
                            return Err(parse_err(line, format!("bad variable name '{n}'")));
                        }
                    }
                    vars = Some(names);
                }
                "order" => order = rest.parse().map_err(|e: Error| parse_err(line, e.to_string()))?,
                "seed" => {
                    seed = rest
                        .parse()
                        .map_err(|_| parse_err(line, format!("bad seed '{rest}'")))?
                }
                "gen" => {
                    if rest.is_empty() {
                        return Err(parse_err(line, "empty generator"));
                    }
                    gens.push((line, rest.to_string()));
                }
                other => return Err(parse_err(line, format!("unknown directive '{other}'"))),
            }
        }
        let vars = vars.ok_or_else(|| parse_err(last.max(1), "missing 'vars' line"))?;
        if gens.is_empty() {
            return Err(parse_err(last.max(1), "empty generator list"));
        }
        Ok(IdealFile {
            characteristic: characteristic.unwrap_or(DEFAULT_CHARACTERISTIC as u64),
            vars,
            order,
            seed,
            gens,
        })
    }

    pub fn ring(&self) -> Result<Ring> {
        Ring::new(self.characteristic, self.vars.clone(), self.order, self.seed)
    }

    /// Build the ideal; generators that parse to zero are dropped.
    pub fn ideal(&self) -> Result<Ideal> {
        let ring = self.ring()?;
        let mut polys = Vec::with_capacity(self.gens.len());
        for (line, src) in &self.gens {
            let f = parse_polynomial(&ring, src).map_err(|e| parse_err(*line, e))?;
            if !f.is_homogeneous() {
                return Err(parse_err(*line, format!("inhomogeneous generator at line {line}: {src}")));
            }
            polys.push(f);
        }
        Ideal::new(&ring, polys)
    }
}

/// Parse ideal file text into its ideal (which carries the ring).
pub fn parse_ideal(text: &str) -> Result<Ideal> {
    IdealFile::parse(text)?.ideal()
}

pub fn read_ideal_file(path: &Path) -> Result<Ideal> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_ideal(&text)
}

/// Print an ideal in the file format. Parsing the output gives back the
/// same ring and generators.
pub fn format_ideal(ideal: &Ideal) -> String {
    let ring = ideal.ring();
    let mut out = format!(
        "char {}\nvars {}\norder {}\nseed {}\n",
        ring.characteristic(),
        ring.names().join(" "),
        ring.order(),
        ring.seed()
    );
    for g in ideal.gens() {
        out.push_str(&format!("gen {g}\n"));
    }
    out
}

/// Generator strings of an ideal.
pub fn ideal_strings(ideal: &Ideal) -> Vec<String> {
    ideal.gens().iter().map(|g| g.to_string()).collect()
}

pub(crate) fn ser_polys<S: Serializer>(v: &[Polynomial], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

pub(crate) fn ser_opt_poly<S: Serializer>(
    p: &Option<Polynomial>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_some(&p.to_string()),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_ideal<S: Serializer>(i: &Ideal, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(i.gens().iter().map(|p| p.to_string()))
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    result: &'a T,
}

/// `{"schema": 1, "command": .., "result": ..}`, pretty-printed.
pub fn json_report<T: Serialize>(command: &str, result: &T) -> String {
    serde_json::to_string_pretty(&Envelope {
        schema: SCHEMA_VERSION,
        command,
        result,
    })
    .expect("report types serialize to JSON")
}
