//! The Hartshorne–Rao module `H^1_m(A/I)` from the Koszul cohomology of a
//! pair `(f, g)` with `codim(I + (f, g)) = codim(I) + 2`, refereed by the
//! Ext-duality oracle.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{koszul_pair_piece, subsets, QuotientModule};
use crate::groebner::{is_saturated, Ideal};
use crate::invariants::{ceiling, ExtOracle, FiniteLengthModule};
use crate::poly::ring::streams;
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Debug, Serialize)]
pub struct JacobianData {
    /// Nonzero `r × r` minors of `(∂f_i/∂X_j)`.
    #[serde(serialize_with = "crate::io::ser_polys")]
    pub minors: Vec<Polynomial>,
    pub r: usize,
}

/// Determinant by expansion along the first row.
fn determinant(ring: &Ring, m: &[Vec<Polynomial>]) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero(ring);
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != c)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][c] * &determinant(ring, &minor);
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// All nonzero `r × r` minors of the Jacobian matrix of the minimal
/// generators, `r = codim(I)`.
pub fn jacobian_minors(ideal: &Ideal) -> Result<JacobianData> {
    let ring = ideal.ring();
    let r = ideal.codim()?;
    let gens = ideal.minimal_generators();
    let n1 = ring.nvars();
    let jac: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|f| (0..n1).map(|j| f.derivative(j)).collect())
        .collect();
    let mut minors = Vec::new();
    for rows in subsets(gens.len(), r) {
        for cols in subsets(n1, r) {
            let sub: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| jac[i][j].clone()).collect())
                .collect();
            let d = determinant(ring, &sub);
            if !d.is_zero() && !minors.contains(&d) {
                minors.push(d);
            }
        }
    }
    if minors.is_empty() {
        return Err(Error::usage(
            "Jacobian degenerate (possibly p divides exponents)",
        ));
    }
    Ok(JacobianData { minors, r })
}

/// Where the pair `(f, g)` is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairMode {
    Linear,
    Jacobian,
}

/// Random `(f, g)` from the source with `codim(I + (f, g)) = codim(I) + 2`.
pub fn choose_pair(
    ideal: &Ideal,
    mode: PairMode,
    max_retries: usize,
) -> Result<(Polynomial, Polynomial)> {
    let ring = ideal.ring();
    let r = ideal.codim()?;
    if r + 2 > ring.nvars() {
        return Err(Error::usage(format!(
            "no admissible pair: codim(I) + 2 = {} exceeds n + 1 = {}",
            r + 2,
            ring.nvars()
        )));
    }
    let (source, degree, stream) = match mode {
        PairMode::Linear => (
            (0..ring.nvars()).map(|k| Polynomial::var(ring, k)).collect::<Vec<_>>(),
            1,
            streams::LINEAR_FORM,
        ),
        PairMode::Jacobian => {
            let jac = jacobian_minors(ideal)?;
            let d = jac.minors.iter().filter_map(|m| m.degree()).max().unwrap().max(1);
            (jac.minors, d, streams::KOSZUL_PAIR)
        }
    };
    let mut rng = ring.rng(stream);
    let mut best = r;
    for _ in 0..=max_retries {
        let f = Polynomial::random_combination(ring, &source, degree, &mut rng);
        let g = Polynomial::random_combination(ring, &source, degree, &mut rng);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let cut = ideal.with_generators(&[f.clone(), g.clone()])?;
        let c = if cut.is_unit() { ring.nvars() + 1 } else { cut.codim()? };
        if c == r + 2 {
            return Ok((f, g));
        }
        best = best.max(c);
    }
    Err(Error::Genericity(format!(
        "no admissible pair found after {} draws; best codim {best}, wanted {}",
        max_retries + 1,
        r + 2
    )))
}

/// Nonzero `dim H^1(f, g; A/I)_μ` over `[lo, hi]`.
fn koszul_h1(ideal: &Ideal, f: &Polynomial, g: &Polynomial, lo: i64, hi: i64) -> BTreeMap<i64, u64> {
    let module = QuotientModule::new(ideal);
    (lo..=hi)
        .filter_map(|mu| {
            let d = koszul_pair_piece(f, g, &module, mu)[1];
            (d > 0).then_some((mu, d as u64))
        })
        .collect()
}

/// Last `μ` with `H^1(l_1, l_2; A/I)_μ != 0` for two linear forms, scanning
/// down from `ceiling - 1`; `None` for `-∞`.
pub fn last_nonzero_degree(ideal: &Ideal, max_retries: usize) -> Result<Option<i64>> {
    let (l1, l2) = choose_pair(ideal, PairMode::Linear, max_retries)?;
    let c = ceiling(ideal)?;
    let module = QuotientModule::new(ideal);
    // K^1 vanishes below degree -1
    Ok((-1..=c.module - 1)
        .rev()
        .find(|&mu| koszul_pair_piece(&l1, &l2, &module, mu)[1] > 0))
}

#[derive(Clone, Debug, Serialize)]
pub struct HRaoResult {
    pub mode: PairMode,
    #[serde(serialize_with = "crate::io::ser_polys")]
    pub pair: Vec<Polynomial>,
    pub pair_degrees: Vec<u32>,
    /// Koszul dimensions over the oracle window.
    pub module: FiniteLengthModule,
    pub oracle: FiniteLengthModule,
    /// From a pair of linear forms.
    pub last_nonzero_degree: Option<i64>,
    pub oracle_agreement: bool,
}

/// `H^1_m(A/I)` for saturated `I` through `H^1(f, g; A/I)`.
pub fn hartshorne_rao(ideal: &Ideal, mode: PairMode, max_retries: usize) -> Result<HRaoResult> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::ImproperIdeal("need a proper nonzero ideal".into()));
    }
    if !is_saturated(ideal) {
        return Err(Error::usage("ideal is not saturated; saturate first"));
    }
    let (f, g) = choose_pair(ideal, mode, max_retries)?;
    let last = last_nonzero_degree(ideal, max_retries)?;
    let oracle = ExtOracle::new(ideal)?.module(1, None);
    let (lo, hi) = oracle.window;
    let dims = koszul_h1(ideal, &f, &g, lo, hi);
    let closed = (lo..lo + ideal.ring().nvars() as i64).all(|mu| !dims.contains_key(&mu));
    let module = FiniteLengthModule {
        dims,
        window: (lo, hi),
        closed,
    };
    let oracle_agreement = module.dims == oracle.dims && last == oracle.top();
    Ok(HRaoResult {
        mode,
        pair_degrees: vec![f.degree().unwrap(), g.degree().unwrap()],
        pair: vec![f, g],
        module,
        oracle,
        last_nonzero_degree: last,
        oracle_agreement,
    })
}
