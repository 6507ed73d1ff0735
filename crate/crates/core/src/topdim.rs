//! The purely top-dimensional part of the scheme of a homogeneous ideal,
//! through a maximal regular sequence inside `I` and one element of
//! `(g_1..g_r) : I` of low degree.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{GradedModule, QuotientModule};
use crate::groebner::{colon_ideal_module, colon_via_t_trick, is_saturated, saturate_irrelevant, Ideal};
use crate::invariants::quotient_regularity;
use crate::linalg::Matrix;
use crate::poly::ring::streams;
use crate::poly::{Coeff, Polynomial};

/// One stage of the regular sequence construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub t: usize,
    pub sigma_t: i64,
    /// The map `(A/J)_σ -> ⊕ (A/J)_{σ + d_j}` is injective.
    pub injective: bool,
    /// Random draws rejected before `g_{t+1}` was accepted.
    pub retries: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularSequenceResult {
    /// Generators `f_1..f_s` by non-increasing degree.
    #[serde(serialize_with = "crate::io::ser_polys")]
    pub f: Vec<Polynomial>,
    #[serde(serialize_with = "crate::io::ser_polys")]
    pub g: Vec<Polynomial>,
    pub degrees: Vec<u32>,
    /// `codim(I)`.
    pub r: usize,
    /// `d_1 + .. + d_r - r`.
    pub sigma: i64,
    pub transcript: Vec<StageRecord>,
}

impl RegularSequenceResult {
    /// `(g_1..g_r)`.
    pub fn ideal(&self) -> Ideal {
        let ring = self.f[0].ring();
        Ideal::new(ring, self.g.clone()).expect("forms")
    }

    /// `f_{r+1}..f_s`.
    pub fn remaining(&self) -> &[Polynomial] {
        &self.f[self.r..]
    }
}

/// `(A/J)_δ -> ⊕_j (A/J)_{δ + deg f_j}`, `x ↦ (f_j x)_j`, stacked by rows.
fn stacked_map(module: &QuotientModule, forms: &[Polynomial], delta: i64) -> Matrix {
    let field = *module.ring().field();
    let cols = module.dim(delta);
    let blocks: Vec<Matrix> = forms.iter().map(|f| module.mul_poly(delta, f)).collect();
    let rows = blocks.iter().map(|b| b.rows()).sum();
    let mut out = Matrix::zeros(rows, cols, field);
    let mut off = 0;
    for b in &blocks {
        for i in 0..b.rows() {
            out.row_mut(off + i).copy_from_slice(b.row(i));
        }
        off += b.rows();
    }
    out
}

/// Whether `(A/J)_{σ_t} -> ⊕_j (A/J)_{σ_t + d_j}` is injective. The answer
/// must equal `codim(I) > t` for `I = J + (remaining)`; a mismatch is a
/// defect.
pub fn injectivity_test(j: &Ideal, remaining: &[Polynomial], sigma_t: i64) -> Result<bool> {
    let t = j.gens().len();
    let module = QuotientModule::new(j);
    let injective = sigma_t < 0
        || module.dim(sigma_t) == 0
        || stacked_map(&module, remaining, sigma_t).rank() == module.dim(sigma_t);
    let i = j.with_generators(remaining)?;
    let expected = i.is_unit() || i.codim()? > t;
    if injective != expected {
        return Err(Error::defect(format!(
            "injectivity in degree {sigma_t} is {injective} but codim(I) > {t} is {expected}"
        )));
    }
    Ok(injective)
}

/// Greedy construction of `g_1..g_r`, `g_i = f_i + Σ_{j>i} h_ij f_j`,
/// trying the identity combination before random ones.
pub fn build_regular_sequence(ideal: &Ideal, max_retries: usize) -> Result<RegularSequenceResult> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::ImproperIdeal(
            "a regular sequence needs a proper nonzero ideal".into(),
        ));
    }
    let ring = ideal.ring();
    let mut f = ideal.minimal_generators();
    f.sort_by_key(|a| std::cmp::Reverse(a.degree()));
    let degrees: Vec<u32> = f.iter().map(|p| p.degree().unwrap()).collect();
    let r = ideal.codim()?;
    let mut rng = ring.rng(streams::REGULAR_SEQUENCE);
    let mut g: Vec<Polynomial> = Vec::with_capacity(r);
    let mut transcript = Vec::with_capacity(r + 1);
    let mut sigma_t = 0i64;
    for t in 0..r {
        let j = Ideal::new(ring, g.clone())?;
        let injective = injectivity_test(&j, &f[t..], sigma_t)?;
        let mut retries = 0;
        let mut candidate = f[t].clone();
        loop {
            let mut seq = g.clone();
            seq.push(candidate.clone());
            if Ideal::new(ring, seq)?.codim()? == t + 1 {
                break;
            }
            if retries == max_retries {
                return Err(Error::Genericity(format!(
                    "no regular element at stage {} after {retries} draws; reseed or enlarge p",
                    t + 1
                )));
            }
            retries += 1;
            candidate = f[t].clone();
            for fj in &f[t + 1..] {
                let h = Polynomial::random_form(ring, degrees[t] - fj.degree().unwrap(), &mut rng);
                candidate = &candidate + &(&h * fj);
            }
        }
        transcript.push(StageRecord {
            t,
            sigma_t,
            injective,
            retries,
        });
        g.push(candidate);
        sigma_t += degrees[t] as i64 - 1;
    }
    let j = Ideal::new(ring, g.clone())?;
    transcript.push(StageRecord {
        t: r,
        sigma_t,
        injective: injectivity_test(&j, &f[r..], sigma_t)?,
        retries: 0,
    });
    Ok(RegularSequenceResult {
        f,
        g,
        degrees,
        r,
        sigma: sigma_t,
        transcript,
    })
}

fn random_vector(kernel: &[Vec<Coeff>], p: u32, rng: &mut ChaCha8Rng) -> Vec<Coeff> {
    let field = crate::poly::PrimeField::new(p as u64).expect("prime");
    let mut v = vec![0; kernel[0].len()];
    for k in kernel {
        let c = rng.gen_range(1..p) as Coeff;
        for (a, b) in v.iter_mut().zip(k) {
            *a = field.mul_add(*a, c, *b);
        }
    }
    v
}

/// Kernel of the map to the remaining forms in the first degree where it
/// is nonzero, up to `σ`.
fn first_kernel(
    seq: &RegularSequenceResult,
    module: &QuotientModule,
) -> Result<(i64, Vec<Vec<Coeff>>)> {
    for delta in 0..=seq.sigma {
        if module.dim(delta) == 0 {
            continue;
        }
        let kernel = stacked_map(module, seq.remaining(), delta).kernel();
        if !kernel.is_empty() {
            return Ok((delta, kernel));
        }
    }
    Err(Error::defect(format!(
        "no element of (g) : I outside (g) up to degree σ = {}",
        seq.sigma
    )))
}

/// A random homogeneous `h` in `(g_1..g_r) : I` outside `(g_1..g_r)`, of
/// least degree `d_h <= σ`.
pub fn find_h(seq: &RegularSequenceResult) -> Result<(Polynomial, i64)> {
    if seq.remaining().is_empty() {
        return Err(Error::usage("complete intersection: no remaining forms"));
    }
    let ring = seq.f[0].ring();
    let module = QuotientModule::new(&seq.ideal());
    let (delta, kernel) = first_kernel(seq, &module)?;
    let mut rng = ring.rng(streams::KERNEL_ELEMENT);
    let v = random_vector(&kernel, ring.characteristic(), &mut rng);
    Ok((module.element(delta, &v), delta))
}

/// Observed and predicted degree bound of the Gröbner basis used by the
/// T-trick colon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBoundLog {
    pub observed: u32,
    /// `max(σ, reg(A/I_S) + deg h)`.
    pub predicted: i64,
    /// `observed <= predicted`, ignoring the element `T^{2 deg h}`.
    pub within: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TopDimResult {
    pub sequence: RegularSequenceResult,
    /// `None` for a complete intersection.
    #[serde(serialize_with = "crate::io::ser_opt_poly")]
    pub h: Option<Polynomial>,
    /// Least degree of an element of `(g) : I` outside `(g)`.
    pub h_min_degree: Option<i64>,
    /// Degree of the `h` actually used.
    pub h_degree: Option<i64>,
    #[serde(serialize_with = "crate::io::ser_ideal")]
    pub i_s: Ideal,
    /// `I : I_S`.
    #[serde(serialize_with = "crate::io::ser_ideal")]
    pub residual: Ideal,
    /// `colon_ideal` and the T-trick agreed.
    pub colon_backends_agree: bool,
    pub degree_bound: Option<DegreeBoundLog>,
    /// Draws of `h` rejected before `I_S` passed its checks.
    pub attempts: usize,
    /// No single `h` worked and `I_S` is `J : (J : I)`. Happens when a top
    /// dimensional component is not Gorenstein at its generic point, e.g.
    /// `(x, y)^2`, so `(J : I) / J` is not locally cyclic there.
    pub via_linkage: bool,
}

/// Postconditions of the unmixed part; returns the reason for failure.
/// `linked` is `J : (J : I)`.
fn check_unmixed(ideal: &Ideal, linked: &Ideal, i_s: &Ideal, r: usize) -> Result<Option<String>> {
    if i_s.is_unit() || i_s.codim()? != r {
        return Ok(Some(format!("codim(I_S) != {r}")));
    }
    if !is_saturated(i_s) {
        return Ok(Some("I_S not saturated".into()));
    }
    if !i_s.contains_ideal(ideal) {
        return Ok(Some("I not contained in I_S".into()));
    }
    if linked != i_s {
        return Ok(Some(format!("I_S differs from J : (J : I) = {linked}")));
    }
    Ok(None)
}

/// `I_S = (g_1..g_r) : h`, or the saturation of `I` for a complete
/// intersection. Each of the `max_retries + 1` sweeps draws one `h` in every
/// degree from `d_h` to `σ` where the kernel is nonzero. If every draw
/// fails only the linkage check, `I_S = J : (J : I)` is returned instead.
pub fn top_dimensional_part(ideal: &Ideal, max_retries: usize) -> Result<TopDimResult> {
    if ideal.krull_dim() == 0 {
        return Err(Error::ImproperIdeal("I is m-primary: its scheme is empty".into()));
    }
    let seq = build_regular_sequence(ideal, max_retries)?;
    let ring = ideal.ring();
    if seq.remaining().is_empty() {
        let i_s = saturate_irrelevant(ideal);
        let residual = colon_ideal_module(ideal, &i_s)?;
        return Ok(TopDimResult {
            sequence: seq,
            h: None,
            h_min_degree: None,
            h_degree: None,
            i_s,
            residual,
            colon_backends_agree: true,
            degree_bound: None,
            attempts: 0,
            via_linkage: false,
        });
    }
    let j = seq.ideal();
    let module = QuotientModule::new(&j);
    let (d_min, first) = first_kernel(&seq, &module)?;
    // kernels in degrees d_min..=σ; a general h of the least degree can
    // still vanish on a top-dimensional component, so later sweeps climb
    let mut kernels = vec![(d_min, first)];
    for delta in d_min + 1..=seq.sigma {
        if module.dim(delta) > 0 {
            let k = stacked_map(&module, seq.remaining(), delta).kernel();
            if !k.is_empty() {
                kernels.push((delta, k));
            }
        }
    }
    // linkage: the unmixed part of I is J : (J : I)
    let linked = colon_ideal_module(&j, &colon_ideal_module(&j, ideal)?)?;
    let mut rng = ring.rng(streams::KERNEL_ELEMENT);
    let mut failures = Vec::new();
    let mut attempt = 0;
    for _sweep in 0..=max_retries {
        for (delta, kernel) in &kernels {
            let delta = *delta;
            let v = random_vector(kernel, ring.characteristic(), &mut rng);
            let h = module.element(delta, &v);
            // colon_via_t_trick compares itself with colon_ideal
            let tt = colon_via_t_trick(&j, &h)?;
            let i_s = tt.colon.clone();
            if let Some(reason) = check_unmixed(ideal, &linked, &i_s, seq.r)? {
                failures.push(format!("degree {delta}: {reason}"));
                attempt += 1;
                continue;
            }
            let predicted = seq.sigma.max(quotient_regularity(&i_s)? + delta);
            let residual = colon_ideal_module(ideal, &i_s)?;
            return Ok(TopDimResult {
                sequence: seq,
                h: Some(h),
                h_min_degree: Some(d_min),
                h_degree: Some(delta),
                i_s,
                residual,
                colon_backends_agree: true,
                degree_bound: Some(DegreeBoundLog {
                    observed: tt.max_degree,
                    predicted,
                    within: tt.max_degree as i64 <= predicted.max(2 * delta),
                }),
                attempts: attempt,
                via_linkage: false,
            });
        }
    }
    if check_unmixed(ideal, &linked, &linked, seq.r)?.is_none() {
        let residual = colon_ideal_module(ideal, &linked)?;
        return Ok(TopDimResult {
            sequence: seq,
            h: None,
            h_min_degree: Some(d_min),
            h_degree: None,
            i_s: linked,
            residual,
            colon_backends_agree: true,
            degree_bound: None,
            attempts: attempt,
            via_linkage: true,
        });
    }
    failures.dedup();
    Err(Error::Genericity(format!(
        "h not general after {attempt} draws: {}",
        failures.join("; ")
    )))
}

/// `I : I_S`, the part of `I` away from the top-dimensional components.
pub fn residual(ideal: &Ideal, i_s: &Ideal) -> Result<Ideal> {
    colon_ideal_module(ideal, i_s)
}

/// Kernel dimensions of `(A/J)_δ -> ⊕_j (A/J)_{δ + d_j}` over a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalDims {
    /// Degree `δ` of the source, not shifted.
    pub dims: BTreeMap<i64, usize>,
    /// No remaining forms: the dimensions are those of `A/J` itself, and
    /// `ω` is a twist of `A/J`.
    pub complete_intersection: bool,
}

pub fn canonical_module_dims(seq: &RegularSequenceResult, window: (i64, i64)) -> CanonicalDims {
    let module = QuotientModule::new(&seq.ideal());
    let ci = seq.remaining().is_empty();
    let dims = (window.0..=window.1)
        .map(|d| {
            let dim = if d < 0 || module.dim(d) == 0 {
                0
            } else if ci {
                module.dim(d)
            } else {
                stacked_map(&module, seq.remaining(), d).kernel().len()
            };
            (d, dim)
        })
        .collect();
    CanonicalDims {
        dims,
        complete_intersection: ci,
    }
}
