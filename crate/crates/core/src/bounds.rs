//! Regularity bounds evaluated against computed values. Each check yields a
//! [`BoundReport`]; geometric bounds whose hypotheses (smoothness,
//! irreducibility, characteristic) are not verified are only reported.

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groebner::{is_saturated, GroebnerBasis, Ideal};
use crate::invariants::{ceiling, hilbert_data, quotient_regularity, regularity, ExtOracle, HilbertData};
use crate::monomial_ideal::MonomialIdeal;
use crate::poly::ring::streams;
use crate::poly::{LinearSubstitution, MonomialOrder, Polynomial, PrimeField};
use crate::topdim::top_dimensional_part;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// `observed <= predicted`.
    Upper,
    /// `observed == predicted`.
    Equality,
    /// Nothing to compare.
    Info,
}

/// Statistics of the ideal a report is about.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundContext {
    /// `n` for `A = k[X_0..X_n]`.
    pub n: usize,
    pub degrees: Vec<u32>,
    pub r: usize,
    pub dim_proj: i64,
    pub scheme_degree: i64,
    pub reg_h: i64,
}

impl BoundContext {
    pub fn of(ideal: &Ideal) -> Result<BoundContext> {
        let h = hilbert_data(ideal)?;
        Ok(BoundContext {
            n: ideal.ring().nvars() - 1,
            degrees: sorted_degrees(ideal),
            r: ideal.codim()?,
            dim_proj: h.dim_proj,
            scheme_degree: h.scheme_degree,
            reg_h: h.reg_h,
        })
    }
}

fn ser_big<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_some(&b.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub kind: BoundKind,
    /// Right-hand side; `None` when inapplicable.
    #[serde(serialize_with = "ser_big")]
    pub predicted: Option<BigUint>,
    pub observed: Option<i64>,
    /// `None` when the bound does not apply.
    pub holds: Option<bool>,
    /// False for geometric bounds, whose hypotheses are not checked.
    pub hypotheses_verified: bool,
    pub note: String,
    pub context: BoundContext,
}

impl BoundReport {
    fn compare(
        name: &str,
        kind: BoundKind,
        predicted: BigUint,
        observed: i64,
        context: &BoundContext,
    ) -> BoundReport {
        let obs = BigUint::try_from(observed.max(0)).unwrap();
        let holds = match kind {
            BoundKind::Upper => observed < 0 || obs <= predicted,
            BoundKind::Equality => observed >= 0 && obs == predicted,
            BoundKind::Info => true,
        };
        BoundReport {
            name: name.into(),
            kind,
            predicted: Some(predicted),
            observed: Some(observed),
            holds: Some(holds),
            hypotheses_verified: true,
            note: String::new(),
            context: context.clone(),
        }
    }

    fn inapplicable(name: &str, note: impl Into<String>, context: &BoundContext) -> BoundReport {
        BoundReport {
            name: name.into(),
            kind: BoundKind::Info,
            predicted: None,
            observed: None,
            holds: None,
            hypotheses_verified: true,
            note: note.into(),
            context: context.clone(),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    fn unverified(mut self) -> Self {
        self.hypotheses_verified = false;
        self
    }

    /// `predicted - observed`, when both fit in an `i64`.
    pub fn gap(&self) -> Option<i64> {
        let p: i64 = self.predicted.as_ref()?.try_into().ok()?;
        Some(p - self.observed?)
    }

    /// One line: `name: predicted P, observed O, holds`.
    pub fn summary(&self) -> String {
        let p = self.predicted.as_ref().map_or("-".into(), |p| p.to_string());
        let o = self.observed.map_or("-".into(), |o| o.to_string());
        let verdict = match self.holds {
            None => "not applicable",
            Some(true) => "holds",
            Some(false) => "FAILS",
        };
        let mut s = format!("{}: predicted {p}, observed {o}, {verdict}", self.name);
        if !self.hypotheses_verified {
            s.push_str(" (hypotheses unverified)");
        }
        if !self.note.is_empty() {
            s.push_str(&format!(" [{}]", self.note));
        }
        s
    }
}

fn big(v: i64) -> BigUint {
    BigUint::try_from(v.max(0)).unwrap()
}

/// Degrees of the minimal generators, non-increasing.
fn sorted_degrees(ideal: &Ideal) -> Vec<u32> {
    let mut d: Vec<u32> = ideal
        .minimal_generators()
        .iter()
        .filter_map(|g| g.degree())
        .collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// `b_i(J)` in ideal indexing from the lattice Betti numbers.
fn monomial_b(j: &MonomialIdeal, field: PrimeField) -> Vec<i64> {
    let betti = j.betti_numbers(field);
    let len = betti.keys().map(|(i, _)| *i).max().map_or(0, |m| m + 1);
    (0..len)
        .map(|i| {
            betti
                .iter()
                .filter(|((k, _), &v)| *k == i && v > 0)
                .map(|((_, d), _)| *d as i64)
                .max()
                .unwrap_or(i64::MIN)
        })
        .collect()
}

/// `b_i(J) <= (i+1) b_0(J)` for all `i`, and `reg(J) <= (n+1)(b_0(J) - 1) + 1`.
pub fn check_taylor(j: &MonomialIdeal, field: PrimeField) -> Vec<BoundReport> {
    let context = BoundContext {
        n: j.nvars() - 1,
        degrees: {
            let mut d: Vec<u32> = j.gens().iter().map(|m| m.degree()).collect();
            d.sort_unstable_by(|a, b| b.cmp(a));
            d
        },
        r: if j.is_zero() { 0 } else { j.codim() },
        ..Default::default()
    };
    if j.is_zero() {
        return vec![BoundReport::inapplicable("taylor", "zero ideal", &context)];
    }
    let b = monomial_b(j, field);
    let b0 = b[0];
    // the index with the least slack
    let (worst, bi) = b
        .iter()
        .enumerate()
        .max_by_key(|(i, &bi)| bi - (*i as i64 + 1) * b0)
        .map(|(i, &bi)| (i, bi))
        .unwrap();
    let betti = BoundReport::compare(
        "taylor-betti",
        BoundKind::Upper,
        big((worst as i64 + 1) * b0),
        bi,
        &context,
    )
    .with_note(format!("b_i <= (i+1) b_0, tightest at i = {worst}"));
    let reg = j.regularity(field).expect("nonzero");
    let n1 = j.nvars() as i64;
    let taylor = BoundReport::compare(
        "taylor-reg",
        BoundKind::Upper,
        big(n1 * (b0 - 1) + 1),
        reg,
        &context,
    );
    vec![betti, taylor]
}

/// `reg(I) = d_1 + .. + d_s - s + 1` for a complete intersection.
pub fn reg_complete_intersection(degrees: &[u32]) -> i64 {
    degrees.iter().map(|&d| d as i64).sum::<i64>() - degrees.len() as i64 + 1
}

/// The complete intersection formula against the computed regularity.
pub fn lemma27_report(ideal: &Ideal) -> Result<BoundReport> {
    let context = BoundContext::of(ideal)?;
    let s = context.degrees.len();
    if s == 0 || context.r != s {
        return Ok(BoundReport::inapplicable(
            "lemma-2.7",
            format!("not a complete intersection: codim {} < {s} generators", context.r),
            &context,
        ));
    }
    Ok(BoundReport::compare(
        "lemma-2.7",
        BoundKind::Equality,
        big(reg_complete_intersection(&context.degrees)),
        regularity(ideal)?,
        &context,
    ))
}

/// Informational: the complete intersection bounding `reg(in(I))` has the
/// degrees of the generators in `n + 1 + s - r` variables.
pub fn lemma27_embedding_note(ideal: &Ideal) -> Result<BoundReport> {
    let context = BoundContext::of(ideal)?;
    let s = context.degrees.len();
    if context.r == s {
        return Ok(BoundReport::inapplicable(
            "lemma-2.7-embedding",
            "complete intersection input",
            &context,
        ));
    }
    let vars = context.n + 1 + s - context.r;
    let mut rep = BoundReport::inapplicable(
        "lemma-2.7-embedding",
        format!("bounding complete intersection of degrees {:?} in {vars} variables", context.degrees),
        &context,
    );
    rep.observed = Some(ceiling(ideal)?.ideal);
    Ok(rep)
}

/// `1 + (d_1 .. d_s)^(2^(n-r))` for `r <= n`, `d_1 + .. + d_{n+1} - n` for
/// `r = n + 1`; degrees non-increasing.
pub fn bound_cor28(degrees: &[u32], n: usize, r: usize) -> Result<BigUint> {
    if r == 0 || r > n + 1 {
        return Err(Error::usage(format!("codimension {r} outside 1..={}", n + 1)));
    }
    if r == n + 1 {
        let mut d = degrees.to_vec();
        d.sort_unstable_by(|a, b| b.cmp(a));
        if d.len() < n + 1 {
            return Err(Error::usage("codim n + 1 needs at least n + 1 generators"));
        }
        let sum: u64 = d[..n + 1].iter().map(|&x| x as u64).sum();
        return Ok(BigUint::from(sum - n as u64));
    }
    let product: BigUint = degrees.iter().map(|&d| BigUint::from(d)).product();
    Ok(BigUint::one() + product.pow(1u32 << (n - r)))
}

pub fn cor28_report(ideal: &Ideal) -> Result<BoundReport> {
    let context = BoundContext::of(ideal)?;
    let predicted = bound_cor28(&context.degrees, context.n, context.r)?;
    Ok(BoundReport::compare(
        "cor-2.8",
        BoundKind::Upper,
        predicted,
        ceiling(ideal)?.ideal,
        &context,
    ))
}

/// `reg(A/I) <= μ + dim H^0_m(A/I)_μ <= μ + dim (A/I)_μ` with
/// `μ = max(reg(A/(I + l)) + 1, b_0(A/I), b_1(A/I) - 1)`, for `trials`
/// random linear forms `l`. Reports the weak and strong forms with the
/// smallest right-hand side over the trials.
pub fn verify_prop26(ideal: &Ideal, trials: usize) -> Result<Vec<BoundReport>> {
    let context = BoundContext::of(ideal)?;
    if ideal.krull_dim() == 0 {
        return Ok(vec![BoundReport::inapplicable(
            "prop-2.6",
            "dim A/I = 0",
            &context,
        )]);
    }
    let ring = ideal.ring();
    let observed = quotient_regularity(ideal)?;
    let b1 = context.degrees.first().copied().unwrap_or(0) as i64;
    let oracle = ExtOracle::new(ideal)?;
    let module = crate::graded::QuotientModule::new(ideal);
    let mut rng = ring.rng(streams::LINEAR_FORM);
    let mut weak = i64::MAX;
    let mut strong = i64::MAX;
    for _ in 0..trials.max(1) {
        let l = Polynomial::random_form(ring, 1, &mut rng);
        let cut = ideal.with_generators(&[l])?;
        let reg_cut = if cut.is_unit() { i64::MIN } else { quotient_regularity(&cut)? };
        let mu = (reg_cut.saturating_add(1)).max(0).max(b1 - 1);
        use crate::graded::GradedModule;
        weak = weak.min(mu + module.dim(mu) as i64);
        strong = strong.min(mu + oracle.dim(0, mu) as i64);
    }
    Ok(vec![
        BoundReport::compare("prop-2.6-strong", BoundKind::Upper, big(strong), observed, &context)
            .with_note("mu + dim H^0_m(A/I)_mu"),
        BoundReport::compare("prop-2.6-weak", BoundKind::Upper, big(weak), observed, &context)
            .with_note("mu + dim (A/I)_mu"),
    ])
}

/// Stability of a monomial ideal: for each minimal generator `m` and
/// `x_i | m`, `x_j m / x_i` lies in `J` for all `j < i`.
pub fn is_stable(j: &MonomialIdeal) -> bool {
    j.is_stable()
}

/// `reg(J) = b_0(J)` for stable `J`.
pub fn ek_check(j: &MonomialIdeal, field: PrimeField) -> BoundReport {
    let mut degrees: Vec<u32> = j.gens().iter().map(|m| m.degree()).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let context = BoundContext {
        n: j.nvars() - 1,
        degrees,
        r: if j.is_zero() { 0 } else { j.codim() },
        ..Default::default()
    };
    if j.is_zero() || !j.is_stable() {
        return BoundReport::inapplicable("eliahou-kervaire", "not stable", &context);
    }
    BoundReport::compare(
        "eliahou-kervaire",
        BoundKind::Equality,
        big(j.max_generator_degree().unwrap() as i64),
        j.regularity(field).unwrap(),
        &context,
    )
}

/// One random change of coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BsTrial {
    pub index: usize,
    pub seed: u64,
    /// `reg(in(g I))`, deg-rev-lex.
    pub reg_initial: i64,
    /// `reg(in(g I))`, deg-lex; may exceed the deg-rev-lex value. `None`
    /// when the deg-lex basis needs S-pairs above `2 reg_initial`.
    pub reg_initial_deglex: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop23Check {
    /// `I` is saturated, unmixed and `dim Proj(A/I) = 2`.
    pub surface: bool,
    /// `Proj(A/I) ∩ {X_n = X_{n-1} = 0}` is zero-dimensional, in the given
    /// coordinates.
    pub hypothesis: bool,
    /// `reg(I) = reg(in(I))` in the given coordinates.
    pub equality: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BsExperiment {
    pub reg: i64,
    /// `reg(in(I))` in the given coordinates.
    pub reg_initial_given: i64,
    pub trials: Vec<BsTrial>,
    /// `reg(I) <= reg(in(g I))` in every trial, for both orders where
    /// computed.
    pub inequality_always: bool,
    /// Equality for deg-rev-lex in at least one trial.
    pub equality_attained: bool,
    pub prop23: Prop23Check,
}

fn reg_initial(ideal: &Ideal) -> Result<i64> {
    Ok(ceiling(ideal)?.ideal)
}

/// `reg(I)` against `reg(in(I))` after `trials` random changes of
/// coordinates. Trials run in parallel and are reported by index.
pub fn bayer_stillman_experiment(ideal: &Ideal, trials: usize) -> Result<BsExperiment> {
    if ideal.is_zero() {
        return Err(Error::ImproperIdeal("the zero ideal has no regularity".into()));
    }
    let ring = ideal.ring();
    let reg = regularity(ideal)?;
    let reg_initial_given = reg_initial(ideal)?;
    let mut seeds = ring.rng(streams::COORDINATE_CHANGE);
    let seeds: Vec<u64> = (0..trials).map(|_| rand::Rng::gen(&mut seeds)).collect();
    let drl = ring.with_order(MonomialOrder::DegRevLex);
    let dl = ring.with_order(MonomialOrder::DegLex);
    let mut results: Vec<BsTrial> = seeds
        .par_iter()
        .enumerate()
        .map(|(index, &seed)| {
            let g = LinearSubstitution::random(ring, seed)?;
            let moved: Vec<Polynomial> = ideal.gens().iter().map(|f| g.apply(f)).collect();
            let a = Ideal::new(&drl, moved.iter().map(|f| f.with_ring(&drl)).collect())?;
            let reg_a = reg_initial(&a)?;
            let moved_dl: Vec<Polynomial> = moved.iter().map(|f| f.with_ring(&dl)).collect();
            let reg_b = match GroebnerBasis::compute_bounded(&dl, &moved_dl, 2 * reg_a.max(1) as u32) {
                Some(gb) => Some(reg_initial(&Ideal::from_basis(gb))?),
                None => None,
            };
            Ok(BsTrial {
                index,
                seed,
                reg_initial: reg_a,
                reg_initial_deglex: reg_b,
            })
        })
        .collect::<Result<_>>()?;
    results.sort_by_key(|t| t.index);
    let inequality_always = results
        .iter()
        .all(|t| reg <= t.reg_initial && t.reg_initial_deglex.is_none_or(|r| reg <= r));
    let equality_attained = results.iter().any(|t| t.reg_initial == reg);
    Ok(BsExperiment {
        reg,
        reg_initial_given,
        trials: results,
        inequality_always,
        equality_attained,
        prop23: prop23_check(ideal, reg, reg_initial_given)?,
    })
}

fn prop23_check(ideal: &Ideal, reg: i64, reg_in: i64) -> Result<Prop23Check> {
    let ring = ideal.ring();
    let n1 = ring.nvars();
    let surface = !ideal.is_unit()
        && ideal.dim_proj()? == 2
        && is_saturated(ideal)
        && top_dimensional_part(ideal, 5)?.i_s == *ideal;
    let hypothesis = surface && n1 >= 2 && {
        let cut = ideal.with_generators(&[
            Polynomial::var(ring, n1 - 1),
            Polynomial::var(ring, n1 - 2),
        ])?;
        !cut.is_unit() && cut.krull_dim() <= 1
    };
    Ok(Prop23Check {
        surface,
        hypothesis,
        equality: reg == reg_in,
    })
}

/// Geometric bounds for `S = Proj(A/I_S)`, with `d_1 >= .. >= d_r` the
/// largest generator degrees of `I`. Nothing here is asserted.
pub fn geometric_bounds_report(
    ideal: &Ideal,
    i_s: &Ideal,
    hilbert: &HilbertData,
) -> Result<Vec<BoundReport>> {
    let mut context = BoundContext::of(i_s)?;
    let reg_s = quotient_regularity(i_s)?;
    let dim = hilbert.dim_proj;
    let deg = hilbert.scheme_degree;
    let r = context.r as i64;
    let degrees = sorted_degrees(ideal);
    let sum_r: i64 = degrees.iter().take(r as usize).map(|&d| d as i64).sum();
    context.degrees = degrees;
    let rows: [(&str, i64, &str); 5] = [
        ("eisenbud-goto", deg - r, "reduced, irreducible, non-degenerate"),
        ("mumford", (dim + 1) * (deg - 1), "smooth, characteristic zero"),
        ("mumford-char-p", (dim + 1) * (dim + 1) * (deg - 1), "smooth"),
        ("bel", sum_r - r, "Z_I = S smooth, characteristic zero"),
        ("thm-3.3", (dim + 1) * (sum_r - r - 1) + 1, "isolated component, finitely many singular points"),
    ];
    Ok(rows
        .iter()
        .map(|&(name, rhs, hyp)| {
            let mut rep = BoundReport::compare(name, BoundKind::Upper, big(rhs), reg_s, &context)
                .unverified()
                .with_note(format!("assumes {hyp}"));
            if rhs < 0 {
                rep.predicted = None;
                rep.holds = Some(false);
                rep.note = format!("right-hand side {rhs} < 0; assumes {hyp}");
            }
            rep
        })
        .collect())
}

/// Every report for one ideal, in a fixed order.
pub fn bounds_report(ideal: &Ideal, trials: usize) -> Result<Vec<BoundReport>> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::ImproperIdeal("need a proper nonzero ideal".into()));
    }
    let field = *ideal.ring().field();
    let initial = ideal.initial_ideal();
    let mut out = check_taylor(&initial, field);
    out.push(lemma27_report(ideal)?);
    out.push(lemma27_embedding_note(ideal)?);
    out.push(cor28_report(ideal)?);
    out.extend(verify_prop26(ideal, trials)?);
    out.push(ek_check(&initial, field));
    let bs = bayer_stillman_experiment(ideal, trials)?;
    let context = BoundContext::of(ideal)?;
    let min_in = bs.trials.iter().map(|t| t.reg_initial).min().unwrap_or(bs.reg_initial_given);
    out.push(
        BoundReport::compare("bayer-stillman", BoundKind::Upper, big(min_in), bs.reg, &context)
            .with_note(format!(
                "least reg(in) over {trials} coordinate changes; equality {}",
                if bs.equality_attained { "attained" } else { "not attained" }
            )),
    );
    if ideal.krull_dim() == 0 {
        out.push(BoundReport::inapplicable("geometric", "the scheme of I is empty", &context));
        return Ok(out);
    }
    let top = top_dimensional_part(ideal, 5)?;
    let h = hilbert_data(&top.i_s)?;
    out.extend(geometric_bounds_report(ideal, &top.i_s, &h)?);
    Ok(out)
}
