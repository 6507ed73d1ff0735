//! Regularity through graded Betti numbers, Koszul cohomology and linear
//! truncations.

use serde::Serialize;

use super::betti::{ceiling, module_betti_table, quotient_betti_table};
use crate::error::{Error, Result};
use crate::graded::{GradedModule, KernelModule, KoszulComplex, QuotientModule};
use crate::groebner::{colon_ideal, colon_ideal_module, Ideal};
use crate::poly::Polynomial;

/// Regularity of `I` and `A/I` from the Betti table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Regularity {
    /// `reg(I)`; `None` for the zero ideal.
    pub ideal: Option<i64>,
    /// `reg(A/I)`.
    pub quotient: i64,
    /// Module-convention ceiling of the scan.
    pub ceiling: i64,
}

/// `max_i (b_i - i)` over the Betti table of `A/I`, reported in both
/// conventions.
pub fn regularity_report(ideal: &Ideal, ceiling_override: Option<i64>) -> Result<Regularity> {
    let table = quotient_betti_table(ideal, ceiling_override)?;
    let quotient = table
        .regularity()?
        .expect("a nonzero quotient has Tor_0 in degree 0");
    let ideal_table = table.shift_to_ideal();
    let ideal_reg = ideal_table.regularity()?;
    if let Some(r) = ideal_reg {
        if r != quotient + 1 {
            return Err(Error::defect(format!(
                "reg(I) = {r} but reg(A/I) = {quotient} from the same Betti table"
            )));
        }
    }
    Ok(Regularity {
        ideal: ideal_reg,
        quotient,
        ceiling: table.ceiling,
    })
}

/// `reg(I)` in ideal convention.
pub fn regularity(ideal: &Ideal) -> Result<i64> {
    regularity_report(ideal, None)?
        .ideal
        .ok_or_else(|| Error::usage("the zero ideal has no regularity in ideal convention"))
}

/// `reg(A/I)`.
pub fn quotient_regularity(ideal: &Ideal) -> Result<i64> {
    Ok(regularity_report(ideal, None)?.quotient)
}

/// Regularity of a graded module from its Betti table up to `ceiling`.
pub fn module_regularity<M: GradedModule>(module: &M, ceiling: i64) -> Option<i64> {
    module_betti_table(module, ceiling, false)
        .regularity()
        .expect("not truncated")
}

/// Top degree `ν` with `H^i(z; M)_ν != 0` for each `i`, scanning down from
/// `ceiling - i` to the lowest degree where `K^i` can be nonzero.
pub fn koszul_cohomology_tops<M: GradedModule>(
    module: &M,
    z: Vec<Polynomial>,
    ceiling: i64,
) -> Vec<Option<i64>> {
    let k = KoszulComplex::new(module, z);
    let mut degs: Vec<i64> = k.degrees().to_vec();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    (0..=k.len())
        .map(|i| {
            let lo = module.min_degree() - degs[..i].iter().sum::<i64>();
            let hi = ceiling - i as i64;
            (lo..=hi).rev().find(|&nu| k.cohomology_dim(i, nu) > 0)
        })
        .collect()
}

/// `reg(A/I)` as `min { μ : H^i(z; A/I)_{> μ - i} = 0 for all i }`, with
/// `z` the variables by default. Requires `A/(I + (z))` of finite length.
pub fn regularity_via_koszul(ideal: &Ideal, z: Option<Vec<Polynomial>>) -> Result<i64> {
    let ring = ideal.ring();
    let z = z.unwrap_or_else(|| (0..ring.nvars()).map(|k| Polynomial::var(ring, k)).collect());
    for f in &z {
        if f.is_zero() || !f.is_homogeneous() || f.degree() == Some(0) {
            return Err(Error::usage(format!("{f} is not a form of positive degree")));
        }
    }
    let cut = ideal.with_generators(&z)?;
    if !cut.is_unit() && cut.codim()? != ring.nvars() {
        return Err(Error::usage(
            "A/(I + (z)) is not of finite length; z is not a system of parameters modulo I",
        ));
    }
    let c = ceiling(ideal)?;
    let module = QuotientModule::new(ideal);
    let tops = koszul_cohomology_tops(&module, z, c.module);
    tops.iter()
        .enumerate()
        .filter_map(|(i, t)| t.map(|nu| nu + i as i64))
        .max()
        .ok_or_else(|| Error::defect("Koszul cohomology of a nonzero module vanishes"))
}

/// Whether `b_i((A/I)_{>= μ}) <= b_0((A/I)_{>= μ}) + i` for all `i`. The
/// truncation is generated in degree `μ`, so this asks for a linear
/// resolution.
pub fn check_truncation_linear(ideal: &Ideal, mu: i64) -> Result<bool> {
    if mu < 0 {
        return Err(Error::usage("truncation degree must be non-negative"));
    }
    let c = ceiling(ideal)?;
    let module = QuotientModule::truncated(ideal, mu);
    if (mu..=mu.max(c.module) + 1).all(|d| module.dim(d) == 0) {
        // M_{>= μ} = 0: every b_i is -∞
        return Ok(true);
    }
    let table = module_betti_table(&module, c.module.max(mu), false);
    let b0 = table.b(0);
    Ok((0..=ideal.ring().nvars()).all(|i| match (table.b(i), b0) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(bi), Some(b0)) => bi <= b0 + i as i64,
    }))
}

/// `reg(A/I)` as the least `μ >= 0` at which the truncation has a linear
/// resolution.
pub fn regularity_via_truncation(ideal: &Ideal) -> Result<i64> {
    let c = ceiling(ideal)?;
    for mu in 0..=c.module.max(0) {
        if check_truncation_linear(ideal, mu)? {
            return Ok(mu);
        }
    }
    Err(Error::defect(format!(
        "no linear truncation up to the ceiling {}",
        c.module
    )))
}

/// Data for the inequality `reg(M) <= max { reg(K), reg(M/lM) }` with
/// `M = A/I` and `K = 0 :_M l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelSplit {
    pub reg_module: i64,
    /// `None` when `K = 0`.
    pub reg_kernel: Option<i64>,
    /// `None` when `M/lM = 0`.
    pub reg_cut: Option<i64>,
    /// Krull dimension of `A/Ann(K)`, `None` when `K = 0`.
    pub kernel_dim: Option<usize>,
    pub inequality_holds: bool,
    /// Whether equality is expected (`dim A/Ann(K) <= 1`) and holds.
    pub equality_expected: bool,
    pub equality_holds: bool,
}

/// Regularities around multiplication by a linear form `l` on `A/I`.
pub fn kernel_split(ideal: &Ideal, l: &Polynomial) -> Result<KernelSplit> {
    if l.degree() != Some(1) || !l.is_homogeneous() {
        return Err(Error::usage(format!("{l} is not a linear form")));
    }
    let c = ceiling(ideal)?;
    let reg_module = quotient_regularity(ideal)?;
    let cut = ideal.with_generators(std::slice::from_ref(l))?;
    let reg_cut = if cut.is_unit() {
        None
    } else {
        Some(quotient_regularity(&cut)?)
    };
    let cut_ceiling = if cut.is_unit() { 0 } else { ceiling(&cut)?.module };
    let module = QuotientModule::new(ideal);
    let kernel = KernelModule::new(&module, l.clone());
    // 0 -> K -> M(-1) -> M -> M/lM -> 0 bounds reg(K)
    let k_ceiling = (c.module + 1).max(cut_ceiling + 2);
    let reg_kernel = module_regularity(&kernel, k_ceiling);
    let colon = colon_ideal(ideal, l)?;
    let kernel_dim = if colon == *ideal {
        None
    } else {
        let ann = colon_ideal_module(ideal, &colon)?;
        Some(if ann.is_unit() { 0 } else { ann.krull_dim() })
    };
    if reg_kernel.is_none() != kernel_dim.is_none() {
        return Err(Error::defect("kernel of ×l: graded pieces and colon ideal disagree"));
    }
    let rhs = reg_kernel.max(reg_cut).unwrap_or(i64::MIN);
    let equality_expected = kernel_dim.is_none_or(|d| d <= 1);
    Ok(KernelSplit {
        reg_module,
        reg_kernel,
        reg_cut,
        kernel_dim,
        inequality_holds: reg_module <= rhs,
        equality_expected,
        equality_holds: reg_module == rhs,
    })
}
