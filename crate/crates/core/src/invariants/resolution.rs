//! Minimal graded free resolutions of `A/I` by linear algebra in each
//! degree, and local cohomology of `A/I` through graded local duality:
//! `dim H^i_m(M)_μ = dim Ext^{n+1-i}_A(M, A)_{-μ-n-1}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use super::betti::{ceiling, quotient_betti_table};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::{EchelonBasis, Matrix};
use crate::poly::{Coeff, Monomial, Polynomial, Ring};

/// Monomials of one degree with their positions.
struct MonomialIndex {
    monomials: Vec<Monomial>,
    position: HashMap<Monomial, usize>,
}

/// Shared per-ring cache of monomial bases of `A_d`.
struct MonomialBases {
    nvars: usize,
    cache: Mutex<HashMap<i64, Arc<MonomialIndex>>>,
}

impl MonomialBases {
    fn new(nvars: usize) -> Self {
        MonomialBases {
            nvars,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn get(&self, d: i64) -> Arc<MonomialIndex> {
        if let Some(m) = self.cache.lock().unwrap().get(&d) {
            return m.clone();
        }
        let monomials = if d < 0 {
            Vec::new()
        } else {
            Monomial::all_of_degree(self.nvars, d as u32)
        };
        let position = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        let idx = Arc::new(MonomialIndex {
            monomials,
            position,
        });
        self.cache.lock().unwrap().insert(d, idx.clone());
        idx
    }

    fn dim(&self, d: i64) -> usize {
        if d < 0 {
            0
        } else {
            Monomial::count_of_degree(self.nvars, d as u32) as usize
        }
    }
}

/// A graded free module `⊕_k A(-a_k)`, given by its generator degrees `a_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeModule {
    pub degrees: Vec<i64>,
}

impl FreeModule {
    fn piece_dim(&self, bases: &MonomialBases, nu: i64) -> usize {
        self.degrees.iter().map(|&a| bases.dim(nu - a)).sum()
    }

    /// `⊕_k A(a_k)`.
    pub fn dual(&self) -> FreeModule {
        FreeModule {
            degrees: self.degrees.iter().map(|a| -a).collect(),
        }
    }
}

/// A homogeneous map of free modules `F -> G` as a matrix of forms: column
/// `c` is the image of the `c`-th generator of `F`.
#[derive(Clone, Debug)]
pub struct PolyMatrix {
    pub source: FreeModule,
    pub target: FreeModule,
    /// `entries[r][c]`, of degree `source[c] - target[r]` (or zero).
    pub entries: Vec<Vec<Polynomial>>,
}

impl PolyMatrix {
    pub fn transpose(&self) -> PolyMatrix {
        let rows = self.target.degrees.len();
        let cols = self.source.degrees.len();
        let entries = (0..cols)
            .map(|c| (0..rows).map(|r| self.entries[r][c].clone()).collect())
            .collect();
        PolyMatrix {
            source: self.target.dual(),
            target: self.source.dual(),
            entries,
        }
    }

    /// The linear map in degree `ν`, over monomial bases ordered by
    /// generator, then by [`Monomial::all_of_degree`].
    fn piece(&self, bases: &MonomialBases, nu: i64, field: crate::poly::PrimeField) -> Matrix {
        let rows = self.target.piece_dim(bases, nu);
        let cols = self.source.piece_dim(bases, nu);
        let mut out = Matrix::zeros(rows, cols, field);
        if rows == 0 || cols == 0 {
            return out;
        }
        let mut row_off = Vec::with_capacity(self.target.degrees.len());
        let mut acc = 0;
        for &b in &self.target.degrees {
            row_off.push(acc);
            acc += bases.dim(nu - b);
        }
        let mut col = 0;
        for (c, &a) in self.source.degrees.iter().enumerate() {
            let src = bases.get(nu - a);
            for u in &src.monomials {
                for (r, &b) in self.target.degrees.iter().enumerate() {
                    let entry = &self.entries[r][c];
                    if entry.is_zero() {
                        continue;
                    }
                    let dst = bases.get(nu - b);
                    for (m, coef) in entry.terms() {
                        let k = dst.position[&m.mul(u)];
                        out.add_to(row_off[r] + k, col, *coef);
                    }
                }
                col += 1;
            }
        }
        out
    }
}

/// A minimal graded free resolution `0 <- F_0 <- F_1 <- .. <- F_len` of
/// `A/I`, with `F_0 = A`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: Ring,
    pub modules: Vec<FreeModule>,
    /// `maps[j]: F_{j+1} -> F_j`.
    pub maps: Vec<PolyMatrix>,
}

impl Resolution {
    /// Graded Betti numbers of `A/I` read from the generator degrees.
    pub fn betti(&self) -> BTreeMap<(usize, i64), u64> {
        let mut out = BTreeMap::new();
        for (j, f) in self.modules.iter().enumerate() {
            for &a in &f.degrees {
                *out.entry((j, a)).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Flatten a vector of forms (one per generator of `F`) into `F_ν`.
fn flatten(bases: &MonomialBases, module: &FreeModule, nu: i64, v: &[Polynomial]) -> Vec<Coeff> {
    let mut out = vec![0; module.piece_dim(bases, nu)];
    let mut off = 0;
    for (k, &a) in module.degrees.iter().enumerate() {
        let idx = bases.get(nu - a);
        for (m, c) in v[k].terms() {
            out[off + idx.position[m]] = *c;
        }
        off += idx.monomials.len();
    }
    out
}

fn unflatten(ring: &Ring, bases: &MonomialBases, module: &FreeModule, nu: i64, v: &[Coeff]) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(module.degrees.len());
    let mut off = 0;
    for &a in &module.degrees {
        let idx = bases.get(nu - a);
        let terms = idx
            .monomials
            .iter()
            .enumerate()
            .filter(|(k, _)| v[off + k] != 0)
            .map(|(k, m)| (m.clone(), v[off + k]))
            .collect();
        out.push(Polynomial::from_terms(ring, terms));
        off += idx.monomials.len();
    }
    out
}

/// Minimal free resolution of `A/I`. Generators of `F_{j+1}` are searched
/// in degrees up to `reg(A/I) + j + 1`, bounded by the certified ceiling.
pub fn minimal_resolution(ideal: &Ideal) -> Result<Resolution> {
    let ring = ideal.ring().clone();
    let field = *ring.field();
    let n1 = ring.nvars();
    let c = ceiling(ideal)?;
    let bases = MonomialBases::new(n1);

    let f0 = FreeModule { degrees: vec![0] };
    let gens = ideal.minimal_generators();
    let mut modules = vec![f0.clone()];
    let mut maps = Vec::new();
    if gens.is_empty() {
        return Ok(Resolution { ring, modules, maps });
    }
    let f1 = FreeModule {
        degrees: gens.iter().map(|g| g.degree().unwrap() as i64).collect(),
    };
    maps.push(PolyMatrix {
        source: f1.clone(),
        target: f0,
        entries: vec![gens],
    });
    modules.push(f1);

    for j in 1..n1 {
        let phi = &maps[j - 1];
        let fj = &modules[j];
        let lo = fj.degrees.iter().copied().min().unwrap() + 1;
        let hi = c.module + j as i64 + 1;
        let mut new_degrees: Vec<i64> = Vec::new();
        let mut new_cols: Vec<Vec<Polynomial>> = Vec::new();
        for nu in lo..=hi {
            let m = phi.piece(&bases, nu, field);
            let kernel = m.kernel();
            if kernel.is_empty() {
                continue;
            }
            // span of the syzygies generated in lower degrees
            let dim = fj.piece_dim(&bases, nu);
            let mut span = EchelonBasis::new(dim, field);
            for (col, &a) in new_cols.iter().zip(&new_degrees) {
                for u in &bases.get(nu - a).monomials {
                    let shifted: Vec<Polynomial> =
                        col.iter().map(|p| p.mul_term(u, 1)).collect();
                    span.insert(&flatten(&bases, fj, nu, &shifted));
                    if span.rank() == kernel.len() {
                        break;
                    }
                }
            }
            for v in &kernel {
                if span.rank() == kernel.len() {
                    break;
                }
                if span.insert(v) {
                    new_degrees.push(nu);
                    new_cols.push(unflatten(&ring, &bases, fj, nu, v));
                }
            }
        }
        if new_degrees.is_empty() {
            break;
        }
        let next = FreeModule {
            degrees: new_degrees,
        };
        let rows = fj.degrees.len();
        let entries = (0..rows)
            .map(|r| new_cols.iter().map(|col| col[r].clone()).collect())
            .collect();
        maps.push(PolyMatrix {
            source: next.clone(),
            target: fj.clone(),
            entries,
        });
        modules.push(next);
    }
    let res = Resolution { ring, modules, maps };
    let koszul = quotient_betti_table(ideal, None)?;
    if res.betti() != koszul.entries {
        return Err(Error::defect(format!(
            "resolution shifts {:?} disagree with Koszul Betti numbers {:?}",
            res.betti(),
            koszul.entries
        )));
    }
    Ok(res)
}

/// `Ext^j_A(A/I, A)` in each degree, from the dual of a minimal resolution.
pub struct ExtDuals {
    resolution: Resolution,
    duals: Vec<PolyMatrix>,
    bases: MonomialBases,
    ranks: Mutex<HashMap<(usize, i64), usize>>,
}

impl ExtDuals {
    pub fn new(resolution: Resolution) -> Self {
        let duals = resolution.maps.iter().map(|m| m.transpose()).collect();
        let n1 = resolution.ring.nvars();
        ExtDuals {
            resolution,
            duals,
            bases: MonomialBases::new(n1),
            ranks: Mutex::new(HashMap::new()),
        }
    }

    pub fn resolution(&self) -> &Resolution {
        &self.resolution
    }

    /// Rank of `F_j^* -> F_{j+1}^*` in degree `ν`.
    fn rank(&self, j: usize, nu: i64) -> usize {
        if j >= self.duals.len() {
            return 0;
        }
        if let Some(&r) = self.ranks.lock().unwrap().get(&(j, nu)) {
            return r;
        }
        let field = *self.resolution.ring.field();
        let r = self.duals[j].piece(&self.bases, nu, field).rank();
        self.ranks.lock().unwrap().insert((j, nu), r);
        r
    }

    /// `dim Ext^j(A/I, A)_ν`.
    pub fn ext_dim(&self, j: usize, nu: i64) -> usize {
        let Some(fj) = self.resolution.modules.get(j) else {
            return 0;
        };
        let dim = fj.dual().piece_dim(&self.bases, nu);
        let incoming = if j == 0 { 0 } else { self.rank(j - 1, nu) };
        dim - self.rank(j, nu) - incoming
    }

    /// `dim H^i_m(A/I)_μ`.
    pub fn local_cohomology_dim(&self, i: usize, mu: i64) -> usize {
        let n1 = self.resolution.ring.nvars();
        if i > n1 {
            return 0;
        }
        self.ext_dim(n1 - i, -mu - n1 as i64)
    }
}

/// Graded dimensions of a module over a window of degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteLengthModule {
    /// Nonzero dimensions only.
    pub dims: BTreeMap<i64, u64>,
    /// The scanned window `[lo, hi]`.
    pub window: (i64, i64),
    /// No nonzero piece in the `n + 1` lowest degrees of the window. Only
    /// then are the dimensions likely to be the whole module.
    pub closed: bool,
}

impl FiniteLengthModule {
    pub fn top(&self) -> Option<i64> {
        self.dims.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }
}

/// Local cohomology of `A/I` through the Ext duals of a minimal resolution.
pub struct ExtOracle {
    ext: ExtDuals,
    ceiling: i64,
    krull_dim: usize,
    nvars: usize,
}

impl ExtOracle {
    pub fn new(ideal: &Ideal) -> Result<ExtOracle> {
        let c = ceiling(ideal)?;
        Ok(ExtOracle {
            ext: ExtDuals::new(minimal_resolution(ideal)?),
            ceiling: c.module,
            krull_dim: ideal.krull_dim(),
            nvars: ideal.ring().nvars(),
        })
    }

    pub fn resolution(&self) -> &Resolution {
        self.ext.resolution()
    }

    /// Module-convention ceiling: `H^i_m(A/I)_μ = 0` for `μ > ceiling - i`.
    pub fn ceiling(&self) -> i64 {
        self.ceiling
    }

    pub fn dim(&self, i: usize, mu: i64) -> usize {
        self.ext.local_cohomology_dim(i, mu)
    }

    /// `H^i_m(A/I)` over `[lo, ceiling - i]`; the default `lo` is `-n - 2`.
    pub fn module(&self, i: usize, lo: Option<i64>) -> FiniteLengthModule {
        let hi = self.ceiling - i as i64;
        let lo = lo.unwrap_or(-(self.nvars as i64) - 1).min(hi);
        let degrees: Vec<i64> = (lo..=hi).collect();
        let dims: BTreeMap<i64, u64> = degrees
            .par_iter()
            .filter_map(|&mu| {
                let d = self.dim(i, mu);
                (d > 0).then_some((mu, d as u64))
            })
            .collect();
        let closed = (lo..lo + self.nvars as i64).all(|mu| !dims.contains_key(&mu));
        FiniteLengthModule {
            dims,
            window: (lo, hi),
            closed,
        }
    }

    /// `a_i(A/I)`, scanning down from `ceiling - i` to `-i - 1`. A support
    /// entirely below `-i - 1` is reported as `None`; it cannot affect the
    /// regularity, which is at least 0.
    pub fn a_invariant(&self, i: usize) -> Option<i64> {
        let hi = self.ceiling - i as i64;
        let lo = -(i as i64) - 1;
        (lo..=hi).rev().find(|&mu| self.dim(i, mu) > 0)
    }

    /// `a_i` for `i = 0..=dim A/I`.
    pub fn a_invariants(&self) -> Vec<Option<i64>> {
        (0..=self.krull_dim).map(|i| self.a_invariant(i)).collect()
    }

    /// `reg(A/I) = max_i (a_i + i)`.
    pub fn regularity(&self) -> Result<i64> {
        self.a_invariants()
            .iter()
            .enumerate()
            .filter_map(|(i, a)| a.map(|a| a + i as i64))
            .max()
            .ok_or_else(|| Error::defect("all local cohomology of A/I vanishes in the window"))
    }
}

/// `dims(H^i_m(A/I))` over the default window.
pub fn ext_dual_oracle(ideal: &Ideal, i: usize) -> Result<FiniteLengthModule> {
    if i > ideal.krull_dim() {
        return Err(Error::usage(format!(
            "H^{i}_m(A/I) vanishes above dim A/I = {}",
            ideal.krull_dim()
        )));
    }
    Ok(ExtOracle::new(ideal)?.module(i, None))
}

/// `a_{dim}(A/I)`, the top a-invariant.
pub fn a_invariant_top(ideal: &Ideal) -> Result<Option<i64>> {
    let oracle = ExtOracle::new(ideal)?;
    Ok(oracle.a_invariant(ideal.krull_dim()))
}

/// `reg(A/I)` as `max_i (a_i + i)`.
pub fn reg_via_def1(ideal: &Ideal) -> Result<i64> {
    ExtOracle::new(ideal)?.regularity()
}
