//! Monomial ideals: minimal generators, Krull dimension, Hilbert series,
//! graded Betti numbers and stability.
//!
//! Betti numbers are computed from the upper Koszul simplicial complexes
//! `K^a(J) = { S ⊆ supp(a) : x^(a - S) ∈ J }` over the lcm lattice of the
//! minimal generators: `dim Tor_i(J, k)_a = dim H~_{i-1}(K^a(J); k)`, and
//! only lattice points carry nonzero Betti numbers.

use std::collections::{BTreeMap, HashSet};

use crate::linalg::Matrix;
use crate::poly::{Monomial, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

/// Graded Betti numbers `(i, degree) -> dim Tor_i(J, k)_degree` in ideal
/// indexing: `i = 0` counts minimal generators.
pub type BettiNumbers = BTreeMap<(usize, u32), u64>;

impl MonomialIdeal {
    /// Minimalizes the generating set.
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.exps().cmp(a.exps())));
        all.dedup();
        let mut kept: Vec<Monomial> = Vec::new();
        for m in all {
            debug_assert_eq!(m.nvars(), nvars);
            if !kept.iter().any(|g| g.divides(&m)) {
                kept.push(m);
            }
        }
        MonomialIdeal { nvars, gens: kept }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Minimal generators, sorted by degree then reverse lex exponent.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Largest generator degree; `None` for the zero ideal.
    pub fn max_generator_degree(&self) -> Option<u32> {
        self.gens.iter().map(|g| g.degree()).max()
    }

    /// Krull dimension of `A/J`: the largest set of variables containing the
    /// support of no generator.
    pub fn krull_dim(&self) -> usize {
        if self.is_unit() {
            return 0;
        }
        let masks: Vec<u64> = self.gens.iter().map(|g| g.support_mask()).collect();
        let n = self.nvars;
        let mut best = 0;
        for s in 0u64..(1u64 << n) {
            let size = s.count_ones() as usize;
            if size <= best {
                continue;
            }
            if masks.iter().all(|&g| g & !s != 0) {
                best = size;
            }
        }
        best
    }

    pub fn codim(&self) -> usize {
        self.nvars - self.krull_dim()
    }

    /// `J : m`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().map(|g| g.colon(m)))
    }

    /// Numerator `N(t)` of the Hilbert series `N(t) / (1-t)^(n+1)` of
    /// `A/J`, coefficients from degree 0 up.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        let mut out = numerator(&self.gens, self.nvars);
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        out
    }

    /// Hilbert function of `A/J` in degree `d` by counting standard
    /// monomials. Exponential in general; meant for checks.
    pub fn count_standard_monomials(&self, d: u32) -> u64 {
        Monomial::all_of_degree(self.nvars, d)
            .iter()
            .filter(|m| !self.contains(m))
            .count() as u64
    }

    /// The lcm lattice of the minimal generators (without the bottom).
    pub fn lcm_lattice(&self) -> Vec<Monomial> {
        let mut seen: HashSet<Monomial> = self.gens.iter().cloned().collect();
        let mut frontier: Vec<Monomial> = self.gens.clone();
        while let Some(a) = frontier.pop() {
            for g in &self.gens {
                let l = a.lcm(g);
                if seen.insert(l.clone()) {
                    frontier.push(l);
                }
            }
        }
        let mut out: Vec<Monomial> = seen.into_iter().collect();
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exps().cmp(b.exps())));
        out
    }

    /// Multigraded Betti numbers `(i, a) -> dim Tor_i(J, k)_a` over F_p.
    pub fn multigraded_betti(&self, field: PrimeField) -> BTreeMap<(usize, Monomial), u64> {
        let mut out = BTreeMap::new();
        if self.is_zero() {
            return out;
        }
        for a in self.lcm_lattice() {
            let homology = upper_koszul_homology(self, &a, field);
            for (i, dim) in homology.into_iter().enumerate() {
                if dim > 0 {
                    out.insert((i, a.clone()), dim);
                }
            }
        }
        out
    }

    /// Graded Betti numbers, ideal indexing.
    pub fn betti_numbers(&self, field: PrimeField) -> BettiNumbers {
        let mut out = BettiNumbers::new();
        for ((i, a), dim) in self.multigraded_betti(field) {
            *out.entry((i, a.degree())).or_insert(0) += dim;
        }
        out
    }

    /// `reg(J) = max (degree - i)` over nonzero Betti numbers; `None` for
    /// the zero ideal.
    pub fn regularity(&self, field: PrimeField) -> Option<i64> {
        self.betti_numbers(field)
            .keys()
            .map(|&(i, d)| d as i64 - i as i64)
            .max()
    }

    /// Stable in the sense: `x_i m ∈ J` implies `x_j m ∈ J` for `j < i`.
    /// Checked on minimal generators.
    pub fn is_stable(&self) -> bool {
        self.gens.iter().all(|u| {
            u.support().all(|i| {
                (0..i).all(|j| {
                    let mut e = u.exps().to_vec();
                    e[i] -= 1;
                    e[j] += 1;
                    self.contains(&Monomial::new(e))
                })
            })
        })
    }
}

fn poly_sub_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, &c) in b.iter().enumerate() {
        a[k + shift] -= c;
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = gens.to_vec();
    all.sort_by_key(|m| m.degree());
    let mut kept: Vec<Monomial> = Vec::new();
    for m in all {
        if !kept.iter().any(|g| g.divides(&m)) {
            kept.push(m);
        }
    }
    kept
}

/// Hilbert series numerator by pivoting on a power of a shared variable:
/// `N(J) = N(J + (p)) + t^deg(p) N(J : p)`.
fn numerator(gens: &[Monomial], nvars: usize) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    // count generators per variable
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        for i in g.support() {
            counts[i] += 1;
        }
    }
    let (pivot_var, &best) = counts
        .iter()
        .enumerate()
        .max_by_key(|(i, &c)| (c, std::cmp::Reverse(*i)))
        .unwrap();
    if best <= 1 {
        // pairwise coprime generators
        let mut acc = vec![1i64];
        for g in &gens {
            let mut f = vec![0i64; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    let e = gens
        .iter()
        .map(|g| g.exp(pivot_var))
        .filter(|&e| e > 0)
        .min()
        .unwrap();
    let mut pe = vec![0u16; nvars];
    pe[pivot_var] = e;
    let pivot = Monomial::new(pe);
    let mut plus: Vec<Monomial> = gens
        .iter()
        .filter(|g| g.exp(pivot_var) == 0)
        .cloned()
        .collect();
    plus.push(pivot.clone());
    let colon: Vec<Monomial> = gens.iter().map(|g| g.colon(&pivot)).collect();
    let mut out = numerator(&plus, nvars);
    let second = numerator(&colon, nvars);
    // N(J) = N(J + p) + t^e N(J : p)
    let neg: Vec<i64> = second.iter().map(|c| -c).collect();
    poly_sub_shifted(&mut out, &neg, e as usize);
    out
}

/// Reduced homology dimensions `dim H~_{k}(K^a(J))` for `k = -1, 0, ...`,
/// returned with index `k + 1` (so entry `i` is `Tor_i(J,k)_a`).
fn upper_koszul_homology(ideal: &MonomialIdeal, a: &Monomial, field: PrimeField) -> Vec<u64> {
    let support: Vec<usize> = a.support().collect();
    let s = support.len();
    let mut faces_by_size: Vec<Vec<u32>> = vec![Vec::new(); s + 1];
    for mask in 0u32..(1u32 << s) {
        let mut e = a.exps().to_vec();
        for (bit, &var) in support.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                e[var] -= 1;
            }
        }
        if ideal.contains(&Monomial::new(e)) {
            faces_by_size[mask.count_ones() as usize].push(mask);
        }
    }
    // boundary from faces of size k+1 to faces of size k
    let boundary_rank = |k: usize| -> usize {
        if k == 0 || k > s {
            return 0;
        }
        let (src, dst) = (&faces_by_size[k], &faces_by_size[k - 1]);
        if src.is_empty() || dst.is_empty() {
            return 0;
        }
        let index: std::collections::HashMap<u32, usize> =
            dst.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut m = Matrix::zeros(dst.len(), src.len(), field);
        for (col, &face) in src.iter().enumerate() {
            let mut sign_pos = 0;
            for bit in 0..s {
                if face & (1 << bit) == 0 {
                    continue;
                }
                let sub = face & !(1 << bit);
                if let Some(&row) = index.get(&sub) {
                    let v = if sign_pos % 2 == 0 { 1 } else { field.neg(1) };
                    m.set(row, col, v);
                }
                sign_pos += 1;
            }
        }
        m.rank()
    };
    let ranks: Vec<usize> = (0..=s + 1).map(boundary_rank).collect();
    (0..=s)
        .map(|k| {
            let dim = faces_by_size[k].len();
            (dim - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0)) as u64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(nvars: usize, gens: &[&[u16]]) -> MonomialIdeal {
        MonomialIdeal::new(nvars, gens.iter().map(|e| Monomial::new(e.to_vec())))
    }

    fn fp() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn minimalizes() {
        let j = mi(2, &[&[2, 0], &[3, 1], &[1, 1]]);
        assert_eq!(j.gens().len(), 2);
    }

    #[test]
    fn krull_dimension() {
        // skew lines: x0x2, x0x3, x1x2, x1x3
        let j = mi(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(j.krull_dim(), 2);
        assert_eq!(j.codim(), 2);
        // (x^2, xy) in k[x,y,z]
        assert_eq!(mi(3, &[&[2, 0, 0], &[1, 1, 0]]).codim(), 1);
        assert_eq!(mi(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).codim(), 3);
    }

    #[test]
    fn numerator_matches_counting() {
        let j = mi(3, &[&[2, 0, 0], &[1, 1, 0]]);
        assert_eq!(j.hilbert_numerator(), vec![1, 0, -2, 1]);
        let cases = [
            mi(4, &[&[0, 2, 0, 0], &[0, 1, 1, 0], &[0, 0, 2, 0]]),
            mi(3, &[&[3, 1, 0], &[0, 2, 2], &[1, 0, 3], &[1, 1, 1]]),
            mi(4, &[&[3, 0, 0, 0], &[0, 3, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 3]]),
        ];
        for j in cases {
            let num = j.hilbert_numerator();
            // H(d) = sum_k num_k * C(d - k + n, n)
            let n = j.nvars() as u64 - 1;
            for d in 0..12u32 {
                let mut h: i64 = 0;
                for (k, &c) in num.iter().enumerate() {
                    if (k as u32) <= d {
                        h += c * crate::poly::monomial::binomial(d as u64 - k as u64 + n, n) as i64;
                    }
                }
                assert_eq!(h as u64, j.count_standard_monomials(d), "{j:?} degree {d}");
            }
        }
    }

    #[test]
    fn betti_of_two_generated() {
        // (xy, yz): 0 <- A(-2)^2 <- A(-3) <- 0
        let j = mi(3, &[&[1, 1, 0], &[0, 1, 1]]);
        let b = j.betti_numbers(fp());
        assert_eq!(b.get(&(0, 2)), Some(&2));
        assert_eq!(b.get(&(1, 3)), Some(&1));
        assert_eq!(b.len(), 2);
        assert_eq!(j.regularity(fp()), Some(2));
    }

    #[test]
    fn betti_of_maximal_ideal_is_koszul() {
        let j = mi(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let b = j.betti_numbers(fp());
        assert_eq!(b, BettiNumbers::from([((0, 1), 4), ((1, 2), 6), ((2, 3), 4), ((3, 4), 1)]));
    }

    #[test]
    fn powers_of_variables_attain_taylor() {
        let j = mi(4, &[&[3, 0, 0, 0], &[0, 3, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 3]]);
        assert_eq!(j.regularity(fp()), Some(9));
    }

    #[test]
    fn stability() {
        assert!(mi(2, &[&[2, 0], &[1, 1], &[0, 2]]).is_stable());
        assert!(!mi(2, &[&[1, 1]]).is_stable());
        assert!(mi(3, &[&[1, 0, 0]]).is_stable());
    }
}
