//! Graded pieces of finitely generated modules, multiplication maps and
//! Koszul complexes, all as dense linear algebra over F_p.
//!
//! Sign convention: for a sorted index set `S = {s_0 < s_1 < ..}`, the
//! homological differential sends `e_S ⊗ m` to
//! `sum_k (-1)^k z_{s_k} m e_{S \ s_k}`, and the cohomological one sends
//! `m e_S` to `sum_{j ∉ S} (-1)^{#{s ∈ S : s < j}} z_j m e_{S ∪ j}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::groebner::{GroebnerBasis, Ideal};
use crate::linalg::{EchelonBasis, Matrix};
use crate::poly::{Coeff, Monomial, Polynomial, PrimeField, Ring};

/// A finitely generated graded module, known through the dimensions of its
/// pieces and the action of the variables.
pub trait GradedModule: Send + Sync {
    fn ring(&self) -> &Ring;

    fn field(&self) -> PrimeField {
        *self.ring().field()
    }

    fn dim(&self, d: i64) -> usize;

    /// No piece below this degree is nonzero.
    fn min_degree(&self) -> i64;

    /// Multiplication by `X_k` from degree `d` to `d + 1`, as a
    /// `dim(d + 1) x dim(d)` matrix.
    fn mul_var(&self, d: i64, k: usize) -> Arc<Matrix>;

    /// Multiplication by a form `f` from degree `d` to `d + deg f`.
    fn mul_poly(&self, d: i64, f: &Polynomial) -> Matrix {
        let field = self.field();
        let df = f.degree().unwrap_or(0) as i64;
        let mut acc = Matrix::zeros(self.dim(d + df), self.dim(d), field);
        for (m, c) in f.terms() {
            let mut cur = Matrix::identity(self.dim(d), field);
            let mut deg = d;
            for k in 0..m.nvars() {
                for _ in 0..m.exp(k) {
                    cur = self.mul_var(deg, k).mul(&cur);
                    deg += 1;
                }
            }
            add_scaled(&mut acc, &cur, *c);
        }
        acc
    }
}

fn add_scaled(acc: &mut Matrix, m: &Matrix, c: Coeff) {
    let f = acc.field();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if v != 0 {
                acc.add_to(i, j, f.mul(v, c));
            }
        }
    }
}

/// Standard monomials of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree: i64,
    /// Sorted increasingly in the ring order.
    pub monomials: Vec<Monomial>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }
}

/// Degree-`μ` monomials outside `in(I)`.
pub fn standard_monomials(gb: &GroebnerBasis, mu: i64) -> GradedBasis {
    let n = gb.ring().nvars();
    let order = gb.ring().order();
    let mut monomials: Vec<Monomial> = if mu < 0 {
        Vec::new()
    } else {
        Monomial::all_of_degree(n, mu as u32)
            .into_iter()
            .filter(|m| !gb.is_leading_multiple(m))
            .collect()
    };
    monomials.sort_by(|a, b| order.cmp(a, b));
    GradedBasis {
        degree: mu,
        monomials,
    }
}

/// Normal forms of all monomials of one degree, as sparse vectors over the
/// standard monomials of that degree.
struct DegreeTable {
    basis: GradedBasis,
    nf: HashMap<Monomial, Vec<(usize, Coeff)>>,
}

impl DegreeTable {
    fn build(gb: &GroebnerBasis, d: u32) -> DegreeTable {
        let ring = gb.ring();
        let field = *ring.field();
        let order = ring.order();
        let basis = standard_monomials(gb, d as i64);
        let position: HashMap<&Monomial, usize> =
            basis.monomials.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut all = Monomial::all_of_degree(ring.nvars(), d);
        all.sort_by(|a, b| order.cmp(a, b));
        let mut nf: HashMap<Monomial, Vec<(usize, Coeff)>> = HashMap::with_capacity(all.len());
        let mut dense = vec![0 as Coeff; basis.dim()];
        for u in all {
            if let Some(&k) = position.get(&u) {
                nf.insert(u, vec![(k, 1)]);
                continue;
            }
            let g = gb
                .elements()
                .iter()
                .find(|g| g.lm().divides(&u))
                .expect("non-standard monomial has a reducer");
            // u ≡ -q * tail(g); every tail term is smaller than u
            let q = g.lm().quotient_of(&u);
            dense.iter_mut().for_each(|x| *x = 0);
            for (m, c) in &g.terms()[1..] {
                let w = &nf[&m.mul(&q)];
                let negc = field.neg(*c);
                for &(k, a) in w {
                    dense[k] = field.mul_add(dense[k], negc, a);
                }
            }
            let sparse = dense
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| (k, x))
                .collect();
            nf.insert(u, sparse);
        }
        DegreeTable { basis, nf }
    }
}

/// `A/I`, or its truncation `(A/I)_{>= t}`.
pub struct QuotientModule {
    gb: GroebnerBasis,
    truncation: i64,
    tables: Mutex<HashMap<u32, Arc<DegreeTable>>>,
    var_maps: Mutex<HashMap<(i64, usize), Arc<Matrix>>>,
}

impl QuotientModule {
    pub fn new(ideal: &Ideal) -> QuotientModule {
        Self::from_basis(ideal.groebner().clone(), 0)
    }

    /// `(A/I)_{>= t}`: the submodule generated by the degree-`t` piece.
    pub fn truncated(ideal: &Ideal, t: i64) -> QuotientModule {
        Self::from_basis(ideal.groebner().clone(), t.max(0))
    }

    pub fn from_basis(gb: GroebnerBasis, truncation: i64) -> QuotientModule {
        assert!(
            gb.ring().order().is_degree_compatible(),
            "graded pieces need a degree compatible order"
        );
        QuotientModule {
            gb,
            truncation,
            tables: Mutex::new(HashMap::new()),
            var_maps: Mutex::new(HashMap::new()),
        }
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    fn table(&self, d: u32) -> Arc<DegreeTable> {
        if let Some(t) = self.tables.lock().unwrap().get(&d) {
            return t.clone();
        }
        // built outside the lock; a concurrent duplicate build is harmless
        let t = Arc::new(DegreeTable::build(&self.gb, d));
        self.tables.lock().unwrap().entry(d).or_insert(t).clone()
    }

    /// Basis of the degree-`d` piece (empty below the truncation degree).
    pub fn basis(&self, d: i64) -> GradedBasis {
        if d < self.truncation {
            return GradedBasis {
                degree: d,
                monomials: Vec::new(),
            };
        }
        self.table(d as u32).basis.clone()
    }

    /// Coordinates of the class of a form of degree `d >= truncation`.
    pub fn coordinates(&self, f: &Polynomial) -> Vec<Coeff> {
        let Some(d) = f.degree() else {
            return Vec::new();
        };
        if (d as i64) < self.truncation {
            return Vec::new();
        }
        let field = self.field();
        let t = self.table(d);
        let mut v = vec![0; t.basis.dim()];
        for (m, c) in f.terms() {
            for &(k, a) in &t.nf[m] {
                v[k] = field.mul_add(v[k], *c, a);
            }
        }
        v
    }

    /// The form with coordinates `v` in degree `d`.
    pub fn element(&self, d: i64, v: &[Coeff]) -> Polynomial {
        let basis = self.basis(d);
        let terms = basis
            .monomials
            .iter()
            .zip(v)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        Polynomial::from_terms(self.ring(), terms)
    }
}

impl GradedModule for QuotientModule {
    fn ring(&self) -> &Ring {
        self.gb.ring()
    }

    fn dim(&self, d: i64) -> usize {
        if d < self.truncation {
            0
        } else {
            self.table(d as u32).basis.dim()
        }
    }

    fn min_degree(&self) -> i64 {
        self.truncation
    }

    fn mul_var(&self, d: i64, k: usize) -> Arc<Matrix> {
        if let Some(m) = self.var_maps.lock().unwrap().get(&(d, k)) {
            return m.clone();
        }
        let x = Polynomial::var(self.ring(), k);
        let m = Arc::new(self.mul_poly(d, &x));
        self.var_maps.lock().unwrap().insert((d, k), m.clone());
        m
    }

    /// Column `j` is the normal form of `f` times the `j`-th standard
    /// monomial.
    fn mul_poly(&self, d: i64, f: &Polynomial) -> Matrix {
        let field = self.field();
        let df = f.degree().unwrap_or(0) as i64;
        let rows = self.dim(d + df);
        let cols = self.dim(d);
        let mut out = Matrix::zeros(rows, cols, field);
        if rows == 0 || cols == 0 || f.is_zero() {
            return out;
        }
        let src = self.table(d as u32);
        let dst = self.table((d + df) as u32);
        for (j, b) in src.basis.monomials.iter().enumerate() {
            for (m, c) in f.terms() {
                for &(i, a) in &dst.nf[&m.mul(b)] {
                    out.add_to(i, j, field.mul(*c, a));
                }
            }
        }
        out
    }
}

/// `(h × ·): (A/I)_μ -> (A/I)_{μ + deg h}`.
pub fn multiplication_map(h: &Polynomial, module: &QuotientModule, mu: i64) -> Matrix {
    module.mul_poly(mu, h)
}

/// Kernel of multiplication by a form `l` on a graded module, `0 :_M l`.
/// Each piece is stored as an echelon basis of a subspace of `M_d`.
pub struct KernelModule<'a, M: GradedModule> {
    parent: &'a M,
    form: Polynomial,
    pieces: Mutex<HashMap<i64, Arc<EchelonBasis>>>,
}

impl<'a, M: GradedModule> KernelModule<'a, M> {
    pub fn new(parent: &'a M, form: Polynomial) -> Self {
        KernelModule {
            parent,
            form,
            pieces: Mutex::new(HashMap::new()),
        }
    }

    pub fn piece(&self, d: i64) -> Arc<EchelonBasis> {
        if let Some(p) = self.pieces.lock().unwrap().get(&d) {
            return p.clone();
        }
        let map = self.parent.mul_poly(d, &self.form);
        let mut e = EchelonBasis::new(self.parent.dim(d), self.field());
        for v in map.kernel() {
            e.insert(&v);
        }
        let e = Arc::new(e);
        self.pieces.lock().unwrap().insert(d, e.clone());
        e
    }
}

impl<M: GradedModule> GradedModule for KernelModule<'_, M> {
    fn ring(&self) -> &Ring {
        self.parent.ring()
    }

    fn dim(&self, d: i64) -> usize {
        self.piece(d).rank()
    }

    fn min_degree(&self) -> i64 {
        self.parent.min_degree()
    }

    fn mul_var(&self, d: i64, k: usize) -> Arc<Matrix> {
        let src = self.piece(d);
        let dst = self.piece(d + 1);
        let act = self.parent.mul_var(d, k);
        let mut out = Matrix::zeros(dst.rank(), src.rank(), self.field());
        for (j, v) in src.rows().iter().enumerate() {
            let w = act.mul_vec(v);
            let coords = dst
                .coordinates(&w)
                .expect("the kernel of a module map is a submodule");
            for (i, c) in coords.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Arc::new(out)
    }
}

/// All `i`-element subsets of `0..m`, as sorted index vectors in
/// lexicographic order.
pub fn subsets(m: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..=m - left {
            cur.push(k);
            rec(k + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if i <= m {
        rec(0, m, i, &mut Vec::new(), &mut out);
    }
    out
}

/// Koszul complexes `K_•(z; M)` and `K^•(z; M)` of a sequence of forms.
pub struct KoszulComplex<'a, M: GradedModule> {
    module: &'a M,
    z: Vec<Polynomial>,
    degs: Vec<i64>,
    ranks_hom: Mutex<HashMap<(usize, i64), usize>>,
    ranks_coh: Mutex<HashMap<(usize, i64), usize>>,
}

impl<'a, M: GradedModule> KoszulComplex<'a, M> {
    pub fn new(module: &'a M, z: Vec<Polynomial>) -> Self {
        let degs = z.iter().map(|f| f.degree().unwrap_or(0) as i64).collect();
        KoszulComplex {
            module,
            z,
            degs,
            ranks_hom: Mutex::new(HashMap::new()),
            ranks_coh: Mutex::new(HashMap::new()),
        }
    }

    /// Koszul complex on all variables.
    pub fn on_variables(module: &'a M) -> Self {
        let ring = module.ring();
        let z = (0..ring.nvars()).map(|k| Polynomial::var(ring, k)).collect();
        Self::new(module, z)
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degs
    }

    fn deg_of(&self, s: &[usize]) -> i64 {
        s.iter().map(|&k| self.degs[k]).sum()
    }

    fn mul(&self, d: i64, k: usize) -> Arc<Matrix> {
        if self.degs[k] == 1 && self.z[k].len() == 1 {
            if let Some(var) = self.z[k].lm().support().next() {
                if self.z[k].lc() == 1 {
                    return self.module.mul_var(d, var);
                }
            }
        }
        Arc::new(self.module.mul_poly(d, &self.z[k]))
    }

    /// Blocks of `K_i` in degree `μ`: `(S, offset, dim M_{μ - deg z_S})`.
    fn chain_blocks(&self, i: usize, mu: i64) -> (Vec<(Vec<usize>, usize, usize)>, usize) {
        let mut off = 0;
        let mut out = Vec::new();
        for s in subsets(self.len(), i) {
            let dim = self.module.dim(mu - self.deg_of(&s));
            out.push((s, off, dim));
            off += dim;
        }
        (out, off)
    }

    /// Blocks of `K^i` in degree `ν`: `(S, offset, dim M_{ν + deg z_S})`.
    fn cochain_blocks(&self, i: usize, nu: i64) -> (Vec<(Vec<usize>, usize, usize)>, usize) {
        let mut off = 0;
        let mut out = Vec::new();
        for s in subsets(self.len(), i) {
            let dim = self.module.dim(nu + self.deg_of(&s));
            out.push((s, off, dim));
            off += dim;
        }
        (out, off)
    }

    pub fn chain_dim(&self, i: usize, mu: i64) -> usize {
        if i > self.len() {
            return 0;
        }
        self.chain_blocks(i, mu).1
    }

    pub fn cochain_dim(&self, i: usize, nu: i64) -> usize {
        if i > self.len() {
            return 0;
        }
        self.cochain_blocks(i, nu).1
    }

    /// `d_i: K_i(μ) -> K_{i-1}(μ)`.
    pub fn differential(&self, i: usize, mu: i64) -> Matrix {
        let field = self.module.field();
        let (src, ncols) = self.chain_blocks(i, mu);
        let (dst, nrows) = self.chain_blocks(i - 1, mu);
        let index: HashMap<&Vec<usize>, (usize, usize)> =
            dst.iter().map(|(s, off, dim)| (s, (*off, *dim))).collect();
        let mut out = Matrix::zeros(nrows, ncols, field);
        for (s, off, dim) in &src {
            if *dim == 0 {
                continue;
            }
            let d = mu - self.deg_of(s);
            for (pos, &k) in s.iter().enumerate() {
                let mut t = s.clone();
                t.remove(pos);
                let (toff, tdim) = index[&t];
                if tdim == 0 {
                    continue;
                }
                let m = self.mul(d, k);
                let sign = if pos % 2 == 0 { 1 } else { field.neg(1) };
                for r in 0..tdim {
                    for c in 0..*dim {
                        let v = m.get(r, c);
                        if v != 0 {
                            out.set(toff + r, off + c, field.mul(v, sign));
                        }
                    }
                }
            }
        }
        out
    }

    /// `d^i: K^i_ν -> K^{i+1}_ν`.
    pub fn codifferential(&self, i: usize, nu: i64) -> Matrix {
        let field = self.module.field();
        let (src, ncols) = self.cochain_blocks(i, nu);
        let (dst, nrows) = self.cochain_blocks(i + 1, nu);
        let index: HashMap<&Vec<usize>, (usize, usize)> =
            dst.iter().map(|(s, off, dim)| (s, (*off, *dim))).collect();
        let mut out = Matrix::zeros(nrows, ncols, field);
        for (s, off, dim) in &src {
            if *dim == 0 {
                continue;
            }
            let d = nu + self.deg_of(s);
            for j in 0..self.len() {
                if s.contains(&j) {
                    continue;
                }
                let before = s.iter().filter(|&&x| x < j).count();
                let mut t = s.clone();
                t.insert(before, j);
                let (toff, tdim) = index[&t];
                if tdim == 0 {
                    continue;
                }
                let m = self.mul(d, j);
                let sign = if before % 2 == 0 { 1 } else { field.neg(1) };
                for r in 0..tdim {
                    for c in 0..*dim {
                        let v = m.get(r, c);
                        if v != 0 {
                            out.set(toff + r, off + c, field.mul(v, sign));
                        }
                    }
                }
            }
        }
        out
    }

    fn rank_hom(&self, i: usize, mu: i64) -> usize {
        if i == 0 || i > self.len() {
            return 0;
        }
        if let Some(&r) = self.ranks_hom.lock().unwrap().get(&(i, mu)) {
            return r;
        }
        let r = if self.chain_dim(i, mu) == 0 || self.chain_dim(i - 1, mu) == 0 {
            0
        } else {
            self.differential(i, mu).rank()
        };
        self.ranks_hom.lock().unwrap().insert((i, mu), r);
        r
    }

    fn rank_coh(&self, i: usize, nu: i64) -> usize {
        if i >= self.len() {
            return 0;
        }
        if let Some(&r) = self.ranks_coh.lock().unwrap().get(&(i, nu)) {
            return r;
        }
        let r = if self.cochain_dim(i, nu) == 0 || self.cochain_dim(i + 1, nu) == 0 {
            0
        } else {
            self.codifferential(i, nu).rank()
        };
        self.ranks_coh.lock().unwrap().insert((i, nu), r);
        r
    }

    /// `dim H_i(z; M)_μ`.
    pub fn homology_dim(&self, i: usize, mu: i64) -> usize {
        if i > self.len() {
            return 0;
        }
        self.chain_dim(i, mu) - self.rank_hom(i, mu) - self.rank_hom(i + 1, mu)
    }

    /// `dim H^i(z; M)_ν`.
    pub fn cohomology_dim(&self, i: usize, nu: i64) -> usize {
        if i > self.len() {
            return 0;
        }
        let incoming = if i == 0 { 0 } else { self.rank_coh(i - 1, nu) };
        self.cochain_dim(i, nu) - self.rank_coh(i, nu) - incoming
    }

    /// `d_{i-1} ∘ d_i = 0` in degree `μ`.
    pub fn check_homological(&self, i: usize, mu: i64) -> bool {
        if i < 2 || i > self.len() {
            return true;
        }
        self.differential(i - 1, mu).mul(&self.differential(i, mu)).is_zero()
    }

    /// `d^{i+1} ∘ d^i = 0` in degree `ν`.
    pub fn check_cohomological(&self, i: usize, nu: i64) -> bool {
        if i + 1 >= self.len() {
            return true;
        }
        self.codifferential(i + 1, nu)
            .mul(&self.codifferential(i, nu))
            .is_zero()
    }
}

/// Dimensions of `H^0, H^1, H^2` of `K^•(f, g; A/I)` in degree `μ`.
pub fn koszul_pair_piece(
    f: &Polynomial,
    g: &Polynomial,
    module: &QuotientModule,
    mu: i64,
) -> [usize; 3] {
    let k = KoszulComplex::new(module, vec![f.clone(), g.clone()]);
    [
        k.cohomology_dim(0, mu),
        k.cohomology_dim(1, mu),
        k.cohomology_dim(2, mu),
    ]
}

/// `dim H_i(X_0..X_n; A/I)_μ = dim Tor_i(A/I, k)_μ`.
pub fn koszul_homology_dim(ideal: &Ideal, i: usize, mu: i64) -> usize {
    let m = QuotientModule::new(ideal);
    KoszulComplex::on_variables(&m).homology_dim(i, mu)
}
