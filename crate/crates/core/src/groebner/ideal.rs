use std::fmt;
use std::sync::OnceLock;

use super::basis::GroebnerBasis;
use crate::error::{Error, Result};
use crate::monomial_ideal::MonomialIdeal;
use crate::poly::{Monomial, Polynomial, Ring};

/// A homogeneous ideal given by generators of non-increasing degree. The
/// reduced Gröbner basis is computed on first use and cached.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl Ideal {
    /// Zero generators are dropped; inhomogeneous ones are rejected.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        let mut kept = Vec::with_capacity(gens.len());
        for (k, g) in gens.into_iter().enumerate() {
            if !g.ring().same(ring) {
                return Err(Error::usage(format!("generator {} lives in another ring", k + 1)));
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::usage(format!("generator {} ({g}) is not homogeneous", k + 1)));
            }
            kept.push(g);
        }
        // stable: equal degrees keep the caller's order
        kept.sort_by_key(|a| std::cmp::Reverse(a.degree()));
        Ok(Ideal {
            ring: ring.clone(),
            gens: kept,
            gb: OnceLock::new(),
        })
    }

    /// Parse generator expressions; panics on malformed input.
    pub fn parse(ring: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(ring, ring.polys(gens)).expect("homogeneous generators")
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).expect("empty generator list")
    }

    /// The irrelevant ideal `(X_0, .., X_n)`.
    pub fn maximal(ring: &Ring) -> Ideal {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        Ideal::new(ring, gens).expect("variables are homogeneous")
    }

    pub fn from_monomials(ring: &Ring, gens: &[Monomial]) -> Ideal {
        let gens = gens
            .iter()
            .map(|m| Polynomial::monomial(ring, m.clone(), 1))
            .collect();
        Ideal::new(ring, gens).expect("monomials are homogeneous")
    }

    /// Ideal whose generators already form its reduced Gröbner basis.
    pub(crate) fn from_basis(gb: GroebnerBasis) -> Ideal {
        let ring = gb.ring().clone();
        let mut gens = gb.elements().to_vec();
        gens.sort_by_key(|a| std::cmp::Reverse(a.degree()));
        let cell = OnceLock::new();
        let _ = cell.set(gb);
        Ideal {
            ring,
            gens,
            gb: cell,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Generator degrees `d_1 >= .. >= d_s`.
    pub fn degrees(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.degree().unwrap()).collect()
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb
            .get_or_init(|| GroebnerBasis::compute(&self.ring, &self.gens))
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        self.groebner().initial_ideal()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.groebner().contains(f)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.groebner().normal_form(f)
    }

    /// Krull dimension of `A/I`; `-1`-free, so the unit ideal gives 0.
    pub fn krull_dim(&self) -> usize {
        self.initial_ideal().krull_dim()
    }

    /// Codimension (height). The zero ideal has codimension 0.
    pub fn codim(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::ImproperIdeal("the unit ideal has no codimension".into()));
        }
        Ok(self.ring.nvars() - self.krull_dim())
    }

    /// Dimension of the projective scheme, `-1` when it is empty.
    pub fn dim_proj(&self) -> Result<i64> {
        Ok(self.ring.nvars() as i64 - self.codim()? as i64 - 1)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Product of two ideals.
    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f * g);
            }
        }
        Ideal::new(&self.ring, gens).expect("products of forms are forms")
    }

    /// Same ideal viewed in another ring with the same variables.
    pub fn with_ring(&self, ring: &Ring) -> Ideal {
        let gens = self.gens.iter().map(|g| g.with_ring(ring)).collect();
        Ideal::new(ring, gens).expect("same variables")
    }

    /// Minimal generators: drop generators lying in the ideal of the
    /// others (degree by degree, for a graded ideal this is minimal).
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = Vec::new();
        let mut gens = self.groebner().elements().to_vec();
        gens.sort_by_key(|a| a.degree());
        for g in gens {
            if out.is_empty() || !GroebnerBasis::compute(&self.ring, &out).contains(&g) {
                out.push(g);
            }
        }
        out.sort_by_key(|a| std::cmp::Reverse(a.degree()));
        out
    }
}

impl PartialEq for Ideal {
    /// Equality as ideals, through reduced Gröbner bases.
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.groebner() == other.groebner()
    }
}

impl Eq for Ideal {}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self} in {:?}", self.ring)
    }
}
