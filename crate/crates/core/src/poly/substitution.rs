//! Invertible linear changes of coordinates.

use rand::Rng;

use super::field::Coeff;
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::{streams, Ring};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

const MAX_DRAWS: usize = 100;

/// `X_i -> sum_j m[i][j] X_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubstitution {
    matrix: Matrix,
}

impl LinearSubstitution {
    pub fn identity(ring: &Ring) -> Self {
        LinearSubstitution {
            matrix: Matrix::identity(ring.nvars(), *ring.field()),
        }
    }

    pub fn from_matrix(ring: &Ring, matrix: Matrix) -> Result<Self> {
        let n = ring.nvars();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::usage(format!(
                "substitution matrix must be {n}x{n}, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.rank() != n {
            return Err(Error::usage("substitution matrix is not invertible"));
        }
        Ok(LinearSubstitution { matrix })
    }

    /// Uniformly random invertible substitution, deterministic in `seed`.
    pub fn random(ring: &Ring, seed: u64) -> Result<Self> {
        let n = ring.nvars();
        let p = ring.characteristic();
        let mut rng = ring.with_seed(seed).rng(streams::COORDINATE_CHANGE);
        for _ in 0..MAX_DRAWS {
            let mut m = Matrix::zeros(n, n, *ring.field());
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, rng.gen_range(0..p));
                }
            }
            if m.rank() == n {
                return Ok(LinearSubstitution { matrix: m });
            }
        }
        Err(Error::Genericity(format!(
            "no invertible {n}x{n} matrix in {MAX_DRAWS} draws over F_{p}"
        )))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> LinearSubstitution {
        LinearSubstitution {
            matrix: self.matrix.inverse().expect("substitution is invertible"),
        }
    }

    /// Image of `X_i`.
    pub fn image_of_var(&self, ring: &Ring, i: usize) -> Polynomial {
        let n = ring.nvars();
        let terms: Vec<(Monomial, Coeff)> = (0..n)
            .map(|j| (Monomial::var(n, j), self.matrix.get(i, j)))
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    /// `f(X) -> f(M X)`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let ring = f.ring();
        let n = ring.nvars();
        let images: Vec<Polynomial> = (0..n).map(|i| self.image_of_var(ring, i)).collect();
        // powers[i][e] = images[i]^e, filled lazily
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|_| vec![Polynomial::one(ring)])
            .collect();
        let mut acc = Polynomial::zero(ring);
        for (m, c) in f.terms() {
            let mut t = Polynomial::monomial(ring, Monomial::one(n), *c);
            for i in 0..n {
                let e = m.exp(i) as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Composition: applying the result equals applying `self`, then `other`.
    pub fn then(&self, other: &LinearSubstitution) -> LinearSubstitution {
        // f(X) -> f(A X) -> f(A B X)
        LinearSubstitution {
            matrix: self.matrix.mul(&other.matrix),
        }
    }
}
