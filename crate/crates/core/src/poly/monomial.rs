use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub type Exponent = u16;

/// A monomial `X_0^e_0 ... X_n^e_n` with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<Exponent>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn new(exps: Vec<Exponent>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn from_slice(exps: &[u32]) -> Result<Self> {
        let exps = exps
            .iter()
            .map(|&e| {
                Exponent::try_from(e).map_err(|_| Error::usage(format!("exponent {e} overflows")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(exps))
    }

    #[inline]
    pub fn exps(&self) -> &[Exponent] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn exp(&self, i: usize) -> Exponent {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b)?);
        }
        Some(Monomial {
            exps,
            degree: self.degree + other.degree,
        })
    }

    /// Panics on exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other)
            .expect("monomial exponent overflow")
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] = m.exps[i].checked_add(1).expect("monomial exponent overflow");
        m.degree += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Support as a bitmask (variables beyond 63 are not supported).
    pub fn support_mask(&self) -> u64 {
        self.support().fold(0, |acc, i| acc | (1 << i))
    }

    /// Colon `self : other` for monomials, i.e. `self / gcd(self, other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    /// Reinterpret in a ring with more variables; `offset` new variables are
    /// prepended and the rest appended.
    pub fn embed(&self, offset: usize, nvars: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[offset..offset + self.nvars()].copy_from_slice(&self.exps);
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// Drop variables outside `offset..offset+len`. The caller guarantees
    /// they carry exponent zero.
    pub fn restrict(&self, offset: usize, len: usize) -> Monomial {
        Monomial::new(self.exps[offset..offset + len].to_vec())
    }

    /// All monomials of degree `d` in `nvars` variables, in lexicographically
    /// decreasing exponent order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0 as Exponent; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<Exponent>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left as Exponent;
                out.push(Monomial::new(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as Exponent;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::new(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    pub fn count_of_degree(nvars: usize, d: u32) -> u64 {
        if nvars == 0 {
            return (d == 0) as u64;
        }
        binomial(d as u64 + nvars as u64 - 1, nvars as u64 - 1)
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// Lexicographic comparison of exponent vectors, used where a fixed total
/// order is needed independently of the ring's monomial order.
pub fn cmp_lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.exps.cmp(&b.exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_is_cached_sum() {
        let m = Monomial::new(vec![2, 0, 3]);
        assert_eq!(m.degree(), 5);
        let n = m.mul(&Monomial::var(3, 1));
        assert_eq!(n.degree(), 6);
        assert_eq!(n.exps(), &[2, 1, 3]);
    }

    #[test]
    fn overflow_is_detected() {
        let big = Monomial::new(vec![u16::MAX, 0]);
        assert!(big.checked_mul(&Monomial::var(2, 0)).is_none());
    }

    #[test]
    fn enumerates_degree_pieces() {
        let all = Monomial::all_of_degree(3, 2);
        assert_eq!(all.len(), 6);
        assert_eq!(Monomial::count_of_degree(3, 2), 6);
        assert_eq!(Monomial::count_of_degree(4, 0), 1);
        assert_eq!(Monomial::all_of_degree(4, 3).len() as u64, Monomial::count_of_degree(4, 3));
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::new(vec![1, 2, 0]);
        let b = Monomial::new(vec![0, 1, 1]);
        assert_eq!(a.lcm(&b).exps(), &[1, 2, 1]);
        assert!(!a.divides(&b));
        assert!(b.divides(&a.lcm(&b)));
        assert_eq!(b.quotient_of(&a.lcm(&b)).exps(), &[1, 1, 0]);
        assert!(!a.is_coprime(&b));
    }
}
