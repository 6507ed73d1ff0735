use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use super::field::Coeff;
use super::monomial::Monomial;
use super::ring::Ring;

/// A polynomial over a prime field: terms strictly descending in the ring's
/// monomial order, no zero coefficients, no repeated monomials.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), 1)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Coeff) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_multiple_of(ring.characteristic()) {
            Vec::new()
        } else {
            vec![(m, c % ring.characteristic())]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, Coeff)>) -> Self {
        let order = ring.order();
        let f = *ring.field();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % f.characteristic();
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Trusts that `terms` already satisfy the representation invariant.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading monomial; panics on zero.
    #[inline]
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    #[inline]
    pub fn lc(&self) -> Coeff {
        self.terms[0].1
    }

    /// Total degree (maximum over terms); `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        let order = self.ring.order();
        self.terms
            .binary_search_by(|(t, _)| order.cmp(m, t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn scale(&self, c: Coeff) -> Polynomial {
        let f = self.ring.field();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        self.scale(self.ring.field().inv(self.lc()))
    }

    /// `c * m * self`
    pub fn mul_term(&self, m: &Monomial, c: Coeff) -> Polynomial {
        let f = self.ring.field();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), f.mul(*a, c)))
                .collect(),
        }
    }

    /// `self - c * m * g`, merging sorted term lists. Multiplication by a
    /// monomial preserves the order, so the result stays sorted.
    pub fn sub_mul_term(&self, c: Coeff, m: &Monomial, g: &Polynomial) -> Polynomial {
        let f = *self.ring.field();
        let order = self.ring.order();
        let negc = f.neg(c);
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut it_a = self.terms.iter().peekable();
        let mut it_b = g.terms.iter().map(|(t, b)| (t.mul(m), f.mul(*b, negc))).peekable();
        loop {
            match (it_a.peek(), it_b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(it_a.next().unwrap().clone()),
                (None, Some(_)) => out.push(it_b.next().unwrap()),
                (Some((ma, _)), Some((mb, _))) => match order.cmp(ma, mb) {
                    Ordering::Greater => out.push(it_a.next().unwrap().clone()),
                    Ordering::Less => out.push(it_b.next().unwrap()),
                    Ordering::Equal => {
                        let (ma, ca) = it_a.next().unwrap();
                        let (_, cb) = it_b.next().unwrap();
                        let s = f.add(*ca, cb);
                        if s != 0 {
                            out.push((ma.clone(), s));
                        }
                    }
                },
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        assert!(self.ring.same(&other.ring), "polynomials over different rings");
        let one = Monomial::one(self.ring.nvars());
        let c = if negate_other { 1 } else { self.ring.field().neg(1) };
        self.sub_mul_term(c, &one, other)
    }

    /// Largest power of variable `i` dividing every term.
    pub fn var_valuation(&self, i: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(i)).min().unwrap_or(0)
    }

    /// Exact division by `x_i^k`; the caller checks divisibility.
    pub fn div_var_power(&self, i: usize, k: u16) -> Polynomial {
        let n = self.ring.nvars();
        let mut e = vec![0u16; n];
        e[i] = k;
        let d = Monomial::new(e);
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (d.quotient_of(m), *c))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let f = self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|(m, c)| {
                let mut e = m.exps().to_vec();
                let k = e[i];
                e[i] -= 1;
                (Monomial::new(e), f.mul(*c, f.from_u64(k as u64)))
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Move into another ring by mapping every monomial. The caller must
    /// ensure the map is injective on the support.
    pub fn map_monomials(&self, target: &Ring, map: impl Fn(&Monomial) -> Monomial) -> Polynomial {
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (map(m), *c)).collect(),
        )
    }

    /// Re-sort under another ring with the same variables (e.g. a different
    /// order).
    pub fn with_ring(&self, target: &Ring) -> Polynomial {
        assert_eq!(target.nvars(), self.ring.nvars());
        self.map_monomials(target, |m| m.clone())
    }

    /// Exact quotient `self / h`, or `None` if `h` does not divide `self`.
    pub fn exact_div(&self, h: &Polynomial) -> Option<Polynomial> {
        assert!(!h.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Polynomial::zero(&self.ring));
        }
        // Only valid for degree compatible orders or when leading terms
        // divide; division on leading terms works for any monomial order.
        let f = *self.ring.field();
        let inv = f.inv(h.lc());
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while !rem.is_zero() {
            if !h.lm().divides(rem.lm()) {
                return None;
            }
            let m = h.lm().quotient_of(rem.lm());
            let c = f.mul(rem.lc(), inv);
            rem = rem.sub_mul_term(c, &m, h);
            quot.push((m, c));
        }
        Some(Polynomial::from_terms(&self.ring, quot))
    }

    /// Random homogeneous form of degree `d` with dense uniform coefficients.
    pub fn random_form<R: Rng + ?Sized>(ring: &Ring, d: u32, rng: &mut R) -> Polynomial {
        let p = ring.characteristic();
        let terms = Monomial::all_of_degree(ring.nvars(), d)
            .into_iter()
            .map(|m| (m, rng.gen_range(0..p)))
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    /// Random linear combination `sum c_i g_i` with `c_i` random forms of
    /// degree `d - deg g_i` (skipping generators of larger degree).
    pub fn random_combination<R: Rng + ?Sized>(
        ring: &Ring,
        gens: &[Polynomial],
        d: u32,
        rng: &mut R,
    ) -> Polynomial {
        let mut acc = Polynomial::zero(ring);
        for g in gens {
            let Some(dg) = g.degree() else { continue };
            if dg > d {
                continue;
            }
            let c = Polynomial::random_form(ring, d - dg, rng);
            acc = &acc + &(&c * g);
        }
        acc
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.field().neg(1))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.ring.same(&rhs.ring), "polynomials over different rings");
        let f = *self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                terms.push((ma.mul(mb), f.mul(*ca, *cb)));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub(crate) fn fmt_monomial(m: &Monomial, names: &[String]) -> String {
    if m.is_one() {
        return "1".into();
    }
    m.exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                names[i].clone()
            } else {
                format!("{}^{}", names[i], e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.ring.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let c = field.symmetric(*c);
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                f.write_str(&fmt_monomial(m, self.ring.names()))?;
            } else {
                write!(f, "{abs}*{}", fmt_monomial(m, self.ring.names()))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
