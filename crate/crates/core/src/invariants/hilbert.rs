use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;

/// Hilbert function, series and polynomial of `A/I`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HilbertData {
    /// `H(μ)` for `0 <= μ <= reg_H + n + 2`.
    pub values: BTreeMap<i64, u64>,
    /// Numerator of the Hilbert series over `(1 - t)^(n+1)`.
    pub series_numerator: Vec<i64>,
    /// Numerator after cancelling `(1 - t)` factors, over `(1 - t)^(dim_proj + 1)`.
    pub reduced_numerator: Vec<i64>,
    /// Coefficients of `P(μ)` in increasing powers of `μ`.
    #[serde(serialize_with = "ser_rationals")]
    pub polynomial: Vec<Rational64>,
    /// Last degree where `H` and `P` differ (`H(μ) = 0` for `μ < 0`).
    pub reg_h: i64,
    pub scheme_degree: i64,
    pub dim_proj: i64,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&r.to_string())?;
    }
    seq.end()
}

/// Coefficients (increasing powers of `x`) of `C(x + k, k)` as a polynomial
/// in `x`.
fn binomial_polynomial(k: usize) -> Vec<Rational64> {
    // (x + 1)(x + 2)..(x + k) / k!
    let mut p = vec![Rational64::one()];
    for j in 1..=k as i64 {
        let mut next = vec![Rational64::zero(); p.len() + 1];
        for (e, c) in p.iter().enumerate() {
            next[e + 1] += c;
            next[e] += c * Rational64::from_integer(j);
        }
        p = next.into_iter().map(|c| c / Rational64::from_integer(j)).collect();
    }
    p
}

/// `p(x - s)` for a polynomial given by coefficients.
fn shift(p: &[Rational64], s: i64) -> Vec<Rational64> {
    // Horner in (x - s)
    let mut out = vec![Rational64::zero(); p.len()];
    for c in p.iter().rev() {
        // out = out * (x - s) + c
        let mut next = vec![Rational64::zero(); out.len()];
        for (e, a) in out.iter().enumerate() {
            if e + 1 < next.len() {
                next[e + 1] += a;
            }
            next[e] -= a * Rational64::from_integer(s);
        }
        next[0] += c;
        out = next;
    }
    out
}

pub fn evaluate(p: &[Rational64], x: i64) -> Rational64 {
    let x = Rational64::from_integer(x);
    p.iter().rev().fold(Rational64::zero(), |acc, c| acc * x + c)
}

/// Divide by `(1 - t)` as long as the value at `t = 1` vanishes.
fn cancel_one_minus_t(mut q: Vec<i64>) -> (Vec<i64>, usize) {
    let mut cancelled = 0;
    while !q.is_empty() && q.iter().sum::<i64>() == 0 {
        // q = (1 - t) r  =>  r_j = q_0 + .. + q_j
        let mut r = Vec::with_capacity(q.len() - 1);
        let mut acc = 0;
        for &c in &q[..q.len() - 1] {
            acc += c;
            r.push(acc);
        }
        q = r;
        while q.last() == Some(&0) {
            q.pop();
        }
        cancelled += 1;
    }
    (q, cancelled)
}

/// `H(μ)` from a reduced numerator `Q` over `(1 - t)^k`.
fn hilbert_value(q: &[i64], k: usize, mu: i64) -> i64 {
    if mu < 0 {
        return 0;
    }
    if k == 0 {
        return q.get(mu as usize).copied().unwrap_or(0);
    }
    let mut total: i64 = 0;
    for (j, &c) in q.iter().enumerate() {
        let j = j as i64;
        if j > mu {
            break;
        }
        // C(mu - j + k - 1, k - 1)
        let a = (mu - j) as u64 + k as u64 - 1;
        total += c * crate::poly::monomial::binomial(a, k as u64 - 1) as i64;
    }
    total
}

pub fn hilbert_data(ideal: &Ideal) -> Result<HilbertData> {
    if ideal.is_unit() {
        return Err(Error::ImproperIdeal("A/I = 0 has no Hilbert polynomial".into()));
    }
    let n1 = ideal.ring().nvars();
    let numerator = ideal.initial_ideal().hilbert_numerator();
    let (q, cancelled) = cancel_one_minus_t(numerator.clone());
    let k = n1 - cancelled;
    let dim_proj = k as i64 - 1;
    debug_assert_eq!(k, ideal.krull_dim());

    // P(μ) = sum_j q_j C(μ - j + k - 1, k - 1)
    let mut poly = vec![Rational64::zero(); k.max(1)];
    if k > 0 {
        let base = binomial_polynomial(k - 1);
        for (j, &c) in q.iter().enumerate() {
            let shifted = shift(&base, j as i64);
            for (e, a) in shifted.iter().enumerate() {
                poly[e] += a * Rational64::from_integer(c);
            }
        }
    }
    while poly.len() > 1 && poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    let scheme_degree = if k == 0 { 0 } else { q.iter().sum() };

    let top = q.len() as i64;
    let mut reg_h = None;
    let mut mu = top + 1;
    while mu >= -(top + n1 as i64 + 3) {
        let h = hilbert_value(&q, k, mu);
        if Rational64::from_integer(h) != evaluate(&poly, mu) {
            reg_h = Some(mu);
            break;
        }
        mu -= 1;
    }
    let reg_h = reg_h.ok_or_else(|| {
        Error::defect("Hilbert function agrees with its polynomial in every scanned degree")
    })?;
    let values = (0..=(reg_h.max(0) + n1 as i64 + 2))
        .map(|mu| (mu, hilbert_value(&q, k, mu) as u64))
        .collect();
    Ok(HilbertData {
        values,
        series_numerator: numerator,
        reduced_numerator: q,
        polynomial: poly,
        reg_h,
        scheme_degree,
        dim_proj,
    })
}

impl HilbertData {
    /// `H(μ)` for any `μ`, from the series.
    pub fn value(&self, mu: i64) -> u64 {
        hilbert_value(&self.reduced_numerator, (self.dim_proj + 1) as usize, mu) as u64
    }

    pub fn polynomial_value(&self, mu: i64) -> Rational64 {
        evaluate(&self.polynomial, mu)
    }

    /// `P` written in the variable `μ`, e.g. `3μ + 1`.
    pub fn polynomial_string(&self) -> String {
        PolyDisplay(&self.polynomial).to_string()
    }
}

struct PolyDisplay<'a>(&'a [Rational64]);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < Rational64::zero();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef = if a.is_integer() { a.to_integer().to_string() } else { format!("({a})") };
            match e {
                0 => write!(f, "{coef}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coef}")?;
                    }
                    write!(f, "μ")?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    #[test]
    fn embedded_line() {
        let r = Ring::with_vars(&["x", "y", "z"]);
        let h = hilbert_data(&Ideal::parse(&r, &["x^2", "x*y"])).unwrap();
        assert_eq!(h.series_numerator, vec![1, 0, -2, 1]);
        for mu in 1..8 {
            assert_eq!(h.value(mu), mu as u64 + 2);
        }
        assert_eq!(h.polynomial_string(), "μ + 2");
        assert_eq!(h.scheme_degree, 1);
        assert_eq!(h.dim_proj, 1);
        assert_eq!(h.reg_h, 0);
    }

    #[test]
    fn twisted_cubic() {
        let r = Ring::with_vars(&["x", "y", "z", "w"]);
        let i = Ideal::parse(&r, &["y^2 - x*z", "z^2 - y*w", "y*z - x*w"]);
        let h = hilbert_data(&i).unwrap();
        assert_eq!(h.series_numerator, vec![1, 0, -3, 2]);
        assert_eq!(h.polynomial_string(), "3μ + 1");
        assert_eq!(h.scheme_degree, 3);
        assert_eq!(h.dim_proj, 1);
        // H(0) = 1 = P(0); H(-1) = 0 != -2
        assert_eq!(h.reg_h, -1);
    }

    #[test]
    fn zero_ideal_matches_closed_form() {
        let r = Ring::numbered(4);
        let h = hilbert_data(&Ideal::zero(&r)).unwrap();
        for mu in 0..10 {
            assert_eq!(h.value(mu), crate::poly::monomial::binomial(mu as u64 + 3, 3));
        }
        // C(μ + 3, 3) vanishes at -1, -2, -3 and not at -4
        assert_eq!(h.reg_h, -4);
        assert_eq!(h.scheme_degree, 1);
        assert_eq!(h.dim_proj, 3);
    }

    #[test]
    fn finite_length_quotient() {
        let r = Ring::with_vars(&["x", "y"]);
        let h = hilbert_data(&Ideal::parse(&r, &["x^2", "y^3"])).unwrap();
        assert_eq!(h.dim_proj, -1);
        assert_eq!(h.scheme_degree, 0);
        assert_eq!(h.polynomial_string(), "0");
        assert_eq!(h.reg_h, 3);
        assert_eq!((0..5).map(|m| h.value(m)).collect::<Vec<_>>(), vec![1, 2, 2, 1, 0]);
    }

    #[test]
    fn unit_ideal_is_rejected() {
        let r = Ring::with_vars(&["x"]);
        let one = Ideal::new(&r, vec![crate::poly::Polynomial::one(&r)]).unwrap();
        assert!(hilbert_data(&one).is_err());
    }
}
