use std::collections::BTreeMap;
use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{GradedModule, KoszulComplex, QuotientModule};
use crate::groebner::Ideal;

/// Graded Betti numbers `(i, μ) -> dim Tor_i(M, k)_μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// Serialized as `[i, μ, b_{i,μ}]` triples.
    #[serde(serialize_with = "ser_entries")]
    pub entries: BTreeMap<(usize, i64), u64>,
    /// Every scan stopped at `ceiling + i` in homological degree `i`.
    pub ceiling: i64,
    /// Set when the ceiling is below the proven bound, so the table may be
    /// incomplete.
    pub truncated: bool,
}

fn ser_entries<S: serde::Serializer>(
    e: &BTreeMap<(usize, i64), u64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(e.iter().map(|(&(i, mu), &v)| (i, mu, v)))
}

impl BettiTable {
    pub fn get(&self, i: usize, mu: i64) -> u64 {
        self.entries.get(&(i, mu)).copied().unwrap_or(0)
    }

    /// `b_i`: the largest `μ` with a nonzero entry, `None` for `-∞`.
    pub fn b(&self, i: usize) -> Option<i64> {
        self.entries
            .iter()
            .filter(|((j, _), &v)| *j == i && v > 0)
            .map(|((_, mu), _)| *mu)
            .max()
    }

    /// Betti table with rows `μ - i` and columns `i`.
    pub fn render(&self) -> String {
        let Some(len) = self.length() else {
            return "zero\n".into();
        };
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.entries.keys().map(|&(i, mu)| mu - i as i64).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let mut out = String::from("     ");
        for i in 0..=len {
            let _ = write!(out, "{i:>6}");
        }
        out.push('\n');
        for j in rows {
            let _ = write!(out, "{j:>4}:");
            for i in 0..=len {
                match self.get(i, j + i as i64) {
                    0 => out.push_str("     ."),
                    v => {
                        let _ = write!(out, "{v:>6}");
                    }
                }
            }
            out.push('\n');
        }
        out
    }

    /// Homological length of the table.
    pub fn length(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    /// `max_i (b_i - i)`, `None` for the zero module.
    pub fn regularity(&self) -> Result<Option<i64>> {
        if self.truncated {
            return Err(Error::Truncated(format!(
                "Betti table computed with ceiling {} below the certified bound",
                self.ceiling
            )));
        }
        Ok(self.entries.keys().map(|&(i, mu)| mu - i as i64).max())
    }

    /// `sum_i (-1)^i b_{i,μ}`.
    pub fn euler(&self, mu: i64) -> i64 {
        self.entries
            .iter()
            .filter(|((_, m), _)| *m == mu)
            .map(|((i, _), &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }

    /// Ideal indexing from the table of `A/I`: `Tor_i(I) = Tor_{i+1}(A/I)`.
    pub fn shift_to_ideal(&self) -> BettiTable {
        BettiTable {
            entries: self
                .entries
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, mu), &v)| ((i - 1, mu), v))
                .collect(),
            ceiling: self.ceiling + 1,
            truncated: self.truncated,
        }
    }
}

/// Scan ceilings for an ideal `I` and its quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ceiling {
    /// `reg(in(I))`, which bounds `reg(I)`.
    pub ideal: i64,
    /// `reg(in(I)) - 1`, which bounds `reg(A/I)`.
    pub module: i64,
    /// `(n+1)(b_0(in(I)) - 1) + 1`, for information.
    pub taylor: i64,
}

/// Certified ceiling from the initial ideal. For `I = 0` the quotient is
/// `A` with regularity 0.
pub fn ceiling(ideal: &Ideal) -> Result<Ceiling> {
    if ideal.is_unit() {
        return Err(Error::ImproperIdeal("A/I = 0".into()));
    }
    let initial = ideal.initial_ideal();
    let n1 = ideal.ring().nvars() as i64;
    match initial.regularity(*ideal.ring().field()) {
        None => Ok(Ceiling {
            ideal: 1,
            module: 0,
            taylor: 1,
        }),
        Some(r) => {
            let b0 = initial.max_generator_degree().unwrap() as i64;
            Ok(Ceiling {
                ideal: r,
                module: r - 1,
                taylor: n1 * (b0 - 1) + 1,
            })
        }
    }
}

/// Betti table of a graded module by Koszul homology on the variables,
/// scanning `min_degree + i <= μ <= ceiling + i`.
pub fn module_betti_table<M: GradedModule>(module: &M, ceiling: i64, truncated: bool) -> BettiTable {
    let n1 = module.ring().nvars();
    let koszul = KoszulComplex::on_variables(module);
    let lo = module.min_degree();
    let cells: Vec<(usize, i64)> = (0..=n1)
        .flat_map(|i| (lo + i as i64..=ceiling + i as i64).map(move |mu| (i, mu)))
        .collect();
    let entries = cells
        .par_iter()
        .filter_map(|&(i, mu)| {
            let d = koszul.homology_dim(i, mu);
            (d > 0).then_some(((i, mu), d as u64))
        })
        .collect();
    BettiTable {
        entries,
        ceiling,
        truncated,
    }
}

/// Resolve a user override against the certified ceiling.
fn effective(certified: i64, user: Option<i64>) -> (i64, bool) {
    match user {
        Some(c) if c < certified => (c, true),
        Some(c) => (c, false),
        None => (certified, false),
    }
}

/// Betti table of `A/I`. `ceiling_override` is in module convention.
pub fn quotient_betti_table(ideal: &Ideal, ceiling_override: Option<i64>) -> Result<BettiTable> {
    let c = ceiling(ideal)?;
    let (ceil, truncated) = effective(c.module, ceiling_override);
    let module = QuotientModule::new(ideal);
    Ok(module_betti_table(&module, ceil, truncated))
}

/// Betti table of `I` in ideal indexing (`i = 0` counts generators).
pub fn betti_table(ideal: &Ideal, ceiling_override: Option<i64>) -> Result<BettiTable> {
    Ok(quotient_betti_table(ideal, ceiling_override.map(|c| c - 1))?.shift_to_ideal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomial::binomial;
    use crate::poly::Ring;

    #[test]
    fn twisted_cubic_table() {
        let r = Ring::with_vars(&["x", "y", "z", "w"]);
        let i = Ideal::parse(&r, &["y^2 - x*z", "z^2 - y*w", "y*z - x*w"]);
        let t = betti_table(&i, None).unwrap();
        let expected: BTreeMap<(usize, i64), u64> = [((0, 2), 3), ((1, 3), 2)].into_iter().collect();
        assert_eq!(t.entries, expected);
        assert_eq!(t.regularity().unwrap(), Some(2));
        let q = quotient_betti_table(&i, None).unwrap();
        // Euler characteristic against 1 - 3t^2 + 2t^3
        let num = i.initial_ideal().hilbert_numerator();
        for mu in 0..6 {
            assert_eq!(q.euler(mu), num.get(mu as usize).copied().unwrap_or(0));
        }
    }

    #[test]
    fn maximal_ideal_is_koszul() {
        let r = Ring::numbered(4);
        let t = betti_table(&Ideal::maximal(&r), None).unwrap();
        for i in 0..4 {
            assert_eq!(t.get(i, i as i64 + 1), binomial(4, i as u64 + 1));
        }
        assert_eq!(t.entries.len(), 4);
    }

    #[test]
    fn complete_intersection_degrees() {
        let r = Ring::numbered(4);
        let i = Ideal::parse(&r, &["x0^2 + x1*x2", "x2^3 - x3^2*x0 + x1^3"]);
        let t = betti_table(&i, None).unwrap();
        let expected: BTreeMap<(usize, i64), u64> =
            [((0, 2), 1), ((0, 3), 1), ((1, 5), 1)].into_iter().collect();
        assert_eq!(t.entries, expected);
        assert_eq!(t.regularity().unwrap(), Some(4));
    }

    #[test]
    fn low_override_is_flagged() {
        let r = Ring::numbered(4);
        let i = Ideal::parse(&r, &["x0^3", "x1^3", "x2^3", "x3^3"]);
        let t = betti_table(&i, Some(3)).unwrap();
        assert!(t.truncated);
        assert!(matches!(t.regularity(), Err(Error::Truncated(_))));
        assert_eq!(betti_table(&i, None).unwrap().regularity().unwrap(), Some(9));
    }

    #[test]
    fn koszul_table_matches_lattice_table_for_monomial_ideals() {
        let r = Ring::with_vars(&["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x^2*y", "x*y^2", "y*z^3", "x^3"]);
        let t = betti_table(&i, None).unwrap();
        let lattice = i.initial_ideal().betti_numbers(*r.field());
        let lattice: BTreeMap<(usize, i64), u64> =
            lattice.into_iter().map(|((i, d), v)| ((i, d as i64), v)).collect();
        assert_eq!(t.entries, lattice);
    }
}
