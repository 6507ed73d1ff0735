//! Monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    /// Total degree first; ties broken by the inverse lexicographic order
    /// read from the last variable.
    #[default]
    DegRevLex,
    /// Total degree first; ties broken lexicographically.
    DegLex,
    /// Block order: the first `block` variables are compared first (by
    /// deg-rev-lex on that block), then the remaining ones by deg-rev-lex.
    /// Eliminates the first block.
    Elimination { block: usize },
}

#[inline]
fn revlex_tail(a: &[u16], b: &[u16]) -> Ordering {
    // The last nonzero entry of a - b being negative means a > b.
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return if x < y {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
    }
    Ordering::Equal
}

#[inline]
fn degrevlex_slices(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| revlex_tail(a, b))
}

impl MonomialOrder {
    /// Compare two monomials over the same number of variables.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match *self {
            MonomialOrder::DegRevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex_tail(a.exps(), b.exps())),
            MonomialOrder::DegLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| a.exps().cmp(b.exps())),
            MonomialOrder::Elimination { block } => {
                let (ah, at) = a.exps().split_at(block);
                let (bh, bt) = b.exps().split_at(block);
                degrevlex_slices(ah, bh).then_with(|| degrevlex_slices(at, bt))
            }
        }
    }

    /// Whether degree dominates the order (every order except elimination).
    pub fn is_degree_compatible(&self) -> bool {
        !matches!(self, MonomialOrder::Elimination { .. })
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::DegRevLex => "degrevlex".into(),
            MonomialOrder::DegLex => "deglex".into(),
            MonomialOrder::Elimination { block } => format!("elimination({block})"),
        }
    }
}

/// Checked comparison of monomials under `order`.
pub fn compare_monomials(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::usage(format!(
            "cannot compare monomials over {} and {} variables",
            a.nvars(),
            b.nvars()
        )));
    }
    if let MonomialOrder::Elimination { block } = order {
        if block > a.nvars() {
            return Err(Error::usage(format!(
                "elimination block {block} exceeds {} variables",
                a.nvars()
            )));
        }
    }
    Ok(order.cmp(a, b))
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degrevlex" | "grevlex" | "drl" => Ok(MonomialOrder::DegRevLex),
            "deglex" | "grlex" => Ok(MonomialOrder::DegLex),
            other => Err(Error::usage(format!("unknown monomial order '{other}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::DegRevLex;
        // xz < y^2 and x^2 > yz in k[x,y,z]
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[1, 1, 0])), Ordering::Equal);
    }

    /// Sort all degree-2 monomials directly from the definition and compare
    /// against the implementation.
    #[test]
    fn degrevlex_matches_definition_on_degree_two() {
        let all = Monomial::all_of_degree(3, 2);
        let by_def = |a: &Monomial, b: &Monomial| {
            let diff: Vec<i32> = a
                .exps()
                .iter()
                .zip(b.exps())
                .map(|(x, y)| *x as i32 - *y as i32)
                .collect();
            match diff.iter().rev().find(|&&d| d != 0) {
                None => Ordering::Equal,
                Some(&d) if d < 0 => Ordering::Greater,
                Some(_) => Ordering::Less,
            }
        };
        for a in &all {
            for b in &all {
                assert_eq!(MonomialOrder::DegRevLex.cmp(a, b), by_def(a, b));
            }
        }
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b, a));
        let exps: Vec<_> = sorted.iter().map(|m| m.exps().to_vec()).collect();
        assert_eq!(
            exps,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn mismatched_variable_counts_are_rejected() {
        assert!(compare_monomials(&m(&[1, 0]), &m(&[1, 0, 0]), MonomialOrder::DegRevLex).is_err());
    }

    #[test]
    fn elimination_puts_block_first() {
        let o = MonomialOrder::Elimination { block: 1 };
        // t * z  >  x^5 since t is eliminated
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 5, 0])), Ordering::Greater);
    }
}
