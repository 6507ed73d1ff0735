//! Buchberger's algorithm with the coprime-leading-term and chain criteria.

use std::collections::HashSet;

use crate::monomial_ideal::MonomialIdeal;
use crate::poly::{Monomial, Polynomial, Ring};

/// A reduced Gröbner basis for the ring's monomial order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    /// Monic, sorted by increasing leading monomial.
    elements: Vec<Polynomial>,
    leading: Vec<Monomial>,
    masks: Vec<u64>,
}

/// Normal form of `f` with respect to `divisors` (full reduction: no term of
/// the result is divisible by any leading monomial).
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let lms: Vec<&Monomial> = divisors.iter().map(|g| g.lm()).collect();
    let masks: Vec<u64> = lms.iter().map(|m| m.support_mask()).collect();
    reduce_with(f, divisors, &lms, &masks)
}

fn find_divisor(m: &Monomial, lms: &[&Monomial], masks: &[u64]) -> Option<usize> {
    let mm = m.support_mask();
    (0..lms.len()).find(|&k| masks[k] & !mm == 0 && lms[k].divides(m))
}

fn reduce_with(
    f: &Polynomial,
    divisors: &[Polynomial],
    lms: &[&Monomial],
    masks: &[u64],
) -> Polynomial {
    let ring = f.ring().clone();
    let field = *ring.field();
    let mut remainder: Vec<(Monomial, u32)> = Vec::new();
    let mut p = f.clone();
    while !p.is_zero() {
        let lm = p.lm().clone();
        match find_divisor(&lm, lms, masks) {
            Some(k) => {
                let g = &divisors[k];
                let c = field.mul(p.lc(), field.inv(g.lc()));
                let m = g.lm().quotient_of(&lm);
                p = p.sub_mul_term(c, &m, g);
            }
            None => {
                // peel off the leading term; the rest stays sorted
                let mut terms = p.into_terms();
                let head = terms.remove(0);
                remainder.push(head);
                // move all further irreducible leading terms at once
                let mut start = 0;
                while start < terms.len() && find_divisor(&terms[start].0, lms, masks).is_none() {
                    start += 1;
                }
                remainder.extend(terms.drain(..start));
                p = Polynomial::from_sorted_terms(&ring, terms);
            }
        }
    }
    Polynomial::from_sorted_terms(&ring, remainder)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `input` for the order of
/// `ring`. Works for inhomogeneous input too (normal selection strategy).
pub fn buchberger(ring: &Ring, input: &[Polynomial]) -> Vec<Polynomial> {
    buchberger_bounded(ring, input, None).expect("unbounded run completes")
}

/// As [`buchberger`], but gives up with `None` as soon as an S-pair of
/// degree above `max_pair_degree` survives the criteria.
pub fn buchberger_bounded(
    ring: &Ring,
    input: &[Polynomial],
    max_pair_degree: Option<u32>,
) -> Option<Vec<Polynomial>> {
    let order = ring.order();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let mut gens: Vec<Polynomial> = input.iter().filter(|f| !f.is_zero()).cloned().collect();
    gens.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| order.cmp(a.lm(), b.lm()))
    });

    let add = |h: Polynomial,
               basis: &mut Vec<Polynomial>,
               pairs: &mut Vec<Pair>,
               pending: &mut HashSet<(usize, usize)>| {
        let h = h.monic();
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let lcm = g.lm().lcm(h.lm());
            pairs.push(Pair { i, j: k, lcm });
            pending.insert((i, k));
        }
        basis.push(h);
    };

    let lms_of = |basis: &[Polynomial]| -> (Vec<Monomial>, Vec<u64>) {
        let lms: Vec<Monomial> = basis.iter().map(|g| g.lm().clone()).collect();
        let masks = lms.iter().map(|m| m.support_mask()).collect();
        (lms, masks)
    };

    // Interleave input generators with pairs by degree so homogeneous input
    // is processed degree by degree.
    let mut next_input = 0;
    loop {
        let best_pair = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .degree()
                    .cmp(&b.lcm.degree())
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
            })
            .map(|(k, p)| (k, p.lcm.degree()));
        let input_deg = gens.get(next_input).and_then(|g| g.degree());
        let take_input = match (input_deg, best_pair) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(d), Some((_, pd))) => d <= pd,
        };
        let (lms, masks) = lms_of(&basis);
        let lm_refs: Vec<&Monomial> = lms.iter().collect();
        if take_input {
            let f = &gens[next_input];
            next_input += 1;
            let h = reduce_with(f, &basis, &lm_refs, &masks);
            if !h.is_zero() {
                add(h, &mut basis, &mut pairs, &mut pending);
            }
            continue;
        }
        let (k, _) = best_pair.unwrap();
        let pair = pairs.swap_remove(k);
        pending.remove(&(pair.i, pair.j));
        let (gi, gj) = (&basis[pair.i], &basis[pair.j]);
        // first criterion: coprime leading monomials
        if gi.lm().is_coprime(gj.lm()) {
            continue;
        }
        // chain criterion
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].lm().divides(&pair.lcm)
                && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }
        if max_pair_degree.is_some_and(|d| pair.lcm.degree() > d) {
            return None;
        }
        let mi = gi.lm().quotient_of(&pair.lcm);
        let mj = gj.lm().quotient_of(&pair.lcm);
        // both monic: S = mi*gi - mj*gj
        let s = gi.mul_term(&mi, 1).sub_mul_term(1, &mj, gj);
        let h = reduce_with(&s, &basis, &lm_refs, &masks);
        if !h.is_zero() {
            add(h, &mut basis, &mut pairs, &mut pending);
        }
    }
    Some(reduce_basis(ring, basis))
}

/// Minimalize and inter-reduce a Gröbner basis; monic, sorted by increasing
/// leading monomial.
fn reduce_basis(ring: &Ring, basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let order = ring.order();
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            l != k && h.lm().divides(g.lm()) && (h.lm() != g.lm() || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    minimal.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let g = &minimal[k];
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, h)| h.clone())
            .collect();
        let head = Polynomial::monomial(ring, g.lm().clone(), g.lc());
        let tail = g - &head;
        let tail = normal_form(&tail, &others);
        reduced.push((&head + &tail).monic());
    }
    reduced
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the ideal generated by `gens`.
    pub fn compute(ring: &Ring, gens: &[Polynomial]) -> GroebnerBasis {
        for g in gens {
            assert!(g.ring().same(ring), "generator from a different ring");
        }
        Self::from_reduced(ring, buchberger(ring, gens))
    }

    /// `None` when the computation needs an S-pair above `max_pair_degree`.
    pub fn compute_bounded(ring: &Ring, gens: &[Polynomial], max_pair_degree: u32) -> Option<GroebnerBasis> {
        for g in gens {
            assert!(g.ring().same(ring), "generator from a different ring");
        }
        buchberger_bounded(ring, gens, Some(max_pair_degree)).map(|b| Self::from_reduced(ring, b))
    }

    pub(crate) fn from_reduced(ring: &Ring, elements: Vec<Polynomial>) -> GroebnerBasis {
        let leading: Vec<Monomial> = elements.iter().map(|g| g.lm().clone()).collect();
        let masks = leading.iter().map(|m| m.support_mask()).collect();
        GroebnerBasis {
            ring: ring.clone(),
            elements,
            leading,
            masks,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.ring.nvars(), self.leading.iter().cloned())
    }

    /// Largest degree of a basis element, `b_0(in(I))` for a reduced basis.
    pub fn max_degree(&self) -> Option<u32> {
        self.elements.iter().filter_map(|g| g.degree()).max()
    }

    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(|m| m.is_one())
    }

    pub fn is_leading_multiple(&self, m: &Monomial) -> bool {
        let mm = m.support_mask();
        self.leading
            .iter()
            .zip(&self.masks)
            .any(|(l, &mask)| mask & !mm == 0 && l.divides(m))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let lms: Vec<&Monomial> = self.leading.iter().collect();
        reduce_with(f, &self.elements, &lms, &self.masks)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

}

impl PartialEq for GroebnerBasis {
    /// Reduced bases are unique, so equality of bases is equality of ideals.
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.elements == other.elements
    }
}

impl Eq for GroebnerBasis {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_single_step() {
        let r = Ring::with_vars(&["x", "y", "z"]);
        let gb = GroebnerBasis::compute(&r, &[r.poly("x^2 - y*z")]);
        assert_eq!(gb.normal_form(&r.poly("x^2")), r.poly("y*z"));
        assert!(gb.normal_form(&Polynomial::zero(&r)).is_zero());
        assert!(gb.contains(&r.poly("x^2 - y*z")));
    }

    #[test]
    fn twisted_cubic_is_its_own_basis() {
        let r = Ring::with_vars(&["x", "y", "z", "w"]);
        let gens = r.polys(&["y^2 - x*z", "z^2 - y*w", "y*z - x*w"]);
        let gb = GroebnerBasis::compute(&r, &gens);
        assert_eq!(gb.len(), 3);
        let mut expected: Vec<Polynomial> = gens.iter().map(|g| g.monic()).collect();
        expected.sort_by(|a, b| r.order().cmp(a.lm(), b.lm()));
        assert_eq!(gb.elements(), &expected[..]);
        let lead: Vec<String> = gb
            .elements()
            .iter()
            .map(|g| crate::poly::polynomial::fmt_monomial(g.lm(), r.names()))
            .collect();
        assert_eq!(lead, vec!["z^2", "y*z", "y^2"]);
    }

    #[test]
    fn coprime_leads_need_no_new_elements() {
        let r = Ring::with_vars(&["x", "y", "z"]);
        let gb = GroebnerBasis::compute(&r, &r.polys(&["x^2", "y^3"]));
        assert_eq!(gb.len(), 2);
        let gb = GroebnerBasis::compute(&r, &r.polys(&["x"]));
        assert_eq!(gb.elements(), &[r.poly("x")]);
    }

    #[test]
    fn inhomogeneous_input_is_supported() {
        let r = Ring::with_vars(&["x", "y"]);
        // x^2 - 1, x*y - 1 => basis with y - x, x^2 - 1 under degrevlex
        let gb = GroebnerBasis::compute(&r, &r.polys(&["x^2 - 1", "x*y - 1"]));
        assert!(gb.contains(&r.poly("x - y")));
        assert!(gb.contains(&r.poly("y^2 - 1")));
        assert!(!gb.contains(&r.poly("x - 1")));
    }

    #[test]
    fn deterministic() {
        let r = Ring::numbered(4);
        let gens = r.polys(&["x0*x1 - x2^2", "x1*x3 + 2*x0*x2 - x3^2", "x0^2 - x1*x2 + x3^2"]);
        let a = GroebnerBasis::compute(&r, &gens);
        let b = GroebnerBasis::compute(&r, &gens);
        assert_eq!(a, b);
        for g in &gens {
            assert!(a.contains(g));
        }
    }
}
