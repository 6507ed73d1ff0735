//! Intersections, colon ideals and saturation.

use super::basis::{buchberger, GroebnerBasis};
use super::ideal::Ideal;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// `I ∩ J` by eliminating a tag variable `t` from `t I + (1 - t) J`.
pub fn intersection(i: &Ideal, j: &Ideal) -> Ideal {
    let ring = i.ring();
    assert!(ring.same(j.ring()), "ideals over different rings");
    if i.is_zero() || j.is_zero() {
        return Ideal::zero(ring);
    }
    let n = ring.nvars();
    let big = ring.extended(&["t"], &[], MonomialOrder::Elimination { block: 1 });
    let lift = |f: &Polynomial| f.map_monomials(&big, |m| m.embed(1, n + 1));
    let t = Polynomial::var(&big, 0);
    let one_minus_t = &Polynomial::one(&big) - &t;
    let mut gens = Vec::new();
    for f in i.gens() {
        gens.push(&t * &lift(f));
    }
    for g in j.gens() {
        gens.push(&one_minus_t * &lift(g));
    }
    let gb = buchberger(&big, &gens);
    let kept: Vec<Polynomial> = gb
        .into_iter()
        .filter(|g| g.var_valuation(0) == 0 && g.terms().iter().all(|(m, _)| m.exp(0) == 0))
        .map(|g| g.map_monomials(ring, |m| m.restrict(1, n)))
        .collect();
    Ideal::new(ring, kept).expect("intersection of homogeneous ideals is homogeneous")
}

/// `J : h = { f : f h ∈ J }`, as `(J ∩ (h)) / h`.
pub fn colon_ideal(j: &Ideal, h: &Polynomial) -> Result<Ideal> {
    let ring = j.ring();
    if h.is_zero() {
        return Err(Error::usage("colon by the zero polynomial"));
    }
    if !h.is_homogeneous() {
        return Err(Error::usage(format!("colon by inhomogeneous {h}")));
    }
    if h.is_constant() {
        return Ok(j.clone());
    }
    if j.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let principal = Ideal::new(ring, vec![h.clone()])?;
    let meet = intersection(j, &principal);
    let mut quotients = Vec::with_capacity(meet.gens().len());
    for g in meet.gens() {
        match g.exact_div(h) {
            Some(q) => quotients.push(q.monic()),
            None => {
                return Err(Error::defect(format!(
                    "element {g} of J ∩ (h) is not divisible by h = {h}"
                )))
            }
        }
    }
    let colon = Ideal::new(ring, quotients)?;
    Ok(Ideal::from_basis(colon.groebner().clone()))
}

/// `I : K = ∩_g (I : g)` over the generators `g` of `K`.
pub fn colon_ideal_module(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    let ring = i.ring();
    if k.is_zero() {
        return Ideal::new(ring, vec![Polynomial::one(ring)]);
    }
    let mut acc: Option<Ideal> = None;
    for g in k.gens() {
        let c = colon_ideal(i, g)?;
        acc = Some(match acc {
            None => c,
            Some(a) => intersection(&a, &c),
        });
    }
    Ok(acc.unwrap())
}

/// `I : x_i` for a variable. With `x_i` moved to the last position of a
/// deg-rev-lex order, dividing each Gröbner basis element by `x_i` when
/// possible gives a Gröbner basis of the colon.
pub fn colon_by_variable(i: &Ideal, var: usize) -> Ideal {
    let ring = i.ring();
    let n = ring.nvars();
    // permutation: var goes last
    let mut perm: Vec<usize> = (0..n).filter(|&k| k != var).collect();
    perm.push(var);
    let names: Vec<String> = perm.iter().map(|&k| ring.names()[k].clone()).collect();
    let moved = Ring::new(
        ring.characteristic() as u64,
        names,
        MonomialOrder::DegRevLex,
        ring.seed(),
    )
    .expect("permuted ring");
    let forward = |m: &Monomial| Monomial::new(perm.iter().map(|&k| m.exp(k)).collect());
    let back = |m: &Monomial| {
        let mut e = vec![0; n];
        for (pos, &k) in perm.iter().enumerate() {
            e[k] = m.exp(pos);
        }
        Monomial::new(e)
    };
    let gens: Vec<Polynomial> = i
        .gens()
        .iter()
        .map(|g| g.map_monomials(&moved, forward))
        .collect();
    let gb = buchberger(&moved, &gens);
    let divided: Vec<Polynomial> = gb
        .into_iter()
        .map(|g| {
            let k = g.var_valuation(n - 1).min(1);
            g.div_var_power(n - 1, k)
        })
        .map(|g| g.map_monomials(ring, back))
        .collect();
    Ideal::new(ring, divided).expect("colon of a homogeneous ideal")
}

/// `I : m` for the irrelevant ideal `m`.
pub fn colon_irrelevant(i: &Ideal) -> Ideal {
    let ring = i.ring();
    let mut acc: Option<Ideal> = None;
    for k in 0..ring.nvars() {
        let c = colon_by_variable(i, k);
        acc = Some(match acc {
            None => c,
            Some(a) => {
                if c.contains_ideal(&a) {
                    a
                } else if a.contains_ideal(&c) {
                    c
                } else {
                    intersection(&a, &c)
                }
            }
        });
    }
    acc.unwrap()
}

/// `I* = I : m^∞`, iterating `I <- I : m` until it stabilizes.
pub fn saturate_irrelevant(i: &Ideal) -> Ideal {
    let mut cur = i.clone();
    loop {
        let next = colon_irrelevant(&cur);
        if next == cur {
            return Ideal::from_basis(cur.groebner().clone());
        }
        cur = next;
    }
}

pub fn is_saturated(i: &Ideal) -> bool {
    colon_irrelevant(i) == *i
}

/// Result of the colon computation in `A[T]` through the ideal
/// `b = (g_1, .., g_r, h - T^deg h)`.
#[derive(Clone, Debug)]
pub struct TTrickColon {
    /// `A[T]` with `T` last, deg-rev-lex.
    pub ring_t: Ring,
    /// Reduced Gröbner basis of `b`.
    pub basis_b: GroebnerBasis,
    /// Gröbner basis of `b + (h)`.
    pub plus_h: GroebnerBasis,
    /// Gröbner basis of `b : h`, read off from `basis_b`.
    pub colon_t: GroebnerBasis,
    /// `(g) : h` as an ideal of `A`.
    pub colon: Ideal,
    /// Largest degree of an element of `basis_b`.
    pub max_degree: u32,
}

/// `(g) : h` through the Gröbner basis of `b = (g, h - T^e)` in `A[T]`,
/// `e = deg h`. Since `T^e ≡ h` modulo `b`, `b : h = b : T^e`, whose basis
/// comes from dividing each element of the deg-rev-lex basis of `b` by the
/// largest power of `T` up to `T^e` that divides it. Reducing modulo
/// `T^e - h`, the coefficients of `1, T, .., T^(e-1)` generate `(g) : h`.
///
/// The answer is compared with [`colon_ideal`]; disagreement is a defect.
pub fn colon_via_t_trick(g: &Ideal, h: &Polynomial) -> Result<TTrickColon> {
    let ring = g.ring();
    if h.is_zero() {
        return Err(Error::usage("colon by the zero polynomial"));
    }
    if !h.is_homogeneous() {
        return Err(Error::usage(format!("colon by inhomogeneous {h}")));
    }
    let n = ring.nvars();
    let ring_t = ring.extended(&[], &["T"], MonomialOrder::DegRevLex);
    let lift = |f: &Polynomial| f.map_monomials(&ring_t, |m| m.embed(0, n + 1));
    let e = h.degree().unwrap();
    let h_t = lift(h);
    let mut t_pow = vec![0u16; n + 1];
    t_pow[n] = e as u16;
    let te = Polynomial::monomial(&ring_t, Monomial::new(t_pow), 1);
    let mut gens: Vec<Polynomial> = g.gens().iter().map(lift).collect();
    gens.push(&h_t - &te);
    let basis_b = GroebnerBasis::compute(&ring_t, &gens);
    let max_degree = basis_b.max_degree().unwrap_or(0);

    let mut plus_gens = basis_b.elements().to_vec();
    plus_gens.push(h_t.clone());
    let plus_h = GroebnerBasis::compute(&ring_t, &plus_gens);

    let colon_elems: Vec<Polynomial> = basis_b
        .elements()
        .iter()
        .map(|b| {
            let k = b.var_valuation(n).min(e as u16);
            b.div_var_power(n, k).monic()
        })
        .collect();
    // the divided elements form a Gröbner basis; reduce it for a canonical form
    let colon_t = GroebnerBasis::compute(&ring_t, &colon_elems);

    let colon = if e == 0 {
        g.clone()
    } else {
        // powers of h, filled lazily
        let mut h_pows: Vec<Polynomial> = vec![Polynomial::one(ring)];
        let mut coeffs: Vec<Polynomial> = Vec::new();
        for b in colon_t.elements() {
            // T^k = T^(qe + r) becomes h^q T^r; collect by r
            let mut sums: Vec<Polynomial> = vec![Polynomial::zero(ring); e as usize];
            for (m, c) in b.terms() {
                let k = m.exp(n) as u32;
                let (q, r) = (k / e, k % e);
                while h_pows.len() <= q as usize {
                    let next = h_pows.last().unwrap() * h;
                    h_pows.push(next);
                }
                let base = Monomial::new(m.exps()[..n].to_vec());
                let term = h_pows[q as usize].mul_term(&base, *c);
                sums[r as usize] = &sums[r as usize] + &term;
            }
            coeffs.extend(sums.into_iter().filter(|s| !s.is_zero()));
        }
        Ideal::new(ring, coeffs).map_err(|err| {
            Error::defect(format!("T-trick produced an inhomogeneous coefficient: {err}"))
        })?
    };
    let reference = colon_ideal(g, h)?;
    if reference != colon {
        return Err(Error::defect(format!(
            "colon backends disagree for {g} : {h}: elimination gives {:?}, T-trick gives {:?}",
            reference.groebner().elements().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            colon.groebner().elements().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        )));
    }
    Ok(TTrickColon {
        ring_t,
        basis_b,
        plus_h,
        colon_t,
        colon: Ideal::from_basis(colon.groebner().clone()),
        max_degree,
    })
}
