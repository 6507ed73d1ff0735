use std::cmp::Ordering;

use cmreg::bounds::{bound_cor28, bounds_report};
use cmreg::graded::{GradedModule, KoszulComplex, QuotientModule};
use cmreg::groebner::{colon_ideal, colon_irrelevant, colon_via_t_trick, is_saturated, saturate_irrelevant};
use cmreg::hrao::{hartshorne_rao, PairMode};
use cmreg::invariants::{
    ceiling, evaluate, hilbert_data, kernel_split, quotient_betti_table, quotient_regularity, reg_via_def1,
    regularity, regularity_via_koszul, regularity_via_truncation,
};
use cmreg::io::{format_ideal, parse_ideal};
use cmreg::linalg::{rank_kernel, Matrix};
use cmreg::poly::monomial::binomial;
use cmreg::poly::LinearSubstitution;
use cmreg::topdim::top_dimensional_part;
use cmreg::{Ideal, Monomial, MonomialOrder, Polynomial, Ring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn monomial(nvars: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u16..6, nvars).prop_map(Monomial::new)
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::DegRevLex),
        Just(MonomialOrder::DegLex),
        (1usize..4).prop_map(|block| MonomialOrder::Elimination { block }),
    ]
}

fn polynomial(ring: Ring, max_exp: u16) -> impl Strategy<Value = Polynomial> {
    let p = ring.characteristic();
    let n = ring.nvars();
    let m = prop::collection::vec(0..=max_exp, n).prop_map(Monomial::new);
    prop::collection::vec((m, 0..p), 0..6)
        .prop_map(move |terms| Polynomial::from_terms(&ring, terms))
}

fn form(ring: Ring, d: u32) -> impl Strategy<Value = Polynomial> {
    let p = ring.characteristic();
    let n = ring.nvars();
    prop::collection::vec((prop::collection::vec(0..n, d as usize), 1..p), 1..5).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .map(|(vars, c)| {
                let mut e = vec![0u16; n];
                for v in vars {
                    e[v] += 1;
                }
                (Monomial::new(e), c)
            })
            .collect();
        Polynomial::from_terms(&ring, terms)
    })
}

fn sparse_form(ring: &Ring, d: u32, terms: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    loop {
        let mut f = Polynomial::zero(ring);
        for _ in 0..terms {
            let mut e = vec![0u16; ring.nvars()];
            for _ in 0..d {
                e[rng.gen_range(0..ring.nvars())] += 1;
            }
            let c = rng.gen_range(1..ring.characteristic());
            f = &f + &Polynomial::monomial(ring, Monomial::new(e), c);
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// A small homogeneous ideal, sometimes with embedded or lower-dimensional
/// components.
fn random_ideal(seed: u64) -> Ideal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = Ring::numbered(rng.gen_range(3..=4)).with_seed(seed);
    let mut gens = Vec::new();
    match rng.gen_range(0..3) {
        0 => {
            for _ in 0..rng.gen_range(1..=3) {
                let d = rng.gen_range(1..=3);
                let t = rng.gen_range(1..=3);
                gens.push(sparse_form(&ring, d, t, &mut rng));
            }
        }
        1 => {
            // u (v, w) + (q)
            let u = sparse_form(&ring, 1, 2, &mut rng);
            let v = sparse_form(&ring, 1, 2, &mut rng);
            let w = sparse_form(&ring, rng.gen_range(1..=2), 2, &mut rng);
            gens.push(&u * &v);
            gens.push(&u * &w);
            if rng.gen_bool(0.5) {
                gens.push(sparse_form(&ring, 2, 2, &mut rng));
            }
        }
        _ => {
            let u = sparse_form(&ring, 1, 2, &mut rng);
            let v = sparse_form(&ring, 1, 1, &mut rng);
            gens.push(&u * &u);
            gens.push(&u * &v);
            gens.push(sparse_form(&ring, 3, 2, &mut rng));
        }
    }
    Ideal::new(&ring, gens).unwrap()
}

/// `dim (A/I)_d` by linear algebra on the multiples of the generators.
fn quotient_dim_by_span(i: &Ideal, d: u32) -> u64 {
    let ring = i.ring();
    let basis = Monomial::all_of_degree(ring.nvars(), d);
    let index = |m: &Monomial| basis.iter().position(|b| b == m).unwrap();
    let mut rows = Vec::new();
    for g in i.gens() {
        let Some(e) = g.degree().filter(|&e| e <= d) else { continue };
        for m in Monomial::all_of_degree(ring.nvars(), d - e) {
            let mut row = vec![0; basis.len()];
            for (t, c) in g.mul_term(&m, 1).terms() {
                row[index(t)] = *c;
            }
            rows.push(row);
        }
    }
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(&rows, basis.len(), *ring.field()).rank() };
    basis.len() as u64 - rank as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn order_axioms(o in order(), a in monomial(4), b in monomial(4), c in monomial(4)) {
        let ab = o.cmp(&a, &b);
        prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if ab == Ordering::Less && o.cmp(&b, &c) == Ordering::Less {
            prop_assert_eq!(o.cmp(&a, &c), Ordering::Less);
        }
        prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab);
        prop_assert_ne!(o.cmp(&Monomial::one(4), &a), Ordering::Greater);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(
        (f, g, h) in {
            let r = Ring::numbered(3);
            (polynomial(r.clone(), 5), polynomial(r.clone(), 5), polynomial(r, 5))
        }
    ) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &Polynomial::one(f.ring()), f.clone());
    }

    #[test]
    fn substitution_has_an_inverse(
        f in polynomial(Ring::numbered(4), 2),
        seed in any::<u64>(),
    ) {
        let s = LinearSubstitution::random(f.ring(), seed).unwrap();
        prop_assert_eq!(s.inverse().apply(&s.apply(&f)), f.clone());
        prop_assert_eq!(s.apply(&s.inverse().apply(&f)), f);
    }

    #[test]
    fn homogeneity_is_preserved(
        (f, g) in {
            let r = Ring::numbered(4);
            (form(r.clone(), 3), form(r, 3))
        },
        seed in any::<u64>(),
    ) {
        let s = LinearSubstitution::random(f.ring(), seed).unwrap();
        for p in [&f + &g, &f - &g, &f * &g, s.apply(&f)] {
            prop_assert!(p.is_homogeneous());
        }
        let prod = &f * &g;
        prop_assert!(prod.is_zero() || prod.degree() == Some(6));
    }

    #[test]
    fn rank_and_kernel(rows in prop::collection::vec(prop::collection::vec(0u32..5, 6), 1..7)) {
        let field = *Ring::numbered(1).field();
        let m = Matrix::from_rows(&rows, 6, field);
        let (rank, kernel) = rank_kernel(&m);
        prop_assert_eq!(rank + kernel.len(), 6);
        prop_assert_eq!(rank, m.transpose().rank());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn cor28_is_exact(degrees in prop::collection::vec(1u32..=10, 1..6), n in 1usize..=8) {
        let r = degrees.len().min(n);
        let b = bound_cor28(&degrees, n, r).unwrap();
        prop_assert!(b >= num_bigint::BigUint::from(*degrees.iter().max().unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hilbert_function_of_initial_ideal(seed in any::<u64>()) {
        let i = random_ideal(seed);
        let j = i.initial_ideal();
        let h = hilbert_data(&i).unwrap();
        for d in 0..7u32 {
            let by_span = quotient_dim_by_span(&i, d);
            prop_assert_eq!(by_span, j.count_standard_monomials(d), "degree {}", d);
            let hf = match h.values.get(&(d as i64)) {
                Some(&v) => v,
                // past reg_H the polynomial takes over
                None => evaluate(&h.polynomial, d as i64).to_integer() as u64,
            };
            prop_assert_eq!(by_span, hf);
            prop_assert_eq!(QuotientModule::new(&i).dim(d as i64) as u64, by_span);
        }
    }

    #[test]
    fn normal_forms(seed in any::<u64>(), k in 0u64..1000) {
        let i = random_ideal(seed);
        let ring = i.ring().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(k);
        let f = sparse_form(&ring, rng.gen_range(1..=4), 4, &mut rng);
        let nf = i.normal_form(&f);
        prop_assert_eq!(i.normal_form(&nf), nf.clone());
        prop_assert!(i.contains(&(&f - &nf)));
        prop_assert_eq!(nf.is_zero(), i.contains(&f));
        // an element of I reduces to zero
        let d = i.degrees().into_iter().max().unwrap() + 1;
        let member = Polynomial::random_combination(&ring, i.gens(), d, &mut rng);
        prop_assert!(i.normal_form(&member).is_zero());
    }

    #[test]
    fn colon_properties(seed in any::<u64>(), k in 0u64..1000) {
        let j = random_ideal(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(k);
        let h = match rng.gen_range(0..3) {
            0 => sparse_form(j.ring(), 1, 2, &mut rng),
            1 => j.gens()[0].clone(),
            _ => {
                // a factor of a generator when there is one
                sparse_form(j.ring(), 2, 1, &mut rng)
            }
        };
        let c = colon_ideal(&j, &h).unwrap();
        prop_assert!(c.contains_ideal(&j));
        prop_assert!(c.gens().iter().all(|q| j.contains(&(q * &h))));
        let t = colon_via_t_trick(&j, &h).unwrap();
        prop_assert_eq!(t.colon, c);
    }

    #[test]
    fn saturation(seed in any::<u64>()) {
        let i = random_ideal(seed);
        let s = saturate_irrelevant(&i);
        prop_assert!(s.contains_ideal(&i));
        prop_assert_eq!(saturate_irrelevant(&s), s.clone());
        prop_assert!(is_saturated(&s));
        prop_assert_eq!(s == i, colon_irrelevant(&i) == i);
    }

    #[test]
    fn codim_plus_dim(seed in any::<u64>()) {
        let i = random_ideal(seed);
        prop_assert_eq!(i.codim().unwrap() + i.krull_dim(), i.ring().nvars());
        let h = hilbert_data(&i).unwrap();
        prop_assert_eq!(h.dim_proj + 1, i.krull_dim() as i64);
    }

    #[test]
    fn koszul_complexes_are_complexes(seed in any::<u64>()) {
        let i = random_ideal(seed);
        let m = QuotientModule::new(&i);
        let k = KoszulComplex::on_variables(&m);
        for idx in 0..=k.len() {
            for mu in 0..5 {
                prop_assert!(k.check_homological(idx, mu));
                prop_assert!(k.check_cohomological(idx, mu));
                // Euler characteristic in each degree
                let chains: i64 = (0..=k.len()).map(|a| (-1i64).pow(a as u32) * k.chain_dim(a, mu) as i64).sum();
                let homology: i64 = (0..=k.len()).map(|a| (-1i64).pow(a as u32) * k.homology_dim(a, mu) as i64).sum();
                prop_assert_eq!(chains, homology);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn betti_euler_characteristic_is_the_series_numerator(seed in any::<u64>()) {
        let i = random_ideal(seed);
        let t = quotient_betti_table(&i, None).unwrap();
        let h = hilbert_data(&i).unwrap();
        let top = t.entries.keys().map(|(_, mu)| *mu).max().unwrap();
        for mu in 0..=top.max(h.series_numerator.len() as i64) {
            let coeff = h.series_numerator.get(mu as usize).copied().unwrap_or(0);
            prop_assert_eq!(t.euler(mu), coeff, "degree {}", mu);
        }
    }

    #[test]
    fn regularity_definitions_agree(seed in any::<u64>()) {
        let i = random_ideal(seed);
        let r = quotient_regularity(&i).unwrap();
        prop_assert_eq!(regularity(&i).unwrap(), r + 1);
        prop_assert_eq!(regularity_via_koszul(&i, None).unwrap(), r);
        prop_assert_eq!(reg_via_def1(&i).unwrap(), r);
        prop_assert_eq!(regularity_via_truncation(&i).unwrap(), r.max(0));
    }

    #[test]
    fn regularity_is_at_most_that_of_the_initial_ideal(seed in any::<u64>(), s in any::<u64>()) {
        let i = random_ideal(seed);
        let reg = regularity(&i).unwrap();
        prop_assert!(reg <= ceiling(&i).unwrap().ideal);
        let g = LinearSubstitution::random(i.ring(), s).unwrap();
        for o in [MonomialOrder::DegRevLex, MonomialOrder::DegLex] {
            let ring = i.ring().with_order(o);
            let moved = Ideal::new(&ring, i.gens().iter().map(|f| g.apply(f).with_ring(&ring)).collect()).unwrap();
            prop_assert_eq!(regularity(&moved).unwrap(), reg);
            prop_assert!(reg <= ceiling(&moved).unwrap().ideal);
        }
    }

    #[test]
    fn kernel_split_inequality(seed in any::<u64>(), k in any::<u64>()) {
        let i = random_ideal(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(k);
        let l = if rng.gen_bool(0.5) {
            Polynomial::var(i.ring(), rng.gen_range(0..i.ring().nvars()))
        } else {
            sparse_form(i.ring(), 1, 3, &mut rng)
        };
        let s = kernel_split(&i, &l).unwrap();
        prop_assert!(s.inequality_holds, "{:?}", s);
        if s.equality_expected {
            prop_assert!(s.equality_holds, "{:?}", s);
        }
    }

    #[test]
    fn verified_bounds_hold(seed in any::<u64>()) {
        let i = random_ideal(seed);
        for r in bounds_report(&i, 2).unwrap() {
            if r.hypotheses_verified {
                prop_assert_ne!(r.holds, Some(false), "{}", r.summary());
            }
        }
    }

    #[test]
    fn files_round_trip(seed in any::<u64>()) {
        let i = random_ideal(seed);
        let text = format_ideal(&i);
        let j = parse_ideal(&text).unwrap();
        prop_assert_eq!(format_ideal(&j), text);
        prop_assert_eq!(j.gens(), i.gens());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn top_dimensional_part_properties(seed in any::<u64>()) {
        let i = random_ideal(seed);
        if i.krull_dim() == 0 {
            prop_assert!(top_dimensional_part(&i, 8).is_err());
            return Ok(());
        }
        let t = top_dimensional_part(&i, 8).unwrap();
        let again = top_dimensional_part(&i, 8).unwrap();
        prop_assert_eq!(&t.i_s, &again.i_s);
        prop_assert_eq!(&t.h, &again.h);
        prop_assert_eq!(&t.sequence.g, &again.sequence.g);

        let ring = i.ring();
        for k in 1..=t.sequence.r {
            let prefix = Ideal::new(ring, t.sequence.g[..k].to_vec()).unwrap();
            prop_assert_eq!(prefix.codim().unwrap(), k);
        }
        if let Some(d) = t.h_min_degree {
            prop_assert!(d <= t.sequence.sigma);
        }
        prop_assert!(t.colon_backends_agree);
        prop_assert!(t.i_s.contains_ideal(&i));
        prop_assert!(t.i_s.contains_ideal(&t.sequence.ideal()));
        prop_assert!(is_saturated(&t.i_s));
        prop_assert_eq!(t.i_s.codim().unwrap(), i.codim().unwrap());
        // (I : I_S) I_S ⊆ I
        prop_assert!(i.contains_ideal(&t.residual.product(&t.i_s)));
        // reg_H <= reg(A/I_S)
        let h = hilbert_data(&t.i_s).unwrap();
        prop_assert!(h.reg_h <= quotient_regularity(&t.i_s).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5))]

    #[test]
    fn hartshorne_rao_is_independent_of_the_pair(seed in any::<u64>()) {
        let ring = Ring::with_vars(&["a", "b", "c", "d"]).with_seed(seed);
        let curves = [
            Ideal::parse(&ring, &["a*c", "a*d", "b*c", "b*d"]),
            Ideal::parse(&ring, &["b^2 - a*c", "b*c - a*d", "c^2 - b*d"]),
            Ideal::parse(&ring, &["b*c - a*d", "c^3 - b*d^2", "a*c^2 - b^2*d", "b^3 - a^2*c"]),
        ];
        let expected = [vec![(0, 1)], vec![], vec![(1, 1)]];
        for (i, want) in curves.iter().zip(expected) {
            for mode in [PairMode::Linear, PairMode::Jacobian] {
                let h = hartshorne_rao(i, mode, 10).unwrap();
                prop_assert_eq!(h.module.dims.clone().into_iter().collect::<Vec<_>>(), want.clone());
                prop_assert!(h.oracle_agreement);
            }
        }
    }
}

#[test]
fn quotient_dims_match_binomials_for_the_zero_ideal() {
    let r = Ring::numbered(4);
    let z = Ideal::zero(&r);
    for d in 0..6 {
        assert_eq!(quotient_dim_by_span(&z, d), binomial(d as u64 + 3, 3));
    }
}
