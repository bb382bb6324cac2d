//! Randomized invariants, each checked against a small independent oracle.

use std::collections::{BTreeMap, HashSet};

use proptest::prelude::*;

use mhq_core::hyperseries::{Arg, SeriesSpec};
use mhq_core::macdonald::{hooks, macdonald_poly, SymSeries};
use mhq_core::partition::{enumerate, gen_window, partitions_up_to, Bounds, Indexed};
use mhq_core::qdifference::sum_identity_sides;
use mhq_core::ring::qpoch::{qpoch, qpoch_inf};
use mhq_core::{rat, rat_int, GenPartition, MPoly, Partition, Rat, Ring, Scalar};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..6, 0..5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |r| *r != rat_int(0))
}

/// A truncated formal series with a few terms, some below zero.
fn formal_scalar() -> impl Strategy<Value = Scalar> {
    (prop::collection::vec((-2i64..8, small_rat()), 0..5), 6i64..14)
        .prop_map(|(terms, prec)| Scalar::from_terms(terms, prec))
}

fn conj_oracle(parts: &[u32]) -> Vec<u32> {
    let top = parts.first().copied().unwrap_or(0);
    (0..top).map(|j| parts.iter().filter(|&&p| p > j).count() as u32).collect()
}

/// Partitions of weight `w` into at most `n` parts, by the usual recurrence.
fn count(w: i64, n: i64, memo: &mut BTreeMap<(i64, i64), u64>) -> u64 {
    if w == 0 {
        return 1;
    }
    if w < 0 || n == 0 {
        return 0;
    }
    if let Some(&c) = memo.get(&(w, n)) {
        return c;
    }
    let c = count(w, n - 1, memo) + count(w - n, n, memo);
    memo.insert((w, n), c);
    c
}

fn close(a: &Scalar, b: &Scalar) -> bool {
    let p = a.prec().min(b.prec());
    a.agrees_to(b, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involution(lam in partition()) {
        prop_assert_eq!(lam.conjugate().conjugate(), lam.clone());
        prop_assert_eq!(lam.conjugate().parts().to_vec(), conj_oracle(lam.parts()));
        prop_assert_eq!(lam.conjugate().weight(), lam.weight());
    }

    #[test]
    fn weight_and_order(lam in partition()) {
        prop_assert!(lam.parts().windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(lam.weight(), lam.parts().iter().sum::<u32>());
    }

    #[test]
    fn n_statistics_are_leg_and_arm_sums(lam in partition()) {
        let conj = conj_oracle(lam.parts());
        let (mut arms, mut legs) = (0i64, 0i64);
        for (i, &row) in lam.parts().iter().enumerate() {
            for j in 0..row {
                arms += (row - j - 1) as i64;
                legs += (conj[j as usize] - i as u32 - 1) as i64;
            }
        }
        prop_assert_eq!(lam.n_stat(), legs);
        prop_assert_eq!(lam.n_conj_stat(), arms);
    }

    #[test]
    fn complement_is_an_involution(width in 0u32..5, n in 1usize..5, seed in prop::collection::vec(0u32..5, 4)) {
        let mut v: Vec<u32> = seed.into_iter().take(n).map(|p| p.min(width)).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        let lam = Partition::new(v).unwrap();
        let hat = lam.complement(width, n).unwrap();
        let padded = lam.padded(n).unwrap();
        let want: Vec<u32> = (0..n).map(|i| width - padded[n - 1 - i]).collect();
        prop_assert_eq!(hat.padded(n).unwrap(), want);
        prop_assert_eq!(hat.complement(width, n).unwrap(), lam);
    }

    #[test]
    fn gen_partitions_shift_and_reverse(mut v in prop::collection::vec(-5i64..6, 1..5)) {
        v.sort_unstable_by(|a, b| b.cmp(a));
        let g = GenPartition::new(v.clone()).unwrap();
        let r = g.neg_reverse();
        prop_assert_eq!(r.neg_reverse(), g.clone());
        prop_assert_eq!(r.weight(), -g.weight());
        let (base, last) = g.normalize();
        prop_assert_eq!(last, *v.last().unwrap());
        prop_assert_eq!(base.to_gen(v.len()).unwrap().shift(last), g);
    }

    #[test]
    fn ring_laws_formal(a in formal_scalar(), b in formal_scalar(), c in formal_scalar()) {
        let ring = Ring::formal(1, 1, 12);
        prop_assert!(close(&(&a + &b), &(&b + &a)));
        prop_assert!(close(&ring.mul(&a, &b), &ring.mul(&b, &a)));
        prop_assert!(close(&(&(&a + &b) + &c), &(&a + &(&b + &c))));
        let left = ring.mul(&ring.mul(&a, &b), &c);
        let right = ring.mul(&a, &ring.mul(&b, &c));
        prop_assert!(close(&left, &right));
        let dist = ring.mul(&a, &(&b + &c));
        let split = ring.mul(&a, &b) + ring.mul(&a, &c);
        prop_assert!(close(&dist, &split));
    }

    #[test]
    fn products_respect_the_cap(a in formal_scalar(), b in formal_scalar()) {
        let ring = Ring::formal(1, 1, 10);
        let p = ring.mul(&a, &b);
        if let Some(d) = p.degree() {
            prop_assert!(d < p.prec());
        }
    }

    #[test]
    fn inverse_formal(c0 in nonzero_rat(), tail in formal_scalar(), shift in -3i64..4) {
        let ring = Ring::formal(1, 1, 12);
        let x = (Scalar::constant(c0) + tail.shift(1)).shift(shift);
        let inv = ring.inv(&x).unwrap();
        let one = ring.mul(&x, &inv);
        prop_assert!(one.prec() > 0);
        prop_assert!(one.agrees_to(&Scalar::one(), one.prec()));
    }

    #[test]
    fn ring_laws_rational(a in small_rat(), b in small_rat(), c in nonzero_rat()) {
        let ring = Ring::rational(1, rat(1, 3), rat(1, 9), 6).unwrap();
        let (a, b, c) = (Scalar::constant(a), Scalar::constant(b), Scalar::constant(c));
        let lhs = ring.mul(&ring.div(&(&a + &b), &c).unwrap(), &c);
        prop_assert_eq!(lhs, &a + &b);
        prop_assert_eq!(ring.mul(&a, &(&b + &c)), ring.mul(&a, &b) + ring.mul(&a, &c));
    }

    #[test]
    fn pochhammer_cocycle(a in -4i64..=4, b in -4i64..=4, coef in nonzero_rat(), e in -2i64..3) {
        let ring = Ring::formal(1, 1, 12);
        // irrational-looking coefficients keep every factor invertible
        let u = Scalar::monomial(coef * rat(11, 13), e);
        let left = qpoch(&ring, &u, a);
        let right = qpoch(&ring, &ring.mul(&u, &ring.q_pow(a)), b);
        let whole = qpoch(&ring, &u, a + b);
        if let (Ok(l), Ok(r), Ok(w)) = (left, right, whole) {
            prop_assert!(close(&ring.mul(&l, &r), &w));
        }
    }

    #[test]
    fn pochhammer_cocycle_rational(a in -4i64..=4, b in -4i64..=4, u in nonzero_rat()) {
        let ring = Ring::rational(1, rat(2, 5), rat(4, 25), 4).unwrap();
        let u = Scalar::constant(u * rat(17, 19));
        let l = qpoch(&ring, &u, a).unwrap();
        let r = qpoch(&ring, &ring.mul(&u, &ring.q_pow(a)), b).unwrap();
        prop_assert_eq!(ring.mul(&l, &r), qpoch(&ring, &u, a + b).unwrap());
    }

    #[test]
    fn euler_expansion_matches_partial_products(coef in nonzero_rat(), e in 1i64..4, k in 1u32..3) {
        let cap = 14;
        let ring = Ring::formal(1, k, cap);
        let u = Scalar::monomial(coef, e);
        let mut direct = Scalar::one();
        for j in 0..cap {
            let f = Scalar::one() - u.shift(j);
            direct = ring.mul(&direct, &f);
        }
        let got = qpoch_inf(&ring, &u).unwrap();
        prop_assert!(got.agrees_to(&direct, cap));
    }

    #[test]
    fn hooks_have_one_factor_per_cell(lam in partition(), k in 1u32..3) {
        let ring = Ring::formal(1, k, 40);
        let conj = conj_oracle(lam.parts());
        let mut h = Scalar::one();
        let mut hp = Scalar::one();
        let mut cells = 0;
        for (i, &row) in lam.parts().iter().enumerate() {
            for j in 0..row {
                let arm = (row - j - 1) as i64;
                let leg = (conj[j as usize] - i as u32 - 1) as i64;
                h = ring.mul(&h, &(Scalar::one() - ring.q_pow(arm) * ring.t_pow(leg + 1)));
                hp = ring.mul(&hp, &(Scalar::one() - ring.q_pow(arm + 1) * ring.t_pow(leg)));
                cells += 1;
            }
        }
        prop_assert_eq!(cells, lam.weight());
        let (gh, ghp) = hooks(&lam, &ring);
        prop_assert!(close(&gh, &h));
        prop_assert!(close(&ghp, &hp));
    }

    #[test]
    fn sum_identity_over_random_points(
        zs in prop::collection::vec(nonzero_rat(), 2..=3),
        t in nonzero_rat(),
    ) {
        prop_assume!(t != rat_int(1));
        let distinct: HashSet<&Rat> = zs.iter().collect();
        prop_assume!(distinct.len() == zs.len());
        for i in 0..zs.len() {
            if let Ok((l, r)) = sum_identity_sides(&zs, &t, i) {
                prop_assert_eq!(l, r);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    /// One variable, rational point: the series is the classical partial sum in `z`.
    #[test]
    fn one_variable_two_phi_one(a in nonzero_rat(), b in nonzero_rat(), c in nonzero_rat()) {
        let q = rat(1, 3);
        let dz = 6;
        let ring = Ring::rational_qk(1, q.clone(), 1, dz).unwrap();
        let c = c * rat(13, 17);
        let spec = SeriesSpec::phi(
            vec![Scalar::constant(a.clone()), Scalar::constant(b.clone())],
            vec![Scalar::constant(c.clone())],
            Arg::Principal(Scalar::var_pow(1)),
        );
        let got = spec.evaluate(&ring, dz).unwrap();
        let mut coeffs = Vec::new();
        let mut term = rat_int(1);
        let mut qm = rat_int(1);
        for m in 0..dz {
            coeffs.push((m, term.clone()));
            term = term * (rat_int(1) - &a * &qm) * (rat_int(1) - &b * &qm)
                / ((rat_int(1) - &qm * &q) * (rat_int(1) - &c * &qm));
            qm *= &q;
        }
        prop_assert_eq!(got.scalar().unwrap(), &Scalar::from_terms(coeffs, dz));
    }

    /// Certified bounds never exceed the actual valuation of a bilateral term.
    #[test]
    fn bilateral_bounds_are_lower_bounds(
        n in 1usize..=2,
        ca in nonzero_rat(),
        cb in nonzero_rat(),
        alpha in 0i64..2,
        gap in 3i64..5,
    ) {
        let ring = Ring::formal(n, 1, 10);
        let a = Scalar::monomial(ca * rat(7, 11), alpha);
        let b = Scalar::monomial(cb * rat(5, 13), alpha + gap + (n as i64 - 1));
        let x: Vec<Scalar> = (0..n).map(|i| ring.q_pow(1 + i as i64)).collect();
        let spec = SeriesSpec::psi(vec![a], vec![b], Arg::Point(x)).unwrap();
        for rec in spec.terms(&ring, 8).unwrap() {
            if let Some(v) = rec.value.val() {
                prop_assert!(rec.bound <= v, "{}: bound {} > val {}", rec.index, rec.bound, v);
            }
        }
    }

    /// Macdonald basis to monomials and back.
    #[test]
    fn basis_round_trip(n in 1usize..=3, coeffs in prop::collection::vec(small_rat(), 12)) {
        let ring = Ring::rational_qk(n, rat(1, 2), 1, 4).unwrap();
        let mut s = SymSeries::new(n, 4);
        for (lam, c) in partitions_up_to(4, n).into_iter().zip(coeffs) {
            s.add(lam, Scalar::constant(c));
        }
        let back = SymSeries::from_monomial(&s.to_monomial(&ring).unwrap(), 4, &ring).unwrap();
        prop_assert_eq!(back.mac, s.mac);
    }
}

#[test]
fn enumeration_counts_match_the_recurrence() {
    let mut memo = BTreeMap::new();
    for n in 0..=4usize {
        for w in 0..=8i64 {
            let Indexed::Plain(list) = enumerate(n, Bounds::MaxWeight(w)).unwrap() else { panic!() };
            let want: u64 = (0..=w).map(|x| count(x, n as i64, &mut memo)).sum();
            assert_eq!(list.len() as u64, want, "n={n} w={w}");
            let uniq: HashSet<&Partition> = list.iter().collect();
            assert_eq!(uniq.len(), list.len());
            assert!(list.windows(2).all(|p| p[0].weight() <= p[1].weight()));
        }
    }
}

#[test]
fn gen_window_is_complete() {
    let lo = [-2i64, -2, -2];
    let hi = [2i64, 2, 2];
    let got: HashSet<GenPartition> = gen_window(3, &lo, &hi).into_iter().collect();
    let mut want = HashSet::new();
    for a in -2..=2 {
        for b in -2..=a {
            for c in -2..=b {
                want.insert(GenPartition::new(vec![a, b, c]).unwrap());
            }
        }
    }
    assert_eq!(got, want);
}

#[test]
fn shift_rule_against_direct_construction() {
    let ring = Ring::rational_qk(2, rat(1, 3), 2, 4).unwrap();
    for lam in partitions_up_to(3, 2) {
        let up = Partition::new(lam.padded(2).unwrap().iter().map(|p| p + 1).collect()).unwrap();
        let shifted = macdonald_poly(&lam, 2, &ring).unwrap().to_mpoly().shift(&[1, 1]);
        let direct: MPoly = macdonald_poly(&up, 2, &ring).unwrap().to_mpoly();
        assert_eq!(shifted, direct, "λ = {lam}");
    }
}

#[test]
fn terminating_series_stop_at_n() {
    let ring = Ring::formal(2, 1, 10);
    for big_n in 0..=2i64 {
        let spec = SeriesSpec::phi(
            vec![ring.q_pow(-big_n), Scalar::monomial(rat(3, 7), 1)],
            vec![Scalar::monomial(rat(5, 11), 2)],
            Arg::Principal(ring.q_pow(1)),
        );
        for rec in spec.terms(&ring, 10).unwrap() {
            if rec.index.parts()[0] > big_n {
                assert!(rec.value.is_exact_zero(), "N={big_n} λ={}", rec.index);
            }
        }
    }
}
