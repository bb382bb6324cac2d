//! Macdonald kernel checked against an independent Gram–Schmidt construction.

use std::collections::BTreeMap;

use mhq_core::macdonald::{
    ground_closed, hooks, inner_product, macdonald_poly, monomial_symmetric, norm_ratio, principal_spec, u_eval,
};
use mhq_core::partition::{partitions_of, partitions_up_to};
use mhq_core::{rat, MPoly, Partition, Ring, Scalar};

const CAP: i64 = 10;

/// Gram–Schmidt in the monomial basis, lowest partitions first.
fn gram_schmidt(d: u32, n: usize, ring: &Ring) -> BTreeMap<Partition, MPoly> {
    let mut basis = partitions_of(d, n, d);
    basis.reverse();
    let mut done: Vec<(Partition, MPoly, Scalar)> = Vec::new();
    for lam in basis {
        let m = monomial_symmetric(&lam, n).unwrap();
        let mut p = m.clone();
        for (_, pm, norm) in &done {
            let c = ring.div(&inner_product(&m, pm, ring).unwrap(), norm).unwrap();
            p = p.sub(&pm.scale(&c, ring));
        }
        let norm = inner_product(&p, &p, ring).unwrap();
        done.push((lam, p, norm));
    }
    done.into_iter().map(|(l, p, _)| (l, p)).collect()
}

fn polys_agree(a: &MPoly, b: &MPoly, target: i64) -> bool {
    let d = a.sub(b);
    let ok = d.terms().all(|(_, c)| c.agrees_to(&Scalar::zero(), target));
    ok
}

#[test]
fn production_matches_gram_schmidt() {
    for n in [2usize, 3] {
        for k in [1u32, 2] {
            let ring = Ring::formal(n, k, CAP);
            for d in 0..=4u32 {
                let gs = gram_schmidt(d, n, &ring);
                for (lam, p) in gs {
                    let prod = macdonald_poly(&lam, n, &ring).unwrap().to_mpoly();
                    assert!(polys_agree(&prod, &p, CAP), "n={n} k={k} λ={lam}");
                }
            }
        }
    }
}

#[test]
fn triangular_and_monic() {
    let ring = Ring::rational(3, rat(2, 3), rat(3, 7), 10).unwrap();
    for lam in partitions_up_to(6, 3) {
        let p = macdonald_poly(&lam, 3, &ring).unwrap();
        assert_eq!(p.coeff(&lam), Scalar::one());
        for mu in p.coeffs.keys() {
            assert!(mu.dominated_by(&lam), "{mu} appears in P_{lam}");
        }
    }
}

#[test]
fn norms_and_orthogonality() {
    for n in [2usize, 3] {
        for k in [1u32, 2] {
            let ring = Ring::formal(n, k, CAP);
            let one = MPoly::one(n);
            let ground = inner_product(&one, &one, &ring).unwrap();
            assert!(ground.agrees_to(&ground_closed(n, &ring).unwrap(), CAP));
            let parts = partitions_up_to(4, n);
            for lam in &parts {
                let pl = macdonald_poly(lam, n, &ring).unwrap().to_mpoly();
                for mu in &parts {
                    let pm = macdonald_poly(mu, n, &ring).unwrap().to_mpoly();
                    let ip = inner_product(&pl, &pm, &ring).unwrap();
                    if lam == mu {
                        let want = ring.mul(&norm_ratio(lam, n, &ring).unwrap(), &ground);
                        assert!(ip.agrees_to(&want, CAP), "norm n={n} k={k} λ={lam}");
                    } else {
                        assert!(ip.agrees_to(&Scalar::zero(), CAP), "⟨P_{lam}, P_{mu}⟩ n={n} k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn specialization_formula() {
    let ring = Ring::rational(3, rat(1, 3), rat(2, 5), 10).unwrap();
    for lam in partitions_up_to(5, 3) {
        let direct = u_eval(&[0, 0, 0], &lam, 3, &ring).unwrap();
        assert_eq!(direct, principal_spec(&lam, 3, &ring).unwrap(), "λ={lam}");
    }
    let (h, _) = hooks(&Partition::new(vec![2, 1]).unwrap(), &ring);
    assert!(!h.is_exact_zero());
}
