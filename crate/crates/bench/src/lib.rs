//! Fixed workloads shared by the benchmarks.

use mhq_core::hyperseries::{Arg, SeriesSpec};
use mhq_core::identities::{default_instances, lookup, Entry, ParamSpec};
use mhq_core::macdonald::{inner_product, macdonald_poly_uncached};
use mhq_core::ring::qpoch::qpoch_inf;
use mhq_core::{rat, Partition, Ring, Scalar};

pub fn rational_ring(n: usize) -> Ring {
    Ring::rational_qk(n, rat(2, 3), 2, 8).expect("valid point")
}

/// Builds `P_λ` from scratch, bypassing both caches.
pub fn macdonald(lambda: &[u32], n: usize, ring: &Ring) -> usize {
    let lam = Partition::new(lambda.to_vec()).expect("partition");
    macdonald_poly_uncached(&lam, n, ring).expect("P_λ").coeffs.len()
}

pub fn norm(lambda: &[u32], n: usize, ring: &Ring) -> Scalar {
    let lam = Partition::new(lambda.to_vec()).expect("partition");
    let p = macdonald_poly_uncached(&lam, n, ring).expect("P_λ").to_mpoly();
    inner_product(&p, &p, ring).expect("inner product")
}

pub fn euler_product(cap: i64) -> Scalar {
    let ring = Ring::formal(1, 1, cap);
    qpoch_inf(&ring, &Scalar::monomial(rat(3, 7), 1)).expect("converges")
}

/// A two-variable `1Ψ1` at `x = (q, q^2)` through `q^target`.
pub fn one_psi_one(target: i64) -> usize {
    let ring = Ring::formal(2, 1, target + 16);
    let spec = SeriesSpec::psi(
        vec![Scalar::monomial(rat(2, 3), 1)],
        vec![Scalar::monomial(rat(-3, 5), 6)],
        Arg::Point(vec![ring.q_pow(1), ring.q_pow(2)]),
    )
    .expect("spec");
    spec.terms(&ring, target).expect("window").len()
}

/// The default cases of one identity.
pub fn cases(id: &str) -> Vec<(&'static Entry, ParamSpec)> {
    default_instances(&[lookup(id).expect("registered")], 1)
}
