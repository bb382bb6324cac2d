//! The Macdonald-polynomial kernel.

pub mod cache;
pub mod expand;
pub mod factorials;
pub mod inner;
pub mod poly;

pub use expand::{expand_in_p, f_expand, from_p_basis, u_eval, SymSeries};
pub use factorials::{
    gen_factorial, gen_factorial_factored, gen_factorial_inf, ground_closed, hooks, hprime_inf, norm_ratio, parts_i64,
    principal_spec, psi_weight, psi_weight_factored,
};
pub use inner::{ct_a_closed, ct_a_direct, delta_q, inner_product, normalized_ct};
pub use poly::{macdonald_gen, macdonald_poly, macdonald_poly_uncached, monomial_symmetric, MacPoly};
