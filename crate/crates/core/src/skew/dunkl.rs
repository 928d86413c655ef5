//! Dunkl operators and Euler elements.

use super::{Flavor, RatFunc, SkewContext, SkewError, SkewOperator};
use crate::exact::Cyclotomic;
use crate::group::ExactParams;

/// `T_y = ∂_y + sum_H (alpha_H(y) / alpha_H) a_H e_H`, the sum running over
/// `A_0` in flavor A (where `e_H` is the unit) and over all hyperplanes in
/// flavor B.
pub fn dunkl(ctx: &SkewContext, y: &[Cyclotomic], k: &ExactParams) -> SkewOperator {
    let g = ctx.group();
    let mut out = SkewOperator::derivative(ctx, y);
    for &h in ctx.hyperplanes() {
        let ay = g.hyperplane(h).eval(y);
        if ay.is_zero() {
            continue;
        }
        let f = RatFunc::inverse_root(g, h).scale(&ay);
        let term = SkewOperator::from_group_algebra(ctx, &f, &g.a_for(h, k), ctx.e_h(h))
            .expect("W_H lies in the coefficient group");
        out = out.add(&term, ctx);
    }
    out
}

/// Dunkl operator of the pair `(W, W_0)`; `ctx` must be of flavor A.
pub fn dunkl_t(ctx: &SkewContext, y: &[Cyclotomic], k: &ExactParams) -> Result<SkewOperator, SkewError> {
    if ctx.flavor() != Flavor::A {
        return Err(SkewError::FlavorMismatch);
    }
    Ok(dunkl(ctx, y, k))
}

/// Lattice Dunkl operator; `ctx` must be of flavor B.
pub fn dunkl_t_tilde(
    ctx: &SkewContext,
    y: &[Cyclotomic],
    k: &ExactParams,
) -> Result<SkewOperator, SkewError> {
    if ctx.flavor() != Flavor::B {
        return Err(SkewError::FlavorMismatch);
    }
    Ok(dunkl(ctx, y, k))
}

/// `sum_H a_H e_H` over the pole hyperplanes of `ctx`.
pub fn a_sum(ctx: &SkewContext, k: &ExactParams) -> SkewOperator {
    let g = ctx.group();
    let one = RatFunc::one(g);
    let mut out = SkewOperator::zero(ctx);
    for &h in ctx.hyperplanes() {
        let term = SkewOperator::from_group_algebra(ctx, &one, &g.a_for(h, k), ctx.e_h(h))
            .expect("W_H lies in the coefficient group");
        out = out.add(&term, ctx);
    }
    out
}

/// `eu = sum_i x_i T_{y_i} - sum_H a_H e_H` for the standard basis `y_i` and
/// dual coordinates `x_i`.
pub fn euler_element(ctx: &SkewContext, k: &ExactParams) -> SkewOperator {
    let g = ctx.group();
    let mut out = SkewOperator::zero(ctx);
    for i in 0..ctx.dim() {
        let x = SkewOperator::coordinate(ctx, i);
        let t = dunkl(ctx, &g.basis_vector(i), k);
        out = out.add(&x.mul(&t, ctx), ctx);
    }
    out.sub(&a_sum(ctx, k), ctx)
}

/// `g T_y g^-1 == T_{g(y)}`
pub fn equivariance_check(
    ctx: &SkewContext,
    y: &[Cyclotomic],
    g: usize,
    k: &ExactParams,
) -> Result<bool, SkewError> {
    let lhs = dunkl(ctx, y, k).conjugate(g, ctx)?;
    let gy = ctx.group().act_on_vector(g, y);
    Ok(lhs == dunkl(ctx, &gy, k))
}


#[cfg(test)]
mod order_three_tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::group::presets::preset;
    use crate::lattice::{FullSubgroupLattice, DEFAULT_LATTICE_CAP};

    #[test]
    fn g4_dunkl_operators_commute_in_both_flavors() {
        let g = Arc::new(preset("G4").unwrap());
        let l = Arc::new(FullSubgroupLattice::enumerate(&g, DEFAULT_LATTICE_CAP).unwrap());
        let k = ExactParams::random_rational(&g, &mut ChaCha8Rng::seed_from_u64(2));
        for ctx in [
            SkewContext::flavor_a(g.clone(), l.clone(), l.top()),
            SkewContext::flavor_a(g.clone(), l.clone(), l.atom(0)),
            SkewContext::flavor_b(g.clone(), l.clone()),
        ] {
            let t0 = dunkl(&ctx, &g.basis_vector(0), &k);
            let t1 = dunkl(&ctx, &g.basis_vector(1), &k);
            assert!(t0.commutator(&t1, &ctx).is_zero(), "{:?}", ctx.flavor());
            let w = ctx.coefficient_group()[ctx.coefficient_group().len() - 1];
            assert!(equivariance_check(&ctx, &g.basis_vector(0), w, &k).unwrap());
        }
    }
}
