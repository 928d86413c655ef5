use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::cherednik::all_simples;
use crate::group::presets::preset;
use crate::group::ExactParams;
use crate::lattice::{FullSubgroupLattice, DEFAULT_LATTICE_CAP};

fn ctx_b(name: &str) -> SkewContext {
    let g = Arc::new(preset(name).unwrap());
    let l = Arc::new(FullSubgroupLattice::enumerate(&g, DEFAULT_LATTICE_CAP).unwrap());
    SkewContext::flavor_b(g, l)
}

fn ctx_a_top(name: &str) -> SkewContext {
    let g = Arc::new(preset(name).unwrap());
    let l = Arc::new(FullSubgroupLattice::enumerate(&g, DEFAULT_LATTICE_CAP).unwrap());
    let top = l.top();
    SkewContext::flavor_a(g, l, top)
}

#[test]
fn zero_parameters_give_finite_order() {
    for name in ["S3", "B2"] {
        let ctx = ctx_b(name);
        let g = ctx.group();
        let k = ExactParams::zero(g).to_complex();
        let (x0, _) = choose_basepoint(g, &loop_hyperplanes(&ctx));
        for e in all_simples(&ctx).unwrap() {
            let conn = Connection::from_module(&ctx, &e, &k);
            for h in loop_hyperplanes(&ctx) {
                let m = braided_monodromy(g, &conn, h, &x0, DEFAULT_TOL).unwrap();
                let rho = conn.fiber_action(g.hyperplane(h).distinguished).unwrap();
                assert!(max_abs(&(&m.matrix - rho)) < 1e-12);
                let r = relation_report(g, &conn, &ctx, &m, &k);
                assert!(r.power_residual < 1e-8, "{name} {h}");
            }
        }
    }
}

#[test]
fn rank_one_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for m in [2usize, 3] {
        let ctx = ctx_a_top(&format!("G({m},1,1)"));
        let g = ctx.group();
        let k = ComplexParams::random_complex(g, 0.3, &mut rng);
        let x0 = vec![Complex64::new(1.0, 0.5)];
        let s = g.hyperplane(0).distinguished;
        for e in all_simples(&ctx).unwrap() {
            let conn = Connection::from_module(&ctx, &e, &k);
            let mono = braided_monodromy(g, &conn, 0, &x0, DEFAULT_TOL).unwrap();
            // the character value on s_H is ζ^{-j} for the ε_j it lives on
            let chi_s = e.group_matrix(s)[(0, 0)].to_complex();
            let j = (0..m)
                .find(|&j| (chi_s - Complex64::from_polar(1.0, -2.0 * PI * j as f64 / m as f64)).norm() < 1e-12)
                .unwrap();
            let expected = chi_s * (Complex64::new(0.0, -2.0 * PI) * k.k(0, j as i64)).exp();
            assert!((mono.matrix[(0, 0)] - expected).norm() < 1e-7, "m={m} j={j}");
            assert!((rank_one_eigenvalue(m, j, *k.k(0, j as i64)) - expected).norm() < 1e-12);
        }
    }
}

#[test]
fn lattice_relations_with_random_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in ["S3", "B2"] {
        let ctx = ctx_b(name);
        let g = ctx.group();
        let k = ComplexParams::random_complex(g, 0.3, &mut rng);
        let (x0, _) = choose_basepoint(g, &loop_hyperplanes(&ctx));
        for e in all_simples(&ctx).unwrap() {
            let conn = Connection::from_module(&ctx, &e, &k);
            for h in loop_hyperplanes(&ctx) {
                let mono = braided_monodromy(g, &conn, h, &x0, DEFAULT_TOL).unwrap();
                let r = relation_report(g, &conn, &ctx, &mono, &k);
                assert!(r.power_residual < 1e-7, "{name} {:?} {r:?}", e.label());
                assert!(r.commutes_with_e < 1e-7, "{name} {:?} {r:?}", e.label());
                assert!(r.predicted_residual < 1e-7, "{name} {:?} {r:?}", e.label());
            }
        }
    }
}

#[test]
fn flavor_a_relations() {
    let g = Arc::new(preset("B2").unwrap());
    let l = Arc::new(FullSubgroupLattice::enumerate(&g, DEFAULT_LATTICE_CAP).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let k = ComplexParams::random_complex(&g, 0.3, &mut rng);
    let ctx = SkewContext::flavor_a(g.clone(), l.clone(), l.atom(0));
    let hs = loop_hyperplanes(&ctx);
    assert!(hs.len() >= 2);
    let (x0, _) = choose_basepoint(&g, &hs);
    for e in all_simples(&ctx).unwrap() {
        let conn = Connection::from_module(&ctx, &e, &k);
        for &h in &hs {
            let mono = braided_monodromy(&g, &conn, h, &x0, DEFAULT_TOL).unwrap();
            let r = relation_report(&g, &conn, &ctx, &mono, &k);
            assert!(r.power_residual < 1e-7 && r.predicted_residual < 1e-7, "{h} {r:?}");
        }
    }
}

#[test]
fn flatness_and_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let ctx = ctx_b("B2");
    let g = ctx.group();
    let k = ComplexParams::random_complex(g, 0.3, &mut rng);
    let hs = loop_hyperplanes(&ctx);
    let (x0, margin) = choose_basepoint(g, &hs);
    let simples = all_simples(&ctx).unwrap();
    let e = simples.iter().max_by_key(|e| e.dim()).unwrap();
    let conn = Connection::from_module(&ctx, e, &k);
    assert!(contractible_residual(&conn, &x0, margin / 4.0, DEFAULT_TOL).unwrap() < 1e-7);
    for h in hs.iter().copied().take(2) {
        assert!(homotopy_residual(g, &conn, h, &x0, DEFAULT_TOL).unwrap() < 1e-7);
    }
    for (h, _, w) in orbit_pairs(&ctx) {
        assert!(orbit_conjugacy_residual(g, &conn, h, w, &x0, DEFAULT_TOL).unwrap() < 1e-6);
    }
}

#[test]
fn regularity_norms_stay_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let ctx = ctx_b("S3");
    let g = ctx.group();
    let k = ComplexParams::random_complex(g, 0.3, &mut rng);
    let (x0, _) = choose_basepoint(g, &loop_hyperplanes(&ctx));
    let radii = [1e-1, 1e-2, 1e-3, 1e-4];
    for e in all_simples(&ctx).unwrap() {
        let conn = Connection::from_module(&ctx, &e, &k);
        let p = regularity_probe(g, &conn, 0, &x0, &radii, DEFAULT_TOL).unwrap();
        assert!(p.spread <= 10.0, "{p:?}");
    }
    let zero = ExactParams::zero(g).to_complex();
    let conn = Connection::from_module(&ctx, &all_simples(&ctx).unwrap()[2], &zero);
    let p = regularity_probe(g, &conn, 1, &x0, &radii, DEFAULT_TOL).unwrap();
    assert!(p.norms.iter().all(|n| (n - 1.0).abs() < 1e-9));
}
