//! Self-contained verification routines returning serializable reports.
//! Both the command-line suites and the acceptance harness are built on
//! these.

use std::sync::Arc;

use serde::Serialize;

use crate::cherednik::{all_simples, order_compare, CherednikAlgebra, ModuleError, SimpleOrder, StandardSlice};
use crate::exact::Cyclotomic;
use crate::group::{ExactParams, GroupAlgebraElement, ReflectionGroup};
use crate::lattice::{FullSubgroupLattice, MobiusElement};
use crate::skew::{dunkl, euler_element, SkewContext, SkewOperator};

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: usize,
    pub reflections: usize,
    pub hyperplanes: usize,
    /// `m_H` per hyperplane.
    pub orders: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

pub fn group_summary(g: &ReflectionGroup) -> GroupSummary {
    GroupSummary {
        name: g.name().to_string(),
        order: g.order(),
        reflections: g.reflections().len(),
        hyperplanes: g.hyperplanes().len(),
        orders: g.hyperplanes().iter().map(|h| h.order).collect(),
        orbits: g.hyperplane_orbits().to_vec(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdempotentReport {
    pub orthogonal: bool,
    pub idempotent: bool,
    pub complete: bool,
    /// `w a_H w^-1 = a_{w(H)}` for every `w` and `H`.
    pub a_equivariant: bool,
    pub gamma_equivariant: bool,
    pub passed: bool,
}

/// `ε_{H,i} ε_{H,j} = δ_ij ε_{H,i}`, `sum_j ε_{H,j} = 1` and equivariance
/// of `{a_H}` and `{γ_H}` at parameters `k`.
pub fn idempotent_check(g: &ReflectionGroup, k: &ExactParams) -> IdempotentReport {
    let mut orthogonal = true;
    let mut idempotent = true;
    let mut complete = true;
    let nh = g.hyperplanes().len();
    for h in 0..nh {
        let eps = g.epsilon_idempotents(h);
        let mut sum = GroupAlgebraElement::zero();
        for (i, a) in eps.iter().enumerate() {
            sum = sum.add(a);
            for (j, b) in eps.iter().enumerate() {
                let p = a.mul(b, g);
                if i == j {
                    idempotent &= p == *a;
                } else {
                    orthogonal &= p.is_zero();
                }
            }
        }
        complete &= sum == GroupAlgebraElement::identity();
    }
    let a: Vec<GroupAlgebraElement> = (0..nh).map(|h| g.a_for(h, k)).collect();
    let gamma: Vec<GroupAlgebraElement> = (0..nh).map(|h| g.gamma_for(h, k)).collect();
    let equivariant = |family: &[GroupAlgebraElement]| {
        (0..g.order()).all(|w| (0..nh).all(|h| family[h].conjugate_by(w, g) == family[g.act_on_hyperplane(w, h)]))
    };
    let a_equivariant = equivariant(&a);
    let gamma_equivariant = equivariant(&gamma);
    IdempotentReport {
        passed: orthogonal && idempotent && complete && a_equivariant && gamma_equivariant,
        orthogonal,
        idempotent,
        complete,
        a_equivariant,
        gamma_equivariant,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub size: usize,
    /// `join(a, b)` is the smallest node whose element set contains both.
    pub join_matches_inclusion: bool,
    pub pairs_checked: usize,
    /// `f_x f_y = δ_xy f_x`, `sum_x f_x = 1`, `e_x f_y = [x ≤ y] f_y`.
    pub mobius_diagonalizes: bool,
    pub dimension_total: usize,
    pub dimension_expected: usize,
    pub passed: bool,
}

pub fn lattice_check(g: &ReflectionGroup, l: &FullSubgroupLattice) -> LatticeReport {
    let n = l.len();
    let contains = |a: usize, b: usize| {
        let big = &l.node(a).elements;
        l.node(b).elements.iter().all(|w| big.binary_search(w).is_ok())
    };
    let mut join_ok = true;
    for a in 0..n {
        for b in 0..n {
            let upper: Vec<usize> = (0..n).filter(|&c| contains(c, a) && contains(c, b)).collect();
            let least = upper
                .iter()
                .copied()
                .find(|&c| upper.iter().all(|&d| contains(d, c)));
            join_ok &= least == Some(l.join(a, b));
        }
    }
    let f: Vec<MobiusElement> = (0..n).map(|x| l.idempotent(x)).collect();
    let mut diag = true;
    let mut sum = MobiusElement::zero();
    for x in 0..n {
        sum = sum.add(&f[x]);
        for y in 0..n {
            let p = f[x].mul(&f[y], l);
            diag &= if x == y { p == f[x] } else { p.is_zero() };
            let e = MobiusElement::e(x).mul(&f[y], l);
            diag &= if l.leq(x, y) { e == f[y] } else { e.is_zero() };
        }
    }
    diag &= sum == MobiusElement::e(l.bottom());
    let dims = l.dimension_check(g);
    LatticeReport {
        size: n,
        join_matches_inclusion: join_ok,
        pairs_checked: n * n,
        mobius_diagonalizes: diag,
        dimension_total: dims.total,
        dimension_expected: dims.expected,
        passed: join_ok && diag && dims.holds,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DunklReport {
    pub pairs_checked: usize,
    pub commute: bool,
    pub equivariance_checked: usize,
    pub equivariant: bool,
    pub passed: bool,
}

/// `[T_i, T_j] = 0` for all basis pairs and `g T_i g^-1 = T_{g e_i}` for all
/// `g` in the coefficient group.
pub fn dunkl_check(ctx: &SkewContext, k: &ExactParams) -> DunklReport {
    let g = ctx.group();
    let n = ctx.dim();
    let t: Vec<SkewOperator> = (0..n).map(|i| dunkl(ctx, &g.basis_vector(i), k)).collect();
    let mut pairs = 0;
    let mut commute = true;
    for i in 0..n {
        for j in i + 1..n {
            pairs += 1;
            commute &= t[i].commutator(&t[j], ctx).is_zero();
        }
    }
    let mut checked = 0;
    let mut equivariant = true;
    for &w in ctx.coefficient_group() {
        for (i, ti) in t.iter().enumerate() {
            checked += 1;
            let lhs = ti.conjugate(w, ctx).expect("element of the coefficient group");
            let wy = g.act_on_vector(w, &g.basis_vector(i));
            let mut rhs = SkewOperator::zero(ctx);
            for (j, c) in wy.iter().enumerate() {
                rhs = rhs.add(&t[j].scale(c), ctx);
            }
            equivariant &= lhs == rhs;
        }
    }
    DunklReport {
        pairs_checked: pairs,
        commute,
        equivariance_checked: checked,
        equivariant,
        passed: commute && equivariant,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EulerReport {
    pub x_relation: bool,
    pub t_relation: bool,
    pub group_central: bool,
    /// `[eu, e_λ] = 0` (flavor B; vacuous in flavor A).
    pub lattice_central: bool,
    pub passed: bool,
}

pub fn euler_check(ctx: &SkewContext, k: &ExactParams) -> EulerReport {
    let g = ctx.group();
    let eu = euler_element(ctx, k);
    let mut x_relation = true;
    let mut t_relation = true;
    for i in 0..ctx.dim() {
        let x = SkewOperator::coordinate(ctx, i);
        x_relation &= eu.commutator(&x, ctx) == x;
        let t = dunkl(ctx, &g.basis_vector(i), k);
        t_relation &= eu.commutator(&t, ctx) == t.scale(&Cyclotomic::from_int(-1));
    }
    let group_central = ctx.coefficient_group().iter().all(|&w| {
        let op = SkewOperator::group_element(ctx, w).expect("coefficient group");
        eu.commutator(&op, ctx).is_zero()
    });
    let lattice_central = match ctx.flavor() {
        crate::skew::Flavor::A => true,
        crate::skew::Flavor::B => (0..ctx.lattice().len()).all(|l| {
            let op = SkewOperator::lattice_element(ctx, l).expect("flavor B");
            eu.commutator(&op, ctx).is_zero()
        }),
    };
    EulerReport {
        passed: x_relation && t_relation && group_central && lattice_central,
        x_relation,
        t_relation,
        group_central,
        lattice_central,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SimpleSummary {
    pub node: usize,
    pub irrep: usize,
    pub orbit_size: usize,
    pub dim: usize,
    pub c: String,
    pub irreducible: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModulesReport {
    pub simples: Vec<SimpleSummary>,
    pub sum_dim_squared: usize,
    /// `|L| |W|` in flavor B, `|N|` in flavor A.
    pub expected: usize,
    pub all_scalar: bool,
    pub all_irreducible: bool,
    /// The module on the bottom orbit with the trivial character has `c = 0`.
    pub bottom_c_zero: bool,
    /// `(i, j)` with `F_j < E_i`.
    pub order_pairs: Vec<(usize, usize)>,
    pub passed: bool,
}

pub fn modules_check(ctx: &SkewContext, k: &ExactParams) -> Result<ModulesReport, ModuleError> {
    let simples = all_simples(ctx)?;
    let mut all_scalar = true;
    let mut cs = Vec::new();
    let mut summaries = Vec::new();
    for e in &simples {
        let c = e.c_scalar(ctx, k);
        all_scalar &= c.is_ok();
        let c = c.unwrap_or_else(|_| Cyclotomic::zero());
        summaries.push(SimpleSummary {
            node: e.label().node,
            irrep: e.label().irrep,
            orbit_size: e.orbit().len(),
            dim: e.dim(),
            c: c.to_string(),
            irreducible: e.is_irreducible(),
        });
        cs.push(c);
    }
    let mut order_pairs = Vec::new();
    for (i, a) in cs.iter().enumerate() {
        for (j, b) in cs.iter().enumerate() {
            if order_compare(a, b) == SimpleOrder::Greater {
                order_pairs.push((i, j));
            }
        }
    }
    let sum: usize = simples.iter().map(|e| e.dim() * e.dim()).sum();
    let expected = match ctx.flavor() {
        crate::skew::Flavor::A => ctx.coefficient_group().len(),
        crate::skew::Flavor::B => ctx.lattice().len() * ctx.group().order(),
    };
    let bottom_c_zero = match ctx.flavor() {
        crate::skew::Flavor::A => true,
        crate::skew::Flavor::B => simples
            .iter()
            .zip(&cs)
            .find(|(e, _)| e.label().node == ctx.lattice().bottom() && e.label().irrep == 0)
            .is_some_and(|(_, c)| c.is_zero()),
    };
    let all_irreducible = summaries.iter().all(|s| s.irreducible);
    Ok(ModulesReport {
        passed: sum == expected && all_scalar && all_irreducible && bottom_c_zero,
        simples: summaries,
        sum_dim_squared: sum,
        expected,
        all_scalar,
        all_irreducible,
        bottom_c_zero,
        order_pairs,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PbwReport {
    pub confluence_triples: usize,
    pub confluence_failures: Vec<String>,
    pub embedding_checked: usize,
    pub embedding_failures: Vec<String>,
    /// Per simple: graded dimensions, expected dimensions, y-commutation and
    /// Euler shift.
    pub slices: Vec<crate::cherednik::SliceReport>,
    pub passed: bool,
}

pub fn pbw_check(ctx: &SkewContext, k: &ExactParams, degree: u32) -> Result<PbwReport, ModuleError> {
    let alg = CherednikAlgebra::new(ctx.clone(), k.clone());
    let conf = alg.confluence_check();
    let emb = alg.embedding_check();
    let mut slices = Vec::new();
    for e in all_simples(ctx)? {
        let slice = StandardSlice::new(&alg, &e, degree).map_err(|_| ModuleError::AxiomsFail)?;
        slices.push(slice.report());
    }
    Ok(PbwReport {
        passed: conf.passed && emb.passed && slices.iter().all(|s| s.passed),
        confluence_triples: conf.triples_checked,
        confluence_failures: conf.failures,
        embedding_checked: emb.triples_checked,
        embedding_failures: emb.failures,
        slices,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LoopResult {
    pub node: usize,
    pub irrep: usize,
    /// The module lives on the bottom orbit, where every `e_λ` with `λ ≠ 1`
    /// acts by zero.
    pub bottom_fiber: bool,
    pub hyperplane: usize,
    pub order: usize,
    pub power_residual: f64,
    pub predicted_residual: f64,
    pub commutes_with_e: f64,
    pub steps: usize,
    pub error_estimate: f64,
    /// Row-major `[re, im]` entries of `M(σ_H)`.
    pub matrix: Vec<Vec<[f64; 2]>>,
    /// Least-squares `c` in `M^m e_H = sum_j c_j M^j e_H`.
    pub fitted: Vec<[f64; 2]>,
    pub fit_residual: f64,
    pub fit_conditioning: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitDelta {
    pub hyperplane: usize,
    pub image: usize,
    pub element: usize,
    /// `‖M(σ_{wH}) - ρ(w) M(σ_H) ρ(w)^-1‖`
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonodromyReport {
    pub basepoint: Vec<[f64; 2]>,
    pub margin: f64,
    pub loops: Vec<LoopResult>,
    pub max_power_residual: f64,
    pub max_predicted_residual: f64,
    pub contractible_residual: f64,
    pub max_orbit_conjugacy_residual: f64,
    pub orbit_deltas: Vec<OrbitDelta>,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CheckError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Monodromy(#[from] crate::monodromy::MonodromyError),
}

/// Braided-reflection monodromy for every simple module and loop
/// hyperplane, with relation residuals, plus flatness (a contractible
/// square) and orbit conjugacy on the largest module. Residuals are
/// compared against `threshold`; orbit conjugacy against ten times it.
pub fn monodromy_check(
    ctx: &SkewContext,
    k: &crate::group::ComplexParams,
    threshold: f64,
) -> Result<MonodromyReport, CheckError> {
    use crate::monodromy::*;
    let g = ctx.group();
    let hs = loop_hyperplanes(ctx);
    let (x0, margin) = choose_basepoint(g, &hs);
    let simples = all_simples(ctx)?;
    let bottom = ctx.lattice().bottom();
    let mut loops = Vec::new();
    for e in &simples {
        let conn = Connection::from_module(ctx, e, k);
        for &h in &hs {
            let mono = braided_monodromy(g, &conn, h, &x0, DEFAULT_TOL)?;
            let r = relation_report(g, &conn, ctx, &mono, k);
            loops.push(LoopResult {
                node: e.label().node,
                irrep: e.label().irrep,
                bottom_fiber: e.orbit() == [bottom],
                hyperplane: h,
                order: r.order,
                power_residual: r.power_residual,
                predicted_residual: r.predicted_residual,
                commutes_with_e: r.commutes_with_e,
                steps: mono.steps,
                error_estimate: mono.error_estimate,
                matrix: (0..mono.matrix.nrows())
                    .map(|i| (0..mono.matrix.ncols()).map(|j| [mono.matrix[(i, j)].re, mono.matrix[(i, j)].im]).collect())
                    .collect(),
                fitted: r.fitted,
                fit_residual: r.fit_residual,
                fit_conditioning: r.fit_conditioning,
            });
        }
    }
    let largest = simples.iter().max_by_key(|e| e.dim()).expect("at least one simple");
    let conn = Connection::from_module(ctx, largest, k);
    let contractible = contractible_residual(&conn, &x0, margin / 4.0, DEFAULT_TOL)?;
    let pairs = orbit_pairs(ctx);
    let mut deltas = Vec::new();
    for &(h, image, element) in &pairs {
        let residual = orbit_conjugacy_residual(g, &conn, h, element, &x0, DEFAULT_TOL)?;
        deltas.push(OrbitDelta {
            hyperplane: h,
            image,
            element,
            residual,
        });
    }
    let conj = deltas.iter().map(|d| d.residual).fold(0.0, f64::max);
    let max_of = |f: fn(&LoopResult) -> f64| loops.iter().map(f).fold(0.0, f64::max);
    let max_power = max_of(|l| l.power_residual);
    let max_predicted = max_of(|l| l.predicted_residual.max(l.commutes_with_e));
    Ok(MonodromyReport {
        basepoint: x0.iter().map(|z| [z.re, z.im]).collect(),
        margin,
        passed: max_power <= threshold
            && max_predicted <= threshold
            && contractible <= threshold
            && conj <= 10.0 * threshold,
        loops,
        max_power_residual: max_power,
        max_predicted_residual: max_predicted,
        contractible_residual: contractible,
        max_orbit_conjugacy_residual: conj,
        orbit_deltas: deltas,
        threshold,
    })
}

/// Flavor A contexts for `W_0 = ` the given node, and flavor B, sharing
/// one group and lattice.
pub fn contexts(g: Arc<ReflectionGroup>, l: Arc<FullSubgroupLattice>, w0: usize) -> (SkewContext, SkewContext) {
    (SkewContext::flavor_a(g.clone(), l.clone(), w0), SkewContext::flavor_b(g, l))
}
