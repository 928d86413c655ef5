//! Parallel transport of the connections `d + sum_H (dα_H/α_H) B_H` on
//! trivial bundles with fiber a simple module, and the monodromy of
//! braided reflections.
//!
//! Loop convention: the loop for `H` runs from `x_0` to `s_H^{-1} x_0`
//! through a positive arc of angle `2π/m_H`, where `s_H` is the reflection
//! of `W_H` with `det = ζ_m^{-1}`; its monodromy is `ρ(s_H) ∘ transport`.

mod ode;
mod path;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub use ode::{integrate, max_abs, CMatrix, Solution};
pub use path::{
    braided_loop, circle_around, complex_matrix, dot, small_square, ComplexArrangement, CVector, LoopPath, Segment,
};

use crate::cherednik::SimpleModule;
use crate::group::{ComplexParams, ReflectionGroup};
use crate::skew::SkewContext;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_STEPS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonodromyError {
    #[error("integration exceeded {0} steps")]
    StepLimit(usize),
    #[error("path comes within {margin:e} of the arrangement")]
    MarginViolation { margin: f64 },
    #[error("element {0} does not act on the fiber")]
    NotInFiberGroup(usize),
}

/// A pole `(dα_H/α_H) B_H` of the connection form.
#[derive(Debug, Clone)]
pub struct Pole {
    pub hyperplane: usize,
    pub alpha: CVector,
    pub residue: CMatrix,
}

/// `∇ = d + sum_H (dα_H/α_H) B_H` with `B_H = sum_j m_H k_{H,j} ε_{H,j} e_H`
/// acting on the fiber, together with the fiber action of the group.
#[derive(Debug, Clone)]
pub struct Connection {
    dim: usize,
    poles: Vec<Pole>,
    fiber: BTreeMap<usize, CMatrix>,
    lattice: BTreeMap<usize, CMatrix>,
}

impl Connection {
    pub fn from_module(ctx: &SkewContext, module: &SimpleModule, k: &ComplexParams) -> Self {
        let g = ctx.group();
        let dim = module.dim();
        let fiber: BTreeMap<usize, CMatrix> = ctx
            .coefficient_group()
            .iter()
            .map(|&w| (w, module.group_matrix(w).to_complex()))
            .collect();
        let lattice: BTreeMap<usize, CMatrix> = (0..ctx.lattice().len())
            .filter_map(|l| module.lattice_matrix(l).map(|m| (l, m.to_complex())))
            .collect();
        let arr = ComplexArrangement::new(g);
        let poles = ctx
            .hyperplanes()
            .iter()
            .map(|&h| {
                let m = g.hyperplane(h).order as f64;
                let mut b = CMatrix::zeros(dim, dim);
                for (j, eps) in g.epsilon_idempotents(h).iter().enumerate() {
                    let mut e = CMatrix::zeros(dim, dim);
                    for (w, c) in eps.terms() {
                        e += &fiber[&w] * c.to_complex();
                    }
                    b += e * (k.k(h, j as i64) * m);
                }
                Pole {
                    hyperplane: h,
                    alpha: arr.alphas[h].clone(),
                    residue: b * &lattice[&ctx.e_h(h)],
                }
            })
            .collect();
        Self {
            dim,
            poles,
            fiber,
            lattice,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn fiber_action(&self, w: usize) -> Result<&CMatrix, MonodromyError> {
        self.fiber.get(&w).ok_or(MonodromyError::NotInFiberGroup(w))
    }

    pub fn lattice_action(&self, node: usize) -> Option<&CMatrix> {
        self.lattice.get(&node)
    }

    /// The connection form evaluated on the tangent vector `dx` at `x`.
    pub fn form(&self, x: &[Complex64], dx: &[Complex64]) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for p in &self.poles {
            out += &p.residue * (dot(&p.alpha, dx) / dot(&p.alpha, x));
        }
        out
    }

    /// Fundamental solution of `s' = -A s` along the concatenated segments,
    /// mapping the fiber at the start to the fiber at the end.
    pub fn transport(&self, segments: &[Segment], tol: f64) -> Result<Solution, MonodromyError> {
        let mut total = Solution {
            matrix: CMatrix::identity(self.dim, self.dim),
            error_estimate: 0.0,
            steps: 0,
        };
        for seg in segments {
            let sol = integrate(
                |t| -self.form(&seg.point(t), &seg.velocity(t)),
                self.dim,
                tol,
                MAX_STEPS,
            )?;
            total.matrix = &sol.matrix * &total.matrix;
            total.error_estimate += sol.error_estimate * (1.0 + max_abs(&total.matrix));
            total.steps += sol.steps;
        }
        Ok(total)
    }
}

/// Hyperplanes whose braided reflections live in the fundamental group of
/// `X/N`: those with `s_H` in the coefficient group.
pub fn loop_hyperplanes(ctx: &SkewContext) -> Vec<usize> {
    let g = ctx.group();
    (0..g.hyperplanes().len())
        .filter(|&h| ctx.allows(g.hyperplane(h).distinguished))
        .collect()
}

/// Among deterministic small-integer complex candidates, the one whose
/// braided loops stay farthest (relative to its norm) from the arrangement.
pub fn choose_basepoint(group: &ReflectionGroup, hyperplanes: &[usize]) -> (CVector, f64) {
    const CANDIDATES: usize = 96;
    let arr = ComplexArrangement::new(group);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(CVector, f64, f64)> = None;
    for _ in 0..CANDIDATES {
        let x: CVector = (0..group.dim())
            .map(|_| Complex64::new(rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64))
            .collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let margin = hyperplanes
            .iter()
            .map(|&h| braided_loop(group, &arr, h, &x).margin)
            .fold(arr.min_distance(&x), f64::min);
        let score = margin / norm;
        if best.as_ref().is_none_or(|b| score > b.2) {
            best = Some((x, margin, score));
        }
    }
    let (x, margin, _) = best.expect("some candidate is nonzero");
    (x, margin)
}

#[derive(Debug, Clone)]
pub struct MonodromyMatrix {
    pub hyperplane: usize,
    pub matrix: CMatrix,
    pub error_estimate: f64,
    pub steps: usize,
    pub margin: f64,
}

/// Paths closer than this fraction of the basepoint norm are rejected.
pub const MIN_RELATIVE_MARGIN: f64 = 1e-2;

fn check_margin(margin: f64, basepoint: &[Complex64]) -> Result<(), MonodromyError> {
    let scale = basepoint.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    if margin < MIN_RELATIVE_MARGIN * scale {
        return Err(MonodromyError::MarginViolation { margin });
    }
    Ok(())
}

/// `M(σ_H) = ρ(s_H) · transport(x_0 → s_H^{-1} x_0)`
pub fn braided_monodromy(
    group: &ReflectionGroup,
    conn: &Connection,
    h: usize,
    basepoint: &[Complex64],
    tol: f64,
) -> Result<MonodromyMatrix, MonodromyError> {
    let arr = ComplexArrangement::new(group);
    let lp = braided_loop(group, &arr, h, basepoint);
    check_margin(lp.margin, basepoint)?;
    let rho = conn.fiber_action(group.hyperplane(h).distinguished)?;
    let sol = conn.transport(&lp.segments, tol)?;
    Ok(MonodromyMatrix {
        hyperplane: h,
        matrix: rho * &sol.matrix,
        error_estimate: sol.error_estimate,
        steps: sol.steps,
        margin: lp.margin,
    })
}

/// `ζ_m^{-j} e^{-2πi k_j}`: the monodromy of `σ` on the `ε_j`-line in rank
/// one, from `s(z) = z^{-m k_j}` along the arc `z → e^{2πi/m} z` and
/// `ρ(s) = det(s)^j = ζ_m^{-j}`.
pub fn rank_one_eigenvalue(m: usize, j: usize, k_j: Complex64) -> Complex64 {
    let zeta_inv_j = Complex64::from_polar(1.0, -2.0 * PI * j as f64 / m as f64);
    zeta_inv_j * (Complex64::new(0.0, -2.0 * PI) * k_j).exp()
}

fn mat_pow(m: &CMatrix, e: usize) -> CMatrix {
    (0..e).fold(CMatrix::identity(m.nrows(), m.ncols()), |acc, _| acc * m)
}

/// Relation data for one monodromy matrix.
#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub hyperplane: usize,
    pub order: usize,
    /// `‖(M^m - 1)(1 - e_H)‖`: the relation on the part where `e_H` acts by 0.
    pub power_residual: f64,
    /// `‖prod_j (M - u_j) e_H‖` with `u_j = ζ^{-j} e^{-2πi k_{H,j}}`.
    pub predicted_residual: f64,
    /// `‖M e_H - e_H M‖`
    pub commutes_with_e: f64,
    /// Least-squares `c` in `M^m e_H = sum_j c_j M^j e_H`, as `[re, im]`.
    pub fitted: Vec<[f64; 2]>,
    pub fit_residual: f64,
    /// Smallest over largest singular value of the fitting system.
    pub fit_conditioning: f64,
}

pub fn relation_report(
    group: &ReflectionGroup,
    conn: &Connection,
    ctx: &SkewContext,
    mono: &MonodromyMatrix,
    k: &ComplexParams,
) -> RelationReport {
    let h = mono.hyperplane;
    let m = group.hyperplane(h).order;
    let d = conn.dim();
    let id = CMatrix::identity(d, d);
    let pole_here = ctx.hyperplanes().contains(&h);
    let e = if pole_here {
        conn.lattice_action(ctx.e_h(h)).cloned().unwrap_or_else(|| id.clone())
    } else {
        CMatrix::zeros(d, d)
    };
    let mm = &mono.matrix;
    let power = mat_pow(mm, m);
    let power_residual = max_abs(&((&power - &id) * (&id - &e)));
    let mut predicted = e.clone();
    for j in 0..m {
        let u = rank_one_eigenvalue(m, j, *k.k(h, j as i64));
        predicted = (mm - &id * u) * predicted;
    }
    let commutes_with_e = max_abs(&(mm * &e - &e * mm));
    // columns vec(M^j e), target vec(M^m e)
    let mut system = DMatrix::<Complex64>::zeros(d * d, m);
    let mut pj = id.clone();
    for j in 0..m {
        let col = &pj * &e;
        for (i, z) in col.iter().enumerate() {
            system[(i, j)] = *z;
        }
        pj = &pj * mm;
    }
    let target_m = &power * &e;
    let target = DMatrix::<Complex64>::from_iterator(d * d, 1, target_m.iter().copied());
    let svd = system.clone().svd(true, true);
    let sv = &svd.singular_values;
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let smin = sv.iter().copied().fold(f64::INFINITY, f64::min);
    let coeffs = svd
        .solve(&target, 1e-12 * smax.max(1e-300))
        .unwrap_or_else(|_| DMatrix::zeros(m, 1));
    let fit_residual = max_abs(&(&system * &coeffs - &target));
    RelationReport {
        hyperplane: h,
        order: m,
        power_residual,
        predicted_residual: max_abs(&predicted),
        commutes_with_e,
        fitted: coeffs.iter().map(|z| [z.re, z.im]).collect(),
        fit_residual,
        fit_conditioning: if smax > 0.0 { smin / smax } else { 0.0 },
    }
}

/// `‖M(σ_{wH}) - ρ(w) M(σ_H) ρ(w)^{-1}‖`, the loop for `wH` being based
/// at `w x_0`.
pub fn orbit_conjugacy_residual(
    group: &ReflectionGroup,
    conn: &Connection,
    h: usize,
    w: usize,
    basepoint: &[Complex64],
    tol: f64,
) -> Result<f64, MonodromyError> {
    let base = braided_monodromy(group, conn, h, basepoint, tol)?;
    let wm = complex_matrix(group, w);
    let wx: CVector = wm.iter().map(|row| dot(row, basepoint)).collect();
    let image = braided_monodromy(group, conn, group.act_on_hyperplane(w, h), &wx, tol)?;
    let rho = conn.fiber_action(w)?;
    let rho_inv = conn.fiber_action(group.inv(w))?;
    Ok(max_abs(&(&image.matrix - rho * &base.matrix * rho_inv)))
}

/// Monodromy of the same braided reflection through a loop with a smaller
/// arc, compared with the standard one.
pub fn homotopy_residual(
    group: &ReflectionGroup,
    conn: &Connection,
    h: usize,
    basepoint: &[Complex64],
    tol: f64,
) -> Result<f64, MonodromyError> {
    let arr = ComplexArrangement::new(group);
    let standard = braided_monodromy(group, conn, h, basepoint, tol)?;
    let lp = braided_loop(group, &arr, h, basepoint);
    // same homotopy class: half the arc radius, longer approach
    let Segment::Line { from: x0, to: p } = &lp.segments[0] else {
        unreachable!()
    };
    let Segment::Arc { center, offset, angle } = &lp.segments[1] else {
        unreachable!()
    };
    let half: CVector = offset.iter().map(|o| o * 0.5).collect();
    let q: CVector = center.iter().zip(&half).map(|(c, o)| c + o).collect();
    let sinv = complex_matrix(group, group.inv(group.hyperplane(h).distinguished));
    let approach = vec![
        Segment::Line {
            from: x0.clone(),
            to: p.clone(),
        },
        Segment::Line { from: p.clone(), to: q },
    ];
    let mut segments = approach.clone();
    segments.push(Segment::Arc {
        center: center.clone(),
        offset: half,
        angle: *angle,
    });
    for s in approach.iter().rev() {
        segments.push(s.reversed().mapped(&sinv));
    }
    check_margin(arr.path_margin(&segments), basepoint)?;
    let rho = conn.fiber_action(group.hyperplane(h).distinguished)?;
    let other = rho * &conn.transport(&segments, tol)?.matrix;
    Ok(max_abs(&(other - standard.matrix)))
}

/// `‖transport(square) - Id‖` for a small square at the basepoint.
pub fn contractible_residual(conn: &Connection, basepoint: &[Complex64], size: f64, tol: f64) -> Result<f64, MonodromyError> {
    let sol = conn.transport(&small_square(basepoint, size), tol)?;
    Ok(max_abs(&(sol.matrix - CMatrix::identity(conn.dim(), conn.dim()))))
}

#[derive(Debug, Clone, Serialize)]
pub struct RegularityProbe {
    pub hyperplane: usize,
    pub radii: Vec<f64>,
    pub norms: Vec<f64>,
    /// Largest over smallest norm.
    pub spread: f64,
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    m.singular_values().iter().copied().fold(0.0, f64::max)
}

/// Operator norms of transport around full circles of shrinking radius about `H`.
pub fn regularity_probe(
    group: &ReflectionGroup,
    conn: &Connection,
    h: usize,
    basepoint: &[Complex64],
    radii: &[f64],
    tol: f64,
) -> Result<RegularityProbe, MonodromyError> {
    let arr = ComplexArrangement::new(group);
    let norms = radii
        .iter()
        .map(|&r| {
            let sol = conn.transport(&circle_around(&arr, h, basepoint, r), tol)?;
            Ok(operator_norm(&sol.matrix))
        })
        .collect::<Result<Vec<f64>, MonodromyError>>()?;
    let max = norms.iter().copied().fold(0.0, f64::max);
    let min = norms.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(RegularityProbe {
        hyperplane: h,
        radii: radii.to_vec(),
        norms,
        spread: max / min,
    })
}

/// Hyperplanes of the arrangement in the flavor's loop set, with a
/// representative conjugating element for each non-representative member
/// of an orbit (restricted to the coefficient group).
pub fn orbit_pairs(ctx: &SkewContext) -> Vec<(usize, usize, usize)> {
    let g = ctx.group();
    let hs = loop_hyperplanes(ctx);
    let mut out = Vec::new();
    for &h in &hs {
        for &w in ctx.coefficient_group() {
            let wh = g.act_on_hyperplane(w, h);
            if wh != h && hs.contains(&wh) && !out.iter().any(|&(a, b, _)| a == h && b == wh) {
                out.push((h, wh, w));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests;
