//! Piecewise-smooth paths in `V ⊗ ℂ` and the braided-reflection loops.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::group::ReflectionGroup;

pub type CVector = Vec<Complex64>;

fn axpy(a: Complex64, x: &[Complex64], y: &[Complex64]) -> CVector {
    x.iter().zip(y).map(|(xi, yi)| a * xi + yi).collect()
}

pub fn dot(a: &[Complex64], x: &[Complex64]) -> Complex64 {
    a.iter().zip(x).map(|(p, q)| p * q).sum()
}

/// Maps `[0, 1]` into `V ⊗ ℂ`.
#[derive(Debug, Clone, PartialEq)]
pub enum Segment {
    Line { from: CVector, to: CVector },
    /// `center + e^{i angle t} offset`
    Arc { center: CVector, offset: CVector, angle: f64 },
}

impl Segment {
    pub fn point(&self, t: f64) -> CVector {
        match self {
            Segment::Line { from, to } => from
                .iter()
                .zip(to)
                .map(|(a, b)| a + (b - a) * t)
                .collect(),
            Segment::Arc { center, offset, angle } => {
                axpy(Complex64::from_polar(1.0, angle * t), offset, center)
            }
        }
    }

    pub fn velocity(&self, t: f64) -> CVector {
        match self {
            Segment::Line { from, to } => from.iter().zip(to).map(|(a, b)| b - a).collect(),
            Segment::Arc { offset, angle, .. } => {
                let c = Complex64::new(0.0, *angle) * Complex64::from_polar(1.0, angle * t);
                offset.iter().map(|o| c * o).collect()
            }
        }
    }

    pub fn reversed(&self) -> Self {
        match self {
            Segment::Line { from, to } => Segment::Line {
                from: to.clone(),
                to: from.clone(),
            },
            Segment::Arc { center, offset, angle } => Segment::Arc {
                center: center.clone(),
                offset: offset.iter().map(|o| o * Complex64::from_polar(1.0, *angle)).collect(),
                angle: -angle,
            },
        }
    }

    /// Image under a linear map.
    pub fn mapped(&self, m: &[Vec<Complex64>]) -> Self {
        let apply = |x: &CVector| m.iter().map(|row| dot(row, x)).collect();
        match self {
            Segment::Line { from, to } => Segment::Line {
                from: apply(from),
                to: apply(to),
            },
            Segment::Arc { center, offset, angle } => Segment::Arc {
                center: apply(center),
                offset: apply(offset),
                angle: *angle,
            },
        }
    }
}

/// Complex linear forms and root vectors of the arrangement.
#[derive(Debug, Clone)]
pub struct ComplexArrangement {
    pub alphas: Vec<CVector>,
    pub vs: Vec<CVector>,
    norms: Vec<f64>,
}

impl ComplexArrangement {
    pub fn new(group: &ReflectionGroup) -> Self {
        let alphas: Vec<CVector> = group
            .hyperplanes()
            .iter()
            .map(|h| h.alpha.iter().map(|c| c.to_complex()).collect())
            .collect();
        let vs = group
            .hyperplanes()
            .iter()
            .map(|h| h.v.iter().map(|c| c.to_complex()).collect())
            .collect();
        let norms = alphas
            .iter()
            .map(|a: &CVector| a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .collect();
        Self { alphas, vs, norms }
    }

    /// Euclidean distance from `x` to `H`.
    pub fn distance(&self, h: usize, x: &[Complex64]) -> f64 {
        dot(&self.alphas[h], x).norm() / self.norms[h]
    }

    pub fn min_distance(&self, x: &[Complex64]) -> f64 {
        (0..self.alphas.len()).map(|h| self.distance(h, x)).fold(f64::INFINITY, f64::min)
    }

    /// Smallest distance to the arrangement along sampled points.
    pub fn path_margin(&self, segments: &[Segment]) -> f64 {
        const SAMPLES: usize = 64;
        segments
            .iter()
            .flat_map(|s| (0..=SAMPLES).map(move |i| s.point(i as f64 / SAMPLES as f64)))
            .map(|x| self.min_distance(&x))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Closed path in `X/W` lifting to `x_0 → s_H^{-1} x_0`.
#[derive(Debug, Clone)]
pub struct LoopPath {
    pub hyperplane: usize,
    pub basepoint: CVector,
    pub segments: Vec<Segment>,
    pub margin: f64,
}

pub fn complex_matrix(group: &ReflectionGroup, w: usize) -> Vec<Vec<Complex64>> {
    let m = group.element(w);
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_complex()).collect())
        .collect()
}

/// With `x_0 = h_0 + z_0 v_H` (`h_0 ∈ H`): straight approach to
/// `h_0 + r z_0 v_H`, positive arc of angle `2π/m_H` around `H`, and the
/// image of the reversed approach under `s_H^{-1}`. The radius factor `r`
/// keeps the arc away from the other hyperplanes.
pub fn braided_loop(
    group: &ReflectionGroup,
    arr: &ComplexArrangement,
    h: usize,
    basepoint: &[Complex64],
) -> LoopPath {
    let alpha = &arr.alphas[h];
    let v = &arr.vs[h];
    let z0 = dot(alpha, basepoint) / dot(alpha, v);
    let h0 = axpy(-z0, v, basepoint);
    let mut r: f64 = 1.0;
    for (other, a) in arr.alphas.iter().enumerate() {
        let av = dot(a, v);
        if other == h || av.norm() < 1e-12 {
            continue;
        }
        r = r.min(dot(a, &h0).norm() / (2.0 * (z0 * av).norm()));
    }
    let p = axpy(z0 * r, v, &h0);
    let sinv = complex_matrix(group, group.inv(group.hyperplane(h).distinguished));
    let approach = Segment::Line {
        from: basepoint.to_vec(),
        to: p.clone(),
    };
    let arc = Segment::Arc {
        center: h0,
        offset: v.iter().map(|c| c * z0 * r).collect(),
        angle: 2.0 * PI / group.hyperplane(h).order as f64,
    };
    let back = approach.reversed().mapped(&sinv);
    let segments = vec![approach, arc, back];
    LoopPath {
        hyperplane: h,
        basepoint: basepoint.to_vec(),
        margin: arr.path_margin(&segments),
        segments,
    }
}

/// Full circle of radius `radius` around `H` through the projection of
/// `basepoint` onto `H`, in the `v_H` direction.
pub fn circle_around(arr: &ComplexArrangement, h: usize, basepoint: &[Complex64], radius: f64) -> Vec<Segment> {
    let alpha = &arr.alphas[h];
    let v = &arr.vs[h];
    let z0 = dot(alpha, basepoint) / dot(alpha, v);
    let h0 = axpy(-z0, v, basepoint);
    let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    vec![Segment::Arc {
        center: h0,
        offset: v.iter().map(|c| c * (radius / vnorm)).collect(),
        angle: 2.0 * PI,
    }]
}

/// Small closed square at `basepoint` in a real 2-plane.
pub fn small_square(basepoint: &[Complex64], size: f64) -> Vec<Segment> {
    let n = basepoint.len();
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    u[0] = Complex64::new(size, 0.0);
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    w[n.min(2) - 1] = Complex64::new(0.0, size);
    let c0 = basepoint.to_vec();
    let c1 = axpy(Complex64::new(1.0, 0.0), &u, &c0);
    let c2 = axpy(Complex64::new(1.0, 0.0), &w, &c1);
    let c3 = axpy(Complex64::new(1.0, 0.0), &w, &c0);
    [(&c0, &c1), (&c1, &c2), (&c2, &c3), (&c3, &c0)]
        .iter()
        .map(|(a, b)| Segment::Line {
            from: (*a).clone(),
            to: (*b).clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presets::preset;

    #[test]
    fn loop_is_continuous_and_ends_at_image() {
        for name in ["S3", "B2", "G4"] {
            let g = preset(name).unwrap();
            let arr = ComplexArrangement::new(&g);
            let x0 = vec![Complex64::new(1.0, 0.3), Complex64::new(-0.4, 1.1)];
            for h in 0..g.hyperplanes().len() {
                let lp = braided_loop(&g, &arr, h, &x0);
                for pair in lp.segments.windows(2) {
                    let a = pair[0].point(1.0);
                    let b = pair[1].point(0.0);
                    assert!(a.iter().zip(&b).all(|(p, q)| (p - q).norm() < 1e-12));
                }
                let end = lp.segments[2].point(1.0);
                let sinv = complex_matrix(&g, g.inv(g.hyperplane(h).distinguished));
                let target: Vec<Complex64> = sinv.iter().map(|row| dot(row, &x0)).collect();
                assert!(end.iter().zip(&target).all(|(p, q)| (p - q).norm() < 1e-12));
                assert!(lp.margin > 0.0);
            }
        }
    }

    #[test]
    fn velocity_is_derivative() {
        let s = Segment::Arc {
            center: vec![Complex64::new(1.0, 0.0)],
            offset: vec![Complex64::new(0.5, 0.2)],
            angle: 2.0,
        };
        let t = 0.3;
        let eps = 1e-6;
        let fd = (s.point(t + eps)[0] - s.point(t - eps)[0]) / (2.0 * eps);
        assert!((fd - s.velocity(t)[0]).norm() < 1e-8);
        let r = s.reversed();
        assert!((r.point(0.0)[0] - s.point(1.0)[0]).norm() < 1e-12);
        assert!((r.point(1.0)[0] - s.point(0.0)[0]).norm() < 1e-12);
    }
}
