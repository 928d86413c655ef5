//! Adaptive Dormand–Prince 5(4) integration of the matrix ODE
//! `S'(t) = F(t) S(t)`, `S(0) = Id`, on `[0, 1]`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::MonodromyError;

pub type CMatrix = DMatrix<Complex64>;

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

#[derive(Debug, Clone)]
pub struct Solution {
    pub matrix: CMatrix,
    /// Sum of accepted local error estimates.
    pub error_estimate: f64,
    pub steps: usize,
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Integrates with local error per step at most `tol * (1 + |S|)`.
pub fn integrate(
    f: impl Fn(f64) -> CMatrix,
    dim: usize,
    tol: f64,
    max_steps: usize,
) -> Result<Solution, MonodromyError> {
    let mut s = CMatrix::identity(dim, dim);
    let mut t = 0.0;
    let mut h: f64 = 0.01;
    let mut steps = 0;
    let mut error = 0.0;
    while t < 1.0 {
        if steps >= max_steps {
            return Err(MonodromyError::StepLimit(max_steps));
        }
        h = h.min(1.0 - t);
        let mut k: Vec<CMatrix> = Vec::with_capacity(7);
        for i in 0..7 {
            let mut y = s.clone();
            for (j, kj) in k.iter().enumerate() {
                if A[i][j] != 0.0 {
                    y += kj * Complex64::new(h * A[i][j], 0.0);
                }
            }
            k.push(f(t + C[i] * h) * y);
        }
        let mut y5 = s.clone();
        let mut delta = CMatrix::zeros(dim, dim);
        for i in 0..7 {
            y5 += &k[i] * Complex64::new(h * B5[i], 0.0);
            delta += &k[i] * Complex64::new(h * (B5[i] - B4[i]), 0.0);
        }
        let local = max_abs(&delta);
        let scale = tol * (1.0 + max_abs(&y5));
        let ratio = local / scale;
        if ratio <= 1.0 {
            t += h;
            s = y5;
            error += local;
            steps += 1;
        }
        let factor = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h < 1e-14 {
            return Err(MonodromyError::StepLimit(steps));
        }
    }
    Ok(Solution {
        matrix: s,
        error_estimate: error,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_exponential() {
        // S' = λ S on [0, 1]
        let lam = Complex64::new(-0.3, 2.0);
        let sol = integrate(|_| CMatrix::from_element(1, 1, lam), 1, 1e-12, 10_000).unwrap();
        assert!((sol.matrix[(0, 0)] - lam.exp()).norm() < 1e-10);
    }

    #[test]
    fn time_dependent_nilpotent() {
        // S' = [[0, t], [0, 0]] S  =>  S(1) = [[1, 1/2], [0, 1]]
        let f = |t: f64| {
            let mut m = CMatrix::zeros(2, 2);
            m[(0, 1)] = Complex64::new(t, 0.0);
            m
        };
        let sol = integrate(f, 2, 1e-12, 10_000).unwrap();
        assert!((sol.matrix[(0, 1)] - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        assert!((sol.matrix[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}
