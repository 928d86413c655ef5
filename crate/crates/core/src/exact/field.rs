//! Cyclotomic fields `Q(zeta_N)` in the power basis modulo the `N`-th
//! cyclotomic polynomial.

use std::sync::Arc;

use super::ExactError;

/// Largest conductor accepted when nothing else is configured.
pub const DEFAULT_CONDUCTOR_CAP: u32 = 120;

/// Static data for `Q(zeta_N)`: the modulus `Phi_N` and the reduced
/// representation of every power `zeta^k`, `0 <= k < N`.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    degree: usize,
    modulus: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    /// Builds `Q(zeta_n)`, refusing conductors above `cap`.
    pub fn new(n: u32, cap: u32) -> Result<Arc<Self>, ExactError> {
        if n == 0 {
            return Err(ExactError::InvalidConductor(0));
        }
        if n > cap {
            return Err(ExactError::ConductorOverflow { requested: n, cap });
        }
        let modulus = cyclotomic_polynomial(n);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut current = vec![0i64; degree];
        current[0] = 1;
        for _ in 0..n {
            powers.push(current.clone());
            // multiply by zeta and reduce the overflow coefficient
            let top = current[degree - 1];
            for i in (1..degree).rev() {
                current[i] = current[i - 1] - top * modulus[i];
            }
            current[0] = -top * modulus[0];
        }
        Ok(Arc::new(Self {
            conductor: n,
            degree,
            modulus,
            powers,
        }))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Euler totient of the conductor, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Integer coefficients of `Phi_N`, constant term first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Reduced coordinates of `zeta^k` for any integer `k`.
    pub fn power(&self, k: i64) -> &[i64] {
        let n = self.conductor as i64;
        &self.powers[k.rem_euclid(n) as usize]
    }
}

/// `Phi_n` as an integer coefficient vector, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u32, b: u32) -> u64 {
    (a as u64 / gcd(a, b) as u64) * b as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        let p = cyclotomic_polynomial(105);
        assert_eq!(p.len() - 1, 48);
        assert!(p.contains(&-2));
    }

    #[test]
    fn power_table_wraps() {
        let f = CyclotomicField::new(3, DEFAULT_CONDUCTOR_CAP).unwrap();
        assert_eq!(f.power(2), &[-1, -1]);
        assert_eq!(f.power(3), &[1, 0]);
        assert_eq!(f.power(-1), f.power(2));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            CyclotomicField::new(121, DEFAULT_CONDUCTOR_CAP),
            Err(ExactError::ConductorOverflow { requested: 121, cap: 120 })
        ));
        assert!(CyclotomicField::new(240, 240).is_ok());
    }
}
