//! Rational functions with denominators supported on the arrangement:
//! `P / prod_H alpha_H^{e_H}`.

use std::fmt;

use crate::exact::Cyclotomic;
use crate::group::ReflectionGroup;
use crate::poly::Poly;

/// Canonical form: no `alpha_H` with positive exponent divides the
/// numerator, and the zero function has the trivial denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc {
    num: Poly,
    den: Vec<u32>,
}

impl RatFunc {
    pub fn zero(group: &ReflectionGroup) -> Self {
        Self::from_poly(group, Poly::zero(group.dim()))
    }

    pub fn one(group: &ReflectionGroup) -> Self {
        Self::constant(group, Cyclotomic::one())
    }

    pub fn constant(group: &ReflectionGroup, c: Cyclotomic) -> Self {
        Self::from_poly(group, Poly::constant(group.dim(), c))
    }

    pub fn from_poly(group: &ReflectionGroup, num: Poly) -> Self {
        Self {
            num,
            den: vec![0; group.hyperplanes().len()],
        }
    }

    /// `num / prod alpha_H^{den[H]}`, brought to canonical form.
    pub fn new(group: &ReflectionGroup, num: Poly, den: Vec<u32>) -> Self {
        let mut r = Self { num, den };
        r.canonicalize(group);
        r
    }

    /// `1 / alpha_H`
    pub fn inverse_root(group: &ReflectionGroup, h: usize) -> Self {
        let mut den = vec![0; group.hyperplanes().len()];
        den[h] = 1;
        Self {
            num: Poly::one(group.dim()),
            den,
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &[u32] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.iter().all(|&e| e == 0)
    }

    pub fn as_constant(&self) -> Option<Cyclotomic> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn canonicalize(&mut self, group: &ReflectionGroup) {
        if self.num.is_zero() {
            self.den.iter_mut().for_each(|e| *e = 0);
            return;
        }
        for h in 0..self.den.len() {
            while self.den[h] > 0 {
                match self.num.div_linear(&group.hyperplane(h).alpha) {
                    Some(q) => {
                        self.num = q;
                        self.den[h] -= 1;
                    }
                    None => break,
                }
            }
        }
    }

    fn alpha_power(group: &ReflectionGroup, h: usize, e: u32) -> Poly {
        Poly::linear(&group.hyperplane(h).alpha).pow(e)
    }

    pub fn add(&self, other: &Self, group: &ReflectionGroup) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            return Self::new(group, self.num.add(&other.num), self.den.clone());
        }
        let den: Vec<u32> = self.den.iter().zip(&other.den).map(|(a, b)| *a.max(b)).collect();
        let lift = |r: &Self| {
            let mut p = r.num.clone();
            for (h, (&target, &e)) in den.iter().zip(&r.den).enumerate() {
                if target > e {
                    p = p.mul(&Self::alpha_power(group, h, target - e));
                }
            }
            p
        };
        Self::new(group, lift(self).add(&lift(other)), den)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self, group: &ReflectionGroup) -> Self {
        self.add(&other.neg(), group)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self {
                num: Poly::zero(self.num.nvars()),
                den: vec![0; self.den.len()],
            };
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self, group: &ReflectionGroup) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(group);
        }
        let den = self.den.iter().zip(&other.den).map(|(a, b)| a + b).collect();
        Self::new(group, self.num.mul(&other.num), den)
    }

    /// `d/dx_i`
    pub fn deriv(&self, i: usize, group: &ReflectionGroup) -> Self {
        let mut out = Self {
            num: self.num.deriv(i),
            den: self.den.clone(),
        };
        out.canonicalize(group);
        for (h, &e) in self.den.iter().enumerate() {
            let a = &group.hyperplane(h).alpha[i];
            if e == 0 || a.is_zero() {
                continue;
            }
            // d(alpha^-e) = -e alpha_i alpha^-(e+1)
            let mut den = self.den.clone();
            den[h] += 1;
            let c = a * &Cyclotomic::from_int(-(e as i64));
            out = out.add(&Self::new(group, self.num.scale(&c), den), group);
        }
        out
    }

    /// `f o w^-1`
    pub fn act(&self, w: usize, group: &ReflectionGroup) -> Self {
        let winv = group.element(group.inv(w));
        let rows: Vec<Vec<Cyclotomic>> = (0..winv.rows()).map(|i| winv.row_vec(i)).collect();
        let mut num = self.num.compose_linear(&rows);
        let mut den = vec![0; self.den.len()];
        // alpha_H o w^-1 = c alpha_{wH}
        let mut scale = Cyclotomic::one();
        for (h, &e) in self.den.iter().enumerate() {
            if e == 0 {
                continue;
            }
            den[group.act_on_hyperplane(w, h)] += e;
            let c = group.hyperplane_scalar(w, h);
            scale = &scale * &c.pow(e as i64).expect("nonzero scalar");
        }
        if !scale.is_one() {
            num = num.scale(&scale.inv().expect("nonzero scalar"));
        }
        Self { num, den }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dens: Vec<String> = self
            .den
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(h, &e)| if e == 1 { format!("a{h}") } else { format!("a{h}^{e}") })
            .collect();
        if dens.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, dens.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presets::preset;

    #[test]
    fn cancellation_is_canonical() {
        let g = preset("S3").unwrap();
        let a0 = Poly::linear(&g.hyperplane(0).alpha);
        let x = Poly::var(2, 0);
        let r = RatFunc::new(&g, a0.mul(&x), vec![1, 0, 0]);
        assert_eq!(r, RatFunc::from_poly(&g, x.clone()));
        let s = RatFunc::inverse_root(&g, 0).mul(&RatFunc::from_poly(&g, a0.clone()), &g);
        assert_eq!(s, RatFunc::one(&g));
        let t = RatFunc::inverse_root(&g, 1).sub(&RatFunc::inverse_root(&g, 1), &g);
        assert!(t.is_zero());
        assert!(t.is_polynomial());
    }

    #[test]
    fn quotient_rule_against_product_rule() {
        let g = preset("B2").unwrap();
        let inv = RatFunc::inverse_root(&g, 2);
        let a = RatFunc::from_poly(&g, Poly::linear(&g.hyperplane(2).alpha));
        // d(a * a^-1) = 0
        for i in 0..2 {
            let lhs = a.deriv(i, &g).mul(&inv, &g).add(&a.mul(&inv.deriv(i, &g), &g), &g);
            assert!(lhs.is_zero());
        }
    }

    #[test]
    fn group_action_is_an_action_and_multiplicative() {
        let g = preset("G4").unwrap();
        let f = RatFunc::inverse_root(&g, 1)
            .mul(&RatFunc::from_poly(&g, Poly::var(2, 0).pow(2)), &g)
            .add(&RatFunc::inverse_root(&g, 3), &g);
        for a in [1, 5, 11] {
            for b in [2, 7, 19] {
                let ab = g.mul(a, b);
                assert_eq!(f.act(ab, &g), f.act(b, &g).act(a, &g));
            }
        }
        let h = RatFunc::inverse_root(&g, 0);
        assert_eq!(f.mul(&h, &g).act(3, &g), f.act(3, &g).mul(&h.act(3, &g), &g));
    }
}
