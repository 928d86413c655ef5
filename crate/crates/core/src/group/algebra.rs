//! The group algebra `C[W]` with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::ReflectionGroup;
use crate::exact::{Cyclotomic, Rational};

/// Finite formal sum `sum_w c_w w`, keyed by element index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GroupAlgebraElement {
    terms: BTreeMap<usize, Cyclotomic>,
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: usize) -> Self {
        Self::term(w, Cyclotomic::one())
    }

    pub fn term(w: usize, c: Cyclotomic) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn identity() -> Self {
        Self::basis(0)
    }

    pub fn add_term(&mut self, w: usize, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(Cyclotomic::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Cyclotomic)> {
        self.terms.iter().map(|(&w, c)| (w, c))
    }

    pub fn coeff(&self, w: usize) -> Cyclotomic {
        self.terms.get(&w).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Cyclotomic::from_int(-1)))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero();
        for (w, a) in self.terms() {
            out.add_term(w, a * c);
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&Cyclotomic::from_rational(q.clone()))
    }

    pub fn mul(&self, other: &Self, group: &ReflectionGroup) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(group.mul(a, b), ca * cb);
            }
        }
        out
    }

    /// `g x g^-1`
    pub fn conjugate_by(&self, g: usize, group: &ReflectionGroup) -> Self {
        let mut out = Self::zero();
        for (w, c) in self.terms() {
            out.add_term(group.conj(g, w), c.clone());
        }
        out
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(w, c)| format!("({c})*g{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl ReflectionGroup {
    /// `eps_{H,j} = (1/m_H) sum_{w in W_H} det(w)^{-j} w` for `j = 0..m_H`.
    pub fn epsilon_idempotents(&self, h: usize) -> Vec<GroupAlgebraElement> {
        let hyp = self.hyperplane(h);
        let m = hyp.order;
        let inv_m = Cyclotomic::from_ratio(1, m as i64);
        (0..m)
            .map(|j| {
                let mut e = GroupAlgebraElement::zero();
                for &w in &hyp.stabilizer {
                    let c = self.det(w).pow(-(j as i64)).expect("det is a unit");
                    e.add_term(w, &c * &inv_m);
                }
                e
            })
            .collect()
    }

    /// `a_H = sum_j m_H k_{H,j} eps_{H,j}`.
    pub fn a_element(&self, h: usize, k: &[Cyclotomic]) -> GroupAlgebraElement {
        let m = self.hyperplane(h).order;
        let mm = Cyclotomic::from_int(m as i64);
        let mut out = GroupAlgebraElement::zero();
        for (j, eps) in self.epsilon_idempotents(h).iter().enumerate() {
            out = out.add(&eps.scale(&(&mm * &k[j % m])));
        }
        out
    }

    /// `gamma_H = sum_j m_H (k_{H,j-1} - k_{H,j}) eps_{H,j}`, indices mod `m_H`.
    pub fn gamma_element(&self, h: usize, k: &[Cyclotomic]) -> GroupAlgebraElement {
        let m = self.hyperplane(h).order;
        let mm = Cyclotomic::from_int(m as i64);
        let mut out = GroupAlgebraElement::zero();
        for (j, eps) in self.epsilon_idempotents(h).iter().enumerate() {
            let diff = &k[(j + m - 1) % m] - &k[j];
            out = out.add(&eps.scale(&(&mm * &diff)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::presets::preset;
    use super::*;

    #[test]
    fn epsilons_are_orthogonal_idempotents_summing_to_one() {
        for name in ["S3", "G4", "G(4,1,1)"] {
            let g = preset(name).unwrap();
            for h in 0..g.hyperplanes().len() {
                let eps = g.epsilon_idempotents(h);
                let mut total = GroupAlgebraElement::zero();
                for (i, a) in eps.iter().enumerate() {
                    total = total.add(a);
                    for (j, b) in eps.iter().enumerate() {
                        let p = a.mul(b, &g);
                        if i == j {
                            assert_eq!(p, *a);
                        } else {
                            assert!(p.is_zero());
                        }
                    }
                }
                assert_eq!(total, GroupAlgebraElement::identity());
            }
        }
    }

    #[test]
    fn reflection_acts_on_epsilon_by_det_power() {
        let g = preset("G4").unwrap();
        let h = g.hyperplane(0);
        let eps = g.epsilon_idempotents(0);
        for &w in &h.stabilizer {
            for (j, e) in eps.iter().enumerate() {
                let lhs = GroupAlgebraElement::basis(w).mul(e, &g);
                let rhs = e.scale(&g.det(w).pow(j as i64).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn equal_parameters_make_gamma_vanish_and_a_central_in_w_h() {
        let g = preset("B2").unwrap();
        let k = vec![Cyclotomic::from_ratio(1, 3), Cyclotomic::from_ratio(1, 3)];
        assert!(g.gamma_element(0, &k).is_zero());
        // for m = 2: a_H = (k0 + k1) + (k0 - k1) s and gamma_H = 2 (k1 - k0) s
        let k = vec![Cyclotomic::from_int(2), Cyclotomic::from_int(-1)];
        let s = g.hyperplane(0).distinguished;
        let a = g.a_element(0, &k);
        assert_eq!(a.coeff(0), Cyclotomic::from_int(1));
        assert_eq!(a.coeff(s), Cyclotomic::from_int(3));
        let gamma = g.gamma_element(0, &k);
        assert!(gamma.coeff(0).is_zero());
        assert_eq!(gamma.coeff(s), Cyclotomic::from_int(-6));
    }
}
