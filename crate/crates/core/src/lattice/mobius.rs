//! The Möbius algebra `CL`: basis `e_lambda` with `e_a e_b = e_{a ∨ b}`.

use std::collections::BTreeMap;

use super::FullSubgroupLattice;
use crate::exact::Cyclotomic;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MobiusElement {
    terms: BTreeMap<usize, Cyclotomic>,
}

impl MobiusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn e(node: usize) -> Self {
        let mut out = Self::zero();
        out.add_term(node, Cyclotomic::one());
        out
    }

    pub fn add_term(&mut self, node: usize, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(node).or_insert_with(Cyclotomic::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&node);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Cyclotomic)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero();
        for (k, a) in self.terms() {
            out.add_term(k, a * c);
        }
        out
    }

    pub fn mul(&self, other: &Self, lattice: &FullSubgroupLattice) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(lattice.join(a, b), ca * cb);
            }
        }
        out
    }
}

impl FullSubgroupLattice {
    /// `f_lambda = sum_{mu >= lambda} mu(lambda, mu) e_mu`.
    pub fn idempotent(&self, x: usize) -> MobiusElement {
        let mut out = MobiusElement::zero();
        for y in 0..self.len() {
            if self.leq(x, y) {
                out.add_term(y, Cyclotomic::from_int(self.mobius(x, y)));
            }
        }
        out
    }

    /// `e_lambda = sum_{mu >= lambda} f_mu`, as coefficients on the f-basis.
    pub fn e_in_idempotent_basis(&self, x: usize) -> MobiusElement {
        let mut out = MobiusElement::zero();
        for y in 0..self.len() {
            if self.leq(x, y) {
                out.add_term(y, Cyclotomic::one());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::DEFAULT_LATTICE_CAP;
    use super::*;
    use crate::group::presets::preset;

    fn lattice(name: &str) -> FullSubgroupLattice {
        FullSubgroupLattice::enumerate(&preset(name).unwrap(), DEFAULT_LATTICE_CAP).unwrap()
    }

    #[test]
    fn join_product_examples() {
        let l = lattice("S3");
        let a = MobiusElement::e(1);
        let b = MobiusElement::e(2);
        assert_eq!(a.mul(&b, &l), MobiusElement::e(l.top()));
        assert_eq!(a.mul(&a, &l), a);
        let x = a.add(&b.scale(&Cyclotomic::from_ratio(2, 3)));
        assert_eq!(MobiusElement::e(0).mul(&x, &l), x);
    }

    #[test]
    fn idempotent_basis_is_orthogonal_and_complete() {
        for name in ["S3", "B2", "G4"] {
            let l = lattice(name);
            let mut total = MobiusElement::zero();
            for x in 0..l.len() {
                let fx = l.idempotent(x);
                total = total.add(&fx);
                for y in 0..l.len() {
                    let p = fx.mul(&l.idempotent(y), &l);
                    if x == y {
                        assert_eq!(p, fx);
                    } else {
                        assert!(p.is_zero(), "{name} {x} {y}");
                    }
                }
                // back to the e-basis
                let mut e = MobiusElement::zero();
                for (y, c) in l.e_in_idempotent_basis(x).terms() {
                    e = e.add(&l.idempotent(y).scale(c));
                }
                assert_eq!(e, MobiusElement::e(x));
            }
            assert_eq!(total, MobiusElement::e(0));
        }
    }

    #[test]
    fn two_element_lattice() {
        let l = lattice("G(3,1,1)");
        assert_eq!(l.idempotent(1), MobiusElement::e(1));
        let mut f0 = MobiusElement::e(0);
        f0.add_term(1, Cyclotomic::from_int(-1));
        assert_eq!(l.idempotent(0), f0);
    }
}
