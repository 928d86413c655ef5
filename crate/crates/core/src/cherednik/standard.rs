//! Graded pieces `Δ(E)_i = ℂ[V]_i ⊗ E` of standard modules, with `V`
//! killing `1 ⊗ E` and `y` acting through the commutation relation.

use serde::Serialize;
use thiserror::Error;

use super::normal_form::{monomials, CherednikAlgebra};
use super::simple::SimpleModule;
use crate::exact::{CycMatrix, Cyclotomic};
use crate::poly::{Monomial, Poly};

pub const DEFAULT_DEGREE: u32 = 5;
pub const MAX_DEGREE: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error("degree {requested} exceeds the cap {cap}")]
    CapExceeded { requested: u32, cap: u32 },
}

/// `Δ(E)_0 ⊕ … ⊕ Δ(E)_d` with explicit `x`, `y`, group and lattice actions.
/// The basis of `Δ(E)_i` is `x^α ⊗ v`, `α` in the order of
/// [`monomials`], `v` running fastest.
pub struct StandardSlice<'a> {
    alg: &'a CherednikAlgebra,
    module: &'a SimpleModule,
    degree: u32,
    monos: Vec<Vec<Monomial>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SliceReport {
    pub dims: Vec<usize>,
    pub expected_dims: Vec<usize>,
    pub y_commute: bool,
    /// Scalar by which `eu` acts on each graded piece, if it is one.
    pub euler_scalars: Vec<Option<String>>,
    /// `eu` on `Δ(E)_i` equals `eu` on `Δ(E)_0` plus `i`.
    pub euler_shift_holds: bool,
    pub passed: bool,
}

impl<'a> StandardSlice<'a> {
    pub fn new(alg: &'a CherednikAlgebra, module: &'a SimpleModule, degree: u32) -> Result<Self, SliceError> {
        if degree > MAX_DEGREE {
            return Err(SliceError::CapExceeded {
                requested: degree,
                cap: MAX_DEGREE,
            });
        }
        let n = alg.context().dim();
        let monos = (0..=degree).map(|i| monomials(n, i)).collect();
        Ok(Self {
            alg,
            module,
            degree,
            monos,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self, i: u32) -> usize {
        self.monos[i as usize].len() * self.module.dim()
    }

    pub fn graded_dims(&self) -> Vec<usize> {
        (0..=self.degree).map(|i| self.dim(i)).collect()
    }

    fn index(&self, i: u32, m: &Monomial) -> usize {
        self.monos[i as usize]
            .iter()
            .position(|x| x == m)
            .expect("monomial of the right degree")
    }

    /// `x_j : Δ(E)_i → Δ(E)_{i+1}`, `i < d`.
    pub fn x_matrix(&self, j: usize, i: u32) -> CycMatrix {
        let de = self.module.dim();
        let mut out = CycMatrix::zeros(self.dim(i + 1), self.dim(i));
        for (a, m) in self.monos[i as usize].iter().enumerate() {
            let mut m2 = m.clone();
            m2[j] += 1;
            let b = self.index(i + 1, &m2);
            for v in 0..de {
                out[(b * de + v, a * de + v)] = Cyclotomic::one();
            }
        }
        out
    }

    /// `y_j : Δ(E)_i → Δ(E)_{i-1}`, `i ≥ 1`:
    /// `y_j (x^α ⊗ v) = [y_j, x^α] ⊗ v`.
    pub fn y_matrix(&self, j: usize, i: u32) -> CycMatrix {
        let de = self.module.dim();
        let mut out = CycMatrix::zeros(self.dim(i - 1), self.dim(i));
        for (a, m) in self.monos[i as usize].iter().enumerate() {
            for (m2, node, w, c) in self.alg.commutator_terms(j, m) {
                let b = self.index(i - 1, &m2);
                let e = self
                    .module
                    .lattice_matrix(node)
                    .expect("lattice element acts on the module");
                let block = e.mul(self.module.group_matrix(w)).scale(&c);
                for r in 0..de {
                    for s in 0..de {
                        let x = &out[(b * de + r, a * de + s)] + &block[(r, s)];
                        out[(b * de + r, a * de + s)] = x;
                    }
                }
            }
        }
        out
    }

    /// `w (x^α ⊗ v) = (x^α ∘ w^-1) ⊗ w v`
    pub fn group_matrix(&self, w: usize, i: u32) -> CycMatrix {
        let g = self.alg.context().group();
        let n = self.alg.context().dim();
        let de = self.module.dim();
        let winv = g.element(g.inv(w));
        let rows: Vec<Vec<Cyclotomic>> = (0..n).map(|r| winv.row_vec(r)).collect();
        let rho = self.module.group_matrix(w);
        let mut out = CycMatrix::zeros(self.dim(i), self.dim(i));
        for (a, m) in self.monos[i as usize].iter().enumerate() {
            let p = Poly::monomial(n, m.clone(), Cyclotomic::one()).compose_linear(&rows);
            for (m2, pc) in p.terms() {
                let b = self.index(i, m2);
                for r in 0..de {
                    for s in 0..de {
                        out[(b * de + r, a * de + s)] = pc * &rho[(r, s)];
                    }
                }
            }
        }
        out
    }

    /// `e_λ (x^α ⊗ v) = x^α ⊗ e_λ v`
    pub fn lattice_matrix(&self, node: usize, i: u32) -> Option<CycMatrix> {
        let e = self.module.lattice_matrix(node)?;
        Some(CycMatrix::identity(self.monos[i as usize].len()).kron(e))
    }

    /// `eu = sum_j x_j y_j - sum_H a_H e_H` on `Δ(E)_i`.
    pub fn euler_matrix(&self, i: u32) -> CycMatrix {
        let ctx = self.alg.context();
        let g = ctx.group();
        let mut out = CycMatrix::zeros(self.dim(i), self.dim(i));
        if i > 0 {
            for j in 0..ctx.dim() {
                out = out.add(&self.x_matrix(j, i - 1).mul(&self.y_matrix(j, i)));
            }
        }
        for &h in ctx.hyperplanes() {
            let mut a = CycMatrix::zeros(self.dim(i), self.dim(i));
            for (w, c) in g.a_for(h, self.alg.params()).terms() {
                a = a.add(&self.group_matrix(w, i).scale(c));
            }
            let e = self.lattice_matrix(ctx.e_h(h), i).expect("pole label acts");
            out = out.sub(&a.mul(&e));
        }
        out
    }

    /// `y_j y_l = y_l y_j` from every degree `≥ 2`.
    pub fn y_commute(&self) -> bool {
        let n = self.alg.context().dim();
        (2..=self.degree).all(|i| {
            (0..n).all(|j| {
                (j + 1..n).all(|l| {
                    self.y_matrix(j, i - 1).mul(&self.y_matrix(l, i))
                        == self.y_matrix(l, i - 1).mul(&self.y_matrix(j, i))
                })
            })
        })
    }

    pub fn report(&self) -> SliceReport {
        let n = self.alg.context().dim() as u64;
        let dims = self.graded_dims();
        let expected_dims: Vec<usize> = (0..=self.degree as u64)
            .map(|i| binomial(n + i - 1, i) as usize * self.module.dim())
            .collect();
        let scalars: Vec<Option<Cyclotomic>> =
            (0..=self.degree).map(|i| self.euler_matrix(i).as_scalar()).collect();
        let euler_shift_holds = match &scalars[0] {
            Some(c0) => scalars
                .iter()
                .enumerate()
                .all(|(i, s)| s.as_ref() == Some(&(c0 + &Cyclotomic::from_int(i as i64)))),
            None => false,
        };
        let y_commute = self.y_commute();
        SliceReport {
            passed: dims == expected_dims && y_commute && euler_shift_holds,
            dims,
            expected_dims,
            y_commute,
            euler_scalars: scalars.iter().map(|s| s.as_ref().map(|c| c.to_string())).collect(),
            euler_shift_holds,
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
