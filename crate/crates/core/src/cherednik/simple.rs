//! Simple modules of `ℂL ⋊ W` (flavor B) and of `ℂN` (flavor A), the
//! scalars `c_E` and the order they induce.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use super::irreps::{irreducible_representations, IrrepError, Representation};
use crate::exact::{CycMatrix, Cyclotomic};
use crate::group::{ExactParams, GroupAlgebraElement};
use crate::skew::{Flavor, SkewContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("representation is not defined on the stabilizer of node {0}")]
    WrongSubgroup(usize),
    #[error("transversal element product leaves the stabilizer")]
    TransversalInconsistent,
    #[error("module axioms fail")]
    AxiomsFail,
    #[error("central element does not act by a scalar")]
    NotScalar,
    #[error(transparent)]
    Irrep(#[from] IrrepError),
}

/// `(lattice node of the orbit representative, index of the irreducible of
/// its stabilizer)`
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SimpleLabel {
    pub node: usize,
    pub irrep: usize,
}

/// A finite-dimensional module with explicit matrices for every element of
/// the coefficient group and every lattice element.
///
/// In flavor B the basis is `μ ⊗ v` for `μ` in a `W`-orbit of `L`, ordered
/// by `μ` first; `e_λ` is diagonal with entries `[λ ≤ μ]`. In flavor A the
/// module is an irreducible of `N` and only `e_1` acts.
#[derive(Debug, Clone)]
pub struct SimpleModule {
    label: SimpleLabel,
    flavor: Flavor,
    orbit: Vec<usize>,
    irrep_dim: usize,
    group: BTreeMap<usize, CycMatrix>,
    lattice: BTreeMap<usize, CycMatrix>,
}

impl SimpleModule {
    /// Induced module `μ ⊗ v`, `w(μ ⊗ v) = wμ ⊗ χ(n) v` with
    /// `w g_μ = g_{wμ} n`, for `χ` a representation of `stab_W(node)`.
    pub fn induced(
        ctx: &SkewContext,
        node: usize,
        irrep_index: usize,
        chi: &Representation,
    ) -> Result<Self, ModuleError> {
        let g = ctx.group();
        let lat = ctx.lattice();
        let stab = lat.stabilizer(node);
        if chi.order() != stab.len() || stab.iter().any(|&w| !chi.contains(w)) {
            return Err(ModuleError::WrongSubgroup(node));
        }
        let orbit: Vec<usize> = {
            let mut o: Vec<usize> = lat.orbits()[lat.orbit_of(node)].clone();
            o.sort_unstable();
            // the representative comes first so that its transversal element is 1
            o.retain(|&m| m != node);
            o.insert(0, node);
            o
        };
        let pos: BTreeMap<usize, usize> = orbit.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        // minimal element index carrying node to each orbit member
        let mut transversal = vec![usize::MAX; orbit.len()];
        for w in 0..g.order() {
            let i = pos[&lat.act(w, node)];
            if transversal[i] == usize::MAX {
                transversal[i] = w;
            }
        }
        let d = chi.dim();
        let dim = orbit.len() * d;
        let mut group = BTreeMap::new();
        for w in 0..g.order() {
            let mut m = CycMatrix::zeros(dim, dim);
            for (i, &mu) in orbit.iter().enumerate() {
                let j = pos[&lat.act(w, mu)];
                let n = g.mul(g.inv(transversal[j]), g.mul(w, transversal[i]));
                if !chi.contains(n) {
                    return Err(ModuleError::TransversalInconsistent);
                }
                let block = chi.matrix(n);
                for r in 0..d {
                    for c in 0..d {
                        m[(j * d + r, i * d + c)] = block[(r, c)].clone();
                    }
                }
            }
            group.insert(w, m);
        }
        let lattice = (0..lat.len())
            .map(|l| {
                let m = CycMatrix::from_fn(dim, dim, |r, c| {
                    let hit = r == c && lat.leq(l, orbit[r / d]);
                    Cyclotomic::from_int(hit as i64)
                });
                (l, m)
            })
            .collect();
        let out = Self {
            label: SimpleLabel {
                node,
                irrep: irrep_index,
            },
            flavor: Flavor::B,
            orbit,
            irrep_dim: d,
            group,
            lattice,
        };
        if !out.check_axioms(ctx) {
            return Err(ModuleError::AxiomsFail);
        }
        Ok(out)
    }

    /// An irreducible of `N` as a module over `ℂN` (flavor A).
    pub fn of_normalizer(
        ctx: &SkewContext,
        irrep_index: usize,
        chi: &Representation,
    ) -> Result<Self, ModuleError> {
        let n = ctx.coefficient_group();
        if chi.order() != n.len() || n.iter().any(|&w| !chi.contains(w)) {
            return Err(ModuleError::WrongSubgroup(ctx.base()));
        }
        let group = n.iter().map(|&w| (w, chi.matrix(w).clone())).collect();
        let lattice = BTreeMap::from([(ctx.lattice().bottom(), CycMatrix::identity(chi.dim()))]);
        Ok(Self {
            label: SimpleLabel {
                node: ctx.base(),
                irrep: irrep_index,
            },
            flavor: Flavor::A,
            orbit: vec![ctx.base()],
            irrep_dim: chi.dim(),
            group,
            lattice,
        })
    }

    pub fn label(&self) -> SimpleLabel {
        self.label
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn irrep_dim(&self) -> usize {
        self.irrep_dim
    }

    pub fn dim(&self) -> usize {
        self.orbit.len() * self.irrep_dim
    }

    pub fn group_matrix(&self, w: usize) -> &CycMatrix {
        &self.group[&w]
    }

    /// Action of `e_λ`; in flavor A only the unit is available.
    pub fn lattice_matrix(&self, node: usize) -> Option<&CycMatrix> {
        self.lattice.get(&node)
    }

    pub fn group_algebra_matrix(&self, f: &GroupAlgebraElement) -> CycMatrix {
        let mut out = CycMatrix::zeros(self.dim(), self.dim());
        for (w, c) in f.terms() {
            out = out.add(&self.group[&w].scale(c));
        }
        out
    }

    /// `ρ(a)ρ(b) = ρ(ab)`, `e_λ e_μ = e_{λ∨μ}`, `w e_λ w^-1 = e_{wλ}`.
    pub fn check_axioms(&self, ctx: &SkewContext) -> bool {
        let g = ctx.group();
        let lat = ctx.lattice();
        let group_ok = self.group.iter().all(|(&a, ma)| {
            self.group
                .iter()
                .all(|(&b, mb)| ma.mul(mb) == self.group[&g.mul(a, b)])
        });
        if !group_ok || !self.group[&0].is_identity() {
            return false;
        }
        if self.flavor == Flavor::A {
            return true;
        }
        let lat_ok = self.lattice.iter().all(|(&l, ml)| {
            self.lattice
                .iter()
                .all(|(&m, mm)| ml.mul(mm) == self.lattice[&lat.join(l, m)])
        });
        lat_ok
            && self.group.iter().all(|(&w, mw)| {
                self.lattice
                    .iter()
                    .all(|(&l, ml)| mw.mul(ml) == self.lattice[&lat.act(w, l)].mul(mw))
            })
    }

    /// The commutant of the action is one-dimensional.
    pub fn is_irreducible(&self) -> bool {
        let d = self.dim();
        let id = CycMatrix::identity(d);
        // vec(AX - XA) = (I ⊗ A - A^T ⊗ I) vec(X), row-major vec
        let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
        for m in self.group.values().chain(self.lattice.values()) {
            let eq = m.kron(&id).sub(&id.kron(&m.transpose()));
            rows.extend((0..eq.rows()).map(|i| eq.row_vec(i)));
        }
        let system = CycMatrix::from_rows(rows).expect("rectangular");
        d * d - system.rank() == 1
    }

    /// Matrix of `sum_H a_H e_H` over the pole hyperplanes of `ctx`.
    pub fn central_matrix(&self, ctx: &SkewContext, k: &ExactParams) -> CycMatrix {
        let g = ctx.group();
        let mut out = CycMatrix::zeros(self.dim(), self.dim());
        for &h in ctx.hyperplanes() {
            let a = self.group_algebra_matrix(&g.a_for(h, k));
            let e = &self.lattice[&ctx.e_h(h)];
            out = out.add(&a.mul(e));
        }
        out
    }

    /// `c_E`: the scalar by which `sum_H a_H e_H` acts.
    pub fn c_scalar(&self, ctx: &SkewContext, k: &ExactParams) -> Result<Cyclotomic, ModuleError> {
        self.central_matrix(ctx, k)
            .as_scalar()
            .ok_or(ModuleError::NotScalar)
    }
}

/// Every simple module of `ℂL ⋊ W` (flavor B: one per lattice orbit and
/// irreducible of its stabilizer) or of `ℂN` (flavor A).
pub fn all_simples(ctx: &SkewContext) -> Result<Vec<SimpleModule>, ModuleError> {
    let g = ctx.group();
    match ctx.flavor() {
        Flavor::A => irreducible_representations(g, ctx.coefficient_group())?
            .iter()
            .enumerate()
            .map(|(i, chi)| SimpleModule::of_normalizer(ctx, i, chi))
            .collect(),
        Flavor::B => {
            let lat = ctx.lattice();
            let mut out = Vec::new();
            for orbit in lat.orbits() {
                let node = orbit[0];
                for (i, chi) in irreducible_representations(g, lat.stabilizer(node))?.iter().enumerate() {
                    out.push(SimpleModule::induced(ctx, node, i, chi)?);
                }
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SimpleOrder {
    /// `F < E`
    Greater,
    /// `E < F`
    Less,
    Incomparable,
}

/// Compares `E` with `F`: `F < E` iff `c_E - c_F` is a positive integer.
pub fn order_compare(c_e: &Cyclotomic, c_f: &Cyclotomic) -> SimpleOrder {
    let positive_integer = |d: Cyclotomic| {
        d.as_rational()
            .is_some_and(|q| q.is_integer() && q > num_rational::BigRational::from_integer(0.into()))
    };
    if positive_integer(c_e - c_f) {
        SimpleOrder::Greater
    } else if positive_integer(c_f - c_e) {
        SimpleOrder::Less
    } else {
        SimpleOrder::Incomparable
    }
}
