//! Normal-ordered localized differential operators with group (flavor A) or
//! lattice crossed-product (flavor B) coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::RatFunc;
use crate::exact::Cyclotomic;
use crate::group::{GroupAlgebraElement, ReflectionGroup};
use crate::lattice::FullSubgroupLattice;
use crate::poly::{unit_exponent, Monomial, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Flavor {
    /// `D(X) ⋊ N` for a full subgroup `W_0` with normalizer `N`.
    A,
    /// `(D(X) ⊗ CL) ⋊ W`.
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewError {
    #[error("operators of different flavors")]
    FlavorMismatch,
    #[error("element {0} is not in the coefficient group")]
    NotInCoefficientGroup(usize),
    #[error("lattice elements only exist in flavor B")]
    NoLatticeInFlavorA,
}

/// Group data shared by all operators of one algebra.
#[derive(Debug, Clone)]
pub struct SkewContext {
    group: Arc<ReflectionGroup>,
    lattice: Arc<FullSubgroupLattice>,
    flavor: Flavor,
    /// Lattice node of `W_0` (the top in flavor B).
    base: usize,
    /// `N` in flavor A, `W` in flavor B.
    coefficient_group: Vec<usize>,
    allowed: Vec<bool>,
    /// `A_0` in flavor A, all hyperplanes in flavor B.
    hyperplanes: Vec<usize>,
}

impl SkewContext {
    /// `D(X) ⋊ N` with `W_0` the lattice node `w0`.
    pub fn flavor_a(
        group: Arc<ReflectionGroup>,
        lattice: Arc<FullSubgroupLattice>,
        w0: usize,
    ) -> Self {
        let normalizer = lattice.stabilizer(w0).to_vec();
        let hyperplanes = lattice.node(w0).hyperplanes.clone();
        Self::build(group, lattice, Flavor::A, w0, normalizer, hyperplanes)
    }

    pub fn flavor_b(group: Arc<ReflectionGroup>, lattice: Arc<FullSubgroupLattice>) -> Self {
        let all = (0..group.order()).collect();
        let hyperplanes = (0..group.hyperplanes().len()).collect();
        let top = lattice.top();
        Self::build(group, lattice, Flavor::B, top, all, hyperplanes)
    }

    fn build(
        group: Arc<ReflectionGroup>,
        lattice: Arc<FullSubgroupLattice>,
        flavor: Flavor,
        base: usize,
        coefficient_group: Vec<usize>,
        hyperplanes: Vec<usize>,
    ) -> Self {
        let mut allowed = vec![false; group.order()];
        for &w in &coefficient_group {
            allowed[w] = true;
        }
        Self {
            group,
            lattice,
            flavor,
            base,
            coefficient_group,
            allowed,
            hyperplanes,
        }
    }

    pub fn group(&self) -> &ReflectionGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<ReflectionGroup> {
        &self.group
    }

    pub fn lattice(&self) -> &FullSubgroupLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<FullSubgroupLattice> {
        &self.lattice
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Lattice node of `W_0`.
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn coefficient_group(&self) -> &[usize] {
        &self.coefficient_group
    }

    pub fn allows(&self, w: usize) -> bool {
        self.allowed[w]
    }

    /// Hyperplanes carrying poles of the Dunkl operators.
    pub fn hyperplanes(&self) -> &[usize] {
        &self.hyperplanes
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    /// Lattice label attached to the pole along `H`: `W_H` in flavor B,
    /// the unit in flavor A.
    pub fn e_h(&self, h: usize) -> usize {
        match self.flavor {
            Flavor::A => self.lattice.bottom(),
            Flavor::B => self.lattice.atom(h),
        }
    }
}

/// `(derivative multi-index, lattice node, group element)`
pub type TermKey = (Monomial, usize, usize);

/// `sum f · ∂^β · e_λ · w` with functions left, derivatives in the middle
/// and lattice/group factors right.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewOperator {
    flavor: Flavor,
    terms: BTreeMap<TermKey, RatFunc>,
}

impl SkewOperator {
    pub fn zero(ctx: &SkewContext) -> Self {
        Self {
            flavor: ctx.flavor,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &SkewContext) -> Self {
        Self::function(ctx, RatFunc::one(ctx.group()))
    }

    pub fn scalar(ctx: &SkewContext, c: Cyclotomic) -> Self {
        Self::function(ctx, RatFunc::constant(ctx.group(), c))
    }

    pub fn function(ctx: &SkewContext, f: RatFunc) -> Self {
        let mut out = Self::zero(ctx);
        out.add_term(ctx, (vec![0; ctx.dim()], ctx.lattice.bottom(), 0), f);
        out
    }

    pub fn polynomial(ctx: &SkewContext, p: Poly) -> Self {
        Self::function(ctx, RatFunc::from_poly(ctx.group(), p))
    }

    /// Multiplication by the coordinate function `x_i`.
    pub fn coordinate(ctx: &SkewContext, i: usize) -> Self {
        Self::polynomial(ctx, Poly::var(ctx.dim(), i))
    }

    /// Multiplication by a linear form `x` given by its coordinates.
    pub fn linear_function(ctx: &SkewContext, x: &[Cyclotomic]) -> Self {
        Self::polynomial(ctx, Poly::linear(x))
    }

    /// `∂_y = sum_i y_i ∂_i`
    pub fn derivative(ctx: &SkewContext, y: &[Cyclotomic]) -> Self {
        let mut out = Self::zero(ctx);
        for (i, yi) in y.iter().enumerate() {
            out.add_term(
                ctx,
                (unit_exponent(ctx.dim(), i), ctx.lattice.bottom(), 0),
                RatFunc::constant(ctx.group(), yi.clone()),
            );
        }
        out
    }

    pub fn group_element(ctx: &SkewContext, w: usize) -> Result<Self, SkewError> {
        if !ctx.allows(w) {
            return Err(SkewError::NotInCoefficientGroup(w));
        }
        let mut out = Self::zero(ctx);
        out.add_term(ctx, (vec![0; ctx.dim()], ctx.lattice.bottom(), w), RatFunc::one(ctx.group()));
        Ok(out)
    }

    pub fn lattice_element(ctx: &SkewContext, node: usize) -> Result<Self, SkewError> {
        if ctx.flavor == Flavor::A {
            return Err(SkewError::NoLatticeInFlavorA);
        }
        let mut out = Self::zero(ctx);
        out.add_term(ctx, (vec![0; ctx.dim()], node, 0), RatFunc::one(ctx.group()));
        Ok(out)
    }

    /// `f · x · e_node` for a group-algebra element `x`.
    pub fn from_group_algebra(
        ctx: &SkewContext,
        f: &RatFunc,
        x: &GroupAlgebraElement,
        node: usize,
    ) -> Result<Self, SkewError> {
        let mut out = Self::zero(ctx);
        for (w, c) in x.terms() {
            if !ctx.allows(w) {
                return Err(SkewError::NotInCoefficientGroup(w));
            }
            out.add_term(ctx, (vec![0; ctx.dim()], node, w), f.scale(c));
        }
        Ok(out)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &RatFunc)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|(b, _, _)| b.iter().sum()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, ctx: &SkewContext, key: TermKey, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.add(&f, ctx.group());
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, f);
            }
        }
    }

    pub fn add(&self, other: &Self, ctx: &SkewContext) -> Self {
        assert_eq!(self.flavor, other.flavor, "operators of different flavors");
        let mut out = self.clone();
        for (k, f) in other.terms() {
            out.add_term(ctx, k.clone(), f.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self, ctx: &SkewContext) -> Self {
        self.add(&other.scale(&Cyclotomic::from_int(-1)), ctx)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            for (k, f) in self.terms() {
                terms.insert(k.clone(), f.scale(c));
            }
        }
        Self {
            flavor: self.flavor,
            terms,
        }
    }

    pub fn try_mul(&self, other: &Self, ctx: &SkewContext) -> Result<Self, SkewError> {
        if self.flavor != other.flavor || self.flavor != ctx.flavor {
            return Err(SkewError::FlavorMismatch);
        }
        let g = ctx.group();
        let mut out = Self::zero(ctx);
        // w g = (g o w^-1) w  and  w ∂^γ w^-1 = prod_i ∂_{w e_i}^{γ_i}
        let mut moved: BTreeMap<usize, Vec<(RatFunc, Poly, usize, usize)>> = BTreeMap::new();
        let other_terms: Vec<(&TermKey, &RatFunc)> = other.terms.iter().collect();
        for ((beta, lambda, w), f) in &self.terms {
            let entry = moved.entry(*w).or_insert_with(|| {
                let cols: Vec<Vec<Cyclotomic>> = {
                    let m = g.element(*w);
                    (0..m.cols()).map(|j| m.col_vec(j)).collect()
                };
                other_terms
                    .iter()
                    .map(|((gamma, mu, u), gf)| {
                        let gf_w = gf.act(*w, g);
                        let dpoly = Poly::monomial(ctx.dim(), gamma.clone(), Cyclotomic::one())
                            .compose_linear(&cols);
                        (gf_w, dpoly, ctx.lattice.act(*w, *mu), g.mul(*w, *u))
                    })
                    .collect()
            });
            for (gf_w, dpoly, wmu, wu) in entry.iter() {
                let node = ctx.lattice.join(*lambda, *wmu);
                // Leibniz: ∂^β g = sum_δ binom(β, δ) (∂^δ g) ∂^{β-δ}
                for (delta, binom, dg) in leibniz(beta, gf_w, g) {
                    let coeff = f.mul(&dg, g).scale(&Cyclotomic::from_int(binom));
                    if coeff.is_zero() {
                        continue;
                    }
                    for (dm, dc) in dpoly.terms() {
                        let key: Monomial = beta
                            .iter()
                            .zip(&delta)
                            .zip(dm)
                            .map(|((b, d), e)| b - d + e)
                            .collect();
                        out.add_term(ctx, (key, node, *wu), coeff.scale(dc));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product in normal form. Panics on a flavor mismatch.
    pub fn mul(&self, other: &Self, ctx: &SkewContext) -> Self {
        self.try_mul(other, ctx).expect("operators of the same flavor")
    }

    /// `AB - BA`
    pub fn commutator(&self, other: &Self, ctx: &SkewContext) -> Self {
        self.mul(other, ctx).sub(&other.mul(self, ctx), ctx)
    }

    /// `g A g^-1`
    pub fn conjugate(&self, g: usize, ctx: &SkewContext) -> Result<Self, SkewError> {
        let gop = Self::group_element(ctx, g)?;
        let ginv = Self::group_element(ctx, ctx.group().inv(g))?;
        Ok(gop.mul(self, ctx).mul(&ginv, ctx))
    }

    /// Image under `e_λ -> 1`, as an operator of flavor A over `W_0 = W`.
    pub fn specialize_lattice(&self, target: &SkewContext) -> Self {
        let mut out = Self::zero(target);
        for ((beta, _, w), f) in self.terms() {
            out.add_term(target, (beta.clone(), target.lattice().bottom(), *w), f.clone());
        }
        out
    }

    /// Deterministic rendering, one term per line in key order.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let lines: Vec<String> = self
            .terms
            .iter()
            .map(|((beta, lambda, w), f)| {
                let mut parts = vec![format!("[{f}]")];
                let d: Vec<String> = beta
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("d{i}") } else { format!("d{i}^{e}") })
                    .collect();
                if !d.is_empty() {
                    parts.push(d.join("*"));
                }
                if self.flavor == Flavor::B && *lambda != 0 {
                    parts.push(format!("e[{lambda}]"));
                }
                if *w != 0 {
                    parts.push(format!("g[{w}]"));
                }
                parts.join(" * ")
            })
            .collect();
        lines.join("\n+ ")
    }
}

impl fmt::Display for SkewOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// `(δ, prod_i binom(β_i, δ_i), ∂^δ g)` for all `δ <= β`.
fn leibniz(beta: &[u32], g: &RatFunc, group: &ReflectionGroup) -> Vec<(Monomial, i64, RatFunc)> {
    let mut out = vec![(vec![0u32; beta.len()], 1i64, g.clone())];
    for (i, &b) in beta.iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for (delta, coeff, dg) in out {
            let mut current = dg;
            for d in 0..=b {
                if d > 0 {
                    current = current.deriv(i, group);
                }
                if current.is_zero() {
                    break;
                }
                let mut dd = delta.clone();
                dd[i] = d;
                next.push((dd, coeff * binomial(b, d), current.clone()));
            }
        }
        out = next;
    }
    out
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}
