//! Finite complex reflection groups given by generator matrices.
//!
//! Elements are enumerated breadth-first from the identity (right
//! multiplication by generators in index order), so element indices are
//! reproducible. Index 0 is always the identity.

mod algebra;
mod params;
pub mod presets;

pub use algebra::GroupAlgebraElement;
pub use params::{ComplexParams, ExactParams, ParamError, ParameterSet};

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::exact::{CycMatrix, Cyclotomic, CyclotomicField, ExactError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("no generators given")]
    NoGenerators,
    #[error("generator {0} is not square or has the wrong size")]
    BadShape(usize),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("group order exceeds the cap of {0} elements")]
    CapExceeded(usize),
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("stabilizer of hyperplane {0} is not cyclic")]
    NonCyclicStabilizer(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Reflecting hyperplane `H = ker(alpha_H)` with its pointwise stabilizer.
#[derive(Debug, Clone)]
pub struct Hyperplane {
    pub id: usize,
    /// Linear form with kernel `H`, first nonzero coordinate equal to 1.
    pub alpha: Vec<Cyclotomic>,
    /// Spans the `W_H`-stable line complementary to `H`; first nonzero
    /// coordinate equal to 1.
    pub v: Vec<Cyclotomic>,
    /// `m_H = |W_H|`.
    pub order: usize,
    /// `W_H` as sorted element indices (identity included).
    pub stabilizer: Vec<usize>,
    pub orbit: usize,
    /// The element of `W_H` with determinant `exp(-2 pi i / m_H)`; the
    /// braided reflection around `H` lifts it.
    pub distinguished: usize,
}

impl Hyperplane {
    /// `alpha_H(y)` for a vector `y`.
    pub fn eval(&self, y: &[Cyclotomic]) -> Cyclotomic {
        dot(&self.alpha, y)
    }
}

pub(crate) fn dot(a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
    let mut s = Cyclotomic::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

#[derive(Debug, Clone)]
pub struct ReflectionGroup {
    name: String,
    dim: usize,
    field: Option<Arc<CyclotomicField>>,
    generators: Vec<usize>,
    elements: Vec<CycMatrix>,
    /// `e * g_i` for each element and generator position.
    right_gen: Vec<Vec<usize>>,
    /// BFS parent: element = parent * generator.
    parent: Vec<Option<(usize, usize)>>,
    table: Vec<u32>,
    inverse: Vec<usize>,
    det: Vec<Cyclotomic>,
    reflections: Vec<usize>,
    hyperplanes: Vec<Hyperplane>,
    hyperplane_of: Vec<Option<usize>>,
    /// `[w][H] = (H', c)` with `alpha_H o w^-1 = c alpha_H'`.
    hyperplane_action: Vec<Vec<(usize, Cyclotomic)>>,
    orbits: Vec<Vec<usize>>,
}

impl ReflectionGroup {
    /// Enumerates the group generated by `gens`, failing once more than `cap`
    /// elements have been produced.
    pub fn generate(name: &str, gens: &[CycMatrix], cap: usize) -> Result<Self, GroupError> {
        if gens.is_empty() {
            return Err(GroupError::NoGenerators);
        }
        let dim = gens[0].rows();
        for (i, g) in gens.iter().enumerate() {
            if !g.is_square() || g.rows() != dim {
                return Err(GroupError::BadShape(i));
            }
            if g.det()?.is_zero() {
                return Err(GroupError::NotInvertible(i));
            }
        }
        // common field for all entries
        let conductor = gens
            .iter()
            .flat_map(|g| g.entries().iter().map(Cyclotomic::conductor))
            .fold(1u64, |acc, c| crate::exact::lcm_u64(acc, c as u64));
        let field = if conductor > 2 {
            Some(CyclotomicField::new(
                u32::try_from(conductor).unwrap_or(u32::MAX),
                crate::exact::DEFAULT_CONDUCTOR_CAP,
            )?)
        } else {
            None
        };
        let gens: Vec<CycMatrix> = match &field {
            Some(f) => gens.iter().map(|g| g.lift_to(f)).collect::<Result<_, _>>()?,
            None => gens.to_vec(),
        };

        let key = |m: &CycMatrix| -> Vec<Rational> { matrix_key(m, field.as_ref()) };
        let mut elements = vec![CycMatrix::identity(dim)];
        let mut parent = vec![None];
        let mut right_gen: Vec<Vec<usize>> = Vec::new();
        let mut lookup: HashMap<Vec<Rational>, usize> = HashMap::new();
        lookup.insert(key(&elements[0]), 0);
        let mut head = 0;
        while head < elements.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (gi, g) in gens.iter().enumerate() {
                let prod = elements[head].mul(g);
                let k = key(&prod);
                let idx = match lookup.get(&k) {
                    Some(&i) => i,
                    None => {
                        if elements.len() >= cap {
                            return Err(GroupError::CapExceeded(cap));
                        }
                        elements.push(prod);
                        parent.push(Some((head, gi)));
                        lookup.insert(k, elements.len() - 1);
                        elements.len() - 1
                    }
                };
                row.push(idx);
            }
            right_gen.push(row);
            head += 1;
        }
        let n = elements.len();
        let generators = (0..gens.len()).map(|i| right_gen[0][i]).collect();

        // a * b via the BFS word of b
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            table[a * n] = a as u32;
            for b in 1..n {
                let (p, gi) = parent[b].expect("non-identity has a parent");
                let ap = table[a * n + p] as usize;
                table[a * n + b] = right_gen[ap][gi] as u32;
            }
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a * n + b] == 0)
                .expect("finite group elements are invertible");
        }
        let det = elements
            .iter()
            .map(|m| m.det())
            .collect::<Result<Vec<_>, _>>()?;

        let mut group = Self {
            name: name.to_string(),
            dim,
            field,
            generators,
            elements,
            right_gen,
            parent,
            table,
            inverse,
            det,
            reflections: Vec::new(),
            hyperplanes: Vec::new(),
            hyperplane_of: vec![None; n],
            hyperplane_action: Vec::new(),
            orbits: Vec::new(),
        };
        group.index_reflections()?;
        Ok(group)
    }

    fn index_reflections(&mut self) -> Result<(), GroupError> {
        let found = find_reflections(self);
        let mut by_alpha: HashMap<Vec<Rational>, usize> = HashMap::new();
        let mut hyperplanes: Vec<Hyperplane> = Vec::new();
        for (w, alpha, v) in found {
            let k = vector_key(&alpha, self.field.as_ref());
            let id = match by_alpha.get(&k) {
                Some(&id) => id,
                None => {
                    let id = hyperplanes.len();
                    by_alpha.insert(k, id);
                    hyperplanes.push(Hyperplane {
                        id,
                        alpha,
                        v,
                        order: 1,
                        stabilizer: vec![0],
                        orbit: 0,
                        distinguished: 0,
                    });
                    id
                }
            };
            self.reflections.push(w);
            self.hyperplane_of[w] = Some(id);
            hyperplanes[id].stabilizer.push(w);
        }
        for h in hyperplanes.iter_mut() {
            h.stabilizer.sort_unstable();
            h.order = h.stabilizer.len();
            let m = h.order;
            if !h.stabilizer.iter().any(|&w| self.element_order(w) == m) {
                return Err(GroupError::NonCyclicStabilizer(h.id));
            }
            let target = Cyclotomic::root_of_unity(m as u32, -1)?;
            h.distinguished = *h
                .stabilizer
                .iter()
                .find(|&&w| self.det[w] == target)
                .ok_or(GroupError::NonCyclicStabilizer(h.id))?;
        }

        // action on hyperplanes
        let mut action = Vec::with_capacity(self.order());
        for w in 0..self.order() {
            let winv = &self.elements[self.inverse[w]];
            let mut row = Vec::with_capacity(hyperplanes.len());
            for h in &hyperplanes {
                let image = CycMatrix::row(h.alpha.clone()).mul(winv).row_vec(0);
                let (c, normalized) = normalize_first_nonzero(&image);
                let id = by_alpha[&vector_key(&normalized, self.field.as_ref())];
                row.push((id, c));
            }
            action.push(row);
        }
        // orbits, numbered by smallest member
        let mut orbit_of = vec![usize::MAX; hyperplanes.len()];
        let mut orbits = Vec::new();
        for h in 0..hyperplanes.len() {
            if orbit_of[h] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = (0..self.order()).map(|w| action[w][h].0).collect();
            for &m in &members {
                orbit_of[m] = orbits.len();
            }
            orbits.push(members.into_iter().collect::<Vec<_>>());
        }
        for h in hyperplanes.iter_mut() {
            h.orbit = orbit_of[h.id];
        }
        self.hyperplanes = hyperplanes;
        self.hyperplane_action = action;
        self.orbits = orbits;
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Rank of `V`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn field(&self) -> Option<&Arc<CyclotomicField>> {
        self.field.as_ref()
    }

    pub fn conductor(&self) -> u32 {
        self.field.as_ref().map_or(1, |f| f.conductor())
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> &CycMatrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn det(&self, a: usize) -> &Cyclotomic {
        &self.det[a]
    }

    /// `a b a^-1`
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inverse[a])
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Index of an arbitrary matrix, if it belongs to the group.
    pub fn index_of(&self, m: &CycMatrix) -> Option<usize> {
        let k = matrix_key(m, self.field.as_ref());
        self.elements
            .iter()
            .position(|e| matrix_key(e, self.field.as_ref()) == k)
    }

    /// BFS word of an element as a list of generator positions.
    pub fn word(&self, mut a: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, g)) = self.parent[a] {
            w.push(g);
            a = p;
        }
        w.reverse();
        w
    }

    pub fn parent(&self, a: usize) -> Option<(usize, usize)> {
        self.parent[a]
    }

    pub fn right_generator_product(&self, a: usize, gen_pos: usize) -> usize {
        self.right_gen[a][gen_pos]
    }

    pub fn reflections(&self) -> &[usize] {
        &self.reflections
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, h: usize) -> &Hyperplane {
        &self.hyperplanes[h]
    }

    /// Hyperplane of a reflection.
    pub fn hyperplane_of(&self, w: usize) -> Option<usize> {
        self.hyperplane_of[w]
    }

    /// `w(H)` as a hyperplane id.
    pub fn act_on_hyperplane(&self, w: usize, h: usize) -> usize {
        self.hyperplane_action[w][h].0
    }

    /// Scalar `c` with `alpha_H o w^-1 = c alpha_{w(H)}`.
    pub fn hyperplane_scalar(&self, w: usize, h: usize) -> &Cyclotomic {
        &self.hyperplane_action[w][h].1
    }

    /// Hyperplane orbits, each a sorted list of ids; orbit `i` contains the
    /// smallest id not in orbits `< i`.
    pub fn hyperplane_orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Image `w(y)` of a vector.
    pub fn act_on_vector(&self, w: usize, y: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.elements[w].mul(&CycMatrix::column(y.to_vec())).col_vec(0)
    }

    /// `x o w^-1` for a covector `x` (the left action on `V*`).
    pub fn act_on_covector(&self, w: usize, x: &[Cyclotomic]) -> Vec<Cyclotomic> {
        CycMatrix::row(x.to_vec())
            .mul(&self.elements[self.inverse[w]])
            .row_vec(0)
    }

    /// Closure of a set of elements under multiplication.
    pub fn subgroup_generated(&self, gens: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            head += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &s in set {
            member[s] = true;
        }
        member[0] && set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// `N_G(S) = {g : g S g^-1 = S}` for a subgroup `S` given as element
    /// indices; brute force over the group.
    pub fn normalizer(&self, subgroup: &[usize]) -> Result<Vec<usize>, GroupError> {
        if !self.is_subgroup(subgroup) {
            return Err(GroupError::NotSubgroup);
        }
        let mut member = vec![false; self.order()];
        for &s in subgroup {
            member[s] = true;
        }
        Ok((0..self.order())
            .filter(|&g| subgroup.iter().all(|&s| member[self.conj(g, s)]))
            .collect())
    }

    /// Smallest generating set of a subgroup found greedily in index order.
    pub fn greedy_generators(&self, subgroup: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        for &s in subgroup {
            if span.binary_search(&s).is_err() {
                gens.push(s);
                span = self.subgroup_generated(gens.iter().copied());
            }
        }
        gens
    }

    /// The vector `e_i` of the standard basis.
    pub fn basis_vector(&self, i: usize) -> Vec<Cyclotomic> {
        (0..self.dim)
            .map(|j| if i == j { Cyclotomic::one() } else { Cyclotomic::zero() })
            .collect()
    }
}

/// All reflections of an enumerated group: `(element, alpha_H, v_H)` for
/// every non-identity `g` with `rank(g - 1) = 1`.
pub fn find_reflections(
    group: &ReflectionGroup,
) -> Vec<(usize, Vec<Cyclotomic>, Vec<Cyclotomic>)> {
    let id = CycMatrix::identity(group.dim());
    let mut out = Vec::new();
    for (w, m) in group.elements().iter().enumerate().skip(1) {
        let d = m.sub(&id);
        if d.rank() != 1 {
            continue;
        }
        let row = (0..d.rows())
            .map(|i| d.row_vec(i))
            .find(|r| r.iter().any(|e| !e.is_zero()))
            .expect("rank one");
        let col = (0..d.cols())
            .map(|j| d.col_vec(j))
            .find(|c| c.iter().any(|e| !e.is_zero()))
            .expect("rank one");
        out.push((w, normalize_first_nonzero(&row).1, normalize_first_nonzero(&col).1));
    }
    out
}

fn normalize_first_nonzero(v: &[Cyclotomic]) -> (Cyclotomic, Vec<Cyclotomic>) {
    let c = v
        .iter()
        .find(|e| !e.is_zero())
        .cloned()
        .expect("nonzero vector");
    let inv = c.inv().expect("nonzero");
    (c, v.iter().map(|e| e * &inv).collect())
}

fn vector_key(v: &[Cyclotomic], field: Option<&Arc<CyclotomicField>>) -> Vec<Rational> {
    v.iter()
        .flat_map(|e| match field {
            Some(f) => e.lift_to(f).expect("entries live in the group field").coeffs().to_vec(),
            None => e.coeffs().to_vec(),
        })
        .collect()
}

fn matrix_key(m: &CycMatrix, field: Option<&Arc<CyclotomicField>>) -> Vec<Rational> {
    vector_key(m.entries(), field)
}

#[cfg(test)]
mod tests {
    use super::presets::preset;
    use super::*;

    /// Independent reflection count: elements whose fixed space has
    /// codimension one, computed via the nullspace instead of the rank.
    fn oracle_reflection_count(g: &ReflectionGroup) -> usize {
        let id = CycMatrix::identity(g.dim());
        (1..g.order())
            .filter(|&w| g.element(w).sub(&id).nullspace().cols() == g.dim() - 1)
            .count()
    }

    #[test]
    fn preset_orders_and_reflections() {
        for (name, order, refl, hyps, m) in [
            ("S3", 6, 3, 3, 2),
            ("B2", 8, 4, 4, 2),
            ("I2(5)", 10, 5, 5, 2),
            ("G4", 24, 8, 4, 3),
            ("S4", 24, 6, 6, 2),
        ] {
            let g = preset(name).unwrap();
            assert_eq!(g.order(), order, "{name}");
            assert_eq!(g.reflections().len(), refl, "{name}");
            assert_eq!(oracle_reflection_count(&g), refl, "{name}");
            assert_eq!(g.hyperplanes().len(), hyps, "{name}");
            assert!(g.hyperplanes().iter().all(|h| h.order == m), "{name}");
        }
    }

    #[test]
    fn b2_has_two_hyperplane_orbits_of_size_two() {
        let g = preset("B2").unwrap();
        let sizes: Vec<usize> = g.hyperplane_orbits().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![2, 2]);
    }

    #[test]
    fn identity_first_and_table_consistent() {
        let g = preset("G4").unwrap();
        assert!(g.element(0).is_identity());
        for a in 0..g.order() {
            for b in [1, 5, 17] {
                let prod = g.element(a).mul(g.element(b));
                assert_eq!(g.index_of(&prod), Some(g.mul(a, b)));
            }
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn normalizer_examples() {
        let g = preset("S3").unwrap();
        let s = g.reflections()[0];
        let sub = vec![0, s];
        assert_eq!(g.normalizer(&sub).unwrap(), sub);
        let all: Vec<usize> = (0..g.order()).collect();
        assert_eq!(g.normalizer(&[0]).unwrap(), all);
        assert_eq!(g.normalizer(&all).unwrap(), all);
        assert_eq!(g.normalizer(&[0, 1]).err(), if g.is_subgroup(&[0, 1]) { None } else { Some(GroupError::NotSubgroup) });
    }

    #[test]
    fn reflection_determinants_and_stabilizers() {
        for name in ["S3", "B2", "G4", "G(4,1,1)", "G(3,3,2)"] {
            let g = preset(name).unwrap();
            for h in g.hyperplanes() {
                for &w in &h.stabilizer {
                    assert!(g.det(w).pow(h.order as i64).unwrap().is_one());
                }
                let gen = g.subgroup_generated(h.stabilizer.iter().copied().filter(|&w| w != 0));
                assert_eq!(gen, h.stabilizer);
                assert!(!h.eval(&h.v).is_zero());
                // w(H) has the same m_H
                for w in 0..g.order() {
                    assert_eq!(g.hyperplane(g.act_on_hyperplane(w, h.id)).order, h.order);
                }
            }
        }
    }

    #[test]
    fn cap_and_invertibility_errors() {
        let g = preset("S4").unwrap();
        let gens: Vec<CycMatrix> = g.generators().iter().map(|&i| g.element(i).clone()).collect();
        assert_eq!(
            ReflectionGroup::generate("S4", &gens, 10).unwrap_err(),
            GroupError::CapExceeded(10)
        );
        let z = CycMatrix::zeros(2, 2);
        assert_eq!(
            ReflectionGroup::generate("bad", &[z], 10).unwrap_err(),
            GroupError::NotInvertible(0)
        );
    }
}
