//! Irreducible representations of subgroups of `W`, as exact matrices.
//!
//! Linear characters come from assigning roots of unity to generators.
//! Higher-dimensional irreducibles are cut out of tensor products of known
//! ones with `V` and `V*`: subtract the known isotypic parts by character
//! inner products and, when the remainder has norm one, project onto it.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::exact::{CycMatrix, Cyclotomic, ExactError};
use crate::group::ReflectionGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IrrepError {
    #[error("generator images do not define a homomorphism")]
    NotHomomorphism,
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("images must be square matrices of one size")]
    BadImageShape,
    #[error("found irreducibles with sum of squared dimensions {found}, group order {order}")]
    Incomplete { found: usize, order: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type Character = BTreeMap<usize, Cyclotomic>;

/// A matrix representation of a subgroup, stored on every element.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    dim: usize,
    mats: BTreeMap<usize, CycMatrix>,
}

impl Representation {
    /// Extends images of `gens` to the subgroup they generate, checking the
    /// homomorphism property on all pairs.
    pub fn from_generator_images(
        group: &ReflectionGroup,
        gens: &[usize],
        images: &[CycMatrix],
    ) -> Result<Self, IrrepError> {
        if gens.len() != images.len() {
            return Err(IrrepError::WrongImageCount {
                expected: gens.len(),
                got: images.len(),
            });
        }
        let dim = images.first().map_or(1, CycMatrix::rows);
        if images.iter().any(|m| !m.is_square() || m.rows() != dim) {
            return Err(IrrepError::BadImageShape);
        }
        let mut mats = BTreeMap::new();
        mats.insert(0, CycMatrix::identity(dim));
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (g, img) in gens.iter().zip(images) {
                let y = group.mul(x, *g);
                if !mats.contains_key(&y) {
                    let m = mats[&x].mul(img);
                    mats.insert(y, m);
                    queue.push_back(y);
                }
            }
        }
        let rep = Self { dim, mats };
        if !rep.is_homomorphism(group) {
            return Err(IrrepError::NotHomomorphism);
        }
        Ok(rep)
    }

    /// `V` restricted to a subgroup.
    pub fn reflection(group: &ReflectionGroup, subgroup: &[usize]) -> Self {
        Self {
            dim: group.dim(),
            mats: subgroup.iter().map(|&w| (w, group.element(w).clone())).collect(),
        }
    }

    /// `V*` restricted to a subgroup: `w -> (w^-1)^T`.
    pub fn dual_reflection(group: &ReflectionGroup, subgroup: &[usize]) -> Self {
        Self {
            dim: group.dim(),
            mats: subgroup
                .iter()
                .map(|&w| (w, group.element(group.inv(w)).transpose()))
                .collect(),
        }
    }

    pub fn trivial(subgroup: &[usize]) -> Self {
        Self {
            dim: 1,
            mats: subgroup.iter().map(|&w| (w, CycMatrix::identity(1))).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.mats.keys().copied()
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn contains(&self, w: usize) -> bool {
        self.mats.contains_key(&w)
    }

    pub fn matrix(&self, w: usize) -> &CycMatrix {
        &self.mats[&w]
    }

    pub fn is_homomorphism(&self, group: &ReflectionGroup) -> bool {
        self.mats.iter().all(|(&a, ma)| {
            self.mats.iter().all(|(&b, mb)| match self.mats.get(&group.mul(a, b)) {
                Some(mab) => ma.mul(mb) == *mab,
                None => false,
            })
        })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            dim: self.dim * other.dim,
            mats: self
                .mats
                .iter()
                .map(|(&w, m)| (w, m.kron(&other.mats[&w])))
                .collect(),
        }
    }

    pub fn character(&self) -> Character {
        self.mats.iter().map(|(&w, m)| (w, m.trace())).collect()
    }

    /// Restriction to the span of the columns of `basis` (an invariant
    /// subspace).
    fn restrict(&self, basis: &CycMatrix) -> Self {
        let d = basis.cols();
        let (_, rows) = basis.transpose().rref().expect("finite matrix");
        let square = basis.select(&rows, &(0..d).collect::<Vec<_>>());
        let inv = square.inverse().expect("independent columns");
        let mats = self
            .mats
            .iter()
            .map(|(&w, m)| {
                let image = m.mul(basis);
                (w, inv.mul(&image.select(&rows, &(0..d).collect::<Vec<_>>())))
            })
            .collect();
        Self { dim: d, mats }
    }
}

/// `<chi, psi> = (1/|G|) sum chi(g) conj(psi(g))`
pub fn inner_product(chi: &Character, psi: &Character) -> Cyclotomic {
    let mut s = Cyclotomic::zero();
    for (w, a) in chi {
        s += &(a * &psi[w].conj());
    }
    s.scale(&crate::exact::rat(1, chi.len() as i64))
}

fn character_sub(a: &Character, b: &Character, c: &Cyclotomic) -> Character {
    a.iter().map(|(w, x)| (*w, x - &(c * &b[w]))).collect()
}

/// All one-dimensional characters of `subgroup`.
pub fn linear_characters(group: &ReflectionGroup, subgroup: &[usize]) -> Vec<Representation> {
    let gens = group.greedy_generators(subgroup);
    let orders: Vec<usize> = gens.iter().map(|&g| group.element_order(g)).collect();
    let mut out = Vec::new();
    let total: usize = orders.iter().product();
    for code in 0..total {
        let mut rest = code;
        let images: Vec<CycMatrix> = orders
            .iter()
            .map(|&o| {
                let e = rest % o;
                rest /= o;
                let z = Cyclotomic::root_of_unity(o as u32, e as i64).expect("small order");
                CycMatrix::from_rows(vec![vec![z]]).expect("1x1")
            })
            .collect();
        if let Ok(rep) = Representation::from_generator_images(group, &gens, &images) {
            out.push(rep);
        }
    }
    if gens.is_empty() {
        out.push(Representation::trivial(subgroup));
    }
    out
}

/// A complete list of irreducible representations of `subgroup` (sum of
/// squared dimensions equal to its order), linear characters first.
pub fn irreducible_representations(
    group: &ReflectionGroup,
    subgroup: &[usize],
) -> Result<Vec<Representation>, IrrepError> {
    const MAX_CANDIDATE_DIM: usize = 36;
    let order = subgroup.len();
    let mut found = linear_characters(group, subgroup);
    let mut chars: Vec<Character> = found.iter().map(Representation::character).collect();
    let mut total: usize = found.len();
    let v = Representation::reflection(group, subgroup);
    let vd = Representation::dual_reflection(group, subgroup);
    let mut queue: VecDeque<Representation> = VecDeque::from([v.clone(), vd.clone()]);
    for chi in found.iter().skip(1) {
        queue.push_back(chi.tensor(&v));
    }
    while total < order {
        let Some(rho) = queue.pop_front() else {
            return Err(IrrepError::Incomplete {
                found: total,
                order,
            });
        };
        let chi_rho = rho.character();
        let mut residual = chi_rho.clone();
        for c in &chars {
            residual = character_sub(&residual, c, &inner_product(&chi_rho, c));
        }
        if residual.values().all(Cyclotomic::is_zero) {
            continue;
        }
        if inner_product(&residual, &residual).is_one() {
            // projector onto the new isotypic component
            let deg = residual[&0].clone();
            let mut p = CycMatrix::zeros(rho.dim(), rho.dim());
            for (w, m) in &rho.mats {
                p = p.add(&m.scale(&residual[w].conj()));
            }
            p = p.scale(&deg.scale(&crate::exact::rat(1, order as i64)));
            let (r, pivots) = p.transpose().rref()?;
            let basis = r.select(&(0..pivots.len()).collect::<Vec<_>>(), &(0..rho.dim()).collect::<Vec<_>>()).transpose();
            let new = rho.restrict(&basis);
            total += new.dim() * new.dim();
            chars.push(new.character());
            if new.dim() * group.dim() <= MAX_CANDIDATE_DIM {
                queue.push_back(new.tensor(&v));
                queue.push_back(new.tensor(&vd));
            }
            found.push(new);
            // the same candidate may hide further new pieces
            queue.push_front(rho);
        } else if rho.dim() * group.dim() <= MAX_CANDIDATE_DIM {
            queue.push_back(rho.tensor(&v));
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presets::preset;

    fn all(g: &ReflectionGroup) -> Vec<usize> {
        (0..g.order()).collect()
    }

    #[test]
    fn complete_for_presets_and_orthonormal() {
        for (name, dims) in [
            ("S3", vec![1, 1, 2]),
            ("B2", vec![1, 1, 1, 1, 2]),
            ("I2(5)", vec![1, 1, 2, 2]),
            ("G4", vec![1, 1, 1, 2, 2, 2, 3]),
            ("S4", vec![1, 1, 2, 3, 3]),
        ] {
            let g = preset(name).unwrap();
            let irr = irreducible_representations(&g, &all(&g)).unwrap();
            let mut got: Vec<usize> = irr.iter().map(Representation::dim).collect();
            got.sort_unstable();
            assert_eq!(got, dims, "{name}");
            for (i, a) in irr.iter().enumerate() {
                assert!(a.is_homomorphism(&g));
                for (j, b) in irr.iter().enumerate() {
                    let ip = inner_product(&a.character(), &b.character());
                    assert_eq!(ip, Cyclotomic::from_int((i == j) as i64), "{name} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn subgroup_irreps() {
        let g = preset("G4").unwrap();
        let s = g.reflections()[0];
        let sub = g.subgroup_generated([s]);
        let n = g.normalizer(&sub).unwrap();
        let irr = irreducible_representations(&g, &n).unwrap();
        let total: usize = irr.iter().map(|r| r.dim() * r.dim()).sum();
        assert_eq!(total, n.len());
    }

    #[test]
    fn generator_images_are_validated() {
        let g = preset("S3").unwrap();
        let gens = g.generators().to_vec();
        let sign = CycMatrix::from_rows(vec![vec![Cyclotomic::from_int(-1)]]).unwrap();
        let rep = Representation::from_generator_images(&g, &gens, &[sign.clone(), sign.clone()]).unwrap();
        assert_eq!(rep.order(), 6);
        let bad = CycMatrix::from_rows(vec![vec![Cyclotomic::root_of_unity(3, 1).unwrap()]]).unwrap();
        assert_eq!(
            Representation::from_generator_images(&g, &gens, &[sign, bad]).unwrap_err(),
            IrrepError::NotHomomorphism
        );
    }
}
