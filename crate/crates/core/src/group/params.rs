//! Parameters `k_{H,j}`, constant along hyperplane orbits.

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use super::ReflectionGroup;
use crate::exact::Cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("expected {expected} parameter blocks (one per hyperplane orbit), got {got}")]
    WrongOrbitCount { expected: usize, got: usize },
    #[error("orbit {orbit}: expected {expected} values, got {got}")]
    WrongBlockLength {
        orbit: usize,
        expected: usize,
        got: usize,
    },
    #[error("parameters differ between hyperplanes {first} and {second} of orbit {orbit}")]
    OrbitInconsistent {
        orbit: usize,
        first: usize,
        second: usize,
    },
    #[error("no parameters for hyperplane {0}")]
    MissingHyperplane(usize),
}

/// `k_{H,j}` stored once per hyperplane orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterSet<T> {
    blocks: Vec<Vec<T>>,
    orbit_of: Vec<usize>,
}

pub type ExactParams = ParameterSet<Cyclotomic>;
pub type ComplexParams = ParameterSet<Complex64>;

impl<T: Clone> ParameterSet<T> {
    /// One block `(k_0, ..., k_{m-1})` per orbit, in orbit order.
    pub fn new(group: &ReflectionGroup, blocks: Vec<Vec<T>>) -> Result<Self, ParamError> {
        let orbits = group.hyperplane_orbits();
        if blocks.len() != orbits.len() {
            return Err(ParamError::WrongOrbitCount {
                expected: orbits.len(),
                got: blocks.len(),
            });
        }
        for (o, (block, members)) in blocks.iter().zip(orbits).enumerate() {
            let m = group.hyperplane(members[0]).order;
            if block.len() != m {
                return Err(ParamError::WrongBlockLength {
                    orbit: o,
                    expected: m,
                    got: block.len(),
                });
            }
        }
        Ok(Self {
            blocks,
            orbit_of: group.hyperplanes().iter().map(|h| h.orbit).collect(),
        })
    }

    /// Builds the set from per-hyperplane values, rejecting values that are
    /// not constant along orbits.
    pub fn from_hyperplanes(
        group: &ReflectionGroup,
        per_hyperplane: Vec<Option<Vec<T>>>,
    ) -> Result<Self, ParamError>
    where
        T: PartialEq,
    {
        let mut blocks: Vec<Option<(usize, Vec<T>)>> = vec![None; group.hyperplane_orbits().len()];
        for (h, values) in per_hyperplane.into_iter().enumerate() {
            let Some(values) = values else { continue };
            let orbit = group.hyperplane(h).orbit;
            match &blocks[orbit] {
                Some((first, existing)) if *existing != values => {
                    return Err(ParamError::OrbitInconsistent {
                        orbit,
                        first: *first,
                        second: h,
                    })
                }
                Some(_) => {}
                None => blocks[orbit] = Some((h, values)),
            }
        }
        let blocks = blocks
            .into_iter()
            .enumerate()
            .map(|(o, b)| {
                b.map(|(_, v)| v)
                    .ok_or(ParamError::MissingHyperplane(group.hyperplane_orbits()[o][0]))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(group, blocks)
    }

    /// The block `(k_{H,0}, ..., k_{H,m_H-1})` of hyperplane `h`.
    pub fn values(&self, h: usize) -> &[T] {
        &self.blocks[self.orbit_of[h]]
    }

    /// `k_{H,j}` with `j` taken modulo `m_H`.
    pub fn k(&self, h: usize, j: i64) -> &T {
        let block = self.values(h);
        &block[j.rem_euclid(block.len() as i64) as usize]
    }

    pub fn blocks(&self) -> &[Vec<T>] {
        &self.blocks
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> ParameterSet<U> {
        ParameterSet {
            blocks: self.blocks.iter().map(|b| b.iter().map(&f).collect()).collect(),
            orbit_of: self.orbit_of.clone(),
        }
    }
}

impl ExactParams {
    pub fn zero(group: &ReflectionGroup) -> Self {
        Self::constant(group, Cyclotomic::zero())
    }

    pub fn constant(group: &ReflectionGroup, c: Cyclotomic) -> Self {
        let blocks = group
            .hyperplane_orbits()
            .iter()
            .map(|o| vec![c.clone(); group.hyperplane(o[0]).order])
            .collect();
        Self::new(group, blocks).expect("shape matches the group")
    }

    /// Random rationals `a/b` with `a` in `[-5, 5]` and `b` in `[1, 6]`.
    pub fn random_rational(group: &ReflectionGroup, rng: &mut impl Rng) -> Self {
        let blocks = group
            .hyperplane_orbits()
            .iter()
            .map(|o| {
                (0..group.hyperplane(o[0]).order)
                    .map(|_| Cyclotomic::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=6)))
                    .collect()
            })
            .collect();
        Self::new(group, blocks).expect("shape matches the group")
    }

    pub fn to_complex(&self) -> ComplexParams {
        self.map(Cyclotomic::to_complex)
    }
}

impl ComplexParams {
    /// Random complex values with modulus at most `radius`.
    pub fn random_complex(group: &ReflectionGroup, radius: f64, rng: &mut impl Rng) -> Self {
        let blocks = group
            .hyperplane_orbits()
            .iter()
            .map(|o| {
                (0..group.hyperplane(o[0]).order)
                    .map(|_| {
                        let r = radius * rng.gen::<f64>().sqrt();
                        Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
                    })
                    .collect()
            })
            .collect();
        Self::new(group, blocks).expect("shape matches the group")
    }
}

impl ReflectionGroup {
    pub fn a_for(&self, h: usize, k: &ExactParams) -> super::GroupAlgebraElement {
        self.a_element(h, k.values(h))
    }

    pub fn gamma_for(&self, h: usize, k: &ExactParams) -> super::GroupAlgebraElement {
        self.gamma_element(h, k.values(h))
    }
}
