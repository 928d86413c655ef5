//! The lattice `L` of full reflection subgroups, its Möbius algebra `CL`
//! and the conjugation action of `W`.

mod mobius;

pub use mobius::MobiusElement;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::group::ReflectionGroup;

/// A reflection subgroup containing, with each reflection, every reflection
/// of `W` that fixes the same hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullSubgroup {
    /// Sorted element indices.
    pub elements: Vec<usize>,
    /// Sorted ids of the hyperplanes of its reflections.
    pub hyperplanes: Vec<usize>,
}

/// Smallest full reflection subgroup containing the given reflections.
pub fn full_closure(group: &ReflectionGroup, reflections: &[usize]) -> FullSubgroup {
    let mut hyperplanes: BTreeSet<usize> = reflections
        .iter()
        .map(|&r| group.hyperplane_of(r).expect("input must be reflections"))
        .collect();
    loop {
        let gens = hyperplanes
            .iter()
            .flat_map(|&h| group.hyperplane(h).stabilizer.iter().copied())
            .filter(|&w| w != 0);
        let elements = group.subgroup_generated(gens);
        let found: BTreeSet<usize> = elements
            .iter()
            .filter_map(|&w| group.hyperplane_of(w))
            .collect();
        if found == hyperplanes {
            return FullSubgroup {
                elements,
                hyperplanes: hyperplanes.into_iter().collect(),
            };
        }
        hyperplanes = found;
    }
}

#[derive(Debug, Clone)]
pub struct FullSubgroupLattice {
    nodes: Vec<FullSubgroup>,
    lookup: HashMap<Vec<usize>, usize>,
    join: Vec<usize>,
    leq: Vec<bool>,
    /// `[w][lambda] = w lambda w^-1`
    action: Vec<Vec<usize>>,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    stabilizers: Vec<Vec<usize>>,
    mobius: Vec<i64>,
    atoms: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("lattice has more than {0} nodes")]
    CapExceeded(usize),
}

pub const DEFAULT_LATTICE_CAP: usize = 5_000;

impl FullSubgroupLattice {
    /// Closes `{1} ∪ {W_H}` under joins. Nodes are sorted by number of
    /// hyperplanes, then lexicographically, so the bottom is node 0 and
    /// the top is the last node.
    pub fn enumerate(group: &ReflectionGroup, cap: usize) -> Result<Self, LatticeError> {
        let mut found: HashMap<Vec<usize>, FullSubgroup> = HashMap::new();
        let bottom = full_closure(group, &[]);
        found.insert(bottom.hyperplanes.clone(), bottom);
        let atoms: Vec<FullSubgroup> = group
            .hyperplanes()
            .iter()
            .map(|h| full_closure(group, &[h.stabilizer[1]]))
            .collect();
        let mut frontier: Vec<FullSubgroup> = Vec::new();
        for a in &atoms {
            if !found.contains_key(&a.hyperplanes) {
                found.insert(a.hyperplanes.clone(), a.clone());
                frontier.push(a.clone());
            }
        }
        // joins with atoms suffice: every node is a join of atoms
        while let Some(node) = frontier.pop() {
            for a in &atoms {
                let hs: BTreeSet<usize> =
                    node.hyperplanes.iter().chain(&a.hyperplanes).copied().collect();
                if hs.len() == node.hyperplanes.len() {
                    continue;
                }
                let reps: Vec<usize> =
                    hs.iter().map(|&h| group.hyperplane(h).stabilizer[1]).collect();
                let j = full_closure(group, &reps);
                if !found.contains_key(&j.hyperplanes) {
                    if found.len() >= cap {
                        return Err(LatticeError::CapExceeded(cap));
                    }
                    found.insert(j.hyperplanes.clone(), j.clone());
                    frontier.push(j);
                }
            }
        }
        let mut nodes: Vec<FullSubgroup> = found.into_values().collect();
        nodes.sort_by(|a, b| {
            (a.hyperplanes.len(), &a.hyperplanes).cmp(&(b.hyperplanes.len(), &b.hyperplanes))
        });
        Ok(Self::from_nodes(group, nodes))
    }

    fn from_nodes(group: &ReflectionGroup, nodes: Vec<FullSubgroup>) -> Self {
        let n = nodes.len();
        let lookup: HashMap<Vec<usize>, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, x)| (x.hyperplanes.clone(), i))
            .collect();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = is_subset(&nodes[i].hyperplanes, &nodes[j].hyperplanes);
            }
        }
        // the join is the least upper bound in the inclusion order
        let mut join = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                let k = (0..n)
                    .find(|&k| leq[i * n + k] && leq[j * n + k])
                    .expect("the top is an upper bound");
                join[i * n + j] = k;
                join[j * n + i] = k;
            }
        }
        let action: Vec<Vec<usize>> = (0..group.order())
            .map(|w| {
                nodes
                    .iter()
                    .map(|x| {
                        let mut hs: Vec<usize> = x
                            .hyperplanes
                            .iter()
                            .map(|&h| group.act_on_hyperplane(w, h))
                            .collect();
                        hs.sort_unstable();
                        lookup[&hs]
                    })
                    .collect()
            })
            .collect();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for x in 0..n {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = action.iter().map(|row| row[x]).collect();
            for &m in &members {
                orbit_of[m] = orbits.len();
            }
            orbits.push(members.into_iter().collect::<Vec<_>>());
        }
        let stabilizers = (0..n)
            .map(|x| (0..group.order()).filter(|&w| action[w][x] == x).collect())
            .collect();
        let atoms = group
            .hyperplanes()
            .iter()
            .map(|h| lookup[&vec![h.id]])
            .collect();

        // mu(x, y) by recursion over the inclusion order (nodes are
        // topologically sorted)
        let mut mobius = vec![0i64; n * n];
        for x in 0..n {
            mobius[x * n + x] = 1;
            for y in x + 1..n {
                if !leq[x * n + y] {
                    continue;
                }
                let s: i64 = (x..y)
                    .filter(|&z| leq[x * n + z] && leq[z * n + y])
                    .map(|z| mobius[x * n + z])
                    .sum();
                mobius[x * n + y] = -s;
            }
        }

        Self {
            nodes,
            lookup,
            join,
            leq,
            action,
            orbits,
            orbit_of,
            stabilizers,
            mobius,
            atoms,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &FullSubgroup {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[FullSubgroup] {
        &self.nodes
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Node with the given sorted hyperplane set.
    pub fn find(&self, hyperplanes: &[usize]) -> Option<usize> {
        self.lookup.get(hyperplanes).copied()
    }

    /// Node id of `W_H`.
    pub fn atom(&self, h: usize) -> usize {
        self.atoms[h]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    /// `w lambda w^-1`
    pub fn act(&self, w: usize, x: usize) -> usize {
        self.action[w][x]
    }

    /// Orbits of `W` on `L`, numbered by smallest member.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_of(&self, x: usize) -> usize {
        self.orbit_of[x]
    }

    /// `stab_W(lambda)`, equal to the normalizer of the subgroup.
    pub fn stabilizer(&self, x: usize) -> &[usize] {
        &self.stabilizers[x]
    }

    pub fn mobius(&self, x: usize, y: usize) -> i64 {
        self.mobius[x * self.len() + y]
    }

    pub fn dimension_check(&self, group: &ReflectionGroup) -> DimensionReport {
        let terms: Vec<OrbitTerm> = self
            .orbits
            .iter()
            .map(|o| {
                let size = o.len();
                let normalizer_order = self.stabilizers[o[0]].len();
                OrbitTerm {
                    representative: o[0],
                    size,
                    normalizer_order,
                    term: size * size * normalizer_order,
                }
            })
            .collect();
        let total = terms.iter().map(|t| t.term).sum();
        let expected = self.len() * group.order();
        DimensionReport {
            terms,
            total,
            expected,
            holds: total == expected,
        }
    }

    pub fn dump(&self) -> LatticeDump {
        let n = self.len();
        LatticeDump {
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, x)| NodeDump {
                    id,
                    hyperplanes: x.hyperplanes.clone(),
                    order: x.elements.len(),
                })
                .collect(),
            join: (0..n).map(|i| self.join[i * n..(i + 1) * n].to_vec()).collect(),
            orbits: self.orbits.clone(),
            normalizer_orders: self.orbits.iter().map(|o| self.stabilizers[o[0]].len()).collect(),
        }
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitTerm {
    pub representative: usize,
    pub size: usize,
    pub normalizer_order: usize,
    pub term: usize,
}

/// `sum over orbits of |orbit|^2 |N_W(W_0)|` against `|L| |W|`.
#[derive(Debug, Clone, Serialize)]
pub struct DimensionReport {
    pub terms: Vec<OrbitTerm>,
    pub total: usize,
    pub expected: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeDump {
    pub id: usize,
    pub hyperplanes: Vec<usize>,
    pub order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeDump {
    pub nodes: Vec<NodeDump>,
    pub join: Vec<Vec<usize>>,
    pub orbits: Vec<Vec<usize>>,
    pub normalizer_orders: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presets::preset;

    /// Every subset of reflections closed to a full subgroup, deduplicated.
    fn brute_force_nodes(g: &ReflectionGroup) -> BTreeSet<Vec<usize>> {
        let r = g.reflections();
        assert!(r.len() <= 16);
        (0u32..(1 << r.len()))
            .map(|mask| {
                let subset: Vec<usize> =
                    (0..r.len()).filter(|i| mask >> i & 1 == 1).map(|i| r[i]).collect();
                full_closure(g, &subset).hyperplanes
            })
            .collect()
    }

    #[test]
    fn sizes_match_brute_force() {
        for (name, size) in [("S3", 5), ("B2", 8), ("G(3,1,1)", 2), ("I2(5)", 7), ("G4", 6)] {
            let g = preset(name).unwrap();
            let l = FullSubgroupLattice::enumerate(&g, DEFAULT_LATTICE_CAP).unwrap();
            assert_eq!(l.len(), size, "{name}");
            let oracle = brute_force_nodes(&g);
            let ours: BTreeSet<Vec<usize>> = l.nodes().iter().map(|x| x.hyperplanes.clone()).collect();
            assert_eq!(ours, oracle, "{name}");
        }
    }

    #[test]
    fn closure_examples() {
        let g = preset("S3").unwrap();
        let r = g.reflections();
        assert_eq!(full_closure(&g, &[]).elements, vec![0]);
        assert_eq!(full_closure(&g, &[r[0], r[1]]).elements.len(), 6);
        let g4 = preset("G4").unwrap();
        let s = g4.reflections()[0];
        let c = full_closure(&g4, &[s]);
        assert_eq!(c.elements.len(), 3);
        assert!(c.elements.contains(&g4.mul(s, s)));
    }

    #[test]
    fn joins_are_least_upper_bounds_by_closure() {
        for name in ["S3", "B2", "G4", "S4"] {
            let g = preset(name).unwrap();
            let l = FullSubgroupLattice::enumerate(&g, DEFAULT_LATTICE_CAP).unwrap();
            for a in 0..l.len() {
                for b in 0..l.len() {
                    let mut refl: Vec<usize> = Vec::new();
                    for x in [a, b] {
                        refl.extend(l.node(x).elements.iter().filter(|&&w| g.hyperplane_of(w).is_some()));
                    }
                    let oracle = full_closure(&g, &refl);
                    assert_eq!(l.node(l.join(a, b)).hyperplanes, oracle.hyperplanes);
                    for w in [1, g.order() / 2, g.order() - 1] {
                        assert_eq!(l.act(w, l.join(a, b)), l.join(l.act(w, a), l.act(w, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn stabilizer_is_normalizer_and_orbit_stabilizer_holds() {
        for name in ["S3", "B2", "G4"] {
            let g = preset(name).unwrap();
            let l = FullSubgroupLattice::enumerate(&g, DEFAULT_LATTICE_CAP).unwrap();
            for x in 0..l.len() {
                assert_eq!(l.stabilizer(x), g.normalizer(&l.node(x).elements).unwrap());
                let orbit = &l.orbits()[l.orbit_of(x)];
                assert_eq!(orbit.len() * l.stabilizer(x).len(), g.order());
            }
        }
    }

    #[test]
    fn dimension_identity() {
        let g = preset("S3").unwrap();
        let l = FullSubgroupLattice::enumerate(&g, DEFAULT_LATTICE_CAP).unwrap();
        let r = l.dimension_check(&g);
        let terms: Vec<usize> = r.terms.iter().map(|t| t.term).collect();
        assert_eq!(terms, vec![6, 18, 6]);
        assert_eq!(r.total, 30);
        assert!(r.holds);
        for name in ["B2", "G(4,1,1)", "G4", "I2(6)"] {
            let g = preset(name).unwrap();
            let l = FullSubgroupLattice::enumerate(&g, DEFAULT_LATTICE_CAP).unwrap();
            let r = l.dimension_check(&g);
            assert!(r.holds, "{name}");
        }
    }

    #[test]
    fn dump_is_serializable() {
        let g = preset("B2").unwrap();
        let l = FullSubgroupLattice::enumerate(&g, DEFAULT_LATTICE_CAP).unwrap();
        let v = serde_json::to_value(l.dump()).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 8);
        assert_eq!(v["join"][0][7], 7);
    }
}
