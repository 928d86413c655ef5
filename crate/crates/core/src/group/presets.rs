//! Named groups: Weyl groups of type A in the root basis, dihedral groups,
//! the monomial family `G(m,p,n)` and the tetrahedral group `G4`.

use super::{GroupError, ReflectionGroup};
use crate::exact::{CycMatrix, Cyclotomic};

/// Upper bound on the order of any group built from a preset or config.
pub const DEFAULT_ORDER_CAP: usize = 20_000;

/// Builds a preset group by name. Accepted names: `S3`, `A2`, `S4`, `A3`,
/// `An` (n <= 5), `B2`, `G2`, `I2(m)`, `G(m,p,n)`, `G4`.
pub fn preset(name: &str) -> Result<ReflectionGroup, GroupError> {
    let gens = preset_generators(name)?;
    ReflectionGroup::generate(name.trim(), &gens, DEFAULT_ORDER_CAP)
}

pub fn preset_generators(name: &str) -> Result<Vec<CycMatrix>, GroupError> {
    let unknown = || GroupError::UnknownPreset(name.to_string());
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.as_str() {
        "S3" => return Ok(type_a(2)),
        "S4" => return Ok(type_a(3)),
        "B2" => return monomial(2, 1, 2),
        "G2" => return dihedral(6),
        "G4" => return Ok(g4()),
        _ => {}
    }
    if let Some(n) = compact.strip_prefix('A') {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if (1..=5).contains(&n) {
            return Ok(type_a(n));
        }
        return Err(unknown());
    }
    if let Some(inner) = compact.strip_prefix("I2(").and_then(|s| s.strip_suffix(')')) {
        let m: u32 = inner.parse().map_err(|_| unknown())?;
        return dihedral(m);
    }
    if let Some(inner) = compact.strip_prefix("G(").and_then(|s| s.strip_suffix(')')) {
        let parts: Vec<u32> = inner
            .split(',')
            .map(|p| p.parse().map_err(|_| unknown()))
            .collect::<Result<_, _>>()?;
        if let [m, p, n] = parts[..] {
            return monomial(m, p, n as usize);
        }
    }
    Err(unknown())
}

/// Reflections of a Cartan matrix in the root basis: `s_i(a_j) = a_j - c_ij a_i`.
fn from_cartan(cartan: &[Vec<Cyclotomic>]) -> Vec<CycMatrix> {
    let n = cartan.len();
    (0..n)
        .map(|i| {
            let mut m = CycMatrix::identity(n);
            for j in 0..n {
                m[(i, j)] = if i == j {
                    Cyclotomic::from_int(-1)
                } else {
                    -&cartan[i][j]
                };
            }
            m
        })
        .collect()
}

fn type_a(n: usize) -> Vec<CycMatrix> {
    let cartan: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => Cyclotomic::from_int(2),
                    1 => Cyclotomic::from_int(-1),
                    _ => Cyclotomic::zero(),
                })
                .collect()
        })
        .collect();
    from_cartan(&cartan)
}

/// `I2(m)` with symmetric Cartan entries `-2 cos(pi/m)`.
fn dihedral(m: u32) -> Result<Vec<CycMatrix>, GroupError> {
    if !(2..=60).contains(&m) {
        return Err(GroupError::UnknownPreset(format!("I2({m})")));
    }
    let z = Cyclotomic::root_of_unity(2 * m, 1)?;
    let two_cos = &z + &z.inv()?;
    let off = -&two_cos;
    Ok(from_cartan(&[
        vec![Cyclotomic::from_int(2), off.clone()],
        vec![off, Cyclotomic::from_int(2)],
    ]))
}

/// `G(m,p,n)`: monomial matrices with `m`-th root of unity entries whose
/// product is an `(m/p)`-th root of unity.
fn monomial(m: u32, p: u32, n: usize) -> Result<Vec<CycMatrix>, GroupError> {
    let bad = || GroupError::UnknownPreset(format!("G({m},{p},{n})"));
    if m == 0 || p == 0 || !m.is_multiple_of(p) || n == 0 || n > 6 || m > 60 {
        return Err(bad());
    }
    let zeta = |k: i64| Cyclotomic::root_of_unity(m, k);
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        gens.push(swap(n, i, Cyclotomic::one(), Cyclotomic::one()));
    }
    if p < m {
        let mut t = CycMatrix::identity(n);
        t[(0, 0)] = zeta(p as i64)?;
        gens.push(t);
    }
    if p > 1 && n >= 2 {
        gens.push(swap(n, 0, zeta(1)?, zeta(-1)?));
    }
    if gens.is_empty() {
        return Err(bad());
    }
    Ok(gens)
}

/// Exchanges coordinates `i` and `i+1`, with `(i, i+1)` entry `a` and
/// `(i+1, i)` entry `b`.
fn swap(n: usize, i: usize, a: Cyclotomic, b: Cyclotomic) -> CycMatrix {
    let mut s = CycMatrix::identity(n);
    s[(i, i)] = Cyclotomic::zero();
    s[(i + 1, i + 1)] = Cyclotomic::zero();
    s[(i, i + 1)] = a;
    s[(i + 1, i)] = b;
    s
}

/// Two order-3 reflections over `Q(zeta_3)` generating a group of order 24.
fn g4() -> Vec<CycMatrix> {
    let w = Cyclotomic::root_of_unity(3, 1).expect("conductor 3");
    let one = Cyclotomic::one;
    let zero = Cyclotomic::zero;
    vec![
        CycMatrix::from_rows(vec![vec![w.clone(), one()], vec![zero(), one()]]).expect("2x2"),
        CycMatrix::from_rows(vec![vec![one(), zero()], vec![-&w, w]]).expect("2x2"),
    ]
}
