//! Acceptance gate: twelve criteria, each with its own tolerance and time
//! budget. Prints one line per criterion and exits non-zero if any fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cherednik::checks::{dunkl_check, euler_check, idempotent_check, lattice_check, modules_check};
use cherednik::cherednik::{all_simples, CherednikAlgebra, SimpleModule, StandardSlice};
use cherednik::exact::{CycMatrix, Cyclotomic};
use cherednik::group::presets::{preset, preset_generators};
use cherednik::group::{ComplexParams, ExactParams, ReflectionGroup};
use cherednik::lattice::{FullSubgroupLattice, DEFAULT_LATTICE_CAP};
use cherednik::monodromy::{
    braided_monodromy, choose_basepoint, contractible_residual, loop_hyperplanes, max_abs, orbit_conjugacy_residual,
    orbit_pairs, relation_report, CMatrix, Connection, DEFAULT_TOL,
};
use cherednik::skew::SkewContext;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn setup(name: &str) -> (Arc<ReflectionGroup>, Arc<FullSubgroupLattice>) {
    let g = Arc::new(preset(name).unwrap());
    let l = Arc::new(FullSubgroupLattice::enumerate(&g, DEFAULT_LATTICE_CAP).unwrap());
    (g, l)
}

/// Closure of the generator matrices under multiplication, by plain search.
fn enumerate_matrices(gens: &[CycMatrix]) -> Vec<CycMatrix> {
    let n = gens[0].rows();
    let mut elems = vec![CycMatrix::identity(n)];
    let mut frontier = elems.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for s in gens {
                let b = a.mul(s);
                if !elems.contains(&b) {
                    elems.push(b.clone());
                    next.push(b);
                }
            }
        }
        frontier = next;
    }
    elems
}

/// Reflections grouped by the normalized row space of `M - 1`; returns
/// the group sizes plus one (the orders `m_H`), sorted.
fn reflection_orders(elems: &[CycMatrix]) -> (usize, Vec<usize>) {
    let n = elems[0].rows();
    let id = CycMatrix::identity(n);
    let mut lines: Vec<(Vec<Cyclotomic>, usize)> = Vec::new();
    let mut count = 0;
    for m in elems {
        let d = m.sub(&id);
        if d.rank() != 1 {
            continue;
        }
        count += 1;
        let row = (0..n).map(|r| d.row_vec(r)).find(|r| r.iter().any(|c| !c.is_zero())).unwrap();
        let lead = row.iter().find(|c| !c.is_zero()).unwrap().inv().unwrap();
        let key: Vec<Cyclotomic> = row.iter().map(|c| c * &lead).collect();
        match lines.iter_mut().find(|(k, _)| *k == key) {
            Some((_, c)) => *c += 1,
            None => lines.push((key, 1)),
        }
    }
    let mut orders: Vec<usize> = lines.iter().map(|(_, c)| c + 1).collect();
    orders.sort();
    (count, orders)
}

fn criterion_group_engine() -> Outcome {
    let expected = [
        ("S3", 6, 3, 2),
        ("B2", 8, 4, 2),
        ("I2(5)", 10, 5, 2),
        ("G4", 24, 8, 3),
    ];
    let mut worst = Duration::ZERO;
    for (name, order, refl, m) in expected {
        let start = Instant::now();
        let g = preset(name).unwrap();
        worst = worst.max(start.elapsed());
        let elems = enumerate_matrices(&preset_generators(name).unwrap());
        let (count, orders) = reflection_orders(&elems);
        ensure(elems.len() == order && g.order() == order, || {
            format!("{name}: order {} (oracle {}), expected {order}", g.order(), elems.len())
        })?;
        ensure(count == refl && g.reflections().len() == refl, || {
            format!("{name}: {} reflections (oracle {count}), expected {refl}", g.reflections().len())
        })?;
        let mut mh: Vec<usize> = g.hyperplanes().iter().map(|h| h.order).collect();
        mh.sort();
        ensure(mh == orders && mh.iter().all(|&x| x == m), || {
            format!("{name}: m_H {mh:?}, oracle {orders:?}, expected all {m}")
        })?;
    }
    ensure(worst < Duration::from_secs(1), || format!("slowest preset took {worst:?}"))?;
    Ok(format!("orders 6/8/10/24, reflections 3/4/5/8, m_H 2/2/2/3; slowest {:.3}s", worst.as_secs_f64()))
}

const ALL_PRESETS: [&str; 8] = ["S3", "S4", "B2", "G2", "I2(5)", "G4", "G(3,1,1)", "G(4,2,2)"];

fn criterion_idempotents() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut hyperplanes = 0;
    for name in ALL_PRESETS {
        let g = preset(name).unwrap();
        let k = ExactParams::random_rational(&g, &mut rng);
        let r = idempotent_check(&g, &k);
        ensure(r.passed, || format!("{name}: {r:?}"))?;
        hyperplanes += g.hyperplanes().len();
    }
    Ok(format!("{} presets, {hyperplanes} hyperplanes", ALL_PRESETS.len()))
}

/// Every full reflection subgroup, found by closing every subset of the
/// reflections and keeping the closed and full ones.
fn full_subgroups_by_subsets(g: &ReflectionGroup) -> Vec<Vec<usize>> {
    let refl = g.reflections();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << refl.len()) {
        let gens: Vec<usize> = (0..refl.len()).filter(|i| mask >> i & 1 == 1).map(|i| refl[i]).collect();
        let mut elems = vec![g.mul(refl[0], g.inv(refl[0]))];
        let mut i = 0;
        while i < elems.len() {
            for &s in &gens {
                let b = g.mul(elems[i], s);
                if !elems.contains(&b) {
                    elems.push(b);
                }
            }
            i += 1;
        }
        elems.sort();
        let full = elems.iter().all(|&w| match g.hyperplane_of(w) {
            Some(h) => refl
                .iter()
                .filter(|&&r| g.hyperplane_of(r) == Some(h))
                .all(|r| elems.binary_search(r).is_ok()),
            None => true,
        });
        if full && !found.contains(&elems) {
            found.push(elems);
        }
    }
    found
}

fn criterion_lattice() -> Outcome {
    let mut sizes = Vec::new();
    for (name, expected) in [("S3", 5), ("B2", 8)] {
        let (g, l) = setup(name);
        let oracle = full_subgroups_by_subsets(&g);
        ensure(l.len() == expected && oracle.len() == expected, || {
            format!("{name}: |L| = {} (oracle {}), expected {expected}", l.len(), oracle.len())
        })?;
        for a in 0..l.len() {
            for b in 0..l.len() {
                let (ea, eb) = (&l.node(a).elements, &l.node(b).elements);
                let least = oracle
                    .iter()
                    .filter(|c| ea.iter().chain(eb).all(|w| c.binary_search(w).is_ok()))
                    .min_by_key(|c| c.len())
                    .unwrap();
                ensure(&l.node(l.join(a, b)).elements == least, || format!("{name}: join({a}, {b}) disagrees"))?;
            }
        }
        let r = lattice_check(&g, &l);
        ensure(r.passed, || format!("{name}: {r:?}"))?;
        sizes.push(l.len());
    }
    Ok(format!("|L| = {sizes:?}, joins match subset oracle, f-basis diagonal"))
}

fn criterion_dimension_identity() -> Outcome {
    let mut totals = Vec::new();
    for name in ["S3", "B2", "I2(5)", "G4"] {
        let (g, l) = setup(name);
        let oracle_size = full_subgroups_by_subsets(&g).len();
        let expected = oracle_size * g.order();
        // orbit sizes and normalizers straight from the action on element sets
        let mut seen = vec![false; l.len()];
        let mut total = 0;
        for x in 0..l.len() {
            if seen[x] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut stab = 0;
            for w in 0..g.order() {
                let image: Vec<usize> = {
                    let mut v: Vec<usize> = l.node(x).elements.iter().map(|&e| g.conj(w, e)).collect();
                    v.sort();
                    v
                };
                let y = (0..l.len()).find(|&y| l.node(y).elements == image).unwrap();
                if y == x {
                    stab += 1;
                }
                if !orbit.contains(&y) {
                    orbit.push(y);
                }
            }
            for &y in &orbit {
                seen[y] = true;
            }
            total += orbit.len() * orbit.len() * stab;
        }
        let report = l.dimension_check(&g);
        ensure(total == expected && report.total == expected && report.holds, || {
            format!("{name}: oracle sum {total}, library {}, expected {expected}", report.total)
        })?;
        let ctx = SkewContext::flavor_b(g.clone(), l.clone());
        let simples = all_simples(&ctx).map_err(|e| e.to_string())?;
        let sq: usize = simples.iter().map(|e| e.dim() * e.dim()).sum();
        ensure(sq == expected, || format!("{name}: Σ (dim E)² = {sq}, expected {expected}"))?;
        totals.push(expected);
    }
    ensure(totals[0] == 30 && totals[1] == 64, || format!("totals {totals:?}"))?;
    Ok(format!("|L||W| = Σ|[W0]|²|N| = Σ(dim E)² = {totals:?}"))
}

fn contexts(name: &str) -> Vec<(String, SkewContext)> {
    let (g, l) = setup(name);
    let mut out = vec![("B".to_string(), SkewContext::flavor_b(g.clone(), l.clone()))];
    for (label, node) in [("A/top", l.top()), ("A/atom", l.atom(0))] {
        out.push((label.to_string(), SkewContext::flavor_a(g.clone(), l.clone(), node)));
    }
    out
}

const RANK2_PRESETS: [&str; 4] = ["S3", "B2", "I2(5)", "G4"];

fn criterion_dunkl() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut pairs = 0;
    for name in RANK2_PRESETS {
        for (label, ctx) in contexts(name) {
            for _ in 0..3 {
                let k = ExactParams::random_rational(ctx.group(), &mut rng);
                let r = dunkl_check(&ctx, &k);
                ensure(r.passed, || format!("{name} {label}: {r:?}"))?;
                pairs += r.pairs_checked;
            }
        }
    }
    Ok(format!("{pairs} commutators zero, equivariance exact, 3 draws per preset and flavor"))
}

fn criterion_euler() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut n = 0;
    for name in RANK2_PRESETS {
        for (label, ctx) in contexts(name) {
            let k = ExactParams::random_rational(ctx.group(), &mut rng);
            let r = euler_check(&ctx, &k);
            ensure(r.passed, || format!("{name} {label}: {r:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} contexts: [eu,x] = x, [eu,T] = −T, [eu,w] = 0, [eu,e_λ] = 0"))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Ranks of the spans built from degree 0 by repeatedly applying the `x_j`.
fn generated_dims(slice: &StandardSlice, n: usize, degree: u32) -> Vec<usize> {
    let mut basis = CycMatrix::identity(slice.dim(0));
    let mut dims = vec![basis.rank()];
    for i in 0..degree {
        let images: Vec<CycMatrix> = (0..n).map(|j| slice.x_matrix(j, i).mul(&basis)).collect();
        let rows = images[0].rows();
        let cols: usize = images.iter().map(CycMatrix::cols).sum();
        let stacked = CycMatrix::from_fn(rows, cols, |r, c| {
            let mut c = c;
            for m in &images {
                if c < m.cols() {
                    return m[(r, c)].clone();
                }
                c -= m.cols();
            }
            unreachable!()
        });
        dims.push(stacked.rank());
        basis = stacked;
    }
    dims
}

fn criterion_pbw() -> Outcome {
    const DEGREE: u32 = 5;
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut triples = 0;
    let mut modules = 0;
    for name in ["S3", "B2"] {
        for (label, ctx) in contexts(name) {
            let k = ExactParams::random_rational(ctx.group(), &mut rng);
            let alg = CherednikAlgebra::new(ctx.clone(), k);
            let conf = alg.confluence_check();
            ensure(conf.passed, || format!("{name} {label}: confluence failures {:?}", conf.failures))?;
            triples += conf.triples_checked;
            let n = ctx.dim();
            for e in all_simples(&ctx).map_err(|e| e.to_string())? {
                let slice = StandardSlice::new(&alg, &e, DEGREE).map_err(|e| e.to_string())?;
                let expected: Vec<usize> = (0..=DEGREE as usize).map(|i| binomial(n + i - 1, i) * e.dim()).collect();
                let generated = generated_dims(&slice, n, DEGREE);
                let report = slice.report();
                ensure(generated == expected && report.dims == expected, || {
                    format!("{name} {label} {:?}: dims {:?} / spans {generated:?}, expected {expected:?}", e.label(), report.dims)
                })?;
                ensure(report.y_commute && report.euler_shift_holds, || {
                    format!("{name} {label} {:?}: {report:?}", e.label())
                })?;
                modules += 1;
            }
        }
    }
    Ok(format!("{triples} critical triples confluent; {modules} standard modules with binomial graded dims to degree {DEGREE}"))
}

/// `(1/dim χ) Σ_{H ∈ A_λ} Σ_j k_{H,j} Σ_{w ∈ W_H} det(w)^{-j} χ(w)`
/// on the representative node; the character formula for `c_E`.
fn c_from_character(ctx: &SkewContext, e: &SimpleModule, k: &ExactParams) -> Cyclotomic {
    let g = ctx.group();
    let node = e.label().node;
    let d = e.irrep_dim();
    let chi = |w: usize| -> Cyclotomic {
        let m = e.group_matrix(w);
        (0..d).fold(Cyclotomic::zero(), |acc, i| acc + m[(i, i)].clone())
    };
    let hs: Vec<usize> = match ctx.flavor() {
        cherednik::skew::Flavor::A => ctx.hyperplanes().to_vec(),
        cherednik::skew::Flavor::B => ctx.lattice().node(node).hyperplanes.clone(),
    };
    let mut total = Cyclotomic::zero();
    for h in hs {
        let hp = g.hyperplane(h);
        let id = g.mul(hp.distinguished, g.inv(hp.distinguished));
        let wh: Vec<usize> = std::iter::once(id)
            .chain(g.reflections().iter().copied().filter(|&r| g.hyperplane_of(r) == Some(h)))
            .collect();
        for j in 0..hp.order as i64 {
            let mut s = Cyclotomic::zero();
            for &w in &wh {
                s = s + g.det(w).pow(-j).unwrap() * chi(w);
            }
            total = total + k.k(h, j).clone() * s;
        }
    }
    total * Cyclotomic::from_ratio(1, d as i64)
}

fn criterion_central_scalar() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut count = 0;
    for name in ["S3", "B2"] {
        for (label, ctx) in contexts(name) {
            let k = ExactParams::random_rational(ctx.group(), &mut rng);
            let r = modules_check(&ctx, &k).map_err(|e| e.to_string())?;
            ensure(r.passed && r.all_scalar && r.bottom_c_zero, || format!("{name} {label}: {r:?}"))?;
            for e in all_simples(&ctx).map_err(|e| e.to_string())? {
                let c = e.c_scalar(&ctx, &k).map_err(|e| e.to_string())?;
                let oracle = c_from_character(&ctx, &e, &k);
                ensure(c == oracle, || format!("{name} {label} {:?}: c_E = {c}, character formula {oracle}", e.label()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} simples: scalar action matches the character formula; bottom character c_E = 0"))
}

fn mat_pow(m: &CMatrix, e: usize) -> CMatrix {
    (0..e).fold(CMatrix::identity(m.nrows(), m.ncols()), |acc, _| acc * m)
}

fn criterion_monodromy_trivial() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut loops = 0;
    for name in ["S3", "B2"] {
        for (label, ctx) in contexts(name) {
            let g = ctx.group();
            let k = ExactParams::zero(g).to_complex();
            let hs = loop_hyperplanes(&ctx);
            let (x0, _) = choose_basepoint(g, &hs);
            for e in all_simples(&ctx).map_err(|e| e.to_string())? {
                let conn = Connection::from_module(&ctx, &e, &k);
                for &h in &hs {
                    let m = braided_monodromy(g, &conn, h, &x0, DEFAULT_TOL).map_err(|e| format!("{name} {label}: {e}"))?;
                    let power = mat_pow(&m.matrix, g.hyperplane(h).order);
                    let r = max_abs(&(power - CMatrix::identity(conn.dim(), conn.dim())));
                    worst = worst.max(r);
                    loops += 1;
                }
            }
        }
    }
    ensure(worst <= 1e-8, || format!("max ‖M^m − 1‖ = {worst:.3e}"))?;
    Ok(format!("{loops} loops, max ‖M^m − 1‖ = {worst:.2e}"))
}

fn criterion_rank_one() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut worst: f64 = 0.0;
    for m in [2usize, 3] {
        let (g, l) = setup(&format!("G({m},1,1)"));
        let ctx = SkewContext::flavor_a(g.clone(), l.clone(), l.top());
        let s = g.hyperplane(0).distinguished;
        let x0 = vec![Complex64::new(0.7, -1.3)];
        for _ in 0..5 {
            let k = ComplexParams::random_complex(&g, 0.3, &mut rng);
            for e in all_simples(&ctx).map_err(|e| e.to_string())? {
                let conn = Connection::from_module(&ctx, &e, &k);
                let mono = braided_monodromy(&g, &conn, 0, &x0, DEFAULT_TOL).map_err(|e| e.to_string())?;
                // χ(s) = ζ_m^{-j} picks out ε_j; s(z) = z^{-m k_j} gains e^{-2πi k_j} along the arc
                let chi = e.group_matrix(s)[(0, 0)].to_complex();
                let j = (0..m)
                    .find(|&j| (chi - Complex64::from_polar(1.0, -2.0 * PI * j as f64 / m as f64)).norm() < 1e-12)
                    .ok_or("character value is not a root of unity")?;
                let predicted = Complex64::from_polar(1.0, -2.0 * PI * j as f64 / m as f64)
                    * (Complex64::new(0.0, -2.0 * PI) * k.k(0, j as i64)).exp();
                let eig = mono.matrix.clone().eigenvalues().ok_or("no eigenvalues")?;
                worst = worst.max((eig[0] - predicted).norm());
            }
        }
    }
    ensure(worst <= 1e-7, || format!("max eigenvalue error {worst:.3e}"))?;
    Ok(format!("m = 2, 3, five draws each: max |λ − ζ^-j e^(-2πi k_j)| = {worst:.2e}"))
}

fn criterion_lattice_specialization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut bottom_worst: f64 = 0.0;
    let mut relation_worst: f64 = 0.0;
    let mut bottom_loops = 0;
    for name in ["S3", "B2", "G4"] {
        let (g, l) = setup(name);
        let ctx = SkewContext::flavor_b(g.clone(), l.clone());
        let k = ComplexParams::random_complex(&g, 0.3, &mut rng);
        let hs = loop_hyperplanes(&ctx);
        let (x0, _) = choose_basepoint(&g, &hs);
        for e in all_simples(&ctx).map_err(|e| e.to_string())? {
            let conn = Connection::from_module(&ctx, &e, &k);
            let on_bottom = e.orbit() == [l.bottom()];
            for &h in &hs {
                let mono = braided_monodromy(&g, &conn, h, &x0, DEFAULT_TOL).map_err(|e| format!("{name}: {e}"))?;
                if on_bottom {
                    let power = mat_pow(&mono.matrix, g.hyperplane(h).order);
                    bottom_worst = bottom_worst.max(max_abs(&(power - CMatrix::identity(conn.dim(), conn.dim()))));
                    bottom_loops += 1;
                }
                let r = relation_report(&g, &conn, &ctx, &mono, &k);
                relation_worst = relation_worst.max(r.power_residual);
            }
        }
    }
    ensure(bottom_loops > 0, || "no module on the bottom orbit".into())?;
    ensure(bottom_worst <= 1e-7, || format!("bottom fiber ‖σ^m − 1‖ = {bottom_worst:.3e}"))?;
    ensure(relation_worst <= 1e-7, || format!("‖(σ^m − 1)(1 − e_H)‖ = {relation_worst:.3e}"))?;
    Ok(format!(
        "bottom fiber: {bottom_loops} loops, ‖σ^m − 1‖ ≤ {bottom_worst:.2e}; all fibers ‖(σ^m − 1)(1 − e_H)‖ ≤ {relation_worst:.2e}"
    ))
}

fn criterion_flatness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut flat: f64 = 0.0;
    let mut conj: f64 = 0.0;
    for name in ["S3", "B2"] {
        for (label, ctx) in contexts(name) {
            let g = ctx.group();
            let k = ComplexParams::random_complex(g, 0.3, &mut rng);
            let hs = loop_hyperplanes(&ctx);
            let (x0, margin) = choose_basepoint(g, &hs);
            let shifted: Vec<Complex64> = x0.iter().map(|z| z * Complex64::new(0.0, 1.0)).collect();
            for e in all_simples(&ctx).map_err(|e| e.to_string())? {
                let conn = Connection::from_module(&ctx, &e, &k);
                for base in [&x0, &shifted] {
                    let r = contractible_residual(&conn, base, margin / 4.0, DEFAULT_TOL).map_err(|e| e.to_string())?;
                    flat = flat.max(r);
                }
                for (h, _, w) in orbit_pairs(&ctx) {
                    let r = orbit_conjugacy_residual(g, &conn, h, w, &x0, DEFAULT_TOL)
                        .map_err(|e| format!("{name} {label}: {e}"))?;
                    conj = conj.max(r);
                }
            }
        }
    }
    ensure(flat <= 1e-7, || format!("contractible loop ‖T − 1‖ = {flat:.3e}"))?;
    ensure(conj <= 1e-6, || format!("orbit conjugacy residual {conj:.3e}"))?;
    Ok(format!("contractible ‖T − 1‖ ≤ {flat:.2e}; orbit conjugacy ≤ {conj:.2e}"))
}

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, title: "group engine", budget: Duration::from_secs(4), run: criterion_group_engine },
        Criterion { id: 2, title: "idempotents and equivariance", budget: Duration::from_secs(5), run: criterion_idempotents },
        Criterion { id: 3, title: "lattice, joins, Möbius basis", budget: Duration::from_secs(10), run: criterion_lattice },
        Criterion { id: 4, title: "dimension identity", budget: Duration::from_secs(30), run: criterion_dimension_identity },
        Criterion { id: 5, title: "Dunkl commutativity and equivariance", budget: Duration::from_secs(120), run: criterion_dunkl },
        Criterion { id: 6, title: "Euler relations", budget: Duration::from_secs(30), run: criterion_euler },
        Criterion { id: 7, title: "PBW confluence and graded dimensions", budget: Duration::from_secs(120), run: criterion_pbw },
        Criterion { id: 8, title: "central scalar c_E", budget: Duration::from_secs(30), run: criterion_central_scalar },
        Criterion { id: 9, title: "monodromy at k = 0", budget: Duration::from_secs(60), run: criterion_monodromy_trivial },
        Criterion { id: 10, title: "rank-one monodromy", budget: Duration::from_secs(60), run: criterion_rank_one },
        Criterion { id: 11, title: "lattice Hecke specialization", budget: Duration::from_secs(60), run: criterion_lattice_specialization },
        Criterion { id: 12, title: "flatness and orbit conjugacy", budget: Duration::from_secs(120), run: criterion_flatness },
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in criteria.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed <= c.budget {
                Ok(detail)
            } else {
                Err(format!("took {:.2}s, budget {}s ({detail})", elapsed.as_secs_f64(), c.budget.as_secs()))
            }
        });
        match result {
            Ok(detail) => println!("PASS {:>2} {:<40} {:>8.2}s  {detail}", c.id, c.title, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {:<40} {:>8.2}s  {why}", c.id, c.title, elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
