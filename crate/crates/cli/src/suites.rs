//! Suite dispatch.

use std::sync::Arc;
use std::time::Instant;

use cherednik::checks::{
    dunkl_check, euler_check, group_summary, idempotent_check, lattice_check, modules_check, monodromy_check, pbw_check,
};
use cherednik::group::{ComplexParams, ExactParams};
use cherednik::lattice::{full_closure, FullSubgroupLattice, DEFAULT_LATTICE_CAP};
use cherednik::skew::SkewContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{Parameters, RunConfig};
use crate::report::{CheckReport, RunReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Group,
    Lattice,
    Dunkl,
    Pbw,
    Modules,
    Monodromy,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Group => "group",
            Suite::Lattice => "lattice",
            Suite::Dunkl => "dunkl",
            Suite::Pbw => "pbw",
            Suite::Modules => "modules",
            Suite::Monodromy => "monodromy",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

const ANCHOR_GROUP: &str = "W generated by reflections; |refl(W)| = Σ_H (m_H − 1)";
const ANCHOR_IDEMPOTENTS: &str = "ε_{H,j} = (1/m_H) Σ_{w∈W_H} det(w)^{-j} w; w a_H w^{-1} = a_{w(H)}, w γ_H w^{-1} = γ_{w(H)}";
const ANCHOR_JOIN: &str = "e_λ e_μ = e_{λ∨μ}; f_λ f_μ = δ_{λμ} f_λ";
const ANCHOR_DIMENSION: &str = "Σ_{[W_0]∈L/W} |[W_0]|² |N_W(W_0)| = |L| |W|";
const ANCHOR_DUNKL: &str = "[T_y, T_{y'}] = 0; g T_y g^{-1} = T_{g(y)}";
const ANCHOR_EULER: &str = "[eu, x] = x; [eu, T_y] = −T_y; [eu, w] = 0; [eu, e_λ] = 0";
const ANCHOR_PBW: &str = "PBW: ℂ[V] ⊗ ℂL⋊W ⊗ ℂ[V*]; dim Δ(E)_i = binom(n+i−1, i) dim E";
const ANCHOR_MODULES: &str = "Σ_H a_H e_H acts on E by c_E; Σ_E (dim E)² = dim ℂL⋊W";
const ANCHOR_MONODROMY: &str = "(σ_H^{m_H} − 1)(1 − e_H) = 0; Π_j (σ_H − ζ^{-j} e^{-2πi k_{H,j}}) e_H = 0";

struct Setup {
    lattice: Arc<FullSubgroupLattice>,
    flavor_a: SkewContext,
    flavor_b: SkewContext,
    exact: ExactParams,
    complex: ComplexParams,
}

fn setup(cfg: &RunConfig) -> Result<Setup, String> {
    let g = cfg.group.clone();
    let l = Arc::new(FullSubgroupLattice::enumerate(&g, DEFAULT_LATTICE_CAP).map_err(|e| e.to_string())?);
    let w0 = match &cfg.subgroup {
        None => l.top(),
        Some(refl) => {
            let closure = full_closure(&g, refl);
            l.find(&closure.hyperplanes).ok_or("full closure of the subgroup is not in the lattice")?
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (exact, complex) = match &cfg.parameters {
        Parameters::Exact(k) => (k.clone(), k.to_complex()),
        Parameters::Random => {
            let exact = ExactParams::random_rational(&g, &mut rng);
            let complex = ComplexParams::random_complex(&g, 0.3, &mut rng);
            (exact, complex)
        }
    };
    Ok(Setup {
        flavor_a: SkewContext::flavor_a(g.clone(), l.clone(), w0),
        flavor_b: SkewContext::flavor_b(g, l.clone()),
        lattice: l,
        exact,
        complex,
    })
}

fn timed(f: impl FnOnce() -> CheckReport) -> CheckReport {
    let start = Instant::now();
    let mut r = f();
    r.elapsed = start.elapsed();
    r
}

pub fn run_suite(cfg: &RunConfig, suite: Suite) -> RunReport {
    let g = &cfg.group;
    let seed = cfg.seed;
    let mut checks = Vec::new();
    if suite.includes(Suite::Group) {
        checks.push(timed(|| {
            let s = group_summary(g);
            let expected: usize = g.hyperplanes().iter().map(|h| h.order - 1).sum();
            let passed = expected == s.reflections;
            let value = serde_json::json!({ "summary": s, "reflections_from_orders": expected, "passed": passed });
            CheckReport::from_result("group.enumeration", ANCHOR_GROUP, seed, &value)
        }));
    }
    let setup = match setup(cfg) {
        Ok(s) => s,
        Err(e) => {
            checks.push(CheckReport::from_error("setup", "lattice of full reflection subgroups", seed, e));
            return finish(cfg, suite, checks);
        }
    };
    let flavors = [("flavor_a", &setup.flavor_a), ("flavor_b", &setup.flavor_b)];
    if suite.includes(Suite::Group) {
        checks.push(timed(|| {
            CheckReport::from_result("group.idempotents", ANCHOR_IDEMPOTENTS, seed, &idempotent_check(g, &setup.exact))
        }));
    }
    if suite.includes(Suite::Lattice) {
        checks.push(timed(|| {
            let r = lattice_check(g, &setup.lattice);
            CheckReport::from_result("lattice.join", ANCHOR_JOIN, seed, &r)
        }));
        checks.push(timed(|| {
            let d = setup.lattice.dimension_check(g);
            let value = serde_json::json!({ "size": setup.lattice.len(), "report": d, "passed": d.holds });
            CheckReport::from_result("lattice.dimension", ANCHOR_DIMENSION, seed, &value)
        }));
    }
    if suite.includes(Suite::Dunkl) {
        for (name, ctx) in flavors {
            checks.push(timed(|| {
                CheckReport::from_result(&format!("dunkl.{name}"), ANCHOR_DUNKL, seed, &dunkl_check(ctx, &setup.exact))
            }));
            checks.push(timed(|| {
                CheckReport::from_result(&format!("euler.{name}"), ANCHOR_EULER, seed, &euler_check(ctx, &setup.exact))
            }));
        }
    }
    if suite.includes(Suite::Pbw) {
        for (name, ctx) in flavors {
            checks.push(timed(|| {
                let check = format!("pbw.{name}");
                match pbw_check(ctx, &setup.exact, cfg.degree) {
                    Ok(r) => CheckReport::from_result(&check, ANCHOR_PBW, seed, &r),
                    Err(e) => CheckReport::from_error(&check, ANCHOR_PBW, seed, e),
                }
            }));
        }
    }
    if suite.includes(Suite::Modules) {
        for (name, ctx) in flavors {
            checks.push(timed(|| {
                let check = format!("modules.{name}");
                match modules_check(ctx, &setup.exact) {
                    Ok(r) => CheckReport::from_result(&check, ANCHOR_MODULES, seed, &r),
                    Err(e) => CheckReport::from_error(&check, ANCHOR_MODULES, seed, e),
                }
            }));
        }
    }
    if suite.includes(Suite::Monodromy) {
        for (name, ctx) in flavors {
            checks.push(timed(|| {
                let check = format!("monodromy.{name}");
                match monodromy_check(ctx, &setup.complex, cfg.tol) {
                    Ok(r) => CheckReport::from_result(&check, ANCHOR_MONODROMY, seed, &r)
                        .with_residual("power", r.max_power_residual)
                        .with_residual("predicted", r.max_predicted_residual)
                        .with_residual("contractible", r.contractible_residual)
                        .with_residual("orbit_conjugacy", r.max_orbit_conjugacy_residual),
                    Err(e) => CheckReport::from_error(&check, ANCHOR_MONODROMY, seed, e),
                }
            }));
        }
    }
    finish(cfg, suite, checks)
}

fn finish(cfg: &RunConfig, suite: Suite, checks: Vec<CheckReport>) -> RunReport {
    RunReport {
        suite: suite.name().to_string(),
        group: cfg.group.name().to_string(),
        seed: cfg.seed,
        tol: cfg.tol,
        degree: cfg.degree,
        parameters: match cfg.parameters {
            Parameters::Exact(_) => "given".into(),
            Parameters::Random => "random".into(),
        },
        passed: checks.iter().all(CheckReport::passed),
        checks,
    }
}
