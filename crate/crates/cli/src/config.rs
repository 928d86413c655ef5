//! Plain-text run configuration.
//!
//! ```text
//! # comments run to the end of the line
//! [group]
//! preset = B2                 # or: name = ... plus one `generator = [[..], [..]]` per generator
//!
//! [subgroup]
//! reflections = 0             # indices into the reflection list; W_0 is their full closure
//!
//! [parameters]
//! orbit0 = 1/2, 0             # k_{H,0}, ..., k_{H,m-1} for every H in orbit 0
//! h3 = c(4; 0, 1), 1/3        # or per hyperplane; must agree along orbits
//! k = 0                       # or one value for every k_{H,j}
//!
//! [run]
//! seed = 7
//! tol = 1e-7
//! degree = 5
//! out = report.json
//! ```
//!
//! Scalars are integers, `a/b`, decimals, or `c(N; a0, a1, ...)` meaning
//! `a0 + a1 ζ_N + a2 ζ_N^2 + ...`. Without a `[parameters]` section the
//! parameters are drawn at random from the seed.

use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use cherednik::cherednik::{DEFAULT_DEGREE, MAX_DEGREE};
use cherednik::exact::{CycMatrix, Cyclotomic, Rational, DEFAULT_CONDUCTOR_CAP};
use cherednik::group::presets::{preset, DEFAULT_ORDER_CAP};
use cherednik::group::{ExactParams, ParamError, ReflectionGroup};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            message: message.into(),
        }
    }

    fn global(message: impl Into<String>) -> Self {
        Self {
            line: None,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Parameters {
    Exact(ExactParams),
    Random,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub group: Arc<ReflectionGroup>,
    /// Reflection indices generating `W_0`; `None` means `W_0 = W`.
    pub subgroup: Option<Vec<usize>>,
    pub parameters: Parameters,
    pub seed: u64,
    pub tol: f64,
    pub degree: u32,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TOL: f64 = 1e-7;

struct Entry {
    line: usize,
    key: String,
    value: String,
}

#[derive(Default)]
struct Sections {
    group: Vec<Entry>,
    subgroup: Vec<Entry>,
    parameters: Option<Vec<Entry>>,
    run: Vec<Entry>,
}

fn split_lines(text: &str) -> Result<Sections, ConfigError> {
    let mut out = Sections::default();
    let mut current = "run".to_string();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| ConfigError::at(line, "unterminated section header"))?
                .trim();
            match name {
                "group" | "subgroup" | "run" => {}
                "parameters" => {
                    out.parameters.get_or_insert_with(Vec::new);
                }
                other => return Err(ConfigError::at(line, format!("unknown section [{other}]"))),
            }
            current = name.to_string();
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| ConfigError::at(line, "expected `key = value`"))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(ConfigError::at(line, "empty key"));
        }
        let entry = Entry {
            line,
            key: key.to_string(),
            value: value.trim().to_string(),
        };
        // top-level `group = NAME` is shorthand for [group] preset
        if current == "run" && key == "group" {
            out.group.push(Entry {
                key: "preset".into(),
                ..entry
            });
            continue;
        }
        match current.as_str() {
            "group" => out.group.push(entry),
            "subgroup" => out.subgroup.push(entry),
            "parameters" => out.parameters.as_mut().expect("section opened").push(entry),
            _ => out.run.push(entry),
        }
    }
    Ok(out)
}

/// Splits at top-level commas (outside brackets and parentheses).
fn split_top(s: &str, line: usize) -> Result<Vec<String>, ConfigError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(ConfigError::at(line, format!("unbalanced `{c}`")));
                }
            }
            ',' if depth == 0 => {
                parts.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if depth != 0 {
        return Err(ConfigError::at(line, "unbalanced brackets"));
    }
    parts.push(cur.trim().to_string());
    Ok(parts)
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Ok(q) = Rational::from_str(s) {
        return Some(q);
    }
    // decimal notation
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num = Rational::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let den = Rational::from_str(&format!("1{}", "0".repeat(frac.len()))).ok()?;
    let q = num / den;
    Some(if neg { -q } else { q })
}

/// Parses an integer, `a/b`, a decimal or `c(N; a0, a1, ...)`.
pub fn parse_scalar(s: &str, line: usize) -> Result<Cyclotomic, ConfigError> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) if b.trim_start().starts_with("c(") => (true, b.trim_start()),
        _ => (false, s),
    };
    if let Some(inner) = body.strip_prefix("c(") {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| ConfigError::at(line, format!("malformed cyclotomic literal `{s}`: missing `)`")))?;
        let (n, coeffs) = inner
            .split_once(';')
            .ok_or_else(|| ConfigError::at(line, format!("malformed cyclotomic literal `{s}`: expected `c(N; a0, ...)`")))?;
        let n: u32 = n
            .trim()
            .parse()
            .ok()
            .filter(|n| (1..=DEFAULT_CONDUCTOR_CAP).contains(n))
            .ok_or_else(|| ConfigError::at(line, format!("malformed cyclotomic literal `{s}`: bad conductor `{}`", n.trim())))?;
        let mut value = Cyclotomic::zero();
        for (i, a) in coeffs.split(',').enumerate() {
            let q = parse_rational(a)
                .ok_or_else(|| ConfigError::at(line, format!("malformed cyclotomic literal `{s}`: bad coefficient `{}`", a.trim())))?;
            let z = Cyclotomic::root_of_unity(n, i as i64).map_err(|e| ConfigError::at(line, e.to_string()))?;
            value = value + z * Cyclotomic::from_rational(q);
        }
        return Ok(if neg { -value } else { value });
    }
    parse_rational(body)
        .map(Cyclotomic::from_rational)
        .ok_or_else(|| ConfigError::at(line, format!("malformed scalar `{s}`")))
}

pub fn parse_list(s: &str, line: usize) -> Result<Vec<Cyclotomic>, ConfigError> {
    split_top(s, line)?.iter().map(|p| parse_scalar(p, line)).collect()
}

/// `[[a, b], [c, d]]`
pub fn parse_matrix(s: &str, line: usize) -> Result<CycMatrix, ConfigError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| ConfigError::at(line, "matrix must be written `[[..], ..]`"))?;
    let rows = split_top(inner, line)?
        .iter()
        .map(|r| {
            let r = r
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| ConfigError::at(line, format!("matrix row `{r}` must be bracketed")))?;
            parse_list(r, line)
        })
        .collect::<Result<Vec<_>, _>>()?;
    CycMatrix::from_rows(rows).map_err(|e| ConfigError::at(line, e.to_string()))
}

fn single<'a>(entries: &'a [Entry], key: &str) -> Result<Option<&'a Entry>, ConfigError> {
    let mut found = entries.iter().filter(|e| e.key == key);
    let first = found.next();
    if let Some(dup) = found.next() {
        return Err(ConfigError::at(dup.line, format!("duplicate key `{key}`")));
    }
    Ok(first)
}

fn reject_unknown(entries: &[Entry], allowed: &[&str], section: &str) -> Result<(), ConfigError> {
    for e in entries {
        if !allowed.contains(&e.key.as_str()) {
            return Err(ConfigError::at(e.line, format!("unknown key `{}` in [{section}]", e.key)));
        }
    }
    Ok(())
}

fn build_group(entries: &[Entry]) -> Result<ReflectionGroup, ConfigError> {
    reject_unknown(entries, &["preset", "name", "generator"], "group")?;
    let gens: Vec<&Entry> = entries.iter().filter(|e| e.key == "generator").collect();
    match single(entries, "preset")? {
        Some(p) => {
            if let Some(g) = gens.first() {
                return Err(ConfigError::at(g.line, "`generator` cannot be combined with `preset`"));
            }
            preset(&p.value).map_err(|e| ConfigError::at(p.line, e.to_string()))
        }
        None => {
            if gens.is_empty() {
                return Err(ConfigError::global("no group given: set `preset` or `generator` in [group]"));
            }
            let name = single(entries, "name")?.map_or("custom", |e| e.value.as_str());
            let mats = gens
                .iter()
                .map(|e| parse_matrix(&e.value, e.line))
                .collect::<Result<Vec<_>, _>>()?;
            ReflectionGroup::generate(name, &mats, DEFAULT_ORDER_CAP).map_err(|e| ConfigError::at(gens[0].line, e.to_string()))
        }
    }
}

fn build_parameters(group: &ReflectionGroup, entries: &[Entry]) -> Result<ExactParams, ConfigError> {
    let nh = group.hyperplanes().len();
    let norb = group.hyperplane_orbits().len();
    let mut per_h: Vec<Option<(usize, Vec<Cyclotomic>)>> = vec![None; nh];
    let mut constant: Option<(usize, Cyclotomic)> = None;
    for e in entries {
        let line = e.line;
        if e.key == "k" {
            constant = Some((line, parse_scalar(&e.value, line)?));
            continue;
        }
        let (targets, what) = if let Some(o) = e.key.strip_prefix("orbit") {
            let o: usize = o.parse().map_err(|_| ConfigError::at(line, format!("bad key `{}`", e.key)))?;
            if o >= norb {
                return Err(ConfigError::at(line, format!("orbit {o} does not exist ({norb} orbits)")));
            }
            (group.hyperplane_orbits()[o].clone(), format!("orbit {o}"))
        } else if let Some(h) = e.key.strip_prefix('h') {
            let h: usize = h.parse().map_err(|_| ConfigError::at(line, format!("bad key `{}`", e.key)))?;
            if h >= nh {
                return Err(ConfigError::at(line, format!("hyperplane {h} does not exist ({nh} hyperplanes)")));
            }
            (vec![h], format!("hyperplane {h}"))
        } else {
            return Err(ConfigError::at(line, format!("unknown key `{}` in [parameters]", e.key)));
        };
        let values = parse_list(&e.value, line)?;
        let m = group.hyperplane(targets[0]).order;
        if values.len() != m {
            return Err(ConfigError::at(line, format!("{what} needs {m} values k_0..k_{}, got {}", m - 1, values.len())));
        }
        for h in targets {
            if per_h[h].is_some() {
                return Err(ConfigError::at(line, format!("hyperplane {h} given twice")));
            }
            per_h[h] = Some((line, values.clone()));
        }
    }
    if let Some((line, c)) = constant {
        if per_h.iter().any(Option::is_some) {
            return Err(ConfigError::at(line, "`k` cannot be combined with per-orbit values"));
        }
        return Ok(ExactParams::constant(group, c));
    }
    let lines: Vec<Option<usize>> = per_h.iter().map(|p| p.as_ref().map(|(l, _)| *l)).collect();
    ExactParams::from_hyperplanes(group, per_h.into_iter().map(|p| p.map(|(_, v)| v)).collect()).map_err(|e| match e {
        ParamError::OrbitInconsistent { orbit, first, second } => ConfigError {
            line: lines[second],
            message: format!(
                "parameters must be constant on hyperplane orbits: hyperplanes {first} and {second} of orbit {orbit} differ"
            ),
        },
        other => ConfigError::global(other.to_string()),
    })
}

fn build_subgroup(group: &ReflectionGroup, entries: &[Entry]) -> Result<Option<Vec<usize>>, ConfigError> {
    reject_unknown(entries, &["reflections"], "subgroup")?;
    let Some(e) = single(entries, "reflections")? else {
        return Ok(None);
    };
    let n = group.reflections().len();
    let idx = e
        .value
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let i: usize = s
                .trim()
                .parse()
                .map_err(|_| ConfigError::at(e.line, format!("bad reflection index `{}`", s.trim())))?;
            if i >= n {
                return Err(ConfigError::at(e.line, format!("reflection {i} does not exist ({n} reflections)")));
            }
            Ok(group.reflections()[i])
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Some(idx))
}

fn parse_value<T: FromStr>(e: Option<&Entry>, what: &str) -> Result<Option<T>, ConfigError> {
    e.map(|e| {
        e.value
            .parse()
            .map_err(|_| ConfigError::at(e.line, format!("bad {what} `{}`", e.value)))
    })
    .transpose()
}

pub fn check_degree(d: u32) -> Result<(), ConfigError> {
    if d > MAX_DEGREE {
        return Err(ConfigError::global(format!("degree {d} exceeds the cap {MAX_DEGREE}")));
    }
    Ok(())
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let sections = split_lines(text)?;
    let group = build_group(&sections.group)?;
    let subgroup = build_subgroup(&group, &sections.subgroup)?;
    let parameters = match &sections.parameters {
        Some(entries) if !entries.is_empty() => Parameters::Exact(build_parameters(&group, entries)?),
        _ => Parameters::Random,
    };
    reject_unknown(&sections.run, &["seed", "tol", "degree", "out"], "run")?;
    let seed = parse_value(single(&sections.run, "seed")?, "seed")?.unwrap_or(DEFAULT_SEED);
    let tol: f64 = parse_value(single(&sections.run, "tol")?, "tolerance")?.unwrap_or(DEFAULT_TOL);
    if tol.is_nan() || tol <= 0.0 {
        return Err(ConfigError::global("tolerance must be positive"));
    }
    let degree_entry = single(&sections.run, "degree")?;
    let degree = parse_value(degree_entry, "degree")?.unwrap_or(DEFAULT_DEGREE);
    check_degree(degree).map_err(|mut e| {
        e.line = degree_entry.map(|d| d.line);
        e
    })?;
    let out = single(&sections.run, "out")?.map(|e| PathBuf::from(&e.value));
    Ok(RunConfig {
        group: Arc::new(group),
        subgroup,
        parameters,
        seed,
        tol,
        degree,
        out,
    })
}
