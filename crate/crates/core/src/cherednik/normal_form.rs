//! PBW normal forms `x^α e_λ w y^β` and the straightening rewrite
//! `y x = x y + x(y) + sum_H c_H(y, x) γ_H e_H`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use serde::Serialize;

use crate::exact::Cyclotomic;
use crate::group::{ExactParams, GroupAlgebraElement};
use crate::poly::{Monomial, Poly};
use crate::skew::{dunkl, Flavor, SkewContext, SkewOperator};

/// One generator of the algebra.
#[derive(Debug, Clone, PartialEq)]
pub enum Letter {
    /// A covector, in coordinates.
    X(Vec<Cyclotomic>),
    /// A vector, in coordinates.
    Y(Vec<Cyclotomic>),
    /// A group element of the coefficient group.
    G(usize),
    /// A lattice element `e_λ` (flavor B).
    E(usize),
}

/// A product of letters, read left to right.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AlgebraWord {
    pub letters: Vec<Letter>,
}

impl AlgebraWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }
}

/// `(x-exponent, lattice node, group element, y-exponent)`
pub type NfKey = (Monomial, usize, usize, Monomial);

#[derive(Debug, Clone, PartialEq, Default)]
pub struct NormalForm {
    terms: BTreeMap<NfKey, Cyclotomic>,
}

impl NormalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: NfKey) -> Self {
        let mut out = Self::zero();
        out.add_term(key, Cyclotomic::one());
        out
    }

    pub fn add_term(&mut self, key: NfKey, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NfKey, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &NfKey) -> Cyclotomic {
        self.terms.get(key).cloned().unwrap_or_else(Cyclotomic::zero)
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero();
        for (k, a) in self.terms() {
            out.add_term(k.clone(), a * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Cyclotomic::from_int(-1)))
    }

    /// Filtration degree `max |α| + |β|`.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(a, _, _, b)| a.iter().sum::<u32>() + b.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, l, w, b), c)| {
                let mut s = format!("({c})");
                for (i, &e) in a.iter().enumerate() {
                    if e > 0 {
                        s.push_str(&format!("*x{i}^{e}"));
                    }
                }
                if *l != 0 {
                    s.push_str(&format!("*e[{l}]"));
                }
                if *w != 0 {
                    s.push_str(&format!("*g[{w}]"));
                }
                for (i, &e) in b.iter().enumerate() {
                    if e > 0 {
                        s.push_str(&format!("*y{i}^{e}"));
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

/// A term of `[y_i, x^α]`: `(x-exponent, lattice node, group element, coeff)`.
type CommTerm = (Monomial, usize, usize, Cyclotomic);

/// The algebra `A(W_0, W)` (flavor A) or `A(L, W)` (flavor B) at fixed
/// parameters, with memoized commutators `[y_i, x^α]`.
pub struct CherednikAlgebra {
    ctx: SkewContext,
    k: ExactParams,
    /// `(lattice node of e_H, γ_H, c_H(i, j))` per pole hyperplane.
    relation: Vec<(usize, GroupAlgebraElement, Vec<Vec<Cyclotomic>>)>,
    comm_cache: RefCell<HashMap<(usize, Monomial), Rc<Vec<CommTerm>>>>,
    compose_cache: RefCell<HashMap<(usize, Monomial), Rc<Poly>>>,
}

impl CherednikAlgebra {
    pub fn new(ctx: SkewContext, k: ExactParams) -> Self {
        let g = ctx.group();
        let n = ctx.dim();
        let relation = ctx
            .hyperplanes()
            .iter()
            .map(|&h| {
                let hyp = g.hyperplane(h);
                let norm = hyp.eval(&hyp.v).inv().expect("alpha_H(v_H) != 0");
                // c_H(y_i, x_j) = alpha_H(e_i) x_j(v_H) / alpha_H(v_H)
                let c: Vec<Vec<Cyclotomic>> = (0..n)
                    .map(|i| (0..n).map(|j| &(&hyp.alpha[i] * &hyp.v[j]) * &norm).collect())
                    .collect();
                (ctx.e_h(h), g.gamma_for(h, &k), c)
            })
            .collect();
        Self {
            ctx,
            k,
            relation,
            comm_cache: RefCell::new(HashMap::new()),
            compose_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn context(&self) -> &SkewContext {
        &self.ctx
    }

    pub fn params(&self) -> &ExactParams {
        &self.k
    }

    pub fn one(&self) -> NormalForm {
        let n = self.ctx.dim();
        NormalForm::basis((vec![0; n], self.ctx.lattice().bottom(), 0, vec![0; n]))
    }

    pub fn letter(&self, l: &Letter) -> NormalForm {
        self.apply_letter(l, &self.one())
    }

    /// `x^α∘w^-1` as a polynomial.
    fn compose(&self, w: usize, alpha: &Monomial) -> Rc<Poly> {
        let key = (w, alpha.clone());
        if let Some(p) = self.compose_cache.borrow().get(&key) {
            return Rc::clone(p);
        }
        let g = self.ctx.group();
        let winv = g.element(g.inv(w));
        let rows: Vec<Vec<Cyclotomic>> = (0..winv.rows()).map(|i| winv.row_vec(i)).collect();
        let p = Rc::new(
            Poly::monomial(self.ctx.dim(), alpha.clone(), Cyclotomic::one()).compose_linear(&rows),
        );
        self.compose_cache.borrow_mut().insert(key, Rc::clone(&p));
        p
    }

    /// `[y_i, x^α]` in normal form (no `y` letters occur).
    fn commutator_with_monomial(&self, i: usize, alpha: &Monomial) -> Rc<Vec<CommTerm>> {
        let key = (i, alpha.clone());
        if let Some(v) = self.comm_cache.borrow().get(&key) {
            return Rc::clone(v);
        }
        let n = self.ctx.dim();
        let bottom = self.ctx.lattice().bottom();
        let mut acc: BTreeMap<(Monomial, usize, usize), Cyclotomic> = BTreeMap::new();
        let mut push = |m: Monomial, l: usize, w: usize, c: Cyclotomic| {
            if c.is_zero() {
                return;
            }
            let e = acc.entry((m, l, w)).or_insert_with(Cyclotomic::zero);
            *e += &c;
        };
        if let Some(j) = alpha.iter().position(|&e| e > 0) {
            let mut rest = alpha.clone();
            rest[j] -= 1;
            // [y_i, x_j] x^rest
            if i == j {
                push(rest.clone(), bottom, 0, Cyclotomic::one());
            }
            for (node, gamma, c) in &self.relation {
                let cij = &c[i][j];
                if cij.is_zero() {
                    continue;
                }
                for (w, gw) in gamma.terms() {
                    let coeff = cij * gw;
                    for (m, pc) in self.compose(w, &rest).terms() {
                        push(m.clone(), *node, w, &coeff * pc);
                    }
                }
            }
            // x_j [y_i, x^rest]
            for (m, l, w, c) in self.commutator_with_monomial(i, &rest).iter() {
                let mut m2 = m.clone();
                m2[j] += 1;
                push(m2, *l, *w, c.clone());
            }
        }
        debug_assert!(acc.keys().all(|(m, _, _)| m.len() == n));
        let v: Rc<Vec<CommTerm>> = Rc::new(
            acc.into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((m, l, w), c)| (m, l, w, c))
                .collect(),
        );
        self.comm_cache.borrow_mut().insert(key, Rc::clone(&v));
        v
    }

    fn left_x(&self, j: usize, nf: &NormalForm) -> NormalForm {
        let mut out = NormalForm::zero();
        for ((a, l, w, b), c) in nf.terms() {
            let mut a2 = a.clone();
            a2[j] += 1;
            out.add_term((a2, *l, *w, b.clone()), c.clone());
        }
        out
    }

    fn left_e(&self, node: usize, nf: &NormalForm) -> NormalForm {
        let lat = self.ctx.lattice();
        let mut out = NormalForm::zero();
        for ((a, l, w, b), c) in nf.terms() {
            out.add_term((a.clone(), lat.join(node, *l), *w, b.clone()), c.clone());
        }
        out
    }

    fn left_g(&self, g: usize, nf: &NormalForm) -> NormalForm {
        let grp = self.ctx.group();
        let lat = self.ctx.lattice();
        let mut out = NormalForm::zero();
        for ((a, l, w, b), c) in nf.terms() {
            let wl = lat.act(g, *l);
            let gw = grp.mul(g, *w);
            for (m, pc) in self.compose(g, a).terms() {
                out.add_term((m.clone(), wl, gw, b.clone()), c * pc);
            }
        }
        out
    }

    fn left_y(&self, i: usize, nf: &NormalForm) -> NormalForm {
        let grp = self.ctx.group();
        let lat = self.ctx.lattice();
        let n = self.ctx.dim();
        let mut out = NormalForm::zero();
        for ((a, l, u, b), c) in nf.terms() {
            // x^α y_i e_λ u y^β = x^α e_λ u (u^-1 y_i) y^β
            let uinv = grp.element(grp.inv(*u));
            for j in 0..n {
                let coeff = &uinv[(j, i)];
                if coeff.is_zero() {
                    continue;
                }
                let mut b2 = b.clone();
                b2[j] += 1;
                out.add_term((a.clone(), *l, *u, b2), c * coeff);
            }
            // [y_i, x^α] e_λ u y^β
            for (m, node, v, cc) in self.commutator_with_monomial(i, a).iter() {
                let key = (m.clone(), lat.join(*node, lat.act(*v, *l)), grp.mul(*v, *u), b.clone());
                out.add_term(key, c * cc);
            }
        }
        out
    }

    /// Left multiplication by one letter.
    pub fn apply_letter(&self, letter: &Letter, nf: &NormalForm) -> NormalForm {
        let mut out = NormalForm::zero();
        match letter {
            Letter::X(x) => {
                for (j, xj) in x.iter().enumerate() {
                    if !xj.is_zero() {
                        out = out.add(&self.left_x(j, nf).scale(xj));
                    }
                }
            }
            Letter::Y(y) => {
                for (i, yi) in y.iter().enumerate() {
                    if !yi.is_zero() {
                        out = out.add(&self.left_y(i, nf).scale(yi));
                    }
                }
            }
            Letter::G(w) => out = self.left_g(*w, nf),
            Letter::E(node) => {
                out = match self.ctx.flavor() {
                    Flavor::A => nf.clone(),
                    Flavor::B => self.left_e(*node, nf),
                }
            }
        }
        out
    }

    /// Normal form of a word, rewriting from the right end.
    pub fn straighten(&self, word: &AlgebraWord) -> NormalForm {
        word.letters
            .iter()
            .rev()
            .fold(self.one(), |acc, l| self.apply_letter(l, &acc))
    }

    /// Product of normal forms: letters of each left term act on `b`.
    pub fn multiply(&self, a: &NormalForm, b: &NormalForm) -> NormalForm {
        let mut out = NormalForm::zero();
        let n = self.ctx.dim();
        for ((alpha, l, w, beta), c) in a.terms() {
            let mut r = b.clone();
            for i in (0..n).rev() {
                for _ in 0..beta[i] {
                    r = self.left_y(i, &r);
                }
            }
            r = self.left_g(*w, &r);
            if self.ctx.flavor() == Flavor::B {
                r = self.left_e(*l, &r);
            }
            for j in 0..n {
                for _ in 0..alpha[j] {
                    r = self.left_x(j, &r);
                }
            }
            out = out.add(&r.scale(c));
        }
        out
    }

    /// Generators used by consistency checks: basis `y_i`, basis `x_j`,
    /// generators of the coefficient group and (flavor B) the atoms `e_{W_H}`.
    pub fn generator_letters(&self) -> Vec<Letter> {
        let g = self.ctx.group();
        let n = self.ctx.dim();
        let mut letters = Vec::new();
        for i in 0..n {
            letters.push(Letter::Y(g.basis_vector(i)));
        }
        for j in 0..n {
            letters.push(Letter::X(g.basis_vector(j)));
        }
        for w in g.greedy_generators(self.ctx.coefficient_group()) {
            letters.push(Letter::G(w));
        }
        if self.ctx.flavor() == Flavor::B {
            for h in 0..g.hyperplanes().len() {
                letters.push(Letter::E(self.ctx.lattice().atom(h)));
            }
        }
        letters
    }

    /// Image of a normal form under `x -> x`, `y -> T_y`, `w -> w`, `e -> e`.
    pub fn dunkl_image(&self, nf: &NormalForm) -> SkewOperator {
        let ctx = &self.ctx;
        let g = ctx.group();
        let n = ctx.dim();
        let t: Vec<SkewOperator> = (0..n).map(|i| dunkl(ctx, &g.basis_vector(i), &self.k)).collect();
        let mut out = SkewOperator::zero(ctx);
        for ((alpha, l, w, beta), c) in nf.terms() {
            let mut x = Poly::constant(n, c.clone());
            for j in 0..n {
                x = x.mul(&Poly::var(n, j).pow(alpha[j]));
            }
            let mut op = SkewOperator::polynomial(ctx, x);
            if ctx.flavor() == Flavor::B && *l != ctx.lattice().bottom() {
                op = op.mul(&SkewOperator::lattice_element(ctx, *l).expect("flavor B"), ctx);
            }
            op = op.mul(&SkewOperator::group_element(ctx, *w).expect("coefficient group"), ctx);
            for i in 0..n {
                for _ in 0..beta[i] {
                    op = op.mul(&t[i], ctx);
                }
            }
            out = out.add(&op, ctx);
        }
        out
    }

    /// Runs all critical-triple checks on generator letters.
    pub fn confluence_check(&self) -> ConfluenceReport {
        let letters = self.generator_letters();
        let nfs: Vec<NormalForm> = letters.iter().map(|l| self.letter(l)).collect();
        let names: Vec<String> = letters.iter().map(letter_name).collect();
        let mut report = ConfluenceReport::default();
        for (ia, a) in nfs.iter().enumerate() {
            for (ib, b) in nfs.iter().enumerate() {
                let ab = self.multiply(a, b);
                for (ic, c) in nfs.iter().enumerate() {
                    report.triples_checked += 1;
                    let left = self.multiply(&ab, c);
                    let right = self.multiply(a, &self.multiply(b, c));
                    if left != right {
                        report
                            .failures
                            .push(format!("({} {}) {}", names[ia], names[ib], names[ic]));
                    }
                }
            }
        }
        // y y' x = y' y x
        let n = self.ctx.dim();
        let g = self.ctx.group();
        for i in 0..n {
            for j in i + 1..n {
                for l in 0..n {
                    report.triples_checked += 1;
                    let x = self.letter(&Letter::X(g.basis_vector(l)));
                    let lhs = self.left_y(i, &self.left_y(j, &x));
                    let rhs = self.left_y(j, &self.left_y(i, &x));
                    if lhs != rhs {
                        report.failures.push(format!("[y{i}, y{j}] x{l}"));
                    }
                }
            }
        }
        report.passed = report.failures.is_empty();
        report
    }

    /// `Φ(a b) = Φ(a) Φ(b)` for all pairs of generator letters, where `Φ` is
    /// the Dunkl embedding.
    pub fn embedding_check(&self) -> ConfluenceReport {
        let letters = self.generator_letters();
        let mut report = ConfluenceReport::default();
        for a in &letters {
            let na = self.letter(a);
            let pa = self.dunkl_image(&na);
            for b in &letters {
                report.triples_checked += 1;
                let nb = self.letter(b);
                let lhs = self.dunkl_image(&self.multiply(&na, &nb));
                let rhs = pa.mul(&self.dunkl_image(&nb), &self.ctx);
                if lhs != rhs {
                    report.failures.push(format!("{} {}", letter_name(a), letter_name(b)));
                }
            }
        }
        report.passed = report.failures.is_empty();
        report
    }

    /// Number of PBW monomials `x^α e_λ w y^β` with `|α| + |β| = d`.
    pub fn pbw_count(&self, d: u32) -> usize {
        let n = self.ctx.dim();
        let lattice_factor = match self.ctx.flavor() {
            Flavor::A => 1,
            Flavor::B => self.ctx.lattice().len(),
        };
        let per = (0..=d)
            .map(|a| monomials(n, a).len() * monomials(n, d - a).len())
            .sum::<usize>();
        per * lattice_factor * self.ctx.coefficient_group().len()
    }

    /// `[y_i, x^α]` with the group/lattice part applied to nothing.
    pub fn commutator_terms(&self, i: usize, alpha: &Monomial) -> Vec<(Monomial, usize, usize, Cyclotomic)> {
        self.commutator_with_monomial(i, alpha).as_ref().clone()
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ConfluenceReport {
    pub triples_checked: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

fn letter_name(l: &Letter) -> String {
    let coords = |v: &[Cyclotomic]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
    match l {
        Letter::X(x) => format!("x({})", coords(x)),
        Letter::Y(y) => format!("y({})", coords(y)),
        Letter::G(w) => format!("g{w}"),
        Letter::E(n) => format!("e{n}"),
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in
/// lexicographically decreasing order.
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::group::presets::preset;
    use crate::lattice::{FullSubgroupLattice, DEFAULT_LATTICE_CAP};

    fn algebra(name: &str, flavor: Flavor, k: Option<ExactParams>) -> CherednikAlgebra {
        let g = Arc::new(preset(name).unwrap());
        let l = Arc::new(FullSubgroupLattice::enumerate(&g, DEFAULT_LATTICE_CAP).unwrap());
        let k = k.unwrap_or_else(|| ExactParams::random_rational(&g, &mut ChaCha8Rng::seed_from_u64(9)));
        let ctx = match flavor {
            Flavor::A => SkewContext::flavor_a(g, l.clone(), l.top()),
            Flavor::B => SkewContext::flavor_b(g, l),
        };
        CherednikAlgebra::new(ctx, k)
    }

    #[test]
    fn ordered_word_is_unchanged() {
        let a = algebra("S3", Flavor::A, None);
        let g = a.context().group();
        let nf = a.straighten(&AlgebraWord::new(vec![
            Letter::X(g.basis_vector(0)),
            Letter::Y(g.basis_vector(1)),
        ]));
        assert_eq!(nf, NormalForm::basis((vec![1, 0], 0, 0, vec![0, 1])));
    }

    #[test]
    fn rank_one_relation() {
        let g = preset("G(2,1,1)").unwrap();
        let c = Cyclotomic::from_ratio(3, 7);
        let k = ExactParams::new(&g, vec![vec![Cyclotomic::zero(), c.clone()]]).unwrap();
        let s = g.hyperplane(0).distinguished;
        for flavor in [Flavor::A, Flavor::B] {
            let a = algebra("G(2,1,1)", flavor, Some(k.clone()));
            let one = vec![Cyclotomic::one()];
            let nf = a.straighten(&AlgebraWord::new(vec![Letter::Y(one.clone()), Letter::X(one)]));
            let top = a.context().lattice().top();
            let node = if flavor == Flavor::B { top } else { 0 };
            let mut expected = NormalForm::basis((vec![1], 0, 0, vec![1]));
            expected.add_term((vec![0], 0, 0, vec![0]), Cyclotomic::one());
            expected.add_term((vec![0], node, s, vec![0]), &c * &Cyclotomic::from_int(2));
            assert_eq!(nf, expected, "{flavor:?}");
        }
    }

    #[test]
    fn monomial_listing() {
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials(3, 4).len(), 15);
    }

    #[test]
    fn confluence_and_embedding_small_cases() {
        for flavor in [Flavor::A, Flavor::B] {
            let a = algebra("S3", flavor, None);
            let r = a.confluence_check();
            assert!(r.passed, "{:?}", r.failures);
            let e = a.embedding_check();
            assert!(e.passed, "{:?}", e.failures);
        }
    }

    #[test]
    fn zero_parameters_give_weyl_algebra() {
        let g = preset("B2").unwrap();
        let a = algebra("B2", Flavor::B, Some(ExactParams::zero(&g)));
        let nf = a.straighten(&AlgebraWord::new(vec![
            Letter::Y(g.basis_vector(0)),
            Letter::X(g.basis_vector(0)),
        ]));
        let mut expected = NormalForm::basis((vec![1, 0], 0, 0, vec![1, 0]));
        expected.add_term((vec![0, 0], 0, 0, vec![0, 0]), Cyclotomic::one());
        assert_eq!(nf, expected);
        assert!(a.confluence_check().passed);
    }

    #[test]
    fn order_three_relation_matches_dunkl_operators() {
        for flavor in [Flavor::A, Flavor::B] {
            let a = algebra("G4", flavor, None);
            let e = a.embedding_check();
            assert!(e.passed, "{flavor:?} {:?}", e.failures);
        }
    }
}
