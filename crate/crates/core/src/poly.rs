//! Sparse multivariate polynomials with cyclotomic coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::exact::Cyclotomic;

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Cyclotomic) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Cyclotomic::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, unit_exponent(nvars, i), Cyclotomic::one())
    }

    pub fn monomial(nvars: usize, exps: Monomial, c: Cyclotomic) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    /// `sum_i coeffs[i] x_i`
    pub fn linear(coeffs: &[Cyclotomic]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(unit_exponent(n, i), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> Cyclotomic {
        self.terms.get(m).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<Cyclotomic> {
        match self.terms.len() {
            0 => Some(Cyclotomic::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Cyclotomic) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in other.terms() {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Cyclotomic::from_int(-1))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (m, a) in self.terms() {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `d/dx_i`
    pub fn deriv(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in self.terms() {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            out.add_term(m2, c * &Cyclotomic::from_int(m[i] as i64));
        }
        out
    }

    /// Directional derivative `sum_i y_i d/dx_i`.
    pub fn deriv_along(&self, y: &[Cyclotomic]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (i, yi) in y.iter().enumerate() {
            if !yi.is_zero() {
                out.add_assign(&self.deriv(i).scale(yi));
            }
        }
        out
    }

    /// Substitutes `x_i -> sum_j rows[i][j] x_j`.
    pub fn compose_linear(&self, rows: &[Vec<Cyclotomic>]) -> Self {
        let images: Vec<Poly> = rows.iter().map(|r| Poly::linear(r)).collect();
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars)]).collect();
        let mut out = Self::zero(self.nvars);
        for (m, c) in self.terms() {
            let mut t = Poly::constant(self.nvars, c.clone());
            for (i, &e) in m.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty").mul(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            out.add_assign(&t);
        }
        out
    }

    /// Exact quotient by a linear form whose first nonzero coefficient is 1,
    /// or `None` if it does not divide.
    pub fn div_linear(&self, alpha: &[Cyclotomic]) -> Option<Self> {
        let p = alpha.iter().position(|a| !a.is_zero())?;
        debug_assert!(alpha[p].is_one());
        // self = sum_k c_k x_p^k with c_k free of x_p; divide by x_p + beta
        let top = self.terms.keys().map(|m| m[p]).max().unwrap_or(0) as usize;
        let mut c: Vec<Poly> = vec![Poly::zero(self.nvars); top + 1];
        for (m, a) in self.terms() {
            let mut m2 = m.clone();
            let k = m2[p] as usize;
            m2[p] = 0;
            c[k].add_term(m2, a.clone());
        }
        let mut beta_coeffs = alpha.to_vec();
        beta_coeffs[p] = Cyclotomic::zero();
        let beta = Poly::linear(&beta_coeffs);
        // synthetic division from the top
        let mut q: Vec<Poly> = vec![Poly::zero(self.nvars); top.max(1)];
        let mut carry = Poly::zero(self.nvars);
        for k in (0..=top).rev() {
            let ck = c[k].sub(&beta.mul(&carry));
            if k == 0 {
                if !ck.is_zero() {
                    return None;
                }
            } else {
                q[k - 1] = ck.clone();
                carry = ck;
            }
        }
        let mut out = Self::zero(self.nvars);
        for (k, qk) in q.into_iter().enumerate() {
            for (m, a) in qk.terms {
                let mut m2 = m;
                m2[p] += k as u32;
                out.add_term(m2, a);
            }
        }
        Some(out)
    }

    pub fn eval(&self, point: &[Cyclotomic]) -> Cyclotomic {
        let mut s = Cyclotomic::zero();
        for (m, c) in self.terms() {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t = &t * &x.pow(e as i64).expect("nonnegative power");
                }
            }
            s += &t;
        }
        s
    }
}

pub(crate) fn unit_exponent(n: usize, i: usize) -> Monomial {
    let mut m = vec![0; n];
    m[i] = 1;
    m
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
