use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::field::{lcm, CyclotomicField, DEFAULT_CONDUCTOR_CAP};
use super::{ExactError, Rational};

/// An exact element of a cyclotomic field.
///
/// Elements of `Q` carry no field; every other element stores its
/// coordinates in the power basis `1, zeta, ..., zeta^(phi(N)-1)` of its own
/// field. Binary operations between different conductors are carried out in
/// `Q(zeta_lcm)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Option<Arc<CyclotomicField>>,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self {
            field: None,
            coeffs: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(super::rat(n, d))
    }

    /// `zeta_n^k` with `zeta_n = exp(2 pi i / n)`.
    pub fn root_of_unity(n: u32, k: i64) -> Result<Self, ExactError> {
        let field = CyclotomicField::new(n, DEFAULT_CONDUCTOR_CAP.max(n))?;
        Ok(Self::zeta_power(&field, k))
    }

    /// `zeta^k` in the given field.
    pub fn zeta_power(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let coeffs = field
            .power(k)
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        Self::in_field(field, coeffs)
    }

    /// Builds `sum_i coeffs[i] zeta^i` in `field`, for a coefficient vector of
    /// any length (reduced modulo `Phi_N`).
    pub fn from_power_coeffs(field: &Arc<CyclotomicField>, coeffs: &[Rational]) -> Self {
        let mut out = vec![Rational::zero(); field.degree()];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            accumulate_power(&mut out, field, i as i64, c);
        }
        Self::in_field(field, out)
    }

    fn in_field(field: &Arc<CyclotomicField>, coeffs: Vec<Rational>) -> Self {
        if field.degree() == 1 {
            Self::from_rational(coeffs.into_iter().next().unwrap_or_else(Rational::zero))
        } else {
            Self {
                field: Some(Arc::clone(field)),
                coeffs,
            }
        }
    }

    /// Conductor of the field the element is stored in (1 for rationals).
    pub fn conductor(&self) -> u32 {
        self.field.as_ref().map_or(1, |f| f.conductor())
    }

    pub fn field(&self) -> Option<&Arc<CyclotomicField>> {
        self.field.as_ref()
    }

    /// Power-basis coordinates.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in a field whose conductor is a multiple of
    /// the current one.
    pub fn lift_to(&self, target: &Arc<CyclotomicField>) -> Result<Self, ExactError> {
        let own = self.conductor();
        let tn = target.conductor();
        if !tn.is_multiple_of(own) {
            return Err(ExactError::IncompatibleConductor { from: own, to: tn });
        }
        if own == tn && self.field.is_some() {
            return Ok(self.clone());
        }
        Ok(Self::in_field(target, self.lifted_coeffs(target)))
    }

    fn lifted_coeffs(&self, target: &Arc<CyclotomicField>) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); target.degree()];
        match &self.field {
            None => {
                out[0] = self.coeffs[0].clone();
            }
            Some(f) => {
                let step = (target.conductor() / f.conductor()) as i64;
                for (i, c) in self.coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        accumulate_power(&mut out, target, i as i64 * step, c);
                    }
                }
            }
        }
        out
    }

    /// Brings two operands into a common field.
    fn align(
        &self,
        other: &Self,
        cap: u32,
    ) -> Result<(Option<Arc<CyclotomicField>>, Vec<Rational>, Vec<Rational>), ExactError> {
        match (&self.field, &other.field) {
            (None, None) => Ok((None, self.coeffs.clone(), other.coeffs.clone())),
            (Some(f), None) => Ok((Some(f.clone()), self.coeffs.clone(), other.lifted_coeffs(f))),
            (None, Some(f)) => Ok((Some(f.clone()), self.lifted_coeffs(f), other.coeffs.clone())),
            (Some(a), Some(b)) => {
                if a.conductor() == b.conductor() {
                    return Ok((Some(a.clone()), self.coeffs.clone(), other.coeffs.clone()));
                }
                let l = lcm(a.conductor(), b.conductor());
                if l > cap as u64 {
                    return Err(ExactError::ConductorOverflow {
                        requested: l.min(u32::MAX as u64) as u32,
                        cap,
                    });
                }
                let l = l as u32;
                let target = if l == a.conductor() {
                    a.clone()
                } else if l == b.conductor() {
                    b.clone()
                } else {
                    CyclotomicField::new(l, cap)?
                };
                let x = self.lifted_coeffs(&target);
                let y = other.lifted_coeffs(&target);
                Ok((Some(target), x, y))
            }
        }
    }

    fn build(field: Option<Arc<CyclotomicField>>, coeffs: Vec<Rational>) -> Self {
        match field {
            None => Self::from_rational(coeffs.into_iter().next().unwrap()),
            Some(f) => Self::in_field(&f, coeffs),
        }
    }

    pub fn try_add(&self, other: &Self, cap: u32) -> Result<Self, ExactError> {
        let (f, mut a, b) = self.align(other, cap)?;
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        Ok(Self::build(f, a))
    }

    pub fn try_sub(&self, other: &Self, cap: u32) -> Result<Self, ExactError> {
        let (f, mut a, b) = self.align(other, cap)?;
        for (x, y) in a.iter_mut().zip(b) {
            *x -= y;
        }
        Ok(Self::build(f, a))
    }

    pub fn try_mul(&self, other: &Self, cap: u32) -> Result<Self, ExactError> {
        // scalar fast paths
        if self.field.is_none() {
            return Ok(other.scale(&self.coeffs[0]));
        }
        if other.field.is_none() {
            return Ok(self.scale(&other.coeffs[0]));
        }
        let (f, a, b) = self.align(other, cap)?;
        let field = f.expect("both operands carry a field");
        let n = field.conductor() as usize;
        let mut acc = vec![Rational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                acc[(i + j) % n] += x * y;
            }
        }
        let mut out = vec![Rational::zero(); field.degree()];
        for (k, c) in acc.iter().enumerate() {
            if !c.is_zero() {
                accumulate_power(&mut out, &field, k as i64, c);
            }
        }
        Ok(Self::in_field(&field, out))
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let field = match &self.field {
            None => return Ok(Self::from_rational(self.coeffs[0].recip())),
            Some(f) => f.clone(),
        };
        // Solve (multiplication by self) * x = 1 over Q.
        let d = field.degree();
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); d + 1]; d];
        for j in 0..d {
            let col = self.mul_by_zeta_power(&field, j as i64);
            for i in 0..d {
                m[i][j] = col[i].clone();
            }
        }
        m[0][d] = Rational::one();
        let x = solve_augmented(m).ok_or(ExactError::DivisionByZero)?;
        Ok(Self::in_field(&field, x))
    }

    fn mul_by_zeta_power(&self, field: &Arc<CyclotomicField>, k: i64) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); field.degree()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                accumulate_power(&mut out, field, i as i64 + k, c);
            }
        }
        out
    }

    pub fn try_div(&self, other: &Self, cap: u32) -> Result<Self, ExactError> {
        self.try_mul(&other.inv()?, cap)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_div(other, DEFAULT_CONDUCTOR_CAP)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Complex conjugate, i.e. the Galois automorphism `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        match &self.field {
            None => self.clone(),
            Some(f) => {
                let mut out = vec![Rational::zero(); f.degree()];
                for (i, c) in self.coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        accumulate_power(&mut out, f, -(i as i64), c);
                    }
                }
                Self::in_field(f, out)
            }
        }
    }

    /// Floating-point value under the embedding `zeta_N -> exp(2 pi i / N)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            if i == 0 {
                re += v;
            } else {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / n;
                re += v * theta.cos();
                im += v * theta.sin();
            }
        }
        Complex64::new(re, im)
    }

    /// Re-reduces the stored coordinates; the stored form is already
    /// canonical, so this is the identity on values.
    pub fn reduce(&self) -> Self {
        match &self.field {
            None => self.clone(),
            Some(f) => Self::from_power_coeffs(f, &self.coeffs),
        }
    }

    /// Identical field and coordinates (stronger than `==`, which compares
    /// values across conductors).
    pub fn same_representation(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.coeffs == other.coeffs
    }
}

fn accumulate_power(out: &mut [Rational], field: &CyclotomicField, k: i64, c: &Rational) {
    for (slot, &p) in out.iter_mut().zip(field.power(k)) {
        match p {
            0 => {}
            1 => *slot += c,
            -1 => *slot -= c,
            _ => *slot += c * Rational::from_integer(BigInt::from(p)),
        }
    }
}

/// Gaussian elimination on an augmented `d x (d+1)` rational system.
fn solve_augmented(mut m: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let d = m.len();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..d {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=d {
                    let v = &m[col][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[d].clone()).collect())
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        match self.align(other, u32::MAX) {
            Ok((_, a, b)) => a == b,
            Err(_) => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclotomic {
    /// Rationals print as `a` or `a/b`; everything else in the literal
    /// syntax `c(N; a0, a1, ...)` accepted by the config parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", q);
        }
        write!(f, "c({};", self.conductor())?;
        let last = self
            .coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0);
        for (i, c) in self.coeffs[..=last].iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {}", c)?;
        }
        write!(f, ")")
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$try(rhs, DEFAULT_CONDUCTOR_CAP)
                    .expect("conductor of mixed operands exceeds the default cap")
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
        impl $tr<Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        let same = match (&self.field, &rhs.field) {
            (None, None) => true,
            (Some(a), Some(b)) => a.conductor() == b.conductor(),
            _ => false,
        };
        if same {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        let same = match (&self.field, &rhs.field) {
            (None, None) => true,
            (Some(a), Some(b)) => a.conductor() == b.conductor(),
            _ => false,
        };
        if same {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(mut self) -> Cyclotomic {
        for c in self.coeffs.iter_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -self.clone()
    }
}
