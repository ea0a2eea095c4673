//! Exact ring arithmetic: integer Laurent polynomials, prime fields and ring
//! homomorphisms between them.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("variable count mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("negative power of a non-unit")]
    NotAUnit,
    #[error("expected a single monomial, found {0} terms")]
    NotAMonomial(usize),
    #[error("variable index {0} out of range")]
    BadVariable(usize),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Commutative ring interface used by brackets and state sums.
///
/// Elements carry their own context (variable count, modulus), so constants
/// are produced "like" an existing element.
pub trait Ring: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: &BigInt) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, if the element is a unit.
    fn inverse(&self) -> Option<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    /// Integer power; negative exponents require a unit.
    fn pow_i(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }
}

/// Exponents of a monomial; ordered lexicographically.
pub type ExponentVector = Box<[i32]>;

/// Sparse integer Laurent polynomial in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(c, &vec![0; nvars])
    }

    pub fn monomial(c: impl Into<BigInt>, exps: &[i32]) -> Self {
        let mut p = Self::zero(exps.len());
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(exps.into(), c);
        }
        p
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(1, &e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (&e[..], c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<(), LaurentError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(LaurentError::ArityMismatch(self.nvars, other.nvars))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        let mut buf = vec![0; self.nvars];
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                for (b, (x, y)) in buf.iter_mut().zip(e1.iter().zip(e2.iter())) {
                    *b = x + y;
                }
                out.add_term(&buf, &(c1 * c2));
            }
        }
        Ok(out)
    }

    fn add_term(&mut self, e: &[i32], c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(e);
                }
            }
            None => {
                self.terms.insert(e.into(), c.clone());
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    /// Single term with coefficient ±1.
    pub fn is_unit_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().is_some_and(|c| c.abs().is_one())
    }

    pub fn try_inverse(&self) -> Result<Self, LaurentError> {
        if !self.is_unit_monomial() {
            return Err(LaurentError::NotAUnit);
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let inv: Vec<i32> = e.iter().map(|x| -x).collect();
        Ok(Self::monomial(c.clone(), &inv))
    }

    pub fn pow(&self, k: i64) -> Result<Self, LaurentError> {
        if k < 0 && !self.is_unit_monomial() {
            return Err(LaurentError::NotAUnit);
        }
        Ok(Ring::pow_i(self, k).expect("unit checked"))
    }

    /// The single term of a monomial.
    pub fn as_monomial(&self) -> Result<(&[i32], &BigInt), LaurentError> {
        if self.terms.len() != 1 {
            return Err(LaurentError::NotAMonomial(self.terms.len()));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Ok((e, c))
    }

    /// Exponent of variable `i` (zero-based) in a monomial.
    pub fn degree_in(&self, i: usize) -> Result<i32, LaurentError> {
        if i >= self.nvars {
            return Err(LaurentError::BadVariable(i));
        }
        Ok(self.as_monomial()?.0[i])
    }

    /// Sum of all exponents of a monomial.
    pub fn total_degree(&self) -> Result<i32, LaurentError> {
        Ok(self.as_monomial()?.0.iter().sum())
    }

    /// Rewrite the exponent vector of every term through `f`.
    pub fn map_exponents(&self, f: impl Fn(&[i32]) -> Vec<i32>) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(&f(e), c);
        }
        out
    }

    /// Evaluate at the all-ones point (the augmentation).
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Parse a polynomial in `nvars` variables.
    ///
    /// Accepts the canonical text form (`-3*x1^-1*x5^1 + 2`) as well as
    /// looser spellings such as `-x_{1}^{-3}x_{5}^{3} - 3x_1x_5^{-1}`.
    pub fn parse(s: &str, nvars: usize) -> Result<Self, LaurentError> {
        let err = |m: &str| LaurentError::Parse(format!("{m} in {s:?}"));
        let cleaned: Vec<char> =
            s.chars().filter(|c| !matches!(c, '_' | '{' | '}' | '*' | ' ' | '\t' | '\n')).collect();
        if cleaned.is_empty() {
            return Err(err("empty input"));
        }
        let mut out = Self::zero(nvars);
        let mut i = 0;
        let read_int = |i: &mut usize| -> Option<i64> {
            let start = *i;
            if *i < cleaned.len() && (cleaned[*i] == '-' || cleaned[*i] == '+') {
                *i += 1;
            }
            let digits = *i;
            while *i < cleaned.len() && cleaned[*i].is_ascii_digit() {
                *i += 1;
            }
            if *i == digits {
                *i = start;
                return None;
            }
            cleaned[start..*i].iter().collect::<String>().parse().ok()
        };
        while i < cleaned.len() {
            let mut sign = BigInt::one();
            let mut saw_sign = false;
            while i < cleaned.len() && (cleaned[i] == '+' || cleaned[i] == '-') {
                if cleaned[i] == '-' {
                    sign = -sign;
                }
                saw_sign = true;
                i += 1;
            }
            if i > 0 && !saw_sign {
                return Err(err("missing operator between terms"));
            }
            let start = i;
            while i < cleaned.len() && cleaned[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: BigInt = if i > start {
                cleaned[start..i].iter().collect::<String>().parse().map_err(|_| err("bad coefficient"))?
            } else {
                BigInt::one()
            };
            let mut exps = vec![0i32; nvars];
            let mut any_factor = i > start;
            while i < cleaned.len() && cleaned[i] == 'x' {
                i += 1;
                let vs = i;
                while i < cleaned.len() && cleaned[i].is_ascii_digit() {
                    i += 1;
                }
                let idx: usize =
                    cleaned[vs..i].iter().collect::<String>().parse().map_err(|_| err("bad variable"))?;
                if idx == 0 || idx > nvars {
                    return Err(LaurentError::BadVariable(idx));
                }
                let mut e = 1i64;
                if i < cleaned.len() && cleaned[i] == '^' {
                    i += 1;
                    e = read_int(&mut i).ok_or_else(|| err("bad exponent"))?;
                }
                exps[idx - 1] += e as i32;
                any_factor = true;
            }
            if !any_factor {
                return Err(err("empty term"));
            }
            out.add_term(&exps, &(sign * coeff));
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, x) in e.iter().enumerate() {
                if *x != 0 {
                    write!(f, "*x{}^{}", i + 1, x)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.nvars, self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        self.try_add(&-rhs).expect("variable count mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-BigInt::one())
    }
}

impl Ring for LaurentPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        Self::one(self.nvars)
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        Self::constant(self.nvars, n.clone())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn inverse(&self) -> Option<Self> {
        self.try_inverse().ok()
    }
}

/// Element of the prime field Z/pZ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zp {
    value: u64,
    modulus: u64,
}

impl Zp {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Zp { value: value.rem_euclid(modulus as i64) as u64, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl fmt::Display for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Ring for Zp {
    fn zero_like(&self) -> Self {
        Zp { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Zp { value: 1 % self.modulus, modulus: self.modulus }
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        let v = n.mod_floor(&BigInt::from(self.modulus)).to_u64().unwrap();
        Zp { value: v, modulus: self.modulus }
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Zp { value: (self.value + other.value) % self.modulus, modulus: self.modulus }
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let v = (self.value as u128 * other.value as u128 % self.modulus as u128) as u64;
        Zp { value: v, modulus: self.modulus }
    }
    fn neg(&self) -> Self {
        Zp { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn inverse(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let g = BigInt::from(self.value).extended_gcd(&BigInt::from(self.modulus));
        if !g.gcd.is_one() {
            return None;
        }
        Some(self.from_int_like(&g.x))
    }
}

/// Ring homomorphism out of a Laurent polynomial ring, given by the images of
/// the variables (which must be units of the target ring).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHom<R: Ring> {
    images: Vec<R>,
    inverses: Vec<R>,
}

impl<R: Ring> RingHom<R> {
    pub fn new(images: Vec<R>) -> Result<Self, LaurentError> {
        let inverses = images.iter().map(|r| r.inverse().ok_or(LaurentError::NotAUnit)).collect::<Result<_, _>>()?;
        Ok(RingHom { images, inverses })
    }

    pub fn images(&self) -> &[R] {
        &self.images
    }

    pub fn apply(&self, p: &LaurentPoly) -> Result<R, LaurentError> {
        if p.nvars() != self.images.len() {
            return Err(LaurentError::ArityMismatch(p.nvars(), self.images.len()));
        }
        let one = self.images.first().map(|r| r.one_like()).ok_or(LaurentError::ArityMismatch(p.nvars(), 0))?;
        let mut acc = one.zero_like();
        for (e, c) in p.terms() {
            let mut t = one.from_int_like(c);
            for (i, &k) in e.iter().enumerate() {
                let base = if k < 0 { &self.inverses[i] } else { &self.images[i] };
                t = t.mul(&base.pow_i(k.unsigned_abs() as i64).unwrap());
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

impl RingHom<LaurentPoly> {
    /// The identity on `nvars` variables.
    pub fn identity(nvars: usize) -> Self {
        Self::new((0..nvars).map(|i| LaurentPoly::var(nvars, i)).collect()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 5).unwrap()
    }

    fn delta() -> LaurentPoly {
        p5("-x1*x5^-1 - x1^-1*x5")
    }

    #[test]
    fn additive_inverse() {
        assert!((&p5("x1x5^-1") + &p5("-x1x5^-1")).is_zero());
    }

    #[test]
    fn delta_doubled() {
        assert_eq!(&delta() + &delta(), p5("-2x1x5^-1 - 2x1^-1x5"));
    }

    #[test]
    fn delta_cubed() {
        assert_eq!(delta().pow(3).unwrap(), p5("-x1^-3x5^3 - 3x1^-1x5 - 3x1x5^-1 - x1^3x5^-3"));
    }

    #[test]
    fn units_and_powers() {
        let w = p5("-x1^2x5^-1");
        assert_eq!(w.pow(-1).unwrap(), p5("-x1^-2x5"));
        assert_eq!(&w * &w.pow(-1).unwrap(), LaurentPoly::one(5));
        assert_eq!(delta().pow(0).unwrap(), LaurentPoly::one(5));
        assert_eq!(p5("x2").pow(3).unwrap(), p5("x2^3"));
        assert_eq!(delta().pow(-1), Err(LaurentError::NotAUnit));
    }

    #[test]
    fn arity_mismatch() {
        let a = LaurentPoly::one(5);
        let b = LaurentPoly::one(1);
        assert_eq!(a.try_add(&b), Err(LaurentError::ArityMismatch(5, 1)));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(delta().to_string(), "-1*x1^-1*x5^1 + -1*x1^1*x5^-1");
        assert_eq!(LaurentPoly::zero(5).to_string(), "0");
        assert_eq!(LaurentPoly::constant(5, 7).to_string(), "7");
        assert_eq!(p5(&delta().to_string()), delta());
    }

    #[test]
    fn degrees() {
        assert_eq!(p5("x1^-3x2^2x3^2x5").degree_in(1), Ok(2));
        assert_eq!(LaurentPoly::one(5).degree_in(4), Ok(0));
        assert_eq!(p5("x1^2x5^-1").total_degree(), Ok(1));
        assert_eq!(delta().degree_in(0), Err(LaurentError::NotAMonomial(2)));
    }

    #[test]
    fn homs() {
        let x = LaurentPoly::var(1, 0);
        let xi = x.pow(-1).unwrap();
        let f = RingHom::new(vec![x.clone(), x.clone(), x.clone(), x, xi]).unwrap();
        assert_eq!(f.apply(&delta()).unwrap(), LaurentPoly::parse("-x1^2 - x1^-2", 1).unwrap());
        let aug = RingHom::new(vec![LaurentPoly::one(0); 5]).unwrap();
        assert_eq!(aug.apply(&delta()).unwrap(), LaurentPoly::constant(0, -2));
        assert_eq!(RingHom::identity(5).apply(&delta()).unwrap(), delta());
    }

    #[test]
    fn prime_field() {
        let a = Zp::new(3, 7);
        assert_eq!(a.mul(&a.inverse().unwrap()), a.one_like());
        assert_eq!(Zp::new(-1, 7).value(), 6);
        assert_eq!(Zp::new(0, 7).inverse(), None);
        assert_eq!(a.pow_i(-2).unwrap(), Zp::new(4, 7));
    }
}
