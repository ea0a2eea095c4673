//! Tribracket brackets over the two-element tribracket: axiom verification,
//! the five universal brackets, type classification, factorization through
//! the universal brackets, the bar transform and finite-field enumeration.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::laurent::{LaurentPoly, Ring, RingHom, Zp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error("{tensor}[{index}] is not a unit")]
    NonUnit { tensor: char, index: usize },
    #[error("bracket axioms fail: {0:?}")]
    Axioms(Vec<AxiomFailure>),
    #[error("universal bracket index {0} is not in 1..=5")]
    BadIndex(usize),
    #[error("no universal bracket reproduces the input")]
    NoFactorization,
    #[error("brute-force enumeration over Z/{0} is too large")]
    TooLarge(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the mirror hypothesis does not hold")]
    MirrorHypothesis,
}

/// Tensor index of `(a, b, c)`.
pub const fn idx(a: usize, b: usize, c: usize) -> usize {
    a << 2 | b << 1 | c
}

/// The two-element tribracket `[a, b, c] = a + b - c mod 2`.
pub const fn tri(a: usize, b: usize, c: usize) -> usize {
    a ^ b ^ c
}

/// A single failed instance of a bracket axiom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomFailure {
    /// Circle value at this triple differs from the one at `(0, 0, 0)`.
    Delta([usize; 3]),
    /// Distinguished element at `(a, b, b)` differs from the one at `(0, 0, 0)`.
    W([usize; 2]),
    /// One of the five quadruple conditions, named `'a'..='e'`.
    Quad(char, [usize; 4]),
}

/// Unverified tensor data: entries plus circle value and distinguished element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BracketTensors<R> {
    pub a: [R; 8],
    pub b: [R; 8],
    pub delta: R,
    pub w: R,
}

/// A verified tribracket bracket.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bracket<R>(BracketTensors<R>);

/// Outcome of checking every bracket axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport<R> {
    pub delta: R,
    pub w: R,
    pub failures: Vec<AxiomFailure>,
}

fn inv<R: Ring>(x: &R) -> R {
    x.inverse().expect("entries are units")
}

fn check_units<R: Ring>(a: &[R; 8], b: &[R; 8]) -> Result<(), BracketError> {
    for (t, name) in [(a, 'A'), (b, 'B')] {
        if let Some(i) = t.iter().position(|x| !x.is_unit()) {
            return Err(BracketError::NonUnit { tensor: name, index: i });
        }
    }
    Ok(())
}

/// Circle value forced at one triple: `-A B^-1 - A^-1 B`.
fn delta_at<R: Ring>(a: &[R; 8], b: &[R; 8], i: usize) -> R {
    a[i].mul(&inv(&b[i])).add(&inv(&a[i]).mul(&b[i])).neg()
}

/// Distinguished element forced at `(a, b, b)`: `-A^2 B^-1`.
fn w_at<R: Ring>(a: &[R; 8], b: &[R; 8], i: usize) -> R {
    a[i].mul(&a[i]).mul(&inv(&b[i])).neg()
}

/// Check conditions 1, 2 and the five quadruple conditions over all of X_2.
pub fn verify_axioms<R: Ring>(a: &[R; 8], b: &[R; 8]) -> Result<AxiomReport<R>, BracketError> {
    check_units(a, b)?;
    let mut failures = vec![];
    let delta = delta_at(a, b, 0);
    for i in 1..8 {
        if delta_at(a, b, i) != delta {
            failures.push(AxiomFailure::Delta([i >> 2, i >> 1 & 1, i & 1]));
        }
    }
    let w = w_at(a, b, 0);
    for (x, y) in [(0, 1), (1, 0), (1, 1)] {
        if w_at(a, b, idx(x, y, y)) != w {
            failures.push(AxiomFailure::W([x, y]));
        }
    }
    for q in quadruples() {
        for name in ['a', 'b', 'c', 'd', 'e'] {
            if !quad_condition(a, b, &delta, name, q) {
                failures.push(AxiomFailure::Quad(name, q));
            }
        }
    }
    Ok(AxiomReport { delta, w, failures })
}

fn quadruples() -> impl Iterator<Item = [usize; 4]> {
    (0..16).map(|m| [m >> 3 & 1, m >> 2 & 1, m >> 1 & 1, m & 1])
}

/// The six tensor positions appearing in the quadruple conditions:
/// left side `(a,b,c)`, `(c,[abc],[acd])`, `(a,c,d)`;
/// right side `(b,[abc],[abd])`, `(a,b,d)`, `(d,[abd],[acd])`.
fn quad_positions([a, b, c, d]: [usize; 4]) -> [usize; 6] {
    let (abc, acd, abd) = (tri(a, b, c), tri(a, c, d), tri(a, b, d));
    [idx(a, b, c), idx(c, abc, acd), idx(a, c, d), idx(b, abc, abd), idx(a, b, d), idx(d, abd, acd)]
}

fn quad_condition<R: Ring>(a: &[R; 8], b: &[R; 8], delta: &R, name: char, q: [usize; 4]) -> bool {
    let [l1, l2, l3, r1, r2, r3] = quad_positions(q);
    let p3 = |x: &R, y: &R, z: &R| x.mul(y).mul(z);
    match name {
        'a' => p3(&a[l1], &a[l2], &a[l3]) == p3(&a[r1], &a[r2], &a[r3]),
        'b' => p3(&a[l1], &b[l2], &b[l3]) == p3(&b[r1], &b[r2], &a[r3]),
        'c' => p3(&b[l1], &b[l2], &a[l3]) == p3(&a[r1], &b[r2], &b[r3]),
        'd' => {
            let lhs = p3(&a[l1], &b[l2], &a[l3]);
            let rhs = p3(&a[r1], &a[r2], &b[r3])
                .add(&p3(&b[r1], &a[r2], &a[r3]))
                .add(&delta.mul(&p3(&b[r1], &a[r2], &b[r3])))
                .add(&p3(&b[r1], &b[r2], &b[r3]));
            lhs == rhs
        }
        'e' => {
            let lhs = p3(&a[l1], &a[l2], &b[l3])
                .add(&p3(&b[l1], &a[l2], &a[l3]))
                .add(&delta.mul(&p3(&b[l1], &a[l2], &b[l3])))
                .add(&p3(&b[l1], &b[l2], &b[l3]));
            lhs == p3(&a[r1], &b[r2], &a[r3])
        }
        _ => unreachable!(),
    }
}

/// Whether the circle value defined with the middle indices of the first
/// `A` factor transposed, `-A_{a,c,b} B_{a,b,c}^-1 - A_{a,b,c}^-1 B_{a,b,c}`,
/// is constant over X_2.
pub fn transposed_delta_is_constant<R: Ring>(a: &[R; 8], b: &[R; 8]) -> bool {
    let val = |x: usize, y: usize, z: usize| {
        a[idx(x, z, y)].mul(&inv(&b[idx(x, y, z)])).add(&inv(&a[idx(x, y, z)]).mul(&b[idx(x, y, z)])).neg()
    };
    (0..8).all(|i| val(i >> 2, i >> 1 & 1, i & 1) == val(0, 0, 0))
}

impl<R: Ring> Bracket<R> {
    /// Verify the axioms and cache the circle value and distinguished element.
    pub fn new(a: [R; 8], b: [R; 8]) -> Result<Self, BracketError> {
        let report = verify_axioms(&a, &b)?;
        if !report.failures.is_empty() {
            return Err(BracketError::Axioms(report.failures));
        }
        Ok(Bracket(BracketTensors { a, b, delta: report.delta, w: report.w }))
    }

    pub fn tensors(&self) -> &BracketTensors<R> {
        &self.0
    }

    pub fn a(&self, i: usize) -> &R {
        &self.0.a[i]
    }

    pub fn b(&self, i: usize) -> &R {
        &self.0.b[i]
    }

    pub fn delta(&self) -> &R {
        &self.0.delta
    }

    pub fn w(&self) -> &R {
        &self.0.w
    }

    /// Entrywise inverses with the same circle value and inverse
    /// distinguished element.
    pub fn bar(&self) -> BracketTensors<R> {
        BracketTensors {
            a: self.0.a.clone().map(|x| inv(&x)),
            b: self.0.b.clone().map(|x| inv(&x)),
            delta: self.0.delta.clone(),
            w: inv(&self.0.w),
        }
    }

    pub fn satisfies_mirror_hypothesis(&self) -> bool {
        let (a, b) = (&self.0.a, &self.0.b);
        a[idx(0, 0, 1)].mul(&b[idx(0, 1, 0)]) == b[idx(0, 0, 1)].mul(&a[idx(0, 1, 0)])
            && a[idx(1, 1, 0)].mul(&b[idx(1, 0, 1)]) == b[idx(1, 1, 0)].mul(&a[idx(1, 0, 1)])
    }

    /// The set of types whose three defining equations hold.
    pub fn classify_type(&self) -> BTreeSet<usize> {
        let (a, b) = (&self.0.a, &self.0.b);
        let (a0, b0) = (&a[0], &b[0]);
        let ab = a0.mul(&inv(b0));
        let ba = inv(a0).mul(b0);
        let b001_ab = b[idx(0, 0, 1)] == ab.mul(&a[idx(0, 0, 1)]);
        let b001_ba = b[idx(0, 0, 1)] == ba.mul(&a[idx(0, 0, 1)]);
        let b010_ab = b[idx(0, 1, 0)] == ab.mul(&a[idx(0, 1, 0)]);
        let b010_ba = b[idx(0, 1, 0)] == ba.mul(&a[idx(0, 1, 0)]);
        let a011_1 = a[idx(0, 1, 1)] == *a0;
        let a011_3 = a[idx(0, 1, 1)] == a0.mul(a0).mul(a0).mul(&inv(&b0.mul(b0)));
        let conds = [
            (1, b001_ba && b010_ab && a011_1),
            (2, b001_ba && b010_ab && a011_3),
            (3, b001_ab && b010_ba && a011_1),
            (4, b001_ab && b010_ba && a011_3),
            (5, b001_ba && b010_ba && a011_1),
        ];
        conds.into_iter().filter(|&(_, ok)| ok).map(|(i, _)| i).collect()
    }

    /// The homomorphism sending the universal generators to
    /// `A000, A001, A010, A101, B000`.
    pub fn universal_hom(&self) -> RingHom<R> {
        let a = &self.0.a;
        RingHom::new(vec![
            a[idx(0, 0, 0)].clone(),
            a[idx(0, 0, 1)].clone(),
            a[idx(0, 1, 0)].clone(),
            a[idx(1, 0, 1)].clone(),
            self.0.b[idx(0, 0, 0)].clone(),
        ])
        .expect("entries are units")
    }

    /// A universal bracket and homomorphism reproducing this bracket entrywise.
    pub fn factor_through_universal(&self) -> Result<(usize, RingHom<R>), BracketError> {
        let f = self.universal_hom();
        let types = self.classify_type();
        for i in types.into_iter().chain(1..=5) {
            let u = universal(i)?;
            let img = |t: &[LaurentPoly; 8]| t.clone().map(|x| f.apply(&x).unwrap());
            if img(&u.0.a) == self.0.a && img(&u.0.b) == self.0.b {
                return Ok((i, f));
            }
        }
        Err(BracketError::NoFactorization)
    }

    /// Apply a ring homomorphism entrywise.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Result<Bracket<S>, BracketError> {
        Bracket::new(self.0.a.clone().map(|x| f(&x)), self.0.b.clone().map(|x| f(&x)))
    }
}

impl<R: Ring> BracketTensors<R> {
    /// Status of each axiom for unverified data, using the stored circle
    /// value and distinguished element.
    pub fn axiom_status(&self) -> Result<AxiomReport<R>, BracketError> {
        check_units(&self.a, &self.b)?;
        let mut failures = vec![];
        for i in 0..8 {
            if delta_at(&self.a, &self.b, i) != self.delta {
                failures.push(AxiomFailure::Delta([i >> 2, i >> 1 & 1, i & 1]));
            }
        }
        for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            if w_at(&self.a, &self.b, idx(x, y, y)) != self.w {
                failures.push(AxiomFailure::W([x, y]));
            }
        }
        for q in quadruples() {
            for name in ['a', 'b', 'c', 'd', 'e'] {
                if !quad_condition(&self.a, &self.b, &self.delta, name, q) {
                    failures.push(AxiomFailure::Quad(name, q));
                }
            }
        }
        Ok(AxiomReport { delta: self.delta.clone(), w: self.w.clone(), failures })
    }
}

impl<R: Ring> fmt::Display for Bracket<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |t: &[R; 8]| t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "A = [{}], B = [{}]", show(&self.0.a), show(&self.0.b))
    }
}

fn mono(e: [i32; 5]) -> LaurentPoly {
    LaurentPoly::monomial(1, &e)
}

/// The universal bracket of the given type over `Z[x1^±1, ..., x5^±1]`.
pub fn universal(i: usize) -> Result<Bracket<LaurentPoly>, BracketError> {
    if !(1..=5).contains(&i) {
        return Err(BracketError::BadIndex(i));
    }
    let heavy = matches!(i, 2 | 4);
    let corner = if heavy { [3, 0, 0, 0, -2] } else { [1, 0, 0, 0, 0] };
    let a = [
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        corner,
        corner,
        [0, 0, 0, 1, 0],
        [0, 1, 1, -1, 0],
        [1, 0, 0, 0, 0],
    ]
    .map(mono);
    // Exponent of x1 in B001, B010, B101, B110 (the x5 exponent is its negative).
    let (s001, s010, s101, s110) = match i {
        1 | 2 => (-1, 1, 1, -1),
        3 | 4 => (1, -1, -1, 1),
        _ => (-1, -1, -1, -1),
    };
    let b_corner = if heavy { [4, 0, 0, 0, -3] } else { [0, 0, 0, 0, 1] };
    let b = [
        [0, 0, 0, 0, 1],
        [s001, 1, 0, 0, -s001],
        [s010, 0, 1, 0, -s010],
        b_corner,
        b_corner,
        [s101, 0, 0, 1, -s101],
        [s110, 1, 1, -1, -s110],
        [0, 0, 0, 0, 1],
    ]
    .map(mono);
    Bracket::new(a, b)
}

/// Entry identities that every bracket over X_2 satisfies, and
/// the disjunctions that hold over integral domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    /// Indices (1-based) of failed universal identities.
    pub identities_failed: Vec<usize>,
    /// Indices (1-based) of failed integral-domain disjunctions.
    pub disjunctions_failed: Vec<usize>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.identities_failed.is_empty() && self.disjunctions_failed.is_empty()
    }
}

pub fn check_entry_identities<R: Ring>(k: &Bracket<R>) -> IdentityReport {
    let (a, b) = (&k.0.a, &k.0.b);
    let e = |x: usize, y: usize, z: usize| idx(x, y, z);
    let (a0, b0) = (&a[0], &b[0]);
    let m = |x: &R, y: &R| x.mul(y);
    let b100 = m(&m(b0, &inv(&m(a0, a0))), &m(&a[e(0, 1, 1)], &a[e(0, 1, 1)]));
    let identities = [
        a[e(0, 0, 0)] == a[e(1, 1, 1)],
        b[e(0, 0, 0)] == b[e(1, 1, 1)],
        a[e(0, 1, 1)] == a[e(1, 0, 0)],
        b[e(0, 1, 1)] == b[e(1, 0, 0)] && b[e(1, 0, 0)] == b100,
        m(&a[e(0, 0, 1)], &a[e(0, 1, 0)]) == m(&a[e(1, 1, 0)], &a[e(1, 0, 1)]),
        m(&b[e(0, 0, 1)], &a[e(0, 1, 0)]) == m(&b[e(1, 1, 0)], &a[e(1, 0, 1)]),
        m(&a[e(0, 1, 0)], &b[e(1, 0, 1)]) == m(&a[e(1, 0, 1)], &b[e(0, 1, 0)]),
        m(&a[e(0, 0, 1)], &b[e(0, 1, 0)]) == m(&a[e(1, 1, 0)], &b[e(1, 0, 1)]),
        m(&b[e(0, 0, 1)], &b[e(0, 1, 0)]) == m(&b[e(1, 1, 0)], &b[e(1, 0, 1)]),
        m(&a[e(0, 0, 1)], &b[e(1, 1, 0)]) == m(&a[e(1, 1, 0)], &b[e(0, 0, 1)]),
    ];
    let ab = m(a0, &inv(b0));
    let ba = m(&inv(a0), b0);
    let b001_ab = b[e(0, 0, 1)] == m(&ab, &a[e(0, 0, 1)]);
    let b001_ba = b[e(0, 0, 1)] == m(&ba, &a[e(0, 0, 1)]);
    let b010_ab = b[e(0, 1, 0)] == m(&ab, &a[e(0, 1, 0)]);
    let b010_ba = b[e(0, 1, 0)] == m(&ba, &a[e(0, 1, 0)]);
    let a011_1 = a[e(0, 1, 1)] == *a0;
    let a011_3 = a[e(0, 1, 1)] == m(&m(a0, a0), &m(a0, &inv(&m(b0, b0))));
    let disjunctions = [
        b001_ab || b001_ba,
        b010_ab || b010_ba,
        a011_1 || a011_3,
        !b010_ab || b001_ba,
        !(b010_ba && b001_ba) || a011_1,
    ];
    let failed = |v: &[bool]| v.iter().enumerate().filter(|(_, &ok)| !ok).map(|(i, _)| i + 1).collect();
    IdentityReport { identities_failed: failed(&identities), disjunctions_failed: failed(&disjunctions) }
}

/// `5 (p-1)^5 - 8 (p-1)^4` for odd `p`; over Z/2 the only unit is 1, so there
/// is exactly one bracket.
pub fn expected_count(p: u64) -> BigInt {
    if p == 2 {
        return BigInt::from(1);
    }
    let q = BigInt::from(p - 1);
    BigInt::from(5) * q.pow(5) - BigInt::from(8) * q.pow(4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    Brute,
    Homs,
}

/// Brackets over Z/pZ with their entry tuples, sorted by entry tuple.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub p: u64,
    pub brackets: Vec<Bracket<Zp>>,
    /// Number of brackets of each type 1..=5 (a bracket may count for several).
    pub per_type: [usize; 5],
}

impl Enumeration {
    pub fn count(&self) -> usize {
        self.brackets.len()
    }

    pub fn entry_tuples(&self) -> Vec<[u64; 16]> {
        self.brackets.iter().map(entry_tuple).collect()
    }
}

pub fn entry_tuple(k: &Bracket<Zp>) -> [u64; 16] {
    let mut t = [0; 16];
    for i in 0..8 {
        t[i] = k.a(i).value();
        t[8 + i] = k.b(i).value();
    }
    t
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn enumerate_over_prime_field(p: u64, mode: EnumerationMode) -> Result<Enumeration, BracketError> {
    if !is_prime(p) {
        return Err(BracketError::NotPrime(p));
    }
    let units: Vec<Zp> = (1..p).map(|v| Zp::new(v as i64, p)).collect();
    let u = units.len() as u64;
    let mut tuples: Vec<[u64; 16]> = match mode {
        EnumerationMode::Brute => {
            let total = u.checked_pow(16).filter(|&t| t <= 1 << 30).ok_or(BracketError::TooLarge(p))?;
            (0..total)
                .into_par_iter()
                .filter_map(|mut m| {
                    let mut t = [0u64; 16];
                    for slot in t.iter_mut() {
                        *slot = m % u + 1;
                        m /= u;
                    }
                    let ent = |i: usize| Zp::new(t[i] as i64, p);
                    let a = std::array::from_fn(ent);
                    let b = std::array::from_fn(|i| ent(8 + i));
                    Bracket::new(a, b).ok().map(|_| t)
                })
                .collect()
        }
        EnumerationMode::Homs => {
            let universals: Vec<_> = (1..=5).map(|i| universal(i).unwrap()).collect();
            let mut found: Vec<[u64; 16]> = (0..u.pow(5))
                .into_par_iter()
                .flat_map_iter(|mut m| {
                    let imgs: Vec<Zp> = (0..5)
                        .map(|_| {
                            let v = units[(m % u) as usize];
                            m /= u;
                            v
                        })
                        .collect();
                    let f = RingHom::new(imgs).unwrap();
                    universals
                        .iter()
                        .map(|k| {
                            let mut t = [0u64; 16];
                            for i in 0..8 {
                                t[i] = f.apply(k.a(i)).unwrap().value();
                                t[8 + i] = f.apply(k.b(i)).unwrap().value();
                            }
                            t
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            found.sort_unstable();
            found.dedup();
            found
        }
    };
    tuples.sort_unstable();
    let brackets: Vec<Bracket<Zp>> = tuples
        .iter()
        .map(|t| {
            let ent = |i: usize| Zp::new(t[i] as i64, p);
            Bracket::new(std::array::from_fn(ent), std::array::from_fn(|i| ent(8 + i)))
        })
        .collect::<Result<_, _>>()?;
    let mut per_type = [0; 5];
    for k in &brackets {
        for t in k.classify_type() {
            per_type[t - 1] += 1;
        }
    }
    Ok(Enumeration { p, brackets, per_type })
}

/// The constant bracket `A = x, B = x^-1` over `Z[x^±1]`.
pub fn kauffman_bracket() -> Bracket<LaurentPoly> {
    let x = LaurentPoly::var(1, 0);
    let xi = x.pow(-1).unwrap();
    Bracket::new(std::array::from_fn(|_| x.clone()), std::array::from_fn(|_| xi.clone())).unwrap()
}
