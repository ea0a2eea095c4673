//! Invariants derived from or checked against β: a skein oracle for the
//! Kauffman bracket, Jones polynomials, linking-number multisets, closed
//! forms for `T(2,q)` and `TW(q)`, and pairwise comparison.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use regex::Regex;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bracket::{universal, Bracket};
use crate::coloring::Coloring;
use crate::diagram::OrientedDiagram;
use crate::laurent::{LaurentPoly, Ring, RingHom};
use crate::statesum::{beta, max_crossings, phi, EnhancementPolynomial, StateSumError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivedError {
    #[error("{crossings} crossings exceeds the limit of {limit}")]
    TooManyCrossings { crossings: usize, limit: usize },
    #[error("β is not supported on powers of x1/x5: {0}")]
    Unsupported(String),
    #[error("odd exponent {0} of x cannot become a power of t^(1/2)")]
    OddExponent(i32),
    #[error(transparent)]
    StateSum(#[from] StateSumError),
}

/// Kauffman bracket normalized so the unknot is `-x^2 - x^-2`, computed by
/// resolving crossings one at a time and merging equal boundary pairings.
pub fn kauffman_oracle(d: &OrientedDiagram) -> Result<LaurentPoly, DerivedError> {
    let n = d.num_crossings();
    if n > max_crossings() {
        return Err(DerivedError::TooManyCrossings { crossings: n, limit: max_crossings() });
    }
    let x = LaurentPoly::var(1, 0);
    let xi = LaurentPoly::monomial(1, &[-1]);
    let loop_value = -&(&LaurentPoly::monomial(1, &[2]) + &LaurentPoly::monomial(1, &[-2]));
    let pd = d.to_pd();

    // Boundary of the resolved part: each open label mapped to the other end of its arc.
    type Frontier = Vec<(u32, u32)>;
    let mut layer: HashMap<Frontier, LaurentPoly> = HashMap::from([(vec![], LaurentPoly::one(1))]);
    let mut todo: Vec<[u32; 4]> = pd.crossings.iter().map(|c| c.labels).collect();
    let mut seen: HashMap<u32, u32> = HashMap::new();
    while !todo.is_empty() {
        // Prefer the crossing sharing most labels with the boundary.
        let pick = (0..todo.len()).max_by_key(|&i| todo[i].iter().filter(|l| seen.contains_key(l)).count()).unwrap();
        let l = todo.swap_remove(pick);
        for v in l {
            *seen.entry(v).or_default() += 1;
        }
        let mut next: HashMap<Frontier, LaurentPoly> = HashMap::new();
        for (frontier, coeff) in layer {
            for (arcs, weight) in [([(l[0], l[1]), (l[2], l[3])], &x), ([(l[1], l[2]), (l[3], l[0])], &xi)] {
                let mut ends: HashMap<u32, u32> = frontier.iter().flat_map(|&(p, q)| [(p, q), (q, p)]).collect();
                let mut loops = 0;
                for (p, q) in arcs {
                    if p == q {
                        loops += 1;
                        continue;
                    }
                    match (ends.remove(&p), ends.remove(&q)) {
                        (None, None) => {
                            ends.insert(p, q);
                            ends.insert(q, p);
                        }
                        (Some(ep), None) => {
                            ends.insert(ep, q);
                            ends.insert(q, ep);
                        }
                        (None, Some(eq)) => {
                            ends.insert(eq, p);
                            ends.insert(p, eq);
                        }
                        (Some(ep), Some(eq)) if ep == q => {
                            debug_assert_eq!(eq, p);
                            loops += 1;
                        }
                        (Some(ep), Some(eq)) => {
                            ends.remove(&ep);
                            ends.remove(&eq);
                            ends.insert(ep, eq);
                            ends.insert(eq, ep);
                        }
                    }
                }
                let mut key: Frontier = ends.into_iter().filter(|(p, q)| p < q).collect();
                key.sort_unstable();
                let mut term = &coeff * weight;
                for _ in 0..loops {
                    term = &term * &loop_value;
                }
                let slot = next.entry(key).or_insert_with(|| LaurentPoly::zero(1));
                *slot = &*slot + &term;
            }
        }
        layer = next;
    }
    let mut sum = layer.remove(&vec![]).unwrap_or_else(|| LaurentPoly::zero(1));
    if n == 0 {
        sum = loop_value.pow(d.num_components() as i64).expect("polynomial power");
    }
    let correction = LaurentPoly::monomial(-1, &[3]).pow(-d.writhe()).expect("monomial");
    Ok(&correction * &sum)
}

/// Laurent polynomial in `t^(1/2)`; the key `k` stands for `t^(k/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct JonesPoly {
    coeffs: BTreeMap<i32, BigInt>,
}

impl JonesPoly {
    /// Substitute `x = t^(-1/4)` into a one-variable polynomial.
    pub fn from_kauffman(k: &LaurentPoly) -> Result<Self, DerivedError> {
        let mut coeffs = BTreeMap::new();
        for (e, c) in k.terms() {
            if e[0] % 2 != 0 {
                return Err(DerivedError::OddExponent(e[0]));
            }
            coeffs.insert(-e[0] / 2, c.clone());
        }
        Ok(JonesPoly { coeffs })
    }

    /// Jones polynomial of the mirror image: `t -> t^-1`.
    pub fn mirror(&self) -> Self {
        JonesPoly { coeffs: self.coeffs.iter().map(|(k, c)| (-k, c.clone())).collect() }
    }

    /// `(k, c)` pairs for the terms `c * t^(k/2)`, ascending in `k`.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn parse(s: &str) -> Result<Self, DerivedError> {
        let bad = || DerivedError::Unsupported(s.to_string());
        let mut coeffs: BTreeMap<i32, BigInt> = BTreeMap::new();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(JonesPoly::default());
        }
        let term = Regex::new(r"([+-]*)(\d*)(\*?t\^\((-?\d+)/2\))?").expect("static regex");
        let mut pos = 0;
        while pos < compact.len() {
            let m = term.captures_at(&compact, pos).filter(|m| m.get(0).unwrap().start() == pos).ok_or_else(bad)?;
            let whole = m.get(0).unwrap();
            let digits = m.get(2).unwrap().as_str();
            if whole.is_empty() || (digits.is_empty() && m.get(3).is_none()) {
                return Err(bad());
            }
            let negative = m.get(1).unwrap().as_str().matches('-').count() % 2 == 1;
            let mut c: BigInt = if digits.is_empty() { BigInt::one() } else { digits.parse().map_err(|_| bad())? };
            if negative {
                c = -c;
            }
            let k = m.get(4).map_or(Ok(0), |k| k.as_str().parse::<i32>()).map_err(|_| bad())?;
            *coeffs.entry(k).or_default() += c;
            pos = whole.end();
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(JonesPoly { coeffs })
    }
}

impl fmt::Display for JonesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(k, c)| format!("{c}*t^({k}/2)")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for JonesPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Jones polynomial from the skein oracle.
pub fn jones(d: &OrientedDiagram) -> Result<JonesPoly, DerivedError> {
    JonesPoly::from_kauffman(&kauffman_oracle(d)?)
}

/// Hom sending `x1..x4` to `x` and `x5` to `x^-1`.
pub fn kauffman_specialization() -> RingHom<LaurentPoly> {
    let x = LaurentPoly::var(1, 0);
    let xi = LaurentPoly::monomial(1, &[-1]);
    RingHom::new(vec![x.clone(), x.clone(), x.clone(), x, xi]).expect("units")
}

/// Rewrite a polynomial in `x1 x5^-1` as one in `x`, sending `x1 x5^-1` to `x^2`.
pub fn collapse_support(p: &LaurentPoly) -> Result<LaurentPoly, DerivedError> {
    let mut out = LaurentPoly::zero(1);
    for (e, c) in p.terms() {
        if e[1] != 0 || e[2] != 0 || e[3] != 0 || e[0] + e[4] != 0 {
            return Err(DerivedError::Unsupported(p.to_string()));
        }
        out = &out + &LaurentPoly::monomial(c.clone(), &[2 * e[0]]);
    }
    Ok(out)
}

/// Jones polynomial read off β of the trivial coloring of base color 0 under
/// the universal bracket `i`.
pub fn jones_from_beta(d: &OrientedDiagram, i: usize) -> Result<JonesPoly, DerivedError> {
    let k = universal(i).expect("index checked by caller");
    let col = Coloring::new(d, 0, 0).map_err(StateSumError::from)?;
    let b = beta(d, &col, &k)?;
    let x = if i == 5 { kauffman_specialization().apply(&b).expect("units") } else { collapse_support(&b)? };
    JonesPoly::from_kauffman(&x)
}

/// Signed count of crossings where a `D1` strand passes over a `D2` strand.
pub fn linking_number(d: &OrientedDiagram, d1: u64) -> i64 {
    d.crossings()
        .iter()
        .enumerate()
        .filter(|(c, x)| d1 >> d.component_at(*c, x.over_in) & 1 == 1 && d1 >> d.component_at(*c, x.under_in) & 1 == 0)
        .map(|(_, x)| x.sign as i64)
        .sum()
}

/// Linking numbers over every split of the components, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct LinkingMultiset(pub Vec<i64>);

pub fn lk_multiset(d: &OrientedDiagram) -> LinkingMultiset {
    let mut v: Vec<i64> = (0..1u64 << d.num_components()).map(|s| linking_number(d, s)).collect();
    v.sort_unstable();
    LinkingMultiset(v)
}

fn pow<R: Ring>(x: &R, k: i64) -> R {
    x.pow_i(k).expect("bracket entries are units")
}

fn idx(a: usize, b: usize, c: usize) -> usize {
    a << 2 | b << 1 | c
}

/// Closed form of Φ for the standard diagram of `T(2, q)`; `n` is 1 when
/// `q = 0` or every crossing is positive and -1 otherwise.
pub fn torus_formula<R: Ring>(q: i64, n: i64, k: &Bracket<R>) -> EnhancementPolynomial<R> {
    let (d, w) = (k.delta(), k.w());
    let m = q.abs();
    let mut values = vec![];
    if q % 2 != 0 {
        for a in 0..2 {
            for b in 0..2 {
                let (aa, bb) = (pow(k.a(idx(a, b, b)), n), pow(k.b(idx(a, b, b)), n));
                let an = pow(&aa, m);
                let body = an.mul(d).mul(d).add(&pow(&aa.add(&bb.mul(d)), m)).sub(&an);
                values.push(pow(w, -q).mul(&body));
            }
        }
        return EnhancementPolynomial::from_values(values);
    }
    let h = m / 2;
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                let (a1, a2) = (pow(k.a(idx(a, b, c)), n), pow(k.a(idx(a, c, b)), n));
                let (b1, b2) = (pow(k.b(idx(a, b, c)), n), pow(k.b(idx(a, c, b)), n));
                // Which smoothing carries the circle-rich all-one-choice state.
                let (p1, p2, s1, s2, wk) =
                    if n * q >= 0 { (a1, a2, b1, b2, pow(w, -q)) } else { (b1, b2, a1, a2, pow(w, q)) };
                let corner = pow(&p1, h).mul(&pow(&p2, h));
                let body = corner
                    .mul(d)
                    .mul(d)
                    .add(&pow(&p1.add(&s1.mul(d)), h).mul(&pow(&p2.add(&s2.mul(d)), h)))
                    .sub(&corner);
                values.push(wk.mul(&body));
            }
        }
    }
    EnhancementPolynomial::from_values(values)
}

/// Closed form of Φ for the standard diagram of the twist knot `TW(q)`.
/// The twist crossings have sign `n` (1 for `q ≥ 0`, else -1) and the two
/// clasp crossings sign `m = (-1)^(q+1)`; entries are raised to those signs.
pub fn twist_formula<R: Ring>(q: i64, k: &Bracket<R>) -> EnhancementPolynomial<R> {
    let (d, w) = (k.delta(), k.w());
    let n = if q >= 0 { 1 } else { -1 };
    let m = if q % 2 == 0 { -1 } else { 1 };
    let t = q.abs();
    let one = d.one_like();
    let d2m1 = d.mul(d).sub(&one);
    let mut values = vec![];
    for a in 0..2 {
        for b in 0..2 {
            let i = idx(a, b, b);
            let (at, bt) = (pow(k.a(i), n), pow(k.b(i), n));
            let (ac, bc) = (pow(k.a(i), m), pow(k.b(i), m));
            let clasp = ac.mul(&ac).mul(d).add(&ac.mul(&bc).add(&ac.mul(&bc))).add(&bc.mul(&bc).mul(d));
            // Clasp closed through the all-B resolution of the twist region.
            let lost = if q % 2 == 0 { bc.mul(&bc) } else { ac.mul(&ac) };
            let straight = d.mul(d).mul(&clasp).sub(&lost.mul(d).mul(&d2m1));
            let bt_t = pow(&bt, t);
            let body = bt_t.mul(&straight).add(&pow(&bt.add(&at.mul(d)), t).sub(&bt_t).mul(&clasp));
            values.push(pow(w, -(n * t + 2 * m)).mul(&body));
        }
    }
    EnhancementPolynomial::from_values(values)
}

/// Equal/distinct verdicts for every invariant on a pair of diagrams.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    /// `phi_equal[i - 1]` for the universal bracket `i`.
    pub phi_equal: [bool; 5],
    pub jones_equal: bool,
    pub lk_equal: bool,
}

impl Comparison {
    /// Φ⁽ⁱ⁾ separates the pair while Jones and LK do not.
    pub fn in_x(&self, i: usize) -> bool {
        !self.phi_equal[i - 1] && self.jones_equal && self.lk_equal
    }

    /// Φ⁽ⁱ⁾ agrees on the pair while Φ⁽ʲ⁾ separates it.
    pub fn in_x_pair(&self, i: usize, j: usize) -> bool {
        self.phi_equal[i - 1] && !self.phi_equal[j - 1]
    }
}

/// Every invariant of one diagram, as compared pairwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub phi: Vec<EnhancementPolynomial<LaurentPoly>>,
    pub jones: JonesPoly,
    pub lk: LinkingMultiset,
}

impl Profile {
    pub fn of(d: &OrientedDiagram) -> Result<Self, DerivedError> {
        let phi = (1..=5).map(|i| phi(d, &universal(i).expect("valid index"))).collect::<Result<_, _>>()?;
        Ok(Profile { phi, jones: jones(d)?, lk: lk_multiset(d) })
    }

    pub fn compare(&self, other: &Self) -> Comparison {
        Comparison {
            phi_equal: std::array::from_fn(|i| self.phi[i] == other.phi[i]),
            jones_equal: self.jones == other.jones,
            lk_equal: self.lk == other.lk,
        }
    }
}

pub fn compare(da: &OrientedDiagram, db: &OrientedDiagram) -> Result<Comparison, DerivedError> {
    Ok(Profile::of(da)?.compare(&Profile::of(db)?))
}

/// Value at `t = 1`.
pub fn jones_at_one(j: &JonesPoly) -> BigInt {
    j.coeffs.values().fold(BigInt::zero(), |acc, c| acc + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{torus, twist_knot, FIGURE_EIGHT, TREFOIL};

    fn x1(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 1).unwrap()
    }

    #[test]
    fn oracle_basics() {
        assert_eq!(kauffman_oracle(&OrientedDiagram::unlink(1)).unwrap(), x1("-x1^2 - x1^-2"));
        for s in ["X[1,2,2,1]", "X[1,1,2,2]", "X[2,2,1,1]", "X[2,1,1,2]"] {
            assert_eq!(kauffman_oracle(&OrientedDiagram::parse(s).unwrap()).unwrap(), x1("-x1^2 - x1^-2"), "{s}");
        }
        let t = OrientedDiagram::parse(TREFOIL).unwrap();
        assert_eq!(t.writhe(), 3);
        // Right-handed trefoil: V = t + t^3 - t^4, times -(t^1/2 + t^-1/2).
        assert_eq!(jones(&t).unwrap().to_string(), "-1*t^(1/2) + -1*t^(3/2) + -1*t^(5/2) + 1*t^(9/2)");
        let e = OrientedDiagram::parse(FIGURE_EIGHT).unwrap();
        assert_eq!(jones(&e).unwrap(), jones(&e.mirror()).unwrap());
    }

    #[test]
    fn jones_parse_round_trip() {
        let j = JonesPoly::parse("-1*t^(-9/2) + 1*t^(-7/2) + -3*t^(-5/2)").unwrap();
        assert_eq!(JonesPoly::parse(&j.to_string()).unwrap(), j);
        assert_eq!(jones_at_one(&j), BigInt::from(-3));
    }

    #[test]
    fn generated_families_are_the_expected_knots() {
        let trefoil = jones(&OrientedDiagram::parse(TREFOIL).unwrap()).unwrap();
        let eight = jones(&OrientedDiagram::parse(FIGURE_EIGHT).unwrap()).unwrap();
        assert_eq!(jones(&torus(3).unwrap()).unwrap(), trefoil);
        let tw1 = jones(&twist_knot(1).unwrap()).unwrap();
        assert!(tw1 == trefoil || tw1 == jones(&OrientedDiagram::parse(TREFOIL).unwrap().mirror()).unwrap());
        assert_eq!(jones(&twist_knot(2).unwrap()).unwrap(), eight);
        assert_eq!(jones(&twist_knot(0).unwrap()).unwrap(), jones(&OrientedDiagram::unlink(1)).unwrap());
    }
}
