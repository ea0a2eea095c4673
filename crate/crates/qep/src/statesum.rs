//! State sums: β of a colored diagram, the per-state monomial, and the
//! enhancement polynomial Φ as a multiset over colorings.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bracket::{Bracket, BracketTensors};
use crate::coloring::{enumerate_colorings, tc_colorings, ColorTriple, Coloring, ColoringError};
use crate::diagram::{OrientedDiagram, State};
use crate::laurent::Ring;

pub const DEFAULT_MAX_CROSSINGS: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateSumError {
    #[error("{crossings} crossings exceeds the limit of {limit} (set QEP_MAX_CROSSINGS to override)")]
    TooManyCrossings { crossings: usize, limit: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("the bracket does not satisfy the mirror hypothesis")]
    MirrorHypothesis,
}

/// Crossing limit, overridable through `QEP_MAX_CROSSINGS`.
pub fn max_crossings() -> usize {
    std::env::var("QEP_MAX_CROSSINGS").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_CROSSINGS).min(63)
}

fn check_size(d: &OrientedDiagram) -> Result<(), StateSumError> {
    let limit = max_crossings();
    if d.num_crossings() > limit {
        return Err(StateSumError::TooManyCrossings { crossings: d.num_crossings(), limit });
    }
    Ok(())
}

/// Circle counts of every state, shared across colorings and brackets.
pub struct StateSpace<'a> {
    diagram: &'a OrientedDiagram,
    circles: Vec<u8>,
}

impl<'a> StateSpace<'a> {
    pub fn new(d: &'a OrientedDiagram) -> Result<Self, StateSumError> {
        check_size(d)?;
        Ok(StateSpace { diagram: d, circles: d.circle_table() })
    }

    pub fn circles(&self, s: State) -> usize {
        self.circles[s.0 as usize] as usize
    }

    /// `w^(n-p) Σ_s δ^(k_s) Π_c s(c)(cl(c))^sign(c)`, summed in Gray-code order.
    pub fn beta<R: Ring>(&self, col: &Coloring, k: &BracketTensors<R>) -> Result<R, StateSumError> {
        Ok(self.beta_of_triples(&col.triples(self.diagram)?, k))
    }

    /// β with the color triple at each crossing given directly.
    pub fn beta_of_triples<R: Ring>(&self, triples: &[ColorTriple], k: &BracketTensors<R>) -> R {
        let d = self.diagram;
        let factors: Vec<(R, R)> = d
            .crossings()
            .iter()
            .zip(triples)
            .map(|(x, t)| (signed(&k.a[t.index()], x.sign), signed(&k.b[t.index()], x.sign)))
            .collect();
        // Flipping crossing c from A to B multiplies by up[c]; back by down[c].
        let up: Vec<R> = factors.iter().map(|(fa, fb)| fb.mul(&fa.inverse().unwrap())).collect();
        let down: Vec<R> = up.iter().map(|u| u.inverse().unwrap()).collect();

        let one = k.delta.one_like();
        let mut prod = factors.iter().fold(one.clone(), |acc, (fa, _)| acc.mul(fa));
        let mut groups: HashMap<(u8, R), i64> = HashMap::new();
        let mut state = 0u64;
        let total = 1u64 << d.num_crossings();
        for i in 0..total {
            if i > 0 {
                let c = i.trailing_zeros() as usize;
                state ^= 1 << c;
                prod = prod.mul(if state >> c & 1 == 1 { &up[c] } else { &down[c] });
            }
            *groups.entry((self.circles[state as usize], prod.clone())).or_default() += 1;
        }

        let max_k = groups.keys().map(|(k, _)| *k).max().unwrap_or(0) as usize;
        let mut delta_pows = vec![one.clone()];
        for j in 1..=max_k {
            delta_pows.push(delta_pows[j - 1].mul(&k.delta));
        }
        let mut sum = one.zero_like();
        let mut keys: Vec<_> = groups.into_iter().collect();
        keys.sort_by_key(|((kk, p), _)| (*kk, p.to_string()));
        for ((kk, p), n) in keys {
            sum = sum.add(&delta_pows[kk as usize].mul(&p).mul(&one.from_int_like(&BigInt::from(n))));
        }
        writhe_factor(d, &k.w).mul(&sum)
    }
}

fn signed<R: Ring>(x: &R, sign: i8) -> R {
    if sign > 0 {
        x.clone()
    } else {
        x.inverse().expect("bracket entries are units")
    }
}

fn writhe_factor<R: Ring>(d: &OrientedDiagram, w: &R) -> R {
    let (p, n) = d.sign_counts();
    w.pow_i(n as i64 - p as i64).expect("w is a unit")
}

pub fn beta<R: Ring>(d: &OrientedDiagram, col: &Coloring, k: &Bracket<R>) -> Result<R, StateSumError> {
    StateSpace::new(d)?.beta(col, k.tensors())
}

/// The state's monomial `w^(n-p) Π_c s(c)(cl(c))^sign(c)`, without the circle factor.
pub fn beta_per_state<R: Ring>(
    d: &OrientedDiagram,
    col: &Coloring,
    s: State,
    k: &BracketTensors<R>,
) -> Result<R, StateSumError> {
    let triples: Vec<ColorTriple> = col.triples(d)?;
    let mut acc = writhe_factor(d, &k.w);
    for (c, (x, t)) in d.crossings().iter().zip(&triples).enumerate() {
        let entry = if s.is_b(c) { &k.b[t.index()] } else { &k.a[t.index()] };
        acc = acc.mul(&signed(entry, x.sign));
    }
    Ok(acc)
}

/// A multiset of exponent values, kept sorted by their canonical text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnhancementPolynomial<R> {
    entries: Vec<(R, u64)>,
}

impl<R: Ring> EnhancementPolynomial<R> {
    pub fn from_values(values: impl IntoIterator<Item = R>) -> Self {
        let mut map: HashMap<R, u64> = HashMap::new();
        for v in values {
            *map.entry(v).or_default() += 1;
        }
        let mut entries: Vec<(R, u64)> = map.into_iter().collect();
        entries.sort_by_cached_key(|(r, _)| r.to_string());
        EnhancementPolynomial { entries }
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (R, u64)>) -> Self {
        Self::from_values(entries.into_iter().flat_map(|(r, m)| std::iter::repeat_n(r, m as usize)))
    }

    pub fn entries(&self) -> &[(R, u64)] {
        &self.entries
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, r: &R) -> u64 {
        self.entries.iter().find(|(x, _)| x == r).map_or(0, |(_, m)| *m)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> EnhancementPolynomial<S> {
        EnhancementPolynomial::from_entries(self.entries.iter().map(|(r, m)| (f(r), *m)))
    }
}

impl<R: Ring> fmt::Display for EnhancementPolynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(r, m)| format!("{m}*u^({r})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

struct Entry<'a, R>(&'a R, u64);

impl<R: Ring> Serialize for Entry<'_, R> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Entry", 2)?;
        st.serialize_field("multiplicity", &self.1)?;
        st.serialize_field("exponent_polynomial", &self.0.to_string())?;
        st.end()
    }
}

impl<R: Ring> Serialize for EnhancementPolynomial<R> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (r, m) in &self.entries {
            seq.serialize_element(&Entry(r, *m))?;
        }
        seq.end()
    }
}

/// β for each of the given colorings, in order.
pub fn betas<R: Ring>(
    d: &OrientedDiagram,
    cols: &[Coloring],
    k: &BracketTensors<R>,
) -> Result<Vec<R>, StateSumError> {
    let space = StateSpace::new(d)?;
    cols.par_iter().map(|c| space.beta(c, k)).collect()
}

pub fn phi<R: Ring>(d: &OrientedDiagram, k: &Bracket<R>) -> Result<EnhancementPolynomial<R>, StateSumError> {
    let cols = enumerate_colorings(d)?;
    Ok(EnhancementPolynomial::from_values(betas(d, &cols, k.tensors())?))
}

/// Φ restricted to the trivial and checkerboard colorings.
pub fn phi_tc<R: Ring>(d: &OrientedDiagram, k: &Bracket<R>) -> Result<EnhancementPolynomial<R>, StateSumError> {
    let cols = tc_colorings(d)?;
    Ok(EnhancementPolynomial::from_values(betas(d, &cols, k.tensors())?))
}

/// Compare β of the bar transform on `d` with β on the mirror of `d`.
pub fn beta_bar_mirror_check<R: Ring>(
    d: &OrientedDiagram,
    col: &Coloring,
    k: &Bracket<R>,
) -> Result<bool, StateSumError> {
    if !k.satisfies_mirror_hypothesis() {
        return Err(StateSumError::MirrorHypothesis);
    }
    let lhs = StateSpace::new(d)?.beta(col, &k.bar())?;
    let m = d.mirror();
    let rhs = StateSpace::new(&m)?.beta(col, k.tensors())?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::universal;
    use crate::laurent::LaurentPoly;

    fn p5(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 5).unwrap()
    }

    #[test]
    fn unknot_and_unlink() {
        let delta = p5("-x1x5^-1 - x1^-1x5");
        let u = OrientedDiagram::unlink(1);
        for i in 1..=5 {
            let k = universal(i).unwrap();
            for c in enumerate_colorings(&u).unwrap() {
                assert_eq!(beta(&u, &c, &k).unwrap(), delta);
                assert_eq!(beta_per_state(&u, &c, State(0), k.tensors()).unwrap(), LaurentPoly::one(5));
            }
        }
        let u3 = OrientedDiagram::unlink(3);
        let phi3 = phi(&u3, &universal(2).unwrap()).unwrap();
        assert_eq!(phi3, EnhancementPolynomial::from_entries([(delta.pow(3).unwrap(), 16)]));
    }

    #[test]
    fn serialization() {
        let e = EnhancementPolynomial::from_entries([(p5("x1"), 2), (p5("-x5"), 1)]);
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(
            json,
            r#"[{"multiplicity":1,"exponent_polynomial":"-1*x5^1"},{"multiplicity":2,"exponent_polynomial":"1*x1^1"}]"#
        );
    }

    #[test]
    fn crossing_limit() {
        let d = OrientedDiagram::parse("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert!(StateSpace::new(&d).is_ok());
    }
}
