//! Region colorings by the two-element tribracket and the color triple read
//! off at each crossing.

use std::collections::VecDeque;

use thiserror::Error;

use crate::diagram::{Crossing, OrientedDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("region {0} received two colors")]
    Inconsistent(usize),
    #[error("fourth region at crossing {0} violates the coloring rule")]
    RuleViolation(usize),
    #[error("{0} faces is too many for exhaustive search")]
    TooManyFaces(usize),
    #[error("component subset {0:#b} out of range")]
    BadSubset(u64),
}

/// A quadrant around a crossing, named by the strand orientations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrant {
    /// Between the incoming ends of both strands.
    Tails,
    /// Between the outgoing ends of both strands.
    Heads,
    /// On the left of both strands.
    Left,
    /// On the right of both strands.
    Right,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::Tails, Quadrant::Heads, Quadrant::Left, Quadrant::Right];

    pub fn opposite(self) -> Self {
        match self {
            Quadrant::Tails => Quadrant::Heads,
            Quadrant::Heads => Quadrant::Tails,
            Quadrant::Left => Quadrant::Right,
            Quadrant::Right => Quadrant::Left,
        }
    }

    /// The two rotation positions bounding this quadrant at crossing `x`.
    pub fn ends(self, x: &Crossing) -> (u8, u8) {
        let left_of_both = if x.sign > 0 { (x.over_in, x.under_out) } else { (x.under_in, x.over_out) };
        let right_of_both = if x.sign > 0 { (x.under_in, x.over_out) } else { (x.over_in, x.under_out) };
        match self {
            Quadrant::Tails => (x.under_in, x.over_in),
            Quadrant::Heads => (x.under_out, x.over_out),
            Quadrant::Left => left_of_both,
            Quadrant::Right => right_of_both,
        }
    }
}

/// Which regions around a crossing are read as `(x, y, z)`; the region
/// opposite `x` carries `[x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TripleConvention {
    pub x: Quadrant,
    /// `y` at a positive crossing; `z` takes the remaining quadrant.
    pub y: Quadrant,
    /// Exchange `y` and `z` at negative crossings.
    pub swap_at_negative: bool,
}

impl TripleConvention {
    pub fn z(&self) -> Quadrant {
        Quadrant::ALL.into_iter().find(|&q| q != self.x && q != self.x.opposite() && q != self.y).expect("valid convention")
    }

    /// All sixteen self-consistent conventions.
    pub fn all() -> Vec<TripleConvention> {
        let mut out = vec![];
        for x in Quadrant::ALL {
            for y in Quadrant::ALL.into_iter().filter(|&y| y != x && y != x.opposite()) {
                for swap_at_negative in [false, true] {
                    out.push(TripleConvention { x, y, swap_at_negative });
                }
            }
        }
        out
    }
}

/// The single definition site of the crossing convention: `x` on the left of
/// both strands, `y` ahead of the crossing and `z` behind it at a positive
/// crossing, with `y` and `z` exchanged at a negative one.
pub const TRIPLE_CONVENTION: TripleConvention =
    TripleConvention { x: Quadrant::Left, y: Quadrant::Heads, swap_at_negative: true };

/// A coloring `C(a, D1)`: the base face gets color `a`, and colors flip
/// exactly across edges of components in `D1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    pub a: u8,
    /// Bitmask of the components in `D1`.
    pub d1: u64,
    regions: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorTriple {
    pub x: u8,
    pub y: u8,
    pub z: u8,
}

impl ColorTriple {
    /// Index into an `(a, b, c)`-ordered 8-entry tensor.
    pub fn index(self) -> usize {
        (self.x as usize) << 2 | (self.y as usize) << 1 | self.z as usize
    }
}

impl Coloring {
    pub fn new(d: &OrientedDiagram, a: u8, d1: u64) -> Result<Self, ColoringError> {
        if d.num_components() < 64 && d1 >> d.num_components() != 0 {
            return Err(ColoringError::BadSubset(d1));
        }
        let mut adj = vec![vec![]; d.num_faces()];
        for (f, g, k) in d.adjacencies() {
            let flip = (d1 >> k & 1) as u8;
            adj[f].push((g, flip));
            adj[g].push((f, flip));
        }
        let mut regions = vec![u8::MAX; d.num_faces()];
        regions[d.base_face()] = a & 1;
        let mut queue = VecDeque::from([d.base_face()]);
        while let Some(f) = queue.pop_front() {
            for &(g, flip) in &adj[f] {
                let col = regions[f] ^ flip;
                if regions[g] == u8::MAX {
                    regions[g] = col;
                    queue.push_back(g);
                } else if regions[g] != col {
                    return Err(ColoringError::Inconsistent(g));
                }
            }
        }
        Ok(Coloring { a: a & 1, d1, regions })
    }

    pub fn regions(&self) -> &[u8] {
        &self.regions
    }

    /// Components in `D1`, ascending.
    pub fn d1_components(&self) -> Vec<usize> {
        (0..64).filter(|k| self.d1 >> k & 1 == 1).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.d1 == 0
    }

    pub fn complement(&self) -> Self {
        Coloring { a: self.a ^ 1, d1: self.d1, regions: self.regions.iter().map(|r| r ^ 1).collect() }
    }

    /// `(x, y, z)` at crossing `c`, checking the fourth region.
    pub fn color_triple(&self, d: &OrientedDiagram, c: usize) -> Result<ColorTriple, ColoringError> {
        self.color_triple_with(d, c, TRIPLE_CONVENTION)
    }

    pub fn color_triple_with(
        &self,
        d: &OrientedDiagram,
        c: usize,
        conv: TripleConvention,
    ) -> Result<ColorTriple, ColoringError> {
        let x = &d.crossings()[c];
        let color = |q: Quadrant| -> u8 {
            let (p, r) = q.ends(x);
            let lo = if (p + 1) % 4 == r { p } else { r };
            self.regions[d.quadrant(c, lo)]
        };
        let (mut y, mut z) = (conv.y, conv.z());
        if conv.swap_at_negative && x.sign < 0 {
            std::mem::swap(&mut y, &mut z);
        }
        let t = ColorTriple { x: color(conv.x), y: color(y), z: color(z) };
        if color(conv.x.opposite()) != t.x ^ t.y ^ t.z {
            return Err(ColoringError::RuleViolation(c));
        }
        Ok(t)
    }

    pub fn triples_with(&self, d: &OrientedDiagram, conv: TripleConvention) -> Result<Vec<ColorTriple>, ColoringError> {
        (0..d.num_crossings()).map(|c| self.color_triple_with(d, c, conv)).collect()
    }

    pub fn triples(&self, d: &OrientedDiagram) -> Result<Vec<ColorTriple>, ColoringError> {
        (0..d.num_crossings()).map(|c| self.color_triple(d, c)).collect()
    }
}

/// All `2^(n+1)` colorings, ordered by component subset then base color.
pub fn enumerate_colorings(d: &OrientedDiagram) -> Result<Vec<Coloring>, ColoringError> {
    let n = d.num_components();
    let mut out = Vec::with_capacity(2 << n);
    for d1 in 0..1u64 << n {
        for a in 0..2 {
            out.push(Coloring::new(d, a, d1)?);
        }
    }
    Ok(out)
}

/// The two trivial and two checkerboard colorings.
pub fn tc_colorings(d: &OrientedDiagram) -> Result<Vec<Coloring>, ColoringError> {
    let all = (1u64 << d.num_components()) - 1;
    let mut out = vec![];
    for d1 in [0, all] {
        for a in 0..2 {
            out.push(Coloring::new(d, a, d1)?);
        }
    }
    Ok(out)
}

/// Every region map satisfying the coloring rule, found by exhaustion.
pub fn brute_force_colorings(d: &OrientedDiagram) -> Result<Vec<Vec<u8>>, ColoringError> {
    let f = d.num_faces();
    if f > 12 {
        return Err(ColoringError::TooManyFaces(f));
    }
    let mut out = vec![];
    for m in 0..1u32 << f {
        let col = |r: usize| (m >> r & 1) as u8;
        // The four colors around a crossing must sum to zero mod 2.
        let ok = (0..d.num_crossings()).all(|c| (0..4).map(|i| col(d.quadrant(c, i))).fold(0, |s, v| s ^ v) == 0);
        if ok {
            out.push((0..f).map(col).collect());
        }
    }
    Ok(out)
}

/// Local models at crossings between a `D1` strand and a `D2` strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Census {
    pub r0: usize,
    pub r1: usize,
    pub l0: usize,
    pub l1: usize,
}

/// Classify each mixed crossing by whether the `D1` strand crosses the `D2`
/// strand from right to left (`r`) or left to right (`l`), and by the color
/// of the region ahead along the `D2` strand.
pub fn census(d: &OrientedDiagram, col: &Coloring) -> Census {
    let mut out = Census::default();
    for (c, x) in d.crossings().iter().enumerate() {
        let in_d1 = |pos: u8| col.d1 >> d.component_at(c, pos) & 1 == 1;
        let (o1, o2) = match (in_d1(x.over_out), in_d1(x.under_out)) {
            (true, false) => (x.over_out, x.under_out),
            (false, true) => (x.under_out, x.over_out),
            _ => continue,
        };
        let right_to_left = o1 == (o2 + 1) % 4;
        let ahead = col.regions[d.quadrant(c, o2)];
        match (right_to_left, ahead) {
            (true, 0) => out.r0 += 1,
            (true, _) => out.r1 += 1,
            (false, 0) => out.l0 += 1,
            (false, _) => out.l1 += 1,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(s: &str) -> OrientedDiagram {
        OrientedDiagram::parse(s).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_colorings(&diag("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")).unwrap().len(), 4);
        assert_eq!(enumerate_colorings(&diag("unknots=3")).unwrap().len(), 16);
        assert_eq!(enumerate_colorings(&diag("unknots=1")).unwrap().len(), 4);
    }

    #[test]
    fn brute_force_agrees() {
        for s in ["X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", "X[4,1,3,2] X[2,3,1,4]", "X[1,1,2,2]", "unknots=2"] {
            let d = diag(s);
            let mut a: Vec<Vec<u8>> = enumerate_colorings(&d).unwrap().iter().map(|c| c.regions().to_vec()).collect();
            let mut b = brute_force_colorings(&d).unwrap();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{s}");
        }
        assert_eq!(brute_force_colorings(&diag("X[4,1,3,2] X[2,3,1,4]")).unwrap().len(), 8);
        assert_eq!(brute_force_colorings(&diag("X[1,1,2,2]")).unwrap().len(), 4);
    }

    #[test]
    fn triples_by_kind() {
        let d = diag("X[4,1,3,2] X[2,3,1,4]");
        for col in enumerate_colorings(&d).unwrap() {
            for t in col.triples(&d).unwrap() {
                match col.d1 {
                    0 => assert_eq!((t.y, t.z), (t.x, t.x)),
                    3 => assert_eq!((t.y, t.z), (t.x ^ 1, t.x ^ 1)),
                    _ => {}
                }
            }
            let comp = col.complement();
            assert_eq!(comp.complement(), col);
            for (t, u) in col.triples(&d).unwrap().into_iter().zip(comp.triples(&d).unwrap()) {
                assert_eq!((t.x ^ 1, t.y ^ 1, t.z ^ 1), (u.x, u.y, u.z));
            }
        }
    }

    #[test]
    fn census_balances() {
        let d = diag("X[4,1,3,2] X[2,3,1,4]");
        for col in enumerate_colorings(&d).unwrap() {
            let c = census(&d, &col);
            assert_eq!((c.r0, c.r1), (c.l1, c.l0));
        }
    }
}
