//! Bundled diagrams and programmatic families: `T(2,q)` torus links and
//! `TW(q)` twist knots, built from a top-to-bottom Morse description.

use crate::diagram::{DiagramError, OrientedDiagram, PdCode, PdCrossing};

/// A crossing of the builder: segment ids at SW, SE, NE, NW (counterclockwise).
struct BuiltCrossing {
    slots: [usize; 4],
    /// True when the NW–SE strand passes over.
    nw_over: bool,
}

/// Builds an unoriented diagram from caps, crossings and cups read top to
/// bottom, then orients every component by walking it once.
#[derive(Default)]
pub struct MorseBuilder {
    parent: Vec<usize>,
    open: Vec<usize>,
    crossings: Vec<BuiltCrossing>,
}

impl MorseBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Open a new arc occupying positions `i` and `i + 1`.
    pub fn cap(&mut self, i: usize) -> &mut Self {
        let s = self.fresh();
        self.open.splice(i..i, [s, s]);
        self
    }

    /// Cross the strands at positions `i` and `i + 1`; `left_over` makes the
    /// strand arriving from the upper left pass over.
    pub fn cross(&mut self, i: usize, left_over: bool) -> &mut Self {
        let (sw, se) = (self.fresh(), self.fresh());
        self.crossings.push(BuiltCrossing { slots: [sw, se, self.open[i + 1], self.open[i]], nw_over: left_over });
        self.open[i] = sw;
        self.open[i + 1] = se;
        self
    }

    /// `k` half-twists at positions `i`, `i + 1`; the sign of `k` picks the handedness.
    pub fn twist(&mut self, i: usize, k: i64) -> &mut Self {
        for _ in 0..k.unsigned_abs() {
            self.cross(i, k > 0);
        }
        self
    }

    /// Close the strands at positions `i` and `i + 1`.
    pub fn cup(&mut self, i: usize) -> &mut Self {
        let (a, b) = (self.open[i], self.open[i + 1]);
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
        self.open.drain(i..i + 2);
        self
    }

    pub fn build(&mut self) -> Result<PdCode, DiagramError> {
        assert!(self.open.is_empty(), "unclosed strands");
        let n = self.crossings.len();
        let segs: Vec<usize> = (0..self.parent.len()).map(|s| self.find(s)).collect();
        let mut occ: Vec<Vec<(usize, usize)>> = vec![vec![]; self.parent.len()];
        for (c, x) in self.crossings.iter().enumerate() {
            for (p, &s) in x.slots.iter().enumerate() {
                occ[segs[s]].push((c, p));
            }
        }
        let roots: Vec<usize> = (0..segs.len()).filter(|&s| segs[s] == s).collect();
        let free = roots.iter().filter(|&&r| occ[r].is_empty()).count();

        let mut label = vec![0u32; segs.len()];
        let mut next = 1;
        let mut entered = vec![[false; 4]; n];
        for c0 in 0..n {
            for p0 in 0..4 {
                if entered[c0][p0] || entered[c0][(p0 + 2) % 4] {
                    continue;
                }
                let (mut c, mut p) = (c0, p0);
                while !entered[c][p] {
                    entered[c][p] = true;
                    let out = (p + 2) % 4;
                    let s = segs[self.crossings[c].slots[out]];
                    if label[s] == 0 {
                        label[s] = next;
                        next += 1;
                    }
                    let o = &occ[s];
                    (c, p) = if o[0] == (c, out) { o[1] } else { o[0] };
                }
            }
        }
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(c, x)| {
                let under = if x.nw_over { [0, 2] } else { [1, 3] };
                let start = if entered[c][under[0]] { under[0] } else { under[1] };
                PdCrossing { labels: [0, 1, 2, 3].map(|k| label[segs[x.slots[(start + k) % 4]]]), sign: None }
            })
            .collect();
        Ok(PdCode { crossings, unknots: if n == 0 { free } else { 0 } })
    }
}

/// Standard diagram of `T(2, q)`, both strands running the same way through
/// the twist region. Positive `q` gives positive crossings.
pub fn torus(q: i64) -> Result<OrientedDiagram, DiagramError> {
    let pd = MorseBuilder::new().cap(0).cap(2).twist(1, q).cup(0).cup(0).build()?;
    let d = OrientedDiagram::from_pd(&pd)?;
    if d.num_crossings() > 0 && d.crossings()[0].sign as i64 * q.signum() < 0 {
        return Ok(d.mirror());
    }
    Ok(d)
}

/// `T(2, q)` for even `q`, oriented so the two strands of the twist region
/// run in opposite directions.
pub fn torus_antiparallel(q: i64) -> Result<OrientedDiagram, DiagramError> {
    let d = torus(q)?;
    if d.num_components() < 2 {
        return Ok(d);
    }
    reverse_component(&d, 1)
}

/// Standard diagram of the twist knot `TW(q)`: `q` half-twists closed off by
/// a two-crossing clasp, so `TW(1)` is the right trefoil and `TW(2)` the
/// figure-eight.
pub fn twist_knot(q: i64) -> Result<OrientedDiagram, DiagramError> {
    let pd = MorseBuilder::new().cap(0).cap(2).twist(1, q).twist(0, -2).cup(1).cup(0).build()?;
    OrientedDiagram::from_pd(&pd)
}

/// The same diagram with one component's orientation reversed.
pub fn reverse_component(d: &OrientedDiagram, k: usize) -> Result<OrientedDiagram, DiagramError> {
    let pd = d.to_pd();
    let crossings = pd
        .crossings
        .iter()
        .zip(d.crossings())
        .enumerate()
        .map(|(c, (x, cr))| {
            let under = d.component_at(c, cr.under_in) == k;
            let over = d.component_at(c, cr.over_in) == k;
            let labels = if under { [2, 3, 0, 1].map(|i| x.labels[i]) } else { x.labels };
            PdCrossing { labels, sign: Some(if under != over { -cr.sign } else { cr.sign }) }
        })
        .collect();
    OrientedDiagram::from_pd(&PdCode { crossings, unknots: pd.unknots })
}

pub const TREFOIL: &str = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";
pub const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
pub const HOPF: &str = "X[4,1,3,2] X[2,3,1,4]";
pub const L8A20_00: &str = "X[5,1,6,4] X[1,5,2,12] X[9,3,10,2] X[3,9,4,8] X[13,6,14,7] X[7,16,8,13] X[15,10,16,11] X[11,14,12,15]";

/// A named diagram of the bundled corpus.
pub struct Fixture {
    pub name: String,
    pub diagram: OrientedDiagram,
}

pub fn l8a20_00() -> OrientedDiagram {
    OrientedDiagram::parse(L8A20_00).expect("bundled diagram")
}

/// `L8a20{1;0}`: the other orientation class, reversing the component that
/// links both others.
pub fn l8a20_10() -> OrientedDiagram {
    let d = l8a20_00();
    let middle = (0..d.num_components())
        .find(|&k| {
            let others: std::collections::BTreeSet<usize> = (0..d.num_crossings())
                .filter(|&c| {
                    let x = &d.crossings()[c];
                    d.component_at(c, x.under_in) == k || d.component_at(c, x.over_in) == k
                })
                .flat_map(|c| [d.component_at(c, d.crossings()[c].under_in), d.component_at(c, d.crossings()[c].over_in)])
                .filter(|&j| j != k)
                .collect();
            others.len() == 2
        })
        .expect("L8a20 has a middle component");
    reverse_component(&d, middle).expect("bundled diagram")
}

/// Every bundled diagram, small enough for exhaustive property checks.
pub fn corpus() -> Vec<Fixture> {
    let p = |s: &str| OrientedDiagram::parse(s).expect("bundled diagram");
    let f = |name: &str, diagram: OrientedDiagram| Fixture { name: name.to_string(), diagram };
    let mut out = vec![
        f("unknot", OrientedDiagram::unlink(1)),
        f("unlink2", OrientedDiagram::unlink(2)),
        f("unlink3", OrientedDiagram::unlink(3)),
        f("kink+", p("X[1,2,2,1]")),
        f("trefoil", p(TREFOIL)),
        f("trefoil*", p(TREFOIL).mirror()),
        f("figure-eight", p(FIGURE_EIGHT)),
        f("hopf", p(HOPF)),
        f("hopf-", reverse_component(&p(HOPF), 1).expect("bundled diagram")),
        f("L8a20{0;0}", l8a20_00()),
        f("L8a20{1;0}", l8a20_10()),
    ];
    for (name, q) in [("T(2,4)", 4), ("T(2,5)", 5), ("T(2,-4)", -4)] {
        out.push(f(name, torus(q).expect("generated diagram")));
    }
    out.push(f("T(2,4)anti", torus_antiparallel(4).expect("generated diagram")));
    out.push(f("TW(3)", twist_knot(3).expect("generated diagram")));
    out.push(f("TW(-2)", twist_knot(-2).expect("generated diagram")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_shapes() {
        for q in -5..=5i64 {
            let d = torus(q).unwrap();
            assert_eq!(d.num_crossings() as i64, q.abs());
            assert_eq!(d.num_components(), if q % 2 == 0 { 2 } else { 1 });
            assert_eq!(d.writhe(), q, "q={q}");
            if q % 2 == 0 && q != 0 {
                assert_eq!(torus_antiparallel(q).unwrap().writhe(), -q);
            }
        }
    }

    #[test]
    fn twist_shapes() {
        for q in -4..=4i64 {
            let d = twist_knot(q).unwrap();
            assert_eq!(d.num_crossings() as i64, q.abs() + 2);
            assert_eq!(d.num_components(), 1);
        }
    }

    #[test]
    fn reversal_round_trips() {
        let d = OrientedDiagram::parse(HOPF).unwrap();
        let r = reverse_component(&d, 0).unwrap();
        assert_eq!(r.writhe(), -d.writhe());
        assert_eq!(reverse_component(&r, 0).unwrap().writhe(), d.writhe());
    }

    #[test]
    fn l8a20_orientations() {
        assert_eq!(l8a20_00().num_components(), 3);
        assert_eq!(l8a20_10().num_crossings(), 8);
    }
}
