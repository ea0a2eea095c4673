//! Oriented link diagrams built from PD codes: orientation inference, crossing
//! signs, planar faces, smoothings, mirrors and Reidemeister-I kinks.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use regex::Regex;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("empty input")]
    Empty,
    #[error("edge label {label} occurs {count} time(s); every label must occur exactly twice")]
    LabelMultiplicity { label: u32, count: usize },
    #[error("disconnected diagram (only crossing-free unlinks may be split)")]
    Disconnected,
    #[error("cannot orient the component through edge {0}; add a sign annotation")]
    AmbiguousOrientation(u32),
    #[error("component through edge {0} enters under-strands from both ends")]
    InconsistentOrientation(u32),
    #[error("sign annotation at crossing {0} contradicts the inferred orientation")]
    SignMismatch(usize),
    #[error("rotation data is not planar: V - E + F = {0}")]
    NotPlanar(i64),
    #[error("no edge labelled {0}")]
    NoSuchEdge(u32),
    #[error("no face {0}")]
    NoSuchFace(usize),
}

/// One crossing of a PD code: four edge labels counterclockwise from the
/// incoming under-strand, with an optional sign annotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PdCrossing {
    pub labels: [u32; 4],
    pub sign: Option<i8>,
}

/// A planar-diagram code, possibly with extra crossing-free circles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PdCode {
    pub crossings: Vec<PdCrossing>,
    pub unknots: usize,
}

fn pd_regexes() -> &'static (Regex, Regex) {
    static RE: OnceLock<(Regex, Regex)> = OnceLock::new();
    RE.get_or_init(|| {
        (
            Regex::new(r"^X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\](?:\s*sign:([+-]))?").unwrap(),
            Regex::new(r"^unknots\s*=\s*(\d+)").unwrap(),
        )
    })
}

impl PdCode {
    pub fn new(crossings: Vec<[u32; 4]>) -> Self {
        PdCode { crossings: crossings.into_iter().map(|labels| PdCrossing { labels, sign: None }).collect(), unknots: 0 }
    }

    pub fn unlink(k: usize) -> Self {
        PdCode { crossings: vec![], unknots: k }
    }

    /// Parse `X[a,b,c,d]` tokens (optionally wrapped in `PD[...]`, optionally
    /// followed by `sign:+`/`sign:-`) and `unknots=<k>` directives.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let (x_re, u_re) = pd_regexes();
        let mut pd = PdCode::default();
        let mut seen_any = false;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            let mut rest = line.trim_start();
            while !rest.is_empty() {
                if let Some(m) = x_re.captures(rest) {
                    let labels = [1, 2, 3, 4].map(|i| m[i].parse::<u32>());
                    if labels.iter().any(|l| l.is_err()) {
                        return Err(DiagramError::Syntax(format!("label out of range in {}", &m[0])));
                    }
                    let sign = m.get(5).map(|s| if s.as_str() == "+" { 1 } else { -1 });
                    pd.crossings.push(PdCrossing { labels: labels.map(|l| l.unwrap()), sign });
                    rest = &rest[m[0].len()..];
                    seen_any = true;
                } else if let Some(m) = u_re.captures(rest) {
                    pd.unknots += m[1].parse::<usize>().map_err(|e| DiagramError::Syntax(e.to_string()))?;
                    rest = &rest[m[0].len()..];
                    seen_any = true;
                } else if let Some(r) = rest.strip_prefix("PD[") {
                    rest = r;
                } else if rest.starts_with(',') || rest.starts_with(']') {
                    rest = &rest[1..];
                } else {
                    let snippet: String = rest.chars().take(20).collect();
                    return Err(DiagramError::Syntax(format!("unexpected input at {snippet:?}")));
                }
                rest = rest.trim_start();
            }
        }
        if !seen_any {
            return Err(DiagramError::Empty);
        }
        pd.validate()?;
        Ok(pd)
    }

    fn validate(&self) -> Result<(), DiagramError> {
        if self.crossings.is_empty() && self.unknots == 0 {
            return Err(DiagramError::Empty);
        }
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for c in &self.crossings {
            for l in c.labels {
                *counts.entry(l).or_default() += 1;
            }
        }
        let mut bad: Vec<_> = counts.into_iter().filter(|&(_, n)| n != 2).collect();
        bad.sort();
        if let Some(&(label, count)) = bad.first() {
            return Err(DiagramError::LabelMultiplicity { label, count });
        }
        Ok(())
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.labels;
                match c.sign {
                    Some(s) => format!("X[{a},{b},{cc},{d}] sign:{}", if s > 0 { '+' } else { '-' }),
                    None => format!("X[{a},{b},{cc},{d}]"),
                }
            })
            .collect();
        if self.unknots > 0 {
            parts.push(format!("unknots={}", self.unknots));
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// A crossing with its four edge-ends in counterclockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    /// Edge index at each rotation position.
    pub ends: [usize; 4],
    pub under_in: u8,
    pub under_out: u8,
    pub over_in: u8,
    pub over_out: u8,
    pub sign: i8,
}

impl Crossing {
    /// Position pairs joined by the oriented smoothing (state A) and by the
    /// other smoothing (state B).
    pub fn smoothing_pairs(&self, b: bool) -> [(u8, u8); 2] {
        if b {
            [(self.under_in, self.over_in), (self.under_out, self.over_out)]
        } else {
            [(self.under_in, self.over_out), (self.over_in, self.under_out)]
        }
    }
}

/// An oriented edge between two crossing positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: u32,
    pub component: usize,
    /// (crossing, position) the edge leaves.
    pub tail: (usize, u8),
    /// (crossing, position) the edge enters.
    pub head: (usize, u8),
}

/// Combinatorial oriented link diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedDiagram {
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    /// Edges of each component in traversal order; empty for free circles.
    components: Vec<Vec<usize>>,
    free_loops: usize,
    /// Face of each dart `4 * crossing + position`: the face on the right
    /// when leaving the crossing along that dart.
    dart_face: Vec<usize>,
    num_faces: usize,
    base_face: usize,
}

/// A choice of smoothing per crossing: bit `c` set means state B at crossing `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct State(pub u64);

impl State {
    pub fn is_b(self, c: usize) -> bool {
        self.0 >> c & 1 == 1
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
        ra != rb
    }
}

impl OrientedDiagram {
    pub fn from_pd(pd: &PdCode) -> Result<Self, DiagramError> {
        pd.validate()?;
        if pd.crossings.is_empty() {
            return Ok(Self::unlink(pd.unknots));
        }
        if pd.unknots > 0 {
            return Err(DiagramError::Disconnected);
        }
        let n = pd.crossings.len();
        let mut labels: Vec<u32> = pd.crossings.iter().flat_map(|c| c.labels).collect();
        labels.sort_unstable();
        labels.dedup();
        let edge_of: HashMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

        let mut darts_of_edge = vec![Vec::with_capacity(2); labels.len()];
        for (c, x) in pd.crossings.iter().enumerate() {
            for p in 0..4 {
                darts_of_edge[edge_of[&x.labels[p]]].push(4 * c + p);
            }
        }
        let partner = |d: usize| -> usize {
            let e = edge_of[&pd.crossings[d / 4].labels[d % 4]];
            let ds = &darts_of_edge[e];
            if ds[0] == d {
                ds[1]
            } else {
                ds[0]
            }
        };
        let through = |d: usize| d - d % 4 + (d % 4 + 2) % 4;

        let mut uf = UnionFind::new(n);
        for ds in &darts_of_edge {
            uf.union(ds[0] / 4, ds[1] / 4);
        }
        if (0..n).any(|c| uf.find(c) != uf.find(0)) {
            return Err(DiagramError::Disconnected);
        }

        // Trace components as sequences of passes (entering dart, leaving dart).
        let mut visited = vec![false; 4 * n];
        let mut comp_passes: Vec<Vec<(usize, usize)>> = vec![];
        let mut order: Vec<usize> = (0..4 * n).collect();
        order.sort_by_key(|&d| pd.crossings[d / 4].labels[d % 4]);
        for &d0 in &order {
            if visited[d0] {
                continue;
            }
            let mut passes = vec![];
            let mut enter = d0;
            loop {
                let leave = through(enter);
                visited[enter] = true;
                visited[leave] = true;
                passes.push((enter, leave));
                enter = partner(leave);
                if enter == d0 {
                    break;
                }
            }
            comp_passes.push(passes);
        }

        let mut under_in = vec![u8::MAX; n];
        let mut over_in = vec![u8::MAX; n];
        for passes in &mut comp_passes {
            let min_label = passes.iter().map(|&(e, _)| pd.crossings[e / 4].labels[e % 4]).min().unwrap();
            let fwd = passes.iter().filter(|&&(e, _)| e % 4 == 0).count();
            let rev = passes.iter().filter(|&&(e, _)| e % 4 == 2).count();
            let forward = if fwd > 0 && rev > 0 {
                return Err(DiagramError::InconsistentOrientation(min_label));
            } else if fwd > 0 || rev > 0 {
                fwd > 0
            } else {
                orient_overpass_component(pd, passes, min_label)?
            };
            if !forward {
                *passes = passes.iter().rev().map(|&(e, l)| (l, e)).collect();
            }
            for &(e, _) in passes.iter() {
                let (c, p) = (e / 4, (e % 4) as u8);
                if p % 2 == 0 {
                    under_in[c] = p;
                } else {
                    over_in[c] = p;
                }
            }
        }

        let mut crossings = Vec::with_capacity(n);
        for (c, x) in pd.crossings.iter().enumerate() {
            let (ui, oi) = (under_in[c], over_in[c]);
            debug_assert!(ui == 0 && oi != u8::MAX);
            let sign: i8 = if oi == 3 { 1 } else { -1 };
            if let Some(s) = x.sign {
                if s != sign {
                    return Err(DiagramError::SignMismatch(c));
                }
            }
            crossings.push(Crossing {
                ends: x.labels.map(|l| edge_of[&l]),
                under_in: ui,
                under_out: (ui + 2) % 4,
                over_in: oi,
                over_out: (oi + 2) % 4,
                sign,
            });
        }

        let mut edges: Vec<Edge> = labels
            .iter()
            .map(|&label| Edge { label, component: usize::MAX, tail: (0, 0), head: (0, 0) })
            .collect();
        let mut components = vec![];
        comp_passes.sort_by_key(|ps| ps.iter().map(|&(e, _)| pd.crossings[e / 4].labels[e % 4]).min());
        for (k, passes) in comp_passes.iter().enumerate() {
            let mut comp = vec![];
            for &(_, leave) in passes {
                let enter = partner(leave);
                let e = edge_of[&pd.crossings[leave / 4].labels[leave % 4]];
                edges[e].component = k;
                edges[e].tail = (leave / 4, (leave % 4) as u8);
                edges[e].head = (enter / 4, (enter % 4) as u8);
                comp.push(e);
            }
            let start = comp.iter().enumerate().min_by_key(|&(_, &e)| edges[e].label).unwrap().0;
            comp.rotate_left(start);
            components.push(comp);
        }

        // Faces: orbits of d -> sigma(partner(d)), sigma = counterclockwise successor.
        let mut dart_face = vec![usize::MAX; 4 * n];
        let mut num_faces = 0;
        for d0 in 0..4 * n {
            if dart_face[d0] != usize::MAX {
                continue;
            }
            let mut d = d0;
            while dart_face[d] == usize::MAX {
                dart_face[d] = num_faces;
                let far = partner(d);
                d = far - far % 4 + (far % 4 + 1) % 4;
            }
            num_faces += 1;
        }
        let euler = n as i64 - labels.len() as i64 + num_faces as i64;
        if euler != 2 {
            return Err(DiagramError::NotPlanar(euler));
        }
        let (bc, bp) = edges[0].tail;
        let base_face = dart_face[4 * bc + bp as usize];
        Ok(OrientedDiagram { crossings, edges, components, free_loops: 0, dart_face, num_faces, base_face })
    }

    /// Crossing-free diagram of `k` disjoint circles.
    pub fn unlink(k: usize) -> Self {
        OrientedDiagram {
            crossings: vec![],
            edges: vec![],
            components: vec![vec![]; k],
            free_loops: k,
            dart_face: vec![],
            num_faces: k + 1,
            base_face: 0,
        }
    }

    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        Self::from_pd(&PdCode::parse(text)?)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn num_faces(&self) -> usize {
        self.num_faces
    }

    pub fn base_face(&self) -> usize {
        self.base_face
    }

    pub fn with_base_face(&self, f: usize) -> Result<Self, DiagramError> {
        if f >= self.num_faces {
            return Err(DiagramError::NoSuchFace(f));
        }
        Ok(OrientedDiagram { base_face: f, ..self.clone() })
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Numbers of positive and negative crossings.
    pub fn sign_counts(&self) -> (usize, usize) {
        let p = self.crossings.iter().filter(|c| c.sign > 0).count();
        (p, self.crossings.len() - p)
    }

    /// Component of the strand at a crossing position.
    pub fn component_at(&self, c: usize, pos: u8) -> usize {
        self.edges[self.crossings[c].ends[pos as usize]].component
    }

    /// Face between positions `i` and `i + 1` (counterclockwise) at a crossing.
    pub fn quadrant(&self, c: usize, i: u8) -> usize {
        self.dart_face[4 * c + ((i as usize + 1) % 4)]
    }

    /// Face on the right and on the left of each oriented edge, with the
    /// edge's component; crossing-free circles separate the outer face 0
    /// from their own inner face.
    pub fn adjacencies(&self) -> Vec<(usize, usize, usize)> {
        if self.crossings.is_empty() {
            return (0..self.free_loops).map(|k| (0, k + 1, k)).collect();
        }
        self.edges
            .iter()
            .map(|e| {
                let right = self.dart_face[4 * e.tail.0 + e.tail.1 as usize];
                let left = self.dart_face[4 * e.head.0 + e.head.1 as usize];
                (right, left, e.component)
            })
            .collect()
    }

    /// Face boundaries as cyclic sequences of darts `(crossing, position)`.
    pub fn faces(&self) -> Vec<Vec<(usize, u8)>> {
        let mut out = vec![vec![]; if self.crossings.is_empty() { 0 } else { self.num_faces }];
        for (d, &f) in self.dart_face.iter().enumerate() {
            out[f].push((d / 4, (d % 4) as u8));
        }
        out
    }

    /// Number of circles after smoothing every crossing according to `s`.
    pub fn smooth_and_count(&self, s: State) -> usize {
        let mut uf = UnionFind::new(self.edges.len());
        let mut circles = self.edges.len();
        for (c, x) in self.crossings.iter().enumerate() {
            for (p, q) in x.smoothing_pairs(s.is_b(c)) {
                if uf.union(x.ends[p as usize], x.ends[q as usize]) {
                    circles -= 1;
                }
            }
        }
        circles + self.free_loops
    }

    /// Circle counts for all `2^n` states, indexed by the state bitmask.
    pub fn circle_table(&self) -> Vec<u8> {
        (0..1u64 << self.crossings.len()).map(|m| self.smooth_and_count(State(m)) as u8).collect()
    }

    /// Diagram with every crossing changed.
    pub fn mirror(&self) -> Self {
        let mut m = self.clone();
        for x in &mut m.crossings {
            std::mem::swap(&mut x.under_in, &mut x.over_in);
            std::mem::swap(&mut x.under_out, &mut x.over_out);
            x.sign = -x.sign;
        }
        m
    }

    /// PD code of the diagram, each tuple starting at its incoming under-strand.
    pub fn to_pd(&self) -> PdCode {
        if self.crossings.is_empty() {
            return PdCode::unlink(self.free_loops);
        }
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let labels = [0, 1, 2, 3].map(|k| self.edges[x.ends[(x.under_in as usize + k) % 4]].label);
                PdCrossing { labels, sign: None }
            })
            .collect();
        PdCode { crossings, unknots: 0 }
    }

    /// Insert a Reidemeister-I kink of the given sign on the edge with this
    /// label; `under_first` chooses whether the strand first passes under.
    /// Labels above the insertion point shift by 2.
    pub fn apply_r1(&self, label: u32, sign: i8, under_first: bool) -> Result<Self, DiagramError> {
        if self.crossings.is_empty() {
            if self.free_loops != 1 || label != 1 {
                return Err(DiagramError::NoSuchEdge(label));
            }
            return Self::from_pd(&PdCode { crossings: vec![kink(1, 2, 1, sign, under_first)], unknots: 0 });
        }
        let e = self.edges.iter().position(|e| e.label == label).ok_or(DiagramError::NoSuchEdge(label))?;
        let head = self.edges[e].head;
        let mut pd = self.to_pd();
        for (c, x) in pd.crossings.iter_mut().enumerate() {
            let rot = self.crossings[c].under_in as usize;
            for (k, l) in x.labels.iter_mut().enumerate() {
                if *l > label {
                    *l += 2;
                } else if *l == label && (c, ((rot + k) % 4) as u8) == head {
                    *l = label + 2;
                }
            }
        }
        pd.crossings.push(kink(label, label + 1, label + 2, sign, under_first));
        Self::from_pd(&pd)
    }
}

fn kink(inc: u32, lp: u32, out: u32, sign: i8, under_first: bool) -> PdCrossing {
    let labels = match (under_first, sign > 0) {
        (true, true) => [inc, out, lp, lp],
        (true, false) => [inc, lp, lp, out],
        (false, true) => [lp, lp, out, inc],
        (false, false) => [lp, inc, out, lp],
    };
    PdCrossing { labels, sign: None }
}

/// Direction of a component that never passes under: from sign annotations,
/// otherwise from consecutive edge labels.
fn orient_overpass_component(pd: &PdCode, passes: &[(usize, usize)], min_label: u32) -> Result<bool, DiagramError> {
    let mut verdict = None;
    for &(e, _) in passes {
        if let Some(s) = pd.crossings[e / 4].sign {
            let fwd = (e % 4 == 3) == (s > 0);
            if verdict.is_some_and(|v| v != fwd) {
                return Err(DiagramError::SignMismatch(e / 4));
            }
            verdict = Some(fwd);
        }
    }
    if let Some(v) = verdict {
        return Ok(v);
    }
    // Edge labels along the traversal: the edge entered at each pass.
    let seq: Vec<u32> = passes.iter().map(|&(e, _)| pd.crossings[e / 4].labels[e % 4]).collect();
    let mut sorted = seq.clone();
    sorted.sort_unstable();
    if sorted.len() < 3 {
        return Err(DiagramError::AmbiguousOrientation(min_label));
    }
    let succ = |l: u32| sorted[(sorted.binary_search(&l).unwrap() + 1) % sorted.len()];
    let m = seq.len();
    if (0..m).all(|i| seq[(i + 1) % m] == succ(seq[i])) {
        Ok(true)
    } else if (0..m).all(|i| seq[i] == succ(seq[(i + 1) % m])) {
        Ok(false)
    } else {
        Err(DiagramError::AmbiguousOrientation(min_label))
    }
}
