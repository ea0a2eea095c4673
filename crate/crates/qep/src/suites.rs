//! Named verification suites over a list of diagrams. Each failure carries
//! enough context (fixture name, PD code, bracket, coloring) to reproduce it.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bracket::{check_entry_identities, enumerate_over_prime_field, universal, Bracket, EnumerationMode};
use crate::coloring::{enumerate_colorings, tc_colorings};
use crate::derived::{
    collapse_support, kauffman_oracle, linking_number, torus_formula, twist_formula, Profile,
};
use crate::diagram::{OrientedDiagram, State};
use crate::fixtures::{reverse_component, torus, torus_antiparallel, twist_knot, Fixture};
use crate::laurent::LaurentPoly;
use crate::statesum::{beta_bar_mirror_check, beta_per_state, phi, phi_tc, StateSpace};

pub const SUITES: [&str; 7] = ["axioms", "identities", "complementary", "mirror", "linking", "formulas", "r1"];

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn error(&mut self, what: String) {
        self.checks += 1;
        self.failures.push(what);
    }
}

fn brackets() -> Vec<Bracket<LaurentPoly>> {
    (1..=5).map(|i| universal(i).expect("index in range")).collect()
}

fn repro(f: &Fixture) -> String {
    format!("{} [{}]", f.name, f.diagram.to_pd())
}

/// Run a suite by name; `None` for an unknown name.
pub fn run(name: &str, corpus: &[Fixture]) -> Option<SuiteReport> {
    Some(match name {
        "axioms" => axioms(),
        "identities" => identities(corpus),
        "complementary" => complementary(corpus),
        "mirror" => mirror(corpus),
        "linking" => linking(corpus),
        "formulas" => formulas(5),
        "r1" => r1(corpus, 3),
        _ => return None,
    })
}

/// Axioms, types and factorization of the universal brackets, plus the
/// finite-field counts for p = 2, 3.
pub fn axioms() -> SuiteReport {
    let mut r = SuiteReport::new("axioms");
    for (i, k) in brackets().iter().enumerate() {
        match k.tensors().axiom_status() {
            Ok(rep) => r.check(rep.failures.is_empty(), || format!("universal({}) fails {:?}", i + 1, rep.failures)),
            Err(e) => r.error(format!("universal({}): {e}", i + 1)),
        }
        let t = k.classify_type();
        r.check(t.len() == 1 && t.contains(&(i + 1)), || format!("universal({}) classified as {t:?}", i + 1));
        match k.factor_through_universal() {
            Ok((j, hom)) => {
                let image = universal(j).expect("index in range").map(|p| hom.apply(p).expect("units"));
                r.check(image.as_ref().ok() == Some(k), || format!("universal({}) does not factor back", i + 1));
            }
            Err(e) => r.error(format!("universal({}): {e}", i + 1)),
        }
    }
    for (p, want) in [(2, 1), (3, 32)] {
        match enumerate_over_prime_field(p, EnumerationMode::Homs) {
            Ok(e) => {
                r.check(e.count() == want, || format!("Z/{p}: {} brackets, expected {want}", e.count()));
                for k in &e.brackets {
                    let ok = k.tensors().axiom_status().map(|a| a.failures.is_empty()).unwrap_or(false);
                    r.check(ok, || format!("Z/{p} bracket fails axioms: {k}"));
                }
            }
            Err(e) => r.error(format!("Z/{p}: {e}")),
        }
    }
    r
}

/// Entry identities, Φ1 = Φ3 and Φ2 = Φ4, the Kauffman specialization of
/// trivial and checkerboard colorings, and the corollaries relating Φ to the
/// Jones polynomial and linking numbers on every pair.
pub fn identities(corpus: &[Fixture]) -> SuiteReport {
    let mut r = SuiteReport::new("identities");
    for (i, k) in brackets().iter().enumerate() {
        let rep = check_entry_identities(k);
        r.check(rep.all_hold(), || format!("universal({}): {rep:?}", i + 1));
    }
    match enumerate_over_prime_field(3, EnumerationMode::Homs) {
        Ok(e) => {
            for k in &e.brackets {
                let rep = check_entry_identities(k);
                r.check(rep.all_hold(), || format!("{k}: {rep:?}"));
            }
        }
        Err(e) => r.error(format!("Z/3: {e}")),
    }
    let mut profiles = vec![];
    for f in corpus {
        let p = match Profile::of(&f.diagram) {
            Ok(p) => p,
            Err(e) => {
                r.error(format!("{}: {e}", repro(f)));
                continue;
            }
        };
        r.check(p.phi[0] == p.phi[2], || format!("Φ1 != Φ3 on {}", repro(f)));
        r.check(p.phi[1] == p.phi[3], || format!("Φ2 != Φ4 on {}", repro(f)));
        tc_kauffman(&mut r, f);
        let tc: Vec<_> = brackets().iter().map(|k| phi_tc(&f.diagram, k).ok()).collect();
        profiles.push((f, p, tc));
    }
    for (a, (fa, pa, ta)) in profiles.iter().enumerate() {
        for (fb, pb, tb) in &profiles[a + 1..] {
            let c = pa.compare(pb);
            let mirror_jones = pa.jones == pb.jones.mirror();
            for i in 0..5 {
                if c.phi_equal[i] {
                    r.check(c.lk_equal, || format!("Φ{} equal but LK differs: {} / {}", i + 1, fa.name, fb.name));
                    // Φ2 and Φ4 cannot tell a diagram from its mirror image.
                    let jones_ok = c.jones_equal || (i % 2 == 1 && mirror_jones);
                    r.check(jones_ok, || format!("Φ{} equal but J differs: {} / {}", i + 1, fa.name, fb.name));
                }
            }
            for i in 0..5 {
                let want = c.jones_equal || (i % 2 == 1 && mirror_jones);
                r.check((ta[i] == tb[i]) == want, || {
                    format!("{} / {}: Φ_TC{} equality disagrees with J", fa.name, fb.name, i + 1)
                });
            }
            let (ka, kb) = (fa.diagram.num_components(), fb.diagram.num_components());
            if ka == 1 && kb == 1 {
                for i in [0, 2, 4] {
                    r.check(c.phi_equal[i] == c.jones_equal, || {
                        format!("knots {} / {}: Φ{} equality != J equality", fa.name, fb.name, i + 1)
                    });
                }
                for i in [1, 3] {
                    let want = c.jones_equal || mirror_jones;
                    r.check(c.phi_equal[i] == want, || {
                        format!("knots {} / {}: Φ{} equality != J equality up to mirror", fa.name, fb.name, i + 1)
                    });
                }
            }
        }
    }
    r
}

fn tc_kauffman(r: &mut SuiteReport, f: &Fixture) {
    let oracle = match kauffman_oracle(&f.diagram) {
        Ok(o) => o,
        Err(e) => return r.error(format!("{}: {e}", repro(f))),
    };
    let inverted = oracle.map_exponents(|e| vec![-e[0]]);
    let (Ok(space), Ok(cols)) = (StateSpace::new(&f.diagram), tc_colorings(&f.diagram)) else {
        return r.error(format!("{}: too large or uncolorable", repro(f)));
    };
    for (i, k) in brackets().iter().enumerate() {
        for c in &cols {
            let b = space.beta(c, k.tensors()).expect("valid coloring");
            // Brackets 2 and 4 read the checkerboard coloring through x -> x^-1.
            let want = if c.is_trivial() || i % 2 == 0 { &oracle } else { &inverted };
            let got = collapse_support(&b);
            r.check(got.as_ref().ok() == Some(want), || {
                format!("TC β of {} under universal({}) with D1={:b}: {b}", repro(f), i + 1, c.d1)
            });
        }
    }
}

/// β(C) = β(C̄) for every coloring and universal bracket.
pub fn complementary(corpus: &[Fixture]) -> SuiteReport {
    let mut r = SuiteReport::new("complementary");
    for_each_beta(&mut r, corpus, |r, f, i, c, space, k| {
        let (b, bc) = (space.beta(c, k).expect("valid"), space.beta(&c.complement(), k).expect("valid"));
        r.check(b == bc, || format!("{} universal({}) a={} D1={:b}", repro(f), i, c.a, c.d1));
    });
    r
}

fn for_each_beta(
    r: &mut SuiteReport,
    corpus: &[Fixture],
    mut body: impl FnMut(
        &mut SuiteReport,
        &Fixture,
        usize,
        &crate::coloring::Coloring,
        &StateSpace,
        &crate::bracket::BracketTensors<LaurentPoly>,
    ),
) {
    let ks = brackets();
    for f in corpus {
        let (Ok(space), Ok(cols)) = (StateSpace::new(&f.diagram), enumerate_colorings(&f.diagram)) else {
            r.error(format!("{}: too large or uncolorable", repro(f)));
            continue;
        };
        for (i, k) in ks.iter().enumerate() {
            for c in &cols {
                body(r, f, i + 1, c, &space, k.tensors());
            }
        }
    }
}

/// β under the bar transform equals β of the mirror, for universal(5).
pub fn mirror(corpus: &[Fixture]) -> SuiteReport {
    let mut r = SuiteReport::new("mirror");
    let k = universal(5).expect("index in range");
    for f in corpus {
        let Ok(cols) = enumerate_colorings(&f.diagram) else {
            r.error(format!("{}: uncolorable", repro(f)));
            continue;
        };
        for c in &cols {
            match beta_bar_mirror_check(&f.diagram, c, &k) {
                Ok(ok) => r.check(ok, || format!("{} a={} D1={:b}", repro(f), c.a, c.d1)),
                Err(e) => r.error(format!("{}: {e}", repro(f))),
            }
        }
    }
    r
}

/// Augmentation (-2)^components, x2/x3 degrees equal to lk(D1, D2), and
/// total degree 0 of every state monomial.
pub fn linking(corpus: &[Fixture]) -> SuiteReport {
    let mut r = SuiteReport::new("linking");
    for_each_beta(&mut r, corpus, |r, f, i, c, space, k| {
        let b = space.beta(c, k).expect("valid");
        let aug = BigInt::from(-2).pow(f.diagram.num_components() as u32);
        r.check(b.augmentation() == aug, || format!("augmentation of {} universal({i}) D1={:b}: {b}", repro(f), c.d1));
        let lk = linking_number(&f.diagram, c.d1) as i32;
        let ok = b.terms().all(|(e, _)| e[1] == lk && e[2] == lk);
        r.check(ok, || format!("x2/x3 degree != lk={lk} on {} universal({i}) D1={:b}: {b}", repro(f), c.d1));
        for s in 0..1u64 << f.diagram.num_crossings() {
            let m = beta_per_state(&f.diagram, c, State(s), k).expect("valid");
            r.check(m.total_degree() == Ok(0), || format!("state {s:b} of {} universal({i}): {m}", repro(f)));
        }
    });
    r
}

fn crossing_sign(d: &OrientedDiagram) -> i64 {
    d.crossings().first().map_or(1, |c| c.sign as i64)
}

/// Torus and twist closed forms against the state sum for |q| <= `max_q`.
pub fn formulas(max_q: i64) -> SuiteReport {
    let mut r = SuiteReport::new("formulas");
    for (i, k) in brackets().iter().enumerate() {
        let i = i + 1;
        for q in -max_q..=max_q {
            let mut torus_diagrams = vec![torus(q)];
            if q % 2 == 0 && q != 0 {
                torus_diagrams.push(torus_antiparallel(q));
            } else {
                torus_diagrams.push(torus(q).and_then(|d| reverse_component(&d, 0)));
            }
            for d in torus_diagrams {
                let d = d.expect("generated diagram");
                let want = torus_formula(q, crossing_sign(&d), k);
                r.check(phi(&d, k).ok() == Some(want), || format!("T(2,{q}) universal({i}) [{}]", d.to_pd()));
            }
            let d = twist_knot(q).expect("generated diagram");
            let want = twist_formula(q, k);
            for d in [reverse_component(&d, 0).expect("generated diagram"), d] {
                r.check(phi(&d, k).ok().as_ref() == Some(&want), || format!("TW({q}) universal({i}) [{}]", d.to_pd()));
            }
        }
    }
    r
}

/// Φ is unchanged by kinks of both signs inserted at `edges` random edges.
pub fn r1(corpus: &[Fixture], edges: usize) -> SuiteReport {
    let mut r = SuiteReport::new("r1");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let ks = brackets();
    for f in corpus {
        let d = &f.diagram;
        let labels: Vec<u32> = match (d.num_crossings(), d.num_components()) {
            (0, 1) => vec![1],
            (0, _) => continue,
            _ => d.edges().iter().map(|e| e.label).collect(),
        };
        let Ok(before) = ks.iter().map(|k| phi(d, k)).collect::<Result<Vec<_>, _>>() else {
            r.error(format!("{}: too large", repro(f)));
            continue;
        };
        for _ in 0..edges {
            let label = labels[rng.gen_range(0..labels.len())];
            let under_first: bool = rng.gen();
            for sign in [1i8, -1] {
                let kinked = match d.apply_r1(label, sign, under_first) {
                    Ok(k) => k,
                    Err(e) => {
                        r.error(format!("{}: kink at {label}: {e}", repro(f)));
                        continue;
                    }
                };
                for (i, (k, p)) in ks.iter().zip(&before).enumerate() {
                    let ok = phi(&kinked, k).ok().as_ref() == Some(p);
                    r.check(ok, || format!("{} kink sign {sign} at edge {label}, universal({})", repro(f), i + 1));
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::corpus;

    #[test]
    fn every_suite_passes_on_the_corpus() {
        let c = corpus();
        for name in SUITES {
            let r = run(name, &c).unwrap();
            assert!(r.passed(), "{name}: {:?}", &r.failures[..r.failures.len().min(3)]);
            assert!(r.checks > 0, "{name}");
        }
        assert!(run("nonsense", &c).is_none());
    }
}
