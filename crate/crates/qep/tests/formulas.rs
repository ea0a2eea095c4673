use qep::bracket::universal;
use qep::derived::{torus_formula, twist_formula};
use qep::fixtures::{reverse_component, torus, torus_antiparallel, twist_knot};
use qep::statesum::phi;

/// Sign of the crossings of a torus diagram, 1 for the crossingless one.
fn crossing_sign(d: &qep::diagram::OrientedDiagram) -> i64 {
    d.crossings().first().map_or(1, |c| c.sign as i64)
}

#[test]
fn torus_formula_matches_state_sum() {
    for i in 1..=5 {
        let k = universal(i).unwrap();
        for q in -5..=5i64 {
            let d = torus(q).unwrap();
            let f = torus_formula(q, crossing_sign(&d), &k);
            assert_eq!(f, phi(&d, &k).unwrap(), "q={q} bracket {i}");
            if q % 2 == 0 && q != 0 {
                let a = torus_antiparallel(q).unwrap();
                assert_eq!(torus_formula(q, crossing_sign(&a), &k), phi(&a, &k).unwrap(), "anti q={q} bracket {i}");
            } else {
                let r = reverse_component(&d, 0).unwrap();
                assert_eq!(crossing_sign(&r), crossing_sign(&d));
                assert_eq!(f, phi(&r, &k).unwrap(), "reversed q={q} bracket {i}");
            }
        }
    }
}

#[test]
fn twist_formula_matches_state_sum() {
    for i in 1..=5 {
        let k = universal(i).unwrap();
        for q in -5..=5i64 {
            let d = twist_knot(q).unwrap();
            let f = twist_formula(q, &k);
            assert_eq!(f, phi(&d, &k).unwrap(), "q={q} bracket {i}");
            assert_eq!(f, phi(&reverse_component(&d, 0).unwrap(), &k).unwrap(), "reversed q={q} bracket {i}");
        }
    }
}
