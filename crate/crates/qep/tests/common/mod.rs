#![allow(dead_code)]

use std::collections::HashMap;
use std::path::Path;

use qep::laurent::LaurentPoly;
use qep::statesum::EnhancementPolynomial;

/// Named exponent polynomials from a `name = polynomial` data file.
pub struct Table(HashMap<String, LaurentPoly>);

impl Table {
    pub fn load(file: &str) -> Table {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(file);
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let map = text
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .map(|l| {
                let (k, v) = l.split_once(" = ").expect("name = polynomial");
                (k.trim().to_string(), LaurentPoly::parse(v, 5).unwrap_or_else(|e| panic!("{k}: {e}")))
            })
            .collect();
        Table(map)
    }

    pub fn get(&self, k: &str) -> &LaurentPoly {
        &self.0[k]
    }

    /// `Σ m·u^name` as an enhancement polynomial.
    pub fn phi(&self, terms: &[(u64, &str)]) -> EnhancementPolynomial<LaurentPoly> {
        EnhancementPolynomial::from_entries(terms.iter().map(|(m, k)| (self.get(k).clone(), *m)))
    }
}

/// Expected Φ of L8a20{0;0} and L8a20{1;0} for universal brackets 1..=5.
pub fn l8a20_expected(t: &Table) -> [Vec<EnhancementPolynomial<LaurentPoly>>; 2] {
    let p1_00 = t.phi(&[(4, "a"), (4, "b"), (4, "c"), (4, "d")]);
    let p2_00 = t.phi(&[(4, "a"), (4, "b"), (2, "c"), (2, "d"), (2, "e"), (2, "f")]);
    let p1_10 = t.phi(&[(4, "a"), (4, "b"), (4, "i"), (4, "j")]);
    let p2_10 = t.phi(&[(4, "a"), (4, "b"), (2, "i"), (2, "j"), (2, "k"), (2, "l")]);
    let p5 = t.phi(&[(8, "a"), (4, "g"), (4, "h")]);
    [
        vec![p1_00.clone(), p2_00.clone(), p1_00, p2_00, p5.clone()],
        vec![p1_10.clone(), p2_10.clone(), p1_10, p2_10, p5],
    ]
}

pub const L8A20_JONES: &str = "-1*t^(-9/2) + 1*t^(-7/2) + -3*t^(-5/2) + -1*t^(-1/2) + -1*t^(1/2) + -3*t^(5/2) + 1*t^(7/2) + -1*t^(9/2)";

pub const L8A20_LK: [i64; 20] = [-2, -2, -2, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 2, 2];

/// Expected Φ of the 15-crossing link with trivial Jones polynomial, by
/// universal bracket.
pub fn thistlethwaite_expected(t: &Table) -> Vec<EnhancementPolynomial<LaurentPoly>> {
    let p12 = t.phi(&[(4, "a"), (4, "b"), (4, "c"), (4, "d")]);
    let p34 = t.phi(&[(4, "a"), (2, "c"), (2, "d"), (2, "e"), (2, "f"), (2, "g"), (2, "h")]);
    let p5 = t.phi(&[(8, "a"), (4, "i"), (4, "j")]);
    vec![p12.clone(), p12, p34.clone(), p34, p5]
}
