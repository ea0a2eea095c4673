mod common;

use common::{l8a20_expected, Table, L8A20_JONES, L8A20_LK};
use qep::bracket::universal;
use qep::derived::{compare, jones, jones_from_beta, lk_multiset, JonesPoly};
use qep::fixtures::{l8a20_00, l8a20_10};
use qep::statesum::phi;

#[test]
fn phi_matches_listed_values() {
    let t = Table::load("l8a20_polynomials.txt");
    let expected = l8a20_expected(&t);
    for (d, exp) in [l8a20_00(), l8a20_10()].iter().zip(&expected) {
        for i in 1..=5 {
            assert_eq!(&phi(d, &universal(i).unwrap()).unwrap(), &exp[i - 1], "bracket {i}");
        }
    }
}

#[test]
fn jones_matches_listed_value() {
    let want = JonesPoly::parse(L8A20_JONES).unwrap();
    for d in [l8a20_00(), l8a20_10()] {
        assert_eq!(jones(&d).unwrap(), want);
        for i in 1..=5 {
            assert_eq!(jones_from_beta(&d, i).unwrap(), want, "bracket {i}");
        }
    }
}

#[test]
fn linking_multisets_agree() {
    let (a, b) = (lk_multiset(&l8a20_00()), lk_multiset(&l8a20_10()));
    assert_eq!(a, b);
    assert_eq!(a.0, vec![-2, -2, 0, 0, 0, 0, 2, 2]);
    // The listed multiset has 20 entries; a 3-component link has 8 subsets.
    assert_ne!(a.0.len(), L8A20_LK.len());
}

#[test]
fn pair_lies_in_the_first_four_sets_only() {
    let c = compare(&l8a20_00(), &l8a20_10()).unwrap();
    assert!(c.jones_equal && c.lk_equal);
    for i in 1..=4 {
        assert!(c.in_x(i), "bracket {i}");
    }
    assert!(!c.in_x(5));
}
