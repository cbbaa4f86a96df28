use super::*;
use crate::spaces::{make_space, Family};

#[test]
fn theorem31_on_two_spaces() {
    for space in [SpaceSpec::sphere(2).unwrap(), make_space(Family::OctProj, 2).unwrap()] {
        let rep = verify_theorem31(&space, 181, 1e-8);
        assert!(rep.verdict, "{space}: {:?}", rep.failures().next());
        assert_eq!(rep.rows.len(), 181);
        assert_eq!(rep.rows[0].abs_err, 0.0);
        assert!(rep.max_abs_err <= 1e-8);
    }
}

#[test]
fn prop41_passes_on_catalog() {
    for space in SpaceSpec::default_catalog() {
        let rep = verify_prop41(&space, 20, TOL_CHAIN);
        assert!(rep.verdict, "{space}: {:?}", rep.failures().next());
    }
    let s2 = SpaceSpec::sphere(2).unwrap();
    let rep = verify_prop41(&s2, 1, TOL_CHAIN);
    let a1 = rep.rows.iter().find(|r| r.label.ends_with("A_l")).unwrap();
    assert!((a1.rhs - 1.0 / 15.0).abs() < 1e-15);
}

#[test]
fn lemma41_grid() {
    let rep = verify_lemma41(12, &LEMMA41_GRID, TOL_QUADRATURE);
    assert!(rep.verdict, "{:?}", rep.failures().next());
    let rep = verify_lemma41(2, &[-0.7, 0.5], TOL_QUADRATURE);
    assert!(rep.verdict);
}

#[test]
fn lemma52_corrected_passes_and_printed_fails() {
    let grid = lemma52_default_grid();
    let good = verify_lemma51_52(8, &LEMMA41_GRID, &grid, WForm::Corrected, TOL_QUADRATURE);
    assert!(good.verdict, "{:?}", good.failures().next());
    assert!(good.notes.iter().any(|n| n.contains("(1/2)_n")));
    let bad = verify_lemma51_52(8, &LEMMA41_GRID, &grid, WForm::Printed, TOL_QUADRATURE);
    assert!(!bad.verdict);
    // n = 0 rows agree under both forms
    assert!(bad.rows.iter().filter(|r| r.label.starts_with("5.2 n=0 ")).all(|r| r.passed));
}

#[test]
fn watson_grid() {
    let pts = watson_default_points();
    assert_eq!(pts.len(), 20);
    assert!(pts.iter().all(|(a, b)| a + b < 0.0));
    let rep = verify_watson(6, &pts, TOL_WATSON);
    assert!(rep.verdict, "{:?}", rep.failures().next());
    assert_eq!(rep.rows.len(), 7 * 20);
}

#[test]
fn constants_suite() {
    for space in SpaceSpec::default_catalog() {
        let rep = verify_constants(&space, TOL_SERIES, Some((200_000, 3)));
        assert!(rep.verdict, "{space}: {:?}", rep.failures().next());
    }
}

#[test]
fn constants_suite_at_closed_form_tolerance() {
    for space in SpaceSpec::default_catalog() {
        let rep = verify_constants(&space, 1e-12, None);
        assert!(rep.verdict, "{space}: {:?}", rep.failures().next());
    }
}

#[test]
fn invariance_suite() {
    let s2 = SpaceSpec::sphere(2).unwrap();
    let rep = verify_invariance(&s2, 100, 100_000, 1, TOL_SIGMA).unwrap();
    assert!(rep.verdict, "{:?}", rep.failures().next());
    let rp3 = make_space(Family::RealProj, 3).unwrap();
    assert!(verify_invariance(&rp3, 50, 50_000, 2, TOL_SIGMA).unwrap().verdict);
    let op2 = make_space(Family::OctProj, 2).unwrap();
    assert!(matches!(verify_invariance(&op2, 5, 10, 0, 3.0), Err(Error::UnsupportedSampling(_))));
}

#[test]
fn failing_row_does_not_abort() {
    let rep = verify_watson(1, &[(-0.7, -0.6), (0.4, 0.3)], TOL_WATSON);
    assert!(!rep.verdict);
    assert_eq!(rep.rows.len(), 4);
    assert!(rep.rows.iter().any(|r| r.passed));
}
