use core::f64::consts::PI;

use super::*;
use crate::octonion::Octonion;
use crate::spaces::{chart_point_oct, make_space, sample_uniform, DistanceMatrix, Family};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn antipodal_s1() -> PointSet {
    let s1 = SpaceSpec::sphere(1).unwrap();
    let pts = alloc::vec![
        Point::new(&s1, alloc::vec![1.0, 0.0]).unwrap(),
        Point::new(&s1, alloc::vec![-1.0, 0.0]).unwrap(),
    ];
    PointSet::new(s1, pts, "antipodal").unwrap()
}

fn uniform(space: &SpaceSpec, n: usize, seed: u64) -> PointSet {
    sample_uniform(space, n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn chart_set(count: usize, seed: u64) -> PointSet {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut o = || {
        let mut a = [0.0; 8];
        a.iter_mut().for_each(|v| *v = rng.random_range(-1.5..1.5));
        Octonion(a)
    };
    let op2 = make_space(Family::OctProj, 2).unwrap();
    let pts = (0..count).map(|_| chart_point_oct(o(), o())).collect();
    PointSet::new(op2, pts, "chart").unwrap()
}

#[test]
fn pair_sum_examples() {
    let s2 = SpaceSpec::sphere(2).unwrap();
    let one = uniform(&s2, 1, 1);
    assert_eq!(pair_sum(&one, Metric::Chordal), 0.0);
    assert_eq!(pair_sum(&PointSet::empty(s2, "none"), Metric::Geodesic), 0.0);
    assert!((pair_sum(&antipodal_s1(), Metric::Chordal) - 2.0).abs() < 1e-15);
    assert!((pair_sum(&antipodal_s1(), Metric::Geodesic) - 2.0 * PI).abs() < 1e-15);

    let s3 = SpaceSpec::sphere(3).unwrap();
    let set = uniform(&s3, 40, 2);
    let mut euclid = 0.0;
    for a in &set.points {
        for b in &set.points {
            let d: f64 = a.coords().iter().zip(b.coords()).map(|(x, y)| (x - y) * (x - y)).sum();
            euclid += libm::sqrt(d);
        }
    }
    assert!((euclid / 2.0 - pair_sum(&set, Metric::Chordal)).abs() < 1e-11);
}

#[test]
fn adding_a_duplicate_adds_twice_its_row() {
    let cp2 = make_space(Family::ComplexProj, 2).unwrap();
    let mut set = uniform(&cp2, 20, 3);
    let before = pair_sum(&set, Metric::Geodesic);
    let dup = set.points[7].clone();
    let row: f64 = (0..set.points.len()).map(|j| set.theta(7, j)).sum();
    set.points.push(dup);
    let after = pair_sum(&set, Metric::Geodesic);
    assert!((after - before - 2.0 * row).abs() < 1e-12 * after);
}

#[test]
fn lambda_closed_examples() {
    let s1 = SpaceSpec::sphere(1).unwrap();
    let l = lambda_closed(&s1, &antipodal_s1());
    assert!((l - (16.0 / (PI * PI) - 4.0 / PI)).abs() < 1e-12);
    for space in SpaceSpec::default_catalog() {
        let single = PointSet::new(space, alloc::vec![], "").unwrap();
        assert_eq!(lambda_closed(&space, &single), 0.0);
        let dm = DistanceMatrix::from_rows(alloc::vec![alloc::vec![0.0]]).unwrap();
        let want = avg_chordal(&space) / gamma_const(&space);
        assert!((lambda_closed(&space, &dm) - want).abs() < 1e-15);
        let same = DistanceMatrix::from_rows(alloc::vec![alloc::vec![0.0; 5]; 5]).unwrap();
        assert!((lambda_closed(&space, &same) - 25.0 * want).abs() < 1e-13);
    }
}

#[test]
fn lambda_closed_ignores_labels() {
    let s2 = SpaceSpec::sphere(2).unwrap();
    let set = uniform(&s2, 30, 4);
    let mut shuffled = set.clone();
    shuffled.points.reverse();
    shuffled.points.swap(3, 17);
    let (a, b) = (lambda_closed(&s2, &set), lambda_closed(&s2, &shuffled));
    assert!((a - b).abs() <= 1e-13 * a);
    assert!(a >= 0.0);
}

#[test]
fn series_route_matches_closed_route() {
    let s2 = SpaceSpec::sphere(2).unwrap();
    let coeffs = ExpansionCoeffs::full(&s2, &RadiusMeasure::CanonicalSine).unwrap();
    let set = uniform(&s2, 25, 5);
    let s = lambda_series(&coeffs, &set, 1e-10).unwrap();
    let c = lambda_closed(&s2, &set);
    assert!((s - c).abs() < 1e-7, "{s} vs {c}");
    let one = uniform(&s2, 1, 6);
    assert!((lambda_series(&coeffs, &one, 1e-10).unwrap() - avg_symdiff(&s2, &coeffs.measure)).abs() < 1e-15);

    let chart = chart_set(3, 7);
    let op2 = chart.space;
    let coeffs = ExpansionCoeffs::full(&op2, &RadiusMeasure::CanonicalSine).unwrap();
    let s = lambda_series(&coeffs, &chart, 1e-10).unwrap();
    assert!(s.is_finite());
    assert!((s - lambda_closed(&op2, &chart)).abs() < 1e-8);
}

#[test]
fn mc_antipodal_pair() {
    let est = lambda_mc(&antipodal_s1(), 1_000_000, 42).unwrap();
    let want = 16.0 / (PI * PI) - 4.0 / PI;
    assert!((est.value - want).abs() < 3.0 * est.stderr, "{est:?}");
    assert_eq!(est.samples, 1_000_000);
    assert_eq!(lambda_mc(&antipodal_s1(), 1000, 42).unwrap(), lambda_mc(&antipodal_s1(), 1000, 42).unwrap());
}

#[test]
fn mc_clustered_points_stay_bounded() {
    let s2 = SpaceSpec::sphere(2).unwrap();
    let p = Point::new(&s2, alloc::vec![0.0, 1.0, 0.0]).unwrap();
    let set = PointSet::new(s2, alloc::vec![p; 6], "cluster").unwrap();
    let est = lambda_mc(&set, 20_000, 1).unwrap();
    assert!(est.value > 0.0 && est.value <= 2.0 * 36.0);
    let closed = lambda_closed(&s2, &set);
    assert!((est.value - closed).abs() < 4.0 * est.stderr);
}

#[test]
fn mc_refuses_op2() {
    let chart = chart_set(3, 8);
    assert!(matches!(lambda_mc(&chart, 10, 0), Err(Error::UnsupportedSampling(_))));
}

#[test]
fn symdiff_direct_examples() {
    let canon = RadiusMeasure::CanonicalSine;
    let s1 = SpaceSpec::sphere(1).unwrap();
    let x = Point::new(&s1, alloc::vec![1.0, 0.0]).unwrap();
    assert_eq!(symdiff_direct(&s1, &x, &x, &canon, 1000, 1).unwrap().value, 0.0);
    let th: f64 = 1.1;
    let y = Point::new(&s1, alloc::vec![libm::cos(th), libm::sin(th)]).unwrap();
    let e = symdiff_direct(&s1, &x, &y, &canon, 200_000, 2).unwrap();
    assert!((e.value - 2.0 / PI * libm::sin(th / 2.0)).abs() < 3.0 * e.stderr, "{e:?}");

    let s2 = SpaceSpec::sphere(2).unwrap();
    let n = Point::new(&s2, alloc::vec![0.0, 0.0, 1.0]).unwrap();
    let s = Point::new(&s2, alloc::vec![0.0, 0.0, -1.0]).unwrap();
    let e = symdiff_direct(&s2, &n, &s, &canon, 200_000, 3).unwrap();
    assert!((e.value - 0.5).abs() < 3.0 * e.stderr, "{e:?}");
}

#[test]
fn symdiff_direct_matches_series_on_projective_plane() {
    let canon = RadiusMeasure::CanonicalSine;
    let cp2 = make_space(Family::ComplexProj, 2).unwrap();
    let set = uniform(&cp2, 2, 9);
    let th = set.theta(0, 1);
    let coeffs = ExpansionCoeffs::full(&cp2, &canon).unwrap();
    let series = coeffs.symdiff(th, 1e-10).unwrap().value;
    let e = symdiff_direct(&cp2, &set.points[0], &set.points[1], &canon, 200_000, 4).unwrap();
    assert!((e.value - series).abs() < 3.0 * e.stderr);
}

#[test]
fn lp_examples_and_triangle_inequality() {
    let s2 = SpaceSpec::sphere(2).unwrap();
    let coeffs = ExpansionCoeffs::full(&s2, &RadiusMeasure::CanonicalSine).unwrap();
    assert_eq!(lp_symdiff(&coeffs, 0.9, 1.0, 1e-10).unwrap(), coeffs.symdiff(0.9, 1e-10).unwrap().value);
    assert!((lp_symdiff(&coeffs, PI, 2.0, 1e-10).unwrap() - libm::sqrt(0.5)).abs() < 1e-9);
    assert!(lp_symdiff(&coeffs, PI, 0.5, 1e-10).is_err());
    let set = uniform(&s2, 60, 10);
    for t in (0..60).collect::<Vec<_>>().chunks_exact(3) {
        for p in [1.0, 2.0, 3.5] {
            let f = |i: usize, j: usize| lp_symdiff(&coeffs, set.theta(i, j), p, 1e-10).unwrap();
            assert!(f(t[0], t[2]) <= f(t[0], t[1]) + f(t[1], t[2]) + 1e-9);
        }
    }
}

#[test]
fn invariance_residuals() {
    let s2 = SpaceSpec::sphere(2).unwrap();
    let set = uniform(&s2, 100, 11);
    let closed = invariance_residual(&set, LambdaRoute::Closed).unwrap();
    assert!(closed.value.abs() <= 1e-9 * closed.scale);
    let mc = invariance_residual(&set, LambdaRoute::MonteCarlo { samples: 100_000, seed: 5 }).unwrap();
    assert!(mc.value.abs() < 3.0 * mc.stderr.unwrap(), "{mc:?}");
    assert!(mc.lambda >= 0.0);

    let cp2 = make_space(Family::ComplexProj, 2).unwrap();
    let set = uniform(&cp2, 25, 12);
    let series = invariance_residual(&set, LambdaRoute::Series { tol: 1e-10 }).unwrap();
    assert!(series.value.abs() <= 1e-6 * series.scale, "{series:?}");
}
