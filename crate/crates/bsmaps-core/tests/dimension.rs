//! Exact interval maps, vertex enumeration, Lyapunov brackets and the
//! dimension estimates.

use bsmaps_core::catalog::bowen_series;
use bsmaps_core::dimension::{
    f_bs, f_hbs, hausdorff_mme, hausdorff_mme_map, lyapunov_bracket, tau_map, tripling_map, ExtendedRational,
};
use bsmaps_core::moebius::{cayley_inverse, cayley_transform, from_turn};
use bsmaps_core::{BoundaryPoint, DimensionError, Rational, Variant};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

/// Stern-Brocot level `n`: start from `0/1, 1/1` and insert all mediants
/// `n` times.
fn stern_brocot(n: usize) -> Vec<Rational> {
    let mut v: Vec<(i64, i64)> = vec![(0, 1), (1, 1)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(2 * v.len());
        for w in v.windows(2) {
            next.push(w[0]);
            next.push((w[0].0 + w[1].0, w[0].1 + w[1].1));
        }
        next.push(*v.last().unwrap());
        v = next;
    }
    v.into_iter().map(|(a, b)| q(a, b)).collect()
}

#[test]
fn exact_values() {
    let f = f_bs();
    assert_eq!(f.apply(&q(1, 7)).unwrap(), q(1, 5));
    assert_eq!(f.apply(&q(3, 7)).unwrap(), q(1, 2));
    assert_eq!(f_hbs().apply(&q(1, 4)).unwrap(), q(2, 3));
    assert_eq!(f.branches(), 3);
    assert_eq!(f_hbs().branches(), 2);
    assert!((f.entropy() - 3f64.ln()).abs() < 1e-15);
    assert!((f_hbs().entropy() - 2f64.ln()).abs() < 1e-15);
    assert!(f.pieces().iter().all(|p| p.orientation() == 1));
    assert!(f_hbs().pieces().iter().all(|p| p.orientation() == -1));
    assert!(matches!(f.apply(&q(3, 2)), Err(DimensionError::OutOfRange(_))));
}

#[test]
fn log_derivative_examples() {
    let f = f_bs();
    assert_eq!(f.log_deriv(&q(0, 1)).unwrap(), 0.0);
    assert!((f.log_deriv(&q(1, 4)).unwrap() - 4f64.ln()).abs() < 1e-15);
    assert_eq!(f.log_deriv_left(&q(1, 1)).unwrap(), 0.0);
    // Mid-piece values from the closed forms 2/(1−x)² and 1/x².
    assert!((f.log_deriv(&q(2, 5)).unwrap() - (2.0 / 0.36f64).ln()).abs() < 1e-14);
    assert!((f.log_deriv(&q(3, 4)).unwrap() - (16.0f64 / 9.0).ln()).abs() < 1e-14);
}

#[test]
fn vertex_sets_low_rank() {
    let f = f_bs();
    assert_eq!(f.vertex_set(1).unwrap(), [q(0, 1), q(1, 3), q(1, 2), q(1, 1)]);
    let r1 = f.vertex_set(1).unwrap();
    let added: Vec<Rational> = f
        .vertex_set(2)
        .unwrap()
        .into_iter()
        .filter(|x| !r1.contains(x))
        .collect();
    assert_eq!(added, [q(1, 5), q(1, 4), q(2, 5), q(3, 7), q(3, 5), q(2, 3)]);
    assert!(matches!(
        f.vertex_set(13),
        Err(DimensionError::RankTooLarge { rank: 13, cap: 12 })
    ));
}

#[test]
fn vertex_counts() {
    for n in 1..=8 {
        assert_eq!(f_bs().vertex_set(n).unwrap().len(), 3usize.pow(n as u32) + 1);
        assert_eq!(f_hbs().vertex_set(n).unwrap().len(), (1 << n) + 1);
    }
}

#[test]
fn vertices_map_to_previous_rank() {
    for f in [f_bs(), f_hbs()] {
        for n in 1..=6 {
            let prev = f.vertex_set(n - 1).unwrap();
            for v in f.vertex_set(n).unwrap() {
                if v < q(1, 1) {
                    let img = f.apply(&v).unwrap();
                    assert!(
                        prev.contains(&img),
                        "{}: F({v}) = {img} not in rank {}",
                        f.name(),
                        n - 1
                    );
                }
            }
        }
    }
}

#[test]
fn hbs_vertices_are_stern_brocot_levels() {
    for n in 0..=8 {
        assert_eq!(f_hbs().vertex_set(n).unwrap(), stern_brocot(n), "level {n}");
    }
}

#[test]
fn log_derivative_is_nonnegative() {
    for f in [f_bs(), f_hbs()] {
        for v in f.vertex_set(6).unwrap() {
            let a = if v < q(1, 1) {
                f.log_deriv(&v).unwrap()
            } else {
                f.log_deriv_left(&v).unwrap()
            };
            assert!(a >= 0.0);
            if a == 0.0 {
                assert!(v.is_zero() || v == q(1, 1), "{}: zero at {v}", f.name());
            }
        }
    }
}

#[test]
fn rank_one_bracket_by_hand() {
    let b = lyapunov_bracket(&f_bs(), 1).unwrap();
    let lower = (0.0 + 4.5f64.ln() + 0.0) / 3.0;
    let upper = (2.0 * 3f64.ln() + 8f64.ln() + 4f64.ln()) / 3.0;
    assert!((b.lower - lower).abs() < 1e-14);
    assert!((b.upper - upper).abs() < 1e-14);
}

#[test]
fn rank_three_lower_sum() {
    let b = lyapunov_bracket(&f_bs(), 3).unwrap();
    assert!((1.2005..=1.2015).contains(&b.lower), "{}", b.lower);
    assert!(b.lower > 3f64.ln());
}

#[test]
fn brackets_are_nested() {
    for f in [f_bs(), f_hbs()] {
        let bs: Vec<_> = (1..=8).map(|n| lyapunov_bracket(&f, n).unwrap()).collect();
        for w in bs.windows(2) {
            assert!(w[1].lower >= w[0].lower - 1e-12 && w[1].upper <= w[0].upper + 1e-12);
            assert!(w[1].hd_lower >= w[0].hd_lower - 1e-12 && w[1].hd_upper <= w[0].hd_upper + 1e-12);
        }
        assert!(bs[7].lower <= bs[7].upper);
        assert!(bs[7].hd_width() < bs[0].hd_width());
    }
}

#[test]
fn hausdorff_examples() {
    let bs = hausdorff_mme(Variant::Bs3, 0.01).unwrap();
    assert!(bs.reached);
    assert!(bs.upper < 1.0 && bs.upper <= 3f64.ln() / 1.201);
    let hbs = hausdorff_mme(Variant::Hbs3, 0.02).unwrap();
    assert!(hbs.reached);
    assert!(hbs.lower <= 0.885 && hbs.upper >= 0.865);
    let r14 = lyapunov_bracket(&f_hbs(), 14).unwrap();
    assert!(r14.hd_width() <= 0.02);
    assert!(r14.hd_lower >= 0.865 && r14.hd_upper <= 0.885);
    let x3 = hausdorff_mme_map(&tripling_map(), 0.01).unwrap();
    assert_eq!(x3.rank, 1);
    assert!((x3.lower - 1.0).abs() < 1e-15 && (x3.upper - 1.0).abs() < 1e-15);
    assert!(matches!(
        hausdorff_mme(Variant::Bs3, 1e-3),
        Err(DimensionError::WidthTooSmall(_))
    ));
    assert_eq!("hbs3".parse::<Variant>().unwrap(), Variant::Hbs3);
    assert!("bs4".parse::<Variant>().is_err());
}

#[test]
fn tau_examples() {
    let t = tau_map();
    let fin = |x: Rational| ExtendedRational::Finite(x);
    assert_eq!(t.apply_exact(&fin(q(1, 3))), fin(q(1, 1)));
    assert_eq!(t.apply_exact(&fin(q(-3, 1))), fin(q(-1, 1)));
    assert_eq!(t.apply_exact(&fin(q(1, 2))), ExtendedRational::Infinity);
    assert_eq!(
        t.apply_exact(&ExtendedRational::Infinity),
        ExtendedRational::Infinity
    );
    let below_one = Rational::new(BigInt::from(10).pow(30) - 1, BigInt::from(10).pow(30));
    let ExtendedRational::Finite(y) = t.apply_exact(&fin(below_one.clone())) else {
        panic!("finite expected");
    };
    assert_eq!(
        y,
        &below_one / (Rational::from_integer(1.into()) - &below_one * q(2, 1))
    );
}

#[test]
fn tau_conjugates_the_bowen_series_map() {
    let bs = bowen_series(2).unwrap().map;
    let m = cayley_transform();
    let mi = cayley_inverse();
    let t = tau_map();
    for s in 0..1000 {
        let z = from_turn((s as f64 + 0.29) / 1000.0);
        let lhs = mi
            .apply(t.apply(m.apply(BoundaryPoint::Disk(z)).unwrap()))
            .unwrap()
            .z();
        assert!((lhs - bs.evaluate_z(z)).norm() < 1e-8);
    }
}

proptest! {
    #[test]
    fn f_bs_is_a_full_branch_map(a in 0i64..1000, b in 1i64..1000) {
        prop_assume!(a < b);
        let x = q(a, b);
        let f = f_bs();
        let y = f.apply(&x).unwrap();
        prop_assert!(y >= q(0, 1) && y < q(1, 1));
        let pre = f.preimages(&[y.clone()]);
        prop_assert!(pre.contains(&x));
        prop_assert_eq!(pre.len(), 3);
        prop_assert!(f.log_deriv(&x).unwrap() >= 0.0);
    }
}
