mod common;

use common::*;
use proptest::prelude::*;
use veerdil::poly::UPoly;
use veerdil::rootiso::*;
use veerdil::Error;

/// `(p, q, multiplicity)` roots `p/q`, plus an optional root-free quadratic factor.
fn arb_case() -> impl Strategy<Value = (Vec<(i64, i64, u32)>, bool)> {
    (proptest::collection::vec((-15i64..=15, 1i64..=5, 1u32..=2), 1..=4), any::<bool>()).prop_filter(
        "degree at most 8",
        |(rs, quad)| rs.iter().map(|r| r.2 as usize).sum::<usize>() + 2 * usize::from(*quad) <= 8,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn sturm_counts_match_sampling((roots, quad) in arb_case(), a in -200i64..200, w in 0i64..400) {
        let (p, distinct) = build_with_roots(&roots, quad);
        let r = check_sturm(&p, &distinct, a, w);
        prop_assert!(r.is_ok(), "{}", r.unwrap_err());
    }
}

#[test]
fn refinement_halves_and_nests() {
    let mut r = isolate_real_roots(&up(&[-1, -1, 1])).unwrap().pop().unwrap();
    for _ in 0..60 {
        let (lo, hi, w) = (r.lo.clone(), r.hi.clone(), r.width());
        r.bisect();
        assert!(r.lo >= lo && r.hi <= hi);
        assert!(r.width() * rat(2, 1) <= w);
    }
    assert!((r.midpoint() - 1.618033988749895).abs() < 1e-15);
}

#[test]
fn worked_examples() {
    let golden = largest_real_root(&up(&[-1, -1, 1]), 1e-9).unwrap();
    assert!(golden.width() <= eps_rat(1e-9));
    assert!((golden.midpoint() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);

    let mut two = isolate_real_roots(&up(&[1, -3, 1])).unwrap();
    assert_eq!(two.len(), 2);
    for r in two.iter_mut() {
        r.refine(&eps_rat(1e-10));
    }
    assert!((two[0].midpoint() - 0.381966).abs() < 1e-6);
    assert!((two[1].midpoint() - 2.618034).abs() < 1e-6);

    let lehmer = up(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
    let l = largest_real_root(&lehmer, 1e-12).unwrap().midpoint();
    assert!((l - 1.176).abs() < 1e-3);
    assert!((l.powi(9) - 4.311).abs() < 1e-3);

    let lt = largest_real_root(&up(&[1, -1, -1, -1, 1]), 1e-12).unwrap();
    let (lo, hi) = lt.pow_bounds(3);
    assert!(rat_to_f64(&lo) > 5.106 && rat_to_f64(&hi) < 5.108);

    let mu4 = largest_real_root(&up(&[1, -7, 1]), 1e-12).unwrap().midpoint();
    assert!((mu4 - (7.0 + 45f64.sqrt()) / 2.0).abs() < 1e-10);
    assert!((mu4 - 6.8541).abs() < 1e-4);

    assert!(isolate_real_roots(&up(&[1, 0, 1])).unwrap().is_empty());
    assert!(matches!(largest_real_root(&up(&[1, 0, 1]), 1e-9), Err(Error::NoRealRoot(_))));
    assert_eq!(isolate_real_roots(&UPoly::zero()), Err(Error::ZeroPolynomial));
}

#[test]
fn repeated_roots_are_counted_once() {
    let p = &(&up(&[-1, 1]) * &up(&[-1, 1])) * &up(&[2, 1]);
    let rs = isolate_real_roots(&p).unwrap();
    assert_eq!(rs.len(), 2);
    let exact = largest_real_root(&p, 1e-9).unwrap();
    assert!(exact.lo <= rat(1, 1) && rat(1, 1) <= exact.hi);
}
