mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use veerdil::rootiso::eps_rat;
use veerdil::sysolve::*;

fn all(_: f64, _: f64) -> bool {
    true
}

#[test]
fn solver_matches_resultant_oracle() {
    let total = compare_solver_with_oracle(2024, 100, 1e-8).unwrap();
    assert!(total > 50, "random systems were too degenerate: {total}");
}

#[test]
fn returned_boxes_are_certified() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..30 {
        let a = random_bipoly(&mut rng, 3);
        let b = random_bipoly(&mut rng, 2);
        let Ok(r) = solve_bivariate(&a, &b, &all) else { continue };
        for s in &r.solutions {
            for (p, res) in [(&a, &s.residuals[0]), (&b, &s.residuals[1])] {
                assert!(res.contains_zero());
                assert!(res.width() <= eps_rat(RESIDUAL_WIDTH));
                // Recomputing on the returned box also straddles zero.
                let again = p.eval_box(&s.x, &s.y);
                assert!(again.contains_zero() && again.width() <= eps_rat(RESIDUAL_WIDTH));
            }
        }
    }
}

#[test]
fn elimination_lowers_degree_and_keeps_common_zeros() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let a = random_bipoly(&mut rng, 3);
        let b = random_bipoly(&mut rng, 3);
        let n = lead_eliminate(&a, &b).unwrap();
        assert!(n.is_zero() || n.deg_y() < a.deg_y().max(b.deg_y()));
        if let Some(zs) = resultant_oracle(&a, &b) {
            for (x, y) in zs {
                assert!(relative_residual(&n, x, y) < 1e-7, "({x}, {y})");
            }
        }
    }
}

#[test]
fn worked_examples() {
    let a = BiPoly::from_terms(&[(0, 1, 1), (1, 0, -1)]);
    let b = BiPoly::from_terms(&[(0, 1, 1), (1, 0, 1)]);
    let e = lead_eliminate(&a, &b).unwrap();
    assert_eq!(e.deg_y(), 0);
    assert_eq!(e, BiPoly::from_terms(&[(1, 0, -2)]));
    let s = solve_bivariate(&a, &b, &all).unwrap().solutions;
    assert_eq!(s.len(), 1);
    let (x, y) = s[0].approx();
    assert!(x.abs() < 1e-12 && y.abs() < 1e-12);

    let e = lead_eliminate(&BiPoly::from_terms(&[(0, 2, 1)]), &BiPoly::from_terms(&[(0, 2, 1), (0, 0, 1)])).unwrap();
    assert_eq!(e, BiPoly::from_terms(&[(0, 0, -1)]));

    let a = BiPoly::from_terms(&[(2, 0, 1), (0, 2, 1), (0, 0, -2)]);
    let b = BiPoly::from_terms(&[(1, 0, 1), (0, 1, -1)]);
    let s = sorted(solve_bivariate(&a, &b, &all).unwrap().solutions.iter().map(Solution::approx).collect());
    assert_eq!(s.len(), 2);
    assert!((s[0].0 + 1.0).abs() < 1e-12 && (s[0].1 + 1.0).abs() < 1e-12);
    assert!((s[1].0 - 1.0).abs() < 1e-12 && (s[1].1 - 1.0).abs() < 1e-12);

    // The positivity filter drops the negative solution.
    let pos = solve_bivariate(&a, &b, &|x, y| x > 0.0 && y > 0.0).unwrap();
    assert_eq!(pos.solutions.len(), 1);

    // No real solutions: a circle and a line missing it.
    let c = BiPoly::from_terms(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]);
    let l = BiPoly::from_terms(&[(1, 0, 1), (0, 1, 1), (0, 0, -5)]);
    assert!(solve_bivariate(&c, &l, &all).unwrap().solutions.is_empty());
}

#[test]
fn common_factor_is_reported() {
    // (x - y)(x + 1) and (x - y)(y - 3): the cofactors meet at (-1, 3).
    let f = BiPoly::from_terms(&[(1, 0, 1), (0, 1, -1)]).to_laurent();
    let g1 = BiPoly::from_terms(&[(1, 0, 1), (0, 0, 1)]).to_laurent();
    let g2 = BiPoly::from_terms(&[(0, 1, 1), (0, 0, -3)]).to_laurent();
    let a = BiPoly::from_laurent(&(&f * &g1));
    let b = BiPoly::from_laurent(&(&f * &g2));
    let r = solve_bivariate(&a, &b, &all).unwrap();
    assert_eq!(r.common_factors.len(), 1);
    assert_eq!(r.common_factors[0].to_laurent().normalized(), f.normalized());
    let s: Vec<(f64, f64)> = r.solutions.iter().map(Solution::approx).collect();
    assert_eq!(s.len(), 1);
    assert!((s[0].0 + 1.0).abs() < 1e-12 && (s[0].1 - 3.0).abs() < 1e-12);
}
