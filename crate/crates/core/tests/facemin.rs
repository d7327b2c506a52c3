use veerdil::bounds::*;
use veerdil::branched::DualGraph;
use veerdil::corpus::{self, Group};
use veerdil::facemin::*;
use veerdil::invariants::Invariants;
use veerdil::poly::Laurent;
use veerdil::rootiso::rat_to_f64;
use veerdil::sysolve::solve_bivariate;
use veerdil::{Error, VeeringTriangulation};

fn tri(sig: &str) -> (VeeringTriangulation, Invariants) {
    let v = VeeringTriangulation::from_sig(sig).unwrap();
    let inv = Invariants::compute(&v);
    (v, inv)
}

fn laurent2(terms: &[(i64, i64, i64)]) -> Laurent {
    Laurent::from_terms(2, terms.iter().map(|&(a, b, c)| (vec![a, b], c.into())))
}

/// A face spanned by the coordinate rays, with norms read off the Newton polygon.
fn quadrant_face(theta: &Laurent) -> FiberedFace {
    let norms = [theta.newton_norm(&[1, 0]).unwrap(), theta.newton_norm(&[0, 1]).unwrap()];
    FiberedFace { rays: [[1, 0], [0, 1]], norms, extremes: [[0, 1], [1, 0]] }
}

const MU4: f64 = 6.854101966249685;

#[test]
fn cone_examples() {
    let (v, inv) = tri("cPcbbbdxm_10");
    let FiberedCone::Ray(s) = fibered_cone(&v, &inv).unwrap() else { panic!("expected a ray") };
    let g = DualGraph::new(&v);
    for c in g.branch_cycles() {
        assert!(s * inv.homology.cycle_class(&c)[0] >= 1);
    }

    let (v, inv) = tri("fLLQcbeddeehhbghh_01110");
    let FiberedCone::Face(f) = fibered_cone(&v, &inv).unwrap() else { panic!("expected a face") };
    assert_ne!(f.rays[0], f.rays[1]);
    for r in f.rays {
        assert_eq!(num_integer::Integer::gcd(&r[0], &r[1]), 1);
    }
}

#[test]
fn branch_cycles_pair_positively_with_rays() {
    for sig in corpus::all_sigs() {
        let (v, inv) = tri(sig);
        let h = &inv.homology;
        let g = DualGraph::new(&v);
        let classes: Vec<Vec<i64>> = g.branch_cycles().iter().map(|c| h.cycle_class(c)).collect();
        match h.b1 {
            1 => {
                let FiberedCone::Ray(s) = fibered_cone(&v, &inv).unwrap() else { unreachable!() };
                assert!(classes.iter().all(|c| s * c[0] >= 1), "{sig}");
            }
            2 => {
                let FiberedCone::Face(f) = fibered_cone(&v, &inv).unwrap() else { unreachable!() };
                // Interior classes of the face pair strictly positively.
                let m = f.mid_ray();
                for c in &classes {
                    for r in f.rays {
                        assert!(r[0] * c[0] + r[1] * c[1] >= 0, "{sig}");
                    }
                    assert!(m[0] * c[0] + m[1] * c[1] >= 1, "{sig}");
                }
            }
            _ => assert!(matches!(fibered_cone(&v, &inv), Err(Error::WrongBetti { .. }))),
        }
    }
}

#[test]
fn dilatation_examples() {
    let r = dilatation_b1(&VeeringTriangulation::from_sig("cPcbbbdxm_10").unwrap(), 1e-9).unwrap();
    assert_eq!(r.chi, Some(-1));
    assert!((r.value() - 2.618033988749895).abs() < 1e-9);
    assert!((r.lambda.lo - 2.6180).abs() < 1e-4);
    assert_eq!(format_compile_line(&r, 7, "cPcbbbdxm_10"), "7 cPcbbbdxm_10 2.6180 -1");

    let r = dilatation_b1(&VeeringTriangulation::from_sig("eLPkaccddjnkaj_2002").unwrap(), 1e-9).unwrap();
    assert_eq!(r.chi, Some(-3));
    assert!((r.value() - 5.107).abs() < 1e-3);
    assert!(r.normalized.hi - r.normalized.lo <= 1e-9);

    let r = dilatation_b1(&VeeringTriangulation::from_sig("gLMzQbcdefffhhhhhit_122112").unwrap(), 1e-9).unwrap();
    assert!((r.value() - MU4).abs() < 1e-6);
    assert_eq!(format!("{:.4}", r.value()), "6.8541");
}

#[test]
fn wrong_betti_is_rejected() {
    let b2 = VeeringTriangulation::from_sig("fLLQcbeddeehhbghh_01110").unwrap();
    assert_eq!(dilatation_b1(&b2, 1e-9).unwrap_err(), Error::WrongBetti { expected: 1, found: 2 });
    let b1 = VeeringTriangulation::from_sig("cPcbbbdxm_10").unwrap();
    assert_eq!(min_dilatation_b2(&b1, 1e-9).unwrap_err(), Error::WrongBetti { expected: 2, found: 1 });
}

#[test]
fn symmetric_synthetic_face() {
    // xy - x - y - 1: swapping the rays fixes Θ, so the minimum sits at t = 1/2.
    let theta = laurent2(&[(1, 1, 1), (1, 0, -1), (0, 1, -1), (0, 0, -1)]);
    let face = quadrant_face(&theta);
    assert_eq!(face.norms, [1, 1]);
    let want = 3.0 + 2.0 * 2f64.sqrt();

    let mid = minimize_on_face(&theta, &face, 1e-12).unwrap();
    assert_eq!(mid.method, Method::Midpoint);
    assert!((mid.value() - want).abs() < 1e-10);

    let (t, p) = face_sample_min(&theta, &face, ORACLE_GRID).unwrap();
    assert!((t - 0.5).abs() < 1e-6 && (p - want).abs() < 1e-9);

    // The solver finds the same critical point.
    let sys = critical_system(&theta, face.direction());
    let sols = solve_bivariate(&sys.theta, &sys.crit, &|x, y| x > 0.0 && y > 0.0).unwrap();
    let mut hits = 0;
    for s in &sols.solutions {
        let (x, y) = (rat_to_f64(&s.x.lo).ln(), rat_to_f64(&s.y.lo).ln());
        let l = [0, 1].map(|i| sys.map[i][0] * x + sys.map[i][1] * y);
        let (a, b) = face.coords(l);
        if a > 0.0 && b > 0.0 {
            assert!((face.param_of(l) - 0.5).abs() < 1e-8);
            assert!((face.norm_of(l).exp() - want).abs() < 1e-7);
            hits += 1;
        }
    }
    assert_eq!(hits, 1);
}

#[test]
fn asymmetric_synthetic_face_uses_solver() {
    // xy - 2x - y - 1 has no root above 1 on either boundary ray.
    let theta = laurent2(&[(1, 1, 1), (1, 0, -2), (0, 1, -1), (0, 0, -1)]);
    let face = quadrant_face(&theta);
    assert!(face_value(&theta, &face, 0.0).is_none() && face_value(&theta, &face, 1.0).is_none());
    let r = minimize_on_face(&theta, &face, 1e-12).unwrap();
    assert_eq!(r.method, Method::Solver);
    let (t, p) = face_sample_min(&theta, &face, ORACLE_GRID).unwrap();
    assert!((r.value() - p).abs() < 1e-8, "{} vs {p}", r.value());
    assert!((r.t.unwrap() - t).abs() < 1e-4);
}

fn faces() -> Vec<(&'static str, Laurent, FiberedFace)> {
    let mut sigs = corpus::group(Group::Mu4Betti2);
    sigs.extend(corpus::group(Group::BoundCheck));
    sigs.into_iter()
        .map(|s| {
            let (v, inv) = tri(s);
            let FiberedCone::Face(f) = fibered_cone(&v, &inv).unwrap() else { unreachable!() };
            (s, inv.taut, f)
        })
        .collect()
}

#[test]
fn sampled_face_function_is_convex() {
    for (sig, theta, face) in faces() {
        let s = face_samples(&theta, &face, 100);
        assert_eq!(s.len(), 99, "{sig}");
        for w in s.windows(3) {
            let d2 = w[0].1 - 2.0 * w[1].1 + w[2].1;
            assert!(d2 >= -1e-9 * w[1].1, "{sig} at t = {}", w[1].0);
        }
        // Values blow up towards the boundary of the face.
        let min = s.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let near = |t: f64| face_value(&theta, &face, t).unwrap();
        assert!(near(1e-3) > min && near(1.0 - 1e-3) > min, "{sig}");
    }
}

/// For a convex function, the minimum lies below every sample and above both
/// secants through the samples just outside the bracket `[t_(i-1), t_(i+1)]`.
#[test]
fn minimum_is_sandwiched_by_convexity() {
    for (sig, theta, face) in faces() {
        let grid = 50;
        let s = face_samples(&theta, &face, grid);
        let i = (0..s.len()).min_by(|&a, &b| s[a].1.total_cmp(&s[b].1)).unwrap();
        assert!(i >= 2 && i + 2 < s.len(), "{sig}: minimum too close to the boundary");
        let slope = |p: (f64, f64), q: (f64, f64)| (q.1 - p.1) / (q.0 - p.0);
        let (p1, m1) = (s[i - 1], slope(s[i - 2], s[i - 1]));
        let (p2, m2) = (s[i + 1], slope(s[i + 1], s[i + 2]));
        let l1 = |t: f64| p1.1 + m1 * (t - p1.0);
        let l2 = |t: f64| p2.1 + m2 * (t - p2.0);
        let envelope = |t: f64| l1(t).max(l2(t));
        let mut lower = envelope(p1.0).min(envelope(p2.0));
        if m2 != m1 {
            let cross = (p1.1 - p2.1 + m2 * p2.0 - m1 * p1.0) / (m2 - m1);
            if (p1.0..=p2.0).contains(&cross) {
                lower = lower.min(envelope(cross));
            }
        }
        let r = minimize_on_face(&theta, &face, 1e-9).unwrap();
        let tol = 1e-9 * r.value();
        assert!(r.value() <= s[i].1 + tol, "{sig}");
        assert!(r.value() >= lower - tol, "{sig}: {} below {lower}", r.value());
        let t = r.t.unwrap();
        assert!(t >= p1.0 && t <= p2.0, "{sig}");
    }
}

#[test]
fn bound_values_at_cutoff() {
    let b = one_cusp(6.86).unwrap();
    for (got, want) in [
        (b.f1, 16.966),
        (b.f2, 16.975),
        (b.log3, 14.023),
        (b.third, 16.187),
        (b.half_minus_p, 16.670),
        (b.cube_roots, 16.707),
        (b.sqrt_term, 16.898),
    ] {
        assert!((got - want).abs() < 0.01, "{got} vs {want}");
    }
    assert!(b.max < 17.0);

    let mu: f64 = (1.0 + 5f64.sqrt()) / 2.0;
    assert_eq!(agol_tsang(mu * mu).unwrap().floor(), 454.0);
    assert!((single_hook(mu * mu).unwrap() - 3.43).abs() < 0.005);
    assert_eq!(single_hook(mu.powi(4)).unwrap().floor(), 23.0);
    assert!((double_hook(2.0).unwrap() - 2.0).abs() < 1e-15);
}

#[test]
fn one_cusp_bound_below_seventeen_on_its_range() {
    let lo = 4.0 * 2f64.sqrt();
    let mut prev: Option<OneCuspBound> = None;
    for k in 0..=200 {
        let p = lo + (6.86 - lo) * k as f64 / 200.0;
        let b = one_cusp(p).unwrap();
        assert!(b.max < 17.0, "P = {p}: {}", b.max);
        if let Some(q) = prev {
            // Components other than F1 and F2 increase with P.
            assert!(b.third > q.third && b.half_minus_p > q.half_minus_p);
            assert!(b.cube_roots > q.cube_roots && b.sqrt_term > q.sqrt_term && b.log3 > q.log3);
        }
        prev = Some(b);
    }
    for p in [6.9, 7.5, 7.99] {
        assert!(one_cusp(p).unwrap().third > 16.187);
    }
}

#[test]
fn f1_maximizer_is_interior() {
    for k in 0..=20 {
        let x = 4.0 * 2f64.sqrt() + k as f64 * (8.0 - 4.0 * 2f64.sqrt()) / 21.0;
        let (u, v) = f1_argmax(x).unwrap();
        assert!(u > 0.5 && u < 1.0, "x = {x}: u = {u}");
        assert!(v >= f1_integrand(x, 0.5) && v >= f1_integrand(x, 1.0));
        let (a, w) = f2_argmax(x).unwrap();
        assert!(a >= 1.0 && w >= f2_integrand(x, 1.0));
    }
}

#[test]
fn tetrahedra_count_respects_single_hook_bound() {
    for sig in corpus::betti_one() {
        let v = VeeringTriangulation::from_sig(sig).unwrap();
        let r = dilatation_b1(&v, 1e-9).unwrap();
        assert!(v.n_tets() as f64 <= single_hook(r.value()).unwrap(), "{sig}");
    }
}

#[test]
fn compile_line_layout() {
    let r = dilatation_b1(&VeeringTriangulation::from_sig("eLPkaccddjnkaj_2002").unwrap(), 1e-9).unwrap();
    let line = format_compile_line(&r, 3, "eLPkaccddjnkaj_2002");
    let cols: Vec<&str> = line.split(' ').collect();
    assert_eq!(cols.len(), 4);
    assert_eq!(cols[3], "-3");
    assert_eq!(cols[2].split('.').nth(1).unwrap().len(), 4);
}
