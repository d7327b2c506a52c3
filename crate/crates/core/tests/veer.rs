use veerdil::corpus;
use veerdil::veer::EDGE_VERTS;
use veerdil::{Color, TetKind, VeeringTriangulation};

fn all() -> Vec<(&'static str, VeeringTriangulation)> {
    corpus::all_sigs().into_iter().map(|s| (s, VeeringTriangulation::from_sig(s).unwrap())).collect()
}

#[test]
fn whole_corpus_is_veering() {
    for (s, v) in all() {
        let n = v.n_tets();
        assert_eq!(v.n_edges(), n, "{s}");
        assert_eq!(v.n_faces(), 2 * n, "{s}");
        let total: usize = v.edges.iter().map(|e| e.valence()).sum();
        assert_eq!(total, 6 * n, "{s}");
        assert!(v.edges.iter().all(|e| e.valence() >= 4), "{s}");
    }
}

#[test]
fn coorientation_is_consistent() {
    for (s, v) in all() {
        for t in 0..v.n_tets() {
            let tops = (0..4).filter(|&k| v.face_sides[v.face_id[t][k]][0] == (t, k)).count();
            assert_eq!(tops, 2, "{s} tet {t}");
            let (a, b) = EDGE_VERTS[v.top_local[t]];
            let (c, d) = EDGE_VERTS[v.bottom_local[t]];
            assert_eq!([a, b, c, d].iter().collect::<std::collections::BTreeSet<_>>().len(), 4);
        }
        for f in 0..v.n_faces() {
            assert_ne!(v.face_sides[f][0], v.face_sides[f][1], "{s} face {f}");
        }
    }
}

#[test]
fn side_profiles() {
    for (s, v) in all() {
        for e in 0..v.n_edges() {
            let p = v.edge_side_profile(e);
            assert!(p.delta[0] >= 1 && p.delta[1] >= 1, "{s}");
            assert_eq!(p.delta[0] + p.delta[1] + 2, v.edges[e].valence(), "{s} edge {e}");
            if v.edges[e].valence() == 4 {
                assert_eq!(p.delta, [1, 1]);
                assert_eq!(p.short, [true, true]);
            }
        }
    }
    let m = VeeringTriangulation::from_sig("cPcbbbdxm_10").unwrap();
    for e in 0..2 {
        let p = m.edge_side_profile(e);
        assert_eq!(p.delta[0] + p.delta[1], 4);
    }
}

fn fan_of(c: Color) -> TetKind {
    match c {
        Color::Red => TetKind::FanRed,
        Color::Blue => TetKind::FanBlue,
    }
}

/// A short side holds one fan of the edge's color; a long side reads toggle,
/// fans of the other color, toggle from bottom to top.
#[test]
fn stack_kind_pattern() {
    for (s, v) in all() {
        for (e, ed) in v.edges.iter().enumerate() {
            let c = v.edge_color[e];
            for side in &ed.sides {
                let kinds: Vec<TetKind> = side.tets.iter().map(|&t| v.tet_kind[t]).collect();
                if side.is_short() {
                    assert_eq!(kinds, vec![fan_of(c)], "{s} edge {e}");
                } else {
                    let d = kinds.len();
                    assert_eq!(kinds[0], TetKind::Toggle, "{s} edge {e}");
                    assert_eq!(kinds[d - 1], TetKind::Toggle, "{s} edge {e}");
                    assert!(kinds[1..d - 1].iter().all(|&k| k == fan_of(c.flip())), "{s} edge {e}");
                }
                assert_eq!(side.faces.len(), side.delta() + 1);
            }
            assert_eq!(v.top_edge(ed.below), e);
            assert_eq!(v.bottom_edge(ed.above), e);
        }
    }
}

#[test]
fn tetrahedron_kinds() {
    for (s, v) in all() {
        let (tog, red, blue) = v.count_kinds();
        assert_eq!(tog + red + blue, v.n_tets(), "{s}");
        assert!(tog >= 1, "{s}");
        for t in 0..v.n_tets() {
            let (top, bot) = (v.edge_color[v.top_edge(t)], v.edge_color[v.bottom_edge(t)]);
            let want = if top != bot { TetKind::Toggle } else { fan_of(top) };
            assert_eq!(v.tet_kind[t], want, "{s} tet {t}");
        }
        // Both colors occur.
        assert!(v.edge_color.contains(&Color::Red) && v.edge_color.contains(&Color::Blue), "{s}");
    }
    let m = VeeringTriangulation::from_sig("cPcbbbdxm_10").unwrap();
    assert_eq!(m.count_kinds(), (2, 0, 0));
}

#[test]
fn construction_is_deterministic() {
    for s in corpus::all_sigs() {
        let a = VeeringTriangulation::from_sig(s).unwrap();
        let b = VeeringTriangulation::from_sig(s).unwrap();
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
        // Face 0 of tetrahedron 0 is pinned as a top face.
        assert_eq!(a.face_sides[a.face_id[0][0]][0], (0, 0));
    }
}

#[test]
fn cusp_counts() {
    for s in corpus::betti_one() {
        assert_eq!(VeeringTriangulation::from_sig(s).unwrap().n_cusps(), 1, "{s}");
    }
}
