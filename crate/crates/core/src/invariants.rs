//! Fundamental group presentation, homology, Fox calculus, and the Alexander and
//! taut polynomials of a veering triangulation.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::intmat::{hermite, kernel_basis, smith, IMat};
use crate::poly::{LMat, Laurent};
use crate::veer::VeeringTriangulation;

/// A word in the generators: `(generator, ±1)` letters.
pub type Word = Vec<(usize, i32)>;

/// Generators are the faces outside a spanning tree of the undirected dual graph;
/// there is one relator per edge class.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub n_gens: usize,
    pub in_tree: Vec<bool>,
    pub gen_of_face: Vec<Option<usize>>,
    pub face_of_gen: Vec<usize>,
    pub relators: Vec<Word>,
    /// Faces crossed around each edge class, `+1` when crossed upward.
    pub edge_loops: Vec<Vec<(usize, i32)>>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
}

/// Kruskal tree taking faces in `order`.
pub fn pi1_presentation(v: &VeeringTriangulation, order: &[usize]) -> Presentation {
    let n = v.n_tets();
    let m = v.n_faces();
    assert_eq!(order.len(), m);
    let mut dsu = Dsu((0..n).collect());
    let mut in_tree = vec![false; m];
    for &f in order {
        let (a, b) = (dsu.find(v.face_below(f)), dsu.find(v.face_above(f)));
        if a != b {
            dsu.0[a] = b;
            in_tree[f] = true;
        }
    }
    let mut gen_of_face = vec![None; m];
    let mut face_of_gen = Vec::new();
    for f in 0..m {
        if !in_tree[f] {
            gen_of_face[f] = Some(face_of_gen.len());
            face_of_gen.push(f);
        }
    }
    let edge_loops: Vec<Vec<(usize, i32)>> = v
        .edges
        .iter()
        .map(|ed| {
            ed.corners
                .iter()
                .map(|c| {
                    let f = v.face_id[c.tet][c.exit];
                    let up = v.face_sides[f][0] == (c.tet, c.exit);
                    (f, if up { 1 } else { -1 })
                })
                .collect()
        })
        .collect();
    let relators = edge_loops
        .iter()
        .map(|l| l.iter().filter_map(|&(f, s)| gen_of_face[f].map(|g| (g, s))).collect())
        .collect();
    Presentation { n_gens: face_of_gen.len(), in_tree, gen_of_face, face_of_gen, relators, edge_loops }
}

/// Faces in index order.
pub fn default_presentation(v: &VeeringTriangulation) -> Presentation {
    pi1_presentation(v, &(0..v.n_faces()).collect::<Vec<_>>())
}

#[derive(Clone, Debug)]
pub struct Homology {
    pub b1: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    /// Class in `H_1 / torsion ≅ ℤ^b1` of the loop closing each face through the tree.
    pub face_class: Vec<Vec<i64>>,
    /// Class of each generator.
    pub gen_class: Vec<Vec<i64>>,
}

impl Homology {
    /// Class of a directed Γ-cycle given as its faces.
    pub fn cycle_class(&self, faces: &[usize]) -> Vec<i64> {
        let mut c = vec![0; self.b1];
        for &f in faces {
            for (x, y) in c.iter_mut().zip(&self.face_class[f]) {
                *x += y;
            }
        }
        c
    }
}

fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("homology coordinate fits in i64")
}

/// Abelianized relator matrix: rows are relators, columns generators.
pub fn relation_matrix(p: &Presentation) -> IMat {
    let mut r = IMat::zeros(p.relators.len(), p.n_gens);
    for (i, w) in p.relators.iter().enumerate() {
        for &(g, s) in w {
            r[(i, g)] += s;
        }
    }
    r
}

/// Homology from the presentation. Coordinates on the free part are made independent
/// of the spanning tree: the classes of the Hermite basis of the Γ cycle space are put
/// in Hermite form themselves.
pub fn homology(v: &VeeringTriangulation, p: &Presentation) -> Homology {
    let r = relation_matrix(p);
    let s = smith(&r);
    let b1 = p.n_gens - s.rank;
    let torsion: Vec<BigInt> = s.diag.iter().filter(|d| **d > BigInt::one()).cloned().collect();
    let raw_gen: Vec<Vec<BigInt>> =
        (0..p.n_gens).map(|j| (s.rank..p.n_gens).map(|c| s.q[(j, c)].clone()).collect()).collect();
    let m = v.n_faces();
    let mut k = IMat::zeros(m, b1);
    for f in 0..m {
        if let Some(g) = p.gen_of_face[f] {
            for c in 0..b1 {
                k[(f, c)] = raw_gen[g][c].clone();
            }
        }
    }
    // Canonical basis of the cycle space.
    let mut d1 = IMat::zeros(v.n_tets(), m);
    for f in 0..m {
        d1[(v.face_above(f), f)] += 1;
        d1[(v.face_below(f), f)] -= 1;
    }
    let z = hermite(&kernel_basis(&d1).transpose());
    let zc = IMat::from_rows(m, &(0..z.rank).map(|i| z.h.row(i).to_vec()).collect::<Vec<_>>());
    let phi_t = (&zc * &k).transpose();
    let u = hermite(&phi_t).u;
    let kc = &k * &u.transpose();
    let face_class: Vec<Vec<i64>> =
        (0..m).map(|f| kc.row(f).iter().map(to_i64).collect()).collect();
    let gen_class = p.face_of_gen.iter().map(|&f| face_class[f].clone()).collect();
    Homology { b1, torsion, face_class, gen_class }
}

/// First Betti number from the cellular chain complex of the dual cell structure.
pub fn chain_complex_b1(v: &VeeringTriangulation) -> usize {
    let (n, m) = (v.n_tets(), v.n_faces());
    let mut d1 = IMat::zeros(n, m);
    for f in 0..m {
        d1[(v.face_above(f), f)] += 1;
        d1[(v.face_below(f), f)] -= 1;
    }
    let p = default_presentation(v);
    let mut d2 = IMat::zeros(v.n_edges(), m);
    for (e, l) in p.edge_loops.iter().enumerate() {
        for &(f, s) in l {
            d2[(e, f)] += s;
        }
    }
    m - d1.rank() - d2.rank()
}

/// Fox derivative `∂w/∂g`, pushed to `ℤ[H]` through `classes`.
pub fn fox_derivative(word: &[(usize, i32)], gen: usize, classes: &[Vec<i64>]) -> Laurent {
    let nv = classes.first().map_or(0, Vec::len);
    let mut out = Laurent::zero(nv);
    let mut prefix = vec![0i64; nv];
    for &(g, s) in word {
        if g == gen {
            if s > 0 {
                out.add_term(prefix.clone(), BigInt::one());
            } else {
                let e: Vec<i64> = prefix.iter().zip(&classes[g]).map(|(a, b)| a - b).collect();
                out.add_term(e, -BigInt::one());
            }
        }
        for (a, b) in prefix.iter_mut().zip(&classes[g]) {
            *a += s as i64 * b;
        }
    }
    out
}

pub fn alexander_matrix(p: &Presentation, h: &Homology) -> LMat {
    let mut m = LMat::zeros(h.b1, p.relators.len(), p.n_gens);
    for (i, w) in p.relators.iter().enumerate() {
        for g in 0..p.n_gens {
            let d = fox_derivative(w, g, &h.gen_class);
            m.add_to(i, g, &d);
        }
    }
    m
}

/// Gcd of the maximal minors of the Fox matrix, normalized.
pub fn alexander_polynomial(p: &Presentation, h: &Homology) -> Laurent {
    alexander_matrix(p, h)
        .fitting_gcd(1)
        .map_or_else(|| Laurent::zero(h.b1), |x| x.normalized())
}

/// Offset in `H` of the lift of each tetrahedron edge, relative to a fixed lift of
/// its edge class.
pub fn edge_offsets(v: &VeeringTriangulation, p: &Presentation, h: &Homology) -> Vec<[Vec<i64>; 6]> {
    let mut off: Vec<[Vec<i64>; 6]> = vec![Default::default(); v.n_tets()];
    for (ed, lp) in v.edges.iter().zip(&p.edge_loops) {
        let mut cur = vec![0i64; h.b1];
        for (c, &(f, s)) in ed.corners.iter().zip(lp) {
            off[c.tet][c.edge] = cur.clone();
            for (x, y) in cur.iter_mut().zip(&h.face_class[f]) {
                *x -= s as i64 * y;
            }
        }
        assert!(cur.iter().all(|x| *x == 0), "edge loop does not close in H");
    }
    off
}

/// Edge-module relations: for each face, the bottom edge of the tetrahedron above
/// it equals the sum of the face's other two edges.
pub fn taut_matrix(v: &VeeringTriangulation, p: &Presentation, h: &Homology) -> LMat {
    let off = edge_offsets(v, p, h);
    let mut m = LMat::zeros(h.b1, v.n_faces(), v.n_edges());
    for f in 0..v.n_faces() {
        let (t, fv) = v.face_sides[f][1];
        for (e, &(a, b)) in crate::veer::EDGE_VERTS.iter().enumerate() {
            if a == fv || b == fv {
                continue;
            }
            let c = if e == v.bottom_local[t] { BigInt::one() } else { -BigInt::one() };
            m.add_to(f, v.edge_class[t][e], &Laurent::monomial(c, off[t][e].clone()));
        }
    }
    m
}

pub fn taut_polynomial(v: &VeeringTriangulation, p: &Presentation, h: &Homology) -> Laurent {
    taut_matrix(v, p, h)
        .fitting_gcd(0)
        .map_or_else(|| Laurent::zero(h.b1), |x| x.normalized())
}

/// Presentation, homology, and both polynomials for one spanning tree.
#[derive(Clone, Debug)]
pub struct Invariants {
    pub presentation: Presentation,
    pub homology: Homology,
    pub alexander: Laurent,
    pub taut: Laurent,
}

impl Invariants {
    pub fn compute(v: &VeeringTriangulation) -> Self {
        Self::with_order(v, &(0..v.n_faces()).collect::<Vec<_>>())
    }

    pub fn with_order(v: &VeeringTriangulation, order: &[usize]) -> Self {
        let presentation = pi1_presentation(v, order);
        let homology = homology(v, &presentation);
        let alexander = alexander_polynomial(&presentation, &homology);
        let taut = taut_polynomial(v, &presentation, &homology);
        Invariants { presentation, homology, alexander, taut }
    }
}
