//! Edge classes, transverse taut coorientation, and veering colors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Perm4;
use crate::sigio::RawTriangulation;

/// Local edges of a tetrahedron as vertex pairs; edge `i` is opposite edge `5 - i`.
pub const EDGE_VERTS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {a}{b}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TetKind {
    Toggle,
    FanRed,
    FanBlue,
}

/// One corner of an edge class: local edge `edge` of `tet`, crossed by
/// entering through face `enter` and leaving through face `exit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Corner {
    pub tet: usize,
    pub edge: usize,
    pub enter: usize,
    pub exit: usize,
}

/// The side stack of an edge, bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Side {
    /// Tetrahedra in the stack, bottom first.
    pub tets: Vec<usize>,
    /// Faces `F_0 .. F_δ`: `F_0` is a top face of the tetrahedron below the
    /// edge, `F_δ` a bottom face of the tetrahedron above it.
    pub faces: Vec<usize>,
}

impl Side {
    pub fn delta(&self) -> usize {
        self.tets.len()
    }

    pub fn is_short(&self) -> bool {
        self.tets.len() == 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeData {
    pub corners: Vec<Corner>,
    /// Tetrahedron whose top edge this is.
    pub below: usize,
    /// Tetrahedron whose bottom edge this is.
    pub above: usize,
    pub sides: [Side; 2],
}

impl EdgeData {
    pub fn valence(&self) -> usize {
        self.corners.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeSideProfile {
    pub delta: [usize; 2],
    pub short: [bool; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct VeeringTriangulation {
    pub raw: RawTriangulation,
    /// Edge class of each local edge.
    pub edge_class: Vec<[usize; 6]>,
    pub edges: Vec<EdgeData>,
    /// Face id of each (tet, face).
    pub face_id: Vec<[usize; 4]>,
    /// The two (tet, face) sides of each face, the lower tetrahedron first.
    pub face_sides: Vec<[(usize, usize); 2]>,
    /// Orientation sign of each tetrahedron's vertex labeling.
    pub orientation: Vec<i32>,
    /// Local index of the top and bottom π edges.
    pub top_local: Vec<usize>,
    pub bottom_local: Vec<usize>,
    pub edge_color: Vec<Color>,
    pub tet_kind: Vec<TetKind>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let nx = self.0[x];
            self.0[x] = r;
            x = nx;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Union-find orbits of tetrahedron edges, numbered in order of first appearance.
pub fn build_edge_classes(raw: &RawTriangulation) -> Vec<[usize; 6]> {
    let n = raw.size();
    let mut dsu = Dsu((0..6 * n).collect());
    for t in 0..n {
        for f in 0..4 {
            let g = raw.gluings[t][f];
            for (e, &(a, b)) in EDGE_VERTS.iter().enumerate() {
                if a != f && b != f {
                    dsu.union(6 * t + e, 6 * g.tet + edge_index(g.perm[a], g.perm[b]));
                }
            }
        }
    }
    let mut label = vec![usize::MAX; 6 * n];
    let mut next = 0;
    let mut out = vec![[0; 6]; n];
    for t in 0..n {
        for e in 0..6 {
            let r = dsu.find(6 * t + e);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[t][e] = label[r];
        }
    }
    out
}

fn other_two(a: usize, b: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&v| v != a && v != b);
    (rest.next().unwrap(), rest.next().unwrap())
}

/// Walk the corners around local edge `edge` of `tet`.
fn walk_edge(raw: &RawTriangulation, tet: usize, edge: usize) -> Vec<Corner> {
    let (a, b) = EDGE_VERTS[edge];
    let (c, d) = other_two(a, b);
    let start = Corner { tet, edge, enter: c, exit: d };
    let mut out = vec![start];
    let mut cur = start;
    let (mut a, mut b) = (a, b);
    loop {
        let g = raw.gluings[cur.tet][cur.exit];
        let p: Perm4 = g.perm;
        let next = Corner {
            tet: g.tet,
            edge: edge_index(p[a], p[b]),
            enter: p[cur.exit],
            exit: p[cur.enter],
        };
        a = p[a];
        b = p[b];
        if next == start {
            return out;
        }
        out.push(next);
        cur = next;
    }
}

fn orientations(raw: &RawTriangulation) -> Result<Vec<i32>> {
    let n = raw.size();
    let mut sign = vec![0i32; n];
    sign[0] = 1;
    let mut queue = vec![0];
    while let Some(t) = queue.pop() {
        for f in 0..4 {
            let g = raw.gluings[t][f];
            let want = -sign[t] * g.perm.sign();
            if sign[g.tet] == 0 {
                sign[g.tet] = want;
                queue.push(g.tet);
            } else if sign[g.tet] != want {
                return Err(Error::Invalid("triangulation is not orientable".into()));
            }
        }
    }
    Ok(sign)
}

fn face_ids(raw: &RawTriangulation) -> (Vec<[usize; 4]>, Vec<[(usize, usize); 2]>) {
    let n = raw.size();
    let mut ids = vec![[usize::MAX; 4]; n];
    let mut sides = Vec::with_capacity(2 * n);
    for t in 0..n {
        for f in 0..4 {
            if ids[t][f] != usize::MAX {
                continue;
            }
            let g = raw.gluings[t][f];
            let back = g.perm[f];
            ids[t][f] = sides.len();
            ids[g.tet][back] = sides.len();
            sides.push([(t, f), (g.tet, back)]);
        }
    }
    (ids, sides)
}

fn verts_of(e: usize, v: usize) -> bool {
    let (a, b) = EDGE_VERTS[e];
    a == v || b == v
}

impl VeeringTriangulation {
    pub fn new(raw: RawTriangulation) -> Result<Self> {
        let diags = crate::sigio::validate_gluing(&raw);
        if let Some(d) = diags.first() {
            return Err(Error::Invalid(d.to_string()));
        }
        let n = raw.size();
        let orientation = orientations(&raw)?;
        let edge_class = build_edge_classes(&raw);
        let ne = edge_class.iter().flatten().max().map_or(0, |m| m + 1);
        let (face_id, mut face_sides) = face_ids(&raw);

        // Taut: each edge class carries exactly two π corners.
        let mut pi_count = vec![0usize; ne];
        for t in 0..n {
            let d = raw.pi_pair[t] as usize;
            pi_count[edge_class[t][d]] += 1;
            pi_count[edge_class[t][5 - d]] += 1;
        }
        if let Some(e) = pi_count.iter().position(|&c| c != 2) {
            return Err(Error::NotTransverseTaut(format!(
                "edge {e} has {} π corners",
                pi_count[e]
            )));
        }

        let top_local = derive_coorientations(&raw, &face_sides)?;
        let bottom_local: Vec<usize> = top_local.iter().map(|&e| 5 - e).collect();
        let is_top_face = |t: usize, f: usize| verts_of(bottom_local[t], f);
        for s in face_sides.iter_mut() {
            let (lo, hi) = (s[0], s[1]);
            if is_top_face(hi.0, hi.1) {
                *s = [hi, lo];
            }
        }

        let edge_color = derive_veering_colors(&edge_class, &orientation, &top_local, ne)?;
        let tet_kind = (0..n)
            .map(|t| {
                let top = edge_color[edge_class[t][top_local[t]]];
                let bot = edge_color[edge_class[t][bottom_local[t]]];
                match (top, bot) {
                    (Color::Red, Color::Red) => TetKind::FanRed,
                    (Color::Blue, Color::Blue) => TetKind::FanBlue,
                    _ => TetKind::Toggle,
                }
            })
            .collect();

        let mut first = vec![None; ne];
        for t in 0..n {
            for e in 0..6 {
                first[edge_class[t][e]].get_or_insert((t, e));
            }
        }
        let mut edges = Vec::with_capacity(ne);
        for (cls, start) in first.into_iter().enumerate() {
            let (t, e) = start.expect("edge class has a representative");
            let corners = walk_edge(&raw, t, e);
            edges.push(edge_data(cls, corners, &top_local, &bottom_local, &face_id)?);
        }

        Ok(VeeringTriangulation {
            raw,
            edge_class,
            edges,
            face_id,
            face_sides,
            orientation,
            top_local,
            bottom_local,
            edge_color,
            tet_kind,
        })
    }

    pub fn from_sig(sig: &str) -> Result<Self> {
        Self::new(crate::sigio::parse_taut_sig(sig)?)
    }

    pub fn n_tets(&self) -> usize {
        self.raw.size()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_faces(&self) -> usize {
        self.face_sides.len()
    }

    pub fn top_edge(&self, t: usize) -> usize {
        self.edge_class[t][self.top_local[t]]
    }

    pub fn bottom_edge(&self, t: usize) -> usize {
        self.edge_class[t][self.bottom_local[t]]
    }

    /// True if `f` is a top face of `t` (its coorientation points out of `t`).
    pub fn is_top_face(&self, t: usize, f: usize) -> bool {
        verts_of(self.bottom_local[t], f)
    }

    /// Tetrahedron below face `f` (for which it is a top face).
    pub fn face_below(&self, f: usize) -> usize {
        self.face_sides[f][0].0
    }

    /// Tetrahedron above face `f` (for which it is a bottom face).
    pub fn face_above(&self, f: usize) -> usize {
        self.face_sides[f][1].0
    }

    /// Edge classes of face `f`, as local vertex triples of its lower tetrahedron.
    pub fn face_edges(&self, f: usize) -> [usize; 3] {
        let (t, fv) = self.face_sides[f][0];
        let mut out = [0; 3];
        let mut k = 0;
        for (e, &(a, b)) in EDGE_VERTS.iter().enumerate() {
            if a != fv && b != fv {
                out[k] = self.edge_class[t][e];
                k += 1;
            }
        }
        out
    }

    pub fn edge_side_profile(&self, e: usize) -> EdgeSideProfile {
        let s = &self.edges[e].sides;
        EdgeSideProfile {
            delta: [s[0].delta(), s[1].delta()],
            short: [s[0].is_short(), s[1].is_short()],
        }
    }

    pub fn count_kinds(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for k in &self.tet_kind {
            match k {
                TetKind::Toggle => c.0 += 1,
                TetKind::FanRed => c.1 += 1,
                TetKind::FanBlue => c.2 += 1,
            }
        }
        c
    }

    /// Number of ideal vertices (cusps), from orbits of tetrahedron vertices.
    pub fn n_cusps(&self) -> usize {
        let n = self.n_tets();
        let mut dsu = Dsu((0..4 * n).collect());
        for t in 0..n {
            for f in 0..4 {
                let g = self.raw.gluings[t][f];
                for v in (0..4).filter(|&v| v != f) {
                    dsu.union(4 * t + v, 4 * g.tet + g.perm[v]);
                }
            }
        }
        (0..4 * n).filter(|&x| dsu.find(x) == x).count()
    }
}

/// Chooses the top π edge of every tetrahedron so that each face is a top face
/// of exactly one of its two tetrahedra. Face 0 of tetrahedron 0 is made a top face.
pub fn derive_coorientations(
    raw: &RawTriangulation,
    face_sides: &[[(usize, usize); 2]],
) -> Result<Vec<usize>> {
    let n = raw.size();
    // flip[t] = true means the top edge is 5 - d, so edge d (containing vertex 0) is at the bottom.
    let mut flip: Vec<Option<bool>> = vec![None; n];
    flip[0] = Some(true);
    let in_d = |t: usize, f: usize| verts_of(raw.pi_pair[t] as usize, f);
    let mut adj = vec![Vec::new(); n];
    for s in face_sides {
        let ((t, f), (u, g)) = (s[0], s[1]);
        let rel = !(in_d(t, f) ^ in_d(u, g));
        adj[t].push((u, rel));
        adj[u].push((t, rel));
    }
    let mut stack = vec![0];
    while let Some(t) = stack.pop() {
        let ft = flip[t].unwrap();
        for &(u, rel) in &adj[t] {
            let want = ft ^ rel;
            match flip[u] {
                None => {
                    flip[u] = Some(want);
                    stack.push(u);
                }
                Some(x) if x != want => {
                    return Err(Error::NotTransverseTaut(format!(
                        "no consistent coorientation at tetrahedra {t} and {u}"
                    )))
                }
                _ => {}
            }
        }
    }
    Ok((0..n)
        .map(|t| {
            let d = raw.pi_pair[t] as usize;
            if flip[t].unwrap() { 5 - d } else { d }
        })
        .collect())
}

/// Colors each edge class so that every tetrahedron, viewed with its top edge in
/// front, shows red, blue, red, blue on its four equatorial edges.
pub fn derive_veering_colors(
    edge_class: &[[usize; 6]],
    orientation: &[i32],
    top_local: &[usize],
    n_edges: usize,
) -> Result<Vec<Color>> {
    let mut color: Vec<Option<Color>> = vec![None; n_edges];
    for (t, &top) in top_local.iter().enumerate() {
        let (a, b) = EDGE_VERTS[top];
        let (c, d) = EDGE_VERTS[5 - top];
        let positive = orientation[t] * Perm4([a, b, c, d]).sign() > 0;
        let first = if positive { Color::Red } else { Color::Blue };
        for (u, v, col) in [
            (a, c, first),
            (b, d, first),
            (a, d, first.flip()),
            (b, c, first.flip()),
        ] {
            let cls = edge_class[t][edge_index(u, v)];
            match color[cls] {
                None => color[cls] = Some(col),
                Some(x) if x != col => {
                    return Err(Error::NotVeering(format!(
                        "edge {cls} needs both colors (tetrahedron {t})"
                    )))
                }
                _ => {}
            }
        }
    }
    color
        .into_iter()
        .enumerate()
        .map(|(e, c)| c.ok_or_else(|| Error::NotVeering(format!("edge {e} is never equatorial"))))
        .collect()
}

fn edge_data(
    cls: usize,
    corners: Vec<Corner>,
    top_local: &[usize],
    bottom_local: &[usize],
    face_id: &[[usize; 4]],
) -> Result<EdgeData> {
    let v = corners.len();
    let tops: Vec<usize> = (0..v).filter(|&i| corners[i].edge == top_local[corners[i].tet]).collect();
    let bots: Vec<usize> =
        (0..v).filter(|&i| corners[i].edge == bottom_local[corners[i].tet]).collect();
    if tops.len() != 1 || bots.len() != 1 {
        return Err(Error::NotTransverseTaut(format!(
            "edge {cls} is not the top edge of exactly one tetrahedron and the bottom edge of one"
        )));
    }
    let (pb, pa) = (tops[0], bots[0]);
    let exit_face = |i: usize| face_id[corners[i].tet][corners[i].exit];

    let mut fwd = Side { tets: Vec::new(), faces: vec![exit_face(pb)] };
    let mut i = (pb + 1) % v;
    while i != pa {
        fwd.tets.push(corners[i].tet);
        fwd.faces.push(exit_face(i));
        i = (i + 1) % v;
    }
    let mut bwd = Side { tets: Vec::new(), faces: vec![exit_face((pb + v - 1) % v)] };
    let mut i = (pb + v - 1) % v;
    while i != pa {
        bwd.tets.push(corners[i].tet);
        bwd.faces.push(exit_face((i + v - 1) % v));
        i = (i + v - 1) % v;
    }
    if fwd.tets.is_empty() || bwd.tets.is_empty() {
        return Err(Error::NotTransverseTaut(format!("edge {cls} has an empty side stack")));
    }
    let sides = if fwd.faces[0] <= bwd.faces[0] { [fwd, bwd] } else { [bwd, fwd] };
    Ok(EdgeData {
        below: corners[pb].tet,
        above: corners[pa].tet,
        corners,
        sides,
    })
}
