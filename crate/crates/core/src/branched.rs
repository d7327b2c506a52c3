//! The dual graph Γ of a veering triangulation and the sector combinatorics of
//! its stable branched surface: turns, branch cycles, hooks, resolutions, and
//! the TBT/SBF/BSBF/FRC conditions.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::veer::{Color, TetKind, VeeringTriangulation, EDGE_VERTS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Resolution {
    /// Join each in-edge to its anti-branching partner.
    A,
    /// Join each in-edge to its branching partner.
    B,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualGraph {
    pub n_vertices: usize,
    /// Edge `f` runs from `tail[f]` to `head[f]`; edges are faces.
    pub tail: Vec<usize>,
    pub head: Vec<usize>,
    pub ins: Vec<[usize; 2]>,
    pub outs: Vec<[usize; 2]>,
    /// Branching partner of each edge at its head.
    pub branch_next: Vec<usize>,
    /// Anti-branching partner of each edge at its head.
    pub anti_next: Vec<usize>,
    pub color: Vec<Color>,
}

impl DualGraph {
    pub fn new(v: &VeeringTriangulation) -> Self {
        let n = v.n_tets();
        let m = v.n_faces();
        let tail: Vec<usize> = (0..m).map(|f| v.face_below(f)).collect();
        let head: Vec<usize> = (0..m).map(|f| v.face_above(f)).collect();
        let mut ins = vec![[0; 2]; n];
        let mut outs = vec![[0; 2]; n];
        let mut branch_next = vec![usize::MAX; m];
        let mut anti_next = vec![usize::MAX; m];
        let mut color = Vec::with_capacity(n);
        for t in 0..n {
            let (a, b) = EDGE_VERTS[v.top_local[t]];
            let (c, d) = EDGE_VERTS[v.bottom_local[t]];
            let top_color = v.edge_color[v.top_edge(t)];
            color.push(top_color);
            let fid = |x: usize| v.face_id[t][x];
            // Bottom faces are opposite the top vertices, top faces opposite the bottom ones.
            ins[t] = [fid(a), fid(b)];
            outs[t] = [fid(c), fid(d)];
            for (x, xo) in [(a, b), (b, a)] {
                for (y, yo) in [(c, d), (d, c)] {
                    let side = v.edge_class[t][crate::veer::edge_index(x, y)];
                    let into = fid(xo);
                    let out = fid(yo);
                    if v.edge_color[side] != top_color {
                        branch_next[into] = out;
                    } else {
                        anti_next[into] = out;
                    }
                }
            }
        }
        DualGraph { n_vertices: n, tail, head, ins, outs, branch_next, anti_next, color }
    }

    pub fn n_edges(&self) -> usize {
        self.tail.len()
    }

    /// True if entering `head(e_in)` along `e_in` and leaving along `e_out` is smooth.
    pub fn is_branching(&self, e_in: usize, e_out: usize) -> bool {
        self.branch_next[e_in] == e_out
    }

    fn orbits(next: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; next.len()];
        let mut out = Vec::new();
        for s in 0..next.len() {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut e = s;
            while !seen[e] {
                seen[e] = true;
                cyc.push(e);
                e = next[e];
            }
            out.push(cyc);
        }
        out
    }

    /// Cycles taking only branching turns; they partition the edges.
    pub fn branch_cycles(&self) -> Vec<Vec<usize>> {
        Self::orbits(&self.branch_next)
    }

    /// Cycles taking only anti-branching turns.
    pub fn ab_cycles(&self) -> Vec<Vec<usize>> {
        Self::orbits(&self.anti_next)
    }

    pub fn as_multigraph(&self) -> Multigraph {
        Multigraph {
            n_vertices: self.n_vertices,
            tail: self.tail.clone(),
            head: self.head.clone(),
            proj: (0..self.n_vertices).collect(),
        }
    }

    /// Splits each listed vertex into two pass-through vertices. Edge ids are kept.
    pub fn resolve(&self, set: &ResolutionSet) -> Multigraph {
        let mut g = self.as_multigraph();
        for (&v, &r) in &set.0 {
            let next = match r {
                Resolution::A => &self.anti_next,
                Resolution::B => &self.branch_next,
            };
            let [i0, i1] = self.ins[v];
            let extra = g.n_vertices;
            g.n_vertices += 1;
            g.proj.push(v);
            // Strand through i0 keeps vertex v; strand through i1 moves to the new vertex.
            g.head[i1] = extra;
            g.tail[next[i1]] = extra;
            debug_assert_eq!(g.tail[next[i0]], v);
            debug_assert_eq!(g.head[i0], v);
        }
        g
    }

    /// Resolution instructions making a path (or cycle) lift to a single edge.
    pub fn path_resolutions(&self, hook: &Hook) -> Result<ResolutionSet> {
        let mut set = ResolutionSet::default();
        let edges = hook.edges();
        let pairs = edges.len().saturating_sub(1) + usize::from(hook.is_cycle());
        for i in 0..pairs {
            let (a, b) = (edges[i], edges[(i + 1) % edges.len()]);
            if self.head[a] != self.tail[b] {
                return Err(Error::Invalid(format!("edges {a} and {b} are not consecutive")));
            }
            let r = if self.is_branching(a, b) { Resolution::B } else { Resolution::A };
            set.insert(self.head[a], r)?;
        }
        Ok(set)
    }
}

/// Vertex instructions, at most one per vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ResolutionSet(pub BTreeMap<usize, Resolution>);

impl ResolutionSet {
    pub fn insert(&mut self, v: usize, r: Resolution) -> Result<()> {
        match self.0.insert(v, r) {
            Some(old) if old != r => Err(Error::InconsistentResolution(v)),
            _ => Ok(()),
        }
    }

    pub fn union(&self, other: &ResolutionSet) -> Result<ResolutionSet> {
        let mut out = self.clone();
        for (&v, &r) in &other.0 {
            out.insert(v, r)?;
        }
        Ok(out)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A directed multigraph whose edge ids match Γ, with vertices projecting to Γ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multigraph {
    pub n_vertices: usize,
    pub tail: Vec<usize>,
    pub head: Vec<usize>,
    pub proj: Vec<usize>,
}

impl Multigraph {
    /// Component label of every vertex, and the component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut parent: Vec<usize> = (0..self.n_vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (&a, &b) in self.tail.iter().zip(&self.head) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut label = vec![usize::MAX; self.n_vertices];
        let mut count = 0;
        let mut out = vec![0; self.n_vertices];
        for v in 0..self.n_vertices {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            out[v] = label[r];
        }
        (out, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// Hierholzer's algorithm. `None` unless every vertex is balanced and all
    /// vertices lie in one component.
    pub fn eulerian_circuit(&self) -> Option<Vec<usize>> {
        let m = self.tail.len();
        if m == 0 || !self.is_connected() {
            return None;
        }
        let mut out_edges = vec![Vec::new(); self.n_vertices];
        let mut indeg = vec![0usize; self.n_vertices];
        for e in 0..m {
            out_edges[self.tail[e]].push(e);
            indeg[self.head[e]] += 1;
        }
        if (0..self.n_vertices).any(|v| indeg[v] != out_edges[v].len()) {
            return None;
        }
        for l in out_edges.iter_mut() {
            l.reverse();
        }
        let mut stack: Vec<(usize, Option<usize>)> = vec![(self.tail[0], None)];
        let mut circuit = Vec::with_capacity(m);
        while let Some(&(v, via)) = stack.last() {
            if let Some(e) = out_edges[v].pop() {
                stack.push((self.head[e], Some(e)));
            } else {
                stack.pop();
                if let Some(e) = via {
                    circuit.push(e);
                }
            }
        }
        circuit.reverse();
        (circuit.len() == m).then_some(circuit)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SectorSide {
    /// `e_1 .. e_{δ+1}`: bottom-side edges then the top-side edge.
    pub edges: Vec<usize>,
    /// `v_k = head(e_k)` for `k = 1 .. δ+1`.
    pub vertices: Vec<usize>,
}

impl SectorSide {
    pub fn delta(&self) -> usize {
        self.edges.len() - 1
    }

    /// 1-based `e_k`.
    pub fn e(&self, k: usize) -> usize {
        self.edges[k - 1]
    }

    /// 1-based `v_k`; `v_0` is not stored here.
    pub fn v(&self, k: usize) -> usize {
        self.vertices[k - 1]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Sector {
    pub dual_edge: usize,
    pub color: Color,
    pub toggle: bool,
    pub top_vertex: usize,
    pub bottom_vertex: usize,
    pub sides: [SectorSide; 2],
}

impl Sector {
    pub fn boundary_length(&self) -> usize {
        self.sides[0].edges.len() + self.sides[1].edges.len()
    }
}

/// One sector per edge class, read off the two side stacks of the edge.
pub fn build_sectors(v: &VeeringTriangulation, g: &DualGraph) -> Result<Vec<Sector>> {
    let mut out = Vec::with_capacity(v.n_edges());
    for (e, data) in v.edges.iter().enumerate() {
        let color = v.edge_color[e];
        let sides = [0, 1].map(|b| {
            let faces = &data.sides[b].faces;
            SectorSide {
                edges: faces.clone(),
                vertices: faces.iter().map(|&f| g.head[f]).collect(),
            }
        });
        let s = Sector {
            dual_edge: e,
            color,
            toggle: v.tet_kind[data.above] == TetKind::Toggle,
            top_vertex: data.above,
            bottom_vertex: data.below,
            sides,
        };
        check_sector(g, &s)?;
        out.push(s);
    }
    Ok(out)
}

fn check_sector(g: &DualGraph, s: &Sector) -> Result<()> {
    let bad = |msg: &str| Err(Error::Invalid(format!("sector {}: {msg}", s.dual_edge)));
    for side in &s.sides {
        let d = side.delta();
        if g.tail[side.e(1)] != s.bottom_vertex || side.v(d + 1) != s.top_vertex {
            return bad("side does not run from bottom to top vertex");
        }
        for k in 1..=d {
            let turn = g.is_branching(side.e(k), side.e(k + 1));
            if turn != (k < d) {
                return bad("unexpected turn type along a side");
            }
        }
        if g.color[s.bottom_vertex] != s.color || g.color[side.v(d)] != s.color {
            return bad("bottom-side endpoint has the wrong color");
        }
        if (1..d).any(|k| g.color[side.v(k)] == s.color) {
            return bad("interior bottom-side vertex has the wrong color");
        }
    }
    Ok(())
}

/// A hook `(e_k, …, e_{δ+1})`, or the closed cycle `(e_1, …, e_δ)` when
/// `e_{δ+1} = e_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Hook {
    Path { edges: Vec<usize>, deep: bool },
    Cycle { edges: Vec<usize> },
}

impl Hook {
    pub fn edges(&self) -> &[usize] {
        match self {
            Hook::Path { edges, .. } | Hook::Cycle { edges } => edges,
        }
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, Hook::Cycle { .. })
    }

    pub fn is_deep(&self) -> bool {
        match self {
            Hook::Path { deep, .. } => *deep,
            Hook::Cycle { .. } => true,
        }
    }
}

/// The hook of `s` on side `beta` (0 or 1) starting at 1-based index `k`.
pub fn hook_path(s: &Sector, beta: usize, k: usize) -> Result<Hook> {
    let side = s
        .sides
        .get(beta)
        .ok_or_else(|| Error::OutOfRange(format!("side {beta}")))?;
    let d = side.delta();
    if k == 0 || k > d + 1 {
        return Err(Error::OutOfRange(format!("hook index {k} outside 1..={}", d + 1)));
    }
    if k == 1 && side.e(d + 1) == side.e(1) {
        return Ok(Hook::Cycle { edges: side.edges[..d].to_vec() });
    }
    Ok(Hook::Path { edges: side.edges[k - 1..].to_vec(), deep: k == 1 })
}

/// The path `h'_β = (e_2, …, e_δ)`, possibly empty.
pub fn prefix_hook(s: &Sector, beta: usize) -> Hook {
    let side = &s.sides[beta];
    let d = side.delta();
    let edges = if d >= 2 { side.edges[1..d].to_vec() } else { Vec::new() };
    Hook::Path { edges, deep: false }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectorConditions {
    pub tbt: [bool; 2],
    pub sbf: [bool; 2],
    pub bsbf: bool,
    pub frc: bool,
}

/// TBT on side β: the top vertex `v_{δ+1}` equals `v_0`, and `(e_{δ+1}, e_1)`
/// is an anti-branching turn there.
pub fn tbt(g: &DualGraph, s: &Sector, beta: usize) -> bool {
    let side = &s.sides[beta];
    let d = side.delta();
    let (top, first) = (side.e(d + 1), side.e(1));
    s.top_vertex == s.bottom_vertex && !g.is_branching(top, first)
}

/// The sector whose top side on side β is `e_1`, i.e. `s^β_1`.
pub fn first_side_sector<'a>(sectors: &'a [Sector], s: &Sector, beta: usize) -> &'a Sector {
    let v1 = s.sides[beta].v(1);
    sectors
        .iter()
        .find(|x| x.top_vertex == v1)
        .expect("every vertex is the top vertex of one sector")
}

pub fn sbf(s: &Sector, beta: usize) -> bool {
    let side = &s.sides[beta];
    side.e(side.delta() + 1) == side.e(1)
}

pub fn frc(g: &DualGraph, s: &Sector) -> Result<bool> {
    let r1 = g.path_resolutions(&prefix_hook(s, 0))?;
    let r2 = g.path_resolutions(&prefix_hook(s, 1))?;
    Ok(g.resolve(&r1.union(&r2)?).is_connected())
}

pub fn sector_conditions(g: &DualGraph, s: &Sector) -> Result<SectorConditions> {
    let sbf = [sbf(s, 0), sbf(s, 1)];
    Ok(SectorConditions {
        tbt: [tbt(g, s, 0), tbt(g, s, 1)],
        sbf,
        bsbf: sbf[0] && sbf[1],
        frc: frc(g, s)?,
    })
}

/// Every fan sector satisfies TBT on some side and every toggle sector satisfies BSBF.
pub fn m003_predicate(g: &DualGraph, sectors: &[Sector]) -> bool {
    sectors.iter().all(|s| {
        if s.toggle {
            sbf(s, 0) && sbf(s, 1)
        } else {
            tbt(g, s, 0) || tbt(g, s, 1)
        }
    })
}

/// Whether the resolution along a hook is connected.
pub fn hook_connected(g: &DualGraph, hook: &Hook) -> Result<bool> {
    Ok(g.resolve(&g.path_resolutions(hook)?).is_connected())
}
