//! Taut isomorphism signatures: `<isosig body>_<angle digits>`.
//!
//! The body uses the standard base-64 isomorphism-signature packing for
//! 3-dimensional triangulations. Each angle digit selects the opposite edge
//! pair carrying the π angles: 0 for 01|23, 1 for 02|13, 2 for 03|12.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Perm4;

/// Face gluing: face `i` of a tetrahedron is glued to face `perm[i]` of `tet`,
/// with vertex `v` sent to vertex `perm[v]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

/// A closed face pairing of ideal tetrahedra with a π-pair choice per tetrahedron.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RawTriangulation {
    pub gluings: Vec<[Gluing; 4]>,
    pub pi_pair: Vec<u8>,
}

/// Body and angle string of a signature, kept separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautSig {
    pub body: String,
    pub angles: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GluingDiagnostic {
    /// Face `(tet, face)` is sent somewhere that does not send it back.
    Involution { tet: usize, face: usize },
    /// The permutation does not invert across the glued face.
    Permutation { tet: usize, face: usize },
    /// Target tetrahedron index out of range.
    BadTarget { tet: usize, face: usize },
    /// A face glued to itself.
    SelfGluing { tet: usize, face: usize },
    /// π-pair digit outside {0,1,2}.
    BadAngle { tet: usize },
    /// Angle vector length differs from the tetrahedron count.
    AngleCount { expected: usize, found: usize },
}

impl fmt::Display for GluingDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Involution { tet, face } => write!(f, "involution violated at tet {tet} face {face}"),
            Self::Permutation { tet, face } => write!(f, "permutation mismatch at tet {tet} face {face}"),
            Self::BadTarget { tet, face } => write!(f, "gluing target out of range at tet {tet} face {face}"),
            Self::SelfGluing { tet, face } => write!(f, "face glued to itself at tet {tet} face {face}"),
            Self::BadAngle { tet } => write!(f, "angle digit out of range at tet {tet}"),
            Self::AngleCount { expected, found } => {
                write!(f, "expected {expected} angle digits, found {found}")
            }
        }
    }
}

impl RawTriangulation {
    pub fn size(&self) -> usize {
        self.gluings.len()
    }

    pub fn glued(&self, tet: usize, face: usize) -> Gluing {
        self.gluings[tet][face]
    }
}

fn sval(c: u8) -> Option<u32> {
    match c {
        b'a'..=b'z' => Some((c - b'a') as u32),
        b'A'..=b'Z' => Some((c - b'A') as u32 + 26),
        b'0'..=b'9' => Some((c - b'0') as u32 + 52),
        b'+' => Some(62),
        b'-' => Some(63),
        _ => None,
    }
}

fn schar(v: u32) -> char {
    debug_assert!(v < 64);
    let v = v as u8;
    (match v {
        0..=25 => b'a' + v,
        26..=51 => b'A' + v - 26,
        52..=61 => b'0' + v - 52,
        62 => b'+',
        _ => b'-',
    }) as char
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn next(&mut self) -> Result<u32> {
        let c = *self
            .bytes
            .get(self.pos)
            .ok_or_else(|| Error::parse("signature body ended early"))?;
        self.pos += 1;
        sval(c).ok_or_else(|| Error::parse(format!("invalid signature character {:?}", c as char)))
    }

    fn read_int(&mut self, chars: usize) -> Result<usize> {
        let mut v = 0usize;
        for i in 0..chars {
            v |= (self.next()? as usize) << (6 * i);
        }
        Ok(v)
    }
}

fn write_int(out: &mut String, mut v: usize, chars: usize) {
    for _ in 0..chars {
        out.push(schar((v & 63) as u32));
        v >>= 6;
    }
}

fn decode_body(body: &str) -> Result<Vec<[Gluing; 4]>> {
    let mut r = Reader { bytes: body.as_bytes(), pos: 0 };
    let first = r.next()?;
    let (n, nchars) = if first < 63 {
        (first as usize, 1usize)
    } else {
        let nchars = r.next()? as usize;
        if nchars == 0 || nchars > 8 {
            return Err(Error::parse("invalid size width"));
        }
        (r.read_int(nchars)?, nchars)
    };
    if n == 0 {
        return Err(Error::parse("empty triangulation"));
    }

    let mut actions = Vec::with_capacity(4 * n);
    let mut facets = 0usize;
    let mut joins = 0usize;
    while facets < 4 * n {
        let c = r.next()?;
        for k in 0..3 {
            let a = (c >> (2 * k)) & 3;
            if facets >= 4 * n {
                if a != 0 {
                    return Err(Error::parse("trailing facet action"));
                }
                continue;
            }
            match a {
                0 => return Err(Error::parse("boundary face in signature")),
                1 => facets += 2,
                2 => {
                    facets += 2;
                    joins += 1;
                }
                _ => return Err(Error::parse("invalid facet action")),
            }
            actions.push(a);
        }
    }
    if facets != 4 * n {
        return Err(Error::parse("facet actions do not cover all faces"));
    }

    let mut dests = Vec::with_capacity(joins);
    for _ in 0..joins {
        dests.push(r.read_int(nchars)?);
    }
    let mut perms = Vec::with_capacity(joins);
    for _ in 0..joins {
        let i = r.next()? as usize;
        if i >= 24 {
            return Err(Error::parse("permutation index out of range"));
        }
        perms.push(Perm4::from_index(i));
    }
    if r.pos != r.bytes.len() {
        return Err(Error::parse("trailing characters in signature body"));
    }

    let mut glue: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; n];
    let (mut ai, mut ji, mut next_unused) = (0usize, 0usize, 1usize);
    for pos in 0..n {
        for face in 0..4 {
            if glue[pos][face].is_some() {
                continue;
            }
            let a = *actions.get(ai).ok_or_else(|| Error::parse("facet actions exhausted"))?;
            ai += 1;
            let g = if a == 1 {
                if next_unused >= n {
                    return Err(Error::parse("new tetrahedron beyond declared size"));
                }
                next_unused += 1;
                Gluing { tet: next_unused - 1, perm: Perm4::IDENTITY }
            } else {
                let g = Gluing { tet: dests[ji], perm: perms[ji] };
                ji += 1;
                g
            };
            if g.tet >= n {
                return Err(Error::parse("gluing destination out of range"));
            }
            let back = g.perm[face];
            if (g.tet == pos && back == face) || glue[g.tet][back].is_some() {
                return Err(Error::parse("gluing onto an already glued face"));
            }
            glue[pos][face] = Some(g);
            glue[g.tet][back] = Some(Gluing { tet: pos, perm: g.perm.inverse() });
        }
    }
    if next_unused != n {
        return Err(Error::parse("signature is disconnected"));
    }
    Ok(glue.into_iter().map(|g| g.map(|x| x.unwrap())).collect())
}

/// Splits `body_digits` into its two parts without decoding.
pub fn split_sig(text: &str) -> Result<TautSig> {
    let text = text.trim();
    let mut parts = text.split('_');
    let (body, digits) = match (parts.next(), parts.next(), parts.next()) {
        (Some(b), Some(d), None) if !b.is_empty() => (b, d),
        _ => return Err(Error::parse("expected exactly one underscore")),
    };
    let angles = digits
        .bytes()
        .map(|c| match c {
            b'0'..=b'2' => Ok(c - b'0'),
            _ => Err(Error::parse(format!("angle digit {:?} not in {{0,1,2}}", c as char))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TautSig { body: body.to_string(), angles })
}

pub fn parse_taut_sig(text: &str) -> Result<RawTriangulation> {
    let sig = split_sig(text)?;
    let gluings = decode_body(&sig.body)?;
    if gluings.len() != sig.angles.len() {
        return Err(Error::parse(format!(
            "angle string has length {} but the body encodes {} tetrahedra",
            sig.angles.len(),
            gluings.len()
        )));
    }
    Ok(RawTriangulation { gluings, pi_pair: sig.angles })
}

/// π-pair digit of the edge pair `{a,b} | complement`.
fn pair_digit(a: usize, b: usize) -> u8 {
    let other = if a == 0 { b } else if b == 0 { a } else { 6 - a - b };
    (other - 1) as u8
}

/// Re-encodes the triangulation from tetrahedron 0 with its current vertex labels.
///
/// Tetrahedra and vertex labels are renumbered in traversal order, so a decoded
/// signature comes back unchanged.
pub fn emit_taut_sig(t: &RawTriangulation) -> String {
    let n = t.size();
    // Image of each original tet: new index and the relabeling old vertex -> new vertex.
    let mut image: Vec<Option<(usize, Perm4)>> = vec![None; n];
    let mut order = vec![0usize];
    image[0] = Some((0, Perm4::IDENTITY));
    let mut done = vec![[false; 4]; n];

    let mut actions = Vec::new();
    let mut dests = Vec::new();
    let mut perms = Vec::new();
    let mut pos = 0;
    while pos < order.len() {
        let old = order[pos];
        let (_, lab) = image[old].unwrap();
        let inv = lab.inverse();
        for nf in 0..4 {
            let face = inv[nf];
            if done[old][face] {
                continue;
            }
            let g = t.gluings[old][face];
            let back = g.perm[face];
            done[old][face] = true;
            done[g.tet][back] = true;
            match image[g.tet] {
                None => {
                    // Choose labels on the new tet so the induced gluing is the identity.
                    let new_lab = lab.compose(g.perm.inverse());
                    image[g.tet] = Some((order.len(), new_lab));
                    order.push(g.tet);
                    actions.push(1u32);
                }
                Some((idx, dlab)) => {
                    let induced = dlab.compose(g.perm).compose(inv);
                    actions.push(2);
                    dests.push(idx);
                    perms.push(induced.index());
                }
            }
        }
        pos += 1;
    }
    debug_assert_eq!(order.len(), n, "emit on a disconnected triangulation");

    let mut out = String::new();
    let nchars = if n < 63 {
        out.push(schar(n as u32));
        1
    } else {
        let mut nchars = 1;
        while n >> (6 * nchars) != 0 {
            nchars += 1;
        }
        out.push(schar(63));
        out.push(schar(nchars as u32));
        write_int(&mut out, n, nchars);
        nchars
    };
    for chunk in actions.chunks(3) {
        let v = chunk.iter().enumerate().fold(0, |acc, (k, a)| acc | (a << (2 * k)));
        out.push(schar(v));
    }
    for d in dests {
        write_int(&mut out, d, nchars);
    }
    for p in perms {
        out.push(schar(p as u32));
    }
    out.push('_');
    for (new_idx, &old) in order.iter().enumerate() {
        debug_assert_eq!(image[old].unwrap().0, new_idx);
        let lab = image[old].unwrap().1;
        let d = t.pi_pair[old] as usize;
        let (a, b) = [(0, 1), (0, 2), (0, 3)][d.min(2)];
        out.push((b'0' + pair_digit(lab[a], lab[b])) as char);
    }
    out
}

pub fn validate_gluing(t: &RawTriangulation) -> Vec<GluingDiagnostic> {
    let n = t.size();
    let mut out = Vec::new();
    if t.pi_pair.len() != n {
        out.push(GluingDiagnostic::AngleCount { expected: n, found: t.pi_pair.len() });
    }
    for (tet, &d) in t.pi_pair.iter().enumerate() {
        if d > 2 {
            out.push(GluingDiagnostic::BadAngle { tet });
        }
    }
    for tet in 0..n {
        for face in 0..4 {
            let g = t.gluings[tet][face];
            if g.tet >= n {
                out.push(GluingDiagnostic::BadTarget { tet, face });
                continue;
            }
            let back = g.perm[face];
            if g.tet == tet && back == face {
                out.push(GluingDiagnostic::SelfGluing { tet, face });
                continue;
            }
            let h = t.gluings[g.tet][back];
            if h.tet != tet || h.perm[back] != face {
                out.push(GluingDiagnostic::Involution { tet, face });
            } else if h.perm != g.perm.inverse() {
                out.push(GluingDiagnostic::Permutation { tet, face });
            }
        }
    }
    out
}
