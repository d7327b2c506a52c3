//! Embedded signature corpus.

const CORPUS: &str = include_str!("../data/corpus.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    /// One-cusp b1 = 1 triangulations with normalized dilatation below μ⁴.
    Isolated,
    /// One-cusp b1 = 1 triangulations attaining μ⁴.
    Mu4,
    /// The b1 = 2 triangulation attaining μ⁴.
    Mu4Betti2,
    /// b1 = 2 triangulations whose face minimum is checked against 17.944.
    BoundCheck,
    /// b1 = 3 triangulations with their recorded compile lines.
    Betti3,
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub group: Group,
    pub sig: &'static str,
    /// Census index, value, and extra column when recorded.
    pub record: Option<(u64, f64, i64)>,
}

pub fn entries() -> Vec<Entry> {
    CORPUS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace();
            let group = match it.next().unwrap() {
                "isolated" => Group::Isolated,
                "mu4" => Group::Mu4,
                "mu4b2" => Group::Mu4Betti2,
                "bound" => Group::BoundCheck,
                "betti3" => Group::Betti3,
                g => panic!("unknown corpus group {g}"),
            };
            let sig = it.next().unwrap();
            let rest: Vec<&str> = it.collect();
            let record = (rest.len() == 3).then(|| {
                (rest[0].parse().unwrap(), rest[1].parse().unwrap(), rest[2].parse().unwrap())
            });
            Entry { group, sig, record }
        })
        .collect()
}

pub fn group(g: Group) -> Vec<&'static str> {
    entries().into_iter().filter(|e| e.group == g).map(|e| e.sig).collect()
}

/// Every signature once, in file order.
pub fn all_sigs() -> Vec<&'static str> {
    let mut out: Vec<&'static str> = Vec::new();
    for e in entries() {
        if !out.contains(&e.sig) {
            out.push(e.sig);
        }
    }
    out
}

/// The eighteen b1 = 1 signatures below the 6.86 cutoff.
pub fn betti_one() -> Vec<&'static str> {
    let mut v = group(Group::Isolated);
    v.extend(group(Group::Mu4));
    v
}
