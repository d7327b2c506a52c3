//! Compile lines, signature files, and the batch runner behind the `veerdil` binary.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use veerdil::facemin::{dilatation_b1_with, min_dilatation_b2_with, DilatationReport};
use veerdil::invariants::Invariants;
use veerdil::{Error, VeeringTriangulation};

/// `index sig value extra`, the value printed to four places.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompileLine {
    pub index: u64,
    pub sig: String,
    pub value: f64,
    /// χ for `b1 = 1`, the gcd of the spanning-ray norms for `b1 = 2`.
    pub extra: i64,
}

impl CompileLine {
    pub fn new(index: u64, sig: &str, r: &DilatationReport) -> Self {
        CompileLine { index, sig: sig.to_string(), value: r.value(), extra: r.extra() }
    }
}

impl fmt::Display for CompileLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {:.4} {}", self.index, self.sig, self.value, self.extra)
    }
}

impl FromStr for CompileLine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let cols: Vec<&str> = s.split_whitespace().collect();
        let [index, sig, value, extra] = cols[..] else {
            return Err(format!("expected 4 columns, found {}", cols.len()));
        };
        Ok(CompileLine {
            index: index.parse().map_err(|e| format!("index: {e}"))?,
            sig: sig.to_string(),
            value: value.parse().map_err(|e| format!("value: {e}"))?,
            extra: extra.parse().map_err(|e| format!("extra: {e}"))?,
        })
    }
}

/// Entries of a signature file: one signature per line, optionally preceded by
/// its census index. Without an index, the 1-based line number is used. Blank
/// lines and `#` comments are skipped.
pub fn read_sig_list(text: &str) -> Result<Vec<(u64, String)>, String> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split_whitespace().collect();
        match cols[..] {
            [sig] => out.push((n as u64 + 1, sig.to_string())),
            [index, sig] => {
                let i = index.parse().map_err(|_| format!("line {}: bad census index {index:?}", n + 1))?;
                out.push((i, sig.to_string()));
            }
            _ => return Err(format!("line {}: expected `[index] sig`", n + 1)),
        }
    }
    Ok(out)
}

/// Short machine-readable name of an error.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Invalid(_) => "invalid",
        Error::NotTransverseTaut(_) => "not-transverse-taut",
        Error::NotVeering(_) => "not-veering",
        Error::WrongBetti { .. } => "wrong-betti",
        Error::OutOfRange(_) => "out-of-range",
        Error::InconsistentResolution(_) => "inconsistent-resolution",
        Error::ZeroPolynomial => "zero-polynomial",
        Error::NoRealRoot(_) => "no-real-root",
        Error::DegenerateCone(_) => "degenerate-cone",
        Error::Solver(_) => "solver",
        Error::Domain(_) => "domain",
    }
}

/// Runs the pipeline matching the first Betti number.
pub fn compile(sig: &str, tol: f64) -> Result<DilatationReport, Error> {
    let v = VeeringTriangulation::from_sig(sig)?;
    let inv = Invariants::compute(&v);
    match inv.homology.b1 {
        1 => dilatation_b1_with(&v, &inv, tol),
        2 => min_dilatation_b2_with(&v, &inv, tol),
        b => Err(Error::WrongBetti { expected: if b == 0 { 1 } else { 2 }, found: b }),
    }
}

#[derive(Clone, Debug)]
pub struct BatchItem {
    pub index: u64,
    pub sig: String,
    pub result: Result<DilatationReport, Error>,
}

impl BatchItem {
    pub fn line(&self) -> Option<CompileLine> {
        self.result.as_ref().ok().map(|r| CompileLine::new(self.index, &self.sig, r))
    }
}

/// Compiles every entry on a pool of `jobs` workers; results keep input order.
pub fn run_batch(entries: &[(u64, String)], tol: f64, jobs: usize) -> Result<Vec<BatchItem>, String> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| e.to_string())?;
    Ok(pool.install(|| {
        entries
            .par_iter()
            .map(|(index, sig)| BatchItem { index: *index, sig: sig.clone(), result: compile(sig, tol) })
            .collect()
    }))
}
