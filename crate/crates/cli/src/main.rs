use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use veerdil::bounds::all_bounds;
use veerdil::branched::{build_sectors, m003_predicate, sector_conditions, DualGraph};
use veerdil::facemin::{dilatation_b1, min_dilatation_b2, DilatationReport};
use veerdil::invariants::Invariants;
use veerdil::{parse_taut_sig, validate_gluing, Error, TetKind, VeeringTriangulation};
use veerdil_cli::{error_kind, read_sig_list, run_batch, CompileLine};

#[derive(Parser)]
#[command(name = "veerdil", version, about = "Veering triangulations and normalized dilatations")]
struct Cli {
    /// Decimal digits for dilatation enclosures in reports.
    #[arg(long, global = true, default_value_t = 12)]
    prec: usize,
    /// Width of root enclosures.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the gluing, taut, and veering conditions of a signature.
    Validate { sig: String },
    /// Sizes, homology, and tetrahedron kinds.
    Info { sig: String },
    /// Dual graph and sectors.
    Dual { sig: String },
    /// Sector identification conditions and the m003 predicate.
    Conditions { sig: String },
    /// Normalized dilatation of a b1 = 1 triangulation.
    Dilatation { sig: String },
    /// Minimum normalized dilatation over the fibered face of a b1 = 2 triangulation.
    MinDilatation { sig: String },
    /// Every tetrahedron-count bound at a normalized dilatation.
    Bounds {
        #[arg(long)]
        value: f64,
    },
    /// One compile line per signature in the file, in input order.
    Batch {
        file: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compile lines whose value is below a threshold.
    Filter {
        file: String,
        #[arg(long)]
        below: f64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// A failure printed as one line: `error <kind> <message>`.
struct Failure {
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { kind: error_kind(&e).into(), message: e.to_string() }
    }
}

fn failure(kind: &str, message: impl Into<String>) -> Failure {
    Failure { kind: kind.into(), message: message.into() }
}

type Out = Result<(), Failure>;

fn emit(cli: &Cli, value: serde_json::Value, text: impl FnOnce() -> String) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        print!("{}", text());
    }
}

fn validate(cli: &Cli, sig: &str) -> Out {
    let raw = parse_taut_sig(sig)?;
    let diags: Vec<String> = validate_gluing(&raw).iter().map(ToString::to_string).collect();
    let v = if diags.is_empty() { Some(VeeringTriangulation::new(raw.clone())) } else { None };
    let (taut, veering) = match &v {
        None => ("skipped".to_string(), "skipped".to_string()),
        Some(Ok(_)) => ("ok".into(), "ok".into()),
        Some(Err(e @ Error::NotVeering(_))) => ("ok".into(), e.to_string()),
        Some(Err(e)) => (e.to_string(), "skipped".into()),
    };
    let gluing = if diags.is_empty() { "ok".to_string() } else { diags.join("; ") };
    emit(
        cli,
        json!({ "sig": sig, "tetrahedra": raw.size(), "gluing": gluing, "taut": taut, "veering": veering }),
        || format!("tetrahedra {}\ngluing {gluing}\ntaut {taut}\nveering {veering}\n", raw.size()),
    );
    match v {
        None => Err(failure("invalid", diags[0].clone())),
        Some(Err(e)) => Err(e.into()),
        Some(Ok(_)) => Ok(()),
    }
}

fn info(cli: &Cli, sig: &str) -> Out {
    let v = VeeringTriangulation::from_sig(sig)?;
    let inv = Invariants::compute(&v);
    let g = DualGraph::new(&v);
    let kinds = |k: TetKind| v.tet_kind.iter().filter(|&&x| x == k).count();
    let torsion: Vec<String> = inv.homology.torsion.iter().map(ToString::to_string).collect();
    let rows = [
        ("tetrahedra", v.n_tets().to_string()),
        ("cusps", v.n_cusps().to_string()),
        ("b1", inv.homology.b1.to_string()),
        ("torsion", if torsion.is_empty() { "none".into() } else { torsion.join(" ") }),
        ("branch-cycles", g.branch_cycles().len().to_string()),
        ("toggles", kinds(TetKind::Toggle).to_string()),
        ("red-fans", kinds(TetKind::FanRed).to_string()),
        ("blue-fans", kinds(TetKind::FanBlue).to_string()),
        ("alexander", inv.alexander.to_string()),
        ("taut", inv.taut.to_string()),
    ];
    let obj: serde_json::Map<String, serde_json::Value> =
        rows.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    emit(cli, serde_json::Value::Object(obj), || rows.iter().map(|(k, v)| format!("{k} {v}\n")).collect());
    Ok(())
}

fn dual(cli: &Cli, sig: &str) -> Out {
    let v = VeeringTriangulation::from_sig(sig)?;
    let g = DualGraph::new(&v);
    let sectors = build_sectors(&v, &g)?;
    emit(cli, json!({ "graph": g, "sectors": sectors, "branch_cycles": g.branch_cycles() }), || {
        let mut s = format!("vertices {}\n", g.n_vertices);
        for e in 0..g.n_edges() {
            s += &format!(
                "edge {e} {} -> {} branch-next {} anti-next {}\n",
                g.tail[e], g.head[e], g.branch_next[e], g.anti_next[e]
            );
        }
        for c in g.branch_cycles() {
            s += &format!("branch-cycle {c:?}\n");
        }
        s
    });
    Ok(())
}

fn conditions(cli: &Cli, sig: &str) -> Out {
    let v = VeeringTriangulation::from_sig(sig)?;
    let g = DualGraph::new(&v);
    let sectors = build_sectors(&v, &g)?;
    let mut rows = Vec::new();
    for s in &sectors {
        rows.push((s.dual_edge, s.toggle, sector_conditions(&g, s)?));
    }
    let m003 = m003_predicate(&g, &sectors);
    let flag = |b: bool| if b { "1" } else { "0" };
    emit(
        cli,
        json!({
            "sectors": rows.iter().map(|(e, t, c)| json!({ "sector": e, "toggle": t, "conditions": c })).collect::<Vec<_>>(),
            "m003": m003,
        }),
        || {
            let mut s = String::new();
            for (e, t, c) in &rows {
                s += &format!(
                    "sector {e} {} tbt {}{} sbf {}{} bsbf {} frc {}\n",
                    if *t { "toggle" } else { "fan" },
                    flag(c.tbt[0]),
                    flag(c.tbt[1]),
                    flag(c.sbf[0]),
                    flag(c.sbf[1]),
                    flag(c.bsbf),
                    flag(c.frc)
                );
            }
            s + &format!("m003 {m003}\n")
        },
    );
    Ok(())
}

fn report(cli: &Cli, sig: &str, r: &DilatationReport) {
    if let Some(w) = &r.warning {
        eprintln!("warning {w}");
    }
    let line = CompileLine::new(1, sig, r);
    emit(cli, json!({ "report": r, "line": line }), || {
        let p = cli.prec;
        let mut s = format!("method {:?}\n", r.method);
        s += &format!("lambda [{:.p$}, {:.p$}]\n", r.lambda.lo, r.lambda.hi);
        s += &format!("normalized [{:.p$}, {:.p$}]\n", r.normalized.lo, r.normalized.hi);
        if let Some(t) = r.t {
            s += &format!("face-parameter {t:.p$}\n");
        }
        s + &format!("{line}\n")
    });
}

fn bounds(cli: &Cli, p: f64) -> Out {
    let b = all_bounds(p)?;
    emit(cli, json!(b), || {
        let mut s = format!(
            "single-hook {:.3}\ndouble-hook {:.3}\nAT {:.3}\nF1 {:.3}\nF2 {:.3}\n",
            b.single_hook, b.double_hook, b.agol_tsang, b.f1, b.f2
        );
        match b.one_cusp {
            Some(c) => {
                for (k, v) in [
                    ("P^2/3+1/2", c.third),
                    ("P^2/2-P", c.half_minus_p),
                    ("cube-roots", c.cube_roots),
                    ("square-root", c.sqrt_term),
                    ("8log3", c.log3),
                    ("one-cusp", c.max),
                ] {
                    s += &format!("{k} {v:.3}\n");
                }
            }
            None => s += "one-cusp n/a (needs 4√2 ≤ P < 8)\n",
        }
        s
    });
    Ok(())
}

fn batch(cli: &Cli, file: &str, jobs: usize, below: Option<f64>) -> Out {
    let text = std::fs::read_to_string(file).map_err(|e| failure("io", format!("{file}: {e}")))?;
    let entries = read_sig_list(&text).map_err(|e| failure("parse", format!("{file}: {e}")))?;
    let items = run_batch(&entries, cli.tol, jobs).map_err(|e| failure("io", e))?;
    let keep = |l: &CompileLine| below.is_none_or(|x| l.value < x);
    let mut failed = 0;
    let mut rows = Vec::new();
    for it in &items {
        match (&it.result, it.line()) {
            (Ok(_), Some(l)) if keep(&l) => rows.push(json!({ "index": l.index, "sig": l.sig, "value": l.value, "extra": l.extra, "line": l.to_string() })),
            (Ok(_), _) => {}
            (Err(e), _) => {
                failed += 1;
                rows.push(json!({ "index": it.index, "sig": it.sig, "error": error_kind(e), "message": e.to_string() }));
            }
        }
    }
    emit(cli, json!(rows), || {
        rows.iter()
            .map(|r| match r.get("line") {
                Some(l) => format!("{}\n", l.as_str().unwrap()),
                None => format!("{} {} error {}\n", r["index"], r["sig"].as_str().unwrap(), r["error"].as_str().unwrap()),
            })
            .collect()
    });
    if failed > 0 {
        return Err(failure("batch", format!("{failed} of {} entries failed", items.len())));
    }
    Ok(())
}

fn run(cli: &Cli) -> Out {
    match &cli.command {
        Command::Validate { sig } => validate(cli, sig),
        Command::Info { sig } => info(cli, sig),
        Command::Dual { sig } => dual(cli, sig),
        Command::Conditions { sig } => conditions(cli, sig),
        Command::Dilatation { sig } => {
            let r = dilatation_b1(&VeeringTriangulation::from_sig(sig)?, cli.tol)?;
            report(cli, sig, &r);
            Ok(())
        }
        Command::MinDilatation { sig } => {
            let r = min_dilatation_b2(&VeeringTriangulation::from_sig(sig)?, cli.tol)?;
            report(cli, sig, &r);
            Ok(())
        }
        Command::Bounds { value } => bounds(cli, *value),
        Command::Batch { file, jobs } => batch(cli, file, *jobs, None),
        Command::Filter { file, below, jobs } => batch(cli, file, *jobs, Some(*below)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        eprintln!("error domain --tol must be positive");
        return ExitCode::FAILURE;
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if cli.json {
                eprintln!("{}", json!({ "error": f.kind, "message": f.message }));
            } else {
                eprintln!("error {} {}", f.kind, f.message);
            }
            ExitCode::FAILURE
        }
    }
}
