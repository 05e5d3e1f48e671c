//! `vskein`: invariants, skein checks, numberings and state tables for
//! virtual link diagrams.
//!
//! Exit codes: 0 success, 1 a checked relation failed (or an internal
//! invariant broke), 2 bad input, 3 crossing cap exceeded.

use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::builder::TypedValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use vskein_core::codec::json::poly_json;
use vskein_core::*;

#[derive(Parser)]
#[command(name = "vskein", version, about = "Cut-system state sums for virtual link diagrams")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// X polynomial, f polynomial, writhe, components and numberability flags.
    Invariant(Common),
    /// Build the skein triple at a crossing and check every applicable relation.
    Skein {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        crossing: u32,
    },
    /// Cut system and Alexander numbering, or a witness cycle.
    Numbering {
        #[command(flatten)]
        common: Common,
        /// Use the two-point cut system around this virtual crossing.
        #[arg(long, value_name = "K")]
        around_virtual: Option<u32>,
        /// Solve mod m (0 for integers).
        #[arg(long, default_value_t = 0)]
        modulus: u32,
    },
    /// One line per state of the canonical cut system.
    StateTable(Common),
    /// Seeded random braid instances.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Kind::Classical)]
        kind: Kind,
        #[arg(long)]
        json: bool,
    },
    /// List catalog fixtures.
    Catalog,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Classical,
    Virtualized,
    Mixed,
}

#[derive(Args)]
#[group(id = "input", required = true, multiple = false)]
struct Source {
    /// Virtual PD code file.
    #[arg(long, value_name = "FILE", group = "input")]
    pd: Option<std::path::PathBuf>,
    /// Signed Gauss code file.
    #[arg(long, value_name = "FILE", group = "input")]
    gauss: Option<std::path::PathBuf>,
    /// Braid word, e.g. "s=2: s1 s1 s1".
    #[arg(long, value_name = "WORD", group = "input")]
    braid: Option<String>,
    /// Catalog fixture name.
    #[arg(long, value_name = "NAME", group = "input")]
    catalog: Option<String>,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    source: Source,
    /// JSON output.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Text output (default).
    #[arg(long)]
    text: bool,
    /// Largest accepted number of classical crossings.
    #[arg(long, default_value_t = DEFAULT_CROSSING_CAP,
          value_parser = clap::value_parser!(u16).range(0..=MAX_CROSSING_CAP as i64).map(usize::from))]
    cap: usize,
}

enum Failure {
    Input(anyhow::Error),
    Cap(anyhow::Error),
    Check(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.into()),
            Error::OddLoopSum(_) => Failure::Check(e.into()),
            _ => Failure::Input(e.into()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn load(src: &Source) -> std::result::Result<Diagram, Failure> {
    let read = |p: &std::path::Path| {
        std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())).map_err(Failure::Input)
    };
    let d = if let Some(p) = &src.pd {
        parse_pd(&read(p)?)?
    } else if let Some(p) = &src.gauss {
        let g = parse_gauss(&read(p)?)?;
        realize_gauss(&g)
    } else if let Some(w) = &src.braid {
        parse_braid(w)?
    } else {
        catalog(src.catalog.as_deref().expect("one input"))?
    };
    d.ensure_valid()?;
    Ok(d)
}

fn out(line: impl AsRef<str>) {
    let mut o = std::io::stdout().lock();
    let _ = writeln!(o, "{}", line.as_ref());
}

fn summary(d: &Diagram, cap: usize) -> std::result::Result<(Value, Vec<String>), Failure> {
    let x = x_polynomial_with_cap(d, cap)?;
    let f = x.substitute_d_one();
    let ac = is_almost_classical_diagram(d);
    let cc = is_checkerboard_colorable(d);
    let v = json!({
        "x": poly_json(&x),
        "x_text": x.to_string(),
        "f": poly_json(&f),
        "f_text": f.to_string(),
        "writhe": d.writhe(),
        "components": d.components(),
        "classical_crossings": d.classical_count(),
        "virtual_crossings": d.virtual_count(),
        "almost_classical": ac,
        "checkerboard_colorable": cc,
    });
    let lines = vec![
        format!("X = {}", x.pretty()),
        format!("f = {}", f.pretty()),
        format!("writhe = {}", d.writhe()),
        format!("components = {}", d.components()),
        format!("crossings = {} classical, {} virtual", d.classical_count(), d.virtual_count()),
        format!("almost classical = {ac}"),
        format!("checkerboard colorable = {cc}"),
    ];
    Ok((v, lines))
}

fn cmd_invariant(c: &Common) -> Outcome {
    let d = load(&c.source)?;
    let (v, lines) = summary(&d, c.cap)?;
    if c.json {
        out(emit_json(&v));
    } else {
        lines.iter().for_each(out);
    }
    Ok(true)
}

fn cmd_skein(c: &Common, crossing: u32) -> Outcome {
    let d = load(&c.source)?;
    let id = CrossingId(crossing);
    let t = skein_triples(&d, id)?;
    let mut diagrams = serde_json::Map::new();
    let mut text = Vec::new();
    if t.relabeled {
        text.push(format!("crossing {id} is negative: the input is D-, D+ is its crossing change"));
    }
    for (name, dd) in [("plus", &t.plus), ("minus", &t.minus), ("smoothed", &t.smoothed), ("virtualized", &t.virtualized)] {
        let (v, lines) = summary(dd, c.cap)?;
        text.push(format!("[{name}] {}", emit_pd(dd)));
        text.extend(lines.iter().take(2).map(|l| format!("  {l}")));
        diagrams.insert(name.into(), v);
    }
    let mut checks = Vec::new();
    let mut all_ok = true;
    type Verifier = fn(&Diagram, CrossingId, usize) -> Result<SkeinCheck>;
    let verifiers: [(&str, Verifier); 3] = [
        ("classical", verify_skein_classical_with_cap),
        ("checkerboard", verify_skein_virtual_cc_with_cap),
        ("virtualized", verify_skein_main_with_cap),
    ];
    for (name, verify) in verifiers {
        match verify(&d, id, c.cap) {
            Ok(r) => {
                let ok = r.holds();
                all_ok &= ok;
                text.push(format!("{name}: {}", if ok { "residual 0" } else { "RESIDUAL NONZERO" }));
                text.push(format!("  lhs = {}", r.lhs.pretty()));
                text.push(format!("  rhs = {}", r.rhs.pretty()));
                if !ok {
                    text.push(format!("  residual = {}", r.residual.pretty()));
                }
                let mut v = serde_json::to_value(&r).expect("serializes");
                v["status"] = json!(if ok { "ok" } else { "nonzero" });
                checks.push(v);
            }
            Err(Error::Precondition(msg)) => {
                text.push(format!("{name}: precondition unmet ({msg})"));
                checks.push(json!({"relation": name, "status": "precondition unmet", "detail": msg}));
            }
            Err(e) => return Err(e.into()),
        }
    }
    if c.json {
        out(emit_json(&json!({
            "crossing": crossing,
            "relabeled": t.relabeled,
            "diagrams": diagrams,
            "checks": checks,
            "ok": all_ok,
        })));
    } else {
        text.iter().for_each(out);
    }
    Ok(all_ok)
}

fn cmd_numbering(c: &Common, around: Option<u32>, modulus: u32) -> Outcome {
    let d = load(&c.source)?;
    let cuts = match around {
        Some(v) => cut_system_around_virtual(&d, CrossingId(v))?.ok_or_else(|| {
            Failure::Check(anyhow::anyhow!("no valid two-point cut system around virtual crossing {v}"))
        })?,
        None => canonical_cut_system(&d),
    };
    let solved = solve_numbering(&d, &cuts, modulus);
    if c.json {
        let v = match &solved {
            Ok(n) => json!({"cuts": cuts, "numbering": n}),
            Err(w) => json!({"cuts": cuts, "witness": w}),
        };
        out(emit_json(&v));
    } else {
        out(format!("cut points: {}", cuts.len()));
        for p in cuts.points() {
            out(format!("  edge {} #{}: {:+}", p.edge, p.position, p.sign));
        }
        match &solved {
            Ok(n) => {
                out(format!("numbering (mod {}):", n.modulus));
                for (e, vals) in &n.values {
                    let vals: Vec<String> = vals.iter().map(i64::to_string).collect();
                    out(format!("  edge {e}: {}", vals.join(" | ")));
                }
            }
            Err(w) => {
                let cyc: Vec<String> = w.cycle.iter().map(|s| format!("{}#{}", s.edge, s.index)).collect();
                out(format!("no numbering; witness cycle offset {}: {}", w.offset, cyc.join(" -> ")));
            }
        }
    }
    Ok(solved.is_ok())
}

fn cmd_state_table(c: &Common) -> Outcome {
    let d = load(&c.source)?;
    let cuts = canonical_cut_system(&d);
    for s in enumerate_states_with_cap(&d, &cuts, c.cap)? {
        let s = s?;
        out(if c.json { emit_json(&s) } else { s.line() });
    }
    Ok(true)
}

fn cmd_random(seed: u64, count: usize, kind: Kind, as_json: bool) -> Outcome {
    let kind = match kind {
        Kind::Classical => InstanceKind::Classical,
        Kind::Virtualized => InstanceKind::Virtualized,
        Kind::Mixed => InstanceKind::Mixed,
    };
    for inst in random_instances(seed, count, kind) {
        if as_json {
            out(emit_json(&inst));
        } else {
            let v = inst.virtualized.map(|c| format!(" virtualize={c}")).unwrap_or_default();
            out(format!("{} crossing={}{v}", inst.word, inst.crossing));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Command::Invariant(c) => cmd_invariant(c),
        Command::Skein { common, crossing } => cmd_skein(common, *crossing),
        Command::Numbering { common, around_virtual, modulus } => cmd_numbering(common, *around_virtual, *modulus),
        Command::StateTable(c) => cmd_state_table(c),
        Command::Random { seed, count, kind, json } => cmd_random(*seed, *count, *kind, *json),
        Command::Catalog => {
            vskein_core::codec::catalog::names().for_each(out);
            Ok(true)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let (code, e) = match f {
                Failure::Check(e) => (1, e),
                Failure::Input(e) => (2, e),
                Failure::Cap(e) => (3, e),
            };
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
