mod report;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use cfk::expr::{build_complex, parse, KnotExpr};
use cfk::format::read_complex;
use cfk::invariants::{hfk_hat, InvariantReport};
use cfk::surgery::{cable_nu_plus_bounds, cable_report, genus_report, lens_d, parse_coefficient, surgery_d, SurgerySpec};
use cfk::{BifilteredComplex, Error};

use report::{hfk_table, table, DInvariant, ReportDocument};

#[derive(Parser)]
#[command(name = "cfk", version, about = "Knot Floer complexes and concordance invariants")]
struct Cli {
    /// Print machine-readable JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// tau, nu, nu+, epsilon, the V_k and H_k tables and HFK-hat of a knot.
    Invariants {
        expr: String,
        /// Range of k for the V/H tables, e.g. -4..4 (default: minus to plus the top Alexander grading).
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        vk: Option<(i64, i64)>,
        /// Also report the correction terms of this surgery.
        #[arg(long)]
        surgery: Option<String>,
    },
    /// Correction terms of p/q surgery on a knot.
    Dinv {
        expr: String,
        /// Surgery coefficient p/q (or p).
        #[arg(long)]
        surgery: String,
        /// A single Spin^c label in 0..p (default: all).
        #[arg(long)]
        spinc: Option<i64>,
    },
    /// Bounds on the 4-ball genus.
    Genus { expr: String },
    /// Bounds on nu+ of the (p, q)-cable of a knot.
    CableBounds {
        expr: String,
        p: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
    },
    /// Ranks of HFK-hat by Alexander and Maslov grading.
    Hfk { expr: String },
    /// Check a complex file in the cfk v1 format.
    Validate { path: PathBuf },
    /// Run the built-in fixtures and property checks.
    Selftest,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or("expected MIN..MAX")?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad lower end '{a}'"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad upper end '{b}'"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn load(text: &str) -> Result<(KnotExpr, BifilteredComplex), Error> {
    let e = parse(text)?;
    let c = build_complex(&e)?;
    Ok((e, c))
}

fn d_invariants(c: &BifilteredComplex, coefficient: &str, spinc: Option<i64>) -> Result<Vec<DInvariant>, Error> {
    let (p, q) = parse_coefficient(coefficient)?;
    let specs = match spinc {
        Some(i) => vec![SurgerySpec::new(p, q, i)?],
        None => SurgerySpec::all(p, q)?,
    };
    specs
        .iter()
        .map(|s| {
            Ok(DInvariant {
                spinc: s.spinc,
                lens: lens_d(s.p, s.q, s.spinc)?.to_string(),
                d: surgery_d(c, s)?.to_string(),
            })
        })
        .collect()
}

fn invariants(text: &str, vk: Option<(i64, i64)>, surgery: Option<&str>) -> Result<ReportDocument, Error> {
    let (e, c) = load(text)?;
    let g = c.top_alexander().max(-c.bottom_alexander()).max(0);
    let (lo, hi) = vk.unwrap_or((-g, g));
    let r = InvariantReport::compute(&c, lo..=hi)?;
    let mut doc = ReportDocument { expression: e.to_string(), ..Default::default() };
    doc.apply_genus(&genus_report(&c, Some(&e))?);
    doc.epsilon = Some(r.epsilon);
    doc.v = Some(table(&r.v_table));
    doc.h = Some(table(&r.h_table));
    doc.hfk = Some(hfk_table(&r.hfk));
    for k in r.symmetry_violations() {
        doc.warnings.push(format!("V_{} != V_{k} + {k}", -k));
    }
    if let Some(s) = surgery {
        doc.d_invariants = Some(d_invariants(&c, s, None)?);
    }
    Ok(doc)
}

fn dinv(text: &str, surgery: &str, spinc: Option<i64>) -> Result<ReportDocument, Error> {
    parse_coefficient(surgery)?;
    let (e, c) = load(text)?;
    Ok(ReportDocument { expression: e.to_string(), d_invariants: Some(d_invariants(&c, surgery, spinc)?), ..Default::default() })
}

fn genus(text: &str) -> Result<ReportDocument, Error> {
    let e = parse(text)?;
    let mut doc = ReportDocument { expression: e.to_string(), ..Default::default() };
    match build_complex(&e) {
        Ok(c) => doc.apply_genus(&genus_report(&c, Some(&e))?),
        Err(Error::NoConstructor(msg)) => {
            let KnotExpr::Cable(_, _, child) = e.strip() else { return Err(Error::NoConstructor(msg)) };
            let companion = build_complex(child)?;
            doc.apply_cable(&cable_report(&e, &companion)?);
        }
        Err(err) => return Err(err),
    }
    Ok(doc)
}

fn cable_bounds(text: &str, p: i64, q: i64) -> Result<serde_json::Value, Error> {
    let (e, c) = load(text)?;
    let companion_upper = genus_report(&c, Some(&e))?.g4_upper;
    let b = cable_nu_plus_bounds(&c, p, q, companion_upper)?;
    Ok(json!({
        "expression": e.to_string(),
        "p": p,
        "q": q,
        "companion_g4_upper": companion_upper,
        "lower": b.lower,
        "upper": b.upper,
    }))
}

fn run(cli: Cli) -> Result<(), Error> {
    let json = cli.json;
    let emit = |doc: ReportDocument| {
        if json {
            println!("{}", doc.to_json());
        } else {
            print!("{}", doc.to_text());
        }
    };
    match cli.command {
        Command::Invariants { expr, vk, surgery } => emit(invariants(&expr, vk, surgery.as_deref())?),
        Command::Dinv { expr, surgery, spinc } => emit(dinv(&expr, &surgery, spinc)?),
        Command::Genus { expr } => emit(genus(&expr)?),
        Command::CableBounds { expr, p, q } => {
            let v = cable_bounds(&expr, p, q)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
            } else {
                let show = |k: &str| match &v[k] {
                    serde_json::Value::Null => "none".to_string(),
                    x => x.to_string(),
                };
                println!("cable ({p},{q}) of {}", v["expression"].as_str().unwrap_or(""));
                println!("nu_plus lower  {}", show("lower"));
                println!("nu_plus upper  {}", show("upper"));
            }
        }
        Command::Hfk { expr } => {
            let (e, c) = load(&expr)?;
            let h = hfk_hat(&c);
            if json {
                let v = json!({ "expression": e.to_string(), "hfk": hfk_table(&h) });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
            } else {
                println!("{:>10} {:>7} {:>5}", "alexander", "maslov", "rank");
                for ((a, m), r) in h {
                    println!("{a:>10} {m:>7} {r:>5}");
                }
            }
        }
        Command::Validate { path } => {
            let c = read_complex(&path)?;
            if json {
                let v = json!({ "path": path, "valid": true, "generators": c.len(), "terms": c.terms().len() });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
            } else {
                println!("{}: valid ({} generators, {} terms)", path.display(), c.len(), c.terms().len());
            }
        }
        Command::Selftest => {
            let results = selftest::run();
            let failed = results.iter().filter(|r| r.error.is_some()).count();
            for r in &results {
                match &r.error {
                    None => println!("PASS  {}", r.name),
                    Some(e) => println!("FAIL  {}: {e}", r.name),
                }
            }
            println!("{} passed, {failed} failed", results.len() - failed);
            if failed > 0 {
                return Err(Error::Internal(format!("{failed} self-test item(s) failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
