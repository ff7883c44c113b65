//! The `cfk v1` text format for explicit complexes.
//!
//! ```text
//! cfk v1
//! # comment
//! gen <name> <i> <j> <maslov>
//! dif <source> <target> U^<n>.<target> ...
//! ```
//!
//! Several `dif` lines for one source add up over F2. The writer emits
//! generators in their stored order, then one `dif` line per source with
//! targets sorted by index and `U`-power.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::complex::{BifilteredComplex, DiffTerm, Generator};
use crate::error::Error;

const HEADER: &str = "cfk v1";

/// Parses `cfk v1` text without validating the complex.
pub fn parse_cfk(text: &str, path: &Path) -> Result<BifilteredComplex, Error> {
    let err = |line: usize, msg: String| Error::Format { path: path.to_path_buf(), line, msg };
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, w)| !w.is_empty())
        .collect();
    let Some((first, header)) = lines.first() else {
        return Err(err(1, "empty file".into()));
    };
    if header.join(" ") != HEADER {
        return Err(err(*first, format!("expected header '{HEADER}', found '{}'", header.join(" "))));
    }

    let mut gens = Vec::new();
    let mut index = HashMap::new();
    for (n, words) in &lines[1..] {
        match words[0] {
            "gen" => {
                let [_, name, i, j, m] = words[..] else {
                    return Err(err(*n, "expected 'gen <name> <i> <j> <maslov>'".into()));
                };
                if name.starts_with("U^") {
                    return Err(err(*n, format!("generator name '{name}' may not start with U^")));
                }
                let num = |s: &str| s.parse::<i64>().map_err(|_| err(*n, format!("'{s}' is not an integer")));
                if index.insert(name.to_string(), gens.len()).is_some() {
                    return Err(err(*n, format!("generator '{name}' declared twice")));
                }
                gens.push(Generator::new(name, num(i)?, num(j)?, num(m)?));
            }
            "dif" => {}
            other => return Err(err(*n, format!("unknown directive '{other}'"))),
        }
    }

    let mut terms = Vec::new();
    for (n, words) in lines[1..].iter().filter(|(_, w)| w[0] == "dif") {
        let lookup = |name: &str| index.get(name).copied().ok_or_else(|| err(*n, format!("undeclared generator '{name}'")));
        let Some(src) = words.get(1) else {
            return Err(err(*n, "expected 'dif <source> <targets...>'".into()));
        };
        let source = lookup(src)?;
        for t in &words[2..] {
            let (upower, name) = match t.strip_prefix("U^") {
                Some(rest) => {
                    let (pow, name) = rest.split_once('.').ok_or_else(|| err(*n, format!("malformed term '{t}'")))?;
                    (pow.parse::<u32>().map_err(|_| err(*n, format!("bad U-power in '{t}'")))?, name)
                }
                None => (0, *t),
            };
            terms.push(DiffTerm { source, target: lookup(name)?, upower });
        }
    }
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(BifilteredComplex::new(gens, terms, label))
}

/// Reads and validates a complex.
pub fn read_complex(path: &Path) -> Result<BifilteredComplex, Error> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let c = parse_cfk(&text, path)?;
    c.validate().map_err(Error::Invalid)?;
    Ok(c)
}

pub fn render_cfk(c: &BifilteredComplex) -> String {
    let mut out = format!("{HEADER}\n");
    let gens = c.generators();
    for g in gens {
        writeln!(out, "gen {} {} {} {}", g.name, g.i, g.j, g.maslov).unwrap();
    }
    for s in 0..gens.len() {
        let mut targets: Vec<(usize, u32)> = c.boundary(s).collect();
        if targets.is_empty() {
            continue;
        }
        targets.sort_unstable();
        let names: Vec<String> = targets
            .iter()
            .map(|&(t, u)| if u == 0 { gens[t].name.clone() } else { format!("U^{u}.{}", gens[t].name) })
            .collect();
        writeln!(out, "dif {} {}", gens[s].name, names.join(" ")).unwrap();
    }
    out
}

pub fn write_complex(c: &BifilteredComplex, path: &Path) -> Result<(), Error> {
    std::fs::write(path, render_cfk(c)).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}
