//! Expansion of repeated flags and grid files into parameter tuples.

use std::collections::BTreeMap;
use std::path::Path;

use crate::args::PointArgs;
use crate::error::CliError;

/// One parameter tuple, before typing: name → literal.
pub type RawPoint = BTreeMap<String, String>;

/// Parameter names accepted on the command line and in grid files.
pub const PARAM_NAMES: [&str; 9] = ["a", "ell", "nu", "phi", "seq", "u", "w", "x", "z"];

/// Cartesian product; the alphabetically first parameter varies slowest.
fn cartesian(lists: &BTreeMap<String, Vec<String>>) -> Vec<RawPoint> {
    let mut out = vec![RawPoint::new()];
    for (name, values) in lists {
        out = out
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |v| {
                    let mut q = p.clone();
                    q.insert(name.clone(), v.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// Parses one grid-file line of `--name value` / `--name=value` tokens.
fn parse_line(line: &str, lineno: usize) -> Result<BTreeMap<String, Vec<String>>, CliError> {
    let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut tokens = line.split_whitespace();
    while let Some(tok) = tokens.next() {
        let Some(flag) = tok.strip_prefix("--") else {
            return Err(CliError::usage(format!(
                "grid line {lineno}: expected --name, found '{tok}'"
            )));
        };
        let (name, value) = match flag.split_once('=') {
            Some((n, v)) => (n.to_string(), v.to_string()),
            None => {
                let v = tokens.next().ok_or_else(|| {
                    CliError::usage(format!("grid line {lineno}: --{flag} needs a value"))
                })?;
                (flag.to_string(), v.to_string())
            }
        };
        if !PARAM_NAMES.contains(&name.as_str()) {
            return Err(CliError::usage(format!(
                "grid line {lineno}: unknown parameter --{name}"
            )));
        }
        out.entry(name).or_default().push(value);
    }
    Ok(out)
}

/// Reads a grid file; blank lines and lines starting with `#` are skipped.
pub fn read_grid_file(path: &Path) -> Result<Vec<BTreeMap<String, Vec<String>>>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read grid file {}: {e}", path.display())))?;
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| parse_line(l, i))
        .collect()
}

/// All raw points described by the flags and the optional grid file, in
/// input order.
pub fn expand(points: &PointArgs) -> Result<Vec<RawPoint>, CliError> {
    let flags = points.flag_values();
    match &points.grid {
        None => Ok(cartesian(&flags)),
        Some(path) => {
            let mut out = Vec::new();
            for line in read_grid_file(path)? {
                let mut merged = flags.clone();
                merged.extend(line);
                out.extend(cartesian(&merged));
            }
            Ok(out)
        }
    }
}
