use std::fs;
use std::path::{Path, PathBuf};

use plankforge_core::poly::PolynomialRepr;
use plankforge_core::{Exponent, Polynomial, SpaceSpec};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::SpaceArgs;
use crate::error::{usage, CliError};

pub fn read_poly(path: &Path) -> Result<Polynomial, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    let repr: PolynomialRepr =
        serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })?;
    Ok(Polynomial::try_from(repr)?)
}

/// Expands directories into their `*.json` files in name order.
pub fn read_polys(paths: &[PathBuf]) -> Result<Vec<Polynomial>, CliError> {
    let mut files = Vec::new();
    for path in paths {
        if path.is_dir() {
            let entries = fs::read_dir(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            let mut found: Vec<PathBuf> = entries
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(path.clone());
        }
    }
    if files.is_empty() {
        return Err(usage("no polynomial files found"));
    }
    files.iter().map(|f| read_poly(f)).collect()
}

pub fn parse_space(s: &str) -> Result<SpaceSpec, CliError> {
    Ok(s.parse()?)
}

/// `--space` when given, otherwise `--p` (default 2) and `--field` (default
/// the polynomial's) with the polynomial's dimension.
pub fn resolve_space(args: &SpaceArgs, poly: &Polynomial) -> Result<SpaceSpec, CliError> {
    if let Some(s) = &args.space {
        return parse_space(s);
    }
    let p: Exponent = args.p.as_deref().unwrap_or("2").parse()?;
    let field = match &args.field {
        Some(f) => f.parse().map_err(usage)?,
        None => poly.field(),
    };
    Ok(SpaceSpec::new(field, poly.dim(), p)?)
}

/// `a..b` or `a..=b` (both inclusive), `a,b,c`, or a single value.
pub fn parse_range(s: &str) -> Result<Vec<u64>, CliError> {
    let bad = || usage(format!("cannot parse range `{s}`"));
    let one = |x: &str| x.trim().parse::<u64>().map_err(|_| bad());
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (one(a)?, one(b)?);
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(one).collect()
}

/// A JSON report: the result's fields plus a `run` header with the tool,
/// version, command, seed and resolved configuration.
pub fn json_report<C: Serialize, R: Serialize>(command: &str, seed: u64, config: &C, result: &R) -> String {
    let header = serde_json::json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "seed": seed,
        "config": config,
    });
    let body = serde_json::to_value(result).expect("reports serialize");
    let mut map = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    map.insert("run".into(), header);
    let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("values serialize");
    text.push('\n');
    text
}

pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_range("2..=3").unwrap(), vec![2, 3]);
        assert_eq!(parse_range("5, 7").unwrap(), vec![5, 7]);
        assert_eq!(parse_range("9").unwrap(), vec![9]);
        assert!(parse_range("4..1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn report_header_is_merged() {
        let text = json_report("demo", 3, &serde_json::json!({"a": 1}), &serde_json::json!({"value": 2.5}));
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["value"], 2.5);
        assert_eq!(v["run"]["seed"], 3);
        assert_eq!(v["run"]["config"]["a"], 1);
        let wrapped: Value = serde_json::from_str(&json_report("demo", 0, &(), &[1, 2])).unwrap();
        assert_eq!(wrapped["result"][1], 2);
    }
}
