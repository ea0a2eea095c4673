use std::path::Path;

use serde_json::{json, Map, Value};

use qep::bracket::universal;
use qep::derived::{jones_from_beta, lk_multiset};
use qep::diagram::{OrientedDiagram, PdCode};
use qep::statesum::{phi, phi_tc};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Invariant {
    Phi,
    PhiTc,
    Jones,
    Lk,
    All,
}

/// Read a PD code from a file, or take the argument itself as PD text.
pub fn read_pd(arg: &str) -> Result<PdCode, CliError> {
    let path = Path::new(arg);
    let text = if path.is_file() { std::fs::read_to_string(path)? } else { arg.to_string() };
    parse_pd(&text)
}

/// Parse PD text, ignoring `#` comment lines.
pub fn parse_pd(text: &str) -> Result<PdCode, CliError> {
    let body: Vec<&str> = text.lines().filter(|l| !l.trim_start().starts_with('#')).collect();
    Ok(PdCode::parse(&body.join("\n"))?)
}

/// Canonical JSON of the requested invariants, keyed by name; Φ values are
/// keyed by bracket index.
pub fn compute(d: &OrientedDiagram, brackets: &[usize], which: Invariant) -> Result<Value, CliError> {
    let mut out = Map::new();
    let wants = |i: Invariant| which == Invariant::All || which == i;
    for (key, inv) in [("phi", Invariant::Phi), ("phi_tc", Invariant::PhiTc)] {
        if !wants(inv) {
            continue;
        }
        let mut per = Map::new();
        for &i in brackets {
            let k = universal(i)?;
            let p = if inv == Invariant::Phi { phi(d, &k)? } else { phi_tc(d, &k)? };
            per.insert(i.to_string(), serde_json::to_value(&p)?);
        }
        out.insert(key.to_string(), Value::Object(per));
    }
    if wants(Invariant::Jones) {
        let i = if brackets.len() == 1 { brackets[0] } else { 5 };
        out.insert("jones".to_string(), json!(jones_from_beta(d, i)?));
    }
    if wants(Invariant::Lk) {
        out.insert("lk".to_string(), json!(lk_multiset(d)));
    }
    Ok(Value::Object(out))
}
