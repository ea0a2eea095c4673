use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use qep::diagram::OrientedDiagram;

use crate::error::CliError;
use crate::invariants::{compute, parse_pd, Invariant};

const CACHE_VERSION: &str = "qep-profile-v1";

/// One dataset entry: a name, its PD code and optional expected values.
pub struct DatasetEntry {
    pub name: String,
    pub pd_text: String,
    pub expected: Option<BTreeMap<String, Value>>,
}

/// `*.pd` files in `dir`, sorted by name, each with an optional
/// `<name>.expected.json` beside it.
pub fn read_dataset(dir: &Path) -> Result<Vec<DatasetEntry>, CliError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "pd"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            let pd_text = std::fs::read_to_string(&p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            let exp_path = p.with_file_name(format!("{name}.expected.json"));
            let expected = if exp_path.is_file() {
                let text = std::fs::read_to_string(&exp_path)?;
                Some(serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", exp_path.display())))?)
            } else {
                None
            };
            Ok(DatasetEntry { name, pd_text, expected })
        })
        .collect()
}

/// Cache key: hash of the canonical PD text.
pub fn content_hash(canonical_pd: &str) -> String {
    let mut h = Sha256::new();
    h.update(CACHE_VERSION.as_bytes());
    h.update(b"\n");
    h.update(canonical_pd.as_bytes());
    format!("{:x}", h.finalize())
}

fn profile(entry: &DatasetEntry, cache: Option<&Path>) -> Result<Value, CliError> {
    let pd = parse_pd(&entry.pd_text).map_err(|e| CliError::Input(format!("{}: {e}", entry.name)))?;
    let canonical = pd.to_string();
    let cached = cache.map(|dir| dir.join(format!("{}.json", content_hash(&canonical))));
    if let Some(path) = &cached {
        if let Ok(text) = std::fs::read_to_string(path) {
            if let Ok(v) = serde_json::from_str(&text) {
                return Ok(v);
            }
        }
    }
    let d = OrientedDiagram::from_pd(&pd).map_err(|e| CliError::Input(format!("{}: {e}", entry.name)))?;
    let v = compute(&d, &[1, 2, 3, 4, 5], Invariant::All)?;
    if let (Some(path), Some(dir)) = (&cached, cache) {
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(serde_json::to_string(&v)?.as_bytes())?;
        tmp.persist(path).map_err(|e| CliError::Input(e.to_string()))?;
    }
    Ok(v)
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub entries: usize,
    pub pairs: usize,
    /// `|X(i)|`: pairs with different Φ(i) but equal (J, LK).
    pub x: BTreeMap<String, usize>,
    /// Members of each `X(i)`.
    pub x_members: BTreeMap<String, Vec<[String; 2]>>,
    /// `|X(i,j)|`: pairs with equal Φ(i) and different Φ(j).
    pub x_pairs: BTreeMap<String, usize>,
    /// Entries violating Φ1 = Φ3 or Φ2 = Φ4.
    pub identity_failures: BTreeMap<String, Vec<String>>,
    /// Entries whose computed values differ from their expected file.
    pub expected_mismatches: Vec<String>,
}

pub fn run(dir: &Path, cache: Option<&Path>) -> Result<Report, CliError> {
    let entries = read_dataset(dir)?;
    if let Some(c) = cache {
        std::fs::create_dir_all(c)?;
    }
    let profiles: Vec<Value> = entries.par_iter().map(|e| profile(e, cache)).collect::<Result<_, _>>()?;

    let phi = |v: &Value, i: usize| v["phi"][i.to_string()].clone();
    let mut report = Report {
        entries: entries.len(),
        pairs: entries.len() * entries.len().saturating_sub(1) / 2,
        x: BTreeMap::new(),
        x_members: BTreeMap::new(),
        x_pairs: BTreeMap::new(),
        identity_failures: BTreeMap::new(),
        expected_mismatches: vec![],
    };
    for i in 1..=5 {
        report.x.insert(i.to_string(), 0);
        report.x_members.insert(i.to_string(), vec![]);
        for j in (1..=5).filter(|&j| j != i) {
            report.x_pairs.insert(format!("{i},{j}"), 0);
        }
    }
    for key in ["phi1=phi3", "phi2=phi4"] {
        report.identity_failures.insert(key.to_string(), vec![]);
    }

    for (e, v) in entries.iter().zip(&profiles) {
        if phi(v, 1) != phi(v, 3) {
            report.identity_failures.get_mut("phi1=phi3").expect("key").push(e.name.clone());
        }
        if phi(v, 2) != phi(v, 4) {
            report.identity_failures.get_mut("phi2=phi4").expect("key").push(e.name.clone());
        }
        if let Some(exp) = &e.expected {
            for (k, want) in exp {
                if lookup(v, k).as_ref() != Some(want) {
                    report.expected_mismatches.push(format!("{}: {k}", e.name));
                }
            }
        }
    }
    for a in 0..entries.len() {
        for b in a + 1..entries.len() {
            let (va, vb) = (&profiles[a], &profiles[b]);
            let same: Vec<bool> = (1..=5).map(|i| phi(va, i) == phi(vb, i)).collect();
            let jl = va["jones"] == vb["jones"] && va["lk"] == vb["lk"];
            for i in 1..=5 {
                if !same[i - 1] && jl {
                    *report.x.get_mut(&i.to_string()).expect("key") += 1;
                    report.x_members.get_mut(&i.to_string()).expect("key").push([entries[a].name.clone(), entries[b].name.clone()]);
                }
                for j in (1..=5).filter(|&j| j != i) {
                    if same[i - 1] && !same[j - 1] {
                        *report.x_pairs.get_mut(&format!("{i},{j}")).expect("key") += 1;
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Value for an expected-file key: `jones`, `lk`, `phiN` or `phi_tcN`.
fn lookup(v: &Value, key: &str) -> Option<Value> {
    if let Some(i) = key.strip_prefix("phi_tc") {
        return v.get("phi_tc")?.get(i).cloned();
    }
    if let Some(i) = key.strip_prefix("phi") {
        return v.get("phi")?.get(i).cloned();
    }
    v.get(key).cloned()
}
