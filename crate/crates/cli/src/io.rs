use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use transversal_lab::{AbelianGroup, Hypercube};

/// Reads an `.lhc` file (`-` for stdin). A `# group <G>` comment selects the
/// labeling group unless `group` overrides it.
pub fn read_hypercube(path: &Path, group: Option<&AbelianGroup>) -> Result<Hypercube> {
    let text = read_text(path)?;
    let h = Hypercube::from_lhc(&text).with_context(|| format!("malformed .lhc in {}", path.display()))?;
    let declared = text
        .lines()
        .filter_map(|l| l.trim().strip_prefix('#'))
        .find_map(|l| l.trim().strip_prefix("group "))
        .map(|g| g.trim().parse::<AbelianGroup>())
        .transpose()
        .with_context(|| format!("bad group comment in {}", path.display()))?;
    match group.cloned().or(declared) {
        Some(g) => Ok(h.with_group(g)?),
        None => Ok(h),
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", path.display()))
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("cannot read stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// `.lhc` text, with a group comment when the labeling is not `Z_n`.
pub fn lhc_text(h: &Hypercube) -> String {
    if h.group().is_cyclic_labeling() {
        h.to_lhc()
    } else {
        format!("# group {}\n{}", h.group(), h.to_lhc())
    }
}

pub fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| anyhow!(e))?;
    s.push('\n');
    Ok(s)
}
