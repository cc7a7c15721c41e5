//! Matroid, weight, prime and flat arguments.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use matroid_schur::matroid::subset::{self, Subset, MAX_GROUND_SET};
use matroid_schur::matroid::{k4, Matroid};
use matroid_schur::schur::library;
use matroid_schur::xalg::is_prime;
use serde::Deserialize;

/// A matroid together with the name it is reported under.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub name: String,
    pub matroid: Matroid,
}

/// Resolves a built-in name first, then falls back to a JSON file.
pub fn load_matroid(source: &str) -> Result<Loaded> {
    if let Some(m) = builtin(source)? {
        return Ok(Loaded {
            name: source.to_string(),
            matroid: m,
        });
    }
    let path = Path::new(source);
    if !path.is_file() {
        bail!("{source:?} is neither a built-in matroid name nor a readable file");
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
    let (name, matroid) = parse_json(&text).with_context(|| source.to_string())?;
    Ok(Loaded {
        name: name.unwrap_or_else(|| source.to_string()),
        matroid,
    })
}

/// `Mn:k`, `Mn*:k`, `U:r,n`, `K4`, the library names (`M5`, `U2,4`, `K4*`, ...), and any of
/// these followed by `*` for the dual.
pub fn builtin(name: &str) -> Result<Option<Matroid>> {
    let number = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .map_err(|_| anyhow!("{name:?}: {s:?} is not a nonnegative integer"))
    };
    let m = if let Some(k) = name.strip_prefix("Mn*:") {
        Matroid::uniform(1, number(k)?)?.dual()
    } else if let Some(k) = name.strip_prefix("Mn:") {
        Matroid::uniform(1, number(k)?)?
    } else if let Some(rest) = name.strip_prefix("U:") {
        let (r, n) = rest
            .split_once(',')
            .ok_or_else(|| anyhow!("{name:?}: expected U:r,n"))?;
        Matroid::uniform(number(r)?, number(n)?)?
    } else if name == "K4" {
        k4()
    } else if let Some(nm) = library().into_iter().find(|x| x.name == name) {
        nm.matroid
    } else if let Some(inner) = name.strip_suffix('*') {
        return Ok(builtin(inner)?.map(|m| m.dual()));
    } else {
        return Ok(None);
    };
    Ok(Some(m))
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Spec {
    Bases {
        n: usize,
        bases: Vec<Vec<usize>>,
    },
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
        n: Option<usize>,
    },
    Uniform {
        r: usize,
        n: usize,
    },
    Dual {
        of: Box<Spec>,
        n: Option<usize>,
    },
}

#[derive(Deserialize)]
struct Header {
    name: Option<String>,
}

/// Parses the matroid JSON schema. Errors name the line and column for malformed JSON and
/// the object path (`$.of.bases[2]`) for schema and axiom violations.
pub fn parse_json(text: &str) -> Result<(Option<String>, Matroid)> {
    let spec: Spec = serde_json::from_str(text)?;
    let header: Header = serde_json::from_str(text)?;
    Ok((header.name, build(&spec, "$")?))
}

fn build(spec: &Spec, at: &str) -> Result<Matroid> {
    let check_n = |m: Matroid, n: Option<usize>| -> Result<Matroid> {
        match n {
            Some(n) if n != m.ground_size() => {
                bail!(
                    "at {at}: n = {n}, but the matroid has {} elements",
                    m.ground_size()
                )
            }
            _ => Ok(m),
        }
    };
    match spec {
        Spec::Bases { n, bases } => {
            if *n > MAX_GROUND_SET {
                bail!("at {at}.n: {n} exceeds the supported maximum of {MAX_GROUND_SET}");
            }
            let mut sets = Vec::with_capacity(bases.len());
            for (i, b) in bases.iter().enumerate() {
                let mut s: Subset = 0;
                for &x in b {
                    if x >= *n {
                        bail!("at {at}.bases[{i}]: element {x} is not below n = {n}");
                    }
                    if subset::contains(s, x) {
                        bail!("at {at}.bases[{i}]: element {x} is repeated");
                    }
                    s |= 1 << x;
                }
                sets.push(s);
            }
            Matroid::from_bases(*n, sets).with_context(|| format!("at {at}"))
        }
        Spec::Graphic { vertices, edges, n } => {
            let m = Matroid::from_graph(*vertices, edges).with_context(|| format!("at {at}"))?;
            check_n(m, *n)
        }
        Spec::Uniform { r, n } => Matroid::uniform(*r, *n).with_context(|| format!("at {at}")),
        Spec::Dual { of, n } => check_n(build(of, &format!("{at}.of"))?.dual(), *n),
    }
}

pub fn parse_weights(csv: Option<&str>, n: usize) -> Result<Vec<i64>> {
    let Some(csv) = csv else {
        return Ok(vec![1; n]);
    };
    let weights = csv
        .split(',')
        .enumerate()
        .map(|(i, w)| {
            w.trim()
                .parse::<i64>()
                .map_err(|_| anyhow!("--weights: entry {i} ({:?}) is not an integer", w.trim()))
        })
        .collect::<Result<Vec<_>>>()?;
    if weights.len() != n {
        bail!("--weights: expected {n} weights, found {}", weights.len());
    }
    if let Some(i) = weights.iter().position(|&w| w == 0) {
        bail!("--weights: entry {i} is zero");
    }
    Ok(weights)
}

/// clap value parser for `--prime`.
pub fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    if is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}

pub fn parse_flat(csv: &str, n: usize) -> Result<Subset> {
    let s = subset::parse(csv)
        .ok_or_else(|| anyhow!("--flat: cannot read {csv:?} as a set of elements"))?;
    if let Some(x) = subset::elements(s).find(|&x| x >= n) {
        bail!("--flat: element {x} is not below n = {n}");
    }
    Ok(s)
}
