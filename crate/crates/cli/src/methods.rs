use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use multiflower::lp::{Method, RmcSpec};
use multiflower::PartitionMap;

/// A method as named on the command line, with its display label.
#[derive(Clone, Debug)]
pub struct MethodSpec {
    pub label: String,
    pub method: Method,
}

pub fn read_partition_map(path: &Path) -> anyhow::Result<PartitionMap> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    PartitionMap::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn rmc_from_strategy(name: &str) -> anyhow::Result<RmcSpec> {
    Ok(match name {
        "leftmost" => RmcSpec::Leftmost,
        "balanced" => RmcSpec::Balanced,
        "minsize" => RmcSpec::MinSize,
        other => bail!("unknown RMC strategy {other:?} (expected leftmost, balanced or minsize)"),
    })
}

/// Parses `std`, `flower`, `eflower`, `rmc:<strategy>` or `rmc:file=<path>`.
pub fn parse_method(spec: &str) -> anyhow::Result<MethodSpec> {
    let spec = spec.trim();
    let method = match spec {
        "std" => Method::Std,
        "flower" => Method::Flower,
        "eflower" => Method::ExtendedFlower,
        _ => match spec.strip_prefix("rmc:") {
            Some(rest) => match rest.strip_prefix("file=") {
                Some(path) => {
                    let path = PathBuf::from(path);
                    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    let map = read_partition_map(&path)?;
                    return Ok(MethodSpec { label: format!("rmc:{stem}"), method: Method::Rmc(RmcSpec::Explicit(map)) });
                }
                None => Method::Rmc(rmc_from_strategy(rest)?),
            },
            None => bail!("unknown method {spec:?}"),
        },
    };
    Ok(MethodSpec { label: method.to_string(), method })
}

/// Resolves the `relax` flags into one method.
pub fn relax_method(method: &str, strategy: Option<&str>, file: Option<&Path>) -> anyhow::Result<MethodSpec> {
    if method != "rmc" {
        if strategy.is_some() || file.is_some() {
            bail!("--rmc-strategy and --rmc-file only apply to --method rmc");
        }
        return parse_method(method);
    }
    match (strategy, file) {
        (Some(_), Some(_)) => bail!("give either --rmc-strategy or --rmc-file, not both"),
        (_, Some(f)) => parse_method(&format!("rmc:file={}", f.display())),
        (s, None) => parse_method(&format!("rmc:{}", s.unwrap_or("leftmost"))),
    }
}
