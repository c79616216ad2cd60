//! Bound tables: exact growth-rate crossover thresholds per edge count and
//! network growth bounds per architecture and sample size.

use std::fmt::Write as _;
use std::path::PathBuf;

use avckit::capacity::{grid_networks, lemma3_threshold, network_growth_bound};
use avckit::scalar::format_f64;
use serde::{Deserialize, Serialize};

use crate::args::BoundsArgs;
use crate::support::{config_digest, emit, load_config, parse_usize_list, Result};
use avckit::error::Error;

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCfg {
    edges: Option<String>,
    layers: Option<String>,
    m: Option<String>,
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Resolved {
    command: &'static str,
    edges: String,
    layers: String,
    m: String,
}

pub fn run(a: BoundsArgs) -> Result<String> {
    let cfg: FileCfg = load_config(&a.config)?;
    let edges_text = a.edges.clone().or(cfg.edges).unwrap_or_default();
    let layers_text = a.layers.clone().or(cfg.layers).unwrap_or_default();
    let m_text = a.m.clone().or(cfg.m).unwrap_or_else(|| "1-6".to_string());
    let out = a.out.clone().or(cfg.out);

    let resolved = Resolved {
        command: "bounds",
        edges: edges_text.clone(),
        layers: layers_text.clone(),
        m: m_text.clone(),
    };
    let digest = config_digest(&resolved);

    let mut table = String::from("kind,spec,edges,m,m_star,closed_form,loose,per_neuron\n");
    for e in parse_usize_list(&edges_text)? {
        let e32 = u32::try_from(e)
            .map_err(|_| Error::invalid(format!("edge count {e} does not fit in 32 bits")))?;
        let row = lemma3_threshold(e32)?;
        let _ = writeln!(
            table,
            "threshold,{e},{e},,{},{},,",
            row.m_star,
            format_f64(row.closed_form)
        );
    }

    let m_values = parse_usize_list(&m_text)?;
    for arch in layers_text.split(';').filter(|s| !s.trim().is_empty()) {
        let sizes = parse_usize_list(arch.trim())?;
        // A single zero-filled instance carries the architecture; the bounds
        // depend only on layer shapes.
        let net = grid_networks(&sizes, &[0.0])?
            .into_iter()
            .next()
            .ok_or_else(|| Error::invalid(format!("architecture {arch:?} has no instances")))?;
        let spec: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
        let spec = spec.join("x");
        let edges = net.edge_count();
        for &m in &m_values {
            let b = network_growth_bound(&net, m)?;
            let _ = writeln!(
                table,
                "architecture,{spec},{edges},{m},,,{},{}",
                format_f64(b.loose),
                b.per_neuron.map_or(String::new(), format_f64)
            );
        }
    }
    emit(&out, &table)?;
    Ok(digest)
}
