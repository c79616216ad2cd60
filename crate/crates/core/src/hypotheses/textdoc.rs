//! Text serialization for halfspaces and networks.
//!
//! Documents are TOML with every real number stored as a shortest round-trip
//! decimal string, so parse(print(h)) reproduces parameters bit-for-bit.

use serde::{Deserialize, Serialize};

use super::{Halfspace, Layer, SignNetwork};
use crate::error::{Error, Result};
use crate::scalar::{format_f64, parse_f64};

#[derive(Serialize, Deserialize)]
struct HalfspaceDoc {
    kind: String,
    weights: Vec<String>,
    bias: String,
}

#[derive(Serialize, Deserialize)]
struct NetworkDoc {
    kind: String,
    layer_sizes: Vec<usize>,
    layers: Vec<LayerDoc>,
}

#[derive(Serialize, Deserialize)]
struct LayerDoc {
    weights: Vec<Vec<String>>,
    biases: Vec<String>,
}

/// A parsed hypothesis document.
#[derive(Debug, Clone, PartialEq)]
pub enum HypothesisDoc {
    Halfspace(Halfspace<f64>),
    Network(SignNetwork<f64>),
}

impl HypothesisDoc {
    /// View as a network either way; a halfspace becomes its depth-1 network.
    pub fn into_network(self) -> SignNetwork<f64> {
        match self {
            HypothesisDoc::Halfspace(h) => SignNetwork::single(&h),
            HypothesisDoc::Network(n) => n,
        }
    }
}

pub fn write_halfspace(h: &Halfspace<f64>) -> String {
    let doc = HalfspaceDoc {
        kind: "halfspace".to_string(),
        weights: h.weights().iter().map(|&w| format_f64(w)).collect(),
        bias: format_f64(h.bias()),
    };
    toml::to_string_pretty(&doc).expect("halfspace doc serializes")
}

pub fn write_network(net: &SignNetwork<f64>) -> String {
    let doc = NetworkDoc {
        kind: "network".to_string(),
        layer_sizes: net.layer_sizes(),
        layers: net
            .layers()
            .iter()
            .map(|l| LayerDoc {
                weights: l
                    .weights()
                    .iter()
                    .map(|row| row.iter().map(|&w| format_f64(w)).collect())
                    .collect(),
                biases: l.biases().iter().map(|&b| format_f64(b)).collect(),
            })
            .collect(),
    };
    toml::to_string_pretty(&doc).expect("network doc serializes")
}

/// Parse either document kind, validating shapes and finiteness.
pub fn parse_hypothesis(text: &str) -> Result<HypothesisDoc> {
    let value: toml::Table = text
        .parse()
        .map_err(|e| Error::invalid(format!("malformed hypothesis document: {e}")))?;
    let kind = value
        .get("kind")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::invalid("hypothesis document is missing a string `kind`"))?;
    match kind {
        "halfspace" => {
            let doc: HalfspaceDoc = value
                .try_into()
                .map_err(|e| Error::invalid(format!("malformed halfspace document: {e}")))?;
            let weights: Result<Vec<f64>> = doc.weights.iter().map(|s| parse_f64(s)).collect();
            Ok(HypothesisDoc::Halfspace(Halfspace::new(
                weights?,
                parse_f64(&doc.bias)?,
            )?))
        }
        "network" => {
            let doc: NetworkDoc = value
                .try_into()
                .map_err(|e| Error::invalid(format!("malformed network document: {e}")))?;
            if doc.layer_sizes.len() != doc.layers.len() + 1 {
                return Err(Error::invalid(format!(
                    "layer_sizes lists {} entries but the document has {} layers",
                    doc.layer_sizes.len(),
                    doc.layers.len()
                )));
            }
            let mut layers = Vec::with_capacity(doc.layers.len());
            for (t, l) in doc.layers.iter().enumerate() {
                let mut rows = Vec::with_capacity(l.weights.len());
                for row in &l.weights {
                    let parsed: Result<Vec<f64>> = row.iter().map(|s| parse_f64(s)).collect();
                    rows.push(parsed?);
                }
                let biases: Result<Vec<f64>> = l.biases.iter().map(|s| parse_f64(s)).collect();
                let layer = Layer::new(rows, biases?)?;
                if layer.size() != doc.layer_sizes[t + 1] {
                    return Err(Error::invalid(format!(
                        "layer {} has {} neurons but layer_sizes says {}",
                        t + 1,
                        layer.size(),
                        doc.layer_sizes[t + 1]
                    )));
                }
                layers.push(layer);
            }
            Ok(HypothesisDoc::Network(SignNetwork::new(
                doc.layer_sizes[0],
                layers,
            )?))
        }
        other => Err(Error::invalid(format!(
            "unknown hypothesis kind {other:?} (expected \"halfspace\" or \"network\")"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halfspace_round_trip_is_exact() {
        let h = Halfspace::new(vec![0.1, -2.5e-17, 3.0], -0.30000000000000004).unwrap();
        let text = write_halfspace(&h);
        match parse_hypothesis(&text).unwrap() {
            HypothesisDoc::Halfspace(h2) => {
                assert_eq!(h2.bias().to_bits(), h.bias().to_bits());
                for (a, b) in h.weights().iter().zip(h2.weights()) {
                    assert_eq!(a.to_bits(), b.to_bits());
                }
            }
            other => panic!("wrong kind: {other:?}"),
        }
    }

    #[test]
    fn network_round_trip_is_exact() {
        let net = SignNetwork::new(
            2,
            vec![
                Layer::new(vec![vec![1.0, -1.0], vec![-0.1, 1e-200]], vec![-0.5, 0.25])
                    .unwrap(),
                Layer::new(vec![vec![1.0, 1.0]], vec![0.5]).unwrap(),
            ],
        )
        .unwrap();
        let text = write_network(&net);
        match parse_hypothesis(&text).unwrap() {
            HypothesisDoc::Network(n2) => assert_eq!(n2, net),
            other => panic!("wrong kind: {other:?}"),
        }
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(parse_hypothesis("kind = \"network\"").is_err());
        assert!(parse_hypothesis("not toml [ at all").is_err());
        assert!(parse_hypothesis("kind = \"perceptron\"").is_err());
        // layer_sizes inconsistent with the actual layer shape.
        let bad = r#"
kind = "network"
layer_sizes = [2, 3]

[[layers]]
weights = [["1", "0"]]
biases = ["0"]
"#;
        assert!(parse_hypothesis(bad).is_err());
        // Non-finite values are data errors, not panics.
        let nan = r#"
kind = "halfspace"
weights = ["nan"]
bias = "0"
"#;
        assert!(parse_hypothesis(nan).is_err());
    }
}
