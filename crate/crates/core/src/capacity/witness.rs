//! Self-contained shattering certificates.
//!
//! A witness records everything needed to re-check an adversarial shattering
//! claim from scratch: the points, the neighborhood, a reference labeling, and
//! one hypothesis per target labeling together with the corrupted loss vector
//! it achieves against the reference. Verification replays every hypothesis
//! through the corruption oracle, so a tampered or stale witness fails loudly
//! rather than being trusted.

use serde::{Deserialize, Serialize};

use crate::corruption::{
    corrupt_halfspace, corrupt_network_exact, Corruptible, Corrupted, CorruptedLabel,
};
use crate::error::{Error, Result};
use crate::geometry::{NeighborhoodRelation, NormP};
use crate::hypotheses::{parse_hypothesis, write_halfspace, write_network, HypothesisDoc, Label};
use crate::scalar::{format_f64, parse_f64};

/// Hypotheses that can appear in a witness document. The doc form is what
/// gets serialized and what verification replays.
pub trait WitnessHypothesis: Corruptible {
    fn to_doc(&self) -> HypothesisDoc;
}

impl WitnessHypothesis for crate::hypotheses::Halfspace<f64> {
    fn to_doc(&self) -> HypothesisDoc {
        HypothesisDoc::Halfspace(self.clone())
    }
}

impl WitnessHypothesis for crate::hypotheses::SignNetwork<f64> {
    fn to_doc(&self) -> HypothesisDoc {
        HypothesisDoc::Network(self.clone())
    }
}

impl Corruptible for HypothesisDoc {
    fn plain(&self, x: &[f64]) -> Result<Label> {
        match self {
            HypothesisDoc::Halfspace(h) => h.eval(x),
            HypothesisDoc::Network(n) => n.eval_binary(x),
        }
    }

    fn corrupt(&self, x: &[f64], nbhd: &NeighborhoodRelation<f64>) -> Result<CorruptedLabel> {
        match self {
            HypothesisDoc::Halfspace(h) => corrupt_halfspace(h, x, nbhd),
            HypothesisDoc::Network(n) => corrupt_network_exact(n, x, nbhd),
        }
    }
}

/// One realized labeling: the hypothesis whose corrupted outputs equal
/// `target_labels` on the witness points, and the loss vector that earns
/// against the witness's reference labeling.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessEntry {
    pub target_labels: Vec<Label>,
    pub loss_vector: Vec<u8>,
    pub hypothesis: HypothesisDoc,
}

/// Certificate that a point tuple is adversarially shattered: all `2^n`
/// labelings realized robustly, hence all `2^n` corrupted loss vectors
/// achieved against the reference labeling.
#[derive(Debug, Clone, PartialEq)]
pub struct ShatterWitness {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub neighborhood: NeighborhoodRelation<f64>,
    pub reference_labels: Vec<Label>,
    pub entries: Vec<WitnessEntry>,
}

#[derive(Serialize, Deserialize)]
struct WitnessDoc {
    kind: String,
    dim: usize,
    p: String,
    epsilon: String,
    points: Vec<Vec<String>>,
    reference_labels: Vec<String>,
    entries: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    target_labels: Vec<String>,
    loss_vector: Vec<u8>,
    hypothesis: toml::Table,
}

impl ShatterWitness {
    /// Number of witness points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Re-check the certificate from scratch: structural consistency, full
    /// coverage of all `2^n` labelings, loss vectors consistent with the
    /// reference labeling, and every hypothesis reproducing its target labels
    /// through the corruption oracle.
    pub fn verify(&self) -> Result<()> {
        let n = self.points.len();
        if n > 62 {
            return Err(Error::GuardExceeded {
                what: "witness points",
                limit: 62,
                requested: n,
            });
        }
        if self.points.iter().any(|x| x.len() != self.dim) {
            return Err(Error::VerificationFailed(
                "witness point dimension mismatch".to_string(),
            ));
        }
        if self.reference_labels.len() != n {
            return Err(Error::VerificationFailed(format!(
                "{} reference labels for {} points",
                self.reference_labels.len(),
                n
            )));
        }
        let expected = 1u64 << n;
        if self.entries.len() as u64 != expected {
            return Err(Error::VerificationFailed(format!(
                "witness has {} entries, expected 2^{n} = {expected}",
                self.entries.len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for (k, entry) in self.entries.iter().enumerate() {
            if entry.target_labels.len() != n || entry.loss_vector.len() != n {
                return Err(Error::VerificationFailed(format!(
                    "entry {k} has wrong target/loss length"
                )));
            }
            if !seen.insert(entry.target_labels.clone()) {
                return Err(Error::VerificationFailed(format!(
                    "entry {k} repeats target labeling {:?}",
                    entry.target_labels
                )));
            }
            for i in 0..n {
                let expect_loss = u8::from(entry.target_labels[i] != self.reference_labels[i]);
                if entry.loss_vector[i] != expect_loss {
                    return Err(Error::VerificationFailed(format!(
                        "entry {k} loss_vector[{i}] = {} but target/reference disagree-bit is {expect_loss}",
                        entry.loss_vector[i]
                    )));
                }
                let got = entry.hypothesis.corrupt(&self.points[i], &self.neighborhood)?;
                if got != Corrupted::Known(entry.target_labels[i]) {
                    return Err(Error::VerificationFailed(format!(
                        "entry {k}: corruption oracle gives {got} at point {i}, witness claims {}",
                        entry.target_labels[i]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Serialize to a TOML document. Only ball neighborhoods serialize;
    /// reals are stored as shortest round-trip decimal strings.
    pub fn to_toml(&self) -> Result<String> {
        let NeighborhoodRelation::LpBall { p, epsilon } = &self.neighborhood else {
            return Err(Error::Unsupported(
                "witness documents require an l_p ball neighborhood".to_string(),
            ));
        };
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let hyp_text = match &e.hypothesis {
                HypothesisDoc::Halfspace(h) => write_halfspace(h),
                HypothesisDoc::Network(net) => write_network(net),
            };
            let table: toml::Table = hyp_text.parse().expect("own hypothesis doc reparses");
            entries.push(EntryDoc {
                target_labels: e.target_labels.iter().map(|l| l.to_string()).collect(),
                loss_vector: e.loss_vector.clone(),
                hypothesis: table,
            });
        }
        let doc = WitnessDoc {
            kind: "shatter-witness".to_string(),
            dim: self.dim,
            p: p.to_string(),
            epsilon: format_f64(*epsilon),
            points: self
                .points
                .iter()
                .map(|x| x.iter().map(|&v| format_f64(v)).collect())
                .collect(),
            reference_labels: self.reference_labels.iter().map(|l| l.to_string()).collect(),
            entries,
        };
        Ok(toml::to_string_pretty(&doc).expect("witness doc serializes"))
    }

    /// Parse a witness document. The result is structurally valid but not yet
    /// verified; call [`ShatterWitness::verify`] for the oracle replay.
    pub fn from_toml(text: &str) -> Result<Self> {
        let doc: WitnessDoc = toml::from_str(text)
            .map_err(|e| Error::invalid(format!("malformed witness document: {e}")))?;
        if doc.kind != "shatter-witness" {
            return Err(Error::invalid(format!(
                "expected kind \"shatter-witness\", got {:?}",
                doc.kind
            )));
        }
        let p: NormP = doc.p.parse()?;
        let neighborhood = NeighborhoodRelation::ball(p, parse_f64(&doc.epsilon)?)?;
        let mut points = Vec::with_capacity(doc.points.len());
        for row in &doc.points {
            let coords: Result<Vec<f64>> = row.iter().map(|s| parse_f64(s)).collect();
            points.push(coords?);
        }
        let reference_labels: Result<Vec<Label>> =
            doc.reference_labels.iter().map(|s| s.parse()).collect();
        let mut entries = Vec::with_capacity(doc.entries.len());
        for e in &doc.entries {
            let targets: Result<Vec<Label>> = e.target_labels.iter().map(|s| s.parse()).collect();
            let hyp_text = toml::to_string(&e.hypothesis).expect("table reserializes");
            entries.push(WitnessEntry {
                target_labels: targets?,
                loss_vector: e.loss_vector.clone(),
                hypothesis: parse_hypothesis(&hyp_text)?,
            });
        }
        Ok(ShatterWitness {
            dim: doc.dim,
            points,
            neighborhood,
            reference_labels: reference_labels?,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypotheses::Halfspace;

    fn tiny_witness() -> ShatterWitness {
        // Threshold class on the single point {0.25} with an l_inf radius the
        // margins clear.
        let nb = NeighborhoodRelation::ball(NormP::Inf, 0.1).unwrap();
        let plus = Halfspace::new(vec![1.0], 0.0).unwrap();
        let minus = Halfspace::new(vec![-1.0], 0.0).unwrap();
        ShatterWitness {
            dim: 1,
            points: vec![vec![0.25]],
            neighborhood: nb,
            reference_labels: vec![Label::Plus],
            entries: vec![
                WitnessEntry {
                    target_labels: vec![Label::Minus],
                    loss_vector: vec![1],
                    hypothesis: HypothesisDoc::Halfspace(minus),
                },
                WitnessEntry {
                    target_labels: vec![Label::Plus],
                    loss_vector: vec![0],
                    hypothesis: HypothesisDoc::Halfspace(plus),
                },
            ],
        }
    }

    #[test]
    fn verify_accepts_a_sound_witness() {
        tiny_witness().verify().unwrap();
    }

    #[test]
    fn verify_rejects_tampered_loss_vector() {
        let mut w = tiny_witness();
        w.entries[0].loss_vector[0] = 0;
        assert!(matches!(w.verify(), Err(Error::VerificationFailed(_))));
    }

    #[test]
    fn verify_rejects_swapped_hypothesis() {
        let mut w = tiny_witness();
        w.entries[0].hypothesis = w.entries[1].hypothesis.clone();
        assert!(matches!(w.verify(), Err(Error::VerificationFailed(_))));
    }

    #[test]
    fn verify_rejects_duplicate_targets() {
        let mut w = tiny_witness();
        w.entries[0].target_labels = w.entries[1].target_labels.clone();
        w.entries[0].loss_vector = w.entries[1].loss_vector.clone();
        w.entries[0].hypothesis = w.entries[1].hypothesis.clone();
        assert!(matches!(w.verify(), Err(Error::VerificationFailed(_))));
    }

    #[test]
    fn toml_round_trip_is_exact_and_verifiable() {
        let w = tiny_witness();
        let text = w.to_toml().unwrap();
        let back = ShatterWitness::from_toml(&text).unwrap();
        assert_eq!(w, back);
        back.verify().unwrap();
        assert_eq!(text, back.to_toml().unwrap());
    }

    #[test]
    fn network_hypotheses_serialize_in_witnesses() {
        let mut w = tiny_witness();
        let net = crate::hypotheses::SignNetwork::single(&Halfspace::new(vec![1.0], 0.0).unwrap());
        w.entries[1].hypothesis = HypothesisDoc::Network(net);
        w.verify().unwrap();
        let text = w.to_toml().unwrap();
        let back = ShatterWitness::from_toml(&text).unwrap();
        assert_eq!(w, back);
        back.verify().unwrap();
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(ShatterWitness::from_toml("kind = \"something-else\"").is_err());
        assert!(ShatterWitness::from_toml("not toml [").is_err());
    }
}
