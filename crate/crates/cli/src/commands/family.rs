//! Halfspace-family resolution shared by the search commands.

use std::path::PathBuf;

use avckit::capacity::HalfspaceFamily;
use avckit::error::Error;
use avckit::geometry::NeighborhoodRelation;
use avckit::hypotheses::{grid_halfspaces, Halfspace};
use avckit::risk::halfspace_candidates;

use crate::args::{FamilyArgs, FamilyKind};
use crate::support::{parse_f64_list, Result};

/// Flags merged over config-file values.
#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub weights: Option<Vec<f64>>,
    pub biases: Option<Vec<f64>>,
}

impl FamilySpec {
    pub fn resolve(
        args: &FamilyArgs,
        cfg_family: Option<&str>,
        cfg_weights: &Option<String>,
        cfg_biases: &Option<String>,
    ) -> Result<FamilySpec> {
        let kind = match (&args.family, cfg_family) {
            (Some(k), _) => *k,
            (None, Some("candidates")) | (None, None) => FamilyKind::Candidates,
            (None, Some("grid")) => FamilyKind::Grid,
            (None, Some(other)) => {
                return Err(Error::invalid(format!(
                    "family must be candidates or grid, got {other:?}"
                )))
            }
        };
        let weights = match args.weights.as_ref().or(cfg_weights.as_ref()) {
            Some(s) => Some(parse_f64_list(s)?),
            None => None,
        };
        let biases = match args.biases.as_ref().or(cfg_biases.as_ref()) {
            Some(s) => Some(parse_f64_list(s)?),
            None => None,
        };
        if kind == FamilyKind::Grid && (weights.is_none() || biases.is_none()) {
            return Err(Error::invalid(
                "the grid family needs --weights and --biases",
            ));
        }
        Ok(FamilySpec {
            kind,
            weights,
            biases,
        })
    }

    pub fn kind_str(&self) -> &'static str {
        match self.kind {
            FamilyKind::Candidates => "candidates",
            FamilyKind::Grid => "grid",
        }
    }

    /// Canonical digest text for the grid lists (empty for candidates).
    pub fn digest_lists(&self) -> (String, String) {
        let fmt = |v: &Option<Vec<f64>>| {
            v.as_ref().map_or(String::new(), |v| {
                v.iter()
                    .map(|&x| avckit::scalar::format_f64(x))
                    .collect::<Vec<_>>()
                    .join(",")
            })
        };
        (fmt(&self.weights), fmt(&self.biases))
    }

    /// Enumerated family for a fixed point set.
    pub fn enumerate(
        &self,
        points: &[Vec<f64>],
        nbhd: &NeighborhoodRelation<f64>,
    ) -> Result<Vec<Halfspace<f64>>> {
        match self.kind {
            FamilyKind::Candidates => halfspace_candidates(points, nbhd),
            FamilyKind::Grid => {
                let dim = points.first().map_or(0, |x| x.len());
                grid_halfspaces(
                    dim,
                    self.weights.as_deref().expect("validated"),
                    self.biases.as_deref().expect("validated"),
                )
            }
        }
    }

    /// Family spec for the subset-scanning search.
    pub fn search_family(&self) -> HalfspaceFamily {
        match self.kind {
            FamilyKind::Candidates => HalfspaceFamily::SubsetCandidates,
            FamilyKind::Grid => HalfspaceFamily::ParameterGrid {
                weight_values: self.weights.clone().expect("validated"),
                bias_values: self.biases.clone().expect("validated"),
            },
        }
    }
}

/// Required-path helper: flags beat config; a missing value is an input
/// error naming the flag.
pub fn require_path(
    flag: &Option<PathBuf>,
    cfg: Option<PathBuf>,
    name: &str,
) -> Result<PathBuf> {
    flag.clone()
        .or(cfg)
        .ok_or_else(|| Error::invalid(format!("--{name} is required (flag or config)")))
}
