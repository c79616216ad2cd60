//! Neighborhood relations and the margin arithmetic behind the corruption
//! oracles.
//!
//! An evasion adversary moves an input anywhere inside its neighborhood. Two
//! shapes are supported: closed `l_p` balls `{x' : ||x' - x||_p <= eps}` for
//! `p in {1, 2, inf}`, and explicit finite neighbor maps. Both are reflexive;
//! finite maps are validated for it when built.
//!
//! For an affine score `w . x + b` the exact range over an `l_p` ball is the
//! closed interval centered at `w . x + b` with radius `eps * ||w||_q`, where
//! `q` is the dual exponent (`1 <-> inf`, `2 <-> 2`). That interval drives
//! every halfspace-level corruption decision.

pub mod feasibility;

pub use feasibility::{lp_feasible, BallSpec, LinCon, LinearSystem};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// The `p` of an `l_p` norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormP {
    One,
    Two,
    Inf,
}

impl NormP {
    /// Dual exponent: `||.||_1 <-> ||.||_inf`, `||.||_2` self-dual.
    pub fn dual(self) -> NormP {
        match self {
            NormP::One => NormP::Inf,
            NormP::Two => NormP::Two,
            NormP::Inf => NormP::One,
        }
    }
}

impl std::fmt::Display for NormP {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NormP::One => "1",
            NormP::Two => "2",
            NormP::Inf => "inf",
        })
    }
}

impl std::str::FromStr for NormP {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(NormP::One),
            "2" => Ok(NormP::Two),
            "inf" | "Inf" | "INF" => Ok(NormP::Inf),
            other => Err(Error::invalid(format!(
                "norm must be one of 1, 2, inf; got {other:?}"
            ))),
        }
    }
}

/// `||w||_p`.
pub fn norm<S: Real>(w: &[S], p: NormP) -> S {
    match p {
        NormP::One => w.iter().fold(S::zero(), |acc, &x| acc + x.abs()),
        NormP::Two => w.iter().fold(S::zero(), |acc, &x| acc + x * x).sqrt(),
        NormP::Inf => w.iter().fold(S::zero(), |acc, &x| acc.max(x.abs())),
    }
}

/// Dual norm `||w||_q` of the given primal exponent `p`.
pub fn dual_norm<S: Real>(w: &[S], p: NormP) -> S {
    norm(w, p.dual())
}

/// Membership in the closed ball `||x - center||_p <= eps`.
pub fn ball_contains<S: Real>(center: &[S], p: NormP, eps: S, x: &[S]) -> Result<bool> {
    if center.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: center.len(),
            got: x.len(),
        });
    }
    let diff: Vec<S> = x.iter().zip(center).map(|(&a, &c)| a - c).collect();
    Ok(norm(&diff, p) <= eps)
}

/// Explicit finite neighborhoods, one entry per mapped point.
///
/// Reflexivity (each point neighbors itself) is checked at construction.
/// Lookup is by exact coordinate equality.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteNeighborMap<S: Real> {
    entries: Vec<(Vec<S>, Vec<Vec<S>>)>,
}

impl<S: Real> FiniteNeighborMap<S> {
    pub fn new(entries: Vec<(Vec<S>, Vec<Vec<S>>)>) -> Result<Self> {
        for (x, neighbors) in &entries {
            if !neighbors.iter().any(|n| n == x) {
                return Err(Error::invalid(format!(
                    "neighbor map is not reflexive at {x:?}"
                )));
            }
            if neighbors.iter().any(|n| n.len() != x.len()) {
                return Err(Error::invalid("neighbor dimensions differ from the point"));
            }
        }
        Ok(FiniteNeighborMap { entries })
    }

    pub fn neighbors(&self, x: &[S]) -> Result<&[Vec<S>]> {
        self.entries
            .iter()
            .find(|(p, _)| p.as_slice() == x)
            .map(|(_, n)| n.as_slice())
            .ok_or_else(|| Error::invalid(format!("point {x:?} has no neighbor-map entry")))
    }

    pub fn entries(&self) -> &[(Vec<S>, Vec<Vec<S>>)] {
        &self.entries
    }
}

/// How the adversary may move an input.
#[derive(Debug, Clone, PartialEq)]
pub enum NeighborhoodRelation<S: Real> {
    /// Closed ball `{x' : ||x' - x||_p <= epsilon}` around each queried point.
    LpBall { p: NormP, epsilon: S },
    /// Explicit neighbor lists.
    FiniteMap(FiniteNeighborMap<S>),
}

impl<S: Real> NeighborhoodRelation<S> {
    pub fn ball(p: NormP, epsilon: S) -> Result<Self> {
        if !epsilon.is_finite() || epsilon < S::zero() {
            return Err(Error::invalid(format!(
                "epsilon must be finite and >= 0, got {epsilon}"
            )));
        }
        Ok(NeighborhoodRelation::LpBall { p, epsilon })
    }

    /// True when the neighborhood of every point is just the point itself.
    pub fn is_identity(&self) -> bool {
        match self {
            NeighborhoodRelation::LpBall { epsilon, .. } => *epsilon == S::zero(),
            NeighborhoodRelation::FiniteMap(m) => {
                m.entries.iter().all(|(x, ns)| ns.iter().all(|n| n == x))
            }
        }
    }
}

/// Exact range `[lo, hi]` of `w . x' + b` over the `l_p` ball around `x`:
/// `w . x + b -/+ eps * ||w||_q`.
///
/// Finite-map neighborhoods have no interval form; enumerate them instead.
pub fn margin_interval<S: Real>(
    h: &crate::hypotheses::Halfspace<S>,
    x: &[S],
    nbhd: &NeighborhoodRelation<S>,
) -> Result<(S, S)> {
    match nbhd {
        NeighborhoodRelation::LpBall { p, epsilon } => {
            let center = h.activation(x)?;
            let radius = *epsilon * dual_norm(h.weights(), *p);
            Ok((center - radius, center + radius))
        }
        NeighborhoodRelation::FiniteMap(_) => Err(Error::Unsupported(
            "margin intervals are defined for l_p balls; enumerate finite maps".to_string(),
        )),
    }
}
