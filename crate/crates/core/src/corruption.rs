//! Corruption oracles.
//!
//! The corrupted version of a classifier `h` under a neighborhood relation
//! answers, at `x`:
//!
//! * `h(x)` when `h` is constant over the whole neighborhood `N(x)`;
//! * `Bot` otherwise.
//!
//! `Bot` is a distinguished non-label that disagrees with every label, so a
//! 0/1 loss against the corrupted output equals the worst-case loss of `h`
//! over `N(x)`. Deciding the constant-ness exactly is the whole game:
//!
//! * Halfspaces: the score range over an `l_p` ball is the margin interval
//!   `w . x + b -/+ eps ||w||_q`. For `p in {1, inf}` the interval endpoints
//!   are rational in the inputs and the comparison against zero is exact; for
//!   `p = 2` the endpoint involves a square root and the decision is made in
//!   floats with a `1e-9` ambiguity band resolved toward `Bot`.
//! * Sign networks: the output is determined by the first-layer sign pattern,
//!   because deeper layers see only `{-1,+1}` vectors. The exact oracle
//!   enumerates first-layer patterns, skipping neurons whose margin interval
//!   pins their sign, asks the feasibility engine which remaining patterns the
//!   ball actually realizes (strict `> 0` for `+1`, `<= 0` for `-1`), and
//!   propagates each realized pattern through the deeper layers in exact
//!   rational arithmetic. One realized output label means that label; two mean
//!   `Bot`.
//! * The interval oracle replaces pattern enumeration with a sound ternary
//!   forward pass (`-1`, `+1`, unknown); it may answer `Bot` where the exact
//!   oracle pins a label, never the reverse.
//!
//! With `epsilon = 0` every neighborhood is the point itself and every oracle
//! short-circuits to plain evaluation, exactly.

use crate::error::{Error, Result};
use crate::geometry::{
    dual_norm, margin_interval, BallSpec, LinCon, LinearSystem, NeighborhoodRelation, NormP,
};
use crate::hypotheses::{Halfspace, Label, SignNetwork};
use crate::scalar::{rat_from_f64, rat_sign, Rat};
use num_traits::Zero;

/// Width of the float-path ambiguity band. Quantities this close to a
/// decision boundary are treated as undecidable and resolved toward `Bot`.
pub const BOUNDARY_BAND: f64 = 1e-9;

/// First-layer width cap for exact pattern enumeration (`2^|V_1|` patterns).
pub const MAX_EXACT_FIRST_LAYER: usize = 12;

/// Output of a corruption oracle over label set `Y`: a definite value or the
/// always-wrong `Bot`. `Bot` compares unequal to every `Known` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Corrupted<Y> {
    Known(Y),
    Bot,
}

impl<Y: PartialEq> Corrupted<Y> {
    /// True only for a definite, equal value; `Bot` agrees with nothing.
    pub fn agrees(&self, y: &Y) -> bool {
        matches!(self, Corrupted::Known(v) if v == y)
    }
}

impl<Y> Corrupted<Y> {
    pub fn is_bot(&self) -> bool {
        matches!(self, Corrupted::Bot)
    }
}

/// 0/1 loss of a corrupted output against a reference value: `Bot` and wrong
/// values both cost 1, so this is the worst-case loss over the neighborhood.
pub fn corrupted_loss_of<Y: PartialEq>(pred: &Corrupted<Y>, y: &Y) -> u8 {
    u8::from(!pred.agrees(y))
}

/// Corrupted binary label.
pub type CorruptedLabel = Corrupted<Label>;

impl std::fmt::Display for CorruptedLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Corrupted::Known(l) => write!(f, "{l}"),
            Corrupted::Bot => f.write_str("BOT"),
        }
    }
}

impl std::str::FromStr for CorruptedLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "BOT" | "bot" => Ok(Corrupted::Bot),
            other => Ok(Corrupted::Known(other.parse()?)),
        }
    }
}

/// Hypotheses that expose plain evaluation and a corruption oracle. Risk and
/// capacity computations are generic over this.
pub trait Corruptible {
    fn plain(&self, x: &[f64]) -> Result<Label>;
    fn corrupt(&self, x: &[f64], nbhd: &NeighborhoodRelation<f64>) -> Result<CorruptedLabel>;
}

impl Corruptible for Halfspace<f64> {
    fn plain(&self, x: &[f64]) -> Result<Label> {
        self.eval(x)
    }

    fn corrupt(&self, x: &[f64], nbhd: &NeighborhoodRelation<f64>) -> Result<CorruptedLabel> {
        corrupt_halfspace(self, x, nbhd)
    }
}

impl Corruptible for SignNetwork<f64> {
    fn plain(&self, x: &[f64]) -> Result<Label> {
        self.eval_binary(x)
    }

    fn corrupt(&self, x: &[f64], nbhd: &NeighborhoodRelation<f64>) -> Result<CorruptedLabel> {
        corrupt_network_exact(self, x, nbhd)
    }
}

/// Wrapper selecting the sound-but-incomplete interval oracle for a network.
#[derive(Debug, Clone, Copy)]
pub struct IntervalNet<'a>(pub &'a SignNetwork<f64>);

impl Corruptible for IntervalNet<'_> {
    fn plain(&self, x: &[f64]) -> Result<Label> {
        self.0.eval_binary(x)
    }

    fn corrupt(&self, x: &[f64], nbhd: &NeighborhoodRelation<f64>) -> Result<CorruptedLabel> {
        corrupt_network_interval(self.0, x, nbhd)
    }
}

/// Corrupted halfspace output at `x`.
pub fn corrupt_halfspace(
    h: &Halfspace<f64>,
    x: &[f64],
    nbhd: &NeighborhoodRelation<f64>,
) -> Result<CorruptedLabel> {
    match nbhd {
        NeighborhoodRelation::FiniteMap(map) => {
            finite_consensus(map.neighbors(x)?, x, |pt| h.eval(pt))
        }
        NeighborhoodRelation::LpBall { epsilon, .. } if *epsilon == 0.0 => {
            Ok(Corrupted::Known(h.eval(x)?))
        }
        NeighborhoodRelation::LpBall { p, epsilon } => match p {
            NormP::Two => {
                let (lo, hi) = margin_interval(h, x, nbhd)?;
                Ok(if lo > BOUNDARY_BAND {
                    Corrupted::Known(Label::Plus)
                } else if hi <= -BOUNDARY_BAND {
                    Corrupted::Known(Label::Minus)
                } else {
                    Corrupted::Bot
                })
            }
            NormP::One | NormP::Inf => {
                // Rational endpoints, exact sign decisions.
                let a = rat_activation(h, x)?;
                let r = rat_from_f64(*epsilon)? * rat_dual_norm(h.weights(), *p)?;
                Ok(if (&a - &r) > Rat::zero() {
                    Corrupted::Known(Label::Plus)
                } else if !(&a + &r > Rat::zero()) {
                    Corrupted::Known(Label::Minus)
                } else {
                    Corrupted::Bot
                })
            }
        },
    }
}

/// Exact corrupted output of a single-output sign network at `x`.
pub fn corrupt_network_exact(
    net: &SignNetwork<f64>,
    x: &[f64],
    nbhd: &NeighborhoodRelation<f64>,
) -> Result<CorruptedLabel> {
    if net.output_dim() != 1 {
        return Err(Error::Unsupported(format!(
            "corruption needs a single output neuron, network has {}",
            net.output_dim()
        )));
    }
    match nbhd {
        NeighborhoodRelation::FiniteMap(map) => {
            return finite_consensus(map.neighbors(x)?, x, |pt| net.eval_binary(pt));
        }
        NeighborhoodRelation::LpBall { epsilon, .. } if *epsilon == 0.0 => {
            return Ok(Corrupted::Known(net.eval_binary(x)?));
        }
        _ => {}
    }
    let NeighborhoodRelation::LpBall { p, epsilon } = nbhd else {
        unreachable!()
    };
    let first = &net.layers()[0];
    if first.size() > MAX_EXACT_FIRST_LAYER {
        return Err(Error::GuardExceeded {
            what: "first-layer width for exact pattern enumeration",
            limit: MAX_EXACT_FIRST_LAYER,
            requested: first.size(),
        });
    }

    // Classify each first-layer neuron as forced or free via its margin
    // interval. Wrongly marking a neuron free only costs feasibility calls;
    // wrongly forcing one would drop patterns, so the float path (p = 2)
    // demands the band before forcing.
    let mut forced: Vec<Option<Label>> = Vec::with_capacity(first.size());
    for i in 0..first.size() {
        let neuron = first.neuron(i);
        let f = match p {
            NormP::Two => {
                let (lo, hi) = margin_interval(&neuron, x, nbhd)?;
                if lo > BOUNDARY_BAND {
                    Some(Label::Plus)
                } else if hi <= -BOUNDARY_BAND {
                    Some(Label::Minus)
                } else {
                    None
                }
            }
            NormP::One | NormP::Inf => {
                let a = rat_activation(&neuron, x)?;
                let r = rat_from_f64(*epsilon)? * rat_dual_norm(neuron.weights(), *p)?;
                if (&a - &r) > Rat::zero() {
                    Some(Label::Plus)
                } else if !(&a + &r > Rat::zero()) {
                    Some(Label::Minus)
                } else {
                    None
                }
            }
        };
        forced.push(f);
    }
    let free: Vec<usize> = (0..first.size()).filter(|&i| forced[i].is_none()).collect();

    let ball = BallSpec {
        center: x.to_vec(),
        p: *p,
        epsilon: *epsilon,
    };
    let mut seen = [false; 2];
    let mut pattern = vec![Label::Minus; first.size()];
    for (i, f) in forced.iter().enumerate() {
        if let Some(l) = f {
            pattern[i] = *l;
        }
    }
    for assignment in 0u32..(1 << free.len()) {
        let mut rows = Vec::with_capacity(free.len());
        for (bit, &i) in free.iter().enumerate() {
            let sign = if assignment >> bit & 1 == 1 {
                Label::Plus
            } else {
                Label::Minus
            };
            pattern[i] = sign;
            let neuron = first.neuron(i);
            rows.push(match sign {
                // w . x' + b > 0  <=>  -w . x' < b
                Label::Plus => LinCon::gt(neuron.weights().to_vec(), -neuron.bias()),
                // w . x' + b <= 0  <=>  w . x' <= -b
                Label::Minus => LinCon::le(neuron.weights().to_vec(), -neuron.bias()),
            });
        }
        let realizable = if rows.is_empty() {
            // Fully forced pattern; the center itself realizes it.
            true
        } else {
            let sys = LinearSystem::new(net.input_dim(), rows, ball.clone())?;
            crate::geometry::lp_feasible(&sys)?
        };
        if realizable {
            let label = propagate_pattern_exact(net, &pattern)?;
            seen[match label {
                Label::Minus => 0,
                Label::Plus => 1,
            }] = true;
            if seen[0] && seen[1] {
                return Ok(Corrupted::Bot);
            }
        }
    }
    match (seen[0], seen[1]) {
        (true, false) => Ok(Corrupted::Known(Label::Minus)),
        (false, true) => Ok(Corrupted::Known(Label::Plus)),
        (true, true) => unreachable!("early exit"),
        (false, false) => unreachable!("the center realizes its own pattern"),
    }
}

/// Propagate a fixed first-layer sign pattern through the deeper layers in
/// exact rational arithmetic. The result does not depend on the input point.
fn propagate_pattern_exact(net: &SignNetwork<f64>, pattern: &[Label]) -> Result<Label> {
    let mut values: Vec<Rat> = pattern
        .iter()
        .map(|l| Rat::from_integer(i64::from(l.as_i8()).into()))
        .collect();
    for layer in &net.layers()[1..] {
        let mut next = Vec::with_capacity(layer.size());
        for i in 0..layer.size() {
            let mut acc = rat_from_f64(layer.biases()[i])?;
            for (w, v) in layer.weights()[i].iter().zip(&values) {
                acc += rat_from_f64(*w)? * v;
            }
            next.push(if rat_sign(&acc) > 0 {
                Rat::from_integer(1.into())
            } else {
                Rat::from_integer((-1).into())
            });
        }
        values = next;
    }
    debug_assert_eq!(values.len(), 1);
    Ok(if rat_sign(&values[0]) > 0 {
        Label::Plus
    } else {
        Label::Minus
    })
}

/// Ternary value of one neuron during interval propagation.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Ternary {
    Known(Label),
    Unknown,
}

/// Sound interval corruption: a concrete answer is always correct, but some
/// pins the exact oracle finds come back as `Bot` because jointly infeasible
/// sign patterns are not ruled out.
pub fn corrupt_network_interval(
    net: &SignNetwork<f64>,
    x: &[f64],
    nbhd: &NeighborhoodRelation<f64>,
) -> Result<CorruptedLabel> {
    if net.output_dim() != 1 {
        return Err(Error::Unsupported(format!(
            "corruption needs a single output neuron, network has {}",
            net.output_dim()
        )));
    }
    match nbhd {
        NeighborhoodRelation::FiniteMap(map) => {
            return finite_consensus(map.neighbors(x)?, x, |pt| net.eval_binary(pt));
        }
        NeighborhoodRelation::LpBall { epsilon, .. } if *epsilon == 0.0 => {
            return Ok(Corrupted::Known(net.eval_binary(x)?));
        }
        _ => {}
    }
    let mut values: Vec<Ternary> = Vec::with_capacity(net.layers()[0].size());
    for i in 0..net.layers()[0].size() {
        let neuron = net.layers()[0].neuron(i);
        let (lo, hi) = margin_interval(&neuron, x, nbhd)?;
        values.push(if lo > BOUNDARY_BAND {
            Ternary::Known(Label::Plus)
        } else if hi <= -BOUNDARY_BAND {
            Ternary::Known(Label::Minus)
        } else {
            Ternary::Unknown
        });
    }
    for layer in &net.layers()[1..] {
        let mut next = Vec::with_capacity(layer.size());
        for i in 0..layer.size() {
            let b = layer.biases()[i];
            let (mut lo, mut hi) = (b, b);
            for (w, v) in layer.weights()[i].iter().zip(&values) {
                match v {
                    Ternary::Known(l) => {
                        let contrib = w * f64::from(l.as_i8());
                        lo += contrib;
                        hi += contrib;
                    }
                    Ternary::Unknown => {
                        lo -= w.abs();
                        hi += w.abs();
                    }
                }
            }
            next.push(if lo > BOUNDARY_BAND {
                Ternary::Known(Label::Plus)
            } else if hi <= -BOUNDARY_BAND {
                Ternary::Known(Label::Minus)
            } else {
                Ternary::Unknown
            });
        }
        values = next;
    }
    Ok(match values[0] {
        Ternary::Known(l) => Corrupted::Known(l),
        Ternary::Unknown => Corrupted::Bot,
    })
}

/// Corrupted output of an arbitrary finite-alphabet classifier.
///
/// Ball neighborhoods need an explicitly enumerated domain; the neighborhood
/// of `x` is then the in-ball subset of `domain` together with `x` itself.
pub fn corrupt_multiclass<Y, F>(
    f: F,
    domain: Option<&[Vec<f64>]>,
    x: &[f64],
    nbhd: &NeighborhoodRelation<f64>,
) -> Result<Corrupted<Y>>
where
    Y: Clone + PartialEq,
    F: Fn(&[f64]) -> Result<Y>,
{
    let anchor = f(x)?;
    let check = |pts: &mut dyn Iterator<Item = &Vec<f64>>| -> Result<Corrupted<Y>> {
        for pt in pts {
            if f(pt)? != anchor {
                return Ok(Corrupted::Bot);
            }
        }
        Ok(Corrupted::Known(anchor.clone()))
    };
    match nbhd {
        NeighborhoodRelation::FiniteMap(map) => {
            let neighbors = map.neighbors(x)?;
            check(&mut neighbors.iter())
        }
        NeighborhoodRelation::LpBall { p, epsilon } => {
            let Some(domain) = domain else {
                return Err(Error::Unsupported(
                    "ball neighborhoods need an enumerated domain for multiclass corruption"
                        .to_string(),
                ));
            };
            let mut in_ball = Vec::new();
            for pt in domain {
                if crate::geometry::ball_contains(x, *p, *epsilon, pt)? {
                    in_ball.push(pt);
                }
            }
            check(&mut in_ball.into_iter())
        }
    }
}

/// Corruption of a real-valued affine score `x -> w . x + b` under tolerance
/// `delta`: the value at `x` when no neighbor moves the score by more than
/// `delta`, else `Bot`. Over an `l_p` ball the worst move is exactly
/// `eps * ||w||_q`.
pub fn corrupt_continuous_affine(
    h: &Halfspace<f64>,
    x: &[f64],
    nbhd: &NeighborhoodRelation<f64>,
    delta: f64,
) -> Result<Corrupted<f64>> {
    if delta < 0.0 || delta.is_nan() {
        return Err(Error::invalid(format!("delta must be >= 0, got {delta}")));
    }
    let value = h.activation(x)?;
    match nbhd {
        NeighborhoodRelation::LpBall { p, epsilon } => {
            let worst = epsilon * dual_norm(h.weights(), *p);
            Ok(if worst <= delta {
                Corrupted::Known(value)
            } else {
                Corrupted::Bot
            })
        }
        NeighborhoodRelation::FiniteMap(map) => {
            for pt in map.neighbors(x)? {
                if (h.activation(pt)? - value).abs() > delta {
                    return Ok(Corrupted::Bot);
                }
            }
            Ok(Corrupted::Known(value))
        }
    }
}

/// Finite-neighborhood corruption of an arbitrary real-valued function under
/// a caller-supplied metric on outputs.
pub fn corrupt_continuous_finite<F, M>(
    f: F,
    x: &[f64],
    map: &crate::geometry::FiniteNeighborMap<f64>,
    delta: f64,
    metric: M,
) -> Result<Corrupted<f64>>
where
    F: Fn(&[f64]) -> Result<f64>,
    M: Fn(f64, f64) -> f64,
{
    if delta < 0.0 || delta.is_nan() {
        return Err(Error::invalid(format!("delta must be >= 0, got {delta}")));
    }
    let value = f(x)?;
    for pt in map.neighbors(x)? {
        if metric(value, f(pt)?) > delta {
            return Ok(Corrupted::Bot);
        }
    }
    Ok(Corrupted::Known(value))
}

/// Hypothesis tabulated on an explicit finite point set; lookup is by exact
/// coordinates. Ball corruption enumerates the tabulated points as the
/// domain.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedHypothesis {
    points: Vec<Vec<f64>>,
    outputs: Vec<Label>,
}

impl TabulatedHypothesis {
    pub fn new(points: Vec<Vec<f64>>, outputs: Vec<Label>) -> Result<Self> {
        if points.len() != outputs.len() {
            return Err(Error::invalid(format!(
                "{} points but {} outputs",
                points.len(),
                outputs.len()
            )));
        }
        if points.is_empty() {
            return Err(Error::invalid("tabulated hypothesis needs at least one point"));
        }
        Ok(TabulatedHypothesis { points, outputs })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    fn lookup(&self, x: &[f64]) -> Result<Label> {
        self.points
            .iter()
            .position(|p| p.as_slice() == x)
            .map(|i| self.outputs[i])
            .ok_or_else(|| Error::invalid(format!("point {x:?} is not tabulated")))
    }
}

impl Corruptible for TabulatedHypothesis {
    fn plain(&self, x: &[f64]) -> Result<Label> {
        self.lookup(x)
    }

    fn corrupt(&self, x: &[f64], nbhd: &NeighborhoodRelation<f64>) -> Result<CorruptedLabel> {
        corrupt_multiclass(|pt| self.lookup(pt), Some(&self.points), x, nbhd)
    }
}

/// Consensus of exact evaluations over an explicit neighbor list. The list is
/// reflexive by construction, so the anchor value is the value at `x`.
fn finite_consensus<F>(neighbors: &[Vec<f64>], x: &[f64], eval: F) -> Result<CorruptedLabel>
where
    F: Fn(&[f64]) -> Result<Label>,
{
    let anchor = eval(x)?;
    for pt in neighbors {
        if eval(pt)? != anchor {
            return Ok(Corrupted::Bot);
        }
    }
    Ok(Corrupted::Known(anchor))
}

fn rat_activation(h: &Halfspace<f64>, x: &[f64]) -> Result<Rat> {
    if x.len() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            got: x.len(),
        });
    }
    let mut acc = rat_from_f64(h.bias())?;
    for (w, xi) in h.weights().iter().zip(x) {
        acc += rat_from_f64(*w)? * rat_from_f64(*xi)?;
    }
    Ok(acc)
}

fn rat_dual_norm(w: &[f64], p: NormP) -> Result<Rat> {
    let vals: Vec<Rat> = w.iter().map(|&v| rat_from_f64(v)).collect::<Result<_>>()?;
    Ok(match p {
        // Dual of l_inf is l_1 and vice versa.
        NormP::Inf => vals.iter().fold(Rat::zero(), |acc, v| {
            acc + if rat_sign(v) < 0 { -v.clone() } else { v.clone() }
        }),
        NormP::One => vals
            .iter()
            .map(|v| if rat_sign(v) < 0 { -v.clone() } else { v.clone() })
            .max()
            .unwrap_or_else(Rat::zero),
        NormP::Two => unreachable!("euclidean dual norm stays on the float path"),
    })
}
