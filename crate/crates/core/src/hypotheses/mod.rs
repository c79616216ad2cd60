//! Hypothesis representations: halfspaces, sign-activation networks, and
//! explicitly tabulated finite classes.

mod textdoc;

pub use textdoc::{
    parse_hypothesis, write_halfspace, write_network, HypothesisDoc,
};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Binary label. The sign convention maps activation `a > 0` to `Plus` and
/// `a <= 0` (ties included) to `Minus`, at every layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Minus,
    Plus,
}

impl Label {
    pub fn as_i8(self) -> i8 {
        match self {
            Label::Minus => -1,
            Label::Plus => 1,
        }
    }

    pub fn from_i8(v: i8) -> Result<Self> {
        match v {
            -1 => Ok(Label::Minus),
            1 => Ok(Label::Plus),
            _ => Err(Error::invalid(format!("label must be -1 or +1, got {v}"))),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Label::Minus => Label::Plus,
            Label::Plus => Label::Minus,
        }
    }

    /// All labels in enumeration order (`Minus` first).
    pub const ALL: [Label; 2] = [Label::Minus, Label::Plus];
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Label::Minus => "-1",
            Label::Plus => "+1",
        })
    }
}

impl std::str::FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-1" => Ok(Label::Minus),
            "+1" | "1" => Ok(Label::Plus),
            other => Err(Error::invalid(format!("label must be -1 or +1, got {other:?}"))),
        }
    }
}

/// Sign of an activation under the tie rule `a <= 0 -> Minus`.
pub fn sign_label<S: Real>(a: S) -> Label {
    if a > S::zero() {
        Label::Plus
    } else {
        Label::Minus
    }
}

/// Halfspace classifier `x -> sign(w . x + b)`.
///
/// Weights are finite and the dimension is at least 1; both are checked at
/// construction so downstream arithmetic never sees NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace<S: Real> {
    weights: Vec<S>,
    bias: S,
}

impl<S: Real> Halfspace<S> {
    pub fn new(weights: Vec<S>, bias: S) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("halfspace needs at least one weight"));
        }
        if weights.iter().any(|w| !w.is_finite()) || !bias.is_finite() {
            return Err(Error::invalid("halfspace parameters must be finite"));
        }
        Ok(Halfspace { weights, bias })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn bias(&self) -> S {
        self.bias
    }

    /// Pre-activation `w . x + b`.
    pub fn activation(&self, x: &[S]) -> Result<S> {
        if x.len() != self.weights.len() {
            return Err(Error::DimensionMismatch {
                expected: self.weights.len(),
                got: x.len(),
            });
        }
        let mut acc = self.bias;
        for (w, xi) in self.weights.iter().zip(x) {
            acc = acc + *w * *xi;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &[S]) -> Result<Label> {
        Ok(sign_label(self.activation(x)?))
    }
}

/// One fully-connected layer: row-major weights (one row per neuron) plus a
/// bias per neuron.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer<S: Real> {
    weights: Vec<Vec<S>>,
    biases: Vec<S>,
}

impl<S: Real> Layer<S> {
    pub fn new(weights: Vec<Vec<S>>, biases: Vec<S>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("layer needs at least one neuron"));
        }
        if weights.len() != biases.len() {
            return Err(Error::invalid(format!(
                "layer has {} weight rows but {} biases",
                weights.len(),
                biases.len()
            )));
        }
        let fan_in = weights[0].len();
        if fan_in == 0 {
            return Err(Error::invalid("layer fan-in must be at least 1"));
        }
        for row in &weights {
            if row.len() != fan_in {
                return Err(Error::invalid("ragged weight matrix"));
            }
            if row.iter().any(|w| !w.is_finite()) {
                return Err(Error::invalid("layer weights must be finite"));
            }
        }
        if biases.iter().any(|b| !b.is_finite()) {
            return Err(Error::invalid("layer biases must be finite"));
        }
        Ok(Layer { weights, biases })
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn fan_in(&self) -> usize {
        self.weights[0].len()
    }

    pub fn weights(&self) -> &[Vec<S>] {
        &self.weights
    }

    pub fn biases(&self) -> &[S] {
        &self.biases
    }

    /// The neuron as a halfspace over the previous layer's outputs.
    pub fn neuron(&self, i: usize) -> Halfspace<S> {
        Halfspace {
            weights: self.weights[i].clone(),
            bias: self.biases[i],
        }
    }
}

/// Fully-connected layered network with sign activations at every layer,
/// hidden values in `{-1, +1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignNetwork<S: Real> {
    input_dim: usize,
    layers: Vec<Layer<S>>,
}

impl<S: Real> SignNetwork<S> {
    pub fn new(input_dim: usize, layers: Vec<Layer<S>>) -> Result<Self> {
        if input_dim == 0 {
            return Err(Error::invalid("input dimension must be at least 1"));
        }
        if layers.is_empty() {
            return Err(Error::invalid("network needs at least one layer"));
        }
        let mut prev = input_dim;
        for (t, layer) in layers.iter().enumerate() {
            if layer.fan_in() != prev {
                return Err(Error::invalid(format!(
                    "layer {} expects fan-in {}, previous size is {}",
                    t + 1,
                    layer.fan_in(),
                    prev
                )));
            }
            prev = layer.size();
        }
        Ok(SignNetwork { input_dim, layers })
    }

    /// Depth-1 network computing exactly the given halfspace.
    pub fn single(h: &Halfspace<S>) -> Self {
        SignNetwork {
            input_dim: h.dim(),
            layers: vec![Layer {
                weights: vec![h.weights().to_vec()],
                biases: vec![h.bias()],
            }],
        }
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn layers(&self) -> &[Layer<S>] {
        &self.layers
    }

    /// Sizes `[input, |V_1|, ..., |V_T|]`.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::with_capacity(self.layers.len() + 1);
        sizes.push(self.input_dim);
        sizes.extend(self.layers.iter().map(Layer::size));
        sizes
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().unwrap().size()
    }

    /// Edge count including one bias edge per neuron:
    /// `sum_t |V_t| * (|V_{t-1}| + 1)`.
    pub fn edge_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.size() * (l.fan_in() + 1))
            .sum()
    }

    /// Fan-in plus bias, `d_{t,i} = |V_{t-1}| + 1`, for each neuron in layer
    /// order.
    pub fn per_neuron_fanins(&self) -> Vec<usize> {
        self.layers
            .iter()
            .flat_map(|l| std::iter::repeat_n(l.fan_in() + 1, l.size()))
            .collect()
    }

    /// Output labels of the last layer.
    pub fn eval(&self, x: &[S]) -> Result<Vec<Label>> {
        if x.len() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                got: x.len(),
            });
        }
        let mut values: Vec<S> = x.to_vec();
        for layer in &self.layers {
            let mut next = Vec::with_capacity(layer.size());
            for i in 0..layer.size() {
                let mut acc = layer.biases[i];
                for (w, v) in layer.weights[i].iter().zip(&values) {
                    acc = acc + *w * *v;
                }
                next.push(if acc > S::zero() { S::one() } else { -S::one() });
            }
            values = next;
        }
        Ok(values.into_iter().map(sign_label).collect())
    }

    /// Label of a single-output network.
    pub fn eval_binary(&self, x: &[S]) -> Result<Label> {
        if self.output_dim() != 1 {
            return Err(Error::Unsupported(format!(
                "binary evaluation needs a single output neuron, network has {}",
                self.output_dim()
            )));
        }
        Ok(self.eval(x)?[0])
    }
}

/// Explicitly tabulated finite hypothesis class on a finite domain.
///
/// Each hypothesis is its output tuple over `domain`. Duplicate tuples are
/// collapsed at construction and rows are kept sorted, so iteration order is
/// deterministic and `size` counts distinct behaviors.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteClass<X, Y> {
    domain: Vec<X>,
    rows: Vec<Vec<Y>>,
}

impl<X: Clone, Y: Clone + Ord> FiniteClass<X, Y> {
    pub fn new(domain: Vec<X>, rows: Vec<Vec<Y>>) -> Result<Self> {
        if domain.is_empty() {
            return Err(Error::invalid("finite class needs a nonempty domain"));
        }
        let mut rows = rows;
        for row in &rows {
            if row.len() != domain.len() {
                return Err(Error::invalid(format!(
                    "output tuple length {} does not match domain size {}",
                    row.len(),
                    domain.len()
                )));
            }
        }
        rows.sort();
        rows.dedup();
        Ok(FiniteClass { domain, rows })
    }

    pub fn domain(&self) -> &[X] {
        &self.domain
    }

    pub fn domain_len(&self) -> usize {
        self.domain.len()
    }

    /// Number of distinct behaviors.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Y>] {
        &self.rows
    }

    /// Distinct restrictions to the points selected by `indices`.
    pub fn restricted(&self, indices: &[usize]) -> Result<std::collections::BTreeSet<Vec<Y>>> {
        for &i in indices {
            if i >= self.domain.len() {
                return Err(Error::invalid(format!(
                    "restriction index {i} out of range for domain of size {}",
                    self.domain.len()
                )));
            }
        }
        let mut set = std::collections::BTreeSet::new();
        for row in &self.rows {
            set.insert(indices.iter().map(|&i| row[i].clone()).collect());
        }
        Ok(set)
    }

    /// All output values that occur anywhere in the class.
    pub fn output_alphabet(&self) -> Vec<Y> {
        let mut set = std::collections::BTreeSet::new();
        for row in &self.rows {
            for y in row {
                set.insert(y.clone());
            }
        }
        set.into_iter().collect()
    }
}

/// Composition class `{ g . f : f in inner, g in outer }` on `inner`'s domain.
///
/// Every output value of `inner` must occur in `outer`'s domain.
pub fn compose_classes<X, Y, Z>(
    inner: &FiniteClass<X, Y>,
    outer: &FiniteClass<Y, Z>,
) -> Result<FiniteClass<X, Z>>
where
    X: Clone,
    Y: Clone + Ord + std::fmt::Debug,
    Z: Clone + Ord,
{
    let mut rows = Vec::new();
    for f in inner.rows() {
        // Map each intermediate value to its index in outer's domain once per f.
        let positions: Result<Vec<usize>> = f
            .iter()
            .map(|y| {
                outer
                    .domain()
                    .iter()
                    .position(|d| d == y)
                    .ok_or_else(|| {
                        Error::invalid(format!(
                            "inner output {y:?} is not in the outer class domain"
                        ))
                    })
            })
            .collect();
        let positions = positions?;
        for g in outer.rows() {
            rows.push(positions.iter().map(|&j| g[j].clone()).collect());
        }
    }
    FiniteClass::new(inner.domain().to_vec(), rows)
}

/// Product class `{ x -> (f1(x), f2(x)) }` over a common domain.
pub fn product_classes<X, Y1, Y2>(
    f1: &FiniteClass<X, Y1>,
    f2: &FiniteClass<X, Y2>,
) -> Result<FiniteClass<X, (Y1, Y2)>>
where
    X: Clone + PartialEq,
    Y1: Clone + Ord,
    Y2: Clone + Ord,
{
    if f1.domain_len() != f2.domain_len() {
        return Err(Error::invalid(format!(
            "product classes need a common domain: sizes {} and {}",
            f1.domain_len(),
            f2.domain_len()
        )));
    }
    let mut rows = Vec::new();
    for a in f1.rows() {
        for b in f2.rows() {
            rows.push(a.iter().cloned().zip(b.iter().cloned()).collect());
        }
    }
    FiniteClass::new(f1.domain().to_vec(), rows)
}

/// Parameter-grid budget for [`grid_halfspaces`] and friends.
pub const MAX_GRID_HYPOTHESES: usize = 2_000_000;

/// All halfspaces with every weight from `weight_values` and bias from
/// `bias_values`, the all-zero weight vector skipped. Enumeration order is the
/// odometer over weights (last coordinate fastest) with the bias innermost.
pub fn grid_halfspaces<S: Real>(
    dim: usize,
    weight_values: &[S],
    bias_values: &[S],
) -> Result<Vec<Halfspace<S>>> {
    if dim == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    if weight_values.is_empty() || bias_values.is_empty() {
        return Err(Error::invalid("weight and bias grids must be nonempty"));
    }
    let combos = weight_values
        .len()
        .checked_pow(dim as u32)
        .and_then(|n| n.checked_mul(bias_values.len()))
        .ok_or(Error::GuardExceeded {
            what: "parameter grid size",
            limit: MAX_GRID_HYPOTHESES,
            requested: usize::MAX,
        })?;
    if combos > MAX_GRID_HYPOTHESES {
        return Err(Error::GuardExceeded {
            what: "parameter grid size",
            limit: MAX_GRID_HYPOTHESES,
            requested: combos,
        });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        let weights: Vec<S> = idx.iter().map(|&i| weight_values[i]).collect();
        if weights.iter().any(|w| *w != S::zero()) {
            for &b in bias_values {
                out.push(Halfspace::new(weights.clone(), b)?);
            }
        }
        // Odometer increment, last coordinate fastest.
        let mut k = dim;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < weight_values.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Behaviors of a halfspace parameter grid restricted to `domain`, duplicates
/// collapsed. The domain is indexed positionally in the returned class.
pub fn grid_halfspace_class<S: Real>(
    dim: usize,
    weight_values: &[S],
    bias_values: &[S],
    domain: &[Vec<S>],
) -> Result<FiniteClass<usize, Label>> {
    if domain.is_empty() {
        return Err(Error::invalid("domain must be nonempty"));
    }
    let hyps = grid_halfspaces(dim, weight_values, bias_values)?;
    let mut rows = Vec::with_capacity(hyps.len());
    for h in &hyps {
        let row: Result<Vec<Label>> = domain.iter().map(|x| h.eval(x)).collect();
        rows.push(row?);
    }
    FiniteClass::new((0..domain.len()).collect(), rows)
}
