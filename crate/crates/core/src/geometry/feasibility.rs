//! Feasibility of small linear systems intersected with an `l_p` ball.
//!
//! A system is a conjunction of rows `a . x < b` (strict) or `a . x <= b`
//! together with one ball constraint. Strictness matters: corruption asks
//! whether a sign pattern such as `w . x + c > 0` is attainable inside the
//! ball, and the answer can differ from the closed relaxation exactly on the
//! boundary.
//!
//! For `p in {1, inf}` the ball is itself a polytope (`2d` box rows, `2^d`
//! orthant rows), so the whole question is polyhedral and is decided exactly
//! by Fourier-Motzkin elimination over arbitrary-precision rationals:
//!
//! * eliminating variable `j` combines every lower bound on `x_j` with every
//!   upper bound, using positive multipliers so the inequality directions are
//!   preserved;
//! * a combination is strict when either parent is strict (a sum of `<` and
//!   `<=` is `<`);
//! * once every variable is eliminated, only constant rows `0 REL b` remain,
//!   each decidable exactly.
//!
//! Projection of the solution set is preserved at every step, strictness
//! included, so the final verdict is exact: no epsilons, no conditioning
//! assumptions. Finite `f64` inputs convert to rationals losslessly.
//!
//! The Euclidean ball is not polyhedral, so `p = 2` takes a float path: the
//! distance from the ball center to the polyhedron of rows is computed by
//! projecting onto every affine subspace spanned by an active subset of rows
//! (the nearest point of a nonempty closed polyhedron lies on some face, and
//! every face is cut out by a linearly independent active subset of at most
//! `dim` rows). Strict rows are tightened by `TAU_FEAS * ||a||` first, and
//! feasibility compares the distance against `epsilon`. Answers within the
//! `TAU_FEAS` band of the boundary are therefore approximate; callers that
//! need certainty keep their data away from that band.

use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

use super::NormP;
use crate::error::{Error, Result};
use crate::scalar::{rat_from_f64, Rat};

/// Tolerance of the `p = 2` float path: strict rows are tightened by this
/// (scaled by the row norm) and distance comparisons carry the same slack.
pub const TAU_FEAS: f64 = 1e-9;

/// Row cap for Fourier-Motzkin; elimination at desk scale stays far below it.
const MAX_FM_ROWS: usize = 200_000;

/// Dimension cap for the orthant expansion of an `l_1` ball (`2^d` rows).
const MAX_L1_DIM: usize = 12;

/// Row cap for the `p = 2` active-subset enumeration.
const MAX_L2_ROWS: usize = 24;

/// One linear row: `coeffs . x < bound` when `strict`, else `<= bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinCon {
    pub coeffs: Vec<f64>,
    pub bound: f64,
    pub strict: bool,
}

impl LinCon {
    pub fn le(coeffs: Vec<f64>, bound: f64) -> Self {
        LinCon {
            coeffs,
            bound,
            strict: false,
        }
    }

    pub fn lt(coeffs: Vec<f64>, bound: f64) -> Self {
        LinCon {
            coeffs,
            bound,
            strict: true,
        }
    }

    /// `coeffs . x > bound` rewritten into `<` form.
    pub fn gt(coeffs: Vec<f64>, bound: f64) -> Self {
        LinCon {
            coeffs: coeffs.into_iter().map(|c| -c).collect(),
            bound: -bound,
            strict: true,
        }
    }
}

/// Ball constraint `||x - center||_p <= epsilon`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallSpec {
    pub center: Vec<f64>,
    pub p: NormP,
    pub epsilon: f64,
}

/// Conjunction of linear rows with one ball constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    pub dim: usize,
    pub constraints: Vec<LinCon>,
    pub ball: BallSpec,
}

impl LinearSystem {
    pub fn new(dim: usize, constraints: Vec<LinCon>, ball: BallSpec) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("system dimension must be at least 1"));
        }
        if ball.center.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: ball.center.len(),
            });
        }
        if !ball.epsilon.is_finite() || ball.epsilon < 0.0 {
            return Err(Error::invalid("ball radius must be finite and >= 0"));
        }
        if ball.center.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("ball center must be finite"));
        }
        for c in &constraints {
            if c.coeffs.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: c.coeffs.len(),
                });
            }
            if c.coeffs.iter().any(|v| !v.is_finite()) || !c.bound.is_finite() {
                return Err(Error::invalid("constraint values must be finite"));
            }
        }
        Ok(LinearSystem {
            dim,
            constraints,
            ball,
        })
    }
}

impl std::fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "system in R^{}:", self.dim)?;
        for c in &self.constraints {
            let mut first = true;
            for (j, &a) in c.coeffs.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                if first {
                    write!(f, "  {a}*x{j}")?;
                    first = false;
                } else if a < 0.0 {
                    write!(f, " - {}*x{j}", -a)?;
                } else {
                    write!(f, " + {a}*x{j}")?;
                }
            }
            if first {
                write!(f, "  0")?;
            }
            writeln!(f, " {} {}", if c.strict { "<" } else { "<=" }, c.bound)?;
        }
        writeln!(
            f,
            "  ||x - {:?}||_{} <= {}",
            self.ball.center, self.ball.p, self.ball.epsilon
        )
    }
}

/// Decide whether the system has a solution.
///
/// Exact for `p in {1, inf}`; for `p = 2` correct outside the [`TAU_FEAS`]
/// boundary band.
pub fn lp_feasible(sys: &LinearSystem) -> Result<bool> {
    // Re-validate so hand-built structs get the same checks as `new`.
    let sys_checked = LinearSystem::new(sys.dim, sys.constraints.clone(), sys.ball.clone())?;
    match sys_checked.ball.p {
        NormP::Two => Ok(l2_feasible(
            &sys_checked.constraints,
            &sys_checked.ball.center,
            sys_checked.ball.epsilon,
        )),
        p => {
            let mut rows: Vec<RatCon> = sys_checked
                .constraints
                .iter()
                .map(rat_row)
                .collect::<Result<_>>()?;
            rows.extend(ball_rows_rat(
                &sys_checked.ball.center,
                p,
                sys_checked.ball.epsilon,
            )?);
            fm_feasible(rows, sys_checked.dim)
        }
    }
}

struct RatCon {
    coeffs: Vec<Rat>,
    bound: Rat,
    strict: bool,
}

fn rat_row(c: &LinCon) -> Result<RatCon> {
    Ok(RatCon {
        coeffs: c.coeffs.iter().map(|&v| rat_from_f64(v)).collect::<Result<_>>()?,
        bound: rat_from_f64(c.bound)?,
        strict: c.strict,
    })
}

/// Polyhedral description of an `l_1` or `l_inf` ball.
fn ball_rows_rat(center: &[f64], p: NormP, eps: f64) -> Result<Vec<RatCon>> {
    let d = center.len();
    let c: Vec<Rat> = center.iter().map(|&v| rat_from_f64(v)).collect::<Result<_>>()?;
    let e = rat_from_f64(eps)?;
    let mut rows = Vec::new();
    match p {
        NormP::Inf => {
            for j in 0..d {
                let mut pos = vec![Rat::zero(); d];
                pos[j] = Rat::from_integer(1.into());
                rows.push(RatCon {
                    coeffs: pos,
                    bound: &c[j] + &e,
                    strict: false,
                });
                let mut neg = vec![Rat::zero(); d];
                neg[j] = Rat::from_integer((-1).into());
                rows.push(RatCon {
                    coeffs: neg,
                    bound: &e - &c[j],
                    strict: false,
                });
            }
        }
        NormP::One => {
            if d > MAX_L1_DIM {
                return Err(Error::GuardExceeded {
                    what: "l1 ball orthant rows (2^d)",
                    limit: MAX_L1_DIM,
                    requested: d,
                });
            }
            for mask in 0..(1u32 << d) {
                let mut coeffs = Vec::with_capacity(d);
                let mut bound = e.clone();
                for (j, cj) in c.iter().enumerate() {
                    let s = if mask >> j & 1 == 1 {
                        Rat::from_integer(1.into())
                    } else {
                        Rat::from_integer((-1).into())
                    };
                    bound += &s * cj;
                    coeffs.push(s);
                }
                rows.push(RatCon {
                    coeffs,
                    bound,
                    strict: false,
                });
            }
        }
        NormP::Two => unreachable!("euclidean ball handled by the float path"),
    }
    Ok(rows)
}

/// Exact Fourier-Motzkin feasibility over the rationals.
fn fm_feasible(rows: Vec<RatCon>, dim: usize) -> Result<bool> {
    let mut rows = rows;
    loop {
        // Constant rows decide immediately; variable-free feasibility is just
        // a sign check on the bound.
        let mut kept = Vec::with_capacity(rows.len());
        for r in rows {
            if r.coeffs.iter().all(Rat::is_zero) {
                let ok = if r.strict {
                    r.bound.is_positive()
                } else {
                    !r.bound.is_negative()
                };
                if !ok {
                    return Ok(false);
                }
            } else {
                kept.push(r);
            }
        }
        rows = dominance_prune(kept);
        // Pick the variable whose elimination creates the fewest pairings.
        let mut best: Option<(usize, usize)> = None;
        for j in 0..dim {
            let pos = rows.iter().filter(|r| r.coeffs[j].is_positive()).count();
            let neg = rows.iter().filter(|r| r.coeffs[j].is_negative()).count();
            if pos + neg == 0 {
                continue;
            }
            let cost = pos * neg;
            if best.is_none_or(|(_, c)| cost < c) {
                best = Some((j, cost));
            }
        }
        let Some((j, _)) = best else {
            return Ok(true);
        };
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.coeffs[j].is_positive() {
                pos.push(r);
            } else if r.coeffs[j].is_negative() {
                neg.push(r);
            } else {
                zero.push(r);
            }
        }
        let mut next = zero;
        // A variable with only upper or only lower bounds is free to satisfy
        // them; its rows simply drop.
        if !pos.is_empty() && !neg.is_empty() {
            if next.len() + pos.len() * neg.len() > MAX_FM_ROWS {
                return Err(Error::GuardExceeded {
                    what: "fourier-motzkin rows",
                    limit: MAX_FM_ROWS,
                    requested: next.len() + pos.len() * neg.len(),
                });
            }
            for p in &pos {
                for n in &neg {
                    // Positive multipliers -a_nj and a_pj cancel x_j.
                    let mp = -n.coeffs[j].clone();
                    let mn = p.coeffs[j].clone();
                    let coeffs: Vec<Rat> = p
                        .coeffs
                        .iter()
                        .zip(&n.coeffs)
                        .map(|(a, b)| a * &mp + b * &mn)
                        .collect();
                    let bound = &p.bound * &mp + &n.bound * &mn;
                    next.push(RatCon {
                        coeffs,
                        bound,
                        strict: p.strict || n.strict,
                    });
                }
            }
        }
        rows = next;
    }
}

/// Scale rows canonically and keep only the tightest row per coefficient
/// vector: smaller bound wins, strict wins ties.
fn dominance_prune(rows: Vec<RatCon>) -> Vec<RatCon> {
    let mut best: BTreeMap<Vec<Rat>, (Rat, bool)> = BTreeMap::new();
    for r in rows {
        let scale = r
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .expect("constant rows were filtered")
            .abs();
        let coeffs: Vec<Rat> = r.coeffs.iter().map(|c| c / &scale).collect();
        let bound = &r.bound / &scale;
        match best.get_mut(&coeffs) {
            None => {
                best.insert(coeffs, (bound, r.strict));
            }
            Some((b, s)) => {
                if bound < *b || (bound == *b && r.strict && !*s) {
                    *b = bound;
                    *s = r.strict;
                }
            }
        }
    }
    best.into_iter()
        .map(|(coeffs, (bound, strict))| RatCon {
            coeffs,
            bound,
            strict,
        })
        .collect()
}

/// Float-path feasibility for the Euclidean ball: distance from the center to
/// the tightened row polyhedron, by projection onto active subsets.
fn l2_feasible(cons: &[LinCon], center: &[f64], eps: f64) -> bool {
    let dim = center.len();
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
    for c in cons {
        let norm2 = c.coeffs.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm2 == 0.0 {
            let ok = if c.strict { 0.0 < c.bound } else { 0.0 <= c.bound };
            if !ok {
                return false;
            }
            continue;
        }
        let bound = if c.strict {
            c.bound - TAU_FEAS * norm2
        } else {
            c.bound
        };
        rows.push((c.coeffs.clone(), bound));
    }
    if rows.is_empty() {
        return true;
    }
    let violated = |x: &[f64]| {
        rows.iter().any(|(a, b)| {
            let norm2 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
            dot(a, x) > b + 1e-12 * norm2.max(1.0)
        })
    };
    if !violated(center) {
        return true;
    }
    if rows.len() > MAX_L2_ROWS {
        // Conservative refusal is not an option here; fall back to claiming
        // infeasibility would be unsound. Desk-scale systems stay small, so
        // treat an oversized system as a programming error.
        panic!("l2 feasibility: {} rows exceeds the supported {}", rows.len(), MAX_L2_ROWS);
    }
    let mut best: Option<f64> = None;
    let k_max = dim.min(rows.len());
    let idx: Vec<usize> = (0..rows.len()).collect();
    for k in 1..=k_max {
        for subset in combinations(&idx, k) {
            if let Some(x) = project_onto_equalities(&rows, &subset, center) {
                if !violated(&x) {
                    let d = x
                        .iter()
                        .zip(center)
                        .map(|(a, c)| (a - c) * (a - c))
                        .sum::<f64>()
                        .sqrt();
                    best = Some(best.map_or(d, |b: f64| b.min(d)));
                }
            }
        }
    }
    match best {
        Some(d) => d <= eps * (1.0 + 1e-12) + 1e-15,
        None => false,
    }
}

/// Least-norm correction of `center` onto `{x : a_i . x = b_i, i in subset}`:
/// `x = c - A^T (A A^T)^{-1} (A c - b)`. Returns `None` on a (near-)singular
/// Gram matrix; an independent subset of the same face covers that case.
fn project_onto_equalities(
    rows: &[(Vec<f64>, f64)],
    subset: &[usize],
    center: &[f64],
) -> Option<Vec<f64>> {
    let k = subset.len();
    let mut gram = vec![vec![0.0; k + 1]; k];
    for (r, &i) in subset.iter().enumerate() {
        for (c, &j) in subset.iter().enumerate() {
            gram[r][c] = dot(&rows[i].0, &rows[j].0);
        }
        gram[r][k] = dot(&rows[i].0, center) - rows[i].1;
    }
    let lambda = solve_dense(&mut gram)?;
    let mut x = center.to_vec();
    for (r, &i) in subset.iter().enumerate() {
        for (xj, aj) in x.iter_mut().zip(&rows[i].0) {
            *xj -= lambda[r] * aj;
        }
    }
    Some(x)
}

/// Gaussian elimination with partial pivoting on an augmented `k x (k+1)`
/// matrix. `None` when a pivot collapses.
fn solve_dense(m: &mut [Vec<f64>]) -> Option<Vec<f64>> {
    let k = m.len();
    let scale = m
        .iter()
        .flat_map(|r| r[..k].iter())
        .fold(0.0f64, |a, &v| a.max(v.abs()))
        .max(1.0);
    for col in 0..k {
        let (piv, piv_abs) = (col..k)
            .map(|r| (r, m[r][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        if piv_abs < 1e-12 * scale {
            return None;
        }
        m.swap(col, piv);
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col {
                continue;
            }
            let f = row[col] / pivot[col];
            if f == 0.0 {
                continue;
            }
            for (x, p) in row[col..=k].iter_mut().zip(&pivot[col..=k]) {
                *x -= f * p;
            }
        }
    }
    Some((0..k).map(|r| m[r][k] / m[r][r]).collect())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lexicographic k-subsets of `items`.
fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}
