//! All translation-invariant fixed points at a given graph, order and activity.
//!
//! Three routes feed one deduplicating merge:
//!
//! * the symmetric branch `z1 = z2` (loop and rod), by bisection on a
//!   strictly increasing scalar function;
//! * for order 3 loop and rod, the asymmetric branch in cube-root variables
//!   `x = z1^(1/3)`, `y = z2^(1/3)` on the curve `xy(x + y) = 1`;
//! * damped Newton from a 32x32 log grid of seeds over an a-priori box.
//!
//! Newton stalls a few 1e-5 away from a pitchfork point because the residual
//! is cubic there. Candidates that land inside that stall radius of an
//! ill-conditioned symmetric solution are snapped onto it and the merged
//! solution carries the note `near-tangent`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bifurcation::BranchMap;
use crate::error::{Error, Result};
use crate::graphs::FertileGraph;
use crate::numeric::{bisect, Polynomial};
use crate::recursion::{
    jacobian, recursion_map, residual, residual_conditioning, residual_norm, Field, ModelParams,
};

/// Max-norm residual every reported solution satisfies.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Newton declares convergence below this residual.
pub const NEWTON_TOL: f64 = 1e-12;
/// Solutions closer than this (max-norm) are the same solution.
pub const DEDUP_TOL: f64 = 1e-6;
/// Relative tolerance on `|z1 - z2|` for the symmetric classification.
pub const SYMMETRY_TOL: f64 = 1e-8;
pub const NEAR_TANGENT: &str = "near-tangent";

const SEEDS_PER_AXIS: usize = 32;
const NEWTON_MAX_ITER: usize = 200;
const MAX_HALVINGS: usize = 40;
const POLISH_STEPS: usize = 60;
const TANGENT_RADIUS: f64 = 1e-3;
const TANGENT_CONDITIONING: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Symmetric,
    Asymmetric,
}

impl Branch {
    pub fn classify(z: &Field) -> Self {
        if (z.z1 - z.z2).abs() <= SYMMETRY_TOL * (1.0 + z.z1.abs()) {
            Branch::Symmetric
        } else {
            Branch::Asymmetric
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub z: Field,
    pub branch: Branch,
    pub residual_norm: f64,
    pub multiplicity_note: Option<String>,
}

impl Solution {
    fn new(g: FertileGraph, p: &ModelParams, z: Field) -> Result<Self> {
        Ok(Self {
            z,
            branch: Branch::classify(&z),
            residual_norm: residual_norm(g, p, &z)?,
            multiplicity_note: None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub graph: FertileGraph,
    pub params: ModelParams,
    /// Sorted by `(z1, z2)`.
    pub solutions: Vec<Solution>,
    pub count: usize,
    /// True when no proven count law covers `(graph, k, lambda)`.
    pub empirical: bool,
}

impl SolutionSet {
    pub fn contains(&self, z: &Field, tol: f64) -> bool {
        self.solutions.iter().any(|s| s.z.distance(z) <= tol)
    }

    pub fn symmetric(&self) -> Option<&Solution> {
        self.solutions
            .iter()
            .find(|s| s.branch == Branch::Symmetric)
    }

    pub fn asymmetric(&self) -> impl Iterator<Item = &Solution> {
        self.solutions
            .iter()
            .filter(|s| s.branch == Branch::Asymmetric)
    }
}

/// Whether the number of translation-invariant measures is known exactly.
pub fn has_count_law(g: FertileGraph, p: &ModelParams) -> bool {
    match g {
        FertileGraph::Key | FertileGraph::Whistle => true,
        FertileGraph::Loop => p.k == 3 || p.k == 1 || (p.k == 2 && p.lambda <= 9.0 / 4.0),
        FertileGraph::Rod => p.k == 1 || p.k == 2 || p.k == 3,
    }
}

// ---------------------------------------------------------------------------
// symmetric branch

/// Unique solution with `z1 = z2` for loop and rod.
pub fn solve_symmetric(g: FertileGraph, p: &ModelParams) -> Result<Solution> {
    let h = |z: f64| -> f64 {
        let field = Field { z1: z, z2: z };
        match recursion_map(g, p, &field) {
            Ok(f) => z - f.z1,
            Err(_) => f64::NAN,
        }
    };
    let lambda = p.lambda;
    let brackets: Vec<(f64, f64)> = match g {
        FertileGraph::Loop => vec![(1e-12, lambda + 1.0)],
        FertileGraph::Rod => {
            let (lo, hi) = rod_box(p);
            vec![
                (
                    lambda,
                    (1.0 + lambda).powi(3) / (8.0 * lambda * lambda) + 1.0,
                ),
                (lo, hi),
            ]
        }
        _ => return Err(Error::UnsupportedCase { graph: g, k: p.k }),
    };
    let mut last = brackets[0];
    let mut worst = None;
    for (lo, hi) in brackets {
        last = (lo, hi);
        // the first rod bracket collapses once lambda >= 1
        if !(lo < hi) {
            continue;
        }
        if let Some(z) = bisect(h, lo, hi, 1e-17) {
            let sol = Solution::new(g, p, Field::symmetric(z)?)?;
            if sol.residual_norm <= NEWTON_TOL * (1.0 + z) {
                return Ok(sol);
            }
            worst = Some(sol.residual_norm);
        }
    }
    if let Some(r) = worst {
        return Err(Error::ConvergenceFailure(format!(
            "symmetric root residual {r:e}"
        )));
    }
    Err(Error::BracketFailure {
        lo: last.0,
        hi: last.1,
    })
}

// ---------------------------------------------------------------------------
// asymmetric branch in cube-root variables

/// Positive root `y` of `x y (x + y) = 1`.
pub fn asymmetric_constraint_y(x: f64) -> f64 {
    // (sqrt(x^4 + 4x) - x^2) / (2x), rationalized to avoid cancellation
    // when x^3 is large.
    2.0 / ((x.powi(4) + 4.0 * x).sqrt() + x * x)
}

/// Coefficients (lowest degree first) of the degree-8 polynomial whose
/// positive roots are the `x = z1^(1/3)` of asymmetric order-3 loop
/// solutions, with `t = lambda^(1/3)`.
pub fn loop_k3_octic(lambda: f64) -> Polynomial {
    let t = lambda.cbrt();
    let t2 = t * t;
    Polynomial::new(vec![1.0, -t2, -t, 2.0, -2.0 * t2, 0.0, 2.0, -t2, t])
}

/// Positive roots of the order-3 loop branch polynomial that lie on the
/// valid branch `t = phi(x)`.
pub fn loop_k3_branch_polynomial(lambda: f64) -> Vec<f64> {
    let poly = loop_k3_octic(lambda);
    let t = lambda.cbrt();
    poly.real_roots(0.0, poly.root_bound(), 1e-15, DEDUP_TOL)
        .into_iter()
        .filter(|&x| x > 0.0)
        .filter(|&x| (crate::bifurcation::phi_loop_k3(x) - t).abs() <= 1e-9 * (1.0 + t))
        .collect()
}

fn closed_form_candidates(g: FertileGraph, p: &ModelParams) -> Result<Vec<Field>> {
    let xs = match (g, p.k) {
        (FertileGraph::Loop, 3) => loop_k3_branch_polynomial(p.lambda),
        (FertileGraph::Rod, 3) => BranchMap::new(g, 3)?.roots(p.lambda_root()),
        _ => return Err(Error::UnsupportedCase { graph: g, k: p.k }),
    };
    let mut out = Vec::with_capacity(2 * xs.len());
    for x in xs {
        let y = asymmetric_constraint_y(x);
        let z = Field::new(x.powi(3), y.powi(3))?;
        out.push(z);
        out.push(z.swapped());
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// damped Newton

fn newton_step(g: FertileGraph, p: &ModelParams, z: &Field) -> Option<[f64; 2]> {
    let r = residual(g, p, z).ok()?;
    let j = jacobian(g, p, z).ok()?;
    let m = [[1.0 - j[0][0], -j[0][1]], [-j[1][0], 1.0 - j[1][1]]];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    Some([
        (m[1][1] * r[0] - m[0][1] * r[1]) / det,
        (m[0][0] * r[1] - m[1][0] * r[0]) / det,
    ])
}

fn norm_at(g: FertileGraph, p: &ModelParams, z: &Field) -> Option<f64> {
    residual_norm(g, p, z).ok().filter(|r| r.is_finite())
}

/// Damped Newton on `z - F(z) = 0`. Step halving (up to 40 times) until
/// the residual decreases and the iterate stays positive.
pub fn damped_newton(g: FertileGraph, p: &ModelParams, seed: Field) -> Option<Field> {
    let mut z = seed;
    let mut rn = norm_at(g, p, &z)?;
    for _ in 0..NEWTON_MAX_ITER {
        if rn <= NEWTON_TOL {
            return Some(polish(g, p, z).0);
        }
        let step = newton_step(g, p, &z)?;
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let trial = Field {
                z1: z.z1 - alpha * step[0],
                z2: z.z2 - alpha * step[1],
            };
            if let Some(tn) = norm_at(g, p, &trial) {
                if tn < rn {
                    accepted = Some((trial, tn));
                    break;
                }
            }
            alpha *= 0.5;
        }
        let (next, next_norm) = accepted?;
        z = next;
        rn = next_norm;
    }
    (rn <= NEWTON_TOL).then(|| polish(g, p, z).0)
}

/// Undamped Newton steps kept only while they do not increase the residual.
fn polish(g: FertileGraph, p: &ModelParams, mut z: Field) -> (Field, f64) {
    let Some(mut rn) = norm_at(g, p, &z) else {
        return (z, f64::INFINITY);
    };
    for _ in 0..POLISH_STEPS {
        if rn == 0.0 {
            break;
        }
        let Some(step) = newton_step(g, p, &z) else {
            break;
        };
        let trial = Field {
            z1: z.z1 - step[0],
            z2: z.z2 - step[1],
        };
        match norm_at(g, p, &trial) {
            Some(tn) if tn <= rn && trial != z => {
                z = trial;
                rn = tn;
            }
            _ => break,
        }
    }
    (z, rn)
}

/// Loop box: `lambda / (1 + lambda)^k < z_i < lambda`.
fn loop_box(p: &ModelParams) -> (f64, f64) {
    (p.lambda / (1.0 + p.lambda).powi(p.k as i32), p.lambda)
}

/// Rod box valid for every order: `z_i < (1 + lambda)^k / lambda^(k-1)` and
/// `z_i > lambda * min(1, 1/upper)^k`.
fn rod_box(p: &ModelParams) -> (f64, f64) {
    let k = p.k as i32;
    let upper = p.lambda * (1.0 + 1.0 / p.lambda).powi(k);
    let lower = p.lambda * (1.0f64).min(1.0 / upper).powi(k);
    (lower, upper)
}

/// Seed box per coordinate, `[(lo1, hi1), (lo2, hi2)]`.
pub fn seed_box(g: FertileGraph, p: &ModelParams) -> [(f64, f64); 2] {
    let k = p.k as i32;
    let lambda = p.lambda;
    match g {
        FertileGraph::Loop => {
            let b = loop_box(p);
            [b, b]
        }
        FertileGraph::Rod => {
            let b = rod_box(p);
            [b, b]
        }
        // No published bounds for key and whistle: crude a-priori bounds,
        // widened by a factor 10 on each side.
        FertileGraph::Key => {
            let b = (lambda / (1.0 + 2.0 * lambda).powi(k) / 10.0, lambda * 10.0);
            [b, b]
        }
        FertileGraph::Whistle => {
            let hi1 = lambda * (1.0 + lambda).powi(k);
            let lo1 = lambda / (1.0 + hi1).powi(k);
            let lo2 = lambda * (lo1 / (1.0 + lo1)).powi(k);
            [(lo1 / 10.0, hi1 * 10.0), (lo2 / 10.0, lambda * 10.0)]
        }
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * (i as f64 + 0.5) / n as f64).exp())
        .collect()
}

fn newton_candidates(g: FertileGraph, p: &ModelParams) -> Vec<Field> {
    let [(lo1, hi1), (lo2, hi2)] = seed_box(g, p);
    let xs = log_grid(lo1, hi1, SEEDS_PER_AXIS);
    let ys = log_grid(lo2, hi2, SEEDS_PER_AXIS);
    let seeds: Vec<Field> = xs
        .iter()
        .flat_map(|&a| ys.iter().map(move |&b| Field { z1: a, z2: b }))
        .collect();
    // collect keeps seed order, so the merge below is deterministic
    seeds
        .par_iter()
        .map(|&s| damped_newton(g, p, s))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

// ---------------------------------------------------------------------------
// merge

struct Merger<'a> {
    graph: FertileGraph,
    params: &'a ModelParams,
    symmetric: Option<Field>,
    tangent: bool,
    solutions: Vec<Solution>,
}

impl<'a> Merger<'a> {
    fn new(graph: FertileGraph, params: &'a ModelParams) -> Result<Self> {
        let (symmetric, tangent) = if graph.is_swap_symmetric() {
            let s = solve_symmetric(graph, params)?.z;
            let cond = residual_conditioning(graph, params, &s)?;
            (Some(s), cond <= TANGENT_CONDITIONING)
        } else {
            (None, false)
        };
        Ok(Self {
            graph,
            params,
            symmetric,
            tangent,
            solutions: Vec::new(),
        })
    }

    /// Adds a candidate. `exact` candidates come from the symmetric or
    /// closed-form routes and must polish; Newton candidates that fail are
    /// silently dropped.
    fn push(&mut self, z: Field, exact: bool) -> Result<()> {
        let (g, p) = (self.graph, self.params);
        let (mut z, rn) = match residual_norm(g, p, &z) {
            Ok(r) if r <= NEWTON_TOL => (z, r),
            _ => polish(g, p, z),
        };
        if !(rn <= RESIDUAL_TOL) {
            if exact {
                return Err(Error::ConvergenceFailure(format!(
                    "branch root ({}, {}) polishes only to residual {rn:e}",
                    z.z1, z.z2
                )));
            }
            return Ok(());
        }
        if let Some(existing) = self
            .solutions
            .iter_mut()
            .find(|s| s.z.distance(&z) <= DEDUP_TOL)
        {
            if existing.branch != Branch::classify(&z) {
                existing.multiplicity_note = Some(NEAR_TANGENT.to_string());
            }
            return Ok(());
        }
        let mut note = None;
        if let (Some(s), false, true) = (self.symmetric, exact, self.tangent) {
            if z.distance(&s) <= TANGENT_RADIUS * (1.0 + s.max_norm())
                && Branch::classify(&z) == Branch::Asymmetric
            {
                z = s;
                note = Some(NEAR_TANGENT);
            }
        }
        let mut candidate = Solution::new(g, p, z)?;
        if let Some(existing) = self
            .solutions
            .iter_mut()
            .find(|s| s.z.distance(&candidate.z) <= DEDUP_TOL)
        {
            if note.is_some() || existing.branch != candidate.branch {
                existing.multiplicity_note = Some(NEAR_TANGENT.to_string());
            }
            return Ok(());
        }
        candidate.multiplicity_note = note.map(str::to_string);
        self.solutions.push(candidate);
        Ok(())
    }

    fn finish(mut self) -> Result<SolutionSet> {
        if self.graph.is_swap_symmetric() {
            let missing: Vec<Field> = self
                .solutions
                .iter()
                .map(|s| s.z.swapped())
                .filter(|w| !self.solutions.iter().any(|s| s.z.distance(w) <= DEDUP_TOL))
                .collect();
            for w in missing {
                self.push(w, true)?;
            }
        }
        let mut solutions = self.solutions;
        solutions.sort_by(|a, b| {
            a.z.z1
                .total_cmp(&b.z.z1)
                .then_with(|| a.z.z2.total_cmp(&b.z.z2))
        });
        Ok(SolutionSet {
            graph: self.graph,
            params: *self.params,
            count: solutions.len(),
            solutions,
            empirical: !has_count_law(self.graph, self.params),
        })
    }
}

/// Symmetric root plus the closed-form asymmetric branch. Only for order-3
/// loop and rod.
pub fn solve_closed_form(g: FertileGraph, p: &ModelParams) -> Result<SolutionSet> {
    let candidates = closed_form_candidates(g, p)?;
    let mut merger = Merger::new(g, p)?;
    if let Some(s) = merger.symmetric {
        merger.push(s, true)?;
    }
    for z in candidates {
        merger.push(z, true)?;
    }
    merger.finish()
}

/// Multistart damped Newton only.
pub fn solve_multistart(g: FertileGraph, p: &ModelParams) -> Result<SolutionSet> {
    let mut merger = Merger::new(g, p)?;
    for z in newton_candidates(g, p) {
        merger.push(z, false)?;
    }
    merger.finish()
}

/// Every translation-invariant fixed point found by all applicable routes.
pub fn solve_all(g: FertileGraph, p: &ModelParams) -> Result<SolutionSet> {
    let mut merger = Merger::new(g, p)?;
    if let Some(s) = merger.symmetric {
        merger.push(s, true)?;
    }
    if g.is_swap_symmetric() && p.k == 3 {
        for z in closed_form_candidates(g, p)? {
            merger.push(z, true)?;
        }
    }
    for z in newton_candidates(g, p) {
        merger.push(z, false)?;
    }
    merger.finish()
}

// ---------------------------------------------------------------------------
// a-priori bounds

const UNIT_BAND: f64 = 1e-12;

/// Smallest slack in the published bounds for this solution, or `None` when
/// no bound applies (key, whistle, rod outside order 3 or with a component
/// at 1). Negative means violated.
pub fn bound_margin(g: FertileGraph, p: &ModelParams, s: &Solution) -> Option<f64> {
    let lambda = p.lambda;
    let [z1, z2] = s.z.as_array();
    match g {
        FertileGraph::Loop => {
            let lo = lambda / (1.0 + lambda).powi(p.k as i32);
            Some((z1 - lo).min(z2 - lo).min(lambda - z1).min(lambda - z2))
        }
        FertileGraph::Rod if p.k == 3 => {
            let below = |z: f64| z < 1.0 - UNIT_BAND;
            let above = |z: f64| z > 1.0 + UNIT_BAND;
            if below(z1) && below(z2) {
                let hi = (1.0 + lambda).powi(3) / (8.0 * lambda * lambda);
                Some((z1 - lambda).min(z2 - lambda).min(hi - z1).min(hi - z2))
            } else if (below(z1) && above(z2)) || (above(z1) && below(z2)) {
                let (small, large) = (z1.min(z2), z1.max(z2));
                let hi = (1.0 + lambda).powi(3) / (lambda * lambda);
                Some(
                    small
                        .min(lambda - small)
                        .min(large - lambda)
                        .min(hi - large),
                )
            } else {
                None
            }
        }
        _ => None,
    }
}

pub fn check_bounds(g: FertileGraph, p: &ModelParams, s: &Solution) -> bool {
    bound_margin(g, p, s).is_none_or(|m| m > 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k: u32, lambda: f64) -> ModelParams {
        ModelParams::new(k, lambda).unwrap()
    }

    #[test]
    fn symmetric_critical_values() {
        let s = solve_symmetric(FertileGraph::Loop, &params(3, 32.0 / 27.0)).unwrap();
        assert!((s.z.z1 - 0.5).abs() < 1e-14 && s.z.z1 == s.z.z2);
        let s = solve_symmetric(FertileGraph::Rod, &params(3, 4.0 / 27.0)).unwrap();
        assert!((s.z.z1 - 0.5).abs() < 1e-14);
        assert_eq!(s.branch, Branch::Symmetric);
    }

    #[test]
    fn symmetric_needs_swap_symmetric_graph() {
        assert!(matches!(
            solve_symmetric(FertileGraph::Key, &params(2, 1.0)),
            Err(Error::UnsupportedCase { .. })
        ));
    }

    #[test]
    fn rod_symmetric_above_unit_activity() {
        // the a-priori rod bracket only covers z < 1
        for lambda in [1.0, 10.0, 1e3] {
            let p = params(3, lambda);
            let s = solve_symmetric(FertileGraph::Rod, &p).unwrap();
            assert!(s.residual_norm <= 1e-12 * (1.0 + s.z.z1));
        }
    }

    #[test]
    fn constraint_values() {
        let x = 2f64.cbrt().recip();
        assert!((asymmetric_constraint_y(x) - x).abs() < 1e-15);
        assert!((asymmetric_constraint_y(1.0) - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn octic_roots() {
        let xstar = 4f64.cbrt() / 2.0;
        let r = loop_k3_branch_polynomial(32.0 / 27.0);
        assert_eq!(r.len(), 1, "{r:?}");
        assert!((r[0] - xstar).abs() < 1e-7);
        assert!(loop_k3_branch_polynomial(1.0).is_empty());
        let r = loop_k3_branch_polynomial(2.0);
        assert_eq!(r.len(), 2);
        assert!(r[0] < xstar && xstar < r[1]);
        // the two roots are each other's partner on the constraint curve
        assert!((asymmetric_constraint_y(r[0]) - r[1]).abs() < 1e-10);
    }

    #[test]
    fn counts_at_a_glance() {
        let n = |g, k, l| solve_all(g, &params(k, l)).unwrap().count;
        assert_eq!(n(FertileGraph::Loop, 3, 2.0), 3);
        assert_eq!(n(FertileGraph::Loop, 3, 1.0), 1);
        assert_eq!(n(FertileGraph::Key, 2, 10.0), 1);
        assert_eq!(n(FertileGraph::Rod, 2, 0.5), 1);
        assert_eq!(n(FertileGraph::Rod, 2, 2.0), 3);
    }

    #[test]
    fn tangency_is_reported_once() {
        for (g, lambda) in [
            (FertileGraph::Loop, 32.0 / 27.0),
            (FertileGraph::Rod, 4.0 / 27.0),
        ] {
            let set = solve_all(g, &params(3, lambda)).unwrap();
            assert_eq!(set.count, 1, "{set:?}");
            assert_eq!(
                set.solutions[0].multiplicity_note.as_deref(),
                Some(NEAR_TANGENT)
            );
            let multi = solve_multistart(g, &params(3, lambda)).unwrap();
            assert_eq!(multi.count, 1, "{multi:?}");
        }
        // order 2 has no closed form; Newton alone must still merge
        let set = solve_all(FertileGraph::Loop, &params(2, 9.0 / 4.0)).unwrap();
        assert_eq!(set.count, 1, "{set:?}");
        let set = solve_all(FertileGraph::Rod, &params(2, 1.0)).unwrap();
        assert_eq!(set.count, 1, "{set:?}");
    }

    #[test]
    fn bounds_reject_out_of_box() {
        let p = params(3, 1.0);
        let s = Solution {
            z: Field::new(1.0, 0.5).unwrap(),
            branch: Branch::Asymmetric,
            residual_norm: 0.0,
            multiplicity_note: None,
        };
        assert!(!check_bounds(FertileGraph::Loop, &p, &s));
        assert!(check_bounds(FertileGraph::Key, &p, &s));
    }

    #[test]
    fn rod_bound_at_critical() {
        let lambda = 4.0 / 27.0;
        let p = params(3, lambda);
        let s = solve_symmetric(FertileGraph::Rod, &p).unwrap();
        assert!(check_bounds(FertileGraph::Rod, &p, &s));
        assert!(bound_margin(FertileGraph::Rod, &p, &s).unwrap() > 0.3);
    }

    #[test]
    fn empirical_flag() {
        assert!(
            !solve_all(FertileGraph::Loop, &params(3, 2.0))
                .unwrap()
                .empirical
        );
        assert!(
            solve_all(FertileGraph::Loop, &params(4, 2.0))
                .unwrap()
                .empirical
        );
    }
}
