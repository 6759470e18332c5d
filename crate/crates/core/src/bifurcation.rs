//! Critical activities and lambda sweeps.
//!
//! For loop and rod, an asymmetric fixed point in root variables
//! `x = z1^(1/k)`, `y = z2^(1/k)`, `t = lambda^(1/k)` lies on a constraint
//! curve (`xy(x + y) = 1` for k = 3, `xy = 1` for k = 2) and the activity
//! along it is the branch map
//!
//! ```text
//! t(x) = x (a_00 + x^k + y^k) / (1 + x^k)
//! ```
//!
//! The branch map is convex with its minimum at the point where the curve
//! meets the diagonal, so the minimum value raised to the k-th power is the
//! critical activity where two asymmetric solutions split off.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::FertileGraph;
use crate::numeric::{bisect, golden_section};
use crate::recursion::{residual_norm, Field, ModelParams};
use crate::solver::{asymmetric_constraint_y, solve_all, SolutionSet};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub graph: FertileGraph,
    pub k: u32,
    pub lambda_cr: f64,
    pub x_star: f64,
    pub z_star: Field,
}

/// `phi(x) - x` for the order-3 loop branch, free of cancellation.
fn phi_loop_k3_excess(x: f64) -> f64 {
    let x3 = x * x * x;
    let s = (x3 * x + 4.0 * x).sqrt();
    2.0 / ((x3 + 1.0) * ((x3 + 1.0) * s + x * x * (x3 + 3.0)))
}

/// Activity root `t = lambda^(1/3)` along the order-3 loop branch.
///
/// Equal to `(x^2 (x^3 - 1) + (x^3 + 1) sqrt(x^4 + 4x)) / (2x (x^3 + 1))`,
/// evaluated as `x + 2 / ((x^3 + 1)((x^3 + 1) sqrt(x^4 + 4x) + x^2 (x^3 + 3)))`.
pub fn phi_loop_k3(x: f64) -> f64 {
    x + phi_loop_k3_excess(x)
}

/// Activity root along the order-3 rod branch.
pub fn phi_rod_k3(x: f64) -> f64 {
    let y = asymmetric_constraint_y(x);
    let x3 = x * x * x;
    x * (x3 + y * y * y) / (1.0 + x3)
}

/// Branch map for `(graph, k)` in {loop, rod} x {2, 3}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchMap {
    graph: FertileGraph,
    k: u32,
}

const SEARCH_LO: f64 = 1e-3;
const SEARCH_HI: f64 = 1e3;
const DERIVATIVE_STEP: f64 = 1e-7;

impl BranchMap {
    pub fn new(graph: FertileGraph, k: u32) -> Result<Self> {
        if graph.is_swap_symmetric() && (k == 2 || k == 3) {
            Ok(Self { graph, k })
        } else {
            Err(Error::UnsupportedCase { graph, k })
        }
    }

    pub fn graph(&self) -> FertileGraph {
        self.graph
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The other root coordinate on the constraint curve.
    pub fn partner(&self, x: f64) -> f64 {
        match self.k {
            2 => 1.0 / x,
            _ => asymmetric_constraint_y(x),
        }
    }

    pub fn t(&self, x: f64) -> f64 {
        match (self.graph, self.k) {
            (FertileGraph::Loop, 3) => phi_loop_k3(x),
            (FertileGraph::Rod, 3) => phi_rod_k3(x),
            _ => {
                let y = self.partner(x);
                let (xk, yk) = (x * x, y * y);
                x * (self.graph.a(0, 0) + xk + yk) / (1.0 + xk)
            }
        }
    }

    pub fn point(&self, x: f64) -> BranchPoint {
        BranchPoint {
            x,
            y: self.partner(x),
            t: self.t(x),
        }
    }

    pub fn lambda(&self, x: f64) -> f64 {
        self.t(x).powi(self.k as i32)
    }

    /// Fixed point `(x^k, y^k)` carried by the branch point at `x`.
    pub fn field(&self, x: f64) -> Field {
        let k = self.k as i32;
        Field {
            z1: x.powi(k),
            z2: self.partner(x).powi(k),
        }
    }

    fn derivative(&self, x: f64) -> f64 {
        let h = DERIVATIVE_STEP * x;
        (self.t(x + h) - self.t(x - h)) / (2.0 * h)
    }

    /// Minimizer of the branch map: golden section in `ln x` over
    /// `[1e-3, 1e3]`, bisection on the sign of the central-difference
    /// derivative, then the fixed point of the partner involution.
    pub fn minimize(&self) -> (f64, f64) {
        let (a, b) = golden_section(
            |u| self.t(u.exp()),
            SEARCH_LO.ln(),
            SEARCH_HI.ln(),
            1e-10,
            400,
        );
        let xg = (0.5 * (a + b)).exp();
        let mut width = 1e-5;
        let mut x_star = xg;
        for _ in 0..6 {
            let (lo, hi) = (xg * (1.0 - width), xg * (1.0 + width));
            if self.derivative(lo) < 0.0 && self.derivative(hi) > 0.0 {
                x_star = bisect(|x| self.derivative(x), lo, hi, 1e-14).unwrap_or(xg);
                break;
            }
            width *= 10.0;
        }
        // t is invariant under x -> partner(x) and unimodal, so the minimizer
        // is the fixed point of the involution; that root is well conditioned
        // where the derivative sign is not.
        let (lo, hi) = (x_star * 0.99, x_star * 1.01);
        if let Some(fixed) = bisect(|x| x - self.partner(x), lo, hi, 1e-16) {
            if (fixed - x_star).abs() <= 1e-6 * x_star {
                x_star = fixed;
            }
        }
        (x_star, self.t(x_star))
    }

    /// All `x > 0` with `t(x) = target`, ascending. One root (the minimizer)
    /// when `target` equals the minimum to rounding.
    pub fn roots(&self, target: f64) -> Vec<f64> {
        let (xm, tm) = self.minimize();
        let tol = 16.0 * f64::EPSILON * tm;
        if target < tm - tol {
            return Vec::new();
        }
        if target <= tm + tol {
            return vec![xm];
        }
        let f = |x: f64| self.t(x) - target;
        let mut lo = xm;
        while f(lo) <= 0.0 && lo > 1e-300 {
            lo *= 0.5;
        }
        let mut hi = xm;
        while f(hi) <= 0.0 && hi < 1e300 {
            hi *= 2.0;
        }
        [bisect(f, lo, xm, 1e-16), bisect(f, xm, hi, 1e-16)]
            .into_iter()
            .flatten()
            .collect()
    }
}

pub fn find_lambda_cr(graph: FertileGraph, k: u32) -> Result<CriticalPoint> {
    let map = BranchMap::new(graph, k)?;
    let (x_star, t_star) = map.minimize();
    let lambda_cr = t_star.powi(k as i32);
    let z_star = map.field(x_star);
    let p = ModelParams::new(k, lambda_cr)?;
    let r = residual_norm(graph, &p, &z_star)?;
    if r > 1e-10 {
        return Err(Error::ConvergenceFailure(format!(
            "critical field has residual {r:e}"
        )));
    }
    Ok(CriticalPoint {
        graph,
        k,
        lambda_cr,
        x_star,
        z_star,
    })
}

// ---------------------------------------------------------------------------
// convexity of the order-3 loop branch map

/// Coefficients of the positivity polynomial alpha, highest degree first
/// as `(exponent, coefficient)`.
pub const ALPHA_TERMS: [(u32, i64); 23] = [
    (26, 1),
    (23, 14),
    (22, 24),
    (20, 79),
    (19, 240),
    (17, -1492),
    (16, -5976),
    (15, -7776),
    (14, 7327),
    (13, 29568),
    (12, 38448),
    (11, -6466),
    (10, -25368),
    (9, -33984),
    (8, 289),
    (7, 1584),
    (6, 2160),
    (5, 104),
    (4, 600),
    (3, 864),
    (2, 16),
    (1, 96),
    (0, 144),
];

pub fn alpha_exact(x: i64) -> i128 {
    let x = i128::from(x);
    ALPHA_TERMS
        .iter()
        .map(|&(e, c)| i128::from(c) * x.pow(e))
        .sum()
}

pub fn alpha(x: f64) -> f64 {
    ALPHA_TERMS
        .iter()
        .map(|&(e, c)| c as f64 * x.powi(e as i32))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub grid_len: usize,
    /// Grid points where the second difference is not positive.
    pub violations: Vec<f64>,
    pub min_second_difference: f64,
    pub second_difference_at_x_star: f64,
    pub alpha_at_one: i128,
    /// Sign changes of alpha on the grid, refined by bisection.
    pub alpha_positive_roots: Vec<f64>,
    /// alpha > 0 at every grid point with x^3 > 2.
    pub alpha_positive_beyond_cbrt2: bool,
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

pub fn default_convexity_grid() -> Vec<f64> {
    log_grid(1e-3, 1e3, 2000)
}

const CONVEXITY_STEP: f64 = 1e-5;

/// `phi(x - h) - 2 phi(x) + phi(x + h)` with `h = 1e-5 x`. The linear part of
/// phi contributes exactly zero, so only the excess is differenced.
pub fn second_difference_loop_k3(x: f64) -> f64 {
    let h = CONVEXITY_STEP * x;
    phi_loop_k3_excess(x - h) - 2.0 * phi_loop_k3_excess(x) + phi_loop_k3_excess(x + h)
}

pub fn verify_convexity_loop_k3(grid: &[f64]) -> Result<ConvexityReport> {
    if grid.iter().any(|&x| !(x.is_finite() && x > 0.0)) {
        return Err(Error::InvalidParams("grid points must be positive".into()));
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParams("grid must be sorted".into()));
    }
    let diffs: Vec<f64> = grid.iter().map(|&x| second_difference_loop_k3(x)).collect();
    let violations: Vec<f64> = grid
        .iter()
        .zip(&diffs)
        .filter(|(_, &d)| !(d > 0.0))
        .map(|(&x, _)| x)
        .collect();
    if !violations.is_empty() {
        return Err(Error::ConvexityViolation(violations));
    }

    let mut alpha_positive_roots = Vec::new();
    for w in grid.windows(2) {
        if alpha(w[0]).signum() != alpha(w[1]).signum() {
            if let Some(r) = bisect(alpha, w[0], w[1], 1e-14) {
                alpha_positive_roots.push(r);
            }
        }
    }
    let alpha_positive_beyond_cbrt2 = grid
        .iter()
        .filter(|&&x| x * x * x > 2.0)
        .all(|&x| alpha(x) > 0.0);

    Ok(ConvexityReport {
        grid_len: grid.len(),
        violations,
        min_second_difference: diffs.iter().copied().fold(f64::INFINITY, f64::min),
        second_difference_at_x_star: second_difference_loop_k3(4f64.cbrt() / 2.0),
        alpha_at_one: alpha_exact(1),
        alpha_positive_roots,
        alpha_positive_beyond_cbrt2,
    })
}

// ---------------------------------------------------------------------------
// sweeps

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub count: usize,
    pub z1_values: Vec<f64>,
    pub z1_sym: Option<f64>,
    pub z1_low: Option<f64>,
    pub z1_high: Option<f64>,
    pub empirical: bool,
}

impl SweepRow {
    pub fn from_set(set: &SolutionSet) -> Self {
        let mut z1_values: Vec<f64> = set.solutions.iter().map(|s| s.z.z1).collect();
        z1_values.sort_by(f64::total_cmp);
        let z1_sym = set.symmetric().map(|s| s.z.z1);
        let asym: Vec<f64> = set.asymmetric().map(|s| s.z.z1).collect();
        let z1_low = asym.iter().copied().reduce(f64::min);
        let z1_high = if asym.len() >= 2 {
            asym.iter().copied().reduce(f64::max)
        } else {
            None
        };
        Self {
            count: set.count,
            z1_values,
            z1_sym,
            z1_low,
            z1_high,
            empirical: set.empirical,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub lambda: f64,
    /// Solver failure at this point is recorded, not propagated.
    pub outcome: std::result::Result<SweepRow, String>,
}

pub fn sweep(graph: FertileGraph, k: u32, lambda_grid: &[f64]) -> Result<Vec<SweepPoint>> {
    if lambda_grid.iter().any(|&l| !(l.is_finite() && l > 0.0)) {
        return Err(Error::InvalidParams(
            "sweep grid must be finite and positive".into(),
        ));
    }
    if lambda_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParams("sweep grid must be sorted".into()));
    }
    if k == 0 {
        return Err(Error::InvalidParams(
            "tree order k must be at least 1".into(),
        ));
    }
    Ok(lambda_grid
        .par_iter()
        .map(|&lambda| SweepPoint {
            lambda,
            outcome: ModelParams::new(k, lambda)
                .and_then(|p| solve_all(graph, &p))
                .map(|set| SweepRow::from_set(&set))
                .map_err(|e| e.to_string()),
        })
        .collect())
}
