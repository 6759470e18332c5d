//! Exhaustive finite-volume check of the consistency condition.
//!
//! Builds the ball `V_n` of the Cayley tree (root with `k + 1` children,
//! every other vertex with `k`), lists every admissible configuration, forms
//! the finite-volume measure
//!
//! ```text
//! mu_n(sigma) = lambda^{#occupied(sigma)} * prod_{x in W_n} w_{sigma(x), x} / Z_n
//! ```
//!
//! and compares the marginal of `mu_n` on `V_{n-1}` with `mu_{n-1}`.
//! Boundary weights come from a field `z` as `(1, z1/lambda, z2/lambda)`,
//! which undoes the `lambda z_i / z_0` normalization used by the recursion.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{is_admissible_pair, FertileGraph, State};
use crate::recursion::{Field, ModelParams};

/// Largest `3^|V|` that is enumerated configuration by configuration.
pub const ENUMERATION_LIMIT: u64 = 1 << 31;

/// Ball of radius `depth` around the root, vertices numbered in level order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTree {
    k: usize,
    depth: usize,
    parent: Vec<Option<usize>>,
    /// `level_start[m]..level_start[m + 1]` are the vertices of `W_m`.
    level_start: Vec<usize>,
}

impl FiniteTree {
    /// `k = 0` gives a single edge at depth 1.
    pub fn new(k: usize, depth: usize) -> Self {
        let mut parent = vec![None];
        let mut level_start = vec![0, 1];
        for m in 1..=depth {
            let (from, to) = (level_start[m - 1], level_start[m]);
            let children = if m == 1 { k + 1 } else { k };
            for v in from..to {
                parent.extend(std::iter::repeat_n(Some(v), children));
            }
            level_start.push(parent.len());
        }
        Self {
            k,
            depth,
            parent,
            level_start,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn num_vertices(&self) -> usize {
        self.parent.len()
    }

    pub fn level(&self, m: usize) -> std::ops::Range<usize> {
        self.level_start[m]..self.level_start[m + 1]
    }

    pub fn boundary(&self) -> std::ops::Range<usize> {
        self.level(self.depth)
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Direct successors S(v).
    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (v + 1..self.num_vertices()).filter(move |&c| self.parent[c] == Some(v))
    }

    /// `(parent, child)` pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|p| (p, c)))
    }
}

/// Per-boundary-vertex weights `(w0, w1, w2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryWeights {
    weights: Vec<[f64; 3]>,
}

impl BoundaryWeights {
    pub fn new(weights: Vec<[f64; 3]>) -> Result<Self> {
        if weights
            .iter()
            .flatten()
            .any(|w| !(w.is_finite() && *w > 0.0))
        {
            return Err(Error::InvalidWeights);
        }
        Ok(Self { weights })
    }

    /// Same weights `(1, z1/lambda, z2/lambda)` at every boundary vertex.
    pub fn translation_invariant(tree: &FiniteTree, lambda: f64, z: &Field) -> Result<Self> {
        let w = [1.0, z.z1 / lambda, z.z2 / lambda];
        Self::new(vec![w; tree.boundary().len()])
    }

    pub fn as_slice(&self) -> &[[f64; 3]] {
        &self.weights
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMeasure {
    pub support: Vec<Vec<State>>,
    pub probabilities: Vec<f64>,
    pub partition_value: f64,
}

#[derive(Serialize, Deserialize)]
struct MeasureEntry {
    configuration: String,
    probability: String,
}

#[derive(Serialize, Deserialize)]
struct MeasureDump {
    partition_value: String,
    configurations: Vec<MeasureEntry>,
}

impl FiniteMeasure {
    /// Configurations as level-order digit strings, probabilities as decimals.
    pub fn to_json(&self) -> String {
        let dump = MeasureDump {
            partition_value: format!("{:e}", self.partition_value),
            configurations: self
                .support
                .iter()
                .zip(&self.probabilities)
                .map(|(c, p)| MeasureEntry {
                    configuration: c.iter().map(|s| char::from(b'0' + u8::from(*s))).collect(),
                    probability: format!("{p:e}"),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dump).expect("measure dump serializes")
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

fn check_enumerable(tree: &FiniteTree) -> Result<()> {
    let n = tree.num_vertices();
    let fits = u32::try_from(n)
        .ok()
        .and_then(|e| 3u64.checked_pow(e))
        .is_some_and(|c| c <= ENUMERATION_LIMIT);
    if fits {
        Ok(())
    } else {
        Err(Error::TooLarge { vertices: n })
    }
}

/// Every admissible configuration in lexicographic order of the level-order
/// state vector. Parents precede children, so the search prunes on each edge.
pub fn enumerate_admissible(g: FertileGraph, tree: &FiniteTree) -> Result<Vec<Vec<State>>> {
    check_enumerable(tree)?;
    let n = tree.num_vertices();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn extend(
        g: FertileGraph,
        tree: &FiniteTree,
        current: &mut Vec<State>,
        out: &mut Vec<Vec<State>>,
    ) {
        let v = current.len();
        if v == tree.num_vertices() {
            out.push(current.clone());
            return;
        }
        for s in State::ALL {
            let ok = tree
                .parent(v)
                .is_none_or(|p| is_admissible_pair(g, current[p], s));
            if ok {
                current.push(s);
                extend(g, tree, current, out);
                current.pop();
            }
        }
    }
    extend(g, tree, &mut current, &mut out);
    Ok(out)
}

/// Number of admissible configurations by the per-subtree transfer
/// recursion; no enumeration, so no size limit.
pub fn count_admissible(g: FertileGraph, tree: &FiniteTree) -> u128 {
    let a = g.adjacency();
    // counts for a vertex at the current level, by its state
    let mut below = [1u128; 3];
    for m in (0..tree.depth()).rev() {
        let children = if m == 0 { tree.k() + 1 } else { tree.k() };
        let mut up = [0u128; 3];
        for (i, slot) in up.iter_mut().enumerate() {
            let per_child: u128 = (0..3).filter(|&j| a[i][j] == 1).map(|j| below[j]).sum();
            *slot = per_child.pow(children as u32);
        }
        below = up;
    }
    below.iter().sum()
}

pub fn measure(
    g: FertileGraph,
    p: &ModelParams,
    tree: &FiniteTree,
    w: &BoundaryWeights,
) -> Result<FiniteMeasure> {
    let boundary = tree.boundary();
    if w.as_slice().len() != boundary.len() {
        return Err(Error::InvalidWeights);
    }
    let support = enumerate_admissible(g, tree)?;
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let ln_lambda = p.lambda.ln();
    let ln_w: Vec<[f64; 3]> = w
        .as_slice()
        .iter()
        .map(|t| [t[0].ln(), t[1].ln(), t[2].ln()])
        .collect();
    let log_weights: Vec<f64> = support
        .iter()
        .map(|sigma| {
            let occupied = sigma.iter().filter(|s| s.is_occupied()).count() as f64;
            let boundary_term: f64 = boundary
                .clone()
                .zip(&ln_w)
                .map(|(x, lw)| lw[sigma[x].index()])
                .sum();
            occupied * ln_lambda + boundary_term
        })
        .collect();
    let shift = log_weights
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let unnormalized: Vec<f64> = log_weights.iter().map(|l| (l - shift).exp()).collect();
    let sum: f64 = unnormalized.iter().sum();
    Ok(FiniteMeasure {
        probabilities: unnormalized.iter().map(|u| u / sum).collect(),
        partition_value: sum * shift.exp(),
        support,
    })
}

fn encode(states: &[State]) -> u64 {
    states
        .iter()
        .fold(0u64, |acc, s| acc * 3 + u64::from(u8::from(*s)))
}

/// Largest deviation between the `V_{n-1}` marginal of `mu_n` and
/// `mu_{n-1}`, both built from the translation-invariant weights of `z`.
pub fn consistency_defect(g: FertileGraph, p: &ModelParams, n: usize, z: &Field) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidDepth {
            depth: n,
            reason: "the consistency check needs depth n >= 2",
        });
    }
    let k = p.k as usize;
    let outer = FiniteTree::new(k, n);
    let inner = FiniteTree::new(k, n - 1);
    let mu_n = measure(
        g,
        p,
        &outer,
        &BoundaryWeights::translation_invariant(&outer, p.lambda, z)?,
    )?;
    let mu_inner = measure(
        g,
        p,
        &inner,
        &BoundaryWeights::translation_invariant(&inner, p.lambda, z)?,
    )?;

    // Summed in enumeration order for reproducible results. Only admissible
    // completions are in the support, which is the indicator of the identity.
    let prefix = inner.num_vertices();
    let mut marginal: BTreeMap<u64, f64> = BTreeMap::new();
    for (sigma, prob) in mu_n.support.iter().zip(&mu_n.probabilities) {
        *marginal.entry(encode(&sigma[..prefix])).or_insert(0.0) += prob;
    }
    let mut defect: f64 = 0.0;
    for (sigma, prob) in mu_inner.support.iter().zip(&mu_inner.probabilities) {
        let m = marginal.get(&encode(sigma)).copied().unwrap_or(0.0);
        defect = defect.max((m - prob).abs());
    }
    Ok(defect)
}
