//! Translation-invariant boundary-law recursion.
//!
//! With z0 normalized to 1, a constant field (z1, z2) is a fixed point of
//!
//! ```text
//! F_i(z) = lambda * ((a_i0 + a_i1 z1 + a_i2 z2) / (a_00 + a_01 z1 + a_02 z2))^k,   i = 1, 2
//! ```
//!
//! and such fixed points are in bijection with the translation-invariant
//! Gibbs measures of the model. Everything here is written once in terms of
//! the adjacency matrix; the per-graph algebraic forms only show up in tests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::FertileGraph;

/// Tree order `k` (children per non-root vertex) and activity `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub k: u32,
    pub lambda: f64,
}

impl ModelParams {
    pub fn new(k: u32, lambda: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams(
                "tree order k must be at least 1".into(),
            ));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParams(format!(
                "activity must be finite and positive, got {lambda}"
            )));
        }
        Ok(Self { k, lambda })
    }

    /// `lambda^(1/k)`, the activity in root variables.
    pub fn lambda_root(&self) -> f64 {
        match self.k {
            1 => self.lambda,
            2 => self.lambda.sqrt(),
            3 => self.lambda.cbrt(),
            k => self.lambda.powf(1.0 / f64::from(k)),
        }
    }
}

/// Normalized boundary law (z1, z2), both strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Field {
    pub z1: f64,
    pub z2: f64,
}

impl Field {
    pub fn new(z1: f64, z2: f64) -> Result<Self> {
        let f = Self { z1, z2 };
        f.validate()?;
        Ok(f)
    }

    pub fn symmetric(z: f64) -> Result<Self> {
        Self::new(z, z)
    }

    pub fn validate(&self) -> Result<()> {
        if self.z1.is_finite() && self.z2.is_finite() && self.z1 > 0.0 && self.z2 > 0.0 {
            Ok(())
        } else {
            Err(Error::NonFiniteInput(self.z1, self.z2))
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            z1: self.z2,
            z2: self.z1,
        }
    }

    pub fn as_array(&self) -> [f64; 2] {
        [self.z1, self.z2]
    }

    pub fn max_norm(&self) -> f64 {
        self.z1.abs().max(self.z2.abs())
    }

    pub fn distance(&self, other: &Field) -> f64 {
        (self.z1 - other.z1).abs().max((self.z2 - other.z2).abs())
    }
}

impl From<Field> for [f64; 2] {
    fn from(f: Field) -> Self {
        f.as_array()
    }
}

pub type Matrix2 = [[f64; 2]; 2];

/// Numerators N_1, N_2 and the shared denominator D.
#[inline]
fn parts(g: FertileGraph, z: &Field) -> ([f64; 2], f64) {
    let num = |i: usize| g.a(i, 0) + g.a(i, 1) * z.z1 + g.a(i, 2) * z.z2;
    ([num(1), num(2)], num(0))
}

pub fn recursion_map(g: FertileGraph, p: &ModelParams, z: &Field) -> Result<Field> {
    z.validate()?;
    let (num, den) = parts(g, z);
    let k = p.k as i32;
    let out = Field {
        z1: p.lambda * (num[0] / den).powi(k),
        z2: p.lambda * (num[1] / den).powi(k),
    };
    // Extreme inputs can still underflow or overflow the power.
    out.validate()?;
    Ok(out)
}

/// `z - F(z)`, zero exactly at fixed points.
pub fn residual(g: FertileGraph, p: &ModelParams, z: &Field) -> Result<[f64; 2]> {
    let f = recursion_map(g, p, z)?;
    Ok([z.z1 - f.z1, z.z2 - f.z2])
}

/// Max-norm of the residual.
pub fn residual_norm(g: FertileGraph, p: &ModelParams, z: &Field) -> Result<f64> {
    let r = residual(g, p, z)?;
    Ok(r[0].abs().max(r[1].abs()))
}

/// Analytic `dF_i/dz_j`.
///
/// `dF_i/dz_j = k lambda r_i^(k-1) (a_ij D - N_i a_0j) / D^2` with `r_i = N_i / D`.
///
/// The bracket is expanded as `sum_m (a_ij a_0m - a_im a_0j) z_m` over
/// `m in {0, 1, 2}` (`z_0 = 1`); the `m = j` term vanishes identically, so
/// nothing cancels when one coordinate dwarfs the other.
pub fn jacobian(g: FertileGraph, p: &ModelParams, z: &Field) -> Result<Matrix2> {
    z.validate()?;
    let (num, den) = parts(g, z);
    let k = p.k as i32;
    let kf = f64::from(p.k);
    let zs = [1.0, z.z1, z.z2];
    let mut jac = [[0.0; 2]; 2];
    for (i, row) in jac.iter_mut().enumerate() {
        let r = num[i] / den;
        let scale = kf * p.lambda * r.powi(k - 1) / (den * den);
        for (j, entry) in row.iter_mut().enumerate() {
            let bracket: f64 = (0..3)
                .filter(|&m| m != j + 1)
                .map(|m| (g.a(i + 1, j + 1) * g.a(0, m) - g.a(i + 1, m) * g.a(0, j + 1)) * zs[m])
                .sum();
            *entry = scale * bracket;
        }
    }
    Ok(jac)
}

/// Smallest singular value of `I - J`, the Jacobian of the residual.
/// Small values flag a fixed point where branches meet.
pub fn residual_conditioning(g: FertileGraph, p: &ModelParams, z: &Field) -> Result<f64> {
    let j = jacobian(g, p, z)?;
    let m = [[1.0 - j[0][0], -j[0][1]], [-j[1][0], 1.0 - j[1][1]]];
    Ok(smallest_singular_value(&m))
}

pub(crate) fn smallest_singular_value(m: &Matrix2) -> f64 {
    let (a, b, c, d) = (m[0][0], m[0][1], m[1][0], m[1][1]);
    let fro2 = a * a + b * b + c * c + d * d;
    let det = (a * d - b * c).abs();
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
    let big = ((fro2 + disc) / 2.0).sqrt();
    if big == 0.0 {
        0.0
    } else {
        det / big
    }
}
