//! Scalar root finding, minimization and real-root isolation.

/// Bisection on a bracket with `f(lo)` and `f(hi)` of opposite sign.
///
/// Runs until the bracket is narrower than `xtol * max(1, |x|)` or stops
/// shrinking in floating point. Returns `None` without a sign change.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Option<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
        return None;
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || (hi - lo) <= xtol * mid.abs().max(1.0) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
/// Returns the final bracket.
pub fn golden_section<F>(mut f: F, mut a: f64, mut b: f64, tol: f64, max_iter: usize) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..max_iter {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    (a, b)
}

/// Dense polynomial with real coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `sum |c_i| |x|^i`, the scale against which a value at `x` is rounding noise.
    pub fn magnitude(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::new(vec![0.0]);
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    /// Upper bound on the modulus of every root (Cauchy).
    pub fn root_bound(&self) -> f64 {
        let lead = *self.coeffs.last().unwrap();
        let n = self.degree();
        1.0 + self.coeffs[..n]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max)
    }

    /// All real roots in `[lo, hi]`, sorted.
    ///
    /// Roots of the derivative split the interval into monotone pieces, each
    /// holding at most one simple root found by bisection. A critical point
    /// where the value is within rounding noise of zero is reported as a root
    /// of even multiplicity. Roots closer than `merge_tol` are merged.
    pub fn real_roots(&self, lo: f64, hi: f64, xtol: f64, merge_tol: f64) -> Vec<f64> {
        let mut roots = self.real_roots_raw(lo, hi, xtol);
        roots.sort_by(f64::total_cmp);
        let mut merged: Vec<f64> = Vec::with_capacity(roots.len());
        for r in roots {
            match merged.last_mut() {
                Some(last) if (r - *last).abs() <= merge_tol * r.abs().max(1.0) => {
                    // keep the value with the smaller residual
                    if self.eval(r).abs() < self.eval(*last).abs() {
                        *last = r;
                    }
                }
                _ => merged.push(r),
            }
        }
        merged
    }

    fn real_roots_raw(&self, lo: f64, hi: f64, xtol: f64) -> Vec<f64> {
        match self.degree() {
            0 => Vec::new(),
            1 => {
                let r = -self.coeffs[0] / self.coeffs[1];
                if (lo..=hi).contains(&r) {
                    vec![r]
                } else {
                    Vec::new()
                }
            }
            _ => {
                let crit = self.derivative().real_roots_raw(lo, hi, xtol);
                let mut knots = Vec::with_capacity(crit.len() + 2);
                knots.push(lo);
                knots.extend(crit.iter().copied().filter(|&c| c > lo && c < hi));
                knots.push(hi);
                knots.sort_by(f64::total_cmp);
                knots.dedup();

                let noise = |x: f64| 64.0 * f64::EPSILON * self.magnitude(x);
                let mut roots = Vec::new();
                for &c in &knots {
                    if self.eval(c).abs() <= noise(c) {
                        roots.push(c);
                    }
                }
                for w in knots.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let (fa, fb) = (self.eval(a), self.eval(b));
                    if fa.abs() <= noise(a) || fb.abs() <= noise(b) {
                        continue;
                    }
                    if fa.signum() != fb.signum() {
                        if let Some(r) = bisect(|x| self.eval(x), a, b, xtol) {
                            roots.push(r);
                        }
                    }
                }
                roots
            }
        }
    }
}
