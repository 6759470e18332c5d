//! Text renderings of sweep results: CSV and a self-contained SVG diagram.

use std::fmt::Write as _;

use crate::bifurcation::SweepPoint;

/// `%.12g`-style formatting: 12 significant digits, trailing zeros removed.
pub fn fmt_sig(x: f64) -> String {
    fmt_sig_digits(x, 12)
}

pub fn fmt_sig_digits(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rounds to 12 significant digits, for machine-readable output.
pub fn round_sig(x: f64) -> f64 {
    fmt_sig(x).parse().unwrap_or(x)
}

pub const CSV_HEADER: &str = "lambda,count,z1_sym,z1_low,z1_high";

pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let opt = |v: Option<f64>| v.map(fmt_sig).unwrap_or_default();
    let mut out = String::with_capacity(64 * (points.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in points {
        match &p.outcome {
            Ok(row) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    fmt_sig(p.lambda),
                    row.count,
                    opt(row.z1_sym),
                    opt(row.z1_low),
                    opt(row.z1_high)
                );
            }
            Err(_) => {
                let _ = writeln!(out, "{},error,,,", fmt_sig(p.lambda));
            }
        }
    }
    out
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 60.0;
const TICKS: usize = 5;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Bifurcation diagram: z1 of every branch against lambda, linear axes.
pub fn sweep_svg(points: &[SweepPoint], title: &str) -> String {
    let lambdas: Vec<f64> = points.iter().map(|p| p.lambda).collect();
    let (x_min, mut x_max) = (
        lambdas.iter().copied().fold(f64::INFINITY, f64::min),
        lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    );
    if !(x_max > x_min) {
        x_max = x_min + 1.0;
    }
    let y_top = points
        .iter()
        .filter_map(|p| p.outcome.as_ref().ok())
        .flat_map(|r| r.z1_values.iter().copied())
        .fold(0.0f64, f64::max);
    let (y_min, y_max) = (0.0, if y_top > 0.0 { y_top * 1.05 } else { 1.0 });

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let sy = |y: f64| MARGIN_TOP + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="30" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    // axes
    let (x0, x1, y0, y1) = (sx(x_min), sx(x_max), sy(y_min), sy(y_max));
    let _ = writeln!(
        svg,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let fx = x_min + (x_max - x_min) * i as f64 / TICKS as f64;
        let px = sx(fx);
        let _ = writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            y0 + 5.0,
            y0 + 20.0,
            fmt_sig_digits(fx, 4)
        );
        let fy = y_min + (y_max - y_min) * i as f64 / TICKS as f64;
        let py = sy(fy);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{x0:.2}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="end">{}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            py + 4.0,
            fmt_sig_digits(fy, 4)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">lambda</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 20 {:.2})">z1</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    type Pick = fn(&crate::bifurcation::SweepRow) -> Option<f64>;
    let series: [(&str, &str, Pick); 3] = [
        ("symmetric", "#1f77b4", |r| r.z1_sym),
        ("low", "#d62728", |r| r.z1_low),
        ("high", "#2ca02c", |r| r.z1_high),
    ];
    for (name, color, pick) in series {
        // one polyline per contiguous run where the branch exists
        let mut run: Vec<(f64, f64)> = Vec::new();
        let mut runs = Vec::new();
        for p in points {
            match p.outcome.as_ref().ok().and_then(pick) {
                Some(z) => run.push((sx(p.lambda), sy(z))),
                None if !run.is_empty() => runs.push(std::mem::take(&mut run)),
                None => {}
            }
        }
        if !run.is_empty() {
            runs.push(run);
        }
        for r in runs {
            let coords: Vec<String> = r.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            let _ = writeln!(
                svg,
                r#"<polyline class="{name}" fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
                coords.join(" ")
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(4.0 / 27.0), "0.148148148148");
        assert_eq!(fmt_sig(32.0 / 27.0), "1.18518518519");
        assert_eq!(fmt_sig(0.5), "0.5");
        assert_eq!(fmt_sig(2.0), "2");
        assert_eq!(fmt_sig(1.5e-17), "1.5e-17");
        assert_eq!(fmt_sig(-0.25), "-0.25");
        assert_eq!(fmt_sig(123456789012345.0), "1.23456789012e14");
        assert_eq!(fmt_sig(0.0001), "0.0001");
        assert_eq!(fmt_sig(9.9999999999999), "10");
    }

    #[test]
    fn rounding_is_idempotent() {
        let x = round_sig(std::f64::consts::PI);
        assert_eq!(round_sig(x), x);
        assert!((x - std::f64::consts::PI).abs() < 1e-11);
    }
}
