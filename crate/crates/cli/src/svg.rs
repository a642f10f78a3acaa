//! Self-contained SVG plot of sweep results: no scripts, no external
//! assets, renders anywhere. Log-log axes, |residual| against N, with a
//! slope-1/2 guide line anchored at the first point (the square-root growth
//! the zero sums leave behind).

use hlnum_core::report::VerificationReport;

const W: f64 = 640.0;
const H: f64 = 440.0;
const ML: f64 = 70.0; // margins: left, right, top, bottom
const MR: f64 = 25.0;
const MT: f64 = 40.0;
const MB: f64 = 55.0;

pub fn residual_plot(reports: &[VerificationReport]) -> String {
    let pts: Vec<(f64, f64)> = reports
        .iter()
        .filter(|r| r.residual != 0.0)
        .map(|r| ((r.n as f64).log10(), r.residual.abs().log10()))
        .collect();
    let k = reports.first().map_or(f64::NAN, |r| r.k);

    let (x0, x1) = padded_range(pts.iter().map(|p| p.0));
    let (y0, y1) = padded_range(pts.iter().map(|p| p.1));
    let sx = |x: f64| ML + (x - x0) / (x1 - x0) * (W - ML - MR);
    let sy = |y: f64| H - MB - (y - y0) / (y1 - y0) * (H - MT - MB);

    let mut s = String::with_capacity(4096);
    s.push_str(&format!(
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">
<rect width="{W}" height="{H}" fill="white"/>
<text x="{}" y="22" text-anchor="middle" font-size="14">Explicit-formula residual, k = {k}</text>
"##,
        W / 2.0
    ));

    // Decade grid and tick labels.
    for dx in x0.ceil() as i64..=x1.floor() as i64 {
        let px = sx(dx as f64);
        s.push_str(&format!(
            r##"<line x1="{px:.1}" y1="{MT}" x2="{px:.1}" y2="{}" stroke="#ddd"/>
<text x="{px:.1}" y="{}" text-anchor="middle">1e{dx}</text>
"##,
            H - MB,
            H - MB + 18.0
        ));
    }
    for dy in y0.ceil() as i64..=y1.floor() as i64 {
        let py = sy(dy as f64);
        s.push_str(&format!(
            r##"<line x1="{ML}" y1="{py:.1}" x2="{}" y2="{py:.1}" stroke="#ddd"/>
<text x="{}" y="{py:.1}" text-anchor="end" dominant-baseline="middle">1e{dy}</text>
"##,
            W - MR,
            ML - 6.0
        ));
    }

    // Axes and labels.
    s.push_str(&format!(
        r##"<rect x="{ML}" y="{MT}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>
<text x="{}" y="{}" text-anchor="middle">N</text>
<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">|residual|</text>
"##,
        W - ML - MR,
        H - MT - MB,
        (ML + W - MR) / 2.0,
        H - 12.0,
        (MT + H - MB) / 2.0,
        (MT + H - MB) / 2.0
    ));

    // Slope-1/2 guide through the first point.
    if let Some(&(fx, fy)) = pts.first() {
        let gy = |x: f64| fy + 0.5 * (x - fx);
        s.push_str(&format!(
            r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#c33" stroke-dasharray="6 4"/>
<text x="{:.1}" y="{:.1}" fill="#c33">slope 1/2</text>
"##,
            sx(x0),
            sy(gy(x0)),
            sx(x1),
            sy(gy(x1)),
            sx(x1) - 70.0,
            sy(gy(x1)) - 8.0
        ));
    }

    // The data: polyline plus markers.
    if pts.len() > 1 {
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.1},{:.1}", sx(x), sy(y)))
            .collect();
        s.push_str(&format!(
            r##"<polyline points="{}" fill="none" stroke="#1761a0" stroke-width="1.5"/>
"##,
            path.join(" ")
        ));
    }
    for &(x, y) in &pts {
        s.push_str(&format!(
            r##"<circle cx="{:.1}" cy="{:.1}" r="4" fill="#1761a0"/>
"##,
            sx(x),
            sy(y)
        ));
    }
    s.push_str("</svg>\n");
    s
}

fn padded_range(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in vals {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    let pad = 0.08 * (hi - lo).max(0.5);
    (lo - pad, hi + pad)
}
