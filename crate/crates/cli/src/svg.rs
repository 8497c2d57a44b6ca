//! Minimal SVG line plot of a diffraction pattern.
//!
//! A convenience view over the CSV, not an analysis surface: nothing in the
//! toolchain reads these back.

use std::fmt::Write as _;

const W: f64 = 900.0;
const H: f64 = 520.0;
const ML: f64 = 72.0;
const MR: f64 = 24.0;
const MT: f64 = 34.0;
const MB: f64 = 52.0;

pub fn render_pattern(
    positions: &[f64],
    density: &[f64],
    log_scale: bool,
    caption: &str,
) -> String {
    let x_min = positions.first().copied().unwrap_or(0.0);
    let x_max = positions.last().copied().unwrap_or(1.0);
    let d_max = density.iter().cloned().fold(f64::MIN, f64::max).max(1e-300);
    // Log view floor: eight decades below the peak covers every sidelobe
    // the detection blur leaves visible.
    let floor = d_max * 1e-8;

    let px = |x: f64| ML + (x - x_min) / (x_max - x_min) * (W - ML - MR);
    let py = |d: f64| {
        let t = if log_scale {
            ((d.max(floor) / floor).ln() / (d_max / floor).ln()).clamp(0.0, 1.0)
        } else {
            (d / d_max).clamp(0.0, 1.0)
        };
        H - MB - t * (H - MT - MB)
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\" \
         font-family=\"sans-serif\" font-size=\"13\">"
    );
    let _ = writeln!(s, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    let _ = writeln!(s, "<text x=\"{ML}\" y=\"22\">{caption}</text>");

    // Axes.
    let _ = writeln!(
        s,
        "<line x1=\"{ML}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"black\"/>",
        H - MB,
        W - MR
    );
    let _ = writeln!(
        s,
        "<line x1=\"{ML}\" y1=\"{MT}\" x2=\"{ML}\" y2=\"{}\" stroke=\"black\"/>",
        H - MB
    );
    for k in 0..=4 {
        let x = x_min + (x_max - x_min) * k as f64 / 4.0;
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{}\" text-anchor=\"middle\">{x:.2e}</text>",
            px(x),
            H - MB + 20.0
        );
    }
    let y_label = if log_scale {
        format!("density 1e-8..1 of {d_max:.3e} (log)")
    } else {
        format!("density 0..{d_max:.3e}")
    };
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" transform=\"rotate(-90 14 {})\" text-anchor=\"middle\">{} (1/m)</text>",
        14.0,
        0.5 * H,
        0.5 * H,
        y_label
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"{}\" text-anchor=\"middle\">position (m)</text>",
        0.5 * (ML + W - MR),
        H - 12.0
    );

    let mut points = String::new();
    for (x, d) in positions.iter().zip(density) {
        let _ = write!(points, "{:.2},{:.2} ", px(*x), py(*d));
    }
    let _ = writeln!(
        s,
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1\"/>",
        points.trim_end()
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_well_formed_svg() {
        let xs: Vec<f64> = (0..64).map(|i| (i as f64 - 32.0) * 1e-6).collect();
        let ds: Vec<f64> = xs.iter().map(|x| (-x * x * 1e10).exp()).collect();
        for log in [false, true] {
            let svg = render_pattern(&xs, &ds, log, "test");
            assert!(svg.starts_with("<svg"));
            assert!(svg.ends_with("</svg>\n"));
            assert!(svg.contains("polyline"));
        }
    }
}
