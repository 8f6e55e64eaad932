//! Minimal self-contained SVG line plots: axes, tick labels, legend, no
//! external assets or scripts. Gaps in a curve (where no value exists) split
//! the polyline instead of drawing a false connector.

use std::fmt::Write as _;

pub struct Curve {
    pub label: String,
    /// `None` y-values are gaps.
    pub points: Vec<(f64, Option<f64>)>,
    pub dashed: bool,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 42.0;
const BOTTOM: f64 = 58.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Round tick positions covering [lo, hi]: a 1/2/5 × 10^k step close to
/// (hi−lo)/6, and the decimal places needed to print it exactly.
fn ticks(lo: f64, hi: f64) -> (Vec<f64>, usize) {
    let raw = (hi - lo) / 6.0;
    let mag = 10f64.powf(raw.abs().log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|&s| raw <= s)
        .unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + step * 1e-9 {
        out.push(if t == 0.0 { 0.0 } else { t }); // normalize −0
        t += step;
    }
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    (out, decimals.min(10))
}

fn fmt_tick(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    if s.starts_with('-') && s.trim_start_matches(['-', '0', '.']).is_empty() {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn line_plot(title: &str, x_label: &str, y_label: &str, curves: &[Curve]) -> String {
    let finite = curves
        .iter()
        .flat_map(|c| c.points.iter())
        .filter_map(|&(x, y)| y.filter(|y| y.is_finite() && x.is_finite()).map(|y| (x, y)));
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for (x, y) in finite {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    if !x_min.is_finite() || x_min >= x_max {
        (x_min, x_max) = (0.0, 1.0);
    }
    if !y_min.is_finite() {
        (y_min, y_max) = (0.0, 1.0);
    } else if y_min >= y_max {
        (y_min, y_max) = (y_min - 1.0, y_max + 1.0);
    } else {
        let pad = 0.05 * (y_max - y_min);
        y_min -= pad;
        y_max += pad;
    }

    let px = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * (WIDTH - LEFT - RIGHT);
    let py = |y: f64| HEIGHT - BOTTOM - (y - y_min) / (y_max - y_min) * (HEIGHT - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
    );
    let _ = writeln!(s, r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##);
    let _ = writeln!(
        s,
        r##"<text x="{:.1}" y="24" text-anchor="middle" font-size="16" fill="#000">{title}</text>"##,
        (LEFT + WIDTH - RIGHT) / 2.0
    );

    // Axes and ticks.
    let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, HEIGHT - BOTTOM, TOP);
    let _ = writeln!(
        s,
        r##"<path d="M {x0} {y1} L {x0} {y0} L {x1} {y0}" fill="none" stroke="#000" stroke-width="1"/>"##
    );
    let (xt, xd) = ticks(x_min, x_max);
    for &t in &xt {
        let x = px(t);
        let _ = writeln!(s, r##"<line x1="{x:.1}" y1="{y0}" x2="{x:.1}" y2="{:.1}" stroke="#000"/>"##, y0 + 5.0);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.1}" y1="{y1}" x2="{x:.1}" y2="{y0}" stroke="#ddd" stroke-width="0.5"/>"##
        );
        let _ = writeln!(
            s,
            r##"<text x="{x:.1}" y="{:.1}" text-anchor="middle" font-size="12" fill="#000">{}</text>"##,
            y0 + 20.0,
            fmt_tick(t, xd)
        );
    }
    let (yt, yd) = ticks(y_min, y_max);
    for &t in &yt {
        let y = py(t);
        let _ = writeln!(s, r##"<line x1="{:.1}" y1="{y:.1}" x2="{x0}" y2="{y:.1}" stroke="#000"/>"##, x0 - 5.0);
        let _ = writeln!(
            s,
            r##"<line x1="{x0}" y1="{y:.1}" x2="{x1}" y2="{y:.1}" stroke="#ddd" stroke-width="0.5"/>"##
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.1}" y="{:.1}" text-anchor="end" font-size="12" fill="#000">{}</text>"##,
            x0 - 9.0,
            y + 4.0,
            fmt_tick(t, yd)
        );
    }
    let _ = writeln!(
        s,
        r##"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="13" fill="#000">{x_label}</text>"##,
        (x0 + x1) / 2.0,
        HEIGHT - 14.0
    );
    let _ = writeln!(
        s,
        r##"<text x="18" y="{:.1}" text-anchor="middle" font-size="13" fill="#000" transform="rotate(-90 18 {:.1})">{y_label}</text>"##,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    // Curves: one polyline per contiguous run of present values.
    for (i, curve) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let dash = if curve.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let mut run: Vec<(f64, f64)> = Vec::new();
        let flush = |run: &mut Vec<(f64, f64)>, s: &mut String| {
            if run.len() >= 2 {
                let pts: Vec<String> =
                    run.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
                let _ = writeln!(
                    s,
                    r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>"#,
                    pts.join(" ")
                );
            } else if run.len() == 1 {
                let (x, y) = run[0];
                let _ = writeln!(
                    s,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{color}"/>"#,
                    px(x),
                    py(y)
                );
            }
            run.clear();
        };
        for &(x, y) in &curve.points {
            match y {
                Some(y) if y.is_finite() && x.is_finite() => run.push((x, y)),
                _ => flush(&mut run, &mut s),
            }
        }
        flush(&mut run, &mut s);
    }

    // Legend, top right inside the plot area.
    let lx = x1 - 150.0;
    let ly = y1 + 10.0;
    let _ = writeln!(
        s,
        r##"<rect x="{lx}" y="{ly}" width="142" height="{}" fill="#ffffff" stroke="#999"/>"##,
        8 + 18 * curves.len()
    );
    for (i, curve) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let dash = if curve.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let y = ly + 14.0 + 18.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="{color}" stroke-width="1.5"{dash}/>"#,
            lx + 8.0,
            lx + 36.0
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.1}" y="{:.1}" font-size="12" fill="#000">{}</text>"##,
            lx + 42.0,
            y + 4.0,
            curve.label
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sine_curve() -> Curve {
        Curve {
            label: String::from("sin"),
            points: (0..100)
                .map(|i| {
                    let x = i as f64 * 0.1;
                    (x, Some(x.sin()))
                })
                .collect(),
            dashed: false,
        }
    }

    #[test]
    fn plot_is_self_contained_svg_with_axes_and_legend() {
        let svg = line_plot("demo", "x", "f(x)", &[sine_curve()]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("<polyline"));
        assert!(svg.contains(">sin</text>"));
        assert!(svg.contains(">x</text>"));
        // Self-contained: the only URL is the xmlns namespace declaration.
        assert_eq!(svg.matches("http").count(), 1);
        assert_eq!(svg.matches("xmlns").count(), 1);
    }

    #[test]
    fn gaps_split_the_polyline() {
        let mut c = sine_curve();
        c.points[50].1 = None;
        let svg = line_plot("demo", "x", "y", &[c]);
        assert_eq!(svg.matches("<polyline").count(), 2);
    }

    #[test]
    fn dashed_curves_carry_a_dasharray() {
        let mut c = sine_curve();
        c.dashed = true;
        let svg = line_plot("demo", "x", "y", &[c]);
        assert!(svg.contains("stroke-dasharray"));
    }

    #[test]
    fn tick_steps_are_round_numbers() {
        let (t, d) = ticks(0.0, 2.0);
        assert!(t.contains(&0.5) || t.contains(&1.0));
        assert!(d <= 1);
        let (t, _) = ticks(-1.3, 1.3);
        assert!(t.contains(&0.0));
    }
}
