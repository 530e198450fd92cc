//! Self-contained SVG 1.1 line plots: one analytic polyline per technique,
//! simulated means as dots with vertical 95% error bars.

use std::fmt::Write as _;

use crate::sweep::SweepTable;
use crate::technique::{Relation, Technique};

use super::format::g6;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const TICKS: usize = 5;

/// Simulated point with its interval on the y axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimPoint {
    pub x: f64,
    pub y: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub technique: Technique,
    pub analytic: Vec<(f64, f64)>,
    pub simulated: Vec<SimPoint>,
}

fn color(t: Technique) -> &'static str {
    match t {
        Technique::PureAloha => "#d62728",
        Technique::SlottedAloha => "#ff7f0e",
        Technique::Csma1p => "#8c564b",
        Technique::CsmaCa => "#2ca02c",
        Technique::Tdma => "#1f77b4",
        Technique::Fdma => "#9467bd",
    }
}

fn axis_labels(r: Relation) -> (&'static str, &'static str) {
    match r {
        Relation::DelayVsLoad => ("offered load G", "delay (packet times)"),
        Relation::ThroughputVsLoad => ("offered load G", "throughput S"),
        Relation::DelayVsThroughput => ("throughput S", "delay (packet times)"),
    }
}

/// Series for one relation, in table row order.
pub fn series_from_table(table: &SweepTable, relation: Relation) -> Vec<Series> {
    let mut out: Vec<Series> = Vec::new();
    for row in &table.rows {
        if out.last().is_none_or(|s| s.technique != row.technique) {
            out.push(Series { technique: row.technique, analytic: Vec::new(), simulated: Vec::new() });
        }
        let s = out.last_mut().expect("pushed above");
        let (ax, ay, sim) = match relation {
            Relation::ThroughputVsLoad => (
                Some(row.g),
                row.s_analytic,
                SimPoint { x: row.g, y: row.s_sim_mean, y_lo: row.s_sim_ci95_lo, y_hi: row.s_sim_ci95_hi },
            ),
            Relation::DelayVsLoad => (
                Some(row.g),
                row.d_analytic,
                SimPoint { x: row.g, y: row.d_sim_mean, y_lo: row.d_sim_ci95_lo, y_hi: row.d_sim_ci95_hi },
            ),
            Relation::DelayVsThroughput => (
                row.s_analytic,
                row.d_analytic,
                SimPoint { x: row.s_sim_mean, y: row.d_sim_mean, y_lo: row.d_sim_ci95_lo, y_hi: row.d_sim_ci95_hi },
            ),
        };
        if let (Some(x), Some(y)) = (ax, ay) {
            if x.is_finite() && y.is_finite() {
                s.analytic.push((x, y));
            }
        }
        if [sim.x, sim.y, sim.y_lo, sim.y_hi].iter().all(|v| v.is_finite()) {
            s.simulated.push(sim);
        }
    }
    out
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let lo = lo.min(0.0);
    if hi - lo < 1e-12 {
        (lo, lo + 1.0)
    } else {
        (lo, hi + 0.05 * (hi - lo))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders one relation. Every series contributes exactly one polyline,
/// even when it has no analytic points.
pub fn render(relation: Relation, title: &str, series: &[Series]) -> String {
    let xs = series
        .iter()
        .flat_map(|s| s.analytic.iter().map(|p| p.0).chain(s.simulated.iter().map(|p| p.x)));
    let ys = series.iter().flat_map(|s| {
        s.analytic.iter().map(|p| p.1).chain(s.simulated.iter().flat_map(|p| [p.y_lo, p.y_hi]))
    });
    let (x0, x1) = extent(xs);
    let (y0, y1) = extent(ys);
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let py = |y: f64| TOP + ph - (y - y0) / (y1 - y0) * ph;
    let (xl, yl) = axis_labels(relation);

    let mut o = String::new();
    let _ = writeln!(o, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        o,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(o, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(o, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, LEFT + pw / 2.0, escape(title));
    let _ = writeln!(
        o,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let f = i as f64 / TICKS as f64;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let (tx, ty) = (px(xv), py(yv));
        let _ = writeln!(o, r#"<line x1="{tx:.2}" y1="{:.2}" x2="{tx:.2}" y2="{:.2}" stroke="black"/>"#, TOP + ph, TOP + ph + 5.0);
        let _ = writeln!(o, r#"<text x="{tx:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, TOP + ph + 18.0, g6(xv));
        let _ = writeln!(o, r#"<line x1="{:.2}" y1="{ty:.2}" x2="{LEFT}" y2="{ty:.2}" stroke="black"/>"#, LEFT - 5.0);
        let _ = writeln!(o, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 8.0, ty + 4.0, g6(yv));
    }
    let _ = writeln!(o, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{xl}</text>"#, LEFT + pw / 2.0, HEIGHT - 12.0);
    let _ = writeln!(
        o,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{yl}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    );

    for (i, s) in series.iter().enumerate() {
        let c = color(s.technique);
        let name = s.technique.name();
        let pts: Vec<String> = s.analytic.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(
            o,
            r#"<polyline data-technique="{name}" fill="none" stroke="{c}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
        for p in &s.simulated {
            let x = px(p.x);
            let _ = writeln!(
                o,
                r#"<line data-technique="{name}" x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="{c}"/>"#,
                py(p.y_lo),
                py(p.y_hi)
            );
            let _ = writeln!(o, r#"<circle data-technique="{name}" cx="{x:.2}" cy="{:.2}" r="3" fill="{c}"/>"#, py(p.y));
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(o, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{c}" stroke-width="1.5"/>"#, lx + 20.0);
        let _ = writeln!(o, r#"<text x="{}" y="{}">{name}</text>"#, lx + 26.0, ly + 4.0);
    }
    o.push_str("</svg>\n");
    o
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_polyline_per_series() {
        let series = vec![
            Series {
                technique: Technique::Tdma,
                analytic: vec![(0.1, 1.0), (0.2, 2.0)],
                simulated: vec![SimPoint { x: 0.1, y: 1.1, y_lo: 1.0, y_hi: 1.2 }],
            },
            Series { technique: Technique::Fdma, analytic: vec![], simulated: vec![] },
        ];
        let svg = render(Relation::DelayVsLoad, "t", &series);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.starts_with("<?xml") && svg.ends_with("</svg>\n"));
        assert!(!svg.contains("href"));
    }

    #[test]
    fn empty_plot_is_well_formed() {
        let svg = render(Relation::ThroughputVsLoad, "a & b", &[]);
        assert!(svg.contains("a &amp; b"));
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
