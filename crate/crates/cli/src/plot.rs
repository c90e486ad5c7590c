use std::fmt::Write as _;
use std::io::Read;

use hawksteer::Pair;

use crate::error::{CliError, Result};

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 500.0;

const TOP: f64 = 60.0;
const PLOT_HEIGHT: f64 = 340.0;
const PLOT_WIDTH: f64 = 300.0;
const LEFTS: [f64; 2] = [75.0, 475.0];
const COLORS: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Panel {
    Fig1,
    Fig2,
    Fig3,
}

impl Panel {
    pub fn pair(self) -> Pair {
        match self {
            Panel::Fig1 => Pair::AB,
            Panel::Fig2 => Pair::ABbar,
            Panel::Fig3 => Pair::BBbar,
        }
    }

    fn modes(self) -> (&'static str, &'static str) {
        match self {
            Panel::Fig1 => ("A", "B"),
            Panel::Fig2 => ("A", "B\u{304}"),
            Panel::Fig3 => ("B", "B\u{304}"),
        }
    }
}

/// Numeric columns of a sweep CSV; empty cells are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl SweepTable {
    pub fn read<R: Read>(input: R) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(input);
        let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for (line, rec) in reader.records().enumerate() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|c| {
                    if c.is_empty() {
                        Ok(None)
                    } else {
                        c.parse::<f64>()
                            .map(Some)
                            .map_err(|_| CliError::Malformed(format!("row {}: `{c}` is not a number", line + 2)))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Ok(SweepTable { header, rows })
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    fn column(&self, idx: usize) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r.get(idx).copied().flatten()).collect()
    }
}

struct Curve {
    label: String,
    points: Vec<(f64, f64)>,
    dashed: bool,
}

struct Axis {
    lo: f64,
    hi: f64,
    ticks: Vec<f64>,
    decimals: usize,
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let step = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    step * mag
}

fn axis(lo: f64, hi: f64, pad_hi: bool) -> Axis {
    let (lo, hi) = if hi > lo { (lo, hi) } else { (lo, lo + 1.0) };
    let step = nice_step(hi - lo);
    let hi = if pad_hi { (hi / step).ceil() * step } else { hi };
    let first = (lo / step).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    let ticks = (first..=last).map(|k| k as f64 * step).collect();
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    Axis { lo, hi, ticks, decimals }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn subplot(svg: &mut String, left: f64, title: &str, y_label: &str, x: &Axis, curves: &[Curve]) {
    let ymax = curves.iter().flat_map(|c| c.points.iter().map(|p| p.1)).fold(0.0f64, f64::max);
    let y = axis(0.0, if ymax > 0.0 { ymax } else { 1.0 }, true);
    let bottom = TOP + PLOT_HEIGHT;
    let sx = |v: f64| left + (v - x.lo) / (x.hi - x.lo) * PLOT_WIDTH;
    let sy = |v: f64| bottom - (v - y.lo) / (y.hi - y.lo) * PLOT_HEIGHT;

    let _ = writeln!(svg, "<g>");
    let _ = writeln!(
        svg,
        r##"<rect x="{left:.2}" y="{TOP:.2}" width="{PLOT_WIDTH:.2}" height="{PLOT_HEIGHT:.2}" fill="none" stroke="#000000"/>"##
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="14">{}</text>"#,
        left + PLOT_WIDTH / 2.0,
        TOP - 15.0,
        escape(title)
    );
    for &t in &x.ticks {
        let px = sx(t);
        let _ = writeln!(
            svg,
            r##"<line x1="{px:.2}" y1="{bottom:.2}" x2="{px:.2}" y2="{:.2}" stroke="#000000"/>"##,
            bottom + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle" font-size="11">{:.*}</text>"#,
            bottom + 18.0,
            x.decimals,
            t
        );
    }
    for &t in &y.ticks {
        let py = sy(t);
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{py:.2}" x2="{left:.2}" y2="{py:.2}" stroke="#000000"/>"##,
            left - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-size="11">{:.*}</text>"#,
            left - 8.0,
            py + 4.0,
            y.decimals,
            t
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">T/ω</text>"#,
        left + PLOT_WIDTH / 2.0,
        bottom + 40.0
    );
    let (lx, ly) = (left - 50.0, TOP + PLOT_HEIGHT / 2.0);
    let _ = writeln!(
        svg,
        r#"<text x="{lx:.2}" y="{ly:.2}" text-anchor="middle" font-size="13" transform="rotate(-90 {lx:.2} {ly:.2})">{}</text>"#,
        escape(y_label)
    );

    for (k, c) in curves.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        if !c.points.is_empty() {
            let pts: Vec<String> = c.points.iter().map(|&(a, b)| format!("{:.2},{:.2}", sx(a), sy(b))).collect();
            let dash = if c.dashed { r#" stroke-dasharray="6 4""# } else { "" };
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#,
                pts.join(" ")
            );
        }
        let ly = TOP + 15.0 + 16.0 * k as f64;
        let lx = left + PLOT_WIDTH - 120.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="1.5"/>"#,
            lx + 20.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="11">{}</text>"#,
            lx + 25.0,
            ly + 4.0,
            escape(&c.label)
        );
    }
    let _ = writeln!(svg, "</g>");
}

/// Renders one figure (entropy subplot left, entanglement subplot right) from
/// a sweep table.
pub fn render(table: &SweepTable, panel: Panel) -> Result<String> {
    let pair = panel.pair();
    let t_idx =
        table.column_index("t_over_omega").ok_or_else(|| CliError::Malformed("no t_over_omega column".into()))?;
    let xs = table.column(t_idx);
    let column = |field: &str| -> Result<Vec<Option<f64>>> {
        let name = format!("{}_{field}", pair.label());
        let idx = table.column_index(&name).ok_or(CliError::MissingColumn { pair: pair.label(), column: name })?;
        Ok(table.column(idx))
    };
    let (first, second) = panel.modes();
    let curve = |field: &str, label: String, dashed: bool| -> Result<Curve> {
        let ys = column(field)?;
        let points = xs.iter().zip(ys).filter_map(|(x, y)| Some(((*x)?, y?))).collect();
        Ok(Curve { label, points, dashed })
    };

    let xmin = xs.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    let xmax = xs.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(xmin.is_finite() && xmax.is_finite()) {
        return Err(CliError::Malformed("the sweep has no rows".into()));
    }
    let x = axis(xmin, xmax, false);

    let entropy = [
        curve("s_ab", format!("S {first}→{second}"), false)?,
        curve("s_ba", format!("S {second}→{first}"), false)?,
        curve("s_delta", "S asymmetry".into(), true)?,
    ];
    let ent = [
        curve("t_ab", format!("T {first}→{second}"), false)?,
        curve("t_ba", format!("T {second}→{first}"), false)?,
        curve("t_delta", "T asymmetry".into(), true)?,
    ];

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
    );
    let _ = writeln!(svg, r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##);
    subplot(&mut svg, LEFTS[0], &format!("(a) {first}{second} entropy-based"), "steerability S", &x, &entropy);
    subplot(&mut svg, LEFTS[1], &format!("(b) {first}{second} entanglement-based"), "steerability T", &x, &ent);
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CSV: &str = "t_over_omega,c_sq,s_sq,AB_s_ab,AB_s_ba,AB_s_delta,AB_t_ab,AB_t_ba,AB_t_delta,AB_concurrence\n\
                       0.0,1.0,0.0,1.0,1.0,0.0,1.0,1.0,0.0,1.0\n\
                       1.0,0.7,0.3,0.5,0.4,0.1,0.6,0.5,0.1,0.8\n";

    #[test]
    fn three_curves_per_subplot() {
        let t = SweepTable::read(CSV.as_bytes()).unwrap();
        let svg = render(&t, Panel::Fig1).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 6);
        assert!(svg.contains("T/ω"));
        assert!(svg.contains(r#"width="800" height="500""#));
    }

    #[test]
    fn missing_pair_is_named() {
        let t = SweepTable::read(CSV.as_bytes()).unwrap();
        let err = render(&t, Panel::Fig3).unwrap_err();
        assert!(err.to_string().contains("BBbar"), "{err}");
    }

    #[test]
    fn empty_measure_draws_no_polyline() {
        let csv = "t_over_omega,c_sq,s_sq,AB_s_ab,AB_s_ba,AB_s_delta,AB_t_ab,AB_t_ba,AB_t_delta,AB_concurrence\n\
                   0.0,1.0,0.0,,,,1.0,1.0,0.0,1.0\n\
                   1.0,0.7,0.3,,,,0.6,0.5,0.1,0.8\n";
        let svg = render(&SweepTable::read(csv.as_bytes()).unwrap(), Panel::Fig1).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 3);
    }

    #[test]
    fn ticks_are_round() {
        let a = axis(0.0, 8.0, false);
        assert_eq!(a.ticks, vec![0.0, 2.0, 4.0, 6.0, 8.0]);
        let b = axis(0.0, 0.37, true);
        assert!((b.hi - 0.4).abs() < 1e-12);
        assert_eq!(b.decimals, 1);
    }
}
