//! Line-chart SVG emitter for reports.
//!
//! Deliberately dependency-free: a fixed 860×540 canvas, one polyline per
//! series, and axis labels taken from the column names. Series come from
//! the first text column when one exists (one polyline per distinct
//! value), otherwise every numeric column after the first is its own
//! series. Output is deterministic; structural tests count elements rather
//! than compare pixels.

use std::collections::BTreeMap;

use super::report::{Report, Value};
use crate::error::{Error, Result};

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 540.0;
const MARGIN_L: f64 = 80.0;
const MARGIN_R: f64 = 30.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 60.0;

const SERIES_COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

pub fn render_chart(report: &Report) -> Result<String> {
    if report.rows.is_empty() {
        return Err(Error::Config("cannot chart an empty report".into()));
    }
    let numeric: Vec<usize> = report
        .columns
        .iter()
        .enumerate()
        .filter(|(i, _)| report.rows.iter().all(|r| matches!(r[*i], Value::Num(_))))
        .map(|(i, _)| i)
        .collect();
    if numeric.len() < 2 {
        return Err(Error::Config(
            "charting needs at least two numeric columns".into(),
        ));
    }
    let x_col = numeric[0];
    let group_col = report
        .columns
        .iter()
        .enumerate()
        .find(|(i, _)| !numeric.contains(i))
        .map(|(i, _)| i);

    // (series label, points)
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    match group_col {
        Some(g) => {
            let y_col = *numeric.get(1).expect("checked above");
            for row in &report.rows {
                let label = match &row[g] {
                    Value::Text(s) => s.clone(),
                    Value::Num(x) => format!("{x}"),
                };
                let x = row[x_col].as_num().expect("numeric column");
                let y = row[y_col].as_num().expect("numeric column");
                series.entry(label).or_default().push((x, y));
            }
        }
        None => {
            for &y_col in &numeric[1..] {
                let pts = report
                    .rows
                    .iter()
                    .map(|row| {
                        (
                            row[x_col].as_num().expect("numeric column"),
                            row[y_col].as_num().expect("numeric column"),
                        )
                    })
                    .collect();
                series.insert(report.columns[y_col].name.clone(), pts);
            }
        }
    }

    let map_x = |x: f64| if report.x_log { x.ln() } else { x };
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for pts in series.values() {
        for &(x, y) in pts {
            if report.x_log && x <= 0.0 {
                return Err(Error::Config(format!(
                    "log-scale x axis requires positive values, got {x}"
                )));
            }
            x_min = x_min.min(map_x(x));
            x_max = x_max.max(map_x(x));
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    if x_max == x_min {
        x_max = x_min + 1.0;
    }
    if y_max == y_min {
        y_max = y_min + 1.0;
    }

    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let px = |x: f64| MARGIN_L + (map_x(x) - x_min) / (x_max - x_min) * plot_w;
    let py = |y: f64| MARGIN_T + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h;

    let x_label = &report.columns[x_col].name;
    let y_label = match group_col {
        Some(_) => report.columns[numeric[1]].name.clone(),
        None if numeric.len() == 2 => report.columns[numeric[1]].name.clone(),
        None => "value".to_string(),
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    // axes
    svg.push_str(&format!(
        "<line x1=\"{MARGIN_L}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        HEIGHT - MARGIN_B,
        WIDTH - MARGIN_R,
        HEIGHT - MARGIN_B
    ));
    svg.push_str(&format!(
        "<line x1=\"{MARGIN_L}\" y1=\"{MARGIN_T}\" x2=\"{MARGIN_L}\" y2=\"{}\" stroke=\"black\"/>\n",
        HEIGHT - MARGIN_B
    ));
    let axis_kind = if report.x_log { " (log)" } else { "" };
    svg.push_str(&format!(
        "<text class=\"x-axis-label\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" \
         font-size=\"14\">{}{axis_kind}</text>\n",
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 15.0,
        xml_escape(x_label)
    ));
    svg.push_str(&format!(
        "<text class=\"y-axis-label\" x=\"18\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\" \
         transform=\"rotate(-90 18 {})\">{}</text>\n",
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0,
        xml_escape(&y_label)
    ));
    // range annotations
    svg.push_str(&format!(
        "<text x=\"{MARGIN_L}\" y=\"{}\" font-size=\"11\">{}</text>\n",
        HEIGHT - MARGIN_B + 16.0,
        fmt_tick(unmap(x_min, report.x_log))
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\">{}</text>\n",
        WIDTH - MARGIN_R,
        HEIGHT - MARGIN_B + 16.0,
        fmt_tick(unmap(x_max, report.x_log))
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\">{}</text>\n",
        MARGIN_L - 6.0,
        HEIGHT - MARGIN_B,
        fmt_tick(y_min)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\">{}</text>\n",
        MARGIN_L - 6.0,
        MARGIN_T + 10.0,
        fmt_tick(y_max)
    ));

    for (i, (label, pts)) in series.iter().enumerate() {
        let color = SERIES_COLORS[i % SERIES_COLORS.len()];
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            coords.join(" ")
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"{color}\">{}</text>\n",
            WIDTH - MARGIN_R - 150.0,
            MARGIN_T + 16.0 * (i + 1) as f64,
            xml_escape(label)
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn unmap(v: f64, log: bool) -> f64 {
    if log {
        v.exp()
    } else {
        v
    }
}

fn fmt_tick(v: f64) -> String {
    format!("{v:.3e}")
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
