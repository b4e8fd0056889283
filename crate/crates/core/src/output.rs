//! CSV and SVG emission.
//!
//! CSV files start with `#`-prefixed metadata: a marker line followed by the
//! scenario as TOML, one line per `#`. Then comes the column header
//! `t,zeta` (or `t,zeta,zeta_oracle,abs_err`) and rows printed with 17
//! significant digits.

use std::fmt::Write as _;

use crate::scenario::{RunOutput, Scenario, ScenarioError};
use crate::series::TimeSeries;

const MARKER: &str = "# tcsim scenario";

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv(scenario: &Scenario, out: &RunOutput) -> String {
    let mut s = String::new();
    s.push_str(MARKER);
    s.push('\n');
    for line in scenario.to_toml().lines() {
        if line.is_empty() {
            s.push_str("#\n");
        } else {
            let _ = writeln!(s, "# {line}");
        }
    }
    match &out.oracle {
        None => {
            s.push_str("t,zeta\n");
            for (t, z) in out.closed.iter() {
                let _ = writeln!(s, "{},{}", num(t), num(z));
            }
        }
        Some(oracle) => {
            s.push_str("t,zeta,zeta_oracle,abs_err\n");
            for ((t, z), zo) in out.closed.iter().zip(oracle.values()) {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    num(t),
                    num(z),
                    num(*zo),
                    num((z - zo).abs())
                );
            }
        }
    }
    s
}

/// Contents of a CSV produced by [`write_csv`].
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub scenario: Option<Scenario>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ParsedCsv {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// The `zeta` column against `t`.
    pub fn zeta_series(&self) -> Result<TimeSeries, ScenarioError> {
        let missing = |c: &str| ScenarioError::Parse(format!("CSV has no `{c}` column"));
        let t = self.column("t").ok_or_else(|| missing("t"))?;
        let z = self.column("zeta").ok_or_else(|| missing("zeta"))?;
        Ok(TimeSeries::new(t, z)?)
    }
}

pub fn parse_csv(text: &str) -> Result<ParsedCsv, ScenarioError> {
    let mut meta = Vec::new();
    let mut marker = false;
    let mut lines = text.lines().peekable();
    while let Some(line) = lines.peek() {
        let Some(rest) = line.strip_prefix('#') else {
            break;
        };
        if *line == MARKER {
            marker = true;
        } else {
            meta.push(rest.strip_prefix(' ').unwrap_or(rest).to_string());
        }
        lines.next();
    }
    let scenario = if marker {
        Some(Scenario::parse(&meta.join("\n"))?)
    } else {
        None
    };
    let header = lines
        .next()
        .ok_or_else(|| ScenarioError::Parse("CSV has no header row".into()))?;
    let columns: Vec<String> = header.split(',').map(|c| c.trim().to_string()).collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| ScenarioError::Parse(format!("CSV row {}: {e}", i + 1)))?;
        if row.len() != columns.len() {
            return Err(ScenarioError::Parse(format!(
                "CSV row {} has {} fields, expected {}",
                i + 1,
                row.len(),
                columns.len()
            )));
        }
        rows.push(row);
    }
    Ok(ParsedCsv {
        scenario,
        columns,
        rows,
    })
}

/// Static SVG 1.1 line plot of one series.
pub fn render_svg(series: &TimeSeries, title: &str) -> String {
    const W: f64 = 720.0;
    const H: f64 = 360.0;
    const LEFT: f64 = 60.0;
    const RIGHT: f64 = 20.0;
    const TOP: f64 = 30.0;
    const BOTTOM: f64 = 45.0;

    let t = series.times();
    let (t0, t1) = (t[0], t[t.len() - 1]);
    let z_max = series.values().iter().copied().fold(0.5, f64::max);
    let px = |x: f64| LEFT + (x - t0) / (t1 - t0) * (W - LEFT - RIGHT);
    let py = |y: f64| H - BOTTOM - y / z_max * (H - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">
<rect width="100%" height="100%" fill="white"/>
<text x="{}" y="18" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    let (x0, x1, y0, y1) = (px(t0), px(t1), py(0.0), py(z_max));
    let _ = writeln!(
        s,
        r#"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" fill="none" stroke="black"/>"#
    );
    for k in 0..=5 {
        let tv = t0 + (t1 - t0) * k as f64 / 5.0;
        let x = px(tv);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            y0 + 4.0,
            y0 + 17.0,
            trim_num(tv)
        );
    }
    for k in 0..=5 {
        let zv = z_max * k as f64 / 5.0;
        let y = py(zv);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            x0 - 4.0,
            x0 - 7.0,
            y + 4.0,
            trim_num(zv)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle">t</text>"#,
        (x0 + x1) / 2.0,
        H - 8.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 16 {:.2})">linear entropy ζ</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
    s.push_str(r##"<polyline fill="none" stroke="#1f77b4" stroke-width="1" points=""##);
    for (i, (tv, zv)) in series.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{:.2},{:.2}", px(tv), py(zv));
    }
    s.push_str("\"/>\n</svg>\n");
    s
}

fn trim_num(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
