//! Static SVG rendering of the bundle's CSV series.
//!
//! Every plot is a pure function of its CSV: the first column is the x axis
//! and each remaining column is drawn as one point series.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::CliError;

/// Series files known to a bundle and the titles they are drawn with.
pub const PLOTS: [(&str, &str); 6] = [
    ("subjectivity_scatter.csv", "Subjectivity of tweets"),
    ("polarity_scatter.csv", "Polarity of tweets"),
    ("combined_scatter.csv", "Subjectivity and polarity of tweets"),
    ("ck_curve.csv", "Clustering coefficient vs node degree"),
    ("degree_distribution.csv", "Degree distribution"),
    ("author_profiles.csv", "Author subjectivity vs local clustering"),
];

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN_L: f64 = 60.0;
const MARGIN_R: f64 = 130.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 50.0;
const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

#[derive(Debug, Default)]
pub struct PlotReport {
    pub written: Vec<String>,
    pub errors: Vec<String>,
}

/// Parsed numeric table: x label, series labels, rows of `(x, ys)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub x_label: String,
    pub series: Vec<String>,
    pub rows: Vec<(f64, Vec<f64>)>,
}

/// Reads the numeric columns of a CSV. For `author_profiles.csv` the id and
/// count columns are skipped so subjectivity becomes the x axis.
pub fn parse_table(text: &str, columns: Option<&[&str]>) -> Result<Table, String> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| e.to_string())?
        .iter()
        .map(str::to_string)
        .collect();
    let picks: Vec<usize> = match columns {
        Some(names) => names
            .iter()
            .map(|n| {
                header
                    .iter()
                    .position(|h| h == n)
                    .ok_or_else(|| format!("missing column {n:?}"))
            })
            .collect::<Result<_, _>>()?,
        None => (0..header.len()).collect(),
    };
    if picks.len() < 2 {
        return Err("need at least two columns".into());
    }
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        let mut vals = Vec::with_capacity(picks.len());
        for &c in &picks {
            let field = rec.get(c).unwrap_or("");
            let v: f64 = field
                .parse()
                .map_err(|_| format!("row {}: non-numeric value {field:?}", i + 2))?;
            vals.push(v);
        }
        rows.push((vals[0], vals[1..].to_vec()));
    }
    Ok(Table {
        x_label: header[picks[0]].clone(),
        series: picks[1..].iter().map(|&c| header[c].clone()).collect(),
        rows,
    })
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        return (lo - 1.0, hi + 1.0);
    }
    let pad = (hi - lo) * 0.05;
    (lo - pad, hi + pad)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders a scatter plot. Coordinates are written with two decimals so the
/// output is byte-stable.
pub fn render_svg(title: &str, table: &Table) -> String {
    let (x0, x1) = range(table.rows.iter().map(|r| r.0));
    let (y0, y1) = range(table.rows.iter().flat_map(|r| r.1.iter().copied()));
    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let sx = |x: f64| MARGIN_L + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| MARGIN_T + plot_h - (y - y0) / (y1 - y0) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        MARGIN_L + plot_w / 2.0,
        escape(title)
    );
    // axes
    let (bx, by) = (MARGIN_L, MARGIN_T + plot_h);
    let _ = writeln!(
        s,
        r#"<path d="M{bx:.2} {MARGIN_T:.2} V{by:.2} H{:.2}" fill="none" stroke="black"/>"#,
        MARGIN_L + plot_w
    );
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let xv = x0 + t * (x1 - x0);
        let yv = y0 + t * (y1 - y0);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{xv:.2}</text>"#,
            sx(xv),
            by + 16.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{yv:.2}</text>"#,
            bx - 6.0,
            sy(yv) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 12.0,
        escape(&table.x_label)
    );

    for (k, name) in table.series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(s, r#"<g fill="{color}" fill-opacity="0.8">"#);
        for (x, ys) in &table.rows {
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5"/>"#, sx(*x), sy(ys[k]));
        }
        s.push_str("</g>\n");
        let ly = MARGIN_T + 14.0 * k as f64;
        let lx = WIDTH - MARGIN_R + 12.0;
        let _ = writeln!(s, r#"<circle cx="{lx:.2}" cy="{:.2}" r="4" fill="{color}"/>"#, ly);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 8.0,
            ly + 4.0,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn columns_for(file: &str) -> Option<&'static [&'static str]> {
    match file {
        "author_profiles.csv" => Some(&["mean_subjectivity", "local_clustering"]),
        _ => None,
    }
}

/// Draws one SVG per known CSV present in `bundle`. Missing or unreadable
/// CSVs are reported and skipped.
pub fn plot_bundle(bundle: &Path, out: &Path) -> Result<PlotReport, CliError> {
    if !bundle.is_dir() {
        return Err(CliError::Read {
            path: bundle.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "bundle directory not found"),
        });
    }
    fs::create_dir_all(out).map_err(|source| CliError::Write {
        path: out.to_path_buf(),
        source,
    })?;
    let mut report = PlotReport::default();
    for (file, title) in PLOTS {
        let path = bundle.join(file);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => {
                report.errors.push(format!("{}: {e}", path.display()));
                continue;
            }
        };
        let table = match parse_table(&text, columns_for(file)) {
            Ok(t) => t,
            Err(e) => {
                report.errors.push(format!("{}: {e}", path.display()));
                continue;
            }
        };
        let svg_name = file.replace(".csv", ".svg");
        let target = out.join(&svg_name);
        fs::write(&target, render_svg(title, &table)).map_err(|source| CliError::Write {
            path: target.clone(),
            source,
        })?;
        report.written.push(svg_name);
    }
    Ok(report)
}
