//! SVG 1.1 renderings: annotated correlation heatmaps and overlaid pair plots.
//! Output is byte-deterministic for identical input.

use std::fmt::Write;

use super::report::{check_schema, shared_histogram, subsample_indices, DEFAULT_BINS};
use crate::data::{CorrelationMatrix, Dataset};
use crate::error::{Error, Result};
use crate::numerics::Matrix;

pub const MAX_PAIRPLOT_COLUMNS: usize = 8;

const CELL: f64 = 84.0;
const LABEL_GUTTER: f64 = 150.0;
const TITLE_BAND: f64 = 44.0;
const PANEL: f64 = 170.0;
const PANEL_GAP: f64 = 14.0;
const REAL_COLOR: &str = "#1f77b4";
const SYNTH_COLOR: &str = "#ff7f0e";

const NEG: (f64, f64, f64) = (59.0, 76.0, 192.0);
const MID: (f64, f64, f64) = (247.0, 247.0, 247.0);
const POS: (f64, f64, f64) = (180.0, 4.0, 38.0);

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Blue-white-red color for a value in [-1, 1], anchored at -1, 0 and +1.
pub fn diverging_color(v: f64) -> String {
    let v = if v.is_nan() { 0.0 } else { v.clamp(-1.0, 1.0) };
    let (from, to, t) = if v < 0.0 {
        (MID, NEG, -v)
    } else {
        (MID, POS, v)
    };
    let lerp = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        lerp(from.0, to.0),
        lerp(from.1, to.1),
        lerp(from.2, to.2)
    )
}

/// Two-decimal annotation without a negative zero.
pub fn annotate(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="Helvetica, Arial, sans-serif">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#
    );
}

pub fn render_heatmap(m: &CorrelationMatrix) -> String {
    render_matrix_heatmap(m.labels(), m.matrix(), "Correlation matrix")
}

/// Heatmap of any square labeled matrix; colors saturate outside [-1, 1].
pub fn render_matrix_heatmap(labels: &[String], m: &Matrix, title: &str) -> String {
    let k = labels.len();
    let legend = 70.0;
    let width = LABEL_GUTTER + CELL * k as f64 + legend;
    let height = TITLE_BAND + CELL * k as f64 + LABEL_GUTTER;
    let mut out = String::new();
    header(&mut out, width, height);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="28" font-size="18" text-anchor="middle">{}</text>"#,
        width / 2.0,
        escape(title)
    );
    for i in 0..k {
        for j in 0..k {
            let v = m[(i, j)];
            let x = LABEL_GUTTER + CELL * j as f64;
            let y = TITLE_BAND + CELL * i as f64;
            let text_color = if v.abs() > 0.6 { "white" } else { "black" };
            let _ = writeln!(
                out,
                r#"<rect x="{x:.1}" y="{y:.1}" width="{CELL:.1}" height="{CELL:.1}" fill="{}" stroke="white" stroke-width="1"/>"#,
                diverging_color(v)
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.1}" y="{:.1}" font-size="15" text-anchor="middle" dominant-baseline="middle" fill="{text_color}">{}</text>"#,
                x + CELL / 2.0,
                y + CELL / 2.0,
                annotate(v)
            );
        }
    }
    for (i, label) in labels.iter().enumerate() {
        let label = escape(label);
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="13" text-anchor="end" dominant-baseline="middle">{label}</text>"#,
            LABEL_GUTTER - 8.0,
            TITLE_BAND + CELL * (i as f64 + 0.5)
        );
        let cx = LABEL_GUTTER + CELL * (i as f64 + 0.5);
        let cy = TITLE_BAND + CELL * k as f64 + 10.0;
        let _ = writeln!(
            out,
            r#"<text x="{cx:.1}" y="{cy:.1}" font-size="13" text-anchor="end" transform="rotate(-45 {cx:.1} {cy:.1})">{label}</text>"#
        );
    }
    // Color bar from +1 (top) to -1 (bottom).
    let bar_x = LABEL_GUTTER + CELL * k as f64 + 20.0;
    let bar_h = CELL * k as f64;
    let steps = 40;
    for s in 0..steps {
        let v = 1.0 - 2.0 * (s as f64 + 0.5) / steps as f64;
        let _ = writeln!(
            out,
            r#"<rect x="{bar_x:.1}" y="{:.2}" width="14" height="{:.2}" fill="{}"/>"#,
            TITLE_BAND + bar_h * s as f64 / steps as f64,
            bar_h / steps as f64 + 0.01,
            diverging_color(v)
        );
    }
    for (v, frac) in [(1.0, 0.0), (0.0, 0.5), (-1.0, 1.0)] {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="11" dominant-baseline="middle">{}</text>"#,
            bar_x + 18.0,
            TITLE_BAND + bar_h * frac,
            annotate(v)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// k x k grid: overlaid histograms on the diagonal, overlaid scatter elsewhere.
/// Real data is drawn in blue, synthetic in orange.
pub fn render_pairplot(real: &Dataset, synth: &Dataset) -> Result<String> {
    check_schema(real, synth)?;
    let k = real.n_cols();
    if k == 0 || k > MAX_PAIRPLOT_COLUMNS {
        return Err(Error::Shape(format!(
            "pair plot supports 1 to {MAX_PAIRPLOT_COLUMNS} columns, got {k}"
        )));
    }
    let hists: Vec<_> = real
        .names()
        .iter()
        .zip(real.columns().iter().zip(synth.columns()))
        .map(|(n, (r, s))| shared_histogram(n, r, s, DEFAULT_BINS))
        .collect();
    let ranges: Vec<(f64, f64)> = hists
        .iter()
        .map(|h| (h.edges[0], *h.edges.last().expect("edges")))
        .collect();
    let real_idx = subsample_indices(real.n_rows(), 1000, super::report::DEFAULT_SCATTER_SEED);
    let synth_idx = subsample_indices(synth.n_rows(), 1000, super::report::DEFAULT_SCATTER_SEED);

    let left = 60.0;
    let top = 56.0;
    let size = left + k as f64 * (PANEL + PANEL_GAP) + 20.0;
    let height = top + k as f64 * (PANEL + PANEL_GAP) + 40.0;
    let mut out = String::new();
    header(&mut out, size, height);
    let _ = writeln!(
        out,
        r#"<text x="{left:.1}" y="24" font-size="16">Pair plot</text>"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="{:.1}" y="34" width="10" height="10" fill="{REAL_COLOR}"/><text x="{:.1}" y="43" font-size="12">real (n={})</text>"#,
        left,
        left + 14.0,
        real.n_rows()
    );
    let _ = writeln!(
        out,
        r#"<rect x="{:.1}" y="34" width="10" height="10" fill="{SYNTH_COLOR}"/><text x="{:.1}" y="43" font-size="12">synthetic (n={})</text>"#,
        left + 130.0,
        left + 144.0,
        synth.n_rows()
    );

    let to_px = |v: f64, (lo, hi): (f64, f64)| (v - lo) / (hi - lo) * PANEL;
    for i in 0..k {
        for j in 0..k {
            let x0 = left + j as f64 * (PANEL + PANEL_GAP);
            let y0 = top + i as f64 * (PANEL + PANEL_GAP);
            let _ = writeln!(
                out,
                r##"<g transform="translate({x0:.1},{y0:.1})"><rect x="0" y="0" width="{PANEL:.1}" height="{PANEL:.1}" fill="none" stroke="#999999"/>"##
            );
            if i == j {
                let h = &hists[i];
                let density = |c: usize, n: usize| if n == 0 { 0.0 } else { c as f64 / n as f64 };
                let peak = h
                    .real_counts
                    .iter()
                    .map(|&c| density(c, real.n_rows()))
                    .chain(h.synth_counts.iter().map(|&c| density(c, synth.n_rows())))
                    .fold(0.0, f64::max)
                    .max(f64::MIN_POSITIVE);
                let bw = PANEL / h.real_counts.len() as f64;
                for (counts, n, color) in [
                    (&h.real_counts, real.n_rows(), REAL_COLOR),
                    (&h.synth_counts, synth.n_rows(), SYNTH_COLOR),
                ] {
                    for (b, &c) in counts.iter().enumerate() {
                        let bh = density(c, n) / peak * (PANEL - 6.0);
                        if bh <= 0.0 {
                            continue;
                        }
                        let _ = writeln!(
                            out,
                            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{color}" fill-opacity="0.45"/>"#,
                            b as f64 * bw,
                            PANEL - bh,
                            bw,
                            bh
                        );
                    }
                }
            } else {
                for (d, idx, color) in [
                    (real, &real_idx, REAL_COLOR),
                    (synth, &synth_idx, SYNTH_COLOR),
                ] {
                    let xs = d.column_at(j);
                    let ys = d.column_at(i);
                    for &r in idx.iter() {
                        let _ = writeln!(
                            out,
                            r#"<circle cx="{:.2}" cy="{:.2}" r="1.6" fill="{color}" fill-opacity="0.45"/>"#,
                            to_px(xs[r], ranges[j]),
                            PANEL - to_px(ys[r], ranges[i])
                        );
                    }
                }
            }
            out.push_str("</g>\n");
        }
    }
    for (j, name) in real.names().iter().enumerate() {
        let cx = left + j as f64 * (PANEL + PANEL_GAP) + PANEL / 2.0;
        let _ = writeln!(
            out,
            r#"<text x="{cx:.1}" y="{:.1}" font-size="12" text-anchor="middle">{}</text>"#,
            top + k as f64 * (PANEL + PANEL_GAP) + 14.0,
            escape(name)
        );
        let cy = top + j as f64 * (PANEL + PANEL_GAP) + PANEL / 2.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{cy:.1}" font-size="12" text-anchor="middle" transform="rotate(-90 {:.1} {cy:.1})">{}</text>"#,
            left - 12.0,
            left - 12.0,
            escape(name)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
