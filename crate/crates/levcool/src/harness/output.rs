//! CSV and SVG emission for sweep records and force scans.
//!
//! CSV layout: one flat header row, then one row per grid point in grid
//! order: axis columns, n_1x, n_2x, n_1z, n_2z (blank where not applicable),
//! stable, margin, dark_residual_x, dark_residual_z, error. Floats use
//! Rust's shortest round-trip scientific notation, so identical runs
//! produce byte-identical files.

use std::io::Write;
use std::path::Path;

use super::sweep::RunRecord;
use crate::optics::ForceScanRow;

fn fmt(x: f64) -> String {
    format!("{x:e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt).unwrap_or_default()
}

/// Render sweep records to CSV text.
pub fn records_csv_string(axis_names: &[String], records: &[RunRecord]) -> String {
    let mut out = String::new();
    for name in axis_names {
        out.push_str(name);
        out.push(',');
    }
    out.push_str("n_1x,n_2x,n_1z,n_2z,stable,margin,dark_residual_x,dark_residual_z,error\n");
    for r in records {
        for v in &r.axis_values {
            out.push_str(&fmt(*v));
            out.push(',');
        }
        let stable = match r.stable {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        let error = r.error.as_deref().unwrap_or("").replace(',', ";");
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            fmt_opt(r.n[0]),
            fmt_opt(r.n[1]),
            fmt_opt(r.n[2]),
            fmt_opt(r.n[3]),
            stable,
            fmt_opt(r.margin),
            fmt_opt(r.dark_residual_x),
            fmt_opt(r.dark_residual_z),
            error,
        ));
    }
    out
}

/// Write sweep records to a CSV file.
pub fn emit_csv(
    path: &Path,
    axis_names: &[String],
    records: &[RunRecord],
) -> std::io::Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(records_csv_string(axis_names, records).as_bytes())
}

/// Render a force scan to CSV text.
pub fn force_csv_string(rows: &[ForceScanRow]) -> String {
    let mut out = String::from("r0_over_lambda,fx_exact,fx_farfield,fz_exact,fz_farfield\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt(r.r0_over_lambda),
            fmt(r.fx_exact),
            fmt(r.fx_farfield),
            fmt(r.fz_exact),
            fmt(r.fz_farfield)
        ));
    }
    out
}

pub fn emit_force_csv(path: &Path, rows: &[ForceScanRow]) -> std::io::Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(force_csv_string(rows).as_bytes())
}

const PLOT_W: f64 = 640.0;
const PLOT_H: f64 = 420.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_B: f64 = 50.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_R: f64 = 20.0;

const SERIES_COLORS: [&str; 4] = ["#2a7f3f", "#d08a00", "#2060b0", "#b03030"];
const SERIES_NAMES: [&str; 4] = ["n_1x", "n_2x", "n_1z", "n_2z"];

fn svg_header(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" \
         viewBox=\"0 0 {w:.0} {h:.0}\" font-family=\"monospace\" font-size=\"11\">\n\
         <rect width=\"{w:.0}\" height=\"{h:.0}\" fill=\"white\"/>\n"
    )
}

/// Render sweep records to an SVG plot: polylines over the axis for 1-axis
/// sweeps (log-scale phonon numbers), side-by-side heatmap panels for 2-axis
/// sweeps. Unstable/failed points are omitted from the plot but kept in the
/// CSV.
pub fn emit_svg(axis_names: &[String], records: &[RunRecord]) -> String {
    match axis_names.len() {
        1 => line_plot(&axis_names[0], records),
        _ => heatmap(axis_names, records),
    }
}

/// Write the SVG beside the data.
pub fn write_svg(path: &Path, axis_names: &[String], records: &[RunRecord]) -> std::io::Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(emit_svg(axis_names, records).as_bytes())
}

fn annotated_empty(msg: &str) -> String {
    let mut s = svg_header(PLOT_W, PLOT_H);
    s.push_str(&format!(
        "<text x=\"{:.0}\" y=\"{:.0}\" text-anchor=\"middle\" fill=\"#777\">{msg}</text>\n</svg>\n",
        PLOT_W / 2.0,
        PLOT_H / 2.0
    ));
    s
}

fn series_present(records: &[RunRecord]) -> Vec<usize> {
    (0..4)
        .filter(|&i| records.iter().any(|r| r.n[i].map(|v| v > 0.0).unwrap_or(false)))
        .collect()
}

fn line_plot(axis_name: &str, records: &[RunRecord]) -> String {
    let series = series_present(records);
    if series.is_empty() {
        return annotated_empty("no stable grid points to plot");
    }
    let xs: Vec<f64> = records.iter().map(|r| r.axis_values[0]).collect();
    let (xmin, xmax) = (
        xs.iter().cloned().fold(f64::INFINITY, f64::min),
        xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for r in records {
        for &i in &series {
            if let Some(v) = r.n[i] {
                if v > 0.0 {
                    ymin = ymin.min(v.log10());
                    ymax = ymax.max(v.log10());
                }
            }
        }
    }
    if !(ymax > ymin) {
        ymax = ymin + 1.0;
    }
    let x_of = |x: f64| MARGIN_L + (x - xmin) / (xmax - xmin).max(1e-300) * (PLOT_W - MARGIN_L - MARGIN_R);
    let y_of = |v: f64| {
        let t = (v.log10() - ymin) / (ymax - ymin);
        PLOT_H - MARGIN_B - t * (PLOT_H - MARGIN_T - MARGIN_B)
    };
    let mut s = svg_header(PLOT_W, PLOT_H);
    // axes
    s.push_str(&format!(
        "<line x1=\"{MARGIN_L}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"black\"/>\n\
         <line x1=\"{MARGIN_L}\" y1=\"{MARGIN_T}\" x2=\"{MARGIN_L}\" y2=\"{0}\" stroke=\"black\"/>\n",
        PLOT_H - MARGIN_B,
        PLOT_W - MARGIN_R
    ));
    for i in 0..=4 {
        let x = xmin + (xmax - xmin) * i as f64 / 4.0;
        let px = x_of(x);
        s.push_str(&format!(
            "<line x1=\"{px:.1}\" y1=\"{0}\" x2=\"{px:.1}\" y2=\"{1}\" stroke=\"black\"/>\n\
             <text x=\"{px:.1}\" y=\"{2}\" text-anchor=\"middle\">{x:.3}</text>\n",
            PLOT_H - MARGIN_B,
            PLOT_H - MARGIN_B + 5.0,
            PLOT_H - MARGIN_B + 18.0
        ));
        let ly = ymin + (ymax - ymin) * i as f64 / 4.0;
        let py = PLOT_H - MARGIN_B - (PLOT_H - MARGIN_T - MARGIN_B) * i as f64 / 4.0;
        s.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{py:.1}\" x2=\"{MARGIN_L}\" y2=\"{py:.1}\" stroke=\"black\"/>\n\
             <text x=\"{1}\" y=\"{2:.1}\" text-anchor=\"end\">1e{ly:.1}</text>\n",
            MARGIN_L - 5.0,
            MARGIN_L - 8.0,
            py + 4.0
        ));
    }
    s.push_str(&format!(
        "<text x=\"{:.0}\" y=\"{:.0}\" text-anchor=\"middle\">{axis_name}</text>\n",
        MARGIN_L + (PLOT_W - MARGIN_L - MARGIN_R) / 2.0,
        PLOT_H - 10.0
    ));
    for (si, &i) in series.iter().enumerate() {
        let mut pts = String::new();
        for r in records {
            if let Some(v) = r.n[i] {
                if v > 0.0 {
                    pts.push_str(&format!("{:.2},{:.2} ", x_of(r.axis_values[0]), y_of(v)));
                }
            }
        }
        s.push_str(&format!(
            "<polyline points=\"{pts}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
            SERIES_COLORS[i]
        ));
        s.push_str(&format!(
            "<text x=\"{:.0}\" y=\"{:.0}\" fill=\"{}\">{}</text>\n",
            PLOT_W - MARGIN_R - 60.0,
            MARGIN_T + 14.0 * (si + 1) as f64,
            SERIES_COLORS[i],
            SERIES_NAMES[i]
        ));
    }
    s.push_str("</svg>\n");
    s
}

fn ramp_color(t: f64) -> String {
    // dark blue -> yellow
    let t = t.clamp(0.0, 1.0);
    let r = (20.0 + 235.0 * t) as u8;
    let g = (30.0 + 190.0 * t) as u8;
    let b = (120.0 * (1.0 - t) + 40.0) as u8;
    format!("#{r:02x}{g:02x}{b:02x}")
}

fn heatmap(axis_names: &[String], records: &[RunRecord]) -> String {
    let series = series_present(records);
    if series.is_empty() {
        return annotated_empty("no stable grid points to plot");
    }
    let mut xs: Vec<f64> = records.iter().map(|r| r.axis_values[0]).collect();
    let mut ys: Vec<f64> = records.iter().map(|r| r.axis_values[1]).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    ys.sort_by(f64::total_cmp);
    ys.dedup();
    let (nx, ny) = (xs.len(), ys.len());
    let panel_w = 240.0;
    let panel_h = 240.0;
    let gap = 40.0;
    let total_w = MARGIN_L + series.len() as f64 * (panel_w + gap);
    let total_h = panel_h + MARGIN_T + MARGIN_B + 20.0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for r in records {
        for &i in &series {
            if let Some(v) = r.n[i] {
                if v > 0.0 {
                    lo = lo.min(v.log10());
                    hi = hi.max(v.log10());
                }
            }
        }
    }
    if !(hi > lo) {
        hi = lo + 1.0;
    }
    let mut s = svg_header(total_w, total_h);
    for (pi, &i) in series.iter().enumerate() {
        let ox = MARGIN_L + pi as f64 * (panel_w + gap);
        let oy = MARGIN_T + 10.0;
        s.push_str(&format!(
            "<text x=\"{:.0}\" y=\"{:.0}\" text-anchor=\"middle\">{} (log10)</text>\n",
            ox + panel_w / 2.0,
            MARGIN_T,
            SERIES_NAMES[i]
        ));
        let cw = panel_w / nx as f64;
        let ch = panel_h / ny as f64;
        for r in records {
            let xi = xs.iter().position(|&v| v == r.axis_values[0]).unwrap();
            let yi = ys.iter().position(|&v| v == r.axis_values[1]).unwrap();
            let color = match r.n[i] {
                Some(v) if v > 0.0 => ramp_color((v.log10() - lo) / (hi - lo)),
                _ => "#bbbbbb".to_string(),
            };
            s.push_str(&format!(
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{cw:.2}\" height=\"{ch:.2}\" fill=\"{color}\"/>\n",
                ox + xi as f64 * cw,
                oy + panel_h - (yi + 1) as f64 * ch
            ));
        }
        s.push_str(&format!(
            "<text x=\"{:.0}\" y=\"{:.0}\" text-anchor=\"middle\">{}</text>\n",
            ox + panel_w / 2.0,
            oy + panel_h + 16.0,
            axis_names[0]
        ));
    }
    s.push_str(&format!(
        "<text x=\"12\" y=\"{:.0}\" writing-mode=\"tb\">{}</text>\n",
        MARGIN_T + 10.0 + panel_h / 2.0,
        axis_names[1]
    ));
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::tests::REF3_CONFIG;
    use crate::harness::{run_sweep, RawConfig, SweepSpec};
    use crate::harness::sweep::Axis;
    use std::time::Duration;

    fn sample_records() -> (Vec<String>, Vec<RunRecord>) {
        let base = RawConfig::parse(REF3_CONFIG).unwrap();
        let spec = SweepSpec::new(
            base,
            vec![Axis { key: "detuning".into(), start: 0.8, stop: 1.2, count: 5, unit: None }],
        )
        .unwrap();
        (spec.axis_names(), run_sweep(&spec, Some(1)).unwrap())
    }

    #[test]
    fn csv_has_header_and_rows() {
        let (names, recs) = sample_records();
        let csv = records_csv_string(&names, &recs[..2]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(
            lines[0],
            "detuning,n_1x,n_2x,n_1z,n_2z,stable,margin,dark_residual_x,dark_residual_z,error"
        );
        // three-mode: z columns blank
        assert!(lines[1].contains(",,"));
    }

    #[test]
    fn csv_is_deterministic() {
        let (names, recs) = sample_records();
        let a = records_csv_string(&names, &recs);
        let b = records_csv_string(&names, &recs);
        assert_eq!(a.as_bytes(), b.as_bytes());
        // and a re-run of the whole sweep reproduces the bytes
        let (names2, recs2) = sample_records();
        let c = records_csv_string(&names2, &recs2);
        assert_eq!(a.as_bytes(), c.as_bytes());
    }

    #[test]
    fn svg_line_plot_contains_series() {
        let (names, recs) = sample_records();
        let svg = emit_svg(&names, &recs);
        assert!(svg.contains("<polyline"));
        assert!(svg.contains("n_1x"));
        assert!(svg.starts_with("<svg"));
    }

    #[test]
    fn all_unstable_sweep_yields_annotated_plot() {
        let recs = vec![RunRecord {
            axis_values: vec![1.0],
            params: Vec::new(),
            n: [None; 4],
            stable: Some(false),
            margin: Some(0.1),
            dark_residual_x: None,
            dark_residual_z: None,
            error: None,
            wall: Duration::ZERO,
        }];
        let svg = emit_svg(&["detuning".to_string()], &recs);
        assert!(svg.contains("no stable grid points"));
    }

    #[test]
    fn heatmap_renders_cells() {
        let base = RawConfig::parse(REF3_CONFIG).unwrap();
        let spec = SweepSpec::new(
            base,
            vec![
                Axis { key: "detuning".into(), start: 0.9, stop: 1.1, count: 3, unit: None },
                Axis { key: "kappa".into(), start: 0.1, stop: 0.3, count: 3, unit: None },
            ],
        )
        .unwrap();
        let recs = run_sweep(&spec, Some(1)).unwrap();
        let svg = emit_svg(&spec.axis_names(), &recs);
        assert!(svg.matches("<rect").count() > 9);
    }

    #[test]
    fn force_csv_layout() {
        let rows = vec![ForceScanRow {
            r0_over_lambda: 1.0,
            fx_exact: 1e-15,
            fx_farfield: 1.1e-15,
            fz_exact: -2e-15,
            fz_farfield: -2.1e-15,
        }];
        let csv = force_csv_string(&rows);
        assert!(csv.starts_with("r0_over_lambda,"));
        assert_eq!(csv.lines().count(), 2);
    }
}
