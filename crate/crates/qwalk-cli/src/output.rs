//! Deterministic CSV, JSON-lines, and dependency-free SVG output.

use std::fmt::Write as _;
use std::path::Path;

use qwalk::{Error, Result};

/// Floats are printed with 17 significant digits, so identical configs
/// produce byte-identical files.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// One output table: named parameter columns, then `value,method,residual`.
pub struct Table {
    pub param_names: Vec<String>,
    pub rows: Vec<TableRow>,
}

pub struct TableRow {
    pub params: Vec<String>,
    pub value: f64,
    pub method: String,
    pub residual: f64,
}

impl Table {
    pub fn new(param_names: &[&str]) -> Self {
        Table {
            param_names: param_names.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, params: Vec<String>, value: f64, method: &str, residual: f64) {
        assert_eq!(params.len(), self.param_names.len());
        self.rows.push(TableRow {
            params,
            value,
            method: method.to_string(),
            residual,
        });
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header = self
            .param_names
            .iter()
            .map(|s| s.as_str())
            .chain(["value", "method", "residual"])
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&header);
        out.push('\n');
        for row in &self.rows {
            for p in &row.params {
                out.push_str(p);
                out.push(',');
            }
            let _ = write!(
                out,
                "{},{},{}\n",
                fmt_float(row.value),
                row.method,
                fmt_float(row.residual)
            );
        }
        out
    }

    /// Pretty-printed view for the terminal.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let header = self
            .param_names
            .iter()
            .map(|s| s.as_str())
            .chain(["value", "method", "residual"])
            .collect::<Vec<_>>()
            .join("  ");
        let _ = writeln!(out, "{header}");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{}  {:.12}  {}  {:.3e}",
                row.params.join("  "),
                row.value,
                row.method,
                row.residual
            );
        }
        out
    }
}

pub fn write_file(path: &Path, content: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)
                .map_err(|e| Error::Config(format!("cannot create {}: {e}", dir.display())))?;
        }
    }
    std::fs::write(path, content)
        .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
}

/// One polyline series of an SVG plot.
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Minimal line/scatter SVG rendering of tabular data. The CSV is the
/// contract; this is a convenience view.
pub fn render_svg(title: &str, series: &[Series]) -> String {
    let (w, h) = (720.0, 480.0);
    let (ml, mr, mt, mb) = (70.0, 20.0, 40.0, 50.0);
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for s in series {
        for &(x, y) in &s.points {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
    }
    if !xmin.is_finite() || xmin == xmax {
        xmax = xmin + 1.0;
    }
    if !ymin.is_finite() || ymin == ymax {
        ymax = ymin + 1.0;
    }
    let pad = 0.05 * (ymax - ymin);
    let (ymin, ymax) = (ymin - pad, ymax + pad);
    let sx = |x: f64| ml + (x - xmin) / (xmax - xmin) * (w - ml - mr);
    let sy = |y: f64| h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb);
    let palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    );
    let _ = write!(
        svg,
        "<text x=\"{}\" y=\"24\" font-family=\"monospace\" font-size=\"15\" \
         text-anchor=\"middle\">{title}</text>\n",
        w / 2.0
    );
    // axes
    let _ = write!(
        svg,
        "<line x1=\"{ml}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n\
         <line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{}\" stroke=\"black\"/>\n",
        h - mb,
        w - mr,
        h - mb,
        h - mb
    );
    for (t, v) in [(0.0, xmin), (0.5, (xmin + xmax) / 2.0), (1.0, xmax)] {
        let x = ml + t * (w - ml - mr);
        let _ = write!(
            svg,
            "<text x=\"{x}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" \
             text-anchor=\"middle\">{v:.4}</text>\n",
            h - mb + 18.0
        );
    }
    for (t, v) in [(0.0, ymin), (0.5, (ymin + ymax) / 2.0), (1.0, ymax)] {
        let y = h - mb - t * (h - mt - mb);
        let _ = write!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" \
             text-anchor=\"end\">{v:.4}</text>\n",
            ml - 6.0,
            y + 4.0
        );
    }
    for (i, s) in series.iter().enumerate() {
        let color = palette[i % palette.len()];
        let mut d = String::new();
        for (k, &(x, y)) in s.points.iter().enumerate() {
            let _ = write!(d, "{}{:.2},{:.2} ", if k == 0 { "M" } else { "L" }, sx(x), sy(y));
        }
        let _ = write!(
            svg,
            "<path d=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            d.trim_end()
        );
        for &(x, y) in &s.points {
            let _ = write!(
                svg,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.2\" fill=\"{color}\"/>\n",
                sx(x),
                sy(y)
            );
        }
        let _ = write!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" \
             fill=\"{color}\">{}</text>\n",
            w - mr - 180.0,
            mt + 16.0 * (i as f64 + 1.0),
            s.label
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_has_17_digits() {
        assert_eq!(fmt_float(2.0 / 3.0), "6.6666666666666663e-1");
        assert_eq!(fmt_float(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn csv_deterministic() {
        let mut t = Table::new(&["m", "n"]);
        t.push(vec!["1".into(), "3".into()], 2.0 / 3.0, "closed-form", 0.0);
        let a = t.to_csv();
        let b = t.to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with("m,n,value,method,residual\n"));
    }
}
