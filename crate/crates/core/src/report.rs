//! CSV and SVG output.
//!
//! Every writer is byte-deterministic: LF line endings, fixed column order,
//! and numbers rendered with [`format_sig6`].

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::metrics::{GlobalMetrics, NodeMetrics, Rational};
use crate::rank::{Measure, PairComparison, RankSeries};

pub const RANK_HEADER: [&str; 3] = ["rank", "value", "word"];

pub const SUMMARY_HEADER: [&str; 10] = [
    "label",
    "N",
    "K",
    "avg_degree",
    "avg_shortest_path",
    "diameter",
    "avg_clustering",
    "density",
    "components",
    "largest_component",
];

pub const NODE_HEADER: [&str; 11] = [
    "id", "word", "k_in", "k_out", "s_in", "s_out", "e_in", "e_out", "c_local", "d_avg", "in_largest",
];

pub const SIDE_BY_SIDE_HEADER: [&str; 6] = ["rank", "value_a", "word_a", "value_b", "word_b", "ratio_b_over_a"];

/// Renders like C's `%.6g`: six significant digits, trailing zeros trimmed,
/// scientific notation below 1e-4 and from 1e6 up.
pub fn format_sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let fixed = format!("{:.*}", (5 - exp) as usize, v);
        trim_fraction(&fixed).to_owned()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.to_integer().to_string();
    }
    format_sig6(r.to_f64().unwrap_or(f64::NAN))
}

pub fn format_big(r: &BigRational) -> String {
    if r.is_integer() {
        return r.to_integer().to_string();
    }
    format_sig6(r.to_f64().unwrap_or(f64::NAN))
}

fn opt(r: Option<&Rational>) -> String {
    r.map(format_rational).unwrap_or_default()
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn to_file<F>(path: &Path, fill: F) -> Result<()>
where
    F: FnOnce(&mut csv::Writer<fs::File>) -> csv::Result<()>,
{
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv_writer(file);
    let wrap = |source| Error::Csv {
        path: path.to_owned(),
        source,
    };
    fill(&mut w).map_err(wrap)?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_rank_csv<W: Write>(series: &RankSeries, out: W) -> csv::Result<()> {
    let mut w = csv_writer(out);
    fill_rank(&mut w, series)?;
    w.flush()?;
    Ok(())
}

fn fill_rank<W: Write>(w: &mut csv::Writer<W>, series: &RankSeries) -> csv::Result<()> {
    w.write_record(RANK_HEADER)?;
    for e in &series.entries {
        w.write_record([e.rank.to_string(), format_rational(&e.value), e.word.clone()])?;
    }
    Ok(())
}

pub fn export_rank_csv(series: &RankSeries, path: &Path) -> Result<()> {
    to_file(path, |w| fill_rank(w, series))
}

fn summary_record(label: &str, g: &GlobalMetrics) -> [String; 10] {
    [
        label.to_owned(),
        g.nodes.to_string(),
        g.edges.to_string(),
        format_rational(&g.avg_degree),
        opt(g.avg_shortest_path.as_ref()),
        g.diameter.map(|d| d.to_string()).unwrap_or_default(),
        format_big(&g.avg_clustering),
        opt(g.density.as_ref()),
        g.components.to_string(),
        g.largest_component.to_string(),
    ]
}

pub fn write_summary<W: Write>(rows: &[(&str, &GlobalMetrics)], out: W) -> csv::Result<()> {
    let mut w = csv_writer(out);
    fill_summary(&mut w, rows)?;
    w.flush()?;
    Ok(())
}

fn fill_summary<W: Write>(w: &mut csv::Writer<W>, rows: &[(&str, &GlobalMetrics)]) -> csv::Result<()> {
    w.write_record(SUMMARY_HEADER)?;
    for (label, g) in rows {
        w.write_record(summary_record(label, g))?;
    }
    Ok(())
}

/// One summary row per network, a first then b.
pub fn export_summary(comparison: &PairComparison, path: &Path) -> Result<()> {
    let rows = [
        (comparison.a.label.as_str(), &comparison.a.summary),
        (comparison.b.label.as_str(), &comparison.b.summary),
    ];
    export_summary_rows(&rows, path)
}

pub fn export_summary_rows(rows: &[(&str, &GlobalMetrics)], path: &Path) -> Result<()> {
    to_file(path, |w| fill_summary(w, rows))
}

pub fn export_node_metrics(nodes: &[NodeMetrics], path: &Path) -> Result<()> {
    to_file(path, |w| {
        w.write_record(NODE_HEADER)?;
        for m in nodes {
            w.write_record([
                m.id.to_string(),
                m.word.clone(),
                m.k_in.to_string(),
                m.k_out.to_string(),
                m.s_in.to_string(),
                m.s_out.to_string(),
                opt(m.e_in.as_ref()),
                opt(m.e_out.as_ref()),
                format_rational(&m.c_local),
                opt(m.d_avg.as_ref()),
                u8::from(m.d_avg.is_some()).to_string(),
            ])?;
        }
        Ok(())
    })
}

/// Both series of one measure aligned by rank, plus the value ratio b/a.
/// Rows run to the longer series; missing cells stay empty.
pub fn export_side_by_side(a: &RankSeries, b: &RankSeries, path: &Path) -> Result<()> {
    to_file(path, |w| {
        w.write_record(SIDE_BY_SIDE_HEADER)?;
        for i in 0..a.len().max(b.len()) {
            let ea = a.entries.get(i);
            let eb = b.entries.get(i);
            let ratio = match (ea, eb) {
                (Some(x), Some(y)) if *x.value.numer() != 0 => format_rational(&(y.value / x.value)),
                _ => String::new(),
            };
            w.write_record([
                (i + 1).to_string(),
                ea.map(|e| format_rational(&e.value)).unwrap_or_default(),
                ea.map(|e| e.word.clone()).unwrap_or_default(),
                eb.map(|e| format_rational(&e.value)).unwrap_or_default(),
                eb.map(|e| e.word.clone()).unwrap_or_default(),
                ratio,
            ])?;
        }
        Ok(())
    })
}

const SVG_WIDTH: f64 = 640.0;
const SVG_HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 2] = ["#1f77b4", "#d62728"];

/// Log-log rank plot with one polyline per series.
pub fn render_rank_svg(measure: Measure, series: &[(&str, &RankSeries)]) -> String {
    let logs = |s: &RankSeries| -> Vec<(f64, f64)> {
        s.entries
            .iter()
            .map(|e| {
                let v = e.value.to_f64().unwrap_or(f64::NAN);
                ((e.rank as f64).log10(), v.log10())
            })
            .collect()
    };
    let points: Vec<Vec<(f64, f64)>> = series.iter().map(|(_, s)| logs(s)).collect();
    let all = points.iter().flatten();
    let x_max = all.clone().map(|p| p.0).fold(0.0, f64::max).max(1.0);
    let (mut y_min, mut y_max) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        (lo.min(p.1), hi.max(p.1))
    });
    if !y_min.is_finite() {
        (y_min, y_max) = (0.0, 1.0);
    }
    if y_max - y_min < 1e-9 {
        y_min -= 0.5;
        y_max += 0.5;
    }
    let plot_w = SVG_WIDTH - 2.0 * MARGIN;
    let plot_h = SVG_HEIGHT - 2.0 * MARGIN;
    let sx = |x: f64| MARGIN + x / x_max * plot_w;
    let sy = |y: f64| SVG_HEIGHT - MARGIN - (y - y_min) / (y_max - y_min) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="30" text-anchor="middle" font-family="sans-serif" font-size="16">{} rank plot</text>"#,
        SVG_WIDTH / 2.0,
        measure.name()
    );
    let (x0, y0, x1, y1) = (MARGIN, SVG_HEIGHT - MARGIN, SVG_WIDTH - MARGIN, MARGIN);
    let _ = writeln!(
        svg,
        r#"<path d="M{x0:.2} {y1:.2} L{x0:.2} {y0:.2} L{x1:.2} {y0:.2}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="12">log10(rank)  [0, {}]</text>"#,
        SVG_WIDTH / 2.0,
        SVG_HEIGHT - MARGIN / 3.0,
        format_sig6(x_max)
    );
    let _ = writeln!(
        svg,
        r#"<text x="15" y="{:.2}" transform="rotate(-90 15 {:.2})" text-anchor="middle" font-family="sans-serif" font-size="12">log10(value)  [{}, {}]</text>"#,
        SVG_HEIGHT / 2.0,
        SVG_HEIGHT / 2.0,
        format_sig6(y_min),
        format_sig6(y_max)
    );
    for (i, ((label, _), pts)) in series.iter().zip(&points).enumerate() {
        let color = COLORS[i % COLORS.len()];
        if !pts.is_empty() {
            let coords: Vec<String> = pts
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                coords.join(" ")
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" fill="{color}" font-family="sans-serif" font-size="12">{}</text>"#,
            SVG_WIDTH - MARGIN - 150.0,
            MARGIN + 20.0 + 16.0 * i as f64,
            xml_escape(label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Paths written by [`write_comparison`], relative to the output directory.
pub fn rank_csv_path(side: char, measure: Measure) -> PathBuf {
    PathBuf::from(format!("rank_{side}")).join(format!("{}.csv", measure.name()))
}

/// Writes the full comparison tree:
///
/// ```text
/// summary.csv
/// rank_a/<measure>.csv        six files
/// rank_b/<measure>.csv        six files
/// side_by_side/<measure>.csv  six files
/// plots/<measure>.svg         six files, only with `svg`
/// ```
pub fn write_comparison(dir: &Path, comparison: &PairComparison, svg: bool) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let mkdir = |p: PathBuf| -> Result<PathBuf> {
        fs::create_dir_all(&p).map_err(|e| Error::io(&p, e))?;
        Ok(p)
    };
    mkdir(dir.to_owned())?;
    mkdir(dir.join("rank_a"))?;
    mkdir(dir.join("rank_b"))?;
    let side = mkdir(dir.join("side_by_side"))?;
    let plots = if svg { Some(mkdir(dir.join("plots"))?) } else { None };

    let summary = dir.join("summary.csv");
    export_summary(comparison, &summary)?;
    written.push(summary);
    for (measure, a, b) in comparison.series_pairs() {
        for (tag, s) in [('a', a), ('b', b)] {
            let p = dir.join(rank_csv_path(tag, measure));
            export_rank_csv(s, &p)?;
            written.push(p);
        }
        let p = side.join(format!("{}.csv", measure.name()));
        export_side_by_side(a, b, &p)?;
        written.push(p);
        if let Some(plots) = &plots {
            let p = plots.join(format!("{}.svg", measure.name()));
            let body = render_rank_svg(measure, &[(&comparison.a.label, a), (&comparison.b.label, b)]);
            fs::write(&p, body).map_err(|e| Error::io(&p, e))?;
            written.push(p);
        }
    }
    Ok(written)
}
