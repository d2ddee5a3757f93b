//! `conet` command-line front end.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use conet_core::metrics::{analyze, Analysis, GlobalMetrics, PathOptions};
use conet_core::rank::{compare_pair, Measure, NetworkProfile, PairComparison};
use conet_core::report::{self, format_big, format_rational};
use conet_core::{build_network, CoOccurrenceNetwork, PipelineConfig, RawDocument};

#[derive(Debug, Parser)]
#[command(name = "conet", version, about = "Word co-occurrence networks from plain text")]
pub struct Cli {
    /// pipeline configuration (TOML: terminators, keep_digits)
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// approximate path measures from N sampled sources
    #[arg(long, global = true, value_name = "N")]
    pub sample: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the weighted edge list of a text
    Build {
        text: PathBuf,
        /// edge-list file to write (default: the input path with a .tsv extension)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Global summary and per-node measures of one network
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Compare two networks: summary plus six rank series each
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        label_a: Option<String>,
        #[arg(long)]
        label_b: Option<String>,
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        format: InputFormat,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// also render log-log rank plots
        #[arg(long)]
        svg: bool,
    },
    /// Rank series of the six local measures for one network
    Rank {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        svg: bool,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// text file, or edge list (.tsv / .edges)
    pub input: PathBuf,
    #[arg(long)]
    pub label: Option<String>,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// edge list for .tsv/.edges files, text otherwise
    Auto,
    Text,
    Edges,
}

pub fn run(cli: Cli) -> Result<()> {
    let pipeline = match &cli.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    let opts = PathOptions { sample: cli.sample };
    match cli.command {
        Command::Build { text, out } => {
            let out = out.unwrap_or_else(|| text.with_extension("tsv"));
            cmd_build(&text, &out, &pipeline)
        }
        Command::Analyze { input, out } => cmd_analyze(&input, &out, &pipeline, opts),
        Command::Compare {
            a,
            b,
            label_a,
            label_b,
            format,
            out,
            svg,
        } => {
            let label_a = label_a.unwrap_or_else(|| default_label(&a));
            let label_b = label_b.unwrap_or_else(|| default_label(&b));
            cmd_compare([(&a, label_a), (&b, label_b)], format, &out, svg, &pipeline, opts)
        }
        Command::Rank { input, out, svg } => cmd_rank(&input, &out, svg, &pipeline, opts),
    }
}

fn default_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn text_network(path: &Path, pipeline: &PipelineConfig) -> Result<CoOccurrenceNetwork> {
    let doc = RawDocument::read(path)?;
    Ok(build_network(&pipeline.sentences(&doc.content)))
}

pub fn load_network(path: &Path, format: InputFormat, pipeline: &PipelineConfig) -> Result<CoOccurrenceNetwork> {
    let edges = match format {
        InputFormat::Edges => true,
        InputFormat::Text => false,
        InputFormat::Auto => matches!(
            path.extension().and_then(|e| e.to_str()),
            Some("tsv" | "edges")
        ),
    };
    if edges {
        Ok(CoOccurrenceNetwork::load_edge_list(path)?)
    } else {
        text_network(path, pipeline)
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))
}

pub fn cmd_build(text: &Path, out: &Path, pipeline: &PipelineConfig) -> Result<()> {
    let net = text_network(text, pipeline)?;
    if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
        ensure_dir(parent)?;
    }
    net.save_edge_list(out)?;
    println!("N={} K={}", net.node_count(), net.edge_count());
    println!("edge list written to {}", out.display());
    Ok(())
}

pub fn cmd_analyze(input: &InputArgs, out: &Path, pipeline: &PipelineConfig, opts: PathOptions) -> Result<()> {
    let net = load_network(&input.input, input.format, pipeline)?;
    if net.is_empty() {
        bail!("{}: network has no nodes", input.input.display());
    }
    let label = input.label.clone().unwrap_or_else(|| default_label(&input.input));
    let Analysis { global, nodes } = analyze(&net, opts)?;
    ensure_dir(out)?;
    report::export_summary_rows(&[(&label, &global)], &out.join("summary.csv"))?;
    report::export_node_metrics(&nodes, &out.join("nodes.csv"))?;
    print_summary(&label, &global);
    Ok(())
}

pub fn cmd_compare(
    inputs: [(&PathBuf, String); 2],
    format: InputFormat,
    out: &Path,
    svg: bool,
    pipeline: &PipelineConfig,
    opts: PathOptions,
) -> Result<()> {
    let [(path_a, label_a), (path_b, label_b)] = inputs;
    let net_a = load_network(path_a, format, pipeline)?;
    let net_b = load_network(path_b, format, pipeline)?;
    for (net, path) in [(&net_a, path_a), (&net_b, path_b)] {
        if net.is_empty() {
            bail!("{}: network has no nodes", path.display());
        }
    }
    let comparison = compare_pair(&net_a, &net_b, &label_a, &label_b, opts)?;
    report::write_comparison(out, &comparison, svg)?;
    print_comparison(&comparison);
    Ok(())
}

pub fn cmd_rank(
    input: &InputArgs,
    out: &Path,
    svg: bool,
    pipeline: &PipelineConfig,
    opts: PathOptions,
) -> Result<()> {
    let net = load_network(&input.input, input.format, pipeline)?;
    if net.is_empty() {
        bail!("{}: network has no nodes", input.input.display());
    }
    let label = input.label.clone().unwrap_or_else(|| default_label(&input.input));
    let profile = NetworkProfile::build(&label, &net, opts)?;
    ensure_dir(out)?;
    if svg {
        ensure_dir(&out.join("plots"))?;
    }
    for measure in Measure::ALL {
        let series = profile.series(measure);
        report::export_rank_csv(series, &out.join(format!("{}.csv", measure.name())))?;
        if svg {
            let body = report::render_rank_svg(measure, &[(&label, series)]);
            let p = out.join("plots").join(format!("{}.svg", measure.name()));
            fs::write(&p, body).with_context(|| format!("cannot write {}", p.display()))?;
        }
        println!("{:<16} {} nodes", measure.name(), series.len());
    }
    Ok(())
}

fn undefined_or(v: Option<String>) -> String {
    v.unwrap_or_else(|| "undefined".into())
}

fn print_summary(label: &str, g: &GlobalMetrics) {
    println!("{label}");
    println!("  nodes (N)              {}", g.nodes);
    println!("  edges (K)              {}", g.edges);
    println!("  average degree         {}", format_rational(&g.avg_degree));
    println!(
        "  avg shortest path (L)  {}",
        undefined_or(g.avg_shortest_path.as_ref().map(format_rational))
    );
    println!("  diameter (D)           {}", undefined_or(g.diameter.map(|d| d.to_string())));
    println!("  avg clustering (C)     {}", format_big(&g.avg_clustering));
    println!("  density (d)            {}", undefined_or(g.density.as_ref().map(format_rational)));
    println!("  components             {}", g.components);
    println!("  largest component      {}", g.largest_component);
}

fn print_comparison(c: &PairComparison) {
    for w in &c.warnings {
        println!("warning: {w}");
    }
    for p in [&c.a, &c.b] {
        print_summary(&p.label, &p.summary);
        println!(
            "  excluded (zero in/out degree)  {} / {}",
            format_rational(&p.excluded.zero_in_degree),
            format_rational(&p.excluded.zero_out_degree)
        );
    }
}
