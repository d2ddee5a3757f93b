//! Acceptance suite. Each criterion runs in sequence with its own time
//! budget and prints one PASS/FAIL line; the test fails if any criterion
//! does.
//!
//! Run with `cargo test -p conet-cli --test acceptance -- --nocapture` to see
//! the report.

use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use conet_cli::text_network;
use conet_core::metrics::{self, analyze, Direction, LocalCounts, PathOptions, Rational};
use conet_core::rank::{compare_pair, rank_series, Measure};
use conet_core::{build_network, CoOccurrenceNetwork, EdgeRecord, PipelineConfig, Sentence};
use conet_testkit::{self as kit, RandomDigraph};
use walkdir::WalkDir;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ratio(n: u64, d: u64) -> Rational {
    Rational::new(n, d)
}

fn int(n: u64) -> Rational {
    Rational::from_integer(n)
}

fn to_network(g: &RandomDigraph) -> CoOccurrenceNetwork {
    let mut net = CoOccurrenceNetwork::new();
    for i in 0..g.n {
        net.add_node(&RandomDigraph::word(i));
    }
    for &(s, d, w) in &g.edges {
        net.add_cooccurrences(s, d, w);
    }
    net
}

fn edges(list: &[(&str, &str, u64)]) -> CoOccurrenceNetwork {
    CoOccurrenceNetwork::from_edge_list(list.iter().map(|&(s, d, w)| EdgeRecord::new(s, d, w))).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn random_graphs(base: u64, count: u64, max_n: usize) -> impl Iterator<Item = RandomDigraph> {
    (0..count).map(move |i| RandomDigraph::generate(base.wrapping_add(i), max_n))
}

// 1. Selectivity of single synthetic nodes with known degree and strength.
fn table_rows() -> Outcome {
    // "i": four out-links carrying 7 co-occurrences in total
    let net = edges(&[("i", "am", 3), ("i", "do", 2), ("i", "want", 1), ("i", "will", 1)]);
    let i = net.id("i").unwrap();
    ensure!(metrics::degree(&net, i, Direction::Out) == 4, "k_out(i) != 4");
    ensure!(metrics::strength(&net, i, Direction::Out) == 7, "s_out(i) != 7");
    let e = metrics::selectivity(&net, i, Direction::Out);
    ensure!(e == Some(ratio(7, 4)), "e_out(i) = {e:?}, want 7/4");

    // "do": one in-link of weight 3
    let net = edges(&[("you", "do", 3)]);
    let e = metrics::selectivity(&net, net.id("do").unwrap(), Direction::In);
    ensure!(e == Some(int(3)), "e_in(do) = {e:?}, want 3");

    // "want": two in-links of weight 1
    let net = edges(&[("i", "want", 1), ("they", "want", 1)]);
    let want = net.id("want").unwrap();
    let e = metrics::selectivity(&net, want, Direction::In);
    ensure!(e == Some(int(1)), "e_in(want) = {e:?}, want 1");
    ensure!(metrics::selectivity(&net, want, Direction::Out).is_none(), "e_out(want) should be undefined");

    ensure!(metrics::selectivity_of(7, 4) == Some(ratio(7, 4)), "selectivity_of(7, 4)");
    ensure!(metrics::selectivity_of(3, 1) == Some(int(3)), "selectivity_of(3, 1)");
    ensure!(metrics::selectivity_of(2, 2) == Some(int(1)), "selectivity_of(2, 2)");
    Ok(())
}

// 2. Nodes with zero degree in a direction drop out of that direction's series.
fn zero_degree_exclusion() -> Outcome {
    for g in random_graphs(0x2000, 100, 60) {
        let net = to_network(&g);
        let nodes = analyze(&net, PathOptions::default()).map_err(|e| e.to_string())?.nodes;
        for (measures, in_dir) in [
            ([Measure::InDegree, Measure::InStrength, Measure::InSelectivity], true),
            ([Measure::OutDegree, Measure::OutStrength, Measure::OutSelectivity], false),
        ] {
            for m in measures {
                let series = rank_series(&nodes, m);
                for n in &nodes {
                    let (k, e) = if in_dir { (n.k_in, n.e_in) } else { (n.k_out, n.e_out) };
                    let listed = series.entries.iter().any(|x| x.word == n.word);
                    ensure!(e.is_some() == (k > 0), "seed graph n={}: {} selectivity defined with k={k}", g.n, n.word);
                    ensure!(listed == (k > 0), "{} in {m} series with k={k}", n.word);
                }
            }
        }
    }
    Ok(())
}

// 3. L, D, component count and every c_i against brute-force oracles.
fn oracle_equivalence() -> Outcome {
    for (i, g) in random_graphs(0x3000, 200, 50).enumerate() {
        let net = to_network(&g);
        let a = analyze(&net, PathOptions::default()).map_err(|e| e.to_string())?;
        let oracle = kit::path_oracle(&g).ok_or("empty graph")?;
        let size = oracle.members.len() as u64;
        let l = (size >= 2).then(|| ratio(oracle.ordered_pair_sum, size * (size - 1)));
        ensure!(a.global.avg_shortest_path == l, "graph {i}: L {:?} vs {l:?}", a.global.avg_shortest_path);
        ensure!(a.global.diameter == Some(oracle.diameter), "graph {i}: D {:?} vs {}", a.global.diameter, oracle.diameter);
        let labels = kit::flood_fill(&g);
        ensure!(
            a.global.components == kit::component_count(&labels),
            "graph {i}: components {} vs {}",
            a.global.components,
            kit::component_count(&labels)
        );
        for node in 0..g.n {
            let (num, den) = kit::clustering_brute(&g, node);
            let expected = ratio(num, den);
            ensure!(a.nodes[node].c_local == expected, "graph {i} node {node}: c {} vs {expected}", a.nodes[node].c_local);
        }
    }
    Ok(())
}

// 4. Degree and strength sums.
fn handshake() -> Outcome {
    let pipeline = PipelineConfig::default();
    let mut nets: Vec<CoOccurrenceNetwork> = random_graphs(0x4000, 200, 80).map(|g| to_network(&g)).collect();
    for seed in 0..50 {
        let raw = kit::random_sentences(seed, 30, 20);
        nets.push(build_network(&raw.iter().map(|s| Sentence::from_words(s.iter().cloned())).collect::<Vec<_>>()));
    }
    for f in ["formal.txt", "informal.txt"] {
        nets.push(text_network(&fixture(f), &pipeline).map_err(|e| e.to_string())?);
    }
    for net in &nets {
        let c = LocalCounts::of(net);
        let k = net.edge_count() as u64;
        let sum = |v: &[u64]| v.iter().sum::<u64>();
        ensure!(sum(&c.k_in) == k && sum(&c.k_out) == k, "degree sums {} {} vs K={k}", sum(&c.k_in), sum(&c.k_out));
        ensure!(sum(&c.s_in) == sum(&c.s_out), "strength sums {} vs {}", sum(&c.s_in), sum(&c.s_out));
        ensure!(sum(&c.s_in) == net.total_weight(), "strength sum vs total weight");
    }
    Ok(())
}

// 5. Edge construction from a token stream and from raw text.
fn construction() -> Outcome {
    let net = build_network(&[Sentence::from_words(["a", "b", "a", "b"])]);
    let want: BTreeMap<(&str, &str), u64> = [(("a", "b"), 2), (("b", "a"), 1)].into();
    ensure!(net.word_edges() == want, "[[a,b,a,b]] gave {:?}", net.word_edges());

    let net = build_network(&PipelineConfig::default().sentences("a b. a b."));
    let want: BTreeMap<(&str, &str), u64> = [(("a", "b"), 2)].into();
    ensure!(net.word_edges() == want, "\"a b. a b.\" gave {:?}", net.word_edges());
    ensure!(net.node_count() == 2 && net.edge_count() == 1, "N/K = {}/{}", net.node_count(), net.edge_count());
    Ok(())
}

// 6. Small graphs with hand-computed measures.
fn closed_forms() -> Outcome {
    let triangle = edges(&[("a", "b", 1), ("b", "c", 1), ("c", "a", 1), ("b", "a", 1), ("c", "b", 1), ("a", "c", 1)]);
    let g = analyze(&triangle, PathOptions::default()).map_err(|e| e.to_string())?.global;
    ensure!(g.avg_clustering == num_rational::BigRational::from_integer(1.into()), "triangle C = {}", g.avg_clustering);
    ensure!(g.density == Some(int(1)), "triangle d = {:?}", g.density);
    ensure!(g.avg_shortest_path == Some(int(1)), "triangle L = {:?}", g.avg_shortest_path);
    ensure!(g.diameter == Some(1), "triangle D = {:?}", g.diameter);
    ensure!(g.avg_degree == int(4), "complete 3-node <k> = {}", g.avg_degree);

    let path = edges(&[("a", "b", 1), ("b", "c", 1), ("c", "d", 1)]);
    let g = analyze(&path, PathOptions::default()).map_err(|e| e.to_string())?.global;
    ensure!(g.avg_shortest_path == Some(ratio(5, 3)), "4-path L = {:?}", g.avg_shortest_path);
    ensure!(g.diameter == Some(3), "4-path D = {:?}", g.diameter);
    Ok(())
}

// 7. Multiplying weights by 7 scales selectivity and nothing else.
fn scale_invariance() -> Outcome {
    for (i, g) in random_graphs(0x7000, 50, 60).enumerate() {
        let net = to_network(&g);
        let scaled = net.scale_weights(7);
        let a = analyze(&net, PathOptions::default()).map_err(|e| e.to_string())?;
        let b = analyze(&scaled, PathOptions::default()).map_err(|e| e.to_string())?;
        let (x, y) = (&a.global, &b.global);
        ensure!(
            x.avg_degree == y.avg_degree
                && x.avg_shortest_path == y.avg_shortest_path
                && x.diameter == y.diameter
                && x.avg_clustering == y.avg_clustering
                && x.density == y.density
                && x.components == y.components,
            "graph {i}: global measures changed"
        );
        for (p, q) in a.nodes.iter().zip(&b.nodes) {
            ensure!(p.e_in.map(|e| e * int(7)) == q.e_in, "graph {i} node {}: e_in", p.word);
            ensure!(p.e_out.map(|e| e * int(7)) == q.e_out, "graph {i} node {}: e_out", p.word);
        }
    }
    Ok(())
}

fn run_compare(out: &Path) -> Outcome {
    let o = Command::new(env!("CARGO_BIN_EXE_conet"))
        .arg("compare")
        .arg(fixture("formal.txt"))
        .arg(fixture("informal.txt"))
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(o.status.success(), "compare failed: {}", String::from_utf8_lossy(&o.stderr));
    Ok(())
}

fn tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    WalkDir::new(root)
        .into_iter()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_type().is_file())
        .map(|e| (e.path().strip_prefix(root).unwrap().to_path_buf(), fs::read(e.path()).unwrap()))
        .collect()
}

/// Parses a rank CSV and checks ranks are 1..n and values never increase.
fn check_rank_csv(path: &Path) -> Result<Vec<f64>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut lines = text.lines();
    ensure!(lines.next() == Some("rank,value,word"), "{}: bad header", path.display());
    let mut values = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.splitn(3, ',').collect();
        ensure!(fields.len() == 3, "{}: short row {line:?}", path.display());
        ensure!(fields[0] == (i + 1).to_string(), "{}: rank {} at row {}", path.display(), fields[0], i + 1);
        let v: f64 = fields[1].parse().map_err(|_| format!("{}: value {:?}", path.display(), fields[1]))?;
        ensure!(values.last().map_or(true, |&p| p >= v), "{}: increase at rank {}", path.display(), i + 1);
        values.push(v);
    }
    ensure!(!values.is_empty(), "{}: empty series", path.display());
    Ok(values)
}

// 8. Two compare runs give byte-identical trees with valid rank CSVs.
fn end_to_end_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (one, two) = (dir.path().join("one"), dir.path().join("two"));
    run_compare(&one)?;
    run_compare(&two)?;
    let (t1, t2) = (tree(&one), tree(&two));
    ensure!(!t1.is_empty(), "no output written");
    ensure!(t1 == t2, "output trees differ");
    let mut csvs = 0;
    for side in ["rank_a", "rank_b"] {
        for m in Measure::ALL {
            check_rank_csv(&one.join(side).join(format!("{}.csv", m.name())))?;
            csvs += 1;
        }
    }
    ensure!(csvs == 12, "{csvs} rank CSVs");
    Ok(())
}

// 9. Shape of the fixture rank series.
fn shape_check() -> Outcome {
    let pipeline = PipelineConfig::default();
    let a = text_network(&fixture("formal.txt"), &pipeline).map_err(|e| e.to_string())?;
    let b = text_network(&fixture("informal.txt"), &pipeline).map_err(|e| e.to_string())?;
    let c = compare_pair(&a, &b, "formal", "informal", PathOptions::default()).map_err(|e| e.to_string())?;
    for (m, sa, sb) in c.series_pairs() {
        for s in [sa, sb] {
            ensure!(!s.is_empty(), "{m}: empty series");
            ensure!(s.is_well_formed(), "{m}: series not non-increasing");
            if matches!(m, Measure::InSelectivity | Measure::OutSelectivity) {
                ensure!(s.entries.iter().all(|e| e.value >= int(1)), "{m}: value below 1");
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("selectivity of single-node rows", 1, table_rows),
        ("zero-degree exclusion, 100 networks", 10, zero_degree_exclusion),
        ("brute-force oracle equivalence, 200 graphs", 60, oracle_equivalence),
        ("handshake identities", 5, handshake),
        ("construction oracle", 1, construction),
        ("closed-form fixtures", 1, closed_forms),
        ("weight scaling by 7, 50 networks", 10, scale_invariance),
        ("end-to-end determinism of compare", 30, end_to_end_determinism),
        ("rank series shape on fixtures", 30, shape_check),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed < Duration::from_secs(budget) {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, budget {budget} s"))
            }
        });
        let n = i + 1;
        match &outcome {
            Ok(()) => println!("criterion {n}: PASS  {name} ({elapsed:.2?}, budget {budget} s)"),
            Err(why) => {
                println!("criterion {n}: FAIL  {name}: {why}");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
