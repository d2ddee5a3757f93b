//! Test-only support: seeded random digraphs and brute-force oracles.
//!
//! Nothing here depends on `conet-core`. Graphs are plain edge lists over
//! node ids `0..n` and every oracle works on a dense adjacency matrix, so the
//! answers are computed along a different route than the library's
//! BFS/union-find/marker-array code.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A simple directed weighted graph: no self-loops, no duplicate pairs,
/// edges sorted by `(src, dst)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomDigraph {
    pub n: usize,
    pub edges: Vec<(usize, usize, u64)>,
}

impl RandomDigraph {
    pub fn word(i: usize) -> String {
        format!("w{i:03}")
    }

    /// Edge density varies per seed so that the sample covers forests,
    /// fragmented graphs and dense blocks.
    pub fn generate(seed: u64, max_n: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=max_n.max(1));
        let p = match rng.gen_range(0..4) {
            0 => 0.5 / n as f64,
            1 => 1.5 / n as f64,
            2 => 4.0 / n as f64,
            _ => rng.gen_range(0.1..0.6),
        };
        let mut edges = Vec::new();
        for s in 0..n {
            for d in 0..n {
                if s != d && rng.gen_bool(p.min(1.0)) {
                    let w = if rng.gen_bool(0.1) {
                        rng.gen_range(5..40)
                    } else {
                        rng.gen_range(1..5)
                    };
                    edges.push((s, d, w));
                }
            }
        }
        RandomDigraph { n, edges }
    }

    pub fn undirected_matrix(&self) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; self.n]; self.n];
        for &(s, d, _) in &self.edges {
            m[s][d] = true;
            m[d][s] = true;
        }
        m
    }
}

/// Random sentences over a small vocabulary, so repeats and self-adjacent
/// tokens are common.
pub fn random_sentences(seed: u64, count: usize, vocab: usize) -> Vec<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..12);
            (0..len)
                .map(|_| RandomDigraph::word(rng.gen_range(0..vocab.max(1))))
                .collect()
        })
        .collect()
}

/// Component label per node by depth-first flood fill over the matrix.
/// Labels are numbered in order of each component's smallest node.
pub fn flood_fill(g: &RandomDigraph) -> Vec<usize> {
    let m = g.undirected_matrix();
    let mut label = vec![usize::MAX; g.n];
    let mut next = 0;
    for start in 0..g.n {
        if label[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        label[start] = next;
        while let Some(u) = stack.pop() {
            for v in 0..g.n {
                if m[u][v] && label[v] == usize::MAX {
                    label[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    label
}

pub fn component_count(labels: &[usize]) -> usize {
    labels.iter().copied().max().map_or(0, |m| m + 1)
}

/// Largest component label; ties go to the smaller label.
pub fn largest_component(labels: &[usize]) -> Option<usize> {
    let count = component_count(labels);
    let mut sizes = vec![0usize; count];
    for &l in labels {
        sizes[l] += 1;
    }
    let max = *sizes.iter().max()?;
    sizes.iter().position(|&s| s == max)
}

/// All-pairs hop distances on the undirected projection, O(n^3).
pub fn floyd_warshall(g: &RandomDigraph) -> Vec<Vec<Option<u32>>> {
    let m = g.undirected_matrix();
    let mut d = vec![vec![None; g.n]; g.n];
    for i in 0..g.n {
        d[i][i] = Some(0);
        for j in 0..g.n {
            if m[i][j] {
                d[i][j] = Some(1);
            }
        }
    }
    for k in 0..g.n {
        for i in 0..g.n {
            let Some(ik) = d[i][k] else { continue };
            for j in 0..g.n {
                if let Some(kj) = d[k][j] {
                    if d[i][j].map_or(true, |cur| ik + kj < cur) {
                        d[i][j] = Some(ik + kj);
                    }
                }
            }
        }
    }
    d
}

/// Path statistics over the largest component, from the all-pairs matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathOracle {
    pub members: Vec<usize>,
    /// Σ d_ij over ordered pairs i ≠ j in the component.
    pub ordered_pair_sum: u64,
    pub diameter: u32,
    /// Σ_j d_ij per member, in `members` order.
    pub row_sums: Vec<u64>,
}

pub fn path_oracle(g: &RandomDigraph) -> Option<PathOracle> {
    let labels = flood_fill(g);
    let largest = largest_component(&labels)?;
    let members: Vec<usize> = (0..g.n).filter(|&i| labels[i] == largest).collect();
    let d = floyd_warshall(g);
    let mut ordered_pair_sum = 0;
    let mut diameter = 0;
    let mut row_sums = Vec::new();
    for &i in &members {
        let mut row = 0u64;
        for &j in &members {
            let dij = d[i][j].expect("members are mutually reachable");
            row += u64::from(dij);
            if i != j {
                ordered_pair_sum += u64::from(dij);
                diameter = diameter.max(dij);
            }
        }
        row_sums.push(row);
    }
    Some(PathOracle {
        members,
        ordered_pair_sum,
        diameter,
        row_sums,
    })
}

/// Local clustering of `node` as an unreduced fraction `(2E, k(k-1))`,
/// counting every neighbor pair explicitly. Returns `(0, 1)` when k < 2.
pub fn clustering_brute(g: &RandomDigraph, node: usize) -> (u64, u64) {
    let m = g.undirected_matrix();
    let nbrs: Vec<usize> = (0..g.n).filter(|&j| m[node][j]).collect();
    let k = nbrs.len() as u64;
    if k < 2 {
        return (0, 1);
    }
    let mut links = 0u64;
    for a in 0..nbrs.len() {
        for b in 0..nbrs.len() {
            if a != b && m[nbrs[a]][nbrs[b]] {
                links += 1;
            }
        }
    }
    // each neighbor edge was seen twice, so `links` is already 2E
    (links, k * (k - 1))
}

/// `(k_in, k_out, s_in, s_out)` per node by direct counting.
pub fn degree_strength(g: &RandomDigraph) -> Vec<(u64, u64, u64, u64)> {
    let mut out = vec![(0, 0, 0, 0); g.n];
    for &(s, d, w) in &g.edges {
        out[s].1 += 1;
        out[s].3 += w;
        out[d].0 += 1;
        out[d].2 += w;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> RandomDigraph {
        RandomDigraph {
            n: 4,
            edges: vec![(0, 1, 1), (1, 2, 1), (3, 2, 1)],
        }
    }

    #[test]
    fn oracle_on_path() {
        let p = path_oracle(&path4()).unwrap();
        assert_eq!(p.ordered_pair_sum, 20);
        assert_eq!(p.diameter, 3);
        assert_eq!(p.row_sums, vec![6, 4, 4, 6]);
    }

    #[test]
    fn flood_fill_labels_by_smallest_node() {
        let g = RandomDigraph {
            n: 5,
            edges: vec![(3, 1, 1), (4, 2, 1)],
        };
        assert_eq!(flood_fill(&g), vec![0, 1, 2, 1, 2]);
        assert_eq!(largest_component(&flood_fill(&g)), Some(1));
    }

    #[test]
    fn generator_is_simple_and_seeded() {
        for seed in 0..20 {
            let g = RandomDigraph::generate(seed, 30);
            assert_eq!(g, RandomDigraph::generate(seed, 30));
            assert!(g.edges.iter().all(|&(s, d, w)| s != d && w > 0));
            assert!(g.edges.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
        }
    }
}
