//! Global and local network measures.
//!
//! Local measures (degree, strength, selectivity) are taken on the directed
//! weighted network. Path measures and clustering use the undirected
//! projection: distances are hop counts inside the largest weak component,
//! clustering counts links among a node's projected neighbors.
//!
//! Everything is exact. Node-level quantities are `Ratio<u64>`; the network
//! average clustering sums fractions with unrelated denominators and is kept
//! as a `BigRational`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{CoOccurrenceNetwork, NodeId, UndirectedGraph};

pub type Rational = Ratio<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    In,
    Out,
}

/// Controls the shortest-path computation.
///
/// With `sample: Some(m)`, only `m` evenly spaced sources of the largest
/// component are traversed: L becomes an estimate, D a lower bound, and
/// node average distances are reported only for the sampled sources.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PathOptions {
    pub sample: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeMetrics {
    pub id: NodeId,
    pub word: String,
    pub k_in: u64,
    pub k_out: u64,
    pub s_in: u64,
    pub s_out: u64,
    /// `s_in / k_in`, undefined when `k_in == 0`.
    pub e_in: Option<Rational>,
    pub e_out: Option<Rational>,
    pub c_local: Rational,
    /// Mean hop distance to the members of the largest component (self
    /// included). Undefined outside that component.
    pub d_avg: Option<Rational>,
}

/// One row of the network comparison table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalMetrics {
    pub nodes: usize,
    pub edges: usize,
    pub avg_degree: Rational,
    /// Undefined when the largest component has a single node.
    pub avg_shortest_path: Option<Rational>,
    pub diameter: Option<u32>,
    pub avg_clustering: BigRational,
    /// Undefined when N < 2.
    pub density: Option<Rational>,
    pub components: usize,
    pub largest_component: usize,
}

/// Global summary and per-node records computed in one pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub global: GlobalMetrics,
    pub nodes: Vec<NodeMetrics>,
}

/// In/out degree and strength of every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCounts {
    pub k_in: Vec<u64>,
    pub k_out: Vec<u64>,
    pub s_in: Vec<u64>,
    pub s_out: Vec<u64>,
}

impl LocalCounts {
    pub fn of(net: &CoOccurrenceNetwork) -> Self {
        let n = net.node_count();
        let mut c = LocalCounts {
            k_in: vec![0; n],
            k_out: vec![0; n],
            s_in: vec![0; n],
            s_out: vec![0; n],
        };
        for (s, d, w) in net.edges() {
            c.k_out[s] += 1;
            c.s_out[s] += w;
            c.k_in[d] += 1;
            c.s_in[d] += w;
        }
        c
    }

    pub fn degree(&self, node: NodeId, dir: Direction) -> u64 {
        match dir {
            Direction::In => self.k_in[node],
            Direction::Out => self.k_out[node],
        }
    }

    pub fn strength(&self, node: NodeId, dir: Direction) -> u64 {
        match dir {
            Direction::In => self.s_in[node],
            Direction::Out => self.s_out[node],
        }
    }

    pub fn selectivity(&self, node: NodeId, dir: Direction) -> Option<Rational> {
        selectivity_of(self.strength(node, dir), self.degree(node, dir))
    }
}

/// Mean weight per link: `strength / degree`, undefined for zero degree.
pub fn selectivity_of(strength: u64, degree: u64) -> Option<Rational> {
    (degree > 0).then(|| Rational::new(strength, degree))
}

pub fn degree(net: &CoOccurrenceNetwork, node: NodeId, dir: Direction) -> u64 {
    net.edges()
        .filter(|&(s, d, _)| endpoint(s, d, dir) == node)
        .count() as u64
}

pub fn strength(net: &CoOccurrenceNetwork, node: NodeId, dir: Direction) -> u64 {
    net.edges()
        .filter(|&(s, d, _)| endpoint(s, d, dir) == node)
        .map(|(_, _, w)| w)
        .sum()
}

pub fn selectivity(net: &CoOccurrenceNetwork, node: NodeId, dir: Direction) -> Option<Rational> {
    selectivity_of(strength(net, node, dir), degree(net, node, dir))
}

// the endpoint whose degree an edge contributes to
fn endpoint(src: NodeId, dst: NodeId, dir: Direction) -> NodeId {
    match dir {
        Direction::In => dst,
        Direction::Out => src,
    }
}

/// ⟨k⟩ = 2K / N.
pub fn average_degree(net: &CoOccurrenceNetwork) -> Result<Rational> {
    if net.is_empty() {
        return Err(Error::EmptyNetwork);
    }
    Ok(Rational::new(2 * net.edge_count() as u64, net.node_count() as u64))
}

/// d = K / (N(N-1)).
pub fn density(net: &CoOccurrenceNetwork) -> Option<Rational> {
    let n = net.node_count() as u64;
    (n >= 2).then(|| Rational::new(net.edge_count() as u64, n * (n - 1)))
}

/// Local clustering on the projection; 0 when the projected degree is < 2.
pub fn local_clustering(net: &CoOccurrenceNetwork, node: NodeId) -> Rational {
    let proj = net.undirected_projection();
    let nbrs = proj.neighbors(node);
    let links: u64 = nbrs
        .iter()
        .map(|&u| {
            proj.neighbors(u)
                .iter()
                .filter(|v| nbrs.binary_search(v).is_ok())
                .count() as u64
        })
        .sum();
    clustering_fraction(links / 2, nbrs.len() as u64)
}

fn clustering_fraction(links: u64, k: u64) -> Rational {
    if k < 2 {
        Rational::from_integer(0)
    } else {
        Rational::new(2 * links, k * (k - 1))
    }
}

/// Number of projected edges among each node's neighbors.
fn neighbor_links(proj: &UndirectedGraph) -> Vec<u64> {
    let n = proj.node_count();
    (0..n)
        .into_par_iter()
        .map_init(
            || vec![false; n],
            |mark, i| {
                let nbrs = proj.neighbors(i);
                for &u in nbrs {
                    mark[u] = true;
                }
                let twice: usize = nbrs
                    .iter()
                    .map(|&u| proj.neighbors(u).iter().filter(|&&v| mark[v]).count())
                    .sum();
                for &u in nbrs {
                    mark[u] = false;
                }
                (twice / 2) as u64
            },
        )
        .collect()
}

fn clustering_all(proj: &UndirectedGraph) -> Vec<Rational> {
    neighbor_links(proj)
        .into_iter()
        .enumerate()
        .map(|(i, links)| clustering_fraction(links, proj.degree(i) as u64))
        .collect()
}

/// C: mean local clustering over all N nodes, isolated ones included.
pub fn average_clustering(net: &CoOccurrenceNetwork) -> Result<BigRational> {
    if net.is_empty() {
        return Err(Error::EmptyNetwork);
    }
    let proj = net.undirected_projection();
    Ok(mean_clustering(&proj, &neighbor_links(&proj)))
}

fn mean_clustering(proj: &UndirectedGraph, links: &[u64]) -> BigRational {
    // group numerators by degree so the big-number sum has one term per
    // distinct degree rather than one per node
    let mut by_degree: BTreeMap<u64, u64> = BTreeMap::new();
    for (i, &l) in links.iter().enumerate() {
        let k = proj.degree(i) as u64;
        if k >= 2 {
            *by_degree.entry(k).or_insert(0) += l;
        }
    }
    let sum = by_degree
        .into_iter()
        .fold(BigRational::from_integer(BigInt::from(0)), |acc, (k, l)| {
            acc + BigRational::new(BigInt::from(2 * l), BigInt::from(k * (k - 1)))
        });
    sum / BigRational::from_integer(BigInt::from(proj.node_count()))
}

/// Shortest-path totals over the largest weak component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSummary {
    pub component_size: usize,
    /// Σ d_ij over ordered pairs of traversed sources and all members.
    pub total_distance: u64,
    pub sources: usize,
    pub diameter: u32,
    /// Σ_j d_ij for every traversed source, indexed by node id.
    pub distance_sums: Vec<Option<u64>>,
}

impl PathSummary {
    /// L. Undefined for a single-node component.
    pub fn average_shortest_path(&self) -> Option<Rational> {
        let n = self.component_size as u64;
        (n >= 2).then(|| Rational::new(self.total_distance, self.sources as u64 * (n - 1)))
    }

    pub fn node_average_distance(&self, node: NodeId) -> Option<Rational> {
        self.distance_sums[node].map(|s| Rational::new(s, self.component_size as u64))
    }
}

/// Runs one BFS per source in the largest component. `None` for an empty
/// network.
pub fn path_summary(net: &CoOccurrenceNetwork, opts: PathOptions) -> Option<PathSummary> {
    let proj = net.undirected_projection();
    path_summary_on(net, &proj, opts)
}

fn path_summary_on(
    net: &CoOccurrenceNetwork,
    proj: &UndirectedGraph,
    opts: PathOptions,
) -> Option<PathSummary> {
    let labels = net.weak_components();
    let members = labels.members(labels.largest()?);
    let sources: Vec<NodeId> = match opts.sample {
        Some(m) if m < members.len() => {
            let m = m.max(1);
            (0..m).map(|i| members[i * members.len() / m]).collect()
        }
        _ => members.clone(),
    };
    let n = proj.node_count();
    let per_source: Vec<(u64, u32)> = sources
        .par_iter()
        .map_init(
            || (vec![u32::MAX; n], Vec::with_capacity(n)),
            |(dist, queue), &src| eccentricity_sum(proj, src, dist, queue),
        )
        .collect();
    let mut distance_sums = vec![None; n];
    let mut total_distance = 0;
    let mut diameter = 0;
    for (&src, &(sum, ecc)) in sources.iter().zip(&per_source) {
        distance_sums[src] = Some(sum);
        total_distance += sum;
        diameter = diameter.max(ecc);
    }
    Some(PathSummary {
        component_size: members.len(),
        total_distance,
        sources: sources.len(),
        diameter,
        distance_sums,
    })
}

/// BFS from `src`: sum of hop distances and the eccentricity. `dist` must be
/// all `u32::MAX` on entry and is restored before returning.
fn eccentricity_sum(
    proj: &UndirectedGraph,
    src: NodeId,
    dist: &mut [u32],
    queue: &mut Vec<NodeId>,
) -> (u64, u32) {
    queue.clear();
    queue.push(src);
    dist[src] = 0;
    let mut head = 0;
    let mut sum = 0u64;
    let mut ecc = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = dist[u];
        sum += u64::from(du);
        ecc = ecc.max(du);
        for &v in proj.neighbors(u) {
            if dist[v] == u32::MAX {
                dist[v] = du + 1;
                queue.push(v);
            }
        }
    }
    for &u in queue.iter() {
        dist[u] = u32::MAX;
    }
    (sum, ecc)
}

/// Mean hop distance from `node` to every member of the largest component,
/// itself included. `None` when `node` is outside that component.
pub fn node_average_distance(net: &CoOccurrenceNetwork, node: NodeId) -> Option<Rational> {
    let labels = net.weak_components();
    if labels.largest() != Some(labels.component_of(node)) {
        return None;
    }
    let proj = net.undirected_projection();
    let mut dist = vec![u32::MAX; proj.node_count()];
    let (sum, _) = eccentricity_sum(&proj, node, &mut dist, &mut Vec::new());
    Some(Rational::new(sum, labels.largest_size() as u64))
}

/// L over ordered pairs of the largest component.
pub fn average_shortest_path(net: &CoOccurrenceNetwork) -> Option<Rational> {
    path_summary(net, PathOptions::default())?.average_shortest_path()
}

/// D: largest hop distance inside the largest component (0 for a single
/// node, `None` for an empty network).
pub fn diameter(net: &CoOccurrenceNetwork) -> Option<u32> {
    path_summary(net, PathOptions::default()).map(|p| p.diameter)
}

pub fn all_node_metrics(net: &CoOccurrenceNetwork) -> Vec<NodeMetrics> {
    if net.is_empty() {
        return Vec::new();
    }
    analyze(net, PathOptions::default())
        .map(|a| a.nodes)
        .unwrap_or_default()
}

pub fn global_summary(net: &CoOccurrenceNetwork) -> Result<GlobalMetrics> {
    analyze(net, PathOptions::default()).map(|a| a.global)
}

/// Computes every measure with a single projection and one set of
/// traversals.
pub fn analyze(net: &CoOccurrenceNetwork, opts: PathOptions) -> Result<Analysis> {
    if net.is_empty() {
        return Err(Error::EmptyNetwork);
    }
    let proj = net.undirected_projection();
    let counts = LocalCounts::of(net);
    let links = neighbor_links(&proj);
    let paths = path_summary_on(net, &proj, opts).ok_or(Error::EmptyNetwork)?;
    let labels = net.weak_components();

    let nodes = (0..net.node_count())
        .map(|id| NodeMetrics {
            id,
            word: net.word(id).to_owned(),
            k_in: counts.k_in[id],
            k_out: counts.k_out[id],
            s_in: counts.s_in[id],
            s_out: counts.s_out[id],
            e_in: counts.selectivity(id, Direction::In),
            e_out: counts.selectivity(id, Direction::Out),
            c_local: clustering_fraction(links[id], proj.degree(id) as u64),
            d_avg: paths.node_average_distance(id),
        })
        .collect();

    let global = GlobalMetrics {
        nodes: net.node_count(),
        edges: net.edge_count(),
        avg_degree: average_degree(net)?,
        avg_shortest_path: paths.average_shortest_path(),
        diameter: Some(paths.diameter),
        avg_clustering: mean_clustering(&proj, &links),
        density: density(net),
        components: labels.count(),
        largest_component: labels.largest_size(),
    };
    Ok(Analysis { global, nodes })
}

/// Local clustering for every node, in id order.
pub fn clustering_coefficients(net: &CoOccurrenceNetwork) -> Vec<Rational> {
    clustering_all(&net.undirected_projection())
}
