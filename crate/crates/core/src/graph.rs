//! The directed weighted co-occurrence network, its edge-list form, the
//! undirected projection and weak-component decomposition.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{EdgeListError, Error, Result};
use crate::text::Sentence;

pub type NodeId = usize;

/// Words are nodes; a directed edge `u -> v` counts how often `v` directly
/// followed `u` inside a sentence.
///
/// Node ids are dense (`0..N`) and assigned in first-appearance order.
/// Self-loops are never stored and every weight is at least 1.
#[derive(Debug, Clone, Default)]
pub struct CoOccurrenceNetwork {
    words: Vec<String>,
    ids: HashMap<String, NodeId>,
    edges: BTreeMap<(NodeId, NodeId), u64>,
}

/// One line of an edge list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRecord {
    pub src: String,
    pub dst: String,
    pub weight: u64,
}

impl EdgeRecord {
    pub fn new(src: impl Into<String>, dst: impl Into<String>, weight: u64) -> Self {
        EdgeRecord {
            src: src.into(),
            dst: dst.into(),
            weight,
        }
    }
}

impl CoOccurrenceNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    /// N
    pub fn node_count(&self) -> usize {
        self.words.len()
    }

    /// K, the number of distinct directed edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, id: NodeId) -> &str {
        &self.words[id]
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn id(&self, word: &str) -> Option<NodeId> {
        self.ids.get(word).copied()
    }

    pub fn weight(&self, src: NodeId, dst: NodeId) -> Option<u64> {
        self.edges.get(&(src, dst)).copied()
    }

    /// Edges as `(src, dst, weight)` in ascending id order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, u64)> + '_ {
        self.edges.iter().map(|(&(s, d), &w)| (s, d, w))
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.values().sum()
    }

    pub fn max_weight(&self) -> u64 {
        self.edges.values().copied().max().unwrap_or(0)
    }

    /// Returns the id of `word`, inserting it as a new node when unseen.
    pub fn add_node(&mut self, word: &str) -> NodeId {
        if let Some(&id) = self.ids.get(word) {
            return id;
        }
        let id = self.words.len();
        self.words.push(word.to_owned());
        self.ids.insert(word.to_owned(), id);
        id
    }

    /// Adds `count` to the weight of `src -> dst`. Self-loops and zero
    /// counts are ignored.
    pub fn add_cooccurrences(&mut self, src: NodeId, dst: NodeId, count: u64) {
        assert!(src < self.node_count() && dst < self.node_count(), "unknown node id");
        if src != dst && count > 0 {
            *self.edges.entry((src, dst)).or_insert(0) += count;
        }
    }

    /// Same network with every edge reversed.
    pub fn transpose(&self) -> Self {
        CoOccurrenceNetwork {
            words: self.words.clone(),
            ids: self.ids.clone(),
            edges: self.edges.iter().map(|(&(s, d), &w)| ((d, s), w)).collect(),
        }
    }

    /// Same network with every weight multiplied by `factor` (> 0).
    pub fn scale_weights(&self, factor: u64) -> Self {
        assert!(factor > 0, "weight factor must be positive");
        CoOccurrenceNetwork {
            words: self.words.clone(),
            ids: self.ids.clone(),
            edges: self.edges.iter().map(|(&k, &w)| (k, w * factor)).collect(),
        }
    }

    /// Word-keyed edge map, independent of node numbering.
    pub fn word_edges(&self) -> BTreeMap<(&str, &str), u64> {
        self.edges
            .iter()
            .map(|(&(s, d), &w)| ((self.word(s), self.word(d)), w))
            .collect()
    }

    pub fn to_edge_list(&self) -> Vec<EdgeRecord> {
        self.word_edges()
            .into_iter()
            .map(|((s, d), w)| EdgeRecord::new(s, d, w))
            .collect()
    }

    /// Builds a network from edge records. Record `i` is reported as line
    /// `i + 1` in errors.
    pub fn from_edge_list<I>(records: I) -> Result<Self>
    where
        I: IntoIterator<Item = EdgeRecord>,
    {
        let mut net = CoOccurrenceNetwork::new();
        for (i, rec) in records.into_iter().enumerate() {
            let line = i + 1;
            let fail = |kind| Error::EdgeList { line, kind };
            if rec.src.is_empty() || rec.dst.is_empty() {
                return Err(fail(EdgeListError::EmptyWord));
            }
            if rec.weight == 0 {
                return Err(fail(EdgeListError::BadWeight("0".into())));
            }
            if rec.src == rec.dst {
                return Err(fail(EdgeListError::SelfLoop(rec.src)));
            }
            let s = net.add_node(&rec.src);
            let d = net.add_node(&rec.dst);
            if net.edges.insert((s, d), rec.weight).is_some() {
                return Err(fail(EdgeListError::Duplicate(rec.src, rec.dst)));
            }
        }
        Ok(net)
    }

    /// Writes the TSV edge list: `src\tdst\tweight\n`, sorted by words.
    pub fn write_edge_list<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut out = BufWriter::new(out);
        for ((s, d), w) in self.word_edges() {
            writeln!(out, "{s}\t{d}\t{w}")?;
        }
        out.flush()
    }

    pub fn save_edge_list(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_edge_list(file).map_err(|e| Error::io(path, e))
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        if body.is_empty() {
            return Ok(CoOccurrenceNetwork::new());
        }
        let mut records = Vec::new();
        for (i, line) in body.split('\n').enumerate() {
            let fail = |kind| Error::EdgeList { line: i + 1, kind };
            let fields: Vec<&str> = line.split('\t').collect();
            let [src, dst, weight] = fields[..] else {
                return Err(fail(EdgeListError::FieldCount(fields.len())));
            };
            let weight = match weight.parse::<u64>() {
                Ok(w) if w > 0 && weight.bytes().all(|b| b.is_ascii_digit()) => w,
                _ => return Err(fail(EdgeListError::BadWeight(weight.to_owned()))),
            };
            records.push(EdgeRecord::new(src, dst, weight));
        }
        Self::from_edge_list(records)
    }

    pub fn read_edge_list<R: Read>(mut input: R) -> Result<Self> {
        let mut bytes = Vec::new();
        input
            .read_to_end(&mut bytes)
            .map_err(|e| Error::io("<edge list>", e))?;
        let text = String::from_utf8(bytes).map_err(|e| Error::InvalidUtf8 {
            label: "<edge list>".into(),
            offset: e.utf8_error().valid_up_to(),
        })?;
        Self::parse_edge_list(&text)
    }

    pub fn load_edge_list(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        let text = String::from_utf8(bytes).map_err(|e| Error::InvalidUtf8 {
            label: path.display().to_string(),
            offset: e.utf8_error().valid_up_to(),
        })?;
        Self::parse_edge_list(&text)
    }

    pub fn undirected_projection(&self) -> UndirectedGraph {
        UndirectedGraph::from_network(self)
    }

    pub fn weak_components(&self) -> ComponentLabeling {
        ComponentLabeling::of(self)
    }

    /// Induced subgraph on the largest weak component. Node order inside the
    /// component is preserved.
    pub fn largest_component_subgraph(&self) -> Result<Self> {
        let labels = self.weak_components();
        let largest = labels.largest().ok_or(Error::EmptyNetwork)?;
        let mut sub = CoOccurrenceNetwork::new();
        let mut remap = vec![None; self.node_count()];
        for (id, word) in self.words.iter().enumerate() {
            if labels.component_of(id) == largest {
                remap[id] = Some(sub.add_node(word));
            }
        }
        for (&(s, d), &w) in &self.edges {
            if let (Some(s), Some(d)) = (remap[s], remap[d]) {
                sub.edges.insert((s, d), w);
            }
        }
        Ok(sub)
    }
}

/// Networks compare by word-keyed content: same word set, same weighted
/// edges. Node numbering is ignored.
impl PartialEq for CoOccurrenceNetwork {
    fn eq(&self, other: &Self) -> bool {
        self.node_count() == other.node_count()
            && self.edge_count() == other.edge_count()
            && self.words.iter().all(|w| other.ids.contains_key(w))
            && self.word_edges() == other.word_edges()
    }
}

impl Eq for CoOccurrenceNetwork {}

/// Links every pair of adjacent tokens inside each sentence.
pub fn build_network(sentences: &[Sentence]) -> CoOccurrenceNetwork {
    let mut net = CoOccurrenceNetwork::new();
    for sentence in sentences {
        let ids: Vec<NodeId> = sentence
            .tokens
            .iter()
            .map(|t| net.add_node(t.as_str()))
            .collect();
        for pair in ids.windows(2) {
            net.add_cooccurrences(pair[0], pair[1], 1);
        }
    }
    net
}

/// Simple undirected graph over the same node ids: `{u, v}` is an edge when
/// `u -> v` or `v -> u` exists. Weights are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl UndirectedGraph {
    pub fn from_network(net: &CoOccurrenceNetwork) -> Self {
        let mut adj = vec![Vec::new(); net.node_count()];
        for (s, d, _) in net.edges() {
            adj[s].push(d);
            adj[d].push(s);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        UndirectedGraph { adj, edge_count }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor ids.
    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.adj[node]
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adj[node].len()
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Hop distances from `source`; `None` for unreachable nodes.
    pub fn bfs(&self, source: NodeId) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.node_count()];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].map(|d| d + 1);
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

/// Weak (undirected) connected components.
///
/// Component ids are assigned in order of each component's smallest node id,
/// so node 0 is always in component 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    labels: Vec<usize>,
    sizes: Vec<usize>,
}

impl ComponentLabeling {
    pub fn of(net: &CoOccurrenceNetwork) -> Self {
        let n = net.node_count();
        let mut sets = DisjointSets::new(n);
        for (s, d, _) in net.edges() {
            sets.union(s, d);
        }
        let mut root_label = HashMap::new();
        let mut labels = Vec::with_capacity(n);
        let mut sizes = Vec::new();
        for node in 0..n {
            let root = sets.find(node);
            let label = *root_label.entry(root).or_insert_with(|| {
                sizes.push(0);
                sizes.len() - 1
            });
            sizes[label] += 1;
            labels.push(label);
        }
        ComponentLabeling { labels, sizes }
    }

    pub fn component_of(&self, node: NodeId) -> usize {
        self.labels[node]
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Largest component id; ties go to the smallest id. `None` when empty.
    pub fn largest(&self) -> Option<usize> {
        let max = *self.sizes.iter().max()?;
        self.sizes.iter().position(|&s| s == max)
    }

    pub fn largest_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    /// Node ids of one component, ascending.
    pub fn members(&self, component: usize) -> Vec<NodeId> {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == component)
            .map(|(id, _)| id)
            .collect()
    }
}

/// Union-find with path halving and union by size.
struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}
