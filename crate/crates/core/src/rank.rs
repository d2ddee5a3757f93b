//! Rank series of local measures and side-by-side network comparison.

use std::fmt;
use std::str::FromStr;

use log::warn;

use crate::error::{Error, Result};
use crate::graph::CoOccurrenceNetwork;
use crate::metrics::{analyze, GlobalMetrics, NodeMetrics, PathOptions, Rational};

/// Node counts further apart than this fraction of the larger one trigger a
/// size-mismatch warning.
pub const SIZE_MISMATCH_TOLERANCE: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    InDegree,
    OutDegree,
    InStrength,
    OutStrength,
    InSelectivity,
    OutSelectivity,
}

impl Measure {
    pub const ALL: [Measure; 6] = [
        Measure::InDegree,
        Measure::OutDegree,
        Measure::InStrength,
        Measure::OutStrength,
        Measure::InSelectivity,
        Measure::OutSelectivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::InDegree => "in-degree",
            Measure::OutDegree => "out-degree",
            Measure::InStrength => "in-strength",
            Measure::OutStrength => "out-strength",
            Measure::InSelectivity => "in-selectivity",
            Measure::OutSelectivity => "out-selectivity",
        }
    }

    /// The node's value for this measure. Zero degrees and strengths count
    /// as undefined so that every series excludes the same nodes as the
    /// matching selectivity series.
    pub fn value(self, m: &NodeMetrics) -> Option<Rational> {
        let positive = |x: u64| (x > 0).then(|| Rational::from_integer(x));
        match self {
            Measure::InDegree => positive(m.k_in),
            Measure::OutDegree => positive(m.k_out),
            Measure::InStrength => positive(m.s_in),
            Measure::OutStrength => positive(m.s_out),
            Measure::InSelectivity => m.e_in,
            Measure::OutSelectivity => m.e_out,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown measure {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankEntry {
    pub rank: usize,
    pub value: Rational,
    pub word: String,
}

/// Values of one measure sorted in decreasing order, ranked from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSeries {
    pub measure: Measure,
    pub entries: Vec<RankEntry>,
}

impl RankSeries {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Ranks are `1..=len` and values never increase.
    pub fn is_well_formed(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, e)| e.rank == i + 1)
            && self.entries.windows(2).all(|w| w[0].value >= w[1].value)
    }
}

/// Drops undefined values, sorts descending (ties by ascending word) and
/// assigns ranks `1..=n`.
pub fn rank_sequence<I, S>(measure: Measure, values: I) -> RankSeries
where
    I: IntoIterator<Item = (S, Option<Rational>)>,
    S: Into<String>,
{
    let mut defined: Vec<(Rational, String)> = values
        .into_iter()
        .filter_map(|(w, v)| v.map(|v| (v, w.into())))
        .collect();
    defined.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let entries = defined
        .into_iter()
        .enumerate()
        .map(|(i, (value, word))| RankEntry {
            rank: i + 1,
            value,
            word,
        })
        .collect();
    RankSeries { measure, entries }
}

pub fn rank_series(nodes: &[NodeMetrics], measure: Measure) -> RankSeries {
    rank_sequence(
        measure,
        nodes.iter().map(|m| (m.word.as_str(), measure.value(m))),
    )
}

/// Share of nodes left out of the rank series because of zero degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exclusion {
    pub zero_in_degree: Rational,
    pub zero_out_degree: Rational,
    /// Nodes missing from at least one series.
    pub any: Rational,
}

impl Exclusion {
    pub fn of(nodes: &[NodeMetrics]) -> Self {
        let n = nodes.len().max(1) as u64;
        let count = |f: &dyn Fn(&NodeMetrics) -> bool| nodes.iter().filter(|m| f(m)).count() as u64;
        Exclusion {
            zero_in_degree: Rational::new(count(&|m| m.k_in == 0), n),
            zero_out_degree: Rational::new(count(&|m| m.k_out == 0), n),
            any: Rational::new(count(&|m| m.k_in == 0 || m.k_out == 0), n),
        }
    }
}

/// Everything reported for one side of a comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkProfile {
    pub label: String,
    pub summary: GlobalMetrics,
    /// One series per [`Measure::ALL`] entry, same order.
    pub series: Vec<RankSeries>,
    pub excluded: Exclusion,
}

impl NetworkProfile {
    pub fn build(label: impl Into<String>, net: &CoOccurrenceNetwork, opts: PathOptions) -> Result<Self> {
        let analysis = analyze(net, opts)?;
        Ok(Self::from_parts(label, analysis.global, &analysis.nodes))
    }

    pub fn from_parts(label: impl Into<String>, summary: GlobalMetrics, nodes: &[NodeMetrics]) -> Self {
        NetworkProfile {
            label: label.into(),
            summary,
            series: Measure::ALL.iter().map(|&m| rank_series(nodes, m)).collect(),
            excluded: Exclusion::of(nodes),
        }
    }

    pub fn series(&self, measure: Measure) -> &RankSeries {
        &self.series[Measure::ALL.iter().position(|&m| m == measure).unwrap()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairComparison {
    pub a: NetworkProfile,
    pub b: NetworkProfile,
    pub warnings: Vec<String>,
}

impl PairComparison {
    /// `(measure, series of a, series of b)` in [`Measure::ALL`] order.
    pub fn series_pairs(&self) -> impl Iterator<Item = (Measure, &RankSeries, &RankSeries)> {
        Measure::ALL
            .into_iter()
            .zip(self.a.series.iter().zip(&self.b.series))
            .map(|(m, (a, b))| (m, a, b))
    }

    pub fn swapped(&self) -> Self {
        PairComparison {
            a: self.b.clone(),
            b: self.a.clone(),
            warnings: self.warnings.clone(),
        }
    }
}

pub fn compare_pair(
    net_a: &CoOccurrenceNetwork,
    net_b: &CoOccurrenceNetwork,
    label_a: &str,
    label_b: &str,
    opts: PathOptions,
) -> Result<PairComparison> {
    if net_a.is_empty() || net_b.is_empty() {
        return Err(Error::EmptyNetwork);
    }
    let a = NetworkProfile::build(label_a, net_a, opts)?;
    let b = NetworkProfile::build(label_b, net_b, opts)?;
    let warnings = size_warning(&a, &b).into_iter().collect::<Vec<_>>();
    for w in &warnings {
        warn!("{w}");
    }
    Ok(PairComparison { a, b, warnings })
}

fn size_warning(a: &NetworkProfile, b: &NetworkProfile) -> Option<String> {
    let (na, nb) = (a.summary.nodes, b.summary.nodes);
    let gap = na.abs_diff(nb) as f64;
    (gap > SIZE_MISMATCH_TOLERANCE * na.max(nb) as f64).then(|| {
        format!(
            "node counts differ by more than {:.0}%: {} has {na}, {} has {nb}",
            SIZE_MISMATCH_TOLERANCE * 100.0,
            a.label,
            b.label
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeRecord;

    fn r(n: u64) -> Option<Rational> {
        Some(Rational::from_integer(n))
    }

    fn triples(s: &RankSeries) -> Vec<(usize, Rational, &str)> {
        s.entries.iter().map(|e| (e.rank, e.value, e.word.as_str())).collect()
    }

    #[test]
    fn rank_sequence_sorts_descending() {
        let s = rank_sequence(Measure::InDegree, [("a", r(3)), ("b", r(1)), ("c", r(2))]);
        let v = |n| Rational::from_integer(n);
        assert_eq!(triples(&s), vec![(1, v(3), "a"), (2, v(2), "c"), (3, v(1), "b")]);
    }

    #[test]
    fn rank_sequence_breaks_ties_by_word() {
        let s = rank_sequence(Measure::InDegree, [("b", r(2)), ("a", r(2))]);
        assert_eq!(s.entries[0].word, "a");
        assert_eq!(s.entries[1].word, "b");
    }

    #[test]
    fn rank_sequence_drops_undefined() {
        let s = rank_sequence(Measure::OutSelectivity, [("a", None), ("b", r(5))]);
        assert_eq!(triples(&s), vec![(1, Rational::from_integer(5), "b")]);
        assert!(s.is_well_formed());
    }

    #[test]
    fn measure_names_round_trip() {
        for m in Measure::ALL {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
        }
        assert!("degree".parse::<Measure>().is_err());
    }

    fn two_node(w: u64) -> CoOccurrenceNetwork {
        CoOccurrenceNetwork::from_edge_list([EdgeRecord::new("a", "b", w)]).unwrap()
    }

    #[test]
    fn self_comparison_is_symmetric() {
        let n = two_node(3);
        let c = compare_pair(&n, &n, "x", "x", PathOptions::default()).unwrap();
        assert_eq!(c.a, c.b);
        assert!(c.warnings.is_empty());
    }

    #[test]
    fn two_node_fixtures_exclude_zero_degree() {
        // a -> b: a has no in-edges, b has no out-edges
        let c = compare_pair(&two_node(1), &two_node(4), "p", "q", PathOptions::default()).unwrap();
        for (_, sa, sb) in c.series_pairs() {
            assert_eq!(sa.len(), 1);
            assert_eq!(sb.len(), 1);
        }
        assert_eq!(c.b.series(Measure::OutSelectivity).entries[0].value, Rational::from_integer(4));
        assert_eq!(c.a.excluded.zero_in_degree, Rational::new(1, 2));
        assert_eq!(c.a.excluded.any, Rational::from_integer(1));
    }

    #[test]
    fn size_mismatch_warns() {
        let mut big = two_node(1);
        for w in ["c", "d", "e"] {
            big.add_node(w);
        }
        let c = compare_pair(&two_node(1), &big, "small", "big", PathOptions::default()).unwrap();
        assert_eq!(c.warnings.len(), 1);
        assert!(c.warnings[0].contains("small"));
    }

    #[test]
    fn empty_network_is_rejected() {
        let e = CoOccurrenceNetwork::new();
        assert!(matches!(
            compare_pair(&e, &two_node(1), "a", "b", PathOptions::default()),
            Err(Error::EmptyNetwork)
        ));
    }
}
