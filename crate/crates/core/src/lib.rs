//! Directed weighted word co-occurrence networks.
//!
//! Text goes through [`text`] (cleaning, sentences, tokens), becomes a
//! [`graph::CoOccurrenceNetwork`], is measured by [`metrics`], and two
//! networks are compared through rank series in [`rank`] and written out by
//! [`report`].

pub mod error;
pub mod graph;
pub mod metrics;
pub mod rank;
pub mod report;
pub mod text;

pub use error::{EdgeListError, Error, Result};
pub use graph::{build_network, CoOccurrenceNetwork, ComponentLabeling, EdgeRecord, NodeId, UndirectedGraph};
pub use metrics::{Analysis, Direction, GlobalMetrics, NodeMetrics, PathOptions, Rational};
pub use rank::{compare_pair, rank_sequence, Measure, NetworkProfile, PairComparison, RankEntry, RankSeries};
pub use text::{PipelineConfig, RawDocument, Sentence, Token};
