//! Text cleaning, sentence segmentation and tokenization.
//!
//! The pipeline is `normalize` → `segment_sentences` → `tokenize`. All three
//! are pure functions of their input and a [`PipelineConfig`].
//!
//! Normalization lowercases, composes (NFC) and then keeps only word
//! characters (letters, digits, combining marks attached to a word), the
//! connectors `-` and `'`, and the configured sentence terminators. Every
//! other character, punctuation and symbols alike, acts as a separator; runs
//! of separators and whitespace collapse to one ASCII space and the result is
//! trimmed.

use std::fmt;
use std::path::Path;

use serde::Deserialize;
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

pub const DEFAULT_TERMINATORS: [char; 4] = ['.', '!', '?', '…'];

/// One input text, validated as UTF-8.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub content: String,
    pub source_label: String,
}

impl RawDocument {
    pub fn new(source_label: impl Into<String>, content: impl Into<String>) -> Self {
        RawDocument {
            content: content.into(),
            source_label: source_label.into(),
        }
    }

    pub fn from_bytes(source_label: impl Into<String>, bytes: Vec<u8>) -> Result<Self> {
        let source_label = source_label.into();
        match String::from_utf8(bytes) {
            Ok(content) => Ok(RawDocument {
                content,
                source_label,
            }),
            Err(e) => Err(Error::InvalidUtf8 {
                label: source_label,
                offset: e.utf8_error().valid_up_to(),
            }),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::from_bytes(path.display().to_string(), bytes)
    }
}

/// A normalized word. Never empty, never contains whitespace or terminators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Token(String);

impl Token {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sentence {
    pub tokens: Vec<Token>,
}

impl Sentence {
    /// Builds a sentence from already-clean words, e.g. in tests. Words are
    /// not validated.
    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Sentence {
            tokens: words.into_iter().map(|w| Token(w.into())).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }
}

/// Tunables for the cleaning pipeline. Loadable from a TOML file:
///
/// ```toml
/// terminators = [".", "!", "?", "…"]
/// keep_digits = true
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub terminators: Vec<char>,
    pub keep_digits: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            terminators: DEFAULT_TERMINATORS.to_vec(),
            keep_digits: true,
        }
    }
}

impl PipelineConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: PipelineConfig = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&s)
    }

    pub fn validate(&self) -> Result<()> {
        for &t in &self.terminators {
            if t.is_alphanumeric() || t.is_whitespace() || is_connector(t) || is_combining_mark(t) {
                return Err(Error::Config(format!(
                    "{t:?} cannot be used as a sentence terminator"
                )));
            }
        }
        Ok(())
    }

    fn is_terminator(&self, c: char) -> bool {
        self.terminators.contains(&c)
    }

    fn is_word_char(&self, c: char) -> bool {
        c.is_alphabetic() || (self.keep_digits && c.is_numeric())
    }

    /// Lowercase, compose and strip a text down to words, connectors and
    /// terminators separated by single spaces.
    pub fn normalize(&self, content: &str) -> String {
        let composed: String = content.nfc().collect::<String>().to_lowercase().nfc().collect();
        let mut out = String::with_capacity(composed.len());
        let mut gap = false;
        let mut prev_word = false;
        for c in composed.chars() {
            let c = if c == '\u{2019}' { '\'' } else { c };
            let word = self.is_word_char(c) || (prev_word && is_combining_mark(c));
            if word || is_connector(c) || self.is_terminator(c) {
                if gap && !out.is_empty() {
                    out.push(' ');
                }
                gap = false;
                out.push(c);
            } else {
                gap = true;
            }
            prev_word = word;
        }
        out
    }

    /// Split normalized text on terminators, dropping empty segments.
    pub fn segment_sentences(&self, normalized: &str) -> Vec<String> {
        normalized
            .split(|c| self.is_terminator(c))
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::to_owned)
            .collect()
    }

    /// Split a sentence into tokens: maximal runs of word characters, joined
    /// across a single internal `-` or `'`.
    pub fn tokenize(&self, sentence: &str) -> Sentence {
        let mut tokens = Vec::new();
        let mut current = String::new();
        // A connector seen after word characters, not yet confirmed internal.
        let mut pending: Option<char> = None;
        let mut prev_word = false;
        for c in sentence.chars() {
            let word = self.is_word_char(c) || (prev_word && is_combining_mark(c));
            if word {
                if let Some(p) = pending.take() {
                    current.push(p);
                }
                current.push(c);
            } else if is_connector(c) && !current.is_empty() && pending.is_none() && prev_word {
                pending = Some(c);
            } else {
                pending = None;
                if !current.is_empty() {
                    tokens.push(Token(std::mem::take(&mut current)));
                }
            }
            prev_word = word;
        }
        if !current.is_empty() {
            tokens.push(Token(current));
        }
        Sentence { tokens }
    }

    /// Full pipeline for one document. Empty sentences are dropped.
    pub fn sentences(&self, content: &str) -> Vec<Sentence> {
        let normalized = self.normalize(content);
        self.segment_sentences(&normalized)
            .iter()
            .map(|s| self.tokenize(s))
            .filter(|s| !s.is_empty())
            .collect()
    }
}

fn is_connector(c: char) -> bool {
    c == '-' || c == '\''
}

/// [`PipelineConfig::normalize`] with the default configuration.
pub fn normalize(content: &str) -> String {
    PipelineConfig::default().normalize(content)
}

/// [`PipelineConfig::segment_sentences`] with the default configuration.
pub fn segment_sentences(normalized: &str) -> Vec<String> {
    PipelineConfig::default().segment_sentences(normalized)
}

/// [`PipelineConfig::tokenize`] with the default configuration.
pub fn tokenize(sentence: &str) -> Sentence {
    PipelineConfig::default().tokenize(sentence)
}

/// [`PipelineConfig::sentences`] with the default configuration.
pub fn sentences(content: &str) -> Vec<Sentence> {
    PipelineConfig::default().sentences(content)
}
