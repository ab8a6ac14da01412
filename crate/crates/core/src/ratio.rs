//! Name compression ratios over a corpus of URI paths.
//!
//! Two passes per name. The first only elides a shared prefix (a CID table
//! match, or the authority component when no table is given) and costs one
//! CID byte. The second additionally nibble-encodes what is left.

use std::path::Path;

use serde::Serialize;

use crate::compress::{cid_compress, compress_name, CidTable};
use crate::ndn::Name;

/// Bundled desk-scale corpus of web-style paths.
pub const BUNDLED_CORPUS: &str = include_str!("../data/corpus.txt");

pub const HISTOGRAM_BINS: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("reading corpus: {0}")]
    Io(#[from] std::io::Error),
    #[error("corpus line {line}: invalid URI `{uri}`")]
    InvalidUri { line: usize, uri: String },
    #[error("corpus contains no names")]
    EmptyCorpus,
}

/// What the first pass elides.
#[derive(Debug, Clone, Copy)]
pub enum Elision<'a> {
    /// The first component, as if every authority had a CID.
    Authority,
    Table(&'a CidTable),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NameRatio {
    pub uncompressed: usize,
    pub prefix_only: usize,
    pub combined: usize,
    /// The residual had a component the nibble encoding cannot carry.
    pub fallback: bool,
}

impl NameRatio {
    pub fn prefix_only_ratio(&self) -> f64 {
        1.0 - self.prefix_only as f64 / self.uncompressed as f64
    }

    pub fn combined_ratio(&self) -> f64 {
        1.0 - self.combined as f64 / self.uncompressed as f64
    }
}

/// Byte counts of one name under both passes.
pub fn name_ratio(name: &Name, elision: Elision<'_>) -> NameRatio {
    let (cid_bytes, residual) = match elision {
        Elision::Authority if !name.is_empty() => (1, name.suffix_from(1)),
        Elision::Authority => (0, name.clone()),
        Elision::Table(table) => {
            let (cids, residual) = cid_compress(name, table);
            (cids.len(), residual)
        }
    };
    let prefix_only = cid_bytes + residual.encoded_len();
    let (carried, fallback) = match compress_name(&residual) {
        Ok(c) => (c.len(), false),
        Err(_) => (residual.encoded_len(), true),
    };
    NameRatio {
        uncompressed: name.encoded_len(),
        prefix_only,
        combined: cid_bytes + carried,
        fallback,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PassSummary {
    pub mean: f64,
    pub median: f64,
    /// Counts per 10 % ratio bin; negative ratios land in the first bin.
    pub histogram: [usize; HISTOGRAM_BINS],
}

impl PassSummary {
    fn from_ratios(mut ratios: Vec<f64>) -> Self {
        let mut histogram = [0; HISTOGRAM_BINS];
        for &r in &ratios {
            let bin = (r * HISTOGRAM_BINS as f64)
                .floor()
                .clamp(0.0, (HISTOGRAM_BINS - 1) as f64);
            histogram[bin as usize] += 1;
        }
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        ratios.sort_by(f64::total_cmp);
        let mid = ratios.len() / 2;
        let median = if ratios.len().is_multiple_of(2) {
            (ratios[mid - 1] + ratios[mid]) / 2.0
        } else {
            ratios[mid]
        };
        PassSummary {
            mean,
            median,
            histogram,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub names: usize,
    pub fallback: usize,
    pub prefix_only: PassSummary,
    pub combined: PassSummary,
}

pub fn parse_corpus(text: &str) -> Result<Vec<Name>, Error> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            l.parse().map_err(|_| Error::InvalidUri {
                line: i + 1,
                uri: l.to_owned(),
            })
        })
        .collect()
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<Name>, Error> {
    parse_corpus(&std::fs::read_to_string(path)?)
}

pub fn ratio_report(names: &[Name], elision: Elision<'_>) -> Result<RatioReport, Error> {
    if names.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let per_name: Vec<NameRatio> = names.iter().map(|n| name_ratio(n, elision)).collect();
    Ok(RatioReport {
        names: names.len(),
        fallback: per_name.iter().filter(|r| r.fallback).count(),
        prefix_only: PassSummary::from_ratios(per_name.iter().map(NameRatio::prefix_only_ratio).collect()),
        combined: PassSummary::from_ratios(per_name.iter().map(NameRatio::combined_ratio).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_counted_short_name() {
        let table = CidTable::new().with(0, "/org").unwrap();
        let r = name_ratio(&"/org/example/temp/7".parse().unwrap(), Elision::Table(&table));
        // Name TLV: 2 + 4*2 + (3+7+4+1) = 25
        assert_eq!(r.uncompressed, 25);
        // CID byte + 2 + 3*2 + 12
        assert_eq!(r.prefix_only, 21);
        // CID byte + two nibble bytes + 12
        assert_eq!(r.combined, 15);
        assert!(!r.fallback);
    }

    #[test]
    fn name_equal_to_context() {
        let table = CidTable::new().with(3, "/a/very/long/prefix").unwrap();
        let r = name_ratio(&"/a/very/long/prefix".parse().unwrap(), Elision::Table(&table));
        assert_eq!((r.prefix_only, r.combined), (3, 2));
        assert!(r.combined_ratio() > 0.9);
    }

    #[test]
    fn long_component_counts_as_fallback() {
        let r = name_ratio(&"/host/averyverylongcomponent".parse().unwrap(), Elision::Authority);
        assert!(r.fallback);
        assert_eq!(r.prefix_only, r.combined);
    }

    #[test]
    fn empty_corpus() {
        assert!(matches!(ratio_report(&[], Elision::Authority), Err(Error::EmptyCorpus)));
        assert!(parse_corpus("# only a comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn summary_statistics() {
        let s = PassSummary::from_ratios(vec![0.1, 0.5, 0.2, 0.95]);
        assert!((s.mean - 0.4375).abs() < 1e-12);
        assert!((s.median - 0.35).abs() < 1e-12);
        assert_eq!(s.histogram, [0, 1, 1, 0, 0, 1, 0, 0, 0, 1]);
    }
}
