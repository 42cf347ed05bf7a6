// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Scan over slice counts and selection by corrected modularity.
//!
//! For every candidate count `i` the contact sequence is sliced, clustered,
//! shuffled slice by slice and clustered again; `m_n(i) = m_o(i) - m_r(i)`.
//!
//! Seeds: with master seed `K`, count `i` uses `base = derive_seed(K, i)`;
//! the original stack is clustered from `derive_seed(base, 0)`, replicate
//! `r` is shuffled with `derive_seed(base, 1 + 2r)` and clustered from
//! `derive_seed(base, 2 + 2r)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::nmi;
use crate::louvain::{cluster_best, OptimizerConfig};
use crate::network::{ContactSequence, Partition};
use crate::randomization::shuffle_stack;
use crate::scalar::Scalar;
use crate::seed::derive_seed;
use crate::synthesis::GroundTruth;

/// Outcome for one slice count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord<T> {
    pub n_slices: usize,
    pub m_o: Option<T>,
    pub m_r: Option<T>,
    pub m_n: Option<T>,
    pub nmi: Option<T>,
    /// Why this slice count was not evaluated.
    pub skipped: Option<String>,
}

impl<T: Scalar> ScanRecord<T> {
    pub fn evaluated(n_slices: usize, m_o: T, m_r: T, nmi: Option<T>) -> Self {
        ScanRecord { n_slices, m_o: Some(m_o), m_r: Some(m_r), m_n: Some(m_o - m_r), nmi, skipped: None }
    }

    pub fn skipped(n_slices: usize, reason: impl Into<String>) -> Self {
        ScanRecord { n_slices, m_o: None, m_r: None, m_n: None, nmi: None, skipped: Some(reason.into()) }
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }
}

/// All records for `1..=max_slices` and the selected count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult<T> {
    pub records: Vec<ScanRecord<T>>,
    pub selected: usize,
}

pub const CSV_HEADER: &str = "n_slices,m_o,m_r,m_n,nmi,skipped";

fn cell<T: Scalar>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl<T: Scalar> ScanResult<T> {
    /// One row per slice count; empty cells for missing values, the skip
    /// reason (commas replaced) in the last column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let reason = r.skipped.as_deref().unwrap_or("").replace([',', '\n'], ";");
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.n_slices,
                cell(r.m_o),
                cell(r.m_r),
                cell(r.m_n),
                cell(r.nmi),
                reason
            ));
        }
        out
    }

    /// Slice counts that could not be evaluated.
    pub fn skipped_counts(&self) -> Vec<usize> {
        self.records.iter().filter(|r| r.is_skipped()).map(|r| r.n_slices).collect()
    }
}

impl<T: Scalar + Serialize> ScanResult<T> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scan result serializes")
    }
}

impl<T: Scalar + for<'de> Deserialize<'de>> ScanResult<T> {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }
}

/// Parameters of [`corrected_scan`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig<T> {
    pub max_slices: usize,
    /// `optimizer.seed` is the master seed.
    pub optimizer: OptimizerConfig<T>,
    pub attempts_per_edge: T,
    /// Shuffled replicates averaged into `m_r`.
    pub shuffle_replicates: usize,
}

impl<T: Scalar> Default for ScanConfig<T> {
    fn default() -> Self {
        ScanConfig {
            max_slices: 30,
            optimizer: OptimizerConfig::default(),
            attempts_per_edge: T::of(10),
            shuffle_replicates: 1,
        }
    }
}

impl<T: Scalar> ScanConfig<T> {
    pub fn with_max_slices(mut self, n: usize) -> Self {
        self.max_slices = n;
        self
    }

    pub fn with_runs(mut self, runs: usize) -> Self {
        self.optimizer.runs = runs;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.optimizer.seed = seed;
        self
    }
}

/// Smallest slice count attaining the largest corrected modularity among
/// evaluated records.
pub fn select<T: Scalar>(records: &[ScanRecord<T>]) -> Result<usize> {
    let mut best: Option<(usize, T)> = None;
    for r in records {
        if let (None, Some(m_n)) = (&r.skipped, r.m_n) {
            match best {
                Some((i, b)) if b > m_n || (b == m_n && i <= r.n_slices) => {}
                _ => best = Some((r.n_slices, m_n)),
            }
        }
    }
    best.map(|(i, _)| i).ok_or(Error::NoValidSlicing)
}

/// Clusters the original slicing into `n_slices`; exposed for callers that
/// need the partition behind `m_o`.
pub fn cluster_slicing<T: Scalar>(
    cs: &ContactSequence<T>,
    n_slices: usize,
    cfg: &ScanConfig<T>,
) -> Result<(Partition, T)> {
    let stack = cs.slice(n_slices)?;
    let base = derive_seed(cfg.optimizer.seed, n_slices as u64);
    cluster_best(&stack, &cfg.optimizer.with_seed(derive_seed(base, 0)))
}

fn scan_one<T: Scalar>(
    cs: &ContactSequence<T>,
    i: usize,
    cfg: &ScanConfig<T>,
    truth: Option<&GroundTruth>,
) -> Result<ScanRecord<T>> {
    let stack = cs.slice(i)?;
    if let Some(s) = stack.first_empty_slice() {
        return Ok(ScanRecord::skipped(i, format!("slice {s} has no edges")));
    }
    let base = derive_seed(cfg.optimizer.seed, i as u64);
    let (found, m_o) = cluster_best(&stack, &cfg.optimizer.with_seed(derive_seed(base, 0)))?;
    let mut m_r = T::zero();
    for r in 0..cfg.shuffle_replicates as u64 {
        let shuffled = shuffle_stack(&stack, derive_seed(base, 1 + 2 * r), cfg.attempts_per_edge)?;
        let (_, q) = cluster_best(&shuffled, &cfg.optimizer.with_seed(derive_seed(base, 2 + 2 * r)))?;
        m_r = m_r + q;
    }
    m_r = m_r / T::of(cfg.shuffle_replicates);
    let score = match truth {
        Some(t) => {
            if t.labels().n_vertices() != cs.n_vertices() {
                return Err(Error::PartitionMismatch {
                    expected: cs.n_vertices(),
                    got: t.labels().n_vertices(),
                });
            }
            Some(nmi(&found, &t.project(i)?)?)
        }
        None => None,
    };
    Ok(ScanRecord::evaluated(i, m_o, m_r, score))
}

/// Evaluates every slice count in `1..=cfg.max_slices`. Counts run in
/// parallel; records are ordered by count and identical to a sequential scan.
pub fn corrected_scan<T: Scalar>(
    cs: &ContactSequence<T>,
    cfg: &ScanConfig<T>,
    truth: Option<&GroundTruth>,
) -> Result<ScanResult<T>> {
    if cfg.max_slices == 0 {
        return Err(Error::InvalidParameter("max slices must be at least 1".into()));
    }
    if cfg.shuffle_replicates == 0 {
        return Err(Error::InvalidParameter("shuffle replicates must be at least 1".into()));
    }
    cfg.optimizer.validate()?;
    let records = (1..=cfg.max_slices)
        .into_par_iter()
        .map(|i| scan_one(cs, i, cfg, truth))
        .collect::<Result<Vec<_>>>()?;
    let selected = select(&records)?;
    Ok(ScanResult { records, selected })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(i: usize, m_n: Option<f64>) -> ScanRecord<f64> {
        match m_n {
            Some(v) => ScanRecord::evaluated(i, v, 0.0, None),
            None => ScanRecord::skipped(i, "empty"),
        }
    }

    #[test]
    fn select_prefers_smallest_on_tie() {
        let r = vec![rec(1, Some(0.1)), rec(2, Some(0.3)), rec(3, Some(0.3))];
        assert_eq!(select(&r).unwrap(), 2);
    }

    #[test]
    fn select_single_and_skips() {
        assert_eq!(select(&[rec(1, Some(0.5))]).unwrap(), 1);
        let r = vec![rec(1, Some(0.2)), rec(2, None), rec(3, Some(0.4))];
        assert_eq!(select(&r).unwrap(), 3);
        assert_eq!(select(&[rec(1, None)]).unwrap_err(), Error::NoValidSlicing);
    }

    #[test]
    fn single_candidate_is_selected() {
        let cs = ContactSequence::<f64>::parse("0 1 0\n1 2 1\n2 3 2\n0 3 3\n").unwrap();
        let res = corrected_scan(&cs, &ScanConfig::default().with_max_slices(1), None).unwrap();
        assert_eq!(res.selected, 1);
        assert_eq!(res.records.len(), 1);
    }

    #[test]
    fn empty_slices_are_skipped_and_reported() {
        // events at both ends only: every slicing with >= 3 slices has a gap
        let cs = ContactSequence::<f64>::parse("0 1 0\n1 2 0\n2 3 10\n0 3 10\n").unwrap();
        let res = corrected_scan(&cs, &ScanConfig::default().with_max_slices(4).with_runs(2), None).unwrap();
        assert_eq!(res.skipped_counts(), vec![3, 4]);
        assert!(res.records[2].m_o.is_none());
        assert!(matches!(res.selected, 1 | 2));
    }

    #[test]
    fn zero_max_slices_errors() {
        let cs = ContactSequence::<f64>::parse("0 1 0\n").unwrap();
        assert!(corrected_scan(&cs, &ScanConfig::default().with_max_slices(0), None).is_err());
    }

    #[test]
    fn single_event_has_one_usable_record() {
        let cs = ContactSequence::<f64>::parse("0 1 0\n").unwrap();
        let res = corrected_scan(&cs, &ScanConfig::default().with_max_slices(3).with_runs(1), None).unwrap();
        assert_eq!(res.selected, 1);
        assert_eq!(res.skipped_counts(), vec![2, 3]);
        let cs = ContactSequence::<f64>::parse("0 1 0\n2 3 5\n").unwrap();
        let mut cfg = ScanConfig::default().with_max_slices(3).with_runs(1);
        cfg.optimizer.max_passes = 1;
        let res = corrected_scan(&cs, &cfg, None).unwrap();
        assert_eq!(res.skipped_counts(), vec![3]);
    }

    #[test]
    fn csv_and_json_shapes() {
        let res = ScanResult {
            records: vec![ScanRecord::evaluated(1, 0.5, 0.25, Some(1.0)), rec(2, None)],
            selected: 1,
        };
        assert_eq!(res.to_csv(), "n_slices,m_o,m_r,m_n,nmi,skipped\n1,0.5,0.25,0.25,1,\n2,,,,,empty\n");
        let back = ScanResult::<f64>::from_json(&res.to_json()).unwrap();
        assert_eq!(back, res);
    }
}
