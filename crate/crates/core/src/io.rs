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

//! Plain-text file formats: contact lists, partitions and sliced dumps.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::network::{ContactSequence, Partition, SliceStack, Snapshot};
use crate::scalar::Scalar;

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn field(line: usize, s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse { line, msg: format!("invalid {what} `{s}`") })
}

/// Reads `vertex slice label` lines (or `vertex label`, meaning slice 0).
/// Every (vertex, slice) pair in the implied grid must appear exactly once.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let mut rows = Vec::new();
    for (line, fields) in data_lines(text) {
        let (v, s, l) = match fields.as_slice() {
            [v, l] => (field(line, v, "vertex")?, 0, field(line, l, "label")?),
            [v, s, l] => (field(line, v, "vertex")?, field(line, s, "slice")?, field(line, l, "label")?),
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected `vertex slice label`, found {} fields", fields.len()),
                })
            }
        };
        rows.push((line, v, s, l));
    }
    if rows.is_empty() {
        return Err(Error::InvalidParameter("partition file is empty".into()));
    }
    let n = rows.iter().map(|r| r.1).max().unwrap_or(0) + 1;
    let n_slices = rows.iter().map(|r| r.2).max().unwrap_or(0) + 1;
    let mut labels = vec![None; n * n_slices];
    for (line, v, s, l) in rows {
        if labels[s * n + v].replace(l).is_some() {
            return Err(Error::Parse { line, msg: format!("vertex {v} in slice {s} labelled twice") });
        }
    }
    let filled = labels.iter().filter(|l| l.is_some()).count();
    if filled != labels.len() {
        return Err(Error::PartitionMismatch { expected: labels.len(), got: filled });
    }
    Partition::new(n, n_slices, labels.into_iter().map(Option::unwrap).collect())
}

/// Writes `vertex slice label` lines, slice-major.
pub fn format_partition(p: &Partition) -> String {
    let mut out = String::from("# vertex slice label\n");
    for s in 0..p.n_slices() {
        for v in 0..p.n_vertices() {
            let _ = writeln!(out, "{v} {s} {}", p.label(v, s));
        }
    }
    out
}

pub fn format_contacts<T: Scalar>(cs: &ContactSequence<T>) -> String {
    let mut out = String::from("# u v t\n");
    for e in cs.events() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, e.t);
    }
    out
}

/// One `u v slice` line per edge of every slice.
pub fn format_sliced<T: Scalar>(stack: &SliceStack<T>) -> String {
    let mut out = String::from("# u v slice\n");
    for (s, g) in stack.slices().iter().enumerate() {
        for &(u, v) in g.edges() {
            let _ = writeln!(out, "{u} {v} {s}");
        }
    }
    out
}

/// Reads a static graph from either a `u v` edge list or a `u v t` contact
/// list (timestamps ignored).
pub fn parse_static(text: &str) -> Result<Snapshot> {
    let mut edges = Vec::new();
    for (line, fields) in data_lines(text) {
        if fields.len() != 2 && fields.len() != 3 {
            return Err(Error::Parse {
                line,
                msg: format!("expected `u v` or `u v t`, found {} fields", fields.len()),
            });
        }
        let u = field(line, fields[0], "vertex")?;
        let v = field(line, fields[1], "vertex")?;
        if u == v {
            return Err(Error::SelfLoop { line, vertex: u });
        }
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(Error::NoEvents);
    }
    let n = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0) + 1;
    Snapshot::from_edges(n, edges)
}
