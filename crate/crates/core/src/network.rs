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

//! Temporal contact data and its equal-width slicing into a multi-slice stack.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One undirected contact event, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contact<T> {
    pub u: usize,
    pub v: usize,
    pub t: T,
}

/// Timestamped undirected contacts over vertices `0..n_vertices`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactSequence<T> {
    events: Vec<Contact<T>>,
    n_vertices: usize,
    t_min: T,
    t_max: T,
}

impl<T: Scalar> ContactSequence<T> {
    /// Builds a sequence whose vertex count is one more than the largest id seen.
    pub fn from_events<I>(events: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        Self::build(events, 0)
    }

    /// Like [`ContactSequence::from_events`], but keeps at least `n_vertices` vertices
    /// so that vertices without contacts are still represented.
    pub fn with_vertices<I>(n_vertices: usize, events: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        Self::build(events, n_vertices)
    }

    fn build<I>(events: I, min_vertices: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut out = Vec::new();
        let mut n_vertices = min_vertices;
        let mut t_min = T::infinity();
        let mut t_max = T::neg_infinity();
        for (idx, (u, v, t)) in events.into_iter().enumerate() {
            if u == v {
                return Err(Error::SelfLoop { line: idx + 1, vertex: u });
            }
            if !t.is_finite() {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("non-finite timestamp {t}"),
                });
            }
            n_vertices = n_vertices.max(u.max(v) + 1);
            t_min = t_min.min(t);
            t_max = t_max.max(t);
            out.push(Contact { u: u.min(v), v: u.max(v), t });
        }
        if out.is_empty() {
            return Err(Error::NoEvents);
        }
        Ok(ContactSequence { events: out, n_vertices, t_min, t_max })
    }

    /// Reads the whitespace-separated `u v t` format. Lines starting with `#`
    /// or `%` and blank lines are ignored; repeated events are kept.
    pub fn parse(text: &str) -> Result<Self> {
        let mut events = Vec::new();
        let mut n_vertices = 0;
        let mut t_min = T::infinity();
        let mut t_max = T::neg_infinity();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected 3 fields `u v t`, found {}", fields.len()),
                });
            }
            let vertex = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("invalid vertex id `{s}`"),
                })
            };
            let u = vertex(fields[0])?;
            let v = vertex(fields[1])?;
            let t: T = fields[2]
                .parse()
                .ok()
                .filter(|t: &T| t.is_finite())
                .ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: format!("invalid timestamp `{}`", fields[2]),
                })?;
            if u == v {
                return Err(Error::SelfLoop { line: line_no, vertex: u });
            }
            n_vertices = n_vertices.max(u.max(v) + 1);
            t_min = t_min.min(t);
            t_max = t_max.max(t);
            events.push(Contact { u: u.min(v), v: u.max(v), t });
        }
        if events.is_empty() {
            return Err(Error::NoEvents);
        }
        Ok(ContactSequence { events, n_vertices, t_min, t_max })
    }

    pub fn events(&self) -> &[Contact<T>] {
        &self.events
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn t_min(&self) -> T {
        self.t_min
    }

    pub fn t_max(&self) -> T {
        self.t_max
    }

    /// Slice index of timestamp `t` under an equal-width split into `n_slices`.
    /// The right endpoint belongs to the last slice.
    pub fn slice_index(&self, t: T, n_slices: usize) -> usize {
        let span = self.t_max - self.t_min;
        if span <= T::zero() {
            return 0;
        }
        let pos = (T::of(n_slices) * (t - self.t_min) / span).floor();
        pos.to_usize().unwrap_or(0).min(n_slices - 1)
    }

    /// Splits `[t_min, t_max]` into `n_slices` equal-width intervals. Repeated
    /// contacts inside one interval collapse into a single edge, every slice
    /// keeps the full vertex set and consecutive slices are coupled with weight 1.
    pub fn slice(&self, n_slices: usize) -> Result<SliceStack<T>> {
        if n_slices == 0 {
            return Err(Error::ZeroSlices);
        }
        let mut buckets: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_slices];
        for e in &self.events {
            buckets[self.slice_index(e.t, n_slices)].push((e.u, e.v));
        }
        let slices = buckets
            .into_iter()
            .map(|edges| Snapshot::from_edges(self.n_vertices, edges))
            .collect::<Result<Vec<_>>>()?;
        SliceStack::new(slices, T::one())
    }
}

/// Simple undirected graph: no self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Snapshot {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
}

impl Snapshot {
    /// Collapses duplicates (in either orientation). Self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n_vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop on vertex {u}")));
            }
            if u >= n_vertices || v >= n_vertices {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) outside vertex range 0..{n_vertices}"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut degrees = vec![0; n_vertices];
        for &(u, v) in &set {
            degrees[u] += 1;
            degrees[v] += 1;
        }
        Ok(Snapshot { n_vertices, edges: set.into_iter().collect(), degrees })
    }

    pub fn empty(n_vertices: usize) -> Self {
        Snapshot { n_vertices, edges: Vec::new(), degrees: vec![0; n_vertices] }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn sorted_degrees(&self) -> Vec<usize> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d
    }
}

/// Ordered sequence of snapshots on a shared vertex set, with identity
/// coupling of weight `coupling` between consecutive slices.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceStack<T> {
    slices: Vec<Snapshot>,
    coupling: T,
    mu: T,
}

impl<T: Scalar> SliceStack<T> {
    pub fn new(slices: Vec<Snapshot>, coupling: T) -> Result<Self> {
        let first = slices
            .first()
            .ok_or_else(|| Error::InvalidParameter("a stack needs at least one slice".into()))?;
        let n = first.n_vertices();
        if let Some(s) = slices.iter().position(|g| g.n_vertices() != n) {
            return Err(Error::InvalidParameter(format!(
                "slice {s} has {} vertices, expected {n}",
                slices[s].n_vertices()
            )));
        }
        if !coupling.is_finite() || coupling < T::zero() {
            return Err(Error::InvalidParameter(format!(
                "coupling must be finite and non-negative, got {coupling}"
            )));
        }
        let mu = Self::normalizer(&slices, coupling);
        Ok(SliceStack { slices, coupling, mu })
    }

    /// `Σ_s m_s + coupling · n · (S − 1)`: one ordered pair per vertex per
    /// consecutive slice pair.
    fn normalizer(slices: &[Snapshot], coupling: T) -> T {
        let edges: usize = slices.iter().map(Snapshot::m).sum();
        let n = slices[0].n_vertices();
        T::of(edges) + coupling * T::of(n * (slices.len() - 1))
    }

    pub fn slices(&self) -> &[Snapshot] {
        &self.slices
    }

    pub fn slice(&self, s: usize) -> &Snapshot {
        &self.slices[s]
    }

    pub fn n_slices(&self) -> usize {
        self.slices.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.slices[0].n_vertices()
    }

    /// Number of (vertex, slice) nodes.
    pub fn n_nodes(&self) -> usize {
        self.n_vertices() * self.n_slices()
    }

    pub fn coupling(&self) -> T {
        self.coupling
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    /// Recomputes the normalizer from the slices.
    pub fn recompute_mu(&self) -> T {
        Self::normalizer(&self.slices, self.coupling)
    }

    /// Flat node index of `(vertex, slice)`.
    #[inline]
    pub fn flat(&self, vertex: usize, slice: usize) -> usize {
        slice * self.n_vertices() + vertex
    }

    /// First slice without edges, if any.
    pub fn first_empty_slice(&self) -> Option<usize> {
        self.slices.iter().position(|g| g.m() == 0)
    }
}

/// Community label for every (vertex, slice) pair, stored slice-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n_vertices: usize,
    n_slices: usize,
    labels: Vec<usize>,
}

impl Partition {
    /// `labels[s * n_vertices + v]` is the community of vertex `v` in slice `s`.
    pub fn new(n_vertices: usize, n_slices: usize, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != n_vertices * n_slices {
            return Err(Error::PartitionMismatch {
                expected: n_vertices * n_slices,
                got: labels.len(),
            });
        }
        Ok(Partition { n_vertices, n_slices, labels })
    }

    /// Single-slice partition from per-vertex labels.
    pub fn from_vertex_labels(labels: Vec<usize>) -> Self {
        Partition { n_vertices: labels.len(), n_slices: 1, labels }
    }

    /// The same per-vertex labels repeated in each of `n_slices` slices.
    pub fn replicated(vertex_labels: &[usize], n_slices: usize) -> Self {
        let labels = (0..n_slices).flat_map(|_| vertex_labels.iter().copied()).collect();
        Partition { n_vertices: vertex_labels.len(), n_slices, labels }
    }

    pub fn uniform(n_vertices: usize, n_slices: usize) -> Self {
        Partition { n_vertices, n_slices, labels: vec![0; n_vertices * n_slices] }
    }

    pub fn singletons(n_vertices: usize, n_slices: usize) -> Self {
        Partition { n_vertices, n_slices, labels: (0..n_vertices * n_slices).collect() }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_slices(&self) -> usize {
        self.n_slices
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn label(&self, vertex: usize, slice: usize) -> usize {
        self.labels[slice * self.n_vertices + vertex]
    }

    /// Flat labels, slice-major.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn slice_labels(&self, slice: usize) -> &[usize] {
        &self.labels[slice * self.n_vertices..(slice + 1) * self.n_vertices]
    }

    /// Labels renumbered `0..k` in order of first appearance.
    pub fn canonical(&self) -> Partition {
        let mut map = std::collections::HashMap::new();
        let labels = self
            .labels
            .iter()
            .map(|&l| {
                let next = map.len();
                *map.entry(l).or_insert(next)
            })
            .collect();
        Partition { n_vertices: self.n_vertices, n_slices: self.n_slices, labels }
    }

    pub fn n_communities(&self) -> usize {
        self.labels.iter().collect::<BTreeSet<_>>().len()
    }

    pub(crate) fn matches<T: Scalar>(&self, stack: &SliceStack<T>) -> Result<()> {
        if self.n_vertices != stack.n_vertices() || self.n_slices != stack.n_slices() {
            return Err(Error::PartitionMismatch { expected: stack.n_nodes(), got: self.len() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reads_events_and_range() {
        let cs = ContactSequence::<f64>::parse("0 1 3\n1 2 5\n").unwrap();
        assert_eq!(cs.events().len(), 2);
        assert_eq!(cs.n_vertices(), 3);
        assert_eq!(cs.t_min(), 3.0);
        assert_eq!(cs.t_max(), 5.0);
    }

    #[test]
    fn parse_rejects_self_loop_with_line() {
        let err = ContactSequence::<f64>::parse("0 0 1\n").unwrap_err();
        assert_eq!(err, Error::SelfLoop { line: 1, vertex: 0 });
    }

    #[test]
    fn parse_keeps_duplicates_and_skips_comments() {
        let cs = ContactSequence::<f64>::parse("# hdr\n0 1 1\n0 1 1\n").unwrap();
        assert_eq!(cs.events().len(), 2);
        assert_eq!(cs.events()[0], cs.events()[1]);
        let cs = ContactSequence::<f64>::parse("% konect\n\n2 1 0.5\n").unwrap();
        assert_eq!(cs.events()[0], Contact { u: 1, v: 2, t: 0.5 });
    }

    #[test]
    fn parse_errors() {
        assert_eq!(ContactSequence::<f64>::parse("# only\n").unwrap_err(), Error::NoEvents);
        assert!(matches!(
            ContactSequence::<f64>::parse("0 1 1\n0 1\n").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(
            ContactSequence::<f64>::parse("0 x 1\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            ContactSequence::<f64>::parse("0 1 nan\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn single_slice_is_the_aggregate() {
        let cs = ContactSequence::<f64>::parse("0 1 0\n1 0 1\n1 2 1\n2 3 4\n").unwrap();
        let st = cs.slice(1).unwrap();
        assert_eq!(st.n_slices(), 1);
        assert_eq!(st.slice(0).edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(st.mu(), 3.0);
    }

    #[test]
    fn three_timestamps_three_slices() {
        let cs = ContactSequence::<f64>::from_events([(0, 1, 0.0), (1, 2, 1.0), (0, 2, 2.0)]).unwrap();
        let st = cs.slice(3).unwrap();
        assert_eq!(st.slice(0).edges(), &[(0, 1)]);
        assert_eq!(st.slice(1).edges(), &[(1, 2)]);
        assert_eq!(st.slice(2).edges(), &[(0, 2)]);
        // 3 edges + 3 vertices * 2 consecutive pairs
        assert_eq!(st.mu(), 9.0);
    }

    #[test]
    fn duplicates_collapse_and_right_endpoint_closed() {
        let cs = ContactSequence::<f64>::from_events([(0, 1, 0.0), (0, 1, 0.4)]).unwrap();
        let st = cs.slice(2).unwrap();
        // t_max = 0.4 lands in the last slice
        assert_eq!(st.slice(0).edges(), &[(0, 1)]);
        assert_eq!(st.slice(1).edges(), &[(0, 1)]);

        let cs = ContactSequence::<f64>::from_events([(0, 1, 0.0), (0, 1, 0.4), (1, 2, 1.0)]).unwrap();
        let st = cs.slice(2).unwrap();
        assert_eq!(st.slice(0).edges(), &[(0, 1)]);
        assert_eq!(st.slice(1).edges(), &[(1, 2)]);
    }

    #[test]
    fn zero_span_puts_everything_in_slice_zero() {
        let cs = ContactSequence::<f64>::from_events([(0, 1, 2.0), (1, 2, 2.0)]).unwrap();
        let st = cs.slice(3).unwrap();
        assert_eq!(st.slice(0).m(), 2);
        assert_eq!(st.slice(1).m(), 0);
        assert_eq!(st.slice(2).m(), 0);
        assert_eq!(st.first_empty_slice(), Some(1));
    }

    #[test]
    fn zero_slices_is_an_error() {
        let cs = ContactSequence::<f64>::from_events([(0, 1, 0.0)]).unwrap();
        assert_eq!(cs.slice(0).unwrap_err(), Error::ZeroSlices);
    }

    #[test]
    fn snapshot_degrees_match_edges() {
        let g = Snapshot::from_edges(4, [(0, 1), (1, 0), (2, 1), (3, 2)]).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.degrees(), &[1, 2, 2, 1]);
        assert!(g.has_edge(1, 2) && g.has_edge(2, 1) && !g.has_edge(0, 3));
        assert!(Snapshot::from_edges(3, [(1, 1)]).is_err());
        assert!(Snapshot::from_edges(3, [(1, 3)]).is_err());
    }

    #[test]
    fn stack_rejects_mixed_vertex_sets() {
        let r = SliceStack::new(vec![Snapshot::empty(3), Snapshot::empty(4)], 1.0);
        assert!(r.is_err());
        assert!(SliceStack::new(vec![Snapshot::empty(3)], -1.0).is_err());
        assert!(SliceStack::<f64>::new(vec![], 1.0).is_err());
    }

    #[test]
    fn f32_slicing_works() {
        let cs = ContactSequence::<f32>::parse("0 1 0\n1 2 1\n").unwrap();
        let st = cs.slice(2).unwrap();
        assert_eq!(st.mu(), 2.0 + 3.0);
    }

    #[test]
    fn canonical_relabels_by_first_appearance() {
        let p = Partition::new(2, 2, vec![7, 3, 3, 9]).unwrap();
        assert_eq!(p.canonical().labels(), &[0, 1, 1, 2]);
        assert_eq!(p.n_communities(), 3);
        assert!(Partition::new(2, 2, vec![0; 3]).is_err());
    }
}
