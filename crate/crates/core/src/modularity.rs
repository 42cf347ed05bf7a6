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

//! Single-slice and multi-slice modularity, plus the closed form for a graph
//! replicated over consecutive identical slices.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::network::{Partition, SliceStack, Snapshot};
use crate::scalar::Scalar;

/// Intra-community terms of one slice: `(Ā, K̄)` where `Ā` sums `A_ij` and
/// `K̄` sums `k_i k_j / 2m` over ordered same-community pairs, diagonal included.
fn slice_terms<T: Scalar>(g: &Snapshot, labels: &[usize]) -> (T, T) {
    let inside = g.edges().iter().filter(|&&(u, v)| labels[u] == labels[v]).count();
    let mut strength: HashMap<usize, usize> = HashMap::new();
    for (v, &k) in g.degrees().iter().enumerate() {
        if k > 0 {
            *strength.entry(labels[v]).or_insert(0) += k;
        }
    }
    let two_m = T::of(2 * g.m());
    // summed in label order so the result does not depend on hash iteration
    let mut sums: Vec<(usize, usize)> = strength.into_iter().collect();
    sums.sort_unstable();
    let k_bar = sums.iter().map(|&(_, d)| T::of(d) * T::of(d)).sum::<T>() / two_m;
    (T::of(2 * inside), k_bar)
}

/// Newman modularity of `g` under per-vertex `labels`.
pub fn modularity_single<T: Scalar>(g: &Snapshot, labels: &[usize]) -> Result<T> {
    if labels.len() != g.n_vertices() {
        return Err(Error::PartitionMismatch { expected: g.n_vertices(), got: labels.len() });
    }
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let (a_bar, k_bar) = slice_terms::<T>(g, labels);
    Ok((a_bar - k_bar) / T::of(2 * g.m()))
}

/// Multi-slice modularity with per-slice null models and symmetric identity
/// coupling between consecutive slices.
///
/// Each vertex that keeps its community from slice `s` to `s + 1` adds
/// `2 · coupling` to the numerator (both orientations of the ordered sum);
/// the normalizer is [`SliceStack::mu`].
pub fn modularity_multislice<T: Scalar>(stack: &SliceStack<T>, p: &Partition) -> Result<T> {
    p.matches(stack)?;
    if let Some(slice) = stack.first_empty_slice() {
        return Err(Error::EmptySlice { slice });
    }
    let mut numerator = T::zero();
    for (s, g) in stack.slices().iter().enumerate() {
        let (a_bar, k_bar) = slice_terms::<T>(g, p.slice_labels(s));
        numerator = numerator + (a_bar - k_bar);
    }
    let kept = (1..stack.n_slices())
        .map(|s| {
            let (prev, cur) = (p.slice_labels(s - 1), p.slice_labels(s));
            prev.iter().zip(cur).filter(|(a, b)| a == b).count()
        })
        .sum::<usize>();
    numerator = numerator + T::of(2 * kept) * stack.coupling();
    Ok(numerator / (T::of(2) * stack.mu()))
}

/// Summary of a single-slice graph and a fixed partition, sufficient to
/// predict multi-slice modularity when both are replicated `S` times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicatedModel<T> {
    /// Ordered same-community adjacency sum.
    pub a_bar: T,
    /// Ordered same-community null-model sum.
    pub k_bar: T,
    /// Edge count of the base graph.
    pub m: usize,
    /// Vertices per slice.
    pub a: usize,
}

impl<T: Scalar> ReplicatedModel<T> {
    pub fn new(a_bar: T, k_bar: T, m: usize, a: usize) -> Result<Self> {
        if m == 0 || a == 0 {
            return Err(Error::InvalidParameter("replicated model needs m >= 1 and a >= 1".into()));
        }
        if k_bar < T::zero() || a_bar > T::of(2 * m) {
            return Err(Error::InvalidParameter(format!(
                "inconsistent model terms a_bar={a_bar}, k_bar={k_bar}, m={m}"
            )));
        }
        Ok(ReplicatedModel { a_bar, k_bar, m, a })
    }

    /// Measures `Ā` and `K̄` of `g` under `labels`.
    pub fn from_snapshot(g: &Snapshot, labels: &[usize]) -> Result<Self> {
        if labels.len() != g.n_vertices() {
            return Err(Error::PartitionMismatch { expected: g.n_vertices(), got: labels.len() });
        }
        if g.m() == 0 {
            return Err(Error::EmptyGraph);
        }
        let (a_bar, k_bar) = slice_terms::<T>(g, labels);
        Self::new(a_bar, k_bar, g.m(), g.n_vertices())
    }

    /// `(S(Ā − K̄) + 2a(S − 1)) / (2(a(S − 1) + S m))`.
    pub fn modularity(&self, n_slices: usize) -> Result<T> {
        if n_slices == 0 {
            return Err(Error::ZeroSlices);
        }
        let s = T::of(n_slices);
        let a = T::of(self.a);
        let links = T::of(n_slices - 1);
        let two = T::of(2);
        Ok((s * (self.a_bar - self.k_bar) + two * a * links)
            / (two * (a * links + s * T::of(self.m))))
    }

    /// Value approached as the slice count grows without bound.
    pub fn limit(&self) -> T {
        let a = T::of(self.a);
        (self.a_bar - self.k_bar + T::of(2) * a) / (T::of(2) * (a + T::of(self.m)))
    }
}

/// Free-function form of [`ReplicatedModel::modularity`].
pub fn replicated_modularity<T: Scalar>(model: &ReplicatedModel<T>, n_slices: usize) -> Result<T> {
    model.modularity(n_slices)
}
