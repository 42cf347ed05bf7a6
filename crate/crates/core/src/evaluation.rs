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

//! Normalized mutual information between two partitions of the same items.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::network::Partition;
use crate::scalar::Scalar;

fn entropy<T: Scalar>(counts: impl Iterator<Item = usize>, total: T) -> T {
    counts
        .map(|c| {
            let p = T::of(c) / total;
            -p * p.ln()
        })
        .sum()
}

/// NMI with arithmetic-mean normalization, `2 I(a; b) / (H(a) + H(b))`,
/// natural logarithms. Two constant labelings score 1; a constant against a
/// non-constant labeling scores 0.
pub fn nmi_labels<T: Scalar>(a: &[usize], b: &[usize]) -> Result<T> {
    if a.len() != b.len() {
        return Err(Error::PartitionMismatch { expected: a.len(), got: b.len() });
    }
    if a.is_empty() {
        return Err(Error::InvalidParameter("cannot compare empty partitions".into()));
    }
    let mut joint: HashMap<(usize, usize), usize> = HashMap::new();
    let mut ca: HashMap<usize, usize> = HashMap::new();
    let mut cb: HashMap<usize, usize> = HashMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *joint.entry((x, y)).or_insert(0) += 1;
        *ca.entry(x).or_insert(0) += 1;
        *cb.entry(y).or_insert(0) += 1;
    }
    let total = T::of(a.len());
    let mut sorted_a: Vec<usize> = ca.values().copied().collect();
    let mut sorted_b: Vec<usize> = cb.values().copied().collect();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    let ha = entropy(sorted_a.into_iter(), total);
    let hb = entropy(sorted_b.into_iter(), total);
    if ca.len() == 1 && cb.len() == 1 {
        return Ok(T::one());
    }
    if ca.len() == 1 || cb.len() == 1 {
        return Ok(T::zero());
    }
    let mut cells: Vec<((usize, usize), usize)> = joint.into_iter().collect();
    cells.sort_unstable();
    let mi: T = cells
        .into_iter()
        .map(|((x, y), n)| {
            let n = T::of(n);
            (n / total) * (n * total / (T::of(ca[&x]) * T::of(cb[&y]))).ln()
        })
        .sum();
    let v = T::of(2) * mi / (ha + hb);
    Ok(v.max(T::zero()).min(T::one()))
}

/// NMI over all (vertex, slice) items; both partitions must cover the same universe.
pub fn nmi<T: Scalar>(p: &Partition, q: &Partition) -> Result<T> {
    if p.n_vertices() != q.n_vertices() || p.n_slices() != q.n_slices() {
        return Err(Error::PartitionMismatch { expected: p.len(), got: q.len() });
    }
    nmi_labels(p.labels(), q.labels())
}
