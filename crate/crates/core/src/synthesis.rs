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

//! Synthetic temporal networks with planted communities.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::network::{ContactSequence, Partition, SliceStack, Snapshot};
use crate::scalar::Scalar;

/// Planted community labels at a reference slicing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    labels: Partition,
}

impl GroundTruth {
    pub fn new(labels: Partition) -> Self {
        GroundTruth { labels }
    }

    pub fn labels(&self) -> &Partition {
        &self.labels
    }

    /// Slice count the labels refer to.
    pub fn reference_slices(&self) -> usize {
        self.labels.n_slices()
    }

    /// Reference slice whose interval contains the midpoint of slice `s` out of `n_slices`.
    pub fn reference_slice(&self, s: usize, n_slices: usize) -> usize {
        let r = self.reference_slices();
        ((r * (2 * s + 1)) / (2 * n_slices)).min(r - 1)
    }

    /// Truth labels for every (vertex, slice) of an `n_slices` slicing of the
    /// same time span, mapped by interval containment.
    pub fn project(&self, n_slices: usize) -> Result<Partition> {
        if n_slices == 0 {
            return Err(Error::ZeroSlices);
        }
        let n = self.labels.n_vertices();
        let labels = (0..n_slices)
            .flat_map(|s| {
                let r = self.reference_slice(s, n_slices);
                self.labels.slice_labels(r).iter().copied()
            })
            .collect();
        Partition::new(n, n_slices, labels)
    }
}

fn clique_edges(first: usize, size: usize, out: &mut Vec<(usize, usize)>) {
    for i in first..first + size {
        for j in i + 1..first + size {
            out.push((i, j));
        }
    }
}

/// Places a block's edges at evenly spaced times inside `[block, block + 1)`,
/// in the given order. The final block is shifted by one step so the last
/// event sits exactly on `n_blocks`, keeping block boundaries on slice
/// boundaries.
fn stamp_block<T: Scalar>(
    block: usize,
    n_blocks: usize,
    edges: Vec<(usize, usize)>,
    out: &mut Vec<(usize, usize, T)>,
) {
    let count = edges.len();
    let shift = usize::from(block + 1 == n_blocks);
    for (j, (u, v)) in edges.into_iter().enumerate() {
        let t = T::of(block) + T::of(j + shift) / T::of(count);
        out.push((u, v, t));
    }
}

/// Two cliques of `clique_size` vertices joined by random cross-group noise,
/// the pattern repeated in `reps` unit-length time blocks with fresh noise in
/// each block. Ground truth is given at `reps` slices.
pub fn gen_hidden_cliques<T: Scalar>(
    reps: usize,
    clique_size: usize,
    noise_density: f64,
    seed: u64,
) -> Result<(ContactSequence<T>, GroundTruth)> {
    if reps == 0 {
        return Err(Error::InvalidParameter("reps must be at least 1".into()));
    }
    if clique_size < 2 {
        return Err(Error::InvalidParameter("clique size must be at least 2".into()));
    }
    if !(0.0..=1.0).contains(&noise_density) {
        return Err(Error::InvalidParameter(format!(
            "noise density must lie in [0, 1], got {noise_density}"
        )));
    }
    let n = 2 * clique_size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut events = Vec::new();
    for block in 0..reps {
        let mut edges = Vec::new();
        clique_edges(0, clique_size, &mut edges);
        clique_edges(clique_size, clique_size, &mut edges);
        for u in 0..clique_size {
            for v in clique_size..n {
                if rng.gen::<f64>() < noise_density {
                    edges.push((u, v));
                }
            }
        }
        edges.shuffle(&mut rng);
        stamp_block(block, reps, edges, &mut events);
    }
    let cs = ContactSequence::with_vertices(n, events)?;
    let per_vertex: Vec<usize> = (0..n).map(|v| usize::from(v >= clique_size)).collect();
    Ok((cs, GroundTruth::new(Partition::replicated(&per_vertex, reps))))
}

/// Rounds of contact per block used by [`gen_time_separated_cliques`].
pub const DEFAULT_ROUNDS: usize = 4;

/// `k` disjoint cliques, clique `g` active only during time block `g`, with
/// [`DEFAULT_ROUNDS`] rounds of contact. Ground truth is given at a single slice.
pub fn gen_time_separated_cliques<T: Scalar>(
    k: usize,
    clique_size: usize,
    seed: u64,
) -> Result<(ContactSequence<T>, GroundTruth)> {
    gen_time_separated_cliques_with_rounds(k, clique_size, DEFAULT_ROUNDS, seed)
}

/// Like [`gen_time_separated_cliques`], with every clique edge firing once in
/// each of `rounds` consecutive equal sub-intervals of its block, so a group
/// stays in contact for the whole time it is present.
pub fn gen_time_separated_cliques_with_rounds<T: Scalar>(
    k: usize,
    clique_size: usize,
    rounds: usize,
    seed: u64,
) -> Result<(ContactSequence<T>, GroundTruth)> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if clique_size < 2 {
        return Err(Error::InvalidParameter("clique size must be at least 2".into()));
    }
    if rounds == 0 {
        return Err(Error::InvalidParameter("rounds must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut events = Vec::new();
    for g in 0..k {
        let mut clique = Vec::new();
        clique_edges(g * clique_size, clique_size, &mut clique);
        let mut block = Vec::with_capacity(rounds * clique.len());
        for _ in 0..rounds {
            clique.shuffle(&mut rng);
            block.extend_from_slice(&clique);
        }
        stamp_block(g, k, block, &mut events);
    }
    let n = k * clique_size;
    let cs = ContactSequence::with_vertices(n, events)?;
    let per_vertex: Vec<usize> = (0..n).map(|v| v / clique_size).collect();
    Ok((cs, GroundTruth::new(Partition::from_vertex_labels(per_vertex))))
}

/// `n_slices` identical copies of `g`, coupled with weight 1.
pub fn gen_replicated<T: Scalar>(g: &Snapshot, n_slices: usize) -> Result<SliceStack<T>> {
    if n_slices == 0 {
        return Err(Error::ZeroSlices);
    }
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    SliceStack::new(vec![g.clone(); n_slices], T::one())
}
