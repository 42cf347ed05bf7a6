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

//! Degree-preserving edge-swap randomization, applied slice by slice.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::network::{SliceStack, Snapshot};
use crate::scalar::Scalar;
use crate::seed::derive_seed;

#[inline]
fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Performs `attempts` swap attempts on `g`. Each attempt picks two distinct
/// edges `(a, b)`, `(c, d)` and one of the pairings `{(a, c), (b, d)}` or
/// `{(a, d), (b, c)}` uniformly; it is applied only if neither new edge is a
/// self-loop or already present. Rejected attempts still consume the budget.
pub fn shuffle_snapshot(g: &Snapshot, seed: u64, attempts: usize) -> Snapshot {
    let m = g.m();
    if m < 2 || attempts == 0 {
        return g.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    let mut present: HashSet<(usize, usize)> = edges.iter().copied().collect();
    for _ in 0..attempts {
        let i = rng.gen_range(0..m);
        let mut j = rng.gen_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        let (a, b) = edges[i];
        let (c, d) = edges[j];
        let (e1, e2) = if rng.gen::<bool>() { ((a, c), (b, d)) } else { ((a, d), (b, c)) };
        if e1.0 == e1.1 || e2.0 == e2.1 {
            continue;
        }
        let (k1, k2) = (key(e1.0, e1.1), key(e2.0, e2.1));
        if present.contains(&k1) || present.contains(&k2) {
            continue;
        }
        present.remove(&edges[i]);
        present.remove(&edges[j]);
        present.insert(k1);
        present.insert(k2);
        edges[i] = k1;
        edges[j] = k2;
    }
    Snapshot::from_edges(g.n_vertices(), edges).expect("swaps keep the graph simple")
}

/// Shuffles every slice independently with `ceil(attempts_per_edge · m_s)`
/// attempts and seed `derive_seed(seed, s)`. Slices are processed in
/// parallel; the result equals sequential processing.
pub fn shuffle_stack<T: Scalar>(
    stack: &SliceStack<T>,
    seed: u64,
    attempts_per_edge: T,
) -> Result<SliceStack<T>> {
    if !attempts_per_edge.is_finite() || attempts_per_edge < T::zero() {
        return Err(Error::InvalidParameter(format!(
            "attempts per edge must be finite and non-negative, got {attempts_per_edge}"
        )));
    }
    let slices: Vec<Snapshot> = stack
        .slices()
        .par_iter()
        .enumerate()
        .map(|(s, g)| {
            let attempts = (attempts_per_edge * T::of(g.m())).ceil().to_usize().unwrap_or(usize::MAX);
            shuffle_snapshot(g, derive_seed(seed, s as u64), attempts)
        })
        .collect();
    SliceStack::new(slices, stack.coupling())
}
