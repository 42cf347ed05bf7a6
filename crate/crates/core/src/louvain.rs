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

//! Generalized Louvain optimizer for multi-slice modularity.
//!
//! Every (vertex, slice) pair is a node of a supra-graph whose edges are the
//! intra-slice adjacencies plus identity couplings between consecutive
//! slices. The null model stays per slice, so each node carries a sparse
//! vector of per-slice degrees and community strengths are tracked per slice.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::network::{Partition, SliceStack};
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 10_000;

/// Settings for repeated Louvain optimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig<T> {
    /// Independent runs; the best is kept.
    pub runs: usize,
    /// Base seed; run `r` uses `seed + r`.
    pub seed: u64,
    /// Upper bound on local-moving/aggregation passes per run.
    pub max_passes: usize,
    /// Smallest modularity increase that counts as an improving move.
    pub min_gain: T,
}

impl<T: Scalar> Default for OptimizerConfig<T> {
    fn default() -> Self {
        OptimizerConfig { runs: 10, seed: 42, max_passes: 100, min_gain: T::lit(1e-10) }
    }
}

impl<T: Scalar> OptimizerConfig<T> {
    pub fn with_runs(mut self, runs: usize) -> Self {
        self.runs = runs;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::InvalidParameter("runs must be at least 1".into()));
        }
        if self.max_passes == 0 {
            return Err(Error::InvalidParameter("max_passes must be at least 1".into()));
        }
        if self.min_gain.is_nan() || self.min_gain < T::zero() {
            return Err(Error::InvalidParameter("min_gain must be non-negative".into()));
        }
        Ok(())
    }
}

/// Sparse per-slice strengths, sorted by slice.
type SliceStrength<T> = Vec<(usize, T)>;

fn strength_add<T: Scalar>(acc: &mut SliceStrength<T>, add: &[(usize, T)], sign: T) {
    for &(s, k) in add {
        match acc.binary_search_by_key(&s, |e| e.0) {
            Ok(i) => acc[i].1 = acc[i].1 + sign * k,
            Err(i) => acc.insert(i, (s, sign * k)),
        }
    }
}

/// Supra-graph of a slice stack, possibly after community contraction.
#[derive(Debug, Clone)]
pub struct SupraGraph<T> {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<T>,
    /// Ordered-pair weight inside a contracted node.
    self_weight: Vec<T>,
    strengths: Vec<SliceStrength<T>>,
    inv_two_m: Vec<T>,
    mu: T,
}

impl<T: Scalar> SupraGraph<T> {
    /// Node `(i, s)` gets index `s * n_vertices + i`.
    pub fn from_stack(stack: &SliceStack<T>) -> Result<Self> {
        if let Some(slice) = stack.first_empty_slice() {
            return Err(Error::EmptySlice { slice });
        }
        let n = stack.n_vertices();
        let n_slices = stack.n_slices();
        let coupling = stack.coupling();
        let mut adj: Vec<Vec<(usize, T)>> = vec![Vec::new(); n * n_slices];
        for (s, g) in stack.slices().iter().enumerate() {
            for &(u, v) in g.edges() {
                adj[s * n + u].push((s * n + v, T::one()));
                adj[s * n + v].push((s * n + u, T::one()));
            }
        }
        if coupling > T::zero() {
            for s in 1..n_slices {
                for i in 0..n {
                    adj[(s - 1) * n + i].push((s * n + i, coupling));
                    adj[s * n + i].push(((s - 1) * n + i, coupling));
                }
            }
        }
        let strengths = (0..n * n_slices)
            .map(|x| {
                let k = stack.slice(x / n).degree(x % n);
                if k > 0 { vec![(x / n, T::of(k))] } else { Vec::new() }
            })
            .collect();
        let inv_two_m = stack.slices().iter().map(|g| T::one() / T::of(2 * g.m())).collect();
        let mut graph = SupraGraph {
            offsets: Vec::new(),
            targets: Vec::new(),
            weights: Vec::new(),
            self_weight: vec![T::zero(); n * n_slices],
            strengths,
            inv_two_m,
            mu: stack.mu(),
        };
        graph.set_adjacency(adj);
        Ok(graph)
    }

    fn set_adjacency(&mut self, adj: Vec<Vec<(usize, T)>>) {
        self.offsets = Vec::with_capacity(adj.len() + 1);
        self.offsets.push(0);
        self.targets.clear();
        self.weights.clear();
        for row in adj {
            for (y, w) in row {
                self.targets.push(y);
                self.weights.push(w);
            }
            self.offsets.push(self.targets.len());
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    fn neighbors(&self, x: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let range = self.offsets[x]..self.offsets[x + 1];
        self.targets[range.clone()].iter().copied().zip(self.weights[range].iter().copied())
    }

    /// `Σ_s k_{x,s} K_{C,s} / 2m_s`.
    fn null_dot(&self, node: &[(usize, T)], community: &[(usize, T)]) -> T {
        let mut acc = T::zero();
        for &(s, k) in node {
            if let Ok(i) = community.binary_search_by_key(&s, |e| e.0) {
                acc = acc + k * community[i].1 * self.inv_two_m[s];
            }
        }
        acc
    }

    /// Multi-slice modularity of a node-level community assignment.
    pub fn quality(&self, comm: &[usize]) -> T {
        let mut inside = T::zero();
        let mut per_comm: Vec<SliceStrength<T>> = vec![Vec::new(); self.n_nodes()];
        for x in 0..self.n_nodes() {
            inside = inside + self.self_weight[x];
            for (y, w) in self.neighbors(x) {
                if comm[x] == comm[y] {
                    inside = inside + w;
                }
            }
            strength_add(&mut per_comm[comm[x]], &self.strengths[x], T::one());
        }
        let null: T = per_comm
            .iter()
            .flat_map(|c| c.iter().map(|&(s, k)| k * k * self.inv_two_m[s]))
            .sum();
        (inside - null) / (T::of(2) * self.mu)
    }

    /// Contracts communities `0..k` into single nodes.
    fn aggregate(&self, comm: &[usize], k: usize) -> Self {
        let mut triples: Vec<(usize, usize, T)> = Vec::with_capacity(self.targets.len());
        let mut self_weight = vec![T::zero(); k];
        let mut strengths: Vec<SliceStrength<T>> = vec![Vec::new(); k];
        for x in 0..self.n_nodes() {
            let cx = comm[x];
            self_weight[cx] = self_weight[cx] + self.self_weight[x];
            strength_add(&mut strengths[cx], &self.strengths[x], T::one());
            for (y, w) in self.neighbors(x) {
                let cy = comm[y];
                if cx == cy {
                    self_weight[cx] = self_weight[cx] + w;
                } else {
                    triples.push((cx, cy, w));
                }
            }
        }
        triples.sort_by_key(|t| (t.0, t.1));
        let mut adj: Vec<Vec<(usize, T)>> = vec![Vec::new(); k];
        for (cx, cy, w) in triples {
            match adj[cx].last_mut() {
                Some(last) if last.0 == cy => last.1 = last.1 + w,
                _ => adj[cx].push((cy, w)),
            }
        }
        let mut out = SupraGraph {
            offsets: Vec::new(),
            targets: Vec::new(),
            weights: Vec::new(),
            self_weight,
            strengths,
            inv_two_m: self.inv_two_m.clone(),
            mu: self.mu,
        };
        out.set_adjacency(adj);
        out
    }
}

/// Community bookkeeping for local moving on one supra-graph level.
struct MoveState<T> {
    comm: Vec<usize>,
    size: Vec<usize>,
    strength: Vec<SliceStrength<T>>,
    free: Vec<usize>,
    neigh_weight: Vec<T>,
    neigh_seen: Vec<bool>,
    neigh_list: Vec<usize>,
}

impl<T: Scalar> MoveState<T> {
    fn singletons(graph: &SupraGraph<T>) -> Self {
        let n = graph.n_nodes();
        MoveState {
            comm: (0..n).collect(),
            size: vec![1; n],
            strength: graph.strengths.clone(),
            free: Vec::new(),
            neigh_weight: vec![T::zero(); n],
            neigh_seen: vec![false; n],
            neigh_list: Vec::new(),
        }
    }

    fn from_assignment(graph: &SupraGraph<T>, comm: Vec<usize>) -> Self {
        let n = graph.n_nodes();
        // one spare id so a fresh target label always fits
        let cap = n + 1;
        let mut size = vec![0; cap];
        let mut strength: Vec<SliceStrength<T>> = vec![Vec::new(); cap];
        for x in 0..n {
            size[comm[x]] += 1;
            strength_add(&mut strength[comm[x]], &graph.strengths[x], T::one());
        }
        let free = (0..cap).rev().filter(|&c| size[c] == 0).collect();
        MoveState {
            comm,
            size,
            strength,
            free,
            neigh_weight: vec![T::zero(); cap],
            neigh_seen: vec![false; cap],
            neigh_list: Vec::new(),
        }
    }

    fn detach(&mut self, graph: &SupraGraph<T>, x: usize) {
        let c = self.comm[x];
        self.size[c] -= 1;
        if self.size[c] == 0 {
            self.strength[c].clear();
        } else {
            strength_add(&mut self.strength[c], &graph.strengths[x], -T::one());
        }
    }

    fn attach(&mut self, graph: &SupraGraph<T>, x: usize, c: usize) {
        if self.size[c] == 0 {
            if let Some(pos) = self.free.iter().position(|&f| f == c) {
                self.free.swap_remove(pos);
            }
        }
        self.comm[x] = c;
        self.size[c] += 1;
        strength_add(&mut self.strength[c], &graph.strengths[x], T::one());
    }

    fn gather_neighbors(&mut self, graph: &SupraGraph<T>, x: usize) {
        for (y, w) in graph.neighbors(x) {
            if y == x {
                continue;
            }
            let c = self.comm[y];
            if !self.neigh_seen[c] {
                self.neigh_seen[c] = true;
                self.neigh_list.push(c);
            }
            self.neigh_weight[c] = self.neigh_weight[c] + w;
        }
    }

    fn clear_neighbors(&mut self) {
        for &c in &self.neigh_list {
            self.neigh_seen[c] = false;
            self.neigh_weight[c] = T::zero();
        }
        self.neigh_list.clear();
    }

    /// Half the 2μ-scaled gain of placing detached node `x` into `c`:
    /// `W_{x,c} − Σ_s k_{x,s} K_{c,s} / 2m_s`.
    fn score(&self, graph: &SupraGraph<T>, x: usize, c: usize) -> T {
        graph.null_dot(&graph.strengths[x], &self.strength[c]) * -T::one() + self.neigh_weight[c]
    }

    /// Modularity change from moving `x` out of its community into `target`.
    fn move_gain(&mut self, graph: &SupraGraph<T>, x: usize, target: usize) -> T {
        let own = self.comm[x];
        if own == target {
            return T::zero();
        }
        self.gather_neighbors(graph, x);
        self.detach(graph, x);
        let delta = self.score(graph, x, target) - self.score(graph, x, own);
        self.attach(graph, x, own);
        self.clear_neighbors();
        delta / graph.mu
    }

    /// Evaluates all candidate moves for `x` and applies the best improving
    /// one. Returns the modularity gain (zero when `x` stays).
    fn move_node(&mut self, graph: &SupraGraph<T>, x: usize, min_gain: T) -> T {
        let own = self.comm[x];
        self.gather_neighbors(graph, x);
        self.detach(graph, x);
        let stay = self.score(graph, x, own);

        let mut best: Option<(usize, T)> = None;
        for &c in &self.neigh_list {
            if c == own {
                continue;
            }
            let g = self.score(graph, x, c);
            best = match best {
                Some((bc, bg)) if bg > g || (bg == g && bc < c) => Some((bc, bg)),
                _ => Some((c, g)),
            };
        }
        // an empty community scores zero
        if self.size[own] > 0 {
            if let Some(&empty) = self.free.last() {
                if best.is_none_or(|(_, bg)| T::zero() > bg) {
                    best = Some((empty, T::zero()));
                }
            }
        }
        let threshold = min_gain * graph.mu;
        let target = match best {
            Some((c, g)) if g - stay > threshold => Some((c, g - stay)),
            _ => None,
        };
        self.clear_neighbors();
        match target {
            Some((c, delta)) => {
                if self.size[own] == 0 {
                    self.free.push(own);
                }
                self.attach(graph, x, c);
                delta / graph.mu
            }
            None => {
                self.attach(graph, x, own);
                T::zero()
            }
        }
    }
}

/// Renumbers labels to `0..k` by first appearance.
fn compact(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut map = vec![usize::MAX; labels.len().max(labels.iter().copied().max().map_or(0, |m| m + 1))];
    let mut next = 0;
    let out = labels
        .iter()
        .map(|&l| {
            if map[l] == usize::MAX {
                map[l] = next;
                next += 1;
            }
            map[l]
        })
        .collect();
    (out, next)
}

/// Local moving on one level. Returns whether any node moved.
fn local_moving<T: Scalar>(
    graph: &SupraGraph<T>,
    state: &mut MoveState<T>,
    rng: &mut ChaCha8Rng,
    min_gain: T,
    mut trace: Option<&mut Vec<T>>,
) -> bool {
    let mut order: Vec<usize> = (0..graph.n_nodes()).collect();
    order.shuffle(rng);
    let mut any = false;
    for _ in 0..MAX_SWEEPS {
        let mut moved = false;
        for &x in &order {
            let before = state.comm[x];
            state.move_node(graph, x, min_gain);
            moved |= state.comm[x] != before;
        }
        if let Some(t) = trace.as_deref_mut() {
            t.push(graph.quality(&state.comm));
        }
        if !moved {
            break;
        }
        any = true;
    }
    any
}

fn optimize<T: Scalar>(
    stack: &SliceStack<T>,
    seed: u64,
    max_passes: usize,
    min_gain: T,
    mut trace: Option<&mut Vec<T>>,
) -> Result<(Partition, T)> {
    let mut graph = SupraGraph::from_stack(stack)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut membership: Vec<usize> = (0..graph.n_nodes()).collect();
    if let Some(t) = trace.as_deref_mut() {
        t.push(graph.quality(&membership));
    }
    for _ in 0..max_passes {
        let mut state = MoveState::singletons(&graph);
        let improved = local_moving(&graph, &mut state, &mut rng, min_gain, trace.as_deref_mut());
        if !improved {
            break;
        }
        let (comm, k) = compact(&state.comm);
        for m in membership.iter_mut() {
            *m = comm[*m];
        }
        if k == graph.n_nodes() {
            break;
        }
        graph = graph.aggregate(&comm, k);
        if let Some(t) = trace.as_deref_mut() {
            let singles: Vec<usize> = (0..k).collect();
            t.push(graph.quality(&singles));
        }
    }
    let singles: Vec<usize> = (0..graph.n_nodes()).collect();
    let quality = graph.quality(&singles);
    let (labels, _) = compact(&membership);
    let partition = Partition::new(stack.n_vertices(), stack.n_slices(), labels)?;
    Ok((partition, quality))
}

/// One Louvain run from singleton communities with node order drawn from `seed`.
pub fn cluster_once<T: Scalar>(stack: &SliceStack<T>, seed: u64) -> Result<(Partition, T)> {
    let cfg = OptimizerConfig::<T>::default();
    optimize(stack, seed, cfg.max_passes, cfg.min_gain, None)
}

/// [`cluster_once`] honouring `max_passes` and `min_gain` from `cfg`.
pub fn cluster_with<T: Scalar>(
    stack: &SliceStack<T>,
    cfg: &OptimizerConfig<T>,
    seed: u64,
) -> Result<(Partition, T)> {
    cfg.validate()?;
    optimize(stack, seed, cfg.max_passes, cfg.min_gain, None)
}

/// Like [`cluster_with`], also returning the modularity after the initial
/// state, after every local-moving sweep, and after every contraction.
pub fn cluster_traced<T: Scalar>(
    stack: &SliceStack<T>,
    cfg: &OptimizerConfig<T>,
    seed: u64,
) -> Result<(Partition, T, Vec<T>)> {
    cfg.validate()?;
    let mut trace = Vec::new();
    let (p, q) = optimize(stack, seed, cfg.max_passes, cfg.min_gain, Some(&mut trace))?;
    Ok((p, q, trace))
}

/// Best of `cfg.runs` independent runs with seeds `cfg.seed + r`; ties go to
/// the lowest run index. Runs execute in parallel; the outcome matches a
/// sequential loop.
pub fn cluster_best<T: Scalar>(
    stack: &SliceStack<T>,
    cfg: &OptimizerConfig<T>,
) -> Result<(Partition, T)> {
    cfg.validate()?;
    if let Some(slice) = stack.first_empty_slice() {
        return Err(Error::EmptySlice { slice });
    }
    let results = (0..cfg.runs)
        .into_par_iter()
        .map(|r| cluster_with(stack, cfg, cfg.seed.wrapping_add(r as u64)))
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<(Partition, T)> = None;
    for (p, q) in results {
        if best.as_ref().is_none_or(|(_, bq)| q > *bq) {
            best = Some((p, q));
        }
    }
    Ok(best.expect("runs >= 1"))
}

/// Modularity change from moving `(vertex, slice)` into the community that
/// carries `target` in `partition`, computed with the optimizer's incremental
/// bookkeeping. `target` need not already be in use.
pub fn move_gain<T: Scalar>(
    stack: &SliceStack<T>,
    partition: &Partition,
    vertex: usize,
    slice: usize,
    target: usize,
) -> Result<T> {
    let graph = SupraGraph::from_stack(stack)?;
    if partition.n_vertices() != stack.n_vertices() || partition.n_slices() != stack.n_slices() {
        return Err(Error::PartitionMismatch { expected: stack.n_nodes(), got: partition.len() });
    }
    let mut labels: Vec<usize> = partition.labels().to_vec();
    labels.push(target);
    let (mut comm, _) = compact(&labels);
    let target = comm.pop().expect("pushed above");
    let mut state = MoveState::from_assignment(&graph, comm);
    Ok(state.move_gain(&graph, stack.flat(vertex, slice), target))
}
