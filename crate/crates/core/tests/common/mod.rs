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

//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slicescan::{Partition, SliceStack, Snapshot};

/// Literal quadruple sum over (i, j, s, r) of the multi-slice modularity
/// definition with dense matrices. Coupling is `coupling` when `|s - r| = 1`.
pub fn brute_multislice(stack: &SliceStack<f64>, p: &Partition) -> f64 {
    let n = stack.n_vertices();
    let n_slices = stack.n_slices();
    let adj: Vec<Vec<Vec<f64>>> = stack
        .slices()
        .iter()
        .map(|g| {
            let mut a = vec![vec![0.0; n]; n];
            for &(u, v) in g.edges() {
                a[u][v] = 1.0;
                a[v][u] = 1.0;
            }
            a
        })
        .collect();
    let deg: Vec<Vec<f64>> = adj.iter().map(|a| a.iter().map(|row| row.iter().sum()).collect()).collect();
    let m: Vec<f64> = deg.iter().map(|d| d.iter().sum::<f64>() / 2.0).collect();
    let mut c_total = 0.0;
    let mut sum = 0.0;
    for s in 0..n_slices {
        for r in 0..n_slices {
            let c = if s.abs_diff(r) == 1 { stack.coupling() } else { 0.0 };
            if r == s + 1 {
                c_total += c * n as f64;
            }
            for i in 0..n {
                for j in 0..n {
                    if p.label(i, s) != p.label(j, r) {
                        continue;
                    }
                    let mut term = 0.0;
                    if s == r {
                        term += adj[s][i][j] - deg[s][i] * deg[s][j] / (2.0 * m[s]);
                    }
                    if i == j {
                        term += c;
                    }
                    sum += term;
                }
            }
        }
    }
    let mu = m.iter().sum::<f64>() + c_total;
    sum / (2.0 * mu)
}

/// Literal double sum of single-graph modularity.
pub fn brute_single(g: &Snapshot, labels: &[usize]) -> f64 {
    let n = g.n_vertices();
    let m = g.m() as f64;
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                let a = if g.has_edge(i, j) { 1.0 } else { 0.0 };
                sum += a - g.degree(i) as f64 * g.degree(j) as f64 / (2.0 * m);
            }
        }
    }
    sum / (2.0 * m)
}

/// Calls `f` with every set partition of `0..n` as a restricted growth string.
pub fn for_each_set_partition(n: usize, mut f: impl FnMut(&[usize])) {
    fn rec(pos: usize, max: usize, labels: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if pos == labels.len() {
            f(labels);
            return;
        }
        for l in 0..=max + 1 {
            if pos == 0 && l > 0 {
                break;
            }
            labels[pos] = l;
            rec(pos + 1, if pos == 0 { 0 } else { max.max(l) }, labels, f);
        }
    }
    if n == 0 {
        return;
    }
    let mut labels = vec![0; n];
    rec(0, 0, &mut labels, &mut f);
}

/// Exhaustive maximum of multi-slice modularity over all partitions of the flat nodes.
pub fn exhaustive_optimum(stack: &SliceStack<f64>) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for_each_set_partition(stack.n_nodes(), |labels| {
        let p = Partition::new(stack.n_vertices(), stack.n_slices(), labels.to_vec()).unwrap();
        best = best.max(brute_multislice(stack, &p));
    });
    best
}

/// Erdős–Rényi graph with at least one edge.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Snapshot {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < density {
                edges.push((u, v));
            }
        }
    }
    if edges.is_empty() {
        let u = rng.gen_range(0..n - 1);
        edges.push((u, rng.gen_range(u + 1..n)));
    }
    Snapshot::from_edges(n, edges).unwrap()
}

pub fn random_stack(seed: u64, max_vertices: usize, n_slices: usize) -> SliceStack<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_vertices);
    let density = rng.gen_range(0.2..0.8);
    let slices = (0..n_slices).map(|_| random_graph(&mut rng, n, density)).collect();
    SliceStack::new(slices, 1.0).unwrap()
}

pub fn random_labels(rng: &mut ChaCha8Rng, len: usize, k: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..k)).collect()
}

pub fn clique_edges(first: usize, size: usize) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in first..first + size {
        for j in i + 1..first + size {
            e.push((i, j));
        }
    }
    e
}

pub fn disjoint_cliques(count: usize, size: usize) -> Snapshot {
    let edges = (0..count).flat_map(|c| clique_edges(c * size, size)).collect::<Vec<_>>();
    Snapshot::from_edges(count * size, edges).unwrap()
}

/// Spearman rank correlation without tie correction beyond average ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap());
        let mut r = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let avg = (i + j) as f64 / 2.0 + 1.0;
            for k in i..=j {
                r[idx[k]] = avg;
            }
            i = j + 1;
        }
        r
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}
