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

mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slicescan::{gen_hidden_cliques, gen_time_separated_cliques, nmi, nmi_labels, Partition};

#[test]
fn hidden_clique_noise_is_binomial() {
    let (size, p) = (8usize, 0.2);
    let trials = (size * size) as f64;
    let mut counts = Vec::new();
    for seed in 0..50 {
        let (cs, _) = gen_hidden_cliques::<f64>(5, size, p, seed).unwrap();
        let stack = cs.slice(5).unwrap();
        for g in stack.slices() {
            counts.push(g.edges().iter().filter(|&&(u, v)| (u < size) != (v < size)).count() as f64);
        }
    }
    let mean = counts.iter().sum::<f64>() / counts.len() as f64;
    let sigma = (trials * p * (1.0 - p) / counts.len() as f64).sqrt();
    assert!((mean - trials * p).abs() < 3.0 * sigma, "mean {mean}");
}

#[test]
fn hidden_clique_aggregate_is_dense_across_groups() {
    let mut density = 0.0;
    for seed in 0..20 {
        let (cs, _) = gen_hidden_cliques::<f64>(5, 8, 0.2, seed).unwrap();
        let g = cs.slice(1).unwrap().slice(0).clone();
        density += g.edges().iter().filter(|&&(u, v)| (u < 8) != (v < 8)).count() as f64 / 64.0;
    }
    let expected = 1.0 - 0.8f64.powi(5);
    assert!((density / 20.0 - expected).abs() < 0.05);
}

#[test]
fn time_cliques_aggregate_exactly() {
    for k in 1..6 {
        let (cs, truth) = gen_time_separated_cliques::<f64>(k, 5, k as u64).unwrap();
        let g = cs.slice(1).unwrap().slice(0).clone();
        assert_eq!(g, disjoint_cliques(k, 5));
        assert_eq!(truth.labels().labels(), (0..5 * k).map(|v| v / 5).collect::<Vec<_>>());
    }
}

#[test]
fn nmi_identity_and_independence() {
    let p = Partition::new(3, 2, vec![0, 0, 1, 1, 2, 2]).unwrap();
    assert!((nmi::<f64>(&p, &p).unwrap() - 1.0).abs() < 1e-12);
    let one = Partition::uniform(3, 2);
    let singles = Partition::singletons(3, 2);
    assert_eq!(nmi::<f64>(&one, &singles).unwrap(), 0.0);
}

#[test]
fn nmi_stays_in_unit_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..10_000 {
        let len = 2 + i % 30;
        let a = random_labels(&mut rng, len, 1 + i % 5);
        let b = random_labels(&mut rng, len, 1 + (i / 5) % 6);
        let v: f64 = nmi_labels(&a, &b).unwrap();
        assert!((0.0..=1.0).contains(&v), "{v}");
    }
}

proptest! {
    #[test]
    fn nmi_is_symmetric(a in prop::collection::vec(0usize..4, 2..40), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_labels(&mut rng, a.len(), 3);
        let x: f64 = nmi_labels(&a, &b).unwrap();
        let y: f64 = nmi_labels(&b, &a).unwrap();
        prop_assert!((x - y).abs() < 1e-12);
    }

    #[test]
    fn nmi_ignores_label_names(a in prop::collection::vec(0usize..4, 2..40), b in prop::collection::vec(0usize..4, 40)) {
        let b = &b[..a.len()];
        let renamed: Vec<usize> = a.iter().map(|&l| 100 - 3 * l).collect();
        let x: f64 = nmi_labels(&a, b).unwrap();
        let y: f64 = nmi_labels(&renamed, b).unwrap();
        prop_assert!((x - y).abs() < 1e-12);
    }
}
