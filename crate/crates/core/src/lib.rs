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

//! Choosing how many equal-width time slices to cut a temporal network into
//! before multi-slice community detection.
//!
//! For each candidate slice count the network is clustered with a generalized
//! Louvain optimizer, a degree-preserving randomized copy is clustered too,
//! and the difference of the two modularity maxima (the corrected modularity)
//! is recorded. The count with the largest corrected modularity wins.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`.

pub mod error;
pub mod evaluation;
pub mod io;
pub mod louvain;
pub mod modularity;
pub mod network;
pub mod randomization;
pub mod scalar;
pub mod seed;
pub mod selection;
pub mod synthesis;

pub use error::{Error, Result};
pub use evaluation::{nmi, nmi_labels};
pub use louvain::{cluster_best, cluster_once, OptimizerConfig, SupraGraph};
pub use modularity::{modularity_multislice, modularity_single, replicated_modularity, ReplicatedModel};
pub use network::{Contact, ContactSequence, Partition, SliceStack, Snapshot};
pub use randomization::{shuffle_snapshot, shuffle_stack};
pub use scalar::Scalar;
pub use selection::{corrected_scan, select, ScanConfig, ScanRecord, ScanResult};
pub use synthesis::{
    gen_hidden_cliques, gen_replicated, gen_time_separated_cliques, gen_time_separated_cliques_with_rounds,
    GroundTruth,
};

pub type ContactSequence64 = ContactSequence<f64>;
pub type SliceStack64 = SliceStack<f64>;
pub type OptimizerConfig64 = OptimizerConfig<f64>;
pub type ReplicatedModel64 = ReplicatedModel<f64>;
pub type ScanConfig64 = ScanConfig<f64>;
pub type ScanRecord64 = ScanRecord<f64>;
pub type ScanResult64 = ScanResult<f64>;

pub type ContactSequence32 = ContactSequence<f32>;
pub type SliceStack32 = SliceStack<f32>;
pub type OptimizerConfig32 = OptimizerConfig<f32>;
pub type ScanConfig32 = ScanConfig<f32>;
pub type ScanResult32 = ScanResult<f32>;
