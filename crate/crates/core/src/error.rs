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

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("no events")]
    NoEvents,
    #[error("slice count must be at least 1")]
    ZeroSlices,
    #[error("modularity undefined on empty graph")]
    EmptyGraph,
    #[error("slice {slice} has no edges; modularity undefined")]
    EmptySlice { slice: usize },
    #[error("partition covers {got} items, expected {expected}")]
    PartitionMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no valid slicing")]
    NoValidSlicing,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
