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

//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar used for timestamps, edge weights and modularity values.
///
/// Implemented for `f32` and `f64`. Counts (edges, vertices, slices) stay
/// `usize` and are converted through [`Scalar::of`].
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + FromStr + Sum + Display + Debug + Default + Send + Sync + 'static
{
    /// Lossy conversion from a count.
    #[inline]
    fn of(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as float")
    }

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable as float")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
