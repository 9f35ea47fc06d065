// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Strong majority vertex- and edge-colorings of finite simple graphs.
//!
//! A vertex-coloring is a *strong majority* coloring when no color occupies
//! more than half of any neighborhood; an edge-coloring is one when no color
//! occupies more than half of the edges adjacent to any edge. This crate
//! provides checkers for both conditions ([`verify`]), exact minimum palette
//! search ([`exact`]), constructive colorings with proven palette bounds
//! ([`construct`]), the graph families that make those bounds tight
//! ([`generators`]) and graph6 / edge-list / JSON codecs ([`format`]).

pub mod construct;
pub mod exact;
pub mod format;
pub mod generators;
pub mod graph;
pub mod verify;

pub use graph::{EdgeSeq, Graph, GraphError};
pub use verify::{Color, EdgeColoring, Verdict, VertexColoring};
