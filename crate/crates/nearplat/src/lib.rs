//! Machinery for k-regular genus-0 maps whose faces all share one degree
//! except for a small number of "disparate" faces.
//!
//! The crate provides:
//!
//! * [`planar_map`] — combinatorial maps as rotation systems, face tracing,
//!   genus, chords, and a canonical code that is invariant under relabeling
//!   and reflection.
//! * [`counting`] — the exact arithmetic tying vertex count, face degrees and
//!   disparate-face count together, plus feasibility screening for candidate
//!   face vectors.
//! * [`families`] — constructors for the five Platonic maps and fifteen
//!   infinite families with two disparate faces, built by gluing a fundamental
//!   unit around a cycle, plus fixtures with three disparate faces.
//! * [`search`] — an exhaustive, isomorph-free enumerator for maps with a
//!   prescribed face-degree profile, a brute-force oracle to check it against,
//!   and harnesses that sweep the one- and two-disparate-face questions.
//! * [`io`] — planar_code streams, Graphviz DOT export, and the JSON report
//!   document emitted by the search harnesses.

pub mod counting;
pub mod families;
pub mod io;
pub mod planar_map;
pub mod search;

pub mod cli;
