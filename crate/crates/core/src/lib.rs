//! Exact combinatorics of β(0,1)-trees and rooted bicubic planar maps.
//!
//! A β(0,1)-tree is a rooted plane tree with nonnegative labels where leaves
//! are labelled 0, the root is one more than the sum of its children, and every
//! other node exceeds the sum of its children by at most one. This crate
//! provides:
//!
//! - [`tree`]: the validated [`BetaTree`] type, its text codec and statistics;
//! - [`algebra`]: the constructors `λᵢ`, `⊕`, `ρ`, `μᵢ`, `σ`, `νᵢ` and the three
//!   unique decompositions;
//! - [`involution`]: bicolored parse trees ([`DecompExpr`]) and the involution `g`;
//! - [`bicubic`]: dart-based rooted bicubic maps and the bijection with trees;
//! - [`enumerate`]: exhaustive generation, counting formulas and joint
//!   distributions;
//! - [`verify`]: the verification checks, generic over a [`verify::Driver`];
//! - [`series`]: exact truncated power series and the generating-function solver.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod bicubic;
pub mod enumerate;
mod error;
pub mod involution;
pub mod series;
pub mod tree;
pub mod verify;

pub use algebra::{LambdaOplusStep, RhoMuStep, SigmaNuStep};
pub use bicubic::{BicubicMap, MapStats};
pub use enumerate::{JointDistTable, Stat};
pub use error::{AlgebraError, MapError, ParseError, SeriesError};
pub use involution::{g, DecompExpr, Semantics};
pub use series::Series3;
pub use tree::{BetaTree, LabeledTree, NodePath, StatVector, Violation};
