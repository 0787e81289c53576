use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bicubic::MapViolation;
use crate::tree::Violation;

/// Failure to decode a tree or an expression literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// The text does not follow the grammar. `position` is a byte offset.
    Syntax { position: usize, message: String },
    /// The text is well formed but the labels break the β(0,1) rules.
    Invalid(Vec<Violation>),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { position, message } => {
                write!(f, "syntax error at byte {position}: {message}")
            }
            ParseError::Invalid(violations) => {
                write!(f, "invalid β(0,1)-tree:")?;
                for v in violations {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for ParseError {}

/// Precondition failures of the tree constructors and decompositions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    IndexOutOfRange { op: &'static str, index: u32, min: u32, max: u32 },
    RootNotOne { op: &'static str, found: u32 },
    OpenNotOne { op: &'static str, found: u32 },
    TrivialArgument { op: &'static str },
    EmptyParts { op: &'static str },
    /// A parse-tree node violates membership in the set of bicolored trees.
    Membership { node: usize, message: String },
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::IndexOutOfRange { op, index, min, max } => {
                write!(f, "{op}: index {index} outside {min}..={max}")
            }
            AlgebraError::RootNotOne { op, found } => {
                write!(f, "{op}: first argument must have root label 1, found {found}")
            }
            AlgebraError::OpenNotOne { op, found } => {
                write!(f, "{op}: first argument must have exactly one open node, found {found}")
            }
            AlgebraError::TrivialArgument { op } => write!(f, "{op}: argument must be nontrivial"),
            AlgebraError::EmptyParts { op } => write!(f, "{op}: needs at least one argument"),
            AlgebraError::Membership { node, message } => {
                write!(f, "expression node {node}: {message}")
            }
        }
    }
}

impl core::error::Error for AlgebraError {}

/// Failures of the bicubic-map layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapError {
    Invalid(Vec<MapViolation>),
    TrivialTree,
    Reducible,
    IndexOutOfRange { index: u32, max: u32 },
    TooFewParts,
    /// The local pattern at the root matches none of the three constructions.
    Undecomposable(&'static str),
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::Invalid(violations) => {
                write!(f, "invalid bicubic map:")?;
                for v in violations {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
            MapError::TrivialTree => write!(f, "the trivial tree has no bicubic map"),
            MapError::Reducible => write!(f, "operation (3) needs irreducible parts"),
            MapError::IndexOutOfRange { index, max } => {
                write!(f, "operation (2): target {index} outside 1..={max}")
            }
            MapError::TooFewParts => write!(f, "operation (3) needs at least two parts"),
            MapError::Undecomposable(why) => write!(f, "map cannot be decomposed: {why}"),
        }
    }
}

impl core::error::Error for MapError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    OrderMismatch { left: usize, right: usize },
    NonzeroRemainder,
    NotStabilized { rounds: usize },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::OrderMismatch { left, right } => {
                write!(f, "series orders differ: {left} vs {right}")
            }
            SeriesError::NonzeroRemainder => write!(f, "polynomial is not divisible by (y - 1)"),
            SeriesError::NotStabilized { rounds } => {
                write!(f, "fixed-point iteration did not stabilise after {rounds} rounds")
            }
        }
    }
}

impl core::error::Error for SeriesError {}
