//! Affine structures on finite groups, the semi-braces and skew braces they
//! correspond to, and the set-theoretic Yang–Baxter solutions derived from
//! them.

pub mod affine;
pub mod catalog;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod group;
pub mod identify;
pub mod io;
pub mod map;
pub mod products;
pub mod semibrace;
pub mod ybe;
mod par;

pub use affine::{AffineFlags, AffineStructure};
pub use error::{Error, Property, Result, Violation};
pub use group::{FiniteGroup, GroupHom};
pub use identify::{identify, IsoType};
pub use map::{Permutation, SelfMap};
pub use semibrace::{SemiBrace, SemiBraceFlags};
pub use ybe::{SetSolution, SolutionReport};
pub use products::{MatchedSystem, ZappaSystem};
