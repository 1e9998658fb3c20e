//! Spanning-tree counts of graph covers, Artin–Ihara L-functions and
//! the Brauer-relation product formulas that tie them together.

pub mod character;
pub mod cover;
pub mod cyclotomic;
pub mod error;
pub mod family;
pub mod graph;
pub mod group;
pub mod lfunction;
pub mod matrix;
pub mod poly;
pub mod poset;
pub mod report;
pub mod theorems;
pub mod ring;

pub use character::{Character, CharacterTable, ClassFunction};
pub use cover::{Cover, IntermediateGraph, VoltageAssignment};
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use graph::{Orientation, SerreGraph};
pub use group::{FiniteGroup, Subgroup};
pub use matrix::{IntMatrix, Matrix, RationalMatrix};
pub use poly::{IntPolynomial, Polynomial};
pub use poset::{MobiusTable, Poset, SubgroupPoset};
pub use report::{FormulaTerm, Status, VerificationReport};
pub use ring::Ring;
