//! Exact engine for constructible sheaves on finite exit-path posets.
//!
//! Objects are bounded cochain complexes over an exact field, diagrams of
//! such complexes indexed by finite posets, and kernels between diagram
//! categories. Derived functors are computed by explicit bar and cobar
//! totalizations.

pub mod chain;
pub mod classify;
pub mod error;
pub mod format;
pub mod funcat;
pub mod kernel;
pub mod linalg;
pub mod localize;
pub mod poset;
pub mod random;
pub mod report;
mod total;
pub mod witness;

pub use chain::{BettiVector, ChainMap, Complex};
pub use error::{Error, Result};
pub use funcat::{CellPresentation, NatTrans, PFunctor};
pub use linalg::{Field, Matrix, Scalar};
pub use poset::{face_poset, MonotoneMap, Poset};
pub use classify::{Subject, Verdict};
pub use kernel::Kernel;
pub use localize::Bireflection;
pub use report::{Report, Section};
pub use witness::{TailValue, TameFunctor, TowerFunctor};
