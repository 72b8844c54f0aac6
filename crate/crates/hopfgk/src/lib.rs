//! Exact-arithmetic workbench for finitely presented connected Hopf
//! algebras: PBW rewriting with a confluence check, coproduct and antipode
//! calculus, rational kernel solvers for the primitive and
//! anti-cocommutative subspaces, normality and almost-centralizing checks,
//! and growth counting for the Gelfand-Kirillov dimension.

pub mod algebra;
pub mod checks;
pub mod coalgebra;
pub mod dsl;
pub mod error;
pub mod growth;
pub mod report;
pub mod rewrite;
pub mod scalar;
pub mod solver;
pub mod tensor;

pub use algebra::{AlgebraElement, GenIndex, GeneratorSymbol, SymbolTable, Word};
pub use error::{AlgebraError, Result};
pub use rewrite::{Presentation, SubalgebraSpec};
pub use scalar::Scalar;
pub use tensor::TensorElement;
