//! Presentation-level algebra: PBW normal forms, simple modules of the
//! degree-zero part and graded slices of standard modules.

mod irreps;
mod normal_form;
mod simple;
mod standard;

pub use normal_form::{monomials, AlgebraWord, CherednikAlgebra, ConfluenceReport, Letter, NfKey, NormalForm};
pub use irreps::{inner_product, irreducible_representations, linear_characters, Character, IrrepError, Representation};
pub use simple::{all_simples, order_compare, ModuleError, SimpleLabel, SimpleModule, SimpleOrder};
pub use standard::{SliceError, SliceReport, StandardSlice, DEFAULT_DEGREE, MAX_DEGREE};
