//! Equation syntax, normal forms and classification.

mod ast;
mod classify;
pub mod json;
mod normal;
mod parser;
pub mod serde_num;

pub use ast::{Equation, EquationSystem, Expr};
pub use classify::{
    classify, default_vars, Classified, ClassifyError, EquationClass, GeneralSystem, LinearSystem,
    TwoVarSystem,
};
pub use json::{ast_from_json, ast_to_json, from_json, to_json, SchemaError};
pub use normal::{normalize, ExpNormalForm};
pub use parser::{parse_equation_text, ParseError};
