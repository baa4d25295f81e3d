//! Text and JSON surface: expression parsing, canonical printing, and the
//! `ordcalc` command line.

pub mod app;
pub mod json;
pub mod parse;
pub mod print;

pub use app::run;
pub use json::{from_json, from_value, to_json, to_value};
pub use parse::{eval_expr, parse, OrdExpr, SyntaxError};
pub use print::print_canonical;
