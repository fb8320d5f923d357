//! Text, LaTeX and JSON front end for `ddkp-core`, plus the `ddkp` command.
//!
//! * [`parse`]: the expression language (`u[m,j]`, `Theta(..)`, `Dinv(..)`,
//!   `Dx(..)`, `S^k(..)`, builtin names).
//! * [`print`]: canonical text, which parses back to the same normal form,
//!   and LaTeX.
//! * [`json`]: the versioned expression schema.
//! * [`cache`]: saved hierarchies.
//! * [`report`]: text and JSON renderings of verification reports.
//! * [`cli`]: subcommands and exit codes.

pub mod cache;
pub mod cli;
pub mod error;
pub mod json;
pub mod parse;
pub mod print;
pub mod report;

pub use cache::{HierarchyCache, HierarchyRecord};
pub use error::Error;
pub use json::{from_json, to_json, ExpressionDoc, JsonError};
pub use parse::{parse, parse_tree, ParseError};
pub use print::{print_canonical, print_latex, Latex};
