//! Text format for polynomial systems and JSON output.
//!
//! A system file starts with a `vars:` line naming the variables, followed by
//! one polynomial expression per line. Blank lines and lines starting with `#`
//! are ignored; `#` also starts a trailing comment. Expressions use `+ - * / ^`
//! and parentheses; `i` is the imaginary unit; coefficients are integers,
//! fractions and Gaussian rationals; exponents are integers, possibly negative
//! (`y^-2` or `y^(-2)`). A numeric literal may be followed directly by a
//! factor, as in `3x` or `2i`.

mod format;
pub mod json;
mod parser;

pub use format::{format_polynomial, serialize_system};
pub use parser::{parse_constant, parse_system, parse_system_file, ParseError, ParseErrorKind, SystemFile};
