//! Elementary loops, unfounded sets and stability checking for disjunctive
//! logic programs with default negation.

pub mod atoms;
pub mod classify;
pub mod elementary;
pub mod error;
pub mod graph;
pub mod parser;
pub mod program;
pub mod report;
pub mod semantics;
pub mod stability;
pub mod unfounded;
pub mod verify;

pub use atoms::{Atom, AtomSet, AtomTable};
pub use error::{Error, Guard, Result};
pub use parser::{parse_program, parse_str, render_program, render_rule, SourceProgram};
pub use program::{Program, ProgramBuilder, Rule};
