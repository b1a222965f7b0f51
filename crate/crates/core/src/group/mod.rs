//! Free groups, finitely presented groups and the tools used to compare
//! and verify them.

mod coset;
mod matching;
mod presentation;
mod snf;
mod tietze;
mod word;

pub use coset::{
    central_in_quotient, is_central, todd_coxeter, todd_coxeter_with, CosetTable, Strategy,
};
pub use matching::presentations_match;
pub use presentation::{hurwitz_act, vankampen, Presentation};
pub use snf::{abelianization, smith_normal_form, Abelianization};
pub use tietze::tietze_simplify;
pub use word::FreeWord;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("braid on {strands} strings acting on {words} words")]
    StrandMismatch { strands: usize, words: usize },
    #[error("coset enumeration exceeded {limit} cosets")]
    Overflow { limit: usize },
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
}

/// Default coset limit for enumerations.
pub const DEFAULT_MAX_COSETS: usize = 10_000_000;
