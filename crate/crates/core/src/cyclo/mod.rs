//! Cyclotomic machinery: `Ch_N` polynomials, normalized traces, the exceptional
//! list of small-trace cyclotomic integers, and an abelian-field test.

pub mod abelian;
pub mod ch;
pub mod data;
pub mod exceptional;
pub mod field;
pub mod lll;

pub use abelian::{abelian_check, frobenius_prefilter, AbelianVerdict, CyclotomicExpression, PrefilterVerdict};
pub use ch::{ch_polynomial, ch_table, m_value, ChEntry, CH_WEIGHTS};
pub use data::{ch_entries, exceptional_list, CycloTables};
pub use exceptional::{ExceptionalEntry, EXCEPTIONAL_DEFS};
pub use field::CycloInt;
