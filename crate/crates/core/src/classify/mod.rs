//! Classification engines for 3-spiders, Morrison spiders and Salem numbers.

pub mod ladder;
pub mod morrison;
pub mod pipeline;
pub mod record;
pub mod rho;
pub mod salem;
pub mod tables;
pub mod three;

pub use ladder::{check_printed_claims, derive_ladder, gates, printed_gates, Gate, Ladder};
pub use morrison::{classify_morrison, morrison_bound_path, morrison_brute, MorrisonScope};
pub use pipeline::{check_charpoly, check_spider, DegreeRule};
pub use record::{ClassificationRecord, NotAbelianKind, Provenance, Subject, Verdict, CSV_HEADER};
pub use salem::{salem_check, salem_separation_audit, SalemCandidate, Separation};
pub use tables::{three_spider_a_bound, three_spider_b_table, three_spider_bounds, three_spider_c_bound, BoundTable};
pub use three::{classify_three_spiders, classify_triple, Journal, Scope};
