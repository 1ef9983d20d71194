//! Exact univariate polynomial arithmetic over Z and certified real enclosures.

pub mod cyclotomic;
pub mod dyadic;
pub mod elementary;
pub mod factor;
pub mod gcd;
pub mod modp;
pub mod poly;
pub mod roots;
pub mod sparse;
pub mod sturm;
pub mod transform;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, strip_cyclotomic};
pub use dyadic::{Dyadic, DyadicInterval};
pub use factor::{factorize, Factorization};
pub use gcd::{discriminant, gcd, resultant, squarefree_decomposition, squarefree_part};
pub use poly::IntPolynomial;
pub use roots::{
    count_roots_open, isolate_real_roots, largest_real_root, refine_interval, refine_root, AlgebraicNumber,
    RootCandidate,
};
pub use sparse::SparsePoly;
pub use sturm::{sturm_count, SturmSequence};
pub use transform::{laurent_ascend, laurent_descend, real_cyclotomic, square_transform};
