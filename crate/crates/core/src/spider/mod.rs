//! Spider graphs and their spectra.

pub mod charpoly;
pub mod graph;
pub mod spectrum;

pub use charpoly::{
    char_poly, charpoly_matrix, morrison_charpoly, morrison_v, path_charpoly, spider_charpoly,
    three_spider_charpoly, three_spider_v,
};
pub use graph::{build_spider, Graph, SpiderSpec};
pub use spectrum::{count_outside_two, perron_frobenius, SpectrumSummary};
