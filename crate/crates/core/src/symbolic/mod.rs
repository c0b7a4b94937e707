//! Exact rational-function models of the seed tori.

pub mod poly;
pub mod rational;
pub mod tori;

pub use poly::Poly;
pub use rational::RationalExpr;
pub use tori::{
    compose_word, is_trivial_word, mutate_a_map, mutate_x_map, parse_word, projection_p,
    triviality_report, CoordinateMap, Family, TrivialityReport, WordStep,
};
