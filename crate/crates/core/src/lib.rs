pub mod combinatorics;
pub mod constants;
pub mod engine;
pub mod error;
pub mod harmonic;
pub mod identities;
pub mod key;
pub mod oracles;
pub mod precision;
pub mod quadrature;
pub mod series;
pub mod special_values;
pub mod summation;
