//! Lyndon words over finite ordered alphabets: factorization, exact counts,
//! run and block statistics of random Lyndon words, and the limit law of the
//! normalized standard right factor.
//!
//! Letters are stored as `u8` ranks `0..q`, with `0` the smallest letter.

pub mod counting;
pub mod error;
pub mod factorize;
pub mod runs_blocks;
pub mod sampling;
pub mod stats;
pub mod words;

pub use counting::{atom_mass, count_lyndon, count_nonprimitive, count_primitive, AtomMass, CountReport};
pub use error::{Error, Result};
pub use factorize::{
    cfl_factorization, enumerate_lyndon, factorization_tree, standard_right_factor, FactorizationTree,
    StandardFactorization,
};
pub use runs_blocks::{
    classify_good, decompose_blocks, permute_blocks, run_profile, BlockDecomposition, BlockParams, GoodCondition,
    GoodWordReport, RunProfile,
};
pub use sampling::{sample_lyndon, sample_word, sample_word_geometric, LyndonSampler, RngState};
pub use stats::{
    exact_r_distribution, ks_statistic, montecarlo_r, tail_check_runs, EmpiricalReport, ExactDistribution, LimitLaw,
    MonteCarloConfig, TailReport,
};
pub use words::{Alphabet, Word};
