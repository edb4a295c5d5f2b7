pub mod cli;
pub mod detideal;
pub mod error;
pub mod lattice;
pub mod perm;
pub mod poly;
pub mod polymatroid;
pub mod schubert;

pub use error::{Error, Result};
pub use lattice::LatticeSet;
pub use perm::{all_permutations, Permutation, RankMatrix};
pub use poly::{Exponent, SparsePoly, VarNames};
