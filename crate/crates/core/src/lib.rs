//! Combinatorics of unipotent characters of finite classical groups at primes
//! where the order `d` of `q` is even: charged symbols, the level-2 Fock space
//! crystal, co-cores and blocks, d-small symbols with their cup diagrams, and
//! decomposition matrices of d-small series computed three independent ways.

pub mod cohooks;
pub mod crystal;
pub mod decomp;
pub mod dsmall;
pub mod enumerate;
pub mod export;
pub mod error;
pub mod fock;
pub mod kl;
pub mod laurent;
pub mod series;
pub mod symbols;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
