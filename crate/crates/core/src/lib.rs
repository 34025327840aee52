//! Calculator for a family of branch groups acting on spherically
//! homogeneous rooted trees whose valencies are pairwise distinct primes
//! l_0, l_1, ... >= 7.
//!
//! The group G = <a, b> combines a rooted rotation `a` of order l_0 with a
//! directed automorphism defined level-recursively by
//! b_n = (b_{n+1}, a_{n+1}, 1, ..., 1). Everything here works with words in
//! these generators:
//!
//! * [`words`] — grammar, parsing, printing and normal forms;
//! * [`engine`] — evaluation as tree automorphisms through sparse section
//!   maps: portraits, vertex actions, budgeted triviality and equality
//!   decisions, stabilizer membership;
//! * [`maps`] — abelianization maps, spine estimates and a batch suite for
//!   the finite structural identities of the group;
//! * [`relations`] — the constructive search for a non-trivial free word
//!   w(x, y) with w(g1, g2) = 1 for arbitrary inputs;
//! * [`growth`] — Cayley-ball censuses and the growth lower-bound
//!   experiments;
//! * [`arith`], [`tree`] — supporting number theory and tree addressing.

pub mod arith;
pub mod engine;
pub mod error;
pub mod growth;
pub mod maps;
pub mod relations;
pub(crate) mod serde_util;
pub mod tree;
pub mod words;

pub use engine::{Portrait, TriState, Witness};
pub use error::{Error, Result};
pub use tree::{PrimeSequence, Provenance, VertexPath};
pub use words::{CanonicalBA, FreeSymbol, FreeWord2, Letter, Symbol, SymExpr, Word};
