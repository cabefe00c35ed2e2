//! Exact computations in the Hopf algebra of word quasi-symmetric functions.
//!
//! The crate is organised bottom-up:
//!
//! - [`packedword`]: packed words, set compositions, compositions and the
//!   index-level combinatorics (packing, quasi-shuffle, composition of
//!   surjections, Lyndon tests).
//! - [`wqsym`]: sparse rational combinations of packed words with the outer,
//!   internal and bullet products, the coproduct and both embeddings of the
//!   noncommutative symmetric functions.
//! - [`charseries`]: degree-truncated series, convolution log/exp, Adams
//!   operations and the quasi-Eulerian idempotents.
//! - [`qshuffle`]: quasi-shuffle algebras over a free commutative algebra
//!   without unit and the right action of packed words on them.
//! - [`qsym`]: quasi-symmetric functions in the monomial basis, Adams
//!   operations, parametrised operators and free generators.
//! - [`expr`] and [`verify`]: expression evaluation and the seeded
//!   verification suites used by the command-line tool.
//!
//! All arithmetic is exact. With the default `parallel` feature the product
//! kernels and the verification suites fan out over a rayon pool; without it
//! every code path runs sequentially and produces identical results.

pub mod charseries;
pub mod error;
pub mod exec;
pub mod expr;
pub mod param;
pub mod packedword;
pub mod qshuffle;
pub mod qsym;
pub mod rational;
pub mod verify;
pub mod wqsym;

pub use charseries::TruncatedSeries;
pub use error::{Error, Result};
pub use exec::Exec;
pub use packedword::{Composition, PackedWord, SetComposition};
pub use qshuffle::{AElement, Monomial, QSElement};
pub use qsym::QSymElement;
pub use rational::Rational;
pub use wqsym::{TensorSquare, WQSymElement};
