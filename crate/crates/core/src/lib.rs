//! Exact-arithmetic decision procedures for highest-weight and
//! quasi-hereditary structure on finite-dimensional algebras presented by
//! quivers with relations.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`], [`matrix`] — exact scalars (rationals, prime fields) and
//!   dense linear algebra with deterministic elimination;
//! * [`presentation`], [`structconst`], [`algebra`] — quiver presentations,
//!   raw structure constants, radicals, ideals, quotients, corners;
//! * [`module`] — the category of finite-dimensional right modules: simples,
//!   projectives, Hom spaces, sub/quotient calculus, decompositions, tensor
//!   products;
//! * [`homalg`] — minimal projective resolutions, Ext/Tor, Yoneda and
//!   universal extensions;
//! * [`recoll`] — the six functors of an idempotent recollement, counit
//!   sequences, heredity and homological-embedding tests;
//! * [`hwc`] — standard modules, filtration checks, the highest-weight /
//!   quasi-hereditary checkers and searches;
//! * [`exceptional`] — exceptional sequences, standardisation, tilting and
//!   strict-fullness checks;
//! * [`report`] — machine-readable reports shared with the CLI.
//!
//! Everything is generic over the scalar type through the [`field::Field`]
//! trait; `Q*` and `Fp*` aliases below fix the two concrete instantiations.

pub mod algebra;
pub mod error;
pub mod decompose;
pub mod exceptional;
pub mod field;
pub mod homalg;
pub mod hwc;
pub mod matrix;
pub mod modexpr;
pub mod module;
pub mod pool;
pub mod presentation;
pub mod recoll;
pub mod structconst;
pub mod tensor;
pub mod verdict;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use verdict::Verdict;

pub type QMatrix = matrix::Matrix<Rationals>;
pub type QAlgebra = algebra::Algebra<Rationals>;
pub type QModule = module::Module<Rationals>;
pub type FpModule = module::Module<PrimeField>;
pub type FpMatrix = matrix::Matrix<PrimeField>;
pub type FpAlgebra = algebra::Algebra<PrimeField>;


/// Bundled example presentations, byte-identical to the files in
/// `fixtures/`.
pub mod fixtures {
    pub const A2: &str = include_str!("../../../fixtures/a2.alg");
    pub const A3: &str = include_str!("../../../fixtures/a3.alg");
    pub const SS3: &str = include_str!("../../../fixtures/ss3.alg");
    pub const KALCK: &str = include_str!("../../../fixtures/kalck.alg");
    pub const DUAL_NUMBERS: &str = include_str!("../../../fixtures/dual_numbers.sc");
}
