//! Periodic Zeckendorf numeration systems.
//!
//! A list `L = (e_1, ..., e_N)` defines a collection of digit vectors and a
//! fundamental sequence `H` such that every nonnegative integer has exactly
//! one expansion `Σ ε_k H_k` with `ε` in the collection. When one collection
//! sits inside another, this crate counts how many integers below `x` have a
//! super-collection expansion that already belongs to the subcollection, and
//! computes the exact lim sup / lim inf of that count divided by `x^γ`.
//!
//! - [`collections`]: lists, coefficient functions, block membership.
//! - [`numeration`]: fundamental sequences, evaluation, greedy expansion.
//! - [`duality`]: the bar operator and the counting function `z(x)`.
//! - [`spectra`]: dominant roots and the derived constants.
//! - [`extremal`]: the finite search for the envelope of `z(x)/x^γ`.

pub mod collections;
pub mod duality;
pub mod extremal;
pub mod numeration;
pub mod spectra;

pub use collections::{
    cmp_asc, decompose_blocks, is_member, theta_hat, validate_list, Block, BlockDecomposition,
    BlockKind, CoeffFn, ListError, ListSpec, NotMember,
};
pub use duality::{check_subcollection, default_depth, DualityError, SystemPair};
pub use extremal::{
    count_cn, delta_star, extremes, generating_identity_check, measure_check, ExtremalError,
    ExtremalReport, StarCandidate,
};
pub use numeration::{
    encode_greedy, enumerate_collection, eval_int, fundamental_sequence, FundamentalSequence,
    NumerationError,
};
pub use spectra::{
    alpha_constant, char_poly, derived_constants, dominant_root, Polynomial, SpectralConstants,
    SpectraError,
};
