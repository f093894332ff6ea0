//! Converse bounds on quantum communication and entanglement distillation
//! assisted by k-extendible channels.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense Hermitian linear algebra (Kronecker products, partial
//!   traces, factor permutations, a Jacobi eigensolver, PSD projection).
//! - [`states`]: maximally entangled, isotropic, depolarizing and erasure
//!   states, local channels, fidelity.
//! - [`extendibility`]: k-extendibility checks with extension certificates,
//!   the `U ⊗ U*` twirl and threshold bisection.
//! - [`hypothesis`]: exact Neyman–Pearson `D_h^ε` for Bernoulli products and
//!   commuting states, a brute-force oracle, an exact rational engine and
//!   `D_max`.
//! - [`bounds`]: rate upper bounds for the depolarizing and erasure channels,
//!   the interleaved-protocol bound, the antidegradable bound and the
//!   optimization over the extension order.
//! - [`cli`]: table generation, JSON/CSV emission and the self-test used by
//!   the `unext` binary.
//!
//! ```
//! use unext::bounds::{depolarizing_bound, BoundQuery, ExtOrder};
//! use unext::states::ChannelSpec;
//!
//! let q = BoundQuery::new(ChannelSpec::depolarizing(0.15).unwrap(), 1, 0.05, ExtOrder::Finite(2))
//!     .unwrap()
//!     .with_sigma_param(0.75);
//! let r = depolarizing_bound(&q).unwrap();
//! assert!((r.rate_bound - 1.2f64.log2()).abs() < 1e-9);
//! ```

pub mod bounds;
pub mod cli;
pub mod config;
pub mod error;
pub mod extendibility;
pub mod hypothesis;
pub mod linalg;
pub mod states;

pub use error::{Error, Result};
