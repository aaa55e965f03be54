//! Exact computer algebra for the cyclotomic double shuffle apparatus.
//!
//! Everything here works at a fixed truncation degree `D` over the rationals:
//! noncommutative series on the alphabet `{x_0} ∪ {x_g | g ∈ Z/N}`, the
//! harmonic (stuffle-type) coproducts on the Y-algebra, the crossed-product
//! model of the de Rham algebra-module, the twisted Magnus group actions, a
//! degree-by-degree solver for double shuffle elements, the Betti group
//! algebra of the free group `F_2` with its cyclotomic filtration, and the
//! comparison isomorphisms that transport the de Rham coproducts to Betti
//! coproducts.
//!
//! All coefficients are exact `BigRational`s; no floating point is used
//! anywhere. Values are immutable after construction and every operation is
//! a pure function, so sharing across threads is safe.
//!
//! ```
//! use dmr_core::cyclic::EmbeddingDatum;
//! use dmr_core::dmr::{dmr_check, dmr_solve, FreeVarPolicy};
//! use dmr_core::scalar::{qi, qr};
//! use dmr_core::series::{Letter, Word};
//!
//! let iota = EmbeddingDatum::reference(1);
//! let psi = dmr_solve(1, &iota, &qi(1), 3, FreeVarPolicy::AllZero).unwrap();
//! assert!(dmr_check(&iota, &qi(1), &psi).unwrap().all_pass());
//! let depth_two = Word(vec![Letter::X0, Letter::x1(1)]);
//! assert_eq!(psi.coeff(&depth_two).unwrap(), qr(-1, 24));
//! ```

pub mod betti;
pub mod crossed;
pub mod cyclic;
pub mod dmr;
pub mod error;
pub mod harmonic;
pub mod json;
pub mod linalg;
pub mod lyndon;
pub mod magnus;
pub mod scalar;
pub mod series;
pub mod transport;
pub mod verify;

pub use cyclic::{CyclicElem, EmbeddingDatum, GroupAut};
pub use error::{Error, Result};
pub use scalar::Q;
pub use series::{Letter, SeriesX, TensorSeriesX, Word};
