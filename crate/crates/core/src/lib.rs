//! Exact computation with the algebras `A_h = F⟨x, ŷ⟩/(ŷx − xŷ − h)` viewed
//! inside the Weyl algebra `A₁` via `ŷ = yh`: their invariants, derivations,
//! and the Lie algebra `HH¹(A_h)` of outer derivations, over ℚ and 𝔽_p.

pub mod ahstructure;
pub mod coeffpoly;
pub mod derivations;
pub mod hochschild;
pub mod random;
pub mod weylcore;

pub use ahstructure::{AhContext, AhError};
pub use coeffpoly::{BiPoly, Coeff, FieldSpec, Poly, PolyError};
pub use derivations::{Derivation, DerivationError};
pub use weylcore::WeylElement;
