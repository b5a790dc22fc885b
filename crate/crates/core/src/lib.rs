//! Exact verification of Lie bialgebras, r-matrices, quasi-Lie bialgebroids,
//! Poisson (quasi-)Nijenhuis structures, dynamical r-matrices, Manin
//! quasi-triples and multiplicative bivectors on matrix groups.
//!
//! Every structure is held symbolically over exact coefficients and every
//! defining identity is a predicate returning a [`CheckReport`].
//!
//! # Sign conventions
//!
//! All modules share one set of conventions:
//!
//! * Wedge products are normalised to strictly increasing index tuples with
//!   the sign of the sorting permutation.
//! * The Schouten bracket on `Λg` is
//!   `[x1∧…∧xp, y1∧…∧yq] = Σ (-1)^(i+j) [xi,yj] ∧ x1…x̂i…xp ∧ y1…ŷj…yq`,
//!   so that `[P,Q] = -(-1)^((p-1)(q-1)) [Q,P]` and
//!   `[P, Q∧R] = [P,Q]∧R + (-1)^((p-1)q) Q∧[P,R]`.
//! * On multivector fields the same bracket restricts to the vector-field
//!   bracket and to `[X, f] = X(f)`.
//! * Forms and multivectors pair by determinants (no `1/p!`), e.g.
//!   `(dx∧dy)(∂x, ∂y) = 1`; `⟨ξ∧η, X∧Y⟩ = ξ(X)η(Y) - ξ(Y)η(X)`.
//! * `π♯` contracts the first slot: `⟨π♯ξ, η⟩ = π(ξ, η)`; interior products
//!   also contract the first slot, `ι_{X∧Y}φ = φ(X, Y, ·)`.
//! * `(∧³π♯)φ (ξ,η,ζ) = φ(π♯ξ, π♯η, π♯ζ)`.

pub mod bialgebra;
pub mod dynamical;
pub mod error;
pub mod exterior;
pub mod kernel;
pub mod lie;
pub mod manin;
pub mod matgroup;
pub mod nijenhuis;
pub mod polyfield;
pub mod report;

pub use error::{Error, Result};
pub use exterior::{KDifferential, Multivector};
pub use kernel::{Coeff, Matrix, Poly, RatFunc, Scalar, Vars};
pub use lie::{BilinearForm, ChevalleyData, LieAlgebra};
pub use report::{aggregate, CheckReport, Status};
