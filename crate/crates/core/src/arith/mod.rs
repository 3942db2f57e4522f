//! Exact arithmetic: Gaussian rationals, polynomials, algebraic extensions.

pub mod ext;
pub mod extpoly;
pub mod gaussian;
pub mod modp;
pub mod linalg;
pub mod poly;
pub mod reduce;
pub mod tripoly;

pub use ext::{adjoin_root, ctx_degree, Adjoined, Ctx, Ext, ExtResult, ExtensionContext, InvError, Split};
pub use gaussian::GaussianRational;
pub use poly::{resultant, Domain, Field, GcdDomain, Ring, UniPoly};
pub use tripoly::{mat, BiPoly, TriPoly};
pub use reduce::{drive, drive_inner, drive_within, Reduce};
