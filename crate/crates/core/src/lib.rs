//! Rooted trees, the Butcher–Connes–Kreimer Hopf algebra, characters and
//! Runge–Kutta analysis.

pub mod character;
pub mod ees;
pub mod hopf;
pub mod poly;
pub mod rk;
pub mod scalar;
pub mod stability;
pub mod tree;

pub use character::Character;
pub use hopf::AlgebraElement;
pub use rk::{AnyTableau, ButcherTableau};
pub use scalar::{Field, Q2, Q3, QuadExt, Rational, Scalar};
pub use tree::{Forest, Tree};

/// Characters with exact rational values.
pub type ExactCharacter = Character<Rational>;
/// Characters with `Q(√2)` values.
pub type QuadCharacter = Character<Q2>;
/// Characters with double-precision values.
pub type FloatCharacter = Character<f64>;
/// Tableaux with rational entries.
pub type ExactTableau = ButcherTableau<Rational>;
/// Tableaux with `Q(√2)` entries.
pub type QuadTableau = ButcherTableau<Q2>;
/// Tableaux with double-precision entries.
pub type FloatTableau = ButcherTableau<f64>;
