pub mod affine;
pub mod characters;
pub mod error;
pub mod fusion;
pub mod linalg;
pub mod oracle;
pub mod rational;
pub mod record;
pub mod roots;
pub mod series;
pub mod theta;
pub mod verify;
pub mod wreduction;

pub use error::{Error, Result};
pub use linalg::{Matrix, RVec};
pub use rational::{q, Rational};
pub use series::{GradedSeries, Monomial, SeriesDiff, Support, Term, WeightMap, WeightSpace};
