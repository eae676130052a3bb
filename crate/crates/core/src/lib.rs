//! Exact arithmetic in hyperalgebras of map algebras `U(𝔤⊗A)` for `𝔤 = 𝔰𝔩₂, 𝔰𝔩₃`,
//! together with the elements `p`, `D^±` and `𝔻` used to build integral forms,
//! and executable checks of the identities they satisfy.

pub mod combinatorics;
mod error;
pub mod forms;
pub mod identities;
pub mod parallel;
pub mod pbw;

pub use error::{Error, Result};
