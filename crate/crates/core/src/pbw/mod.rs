//! PBW normal forms in `U(𝔤⊗A)`.
//!
//! Basis order: negative root vectors, then Cartan elements, then positive
//! root vectors; within a class by root (or simple index), then by label.

mod algebra;
mod element;
mod preset;
mod straighten;

pub use algebra::Algebra;
pub use element::{Degree, Element, ElementTermJson, Generator, Monomial};
pub use preset::{make_preset, GenClass, LiePreset, PresetKind};
pub use straighten::{straighten_word, straighten_words, Strategy};

use serde::{Deserialize, Serialize};

/// Which root vectors, `x⁺` or `x⁻`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Sign> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(crate::Error::Config(format!(
                "sign must be + or -, got `{s}`"
            ))),
        }
    }
}
