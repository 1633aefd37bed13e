use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Operator classes relative to a positive operator `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    #[serde(rename = "selfadjoint")]
    SelfAdjoint,
    Normal,
    Quasinormal,
    Isometry,
    Unitary,
    PartialIsometry,
    Hyponormal,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::SelfAdjoint,
        Property::Normal,
        Property::Quasinormal,
        Property::Isometry,
        Property::Unitary,
        Property::PartialIsometry,
        Property::Hyponormal,
    ];

    /// The classes that have a measure-theoretic criterion for `A = M_u`.
    pub const WITH_CRITERION: [Property; 6] = [
        Property::SelfAdjoint,
        Property::Normal,
        Property::Quasinormal,
        Property::Isometry,
        Property::Unitary,
        Property::PartialIsometry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::SelfAdjoint => "selfadjoint",
            Property::Normal => "normal",
            Property::Quasinormal => "quasinormal",
            Property::Isometry => "isometry",
            Property::Unitary => "unitary",
            Property::PartialIsometry => "partial_isometry",
            Property::Hyponormal => "hyponormal",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Property::ALL
            .into_iter()
            .find(|p| p.name() == key || (key == "self_adjoint" && *p == Property::SelfAdjoint))
            .ok_or_else(|| Error::Input(format!("unknown property '{s}'")))
    }
}
