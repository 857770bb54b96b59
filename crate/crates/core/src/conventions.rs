//! Convention flags under which every identity check runs.
//!
//! Several product identities only hold under one reading of an ambiguous
//! formula. Rather than silently pick one, each check records the flags it
//! was evaluated with so a report can always be re-run under the others.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Where the `m` index of the f-function products starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndexBase {
    /// `m >= 0`: half-integer exponents start at 1/2, integer ones at 1.
    #[serde(rename = "m>=0")]
    Zero,
    /// `m >= 1`, the bound as literally printed.
    #[serde(rename = "m>=1")]
    One,
}

impl IndexBase {
    pub fn first(self) -> u32 {
        match self {
            IndexBase::Zero => 0,
            IndexBase::One => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EtaSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl EtaSign {
    pub fn factor(self) -> f64 {
        match self {
            EtaSign::Plus => 1.0,
            EtaSign::Minus => -1.0,
        }
    }
}

/// How the shift `η(τ)` entering `s + iη(τ)` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EtaReading {
    /// `η = ±1/(2 Im τ)`. Then `e^{-iηα} = -1`, which turns `Z(s)/Z(s+1+it)`
    /// products in `-q` into products in `+q`.
    #[serde(rename = "half-period")]
    HalfPeriod,
    /// `η = ±(2τ)^{-1}`, complex.
    #[serde(rename = "literal")]
    Literal,
}

/// Which function the symbol `R` denotes in the product identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RReading {
    /// Two-factor ratio `Z(s)/Z(s+1±it)`.
    #[serde(rename = "ratio")]
    Ratio,
    /// Three-factor Ruelle function `Z(s)Z(s+2)/Z(s+1)`.
    #[serde(rename = "triple")]
    Triple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Conventions {
    pub index_base: IndexBase,
    pub eta_sign: EtaSign,
    pub eta_reading: EtaReading,
    pub r_reading: RReading,
}

impl Default for Conventions {
    fn default() -> Self {
        Self {
            index_base: IndexBase::Zero,
            eta_sign: EtaSign::Plus,
            eta_reading: EtaReading::HalfPeriod,
            r_reading: RReading::Ratio,
        }
    }
}

impl Conventions {
    pub fn with_index_base(mut self, base: IndexBase) -> Self {
        self.index_base = base;
        self
    }

    pub fn with_eta_sign(mut self, sign: EtaSign) -> Self {
        self.eta_sign = sign;
        self
    }

    pub fn with_eta_reading(mut self, reading: EtaReading) -> Self {
        self.eta_reading = reading;
        self
    }

    pub fn with_r_reading(mut self, reading: RReading) -> Self {
        self.r_reading = reading;
        self
    }

    /// Every combination of the flags that affect spectral-side evaluations,
    /// in a fixed order.
    pub fn spectral_grid(index_base: IndexBase) -> Vec<Conventions> {
        let mut out = Vec::with_capacity(8);
        for r_reading in [RReading::Ratio, RReading::Triple] {
            for eta_reading in [EtaReading::HalfPeriod, EtaReading::Literal] {
                for eta_sign in [EtaSign::Plus, EtaSign::Minus] {
                    out.push(Conventions {
                        index_base,
                        eta_sign,
                        eta_reading,
                        r_reading,
                    });
                }
            }
        }
        out
    }
}

macro_rules! string_enum {
    ($ty:ty { $($variant:path => $text:literal),+ $(,)? }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let text = match self { $($variant => $text),+ };
                f.write_str(text)
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($text => Ok($variant),)+
                    other => Err(Error::InvalidArgument(format!(
                        "unrecognised value `{other}` for {}",
                        stringify!($ty)
                    ))),
                }
            }
        }
    };
}

string_enum!(IndexBase { IndexBase::Zero => "0", IndexBase::One => "1" });
string_enum!(EtaSign { EtaSign::Plus => "+", EtaSign::Minus => "-" });
string_enum!(EtaReading { EtaReading::HalfPeriod => "half-period", EtaReading::Literal => "literal" });
string_enum!(RReading { RReading::Ratio => "ratio", RReading::Triple => "triple" });
