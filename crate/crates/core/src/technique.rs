use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A channel-access technique.
///
/// `Csma1p` and `CsmaCa` share one set of closed-form relations; they differ
/// only in how the simulator drives them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "&'static str")]
pub enum Technique {
    PureAloha,
    SlottedAloha,
    Csma1p,
    CsmaCa,
    Tdma,
    Fdma,
}

impl Technique {
    pub const ALL: [Technique; 6] = [
        Technique::PureAloha,
        Technique::SlottedAloha,
        Technique::Csma1p,
        Technique::CsmaCa,
        Technique::Tdma,
        Technique::Fdma,
    ];

    /// The five techniques that have a frame-level delay decomposition.
    pub const FRAMED: [Technique; 5] = [
        Technique::CsmaCa,
        Technique::Fdma,
        Technique::PureAloha,
        Technique::SlottedAloha,
        Technique::Tdma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Technique::PureAloha => "pure-aloha",
            Technique::SlottedAloha => "slotted-aloha",
            Technique::Csma1p => "csma-1p",
            Technique::CsmaCa => "csma-ca",
            Technique::Tdma => "tdma",
            Technique::Fdma => "fdma",
        }
    }

    /// Stable index used for seed derivation. Never reorder.
    pub fn index(self) -> u64 {
        match self {
            Technique::PureAloha => 0,
            Technique::SlottedAloha => 1,
            Technique::Csma1p => 2,
            Technique::CsmaCa => 3,
            Technique::Tdma => 4,
            Technique::Fdma => 5,
        }
    }

    /// Collision-free schedules: every offered packet is eventually carried.
    pub fn is_scheduled(self) -> bool {
        matches!(self, Technique::Tdma | Technique::Fdma)
    }
}

impl fmt::Display for Technique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Technique {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "pure-aloha" | "aloha" => Ok(Technique::PureAloha),
            "slotted-aloha" | "s-aloha" | "saloha" => Ok(Technique::SlottedAloha),
            "csma-1p" | "csma" => Ok(Technique::Csma1p),
            "csma-ca" => Ok(Technique::CsmaCa),
            "tdma" => Ok(Technique::Tdma),
            "fdma" => Ok(Technique::Fdma),
            other => Err(Error::InvalidParameter(format!("unknown technique '{other}'"))),
        }
    }
}

impl TryFrom<String> for Technique {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl From<Technique> for &'static str {
    fn from(t: Technique) -> Self {
        t.name()
    }
}

/// Which pair of metrics a curve relates. Named `<y>-vs-<x>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "&'static str")]
pub enum Relation {
    DelayVsLoad,
    ThroughputVsLoad,
    DelayVsThroughput,
}

impl Relation {
    pub const ALL: [Relation; 3] = [
        Relation::DelayVsLoad,
        Relation::ThroughputVsLoad,
        Relation::DelayVsThroughput,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::DelayVsLoad => "d-vs-g",
            Relation::ThroughputVsLoad => "t-vs-g",
            Relation::DelayVsThroughput => "d-vs-t",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "d-vs-g" => Ok(Relation::DelayVsLoad),
            "t-vs-g" => Ok(Relation::ThroughputVsLoad),
            "d-vs-t" => Ok(Relation::DelayVsThroughput),
            other => Err(Error::InvalidParameter(format!("unknown relation '{other}'"))),
        }
    }
}

impl TryFrom<String> for Relation {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl From<Relation> for &'static str {
    fn from(r: Relation) -> Self {
        r.name()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for t in Technique::ALL {
            assert_eq!(t.name().parse::<Technique>().unwrap(), t);
        }
        for r in Relation::ALL {
            assert_eq!(r.name().parse::<Relation>().unwrap(), r);
        }
        assert!("token-ring".parse::<Technique>().is_err());
    }

    #[test]
    fn framed_set_is_alphabetical() {
        let names: Vec<_> = Technique::FRAMED.iter().map(|t| t.name()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }
}
