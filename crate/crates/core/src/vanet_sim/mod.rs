//! Seeded generator of labelled synthetic VANET traffic observations.
//!
//! Each record is one monitored message: its packet delay, the packets
//! dropped around it, the transfer interval, whether the channel was
//! congested, and whether it belongs to an attack (and which kind).

mod io;
mod scenario;

pub use io::{read_csv, read_csv_path, write_csv, write_csv_path, CSV_HEADER};
pub use scenario::{generate_dataset, AttackMix, CellModel, ClassCells, ScenarioConfig};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackType {
    None,
    /// Reconnaissance of a target to find weaknesses.
    Probe,
    /// Resource exhaustion.
    Dos,
    /// User-to-root privilege escalation.
    U2r,
    /// Remote-to-user exploitation via malicious packets.
    R2u,
}

impl AttackType {
    pub const ATTACKS: [AttackType; 4] = [
        AttackType::Probe,
        AttackType::Dos,
        AttackType::U2r,
        AttackType::R2u,
    ];

    pub fn token(self) -> &'static str {
        match self {
            AttackType::None => "none",
            AttackType::Probe => "probe",
            AttackType::Dos => "dos",
            AttackType::U2r => "u2r",
            AttackType::R2u => "r2u",
        }
    }

    pub fn is_attack(self) -> bool {
        self != AttackType::None
    }
}

impl fmt::Display for AttackType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for AttackType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(AttackType::None),
            "probe" => Ok(AttackType::Probe),
            "dos" => Ok(AttackType::Dos),
            "u2r" => Ok(AttackType::U2r),
            "r2u" => Ok(AttackType::R2u),
            other => Err(format!("unknown attack_type {other:?}")),
        }
    }
}

/// One simulated network observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrafficRecord {
    pub packet_delay_ms: f64,
    pub packets_dropped: u32,
    pub transfer_interval_ms: f64,
    pub congested: bool,
    pub attack_type: AttackType,
}

impl TrafficRecord {
    /// 1 for attack traffic, 0 for normal traffic.
    pub fn label(&self) -> u8 {
        u8::from(self.attack_type.is_attack())
    }
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid scenario config field `{field}`: {reason}")]
    ConfigError { field: String, reason: String },
    #[error("line {line}: {reason}")]
    ParseError { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
