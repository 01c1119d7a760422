use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{AttackType, SimError, TrafficRecord};

/// Feature distributions for one (class, congestion) cell. Log-normal
/// parameters are in ln-milliseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellModel {
    pub delay_mu: f64,
    pub delay_sigma: f64,
    pub drop_rate: f64,
    pub interval_mu: f64,
    pub interval_sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassCells {
    pub uncongested: CellModel,
    pub congested: CellModel,
}

impl ClassCells {
    fn cell(&self, congested: bool) -> &CellModel {
        if congested {
            &self.congested
        } else {
            &self.uncongested
        }
    }
}

/// Nonnegative weights (or ln-delay shifts) over the four attack types.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttackMix {
    pub probe: f64,
    pub dos: f64,
    pub u2r: f64,
    pub r2u: f64,
}

impl AttackMix {
    fn get(&self, t: AttackType) -> f64 {
        match t {
            AttackType::Probe => self.probe,
            AttackType::Dos => self.dos,
            AttackType::U2r => self.u2r,
            AttackType::R2u => self.r2u,
            AttackType::None => 0.0,
        }
    }

    fn values(&self) -> [f64; 4] {
        [self.probe, self.dos, self.u2r, self.r2u]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub n_records: usize,
    pub n_vehicles: usize,
    pub attack_fraction: f64,
    pub congested_fraction: f64,
    pub attack_mix: AttackMix,
    pub normal: ClassCells,
    pub attack: ClassCells,
    /// Std-dev of the per-vehicle ln-delay offset.
    pub vehicle_jitter_sigma: f64,
    /// Extra ln-delay per attack type; `None` leaves attack types as
    /// metadata only.
    #[serde(default)]
    pub type_delay_shift: Option<AttackMix>,
    pub seed: u64,
}

/// Frozen default scenario; mirrors `configs/default_scenario.json`.
impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            n_records: 600,
            n_vehicles: 52,
            attack_fraction: 0.5,
            congested_fraction: 0.5,
            attack_mix: AttackMix {
                probe: 0.4,
                dos: 0.3,
                u2r: 0.15,
                r2u: 0.15,
            },
            normal: ClassCells {
                uncongested: CellModel {
                    delay_mu: 3.0,
                    delay_sigma: 0.25,
                    drop_rate: 0.5,
                    interval_mu: 4.6,
                    interval_sigma: 0.2,
                },
                congested: CellModel {
                    delay_mu: 3.3,
                    delay_sigma: 0.25,
                    drop_rate: 2.0,
                    interval_mu: 4.8,
                    interval_sigma: 0.25,
                },
            },
            attack: ClassCells {
                uncongested: CellModel {
                    delay_mu: 4.4,
                    delay_sigma: 0.25,
                    drop_rate: 4.0,
                    interval_mu: 3.9,
                    interval_sigma: 0.3,
                },
                congested: CellModel {
                    delay_mu: 4.6,
                    delay_sigma: 0.25,
                    drop_rate: 6.0,
                    interval_mu: 4.0,
                    interval_sigma: 0.3,
                },
            },
            vehicle_jitter_sigma: 0.05,
            type_delay_shift: None,
            seed: 42,
        }
    }
}

fn config_error(field: &str, reason: impl Into<String>) -> SimError {
    SimError::ConfigError {
        field: field.to_string(),
        reason: reason.into(),
    }
}

fn check_fraction(field: &str, v: f64) -> Result<(), SimError> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(config_error(field, format!("{v} is not in [0, 1]")))
    }
}

fn check_cell(field: &str, c: &CellModel) -> Result<(), SimError> {
    let finite = [c.delay_mu, c.delay_sigma, c.drop_rate, c.interval_mu, c.interval_sigma];
    if finite.iter().any(|v| !v.is_finite()) {
        return Err(config_error(field, "non-finite parameter"));
    }
    if c.delay_sigma <= 0.0 {
        return Err(config_error(&format!("{field}.delay_sigma"), "must be > 0"));
    }
    if c.interval_sigma <= 0.0 {
        return Err(config_error(&format!("{field}.interval_sigma"), "must be > 0"));
    }
    if c.drop_rate < 0.0 {
        return Err(config_error(&format!("{field}.drop_rate"), "must be >= 0"));
    }
    Ok(())
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        if self.n_records == 0 {
            return Err(config_error("n_records", "must be at least 1"));
        }
        if self.n_vehicles == 0 {
            return Err(config_error("n_vehicles", "must be at least 1"));
        }
        check_fraction("attack_fraction", self.attack_fraction)?;
        check_fraction("congested_fraction", self.congested_fraction)?;
        let mix = self.attack_mix.values();
        if mix.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(config_error("attack_mix", "weights must be finite and nonnegative"));
        }
        if mix.iter().sum::<f64>() <= 0.0 {
            return Err(config_error("attack_mix", "weights must sum to a positive value"));
        }
        check_cell("normal.uncongested", &self.normal.uncongested)?;
        check_cell("normal.congested", &self.normal.congested)?;
        check_cell("attack.uncongested", &self.attack.uncongested)?;
        check_cell("attack.congested", &self.attack.congested)?;
        if !(self.vehicle_jitter_sigma.is_finite() && self.vehicle_jitter_sigma >= 0.0) {
            return Err(config_error("vehicle_jitter_sigma", "must be finite and >= 0"));
        }
        if let Some(shift) = &self.type_delay_shift {
            if shift.values().iter().any(|v| !v.is_finite()) {
                return Err(config_error("type_delay_shift", "shifts must be finite"));
            }
        }
        Ok(())
    }

    fn pick_attack(&self, u: f64) -> AttackType {
        let weights = self.attack_mix.values();
        let total: f64 = weights.iter().sum();
        let mut acc = 0.0;
        for (t, w) in AttackType::ATTACKS.iter().zip(weights) {
            acc += w / total;
            if u < acc && w > 0.0 {
                return *t;
            }
        }
        // rounding left u beyond the cumulative sum: last nonzero weight
        *AttackType::ATTACKS
            .iter()
            .zip(weights)
            .rev()
            .find(|(_, w)| *w > 0.0)
            .map(|(t, _)| t)
            .expect("validated mix has a positive weight")
    }
}

/// Generates `config.n_records` records.
///
/// The generator is `ChaCha8Rng::seed_from_u64(config.seed)`. Draw order:
/// first one standard normal per vehicle (vehicle ln-delay offsets, skipped
/// when `vehicle_jitter_sigma == 0`); then, per record: congestion uniform,
/// attack uniform, attack-type uniform (attack records only), vehicle index,
/// delay standard normal, drop count (Poisson, skipped when the rate is 0),
/// interval standard normal.
pub fn generate_dataset(config: &ScenarioConfig) -> Result<Vec<TrafficRecord>, SimError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let offsets: Vec<f64> = (0..config.n_vehicles)
        .map(|_| {
            if config.vehicle_jitter_sigma > 0.0 {
                let z: f64 = rng.sample(StandardNormal);
                config.vehicle_jitter_sigma * z
            } else {
                0.0
            }
        })
        .collect();

    let mut records = Vec::with_capacity(config.n_records);
    for _ in 0..config.n_records {
        let congested = rng.random::<f64>() < config.congested_fraction;
        let is_attack = rng.random::<f64>() < config.attack_fraction;
        let attack_type = if is_attack {
            config.pick_attack(rng.random::<f64>())
        } else {
            AttackType::None
        };
        let vehicle = rng.random_range(0..config.n_vehicles);

        let cell = if is_attack { &config.attack } else { &config.normal }.cell(congested);
        let shift = config
            .type_delay_shift
            .as_ref()
            .map_or(0.0, |s| s.get(attack_type));

        let z_delay: f64 = rng.sample(StandardNormal);
        let packet_delay_ms =
            (cell.delay_mu + shift + offsets[vehicle] + cell.delay_sigma * z_delay).exp();
        let packets_dropped = if cell.drop_rate > 0.0 {
            let poisson = Poisson::new(cell.drop_rate)
                .map_err(|e| config_error("drop_rate", e.to_string()))?;
            poisson.sample(&mut rng) as u32
        } else {
            0
        };
        let z_interval: f64 = rng.sample(StandardNormal);
        let transfer_interval_ms = (cell.interval_mu + cell.interval_sigma * z_interval).exp();

        records.push(TrafficRecord {
            packet_delay_ms,
            packets_dropped,
            transfer_interval_ms,
            congested,
            attack_type,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_matches_shipped_config() {
        let shipped: ScenarioConfig =
            serde_json::from_str(include_str!("../../configs/default_scenario.json")).unwrap();
        assert_eq!(shipped, ScenarioConfig::default());
    }

    #[test]
    fn deterministic_per_seed() {
        let c = ScenarioConfig::default();
        assert_eq!(generate_dataset(&c).unwrap(), generate_dataset(&c).unwrap());
        let other = ScenarioConfig { seed: 43, ..c.clone() };
        assert_ne!(generate_dataset(&c).unwrap(), generate_dataset(&other).unwrap());
    }

    #[test]
    fn no_attacks_when_fraction_zero() {
        let c = ScenarioConfig {
            attack_fraction: 0.0,
            ..Default::default()
        };
        let r = generate_dataset(&c).unwrap();
        assert_eq!(r.len(), 600);
        assert!(r.iter().all(|t| t.label() == 0 && t.attack_type == AttackType::None));
    }

    #[test]
    fn records_are_valid() {
        let r = generate_dataset(&ScenarioConfig::default()).unwrap();
        for t in &r {
            assert!(t.packet_delay_ms > 0.0 && t.packet_delay_ms.is_finite());
            assert!(t.transfer_interval_ms > 0.0 && t.transfer_interval_ms.is_finite());
            assert_eq!(t.label() == 1, t.attack_type != AttackType::None);
        }
    }

    #[test]
    fn attack_fraction_concentrates() {
        let c = ScenarioConfig {
            n_records: 10_000,
            attack_fraction: 0.3,
            ..Default::default()
        };
        let r = generate_dataset(&c).unwrap();
        let frac = r.iter().filter(|t| t.label() == 1).count() as f64 / r.len() as f64;
        assert!((frac - 0.3).abs() <= 0.03, "{frac}");
    }

    #[test]
    fn per_cell_log_delay_means() {
        let base = ScenarioConfig::default();
        for (attack, congested) in [(false, false), (false, true), (true, false), (true, true)] {
            let c = ScenarioConfig {
                n_records: 10_000,
                attack_fraction: if attack { 1.0 } else { 0.0 },
                congested_fraction: if congested { 1.0 } else { 0.0 },
                ..base.clone()
            };
            let cells = if attack { &c.attack } else { &c.normal };
            let mu = cells.cell(congested).delay_mu;
            let r = generate_dataset(&c).unwrap();
            let mean = r.iter().map(|t| t.packet_delay_ms.ln()).sum::<f64>() / r.len() as f64;
            assert!((mean - mu).abs() <= 0.1, "cell ({attack}, {congested}): {mean} vs {mu}");
        }
    }

    #[test]
    fn type_shift_moves_delays() {
        let shifted = ScenarioConfig {
            attack_fraction: 1.0,
            attack_mix: AttackMix { probe: 0.0, dos: 1.0, u2r: 0.0, r2u: 0.0 },
            type_delay_shift: Some(AttackMix { probe: 0.0, dos: 1.0, u2r: 0.0, r2u: 0.0 }),
            n_records: 2000,
            ..Default::default()
        };
        let plain = ScenarioConfig { type_delay_shift: None, ..shifted.clone() };
        let mean = |c: &ScenarioConfig| {
            let r = generate_dataset(c).unwrap();
            assert!(r.iter().all(|t| t.attack_type == AttackType::Dos));
            r.iter().map(|t| t.packet_delay_ms.ln()).sum::<f64>() / r.len() as f64
        };
        assert!((mean(&shifted) - mean(&plain) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn invalid_configs_name_the_field() {
        let cases: Vec<(ScenarioConfig, &str)> = vec![
            (ScenarioConfig { n_records: 0, ..Default::default() }, "n_records"),
            (ScenarioConfig { attack_fraction: 1.5, ..Default::default() }, "attack_fraction"),
            (
                ScenarioConfig {
                    attack_mix: AttackMix { probe: 0.0, dos: 0.0, u2r: 0.0, r2u: 0.0 },
                    ..Default::default()
                },
                "attack_mix",
            ),
            (
                {
                    let mut c = ScenarioConfig::default();
                    c.attack.congested.delay_sigma = 0.0;
                    c
                },
                "attack.congested.delay_sigma",
            ),
        ];
        for (c, field) in cases {
            match generate_dataset(&c) {
                Err(SimError::ConfigError { field: f, .. }) => assert_eq!(f, field),
                other => panic!("expected ConfigError for {field}, got {other:?}"),
            }
        }
    }
}
