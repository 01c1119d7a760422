//! CSV format for traffic records.
//!
//! UTF-8, `\n` line endings, mandatory header, reals written with 17
//! significant digits so that a write/read cycle is lossless.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{AttackType, SimError, TrafficRecord};

pub const CSV_HEADER: &str =
    "packet_delay_ms,packets_dropped,transfer_interval_ms,congested,attack_type,label";

pub fn write_csv<W: Write>(records: &[TrafficRecord], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{:.16e},{},{:.16e},{},{},{}",
            r.packet_delay_ms,
            r.packets_dropped,
            r.transfer_interval_ms,
            u8::from(r.congested),
            r.attack_type,
            r.label()
        )?;
    }
    out.flush()
}

pub fn write_csv_path(records: &[TrafficRecord], path: &Path) -> Result<(), SimError> {
    write_csv(records, BufWriter::new(File::create(path)?))?;
    Ok(())
}

fn parse_error(line: usize, reason: impl Into<String>) -> SimError {
    SimError::ParseError {
        line,
        reason: reason.into(),
    }
}

fn positive_real(line: usize, name: &str, tok: &str) -> Result<f64, SimError> {
    let v: f64 = tok
        .parse()
        .map_err(|_| parse_error(line, format!("{name}: cannot parse {tok:?}")))?;
    if !(v.is_finite() && v > 0.0) {
        return Err(parse_error(line, format!("{name} must be finite and > 0, got {tok}")));
    }
    Ok(v)
}

fn flag(line: usize, name: &str, tok: &str) -> Result<bool, SimError> {
    match tok {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(parse_error(line, format!("{name} must be 0 or 1, got {tok:?}"))),
    }
}

fn parse_row(line: usize, text: &str) -> Result<TrafficRecord, SimError> {
    let fields: Vec<&str> = text.split(',').collect();
    if fields.len() != 6 {
        return Err(parse_error(line, format!("expected 6 fields, got {}", fields.len())));
    }
    let packet_delay_ms = positive_real(line, "packet_delay_ms", fields[0])?;
    let packets_dropped = fields[1]
        .parse::<u32>()
        .map_err(|_| parse_error(line, format!("packets_dropped: cannot parse {:?}", fields[1])))?;
    let transfer_interval_ms = positive_real(line, "transfer_interval_ms", fields[2])?;
    let congested = flag(line, "congested", fields[3])?;
    let attack_type: AttackType = fields[4].parse().map_err(|e| parse_error(line, e))?;
    let label = flag(line, "label", fields[5])?;
    if label != attack_type.is_attack() {
        return Err(parse_error(
            line,
            format!("label {} contradicts attack_type {attack_type}", u8::from(label)),
        ));
    }
    Ok(TrafficRecord {
        packet_delay_ms,
        packets_dropped,
        transfer_interval_ms,
        congested,
        attack_type,
    })
}

/// Reads records; line numbers in errors are 1-based and count the header.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<TrafficRecord>, SimError> {
    let mut lines = BufReader::new(input).lines();
    match lines.next() {
        Some(header) => {
            let header = header?;
            if header.trim_end_matches('\r') != CSV_HEADER {
                return Err(parse_error(1, format!("unexpected header {header:?}")));
            }
        }
        None => return Err(parse_error(1, "missing header")),
    }
    let mut records = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        let text = line.trim_end_matches('\r');
        if text.is_empty() {
            continue;
        }
        records.push(parse_row(idx + 2, text)?);
    }
    Ok(records)
}

pub fn read_csv_path(path: &Path) -> Result<Vec<TrafficRecord>, SimError> {
    read_csv(File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vanet_sim::{generate_dataset, ScenarioConfig};
    use proptest::prelude::*;

    fn round_trip(records: &[TrafficRecord]) -> Vec<TrafficRecord> {
        let mut buf = Vec::new();
        write_csv(records, &mut buf).unwrap();
        read_csv(buf.as_slice()).unwrap()
    }

    #[test]
    fn empty_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), format!("{CSV_HEADER}\n"));
        assert!(read_csv(buf.as_slice()).unwrap().is_empty());
    }

    #[test]
    fn generated_set_round_trips() {
        let r = generate_dataset(&ScenarioConfig::default()).unwrap();
        assert_eq!(round_trip(&r), r);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad_delay = format!("{CSV_HEADER}\n1.0,0,2.0,0,none,0\n-1,0,2.0,0,none,0\n");
        match read_csv(bad_delay.as_bytes()) {
            Err(SimError::ParseError { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let bad_type = format!("{CSV_HEADER}\n1.0,0,2.0,0,smurf,1\n");
        assert!(matches!(
            read_csv(bad_type.as_bytes()),
            Err(SimError::ParseError { line: 2, .. })
        ));
        let bad_label = format!("{CSV_HEADER}\n1.0,0,2.0,0,dos,0\n");
        assert!(read_csv(bad_label.as_bytes()).is_err());
        let short = format!("{CSV_HEADER}\n1.0,0,2.0\n");
        assert!(read_csv(short.as_bytes()).is_err());
        assert!(read_csv("a,b\n".as_bytes()).is_err());
    }

    fn arb_record() -> impl Strategy<Value = TrafficRecord> {
        (
            1e-6f64..1e6,
            any::<u32>(),
            1e-6f64..1e6,
            any::<bool>(),
            prop::sample::select(vec![
                AttackType::None,
                AttackType::Probe,
                AttackType::Dos,
                AttackType::U2r,
                AttackType::R2u,
            ]),
        )
            .prop_map(|(d, p, i, c, a)| TrafficRecord {
                packet_delay_ms: d,
                packets_dropped: p,
                transfer_interval_ms: i,
                congested: c,
                attack_type: a,
            })
    }

    proptest! {
        #[test]
        fn csv_round_trip_is_identity(records in prop::collection::vec(arb_record(), 0..40)) {
            prop_assert_eq!(round_trip(&records), records);
        }
    }
}
