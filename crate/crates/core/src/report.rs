//! CSV and JSON emission of result records, and parsing of the same
//! formats.
//!
//! Exact values are always serialized as decimal integer strings so that
//! 250-digit coordinates survive a round trip; float columns are provided
//! separately and never stand in for exact ones. CSV uses a comma
//! delimiter, a header row, LF line endings, and UTF-8.

use std::io::{Read, Write};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::codes::UserCoords;
use crate::ring::QuadInt;
use crate::search::{reduced_pair_count, DecayRecord};
use crate::sequences::SequenceRecord;
use crate::{Error, Result};

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("bad integer '{s}': {e}")))
}

/// Flat CSV view of a decay record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub n1: u32,
    pub n2: u32,
    pub detsq_p: String,
    pub detsq_q: String,
    pub detsq_float: f64,
    pub w1_a: String,
    pub w1_b: String,
    pub w1_c: String,
    pub w1_d: String,
    pub w2_a: String,
    pub w2_b: String,
    pub w2_c: String,
    pub w2_d: String,
    pub visited_pairs: u64,
    pub wall_time_s: f64,
}

impl From<&DecayRecord> for DecayRow {
    fn from(record: &DecayRecord) -> Self {
        DecayRow {
            n1: record.n1,
            n2: record.n2,
            detsq_p: record.min_detsq.p.to_string(),
            detsq_q: record.min_detsq.q.to_string(),
            detsq_float: record.min_detsq_float,
            w1_a: record.witness1.a.to_string(),
            w1_b: record.witness1.b.to_string(),
            w1_c: record.witness1.c.to_string(),
            w1_d: record.witness1.d.to_string(),
            w2_a: record.witness2.a.to_string(),
            w2_b: record.witness2.b.to_string(),
            w2_c: record.witness2.c.to_string(),
            w2_d: record.witness2.d.to_string(),
            visited_pairs: record.visited_pairs,
            wall_time_s: record.wall_time_s,
        }
    }
}

impl DecayRow {
    pub fn to_record(&self) -> Result<DecayRecord> {
        Ok(DecayRecord {
            n1: self.n1,
            n2: self.n2,
            min_detsq: QuadInt {
                p: parse_bigint(&self.detsq_p)?,
                q: parse_bigint(&self.detsq_q)?,
            },
            min_detsq_float: self.detsq_float,
            witness1: UserCoords {
                a: parse_bigint(&self.w1_a)?,
                b: parse_bigint(&self.w1_b)?,
                c: parse_bigint(&self.w1_c)?,
                d: parse_bigint(&self.w1_d)?,
            },
            witness2: UserCoords {
                a: parse_bigint(&self.w2_a)?,
                b: parse_bigint(&self.w2_b)?,
                c: parse_bigint(&self.w2_c)?,
                d: parse_bigint(&self.w2_d)?,
            },
            orbit_reduced_count: reduced_pair_count(self.n1, self.n2),
            visited_pairs: self.visited_pairs,
            wall_time_s: self.wall_time_s,
        })
    }
}

pub fn write_decay_csv<W: Write>(records: &[DecayRecord], writer: W) -> Result<()> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    for record in records {
        csv_writer.serialize(DecayRow::from(record))?;
    }
    csv_writer.flush()?;
    Ok(())
}

pub fn read_decay_csv<R: Read>(reader: R) -> Result<Vec<DecayRow>> {
    let mut csv_reader = csv::Reader::from_reader(reader);
    let mut rows = Vec::new();
    for row in csv_reader.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}

/// Nested JSON view of a witness.
fn witness_json(w: &UserCoords) -> serde_json::Value {
    json!({
        "a": w.a.to_string(),
        "b": w.b.to_string(),
        "c": w.c.to_string(),
        "d": w.d.to_string(),
    })
}

pub fn decay_record_json(record: &DecayRecord) -> serde_json::Value {
    json!({
        "n1": record.n1,
        "n2": record.n2,
        "detsq_p": record.min_detsq.p.to_string(),
        "detsq_q": record.min_detsq.q.to_string(),
        "detsq_float": record.min_detsq_float,
        "witness1": witness_json(&record.witness1),
        "witness2": witness_json(&record.witness2),
        "visited_pairs": record.visited_pairs,
        "wall_time_s": record.wall_time_s,
    })
}

fn witness_from_json(value: &serde_json::Value) -> Result<UserCoords> {
    let field = |name: &str| -> Result<BigInt> {
        value
            .get(name)
            .and_then(|v| v.as_str())
            .ok_or_else(|| Error::Parse(format!("missing witness field '{name}'")))
            .and_then(parse_bigint)
    };
    Ok(UserCoords {
        a: field("a")?,
        b: field("b")?,
        c: field("c")?,
        d: field("d")?,
    })
}

pub fn decay_record_from_json(value: &serde_json::Value) -> Result<DecayRecord> {
    let str_field = |name: &str| -> Result<&str> {
        value
            .get(name)
            .and_then(|v| v.as_str())
            .ok_or_else(|| Error::Parse(format!("missing field '{name}'")))
    };
    let num_field = |name: &str| -> Result<f64> {
        value
            .get(name)
            .and_then(|v| v.as_f64())
            .ok_or_else(|| Error::Parse(format!("missing field '{name}'")))
    };
    let n1 = num_field("n1")? as u32;
    let n2 = num_field("n2")? as u32;
    Ok(DecayRecord {
        n1,
        n2,
        min_detsq: QuadInt {
            p: parse_bigint(str_field("detsq_p")?)?,
            q: parse_bigint(str_field("detsq_q")?)?,
        },
        min_detsq_float: num_field("detsq_float")?,
        witness1: witness_from_json(
            value
                .get("witness1")
                .ok_or_else(|| Error::Parse("missing witness1".into()))?,
        )?,
        witness2: witness_from_json(
            value
                .get("witness2")
                .ok_or_else(|| Error::Parse("missing witness2".into()))?,
        )?,
        orbit_reduced_count: reduced_pair_count(n1, n2),
        visited_pairs: num_field("visited_pairs")? as u64,
        wall_time_s: num_field("wall_time_s")?,
    })
}

/// Flat CSV view of a sequence record. δ is rendered with three decimals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceRow {
    pub n: u32,
    pub m: String,
    pub delta: String,
    pub detsq_p: String,
    pub detsq_q: String,
    pub detsq_float: f64,
    pub x1_a: String,
    pub x1_b: String,
    pub x1_c: String,
    pub x1_d: String,
    pub x2_a: String,
    pub x2_b: String,
    pub x2_c: String,
    pub x2_d: String,
}

impl From<&SequenceRecord> for SequenceRow {
    fn from(record: &SequenceRecord) -> Self {
        SequenceRow {
            n: record.n,
            m: record.m.to_string(),
            delta: format!("{:.3}", record.delta_estimate),
            detsq_p: record.detsq.p.to_string(),
            detsq_q: record.detsq.q.to_string(),
            detsq_float: record.detsq.to_f64(),
            x1_a: record.x1.a.to_string(),
            x1_b: record.x1.b.to_string(),
            x1_c: record.x1.c.to_string(),
            x1_d: record.x1.d.to_string(),
            x2_a: record.x2.a.to_string(),
            x2_b: record.x2.b.to_string(),
            x2_c: record.x2.c.to_string(),
            x2_d: record.x2.d.to_string(),
        }
    }
}

pub fn write_sequence_csv<W: Write>(records: &[SequenceRecord], writer: W) -> Result<()> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    for record in records {
        csv_writer.serialize(SequenceRow::from(record))?;
    }
    csv_writer.flush()?;
    Ok(())
}

pub fn read_sequence_csv<R: Read>(reader: R) -> Result<Vec<SequenceRow>> {
    let mut csv_reader = csv::Reader::from_reader(reader);
    let mut rows = Vec::new();
    for row in csv_reader.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}

pub fn sequence_record_json(record: &SequenceRecord) -> serde_json::Value {
    json!({
        "n": record.n,
        "m": record.m.to_string(),
        "delta": format!("{:.3}", record.delta_estimate),
        "detsq_p": record.detsq.p.to_string(),
        "detsq_q": record.detsq.q.to_string(),
        "detsq_float": record.detsq.to_f64(),
        "x1": ring_elem_json(&record.x1),
        "x2": ring_elem_json(&record.x2),
        "z": record.z.to_string(),
        "factors": record.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    })
}

fn ring_elem_json(x: &crate::ring::RingElem) -> serde_json::Value {
    json!({
        "a": x.a.to_string(),
        "b": x.b.to_string(),
        "c": x.c.to_string(),
        "d": x.d.to_string(),
        "rendered": x.to_string(),
    })
}

/// Interpret decay rows as (N, D) fit samples with N = n1 and
/// D = sqrt(detsq_float).
pub fn decay_rows_to_fit_points(rows: &[DecayRow]) -> Vec<(f64, f64)> {
    rows.iter()
        .map(|row| (row.n1 as f64, row.detsq_float.sqrt()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CodeConfig;
    use crate::search::{decay, SearchBox, SearchOptions};
    use crate::sequences::table_rows;

    #[test]
    fn decay_csv_round_trip() {
        let cfg = CodeConfig::default();
        let record = decay(
            SearchBox::new(2, 1).unwrap(),
            &cfg,
            &SearchOptions::default(),
        )
        .unwrap();
        let mut buffer = Vec::new();
        write_decay_csv(std::slice::from_ref(&record), &mut buffer).unwrap();
        let text = String::from_utf8(buffer.clone()).unwrap();
        assert!(text.starts_with("n1,n2,detsq_p,detsq_q,detsq_float,"));
        assert!(!text.contains('\r'));
        let rows = read_decay_csv(buffer.as_slice()).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0], DecayRow::from(&record));
        let back = rows[0].to_record().unwrap();
        assert_eq!(back, record);
    }

    #[test]
    fn decay_json_round_trip() {
        let cfg = CodeConfig::default();
        let record = decay(
            SearchBox::new(1, 1).unwrap(),
            &cfg,
            &SearchOptions::default(),
        )
        .unwrap();
        let value = decay_record_json(&record);
        let back = decay_record_from_json(&value).unwrap();
        assert_eq!(back, record);
    }

    #[test]
    fn sequence_csv_round_trip_preserves_exact_values() {
        let records = table_rows().unwrap();
        let mut buffer = Vec::new();
        write_sequence_csv(&records, &mut buffer).unwrap();
        let rows = read_sequence_csv(buffer.as_slice()).unwrap();
        assert_eq!(rows.len(), records.len());
        for (row, record) in rows.iter().zip(&records) {
            assert_eq!(row, &SequenceRow::from(record));
            assert_eq!(parse_bigint(&row.m).unwrap(), record.m);
            assert_eq!(parse_bigint(&row.x1_a).unwrap(), record.x1.a);
        }
        // three-decimal delta column
        assert_eq!(rows[0].delta, "1.889");
    }
}
