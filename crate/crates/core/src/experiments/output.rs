//! CSV rows (one per observation) and the JSON summary document.

use std::io::Write;

use super::{SweepSummary, TrialRecord};
use crate::error::Result;

pub const CSV_SCHEMA_VERSION: u32 = 1;
pub const SUMMARY_SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: [&str; 11] = [
    "theorem", "n", "r", "p", "c_or_K", "trial", "seed", "quantity", "value", "ratio", "wall_ms",
];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes the fixed header then one row per observation, in record order.
/// Missing values are empty fields.
pub fn write_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for rec in records {
        for o in &rec.observations {
            w.write_record([
                rec.theorem.tag().to_string(),
                rec.n.to_string(),
                rec.r.to_string(),
                rec.p.to_string(),
                opt(rec.c_or_k),
                rec.trial.to_string(),
                rec.seed.to_string(),
                o.quantity.name().to_string(),
                opt(o.value),
                opt(o.ratio),
                opt(rec.wall_ms),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary_json<W: Write>(summary: &SweepSummary, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, summary)?;
    out.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{run_sweep, GridKind, ParamGrid, SweepConfig, Theorem};

    #[test]
    fn csv_layout() {
        let cfg = SweepConfig::new(
            Theorem::Connectivity,
            500,
            0.1,
            ParamGrid::new(GridKind::C, vec![1.0, 2.0]),
            2,
            1,
        );
        let out = run_sweep(&cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&out.records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "theorem,n,r,p,c_or_K,trial,seed,quantity,value,ratio,wall_ms"
        );
        // 2 points x 2 trials x 3 quantities
        assert_eq!(lines.clone().count(), 12);
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first[0], "connectivity");
        assert_eq!(first[4], "1");
        assert_eq!(first[7], "connected");
        assert_eq!(first[10], "");

        let mut json = Vec::new();
        write_summary_json(&out.summary, &mut json).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&json).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["points"].as_array().unwrap().len(), 2);
    }
}
