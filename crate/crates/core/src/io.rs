//! Instance persistence: a canonical JSON document and a lossy edge list,
//! plus JSON arrays for witnesses and certificates.

use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{Channel, GnrpInstance, ModelParams};
use crate::geometry::TorusPoint;

pub const INSTANCE_SCHEMA_VERSION: u32 = 1;

/// On-disk form of an instance: kept edges as `[u, v, channel]` with
/// channel 1, 2 or 3 (both).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub schema_version: u32,
    pub params: ModelParams,
    pub points: Vec<[f64; 2]>,
    pub edges: Vec<[u64; 3]>,
}

impl InstanceDoc {
    pub fn from_instance(inst: &GnrpInstance) -> Self {
        InstanceDoc {
            schema_version: INSTANCE_SCHEMA_VERSION,
            params: *inst.params(),
            points: inst.points().iter().map(|p| [p.x, p.y]).collect(),
            edges: inst
                .kept_edges()
                .map(|(u, v, c)| [u as u64, v as u64, c.code() as u64])
                .collect(),
        }
    }

    pub fn into_instance(self) -> Result<GnrpInstance> {
        if self.schema_version != INSTANCE_SCHEMA_VERSION {
            return Err(Error::Malformed(format!(
                "unsupported instance schema_version {}",
                self.schema_version
            )));
        }
        let points = self
            .points
            .iter()
            .map(|&[x, y]| TorusPoint::new(x, y))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Malformed(e.to_string()))?;
        let edges = self
            .edges
            .iter()
            .map(|&[u, v, c]| {
                let c = u8::try_from(c)
                    .ok()
                    .and_then(Channel::from_code)
                    .ok_or_else(|| Error::Malformed(format!("bad channel {c} on edge ({u}, {v})")))?;
                Ok((u as usize, v as usize, c))
            })
            .collect::<Result<Vec<_>>>()?;
        GnrpInstance::from_parts(self.params, points, &edges)
    }
}

pub fn write_instance_json<W: Write>(inst: &GnrpInstance, mut out: W) -> Result<()> {
    serde_json::to_writer(&mut out, &InstanceDoc::from_instance(inst))?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn read_instance_json<R: Read>(input: R) -> Result<GnrpInstance> {
    let doc: InstanceDoc = serde_json::from_reader(BufReader::new(input))?;
    doc.into_instance()
}

/// One `u v` line per kept edge (0-indexed, `u < v`). Coordinates and
/// channels are dropped; the first line says so.
pub fn write_edge_list<W: Write>(inst: &GnrpInstance, mut out: W) -> Result<()> {
    writeln!(out, "# lossy edge list: n={} (no coordinates, no channels)", inst.n())?;
    for (u, v, _) in inst.kept_edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// Reads an edge list written by [`write_edge_list`] or any whitespace
/// separated `u v` file; `#` lines are skipped.
pub fn read_edge_list<R: Read>(input: R) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for (k, line) in BufReader::new(input).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => return Err(Error::Malformed(format!("line {}: expected `u v`", k + 1))),
        }
    }
    Ok(edges)
}

/// Witness or certificate as a JSON array of vertex ids.
pub fn write_ids<W: Write, T: Copy + Into<u64>>(ids: &[T], mut out: W) -> Result<()> {
    let ids: Vec<u64> = ids.iter().map(|&v| v.into()).collect();
    serde_json::to_writer(&mut out, &ids)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn read_ids<R: Read>(input: R) -> Result<Vec<u64>> {
    Ok(serde_json::from_reader(BufReader::new(input))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::generate;

    #[test]
    fn json_round_trip_is_exact() {
        for (n, r, p) in [(400, 0.1, 0.5), (50, 0.3, 1.0), (1, 0.2, 0.0)] {
            let inst = generate(&ModelParams::new(n, r, p, 11).unwrap()).unwrap();
            let mut buf = Vec::new();
            write_instance_json(&inst, &mut buf).unwrap();
            let back = read_instance_json(&buf[..]).unwrap();
            assert_eq!(back, inst);
            let mut again = Vec::new();
            write_instance_json(&back, &mut again).unwrap();
            assert_eq!(again, buf);
        }
    }

    #[test]
    fn rejects_tampered_documents() {
        let inst = generate(&ModelParams::new(60, 0.2, 0.5, 3).unwrap()).unwrap();
        let mut doc = InstanceDoc::from_instance(&inst);
        doc.edges[0][2] = 0;
        assert!(doc.clone().into_instance().is_err());
        doc.edges[0][2] = 1;
        doc.schema_version = 9;
        assert!(doc.into_instance().is_err());
    }

    #[test]
    fn edge_list_and_ids() {
        let inst = generate(&ModelParams::new(80, 0.2, 0.7, 5).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&inst, &mut buf).unwrap();
        let edges = read_edge_list(&buf[..]).unwrap();
        let expect: Vec<_> = inst.kept_edges().map(|(u, v, _)| (u, v)).collect();
        assert_eq!(edges, expect);
        assert!(read_edge_list(&b"1 2 3\n"[..]).is_err());

        let mut buf = Vec::new();
        write_ids(&[3u32, 1, 2], &mut buf).unwrap();
        assert_eq!(buf, b"[3,1,2]\n");
        assert_eq!(read_ids(&buf[..]).unwrap(), vec![3, 1, 2]);
    }
}
