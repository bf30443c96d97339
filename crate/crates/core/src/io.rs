//! SNAP edge-list ingestion and edge-list / id-map output.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{largest_connected_component, BuildOptions, Graph};

/// An ingested graph with the external id of every node.
#[derive(Clone, Debug, PartialEq)]
pub struct Ingested {
    pub graph: Graph,
    pub external_ids: Vec<u64>,
}

/// Parses a whitespace-separated edge list. Lines starting with `#` and blank
/// lines are skipped; extra columns are ignored. The result is symmetrized,
/// loop-free, and trimmed to its largest component. External ids are mapped to
/// dense ids in increasing numeric order.
pub fn read_snap<R: BufRead>(reader: R, source: &str) -> Result<Ingested> {
    let mut raw = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Parse {
            path: source.into(),
            line: idx + 1,
            message,
        };
        let mut fields = trimmed.split_whitespace();
        let mut id = || -> Result<u64> {
            let f = fields.next().ok_or_else(|| bad("expected two node ids".into()))?;
            f.parse::<u64>().map_err(|e| bad(format!("invalid node id {f:?}: {e}")))
        };
        let a = id()?;
        let b = id()?;
        raw.push((a, b));
    }
    let mut dense: BTreeMap<u64, usize> = raw.iter().flat_map(|&(a, b)| [(a, 0), (b, 0)]).collect();
    for (i, v) in dense.values_mut().enumerate() {
        *v = i;
    }
    let external: Vec<u64> = dense.keys().copied().collect();
    let edges: Vec<(usize, usize, f64)> = raw.iter().map(|(a, b)| (dense[a], dense[b], 1.0)).collect();
    let opts = BuildOptions {
        symmetrize: true,
        drop_self_loops: true,
    };
    let full = Graph::from_edges(external.len(), &edges, opts)?;
    if full.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let (graph, map) = largest_connected_component(&full)?;
    let external_ids = map.new_to_old.iter().map(|&v| external[v]).collect();
    Ok(Ingested { graph, external_ids })
}

pub fn ingest_snap(path: impl AsRef<Path>) -> Result<Ingested> {
    let path = path.as_ref();
    let file = File::open(path)?;
    read_snap(BufReader::new(file), &path.display().to_string())
}

/// Writes `i<TAB>j` per undirected edge (`i < j`), unit weights only.
pub fn write_edge_list<W: Write>(mut out: W, g: &Graph) -> Result<()> {
    writeln!(out, "# nodes: {} edges: {}", g.node_count(), g.edge_count())?;
    for (i, j, _) in g.edges() {
        writeln!(out, "{i}\t{j}")?;
    }
    out.flush()?;
    Ok(())
}

/// CSV `node,external_id`.
pub fn write_id_map<W: Write>(out: W, external_ids: &[u64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node", "external_id"])?;
    for (v, id) in external_ids.iter().enumerate() {
        w.write_record([v.to_string(), id.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
