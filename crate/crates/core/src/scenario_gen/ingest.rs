//! Per-grid activity records from CSV.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct RawActivityRecord {
    pub grid_id: u64,
    pub slot_index: usize,
    pub internet_activity: f64,
}

/// Which measurement grids feed which station.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridAssignment {
    /// The macro cell carries the summed activity of two grids.
    pub mbs_grids: [u64; 2],
    /// One grid per small cell, in small-cell order.
    pub sbs_grids: Vec<u64>,
}

impl GridAssignment {
    fn grids(&self) -> impl Iterator<Item = u64> + '_ {
        self.mbs_grids.iter().chain(&self.sbs_grids).copied()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IngestReport {
    /// Raw activity per station, macro first.
    pub series: Vec<Vec<f64>>,
    /// `(grid_id, slot)` pairs absent from the file and filled with zero.
    pub filled: Vec<(u64, usize)>,
}

pub fn ingest_activity_csv(
    path: &Path,
    assignment: &GridAssignment,
    num_slots: usize,
) -> Result<IngestReport> {
    let file = std::fs::File::open(path)?;
    ingest_activity(file, assignment, num_slots)
}

/// Reads `grid_id,slot_index,internet_activity` records. Rows for the same
/// grid and slot are summed; rows for grids nobody uses are skipped.
pub fn ingest_activity(
    reader: impl Read,
    assignment: &GridAssignment,
    num_slots: usize,
) -> Result<IngestReport> {
    let wanted: BTreeSet<u64> = assignment.grids().collect();
    let mut per_grid: BTreeMap<u64, Vec<Option<f64>>> = BTreeMap::new();

    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| parse_error(&e, 1))?.clone();
    for want in ["grid_id", "slot_index", "internet_activity"] {
        if !headers.iter().any(|h| h == want) {
            return Err(Error::Parse {
                line: 1,
                message: format!("missing column '{want}'"),
            });
        }
    }
    for row in rdr.records() {
        let row = row.map_err(|e| parse_error(&e, 0))?;
        let line = row.position().map_or(0, |p| p.line());
        let rec: RawActivityRecord = row
            .deserialize(Some(&headers))
            .map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        if !(rec.internet_activity >= 0.0 && rec.internet_activity.is_finite()) {
            return Err(Error::Parse {
                line,
                message: format!("activity {} is not a non-negative number", rec.internet_activity),
            });
        }
        if rec.slot_index >= num_slots {
            return Err(Error::Parse {
                line,
                message: format!("slot {} outside 0..{num_slots}", rec.slot_index),
            });
        }
        if !wanted.contains(&rec.grid_id) {
            continue;
        }
        let slots = per_grid
            .entry(rec.grid_id)
            .or_insert_with(|| vec![None; num_slots]);
        *slots[rec.slot_index].get_or_insert(0.0) += rec.internet_activity;
    }

    let mut filled = Vec::new();
    let mut grid_series = |id: u64| -> Result<Vec<f64>> {
        let slots = per_grid.get(&id).ok_or_else(|| {
            Error::Config(format!("grid {id} is assigned to a station but absent from the file"))
        })?;
        Ok(slots
            .iter()
            .enumerate()
            .map(|(t, v)| {
                v.unwrap_or_else(|| {
                    filled.push((id, t));
                    0.0
                })
            })
            .collect())
    };
    let a = grid_series(assignment.mbs_grids[0])?;
    let b = if assignment.mbs_grids[1] == assignment.mbs_grids[0] {
        a.clone()
    } else {
        grid_series(assignment.mbs_grids[1])?
    };
    let mut series = vec![a.iter().zip(&b).map(|(x, y)| x + y).collect()];
    for id in &assignment.sbs_grids {
        series.push(grid_series(*id)?);
    }
    filled.sort_unstable();
    filled.dedup();
    for (id, t) in &filled {
        log::warn!("grid {id} has no record for slot {t}; using 0");
    }
    Ok(IngestReport { series, filled })
}

fn parse_error(e: &csv::Error, fallback_line: u64) -> Error {
    Error::Parse {
        line: e.position().map_or(fallback_line, |p| p.line()),
        message: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_cell(mbs: [u64; 2], sbs: u64) -> GridAssignment {
        GridAssignment {
            mbs_grids: mbs,
            sbs_grids: vec![sbs],
        }
    }

    #[test]
    fn constant_single_grid() {
        let csv = "grid_id,slot_index,internet_activity\n7,0,5.0\n7,1,5.0\n7,2,5.0\n";
        let r = ingest_activity(csv.as_bytes(), &one_cell([7, 7], 7), 3).unwrap();
        assert_eq!(r.series[1], vec![5.0; 3]);
        assert!(r.filled.is_empty());
    }

    #[test]
    fn macro_sums_two_grids() {
        let csv = "grid_id,slot_index,internet_activity\n\
                   1,0,2.0\n2,0,3.0\n1,1,2.0\n2,1,3.0\n3,0,1\n3,1,1\n";
        let r = ingest_activity(csv.as_bytes(), &one_cell([1, 2], 3), 2).unwrap();
        assert_eq!(r.series[0], vec![5.0, 5.0]);
    }

    #[test]
    fn duplicate_rows_add_and_unused_grids_skip() {
        let csv = "grid_id,slot_index,internet_activity\n\
                   1,0,2.0\n1,0,0.5\n99,0,1e9\n1,1,1\n";
        let r = ingest_activity(csv.as_bytes(), &one_cell([1, 1], 1), 2).unwrap();
        assert_eq!(r.series[1], vec![2.5, 1.0]);
    }

    #[test]
    fn missing_slot_filled_with_zero() {
        let csv = "grid_id,slot_index,internet_activity\n4,0,1.5\n4,2,2.5\n";
        let r = ingest_activity(csv.as_bytes(), &one_cell([4, 4], 4), 3).unwrap();
        assert_eq!(r.series[1], vec![1.5, 0.0, 2.5]);
        assert_eq!(r.filled, vec![(4, 1)]);
    }

    #[test]
    fn malformed_row_reports_line() {
        let csv = "grid_id,slot_index,internet_activity\n4,0,1.5\n4,1,abc\n";
        match ingest_activity(csv.as_bytes(), &one_cell([4, 4], 4), 3) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let csv = "grid_id,slot_index,internet_activity\n4,0,-1\n";
        assert!(matches!(
            ingest_activity(csv.as_bytes(), &one_cell([4, 4], 4), 3),
            Err(Error::Parse { line: 2, .. })
        ));
        let csv = "grid_id,slot_index,internet_activity\n4,9,1\n";
        assert!(matches!(
            ingest_activity(csv.as_bytes(), &one_cell([4, 4], 4), 3),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn unmapped_grid_is_config_error() {
        let csv = "grid_id,slot_index,internet_activity\n4,0,1.5\n";
        assert!(matches!(
            ingest_activity(csv.as_bytes(), &one_cell([4, 4], 5), 1),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn reads_from_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("activity.csv");
        std::fs::write(&path, "grid_id,slot_index,internet_activity\n1,0,3\n").unwrap();
        let r = ingest_activity_csv(&path, &one_cell([1, 1], 1), 1).unwrap();
        assert_eq!(r.series, vec![vec![6.0], vec![3.0]]);
    }
}
