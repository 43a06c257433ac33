use std::io::Write;
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::BlockCache;
use crate::error::Result;
use crate::feasibility::{decide, expected_cycle_count, Params};
use crate::multigraph::MultiGraph;
use crate::pipeline::construct_with_cache;
use crate::solver::{prove_nonexistence, SearchBudget, SearchOutcome};

#[derive(Clone, Copy, Debug)]
pub struct TableOptions {
    pub check: bool,
    pub oracle_nodes: u64,
    pub oracle_time: Duration,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            check: false,
            oracle_nodes: 200_000,
            oracle_time: Duration::from_secs(5),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub m: usize,
    pub n: usize,
    pub lambda: u32,
    pub feasible: bool,
    pub conditions: String,
    pub cycles: Option<u64>,
    pub status: String,
    /// The oracle found a decomposition the decision rules out.
    #[serde(skip)]
    pub contradiction: bool,
}

fn check_cell(p: Params, feasible: bool, opts: &TableOptions, cache: &BlockCache) -> (String, bool) {
    if feasible {
        return match construct_with_cache(p, cache) {
            Ok(d) => (format!("verified {} cycles", d.len()), false),
            Err(e) => (format!("error: {e}"), false),
        };
    }
    let g = MultiGraph::line_graph_kmn(p.m, p.n, p.lambda);
    let budget = SearchBudget {
        node_limit: opts.oracle_nodes,
        time_limit: opts.oracle_time,
        ..SearchBudget::default()
    };
    match prove_nonexistence(&g, budget) {
        SearchOutcome::NoneExists => ("confirmed".into(), false),
        SearchOutcome::BudgetExceeded(_) => ("unconfirmed (budget)".into(), false),
        SearchOutcome::Found(_) => ("CONTRADICTION: oracle found a decomposition".into(), true),
    }
}

/// One row per `(m, n, lambda)` with `m <= max_m`, `n <= max_n`, `mn >= 4`.
pub fn table_rows(
    max_m: usize,
    max_n: usize,
    lambdas: &[u32],
    opts: &TableOptions,
    cache: &BlockCache,
) -> Vec<TableRow> {
    let cells: Vec<Params> = (1..=max_m)
        .flat_map(|m| (1..=max_n).map(move |n| (m, n)))
        .flat_map(|(m, n)| lambdas.iter().filter_map(move |&l| Params::new(m, n, l).ok()))
        .collect();
    let row = |p: Params| {
        let v = decide(p);
        let conditions = v
            .failed_conditions
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(";");
        let (status, contradiction) = if opts.check {
            check_cell(p, v.feasible, opts, cache)
        } else {
            (String::new(), false)
        };
        TableRow {
            m: p.m,
            n: p.n,
            lambda: p.lambda,
            feasible: v.feasible,
            conditions,
            cycles: expected_cycle_count(p).ok(),
            status,
            contradiction,
        }
    };
    if opts.check {
        cells.into_par_iter().map(row).collect()
    } else {
        cells.into_iter().map(row).collect()
    }
}

pub fn write_csv<W: Write>(rows: &[TableRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(std::io::Error::other)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid() {
        let rows = table_rows(
            4,
            4,
            &[1, 2, 3, 4],
            &TableOptions::default(),
            &BlockCache::in_memory(),
        );
        // 16 pairs minus (1,1), (1,2), (1,3), (2,1), (3,1), four lambdas each
        assert_eq!(rows.len(), 44);
        let r331 = rows.iter().find(|r| (r.m, r.n, r.lambda) == (3, 3, 1)).unwrap();
        assert!(!r331.feasible);
        assert_eq!(r331.conditions, "C2");
        let r332 = rows.iter().find(|r| (r.m, r.n, r.lambda) == (3, 3, 2)).unwrap();
        assert!(r332.feasible);
        assert_eq!(r332.cycles, Some(9));
    }

    #[test]
    fn checked_cells() {
        let opts = TableOptions {
            check: true,
            ..TableOptions::default()
        };
        let cache = BlockCache::in_memory();
        let rows = table_rows(2, 5, &[8], &opts, &cache);
        let r = rows.iter().find(|r| (r.m, r.n) == (2, 5)).unwrap();
        assert_eq!(r.status, "verified 50 cycles");
        let rows = table_rows(2, 3, &[4], &opts, &cache);
        let r = rows.iter().find(|r| (r.m, r.n) == (2, 3)).unwrap();
        assert_eq!(r.status, "confirmed");
        assert!(rows.iter().all(|r| !r.contradiction));
    }

    #[test]
    fn csv_header() {
        let rows = table_rows(2, 2, &[1], &TableOptions::default(), &BlockCache::in_memory());
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "m,n,lambda,feasible,conditions,cycles,status\n2,2,1,true,,1,\n"
        );
    }
}
