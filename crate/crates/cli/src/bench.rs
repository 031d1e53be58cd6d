//! The benchmark harness: seeded instance groups, one CSV record per
//! instance, and a hard assertion of the partial-solution-set cap
//! `max_set <= (d+1)^k` on every run.
//!
//! A corpus spec is a semicolon-separated list of groups,
//! `construction:key=value,...`, for example
//!
//! ```text
//! pathwidth:n=6,m=4,c=2,count=5,seed=11;eth:n=6,m=4,count=5,seed=3
//! ```
//!
//! Timing is opt-in: by default the `millis` column is zero so that a fixed
//! seed reproduces the CSV byte for byte.

use anyhow::{anyhow, bail, Result};
use ipwidth_core::matroid::ordering_width;
use ipwidth_core::reductions::{reduce_binary, reduce_eth, reduce_pathwidth, IpInstance};
use ipwidth_core::solver::{solve_pathwidth_dp, stage_bound_check};

use crate::corpus::{random_cnf, random_three_cnf, rng_from_seed};

pub const CSV_HEADER: &str = "id,m,n,d,k,max_set,millis";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Pathwidth,
    Binary,
    Eth,
}

impl Construction {
    pub fn name(&self) -> &'static str {
        match self {
            Construction::Pathwidth => "pathwidth",
            Construction::Binary => "binary",
            Construction::Eth => "eth",
        }
    }
}

/// One seeded group of a bench corpus.
#[derive(Debug, Clone)]
pub struct BenchGroup {
    pub construction: Construction,
    pub vars: usize,
    pub clauses: usize,
    pub blocks: usize,
    pub count: usize,
    pub seed: u64,
}

/// One CSV row: instance id, dimensions, largest target entry, the width of
/// the emitted ordering, the largest partial-solution set, and wall time.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub id: String,
    pub m: usize,
    pub n: usize,
    pub d: i64,
    pub k: usize,
    pub max_set: usize,
    pub millis: u64,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.id, self.m, self.n, self.d, self.k, self.max_set, self.millis
        )
    }
}

/// Parses a corpus spec; groups without `seed=` fall back to `default_seed`.
pub fn parse_corpus_spec(spec: &str, default_seed: u64) -> Result<Vec<BenchGroup>> {
    let mut groups = Vec::new();
    for part in spec.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, rest) = part
            .split_once(':')
            .ok_or_else(|| anyhow!("group {part:?} must look like construction:key=value,..."))?;
        let construction = match name {
            "pathwidth" => Construction::Pathwidth,
            "binary" => Construction::Binary,
            "eth" => Construction::Eth,
            other => bail!("unknown construction {other:?}"),
        };
        let mut group = BenchGroup {
            construction,
            vars: 4,
            clauses: 3,
            blocks: 2,
            count: 1,
            seed: default_seed,
        };
        for kv in rest.split(',') {
            let kv = kv.trim();
            if kv.is_empty() {
                continue;
            }
            let (key, value) = kv
                .split_once('=')
                .ok_or_else(|| anyhow!("expected key=value, got {kv:?}"))?;
            match key {
                "n" => group.vars = value.parse()?,
                "m" => group.clauses = value.parse()?,
                "c" => group.blocks = value.parse()?,
                "count" => group.count = value.parse()?,
                "seed" => group.seed = value.parse()?,
                other => bail!("unknown corpus key {other:?}"),
            }
        }
        groups.push(group);
    }
    if groups.is_empty() {
        bail!("corpus spec is empty");
    }
    Ok(groups)
}

/// Runs every group: generate, reduce, solve, measure. Records appear in
/// generation order. Returns an error if any run violates the set-size cap.
pub fn run_bench(groups: &[BenchGroup], measure: bool) -> Result<Vec<BenchRecord>> {
    let mut records = Vec::new();
    for group in groups {
        let mut rng = rng_from_seed(group.seed);
        for idx in 0..group.count {
            let (id, inst) = match group.construction {
                Construction::Pathwidth => {
                    let phi = random_cnf(&mut rng, group.vars, group.clauses, 3);
                    let inst = reduce_pathwidth(&phi, group.blocks)?;
                    (group_id(group, idx), inst)
                }
                Construction::Binary => {
                    let phi = random_cnf(&mut rng, group.vars, group.clauses, 3);
                    let inst = reduce_binary(&phi, group.blocks)?;
                    (group_id(group, idx), inst)
                }
                Construction::Eth => {
                    let phi = random_three_cnf(&mut rng, group.vars.max(3), group.clauses);
                    let inst = reduce_eth(&phi)?;
                    (group_id(group, idx), inst)
                }
            };
            records.push(bench_one(&id, &inst, measure)?);
        }
    }
    Ok(records)
}

fn group_id(group: &BenchGroup, idx: usize) -> String {
    format!(
        "{}-n{}-m{}-c{}-s{}-{:03}",
        group.construction.name(),
        group.vars,
        group.clauses,
        group.blocks,
        group.seed,
        idx
    )
}

fn bench_one(id: &str, inst: &IpInstance, measure: bool) -> Result<BenchRecord> {
    let started = std::time::Instant::now();
    let report = solve_pathwidth_dp(inst)?;
    let millis = if measure { started.elapsed().as_millis() as u64 } else { 0 };
    if !stage_bound_check(&report, inst) {
        bail!("instance {id} violated the partial-solution-set cap");
    }
    let ordering = inst.ordering().cloned().unwrap_or_else(|| {
        ipwidth_core::matroid::PathOrdering::natural(inst.cols())
    });
    let k = ordering_width(&inst.to_rational_matrix(), &ordering)
        .map_err(|e| anyhow!("width computation failed: {e}"))?;
    Ok(BenchRecord {
        id: id.to_string(),
        m: inst.rows(),
        n: inst.cols(),
        d: inst.max_b(),
        k,
        max_set: report.stats.max_set_size,
        millis,
    })
}

/// Renders records as a CSV document with header.
pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for record in records {
        out.push_str(&record.csv_row());
        out.push('\n');
    }
    out
}
