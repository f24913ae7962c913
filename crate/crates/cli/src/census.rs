//! Parallel, checkpointed census runs and their reports.

use std::fs;
use std::path::{Path, PathBuf};

use cospec_core::census::{CensusAccumulator, CensusReport};
use cospec_core::generate::{extend, generate_all, Augmentable};
use cospec_core::spectra::{MatrixKind, SpectralKey};
use cospec_core::{canonical_form, graph6, Graph};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Graphs processed between checkpoint writes.
pub const CHECKPOINT_EVERY: usize = 10_000;

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub jobs: usize,
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_every: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { jobs: 1, checkpoint: None, checkpoint_every: CHECKPOINT_EVERY }
    }
}

/// Saved progress of a census over internally generated graphs: every child
/// of the parents before `next_parent` has been added.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: usize,
    pub kind: String,
    pub next_parent: usize,
    /// Spectral key and graph6 canonical form of every graph so far.
    pub entries: Vec<(String, String)>,
}

impl Checkpoint {
    pub fn from_accumulator(acc: &CensusAccumulator, next_parent: usize) -> Self {
        Checkpoint {
            n: acc.n(),
            kind: acc.kind().tag().to_string(),
            next_parent,
            entries: acc.entries().map(|(k, f)| (k.serialize(), f.as_str().to_string())).collect(),
        }
    }

    pub fn into_accumulator(self) -> CliResult<(CensusAccumulator, usize)> {
        let kind: MatrixKind = self.kind.parse()?;
        let mut acc = CensusAccumulator::new(self.n, kind);
        for (key, form) in self.entries {
            let key: SpectralKey = key.parse()?;
            if key.kind() != kind {
                return Err(CliError::Domain(format!("checkpoint key {key} in a {kind} census")));
            }
            let g = graph6::decode(&form)?;
            if g.order() != self.n {
                return Err(CliError::Domain(format!("checkpoint graph {form} has the wrong order")));
            }
            acc.insert(key, canonical_form(&g));
        }
        Ok((acc, self.next_parent))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Writes through a temporary file so an interrupted write leaves the
    /// previous checkpoint intact.
    pub fn save(&self, path: &Path) -> CliResult<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(self)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn pool(jobs: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| CliError::Domain(e.to_string()))
}

fn shard(parents: &[Augmentable], n: usize, kind: MatrixKind) -> CensusAccumulator {
    parents
        .par_iter()
        .map(|p| {
            let mut acc = CensusAccumulator::new(n, kind);
            for g in extend(p) {
                acc.add(&g).expect("children have order n");
            }
            acc
        })
        .reduce(
            || CensusAccumulator::new(n, kind),
            |mut a, b| {
                a.merge(b);
                a
            },
        )
}

/// Census over every graph of order `n`. Work is split by parent in the
/// augmentation tree; with a checkpoint path, progress is resumed from and
/// saved to that file.
pub fn run_parallel_census(n: usize, kind: MatrixKind, opts: &CensusOptions) -> CliResult<CensusReport> {
    if n == 0 {
        return Ok(cospec_core::census::run_census(0, kind));
    }
    let parents = generate_all(n).into_parents();
    let (mut acc, mut next) = match &opts.checkpoint {
        Some(path) if path.exists() => {
            let (acc, next) = Checkpoint::load(path)?.into_accumulator()?;
            if acc.n() != n || acc.kind() != kind || next > parents.len() {
                return Err(CliError::Domain(format!("checkpoint {} belongs to a different census", path.display())));
            }
            (acc, next)
        }
        _ => (CensusAccumulator::new(n, kind), 0),
    };
    let batch = 16 * opts.jobs.max(1);
    let pool = pool(opts.jobs)?;
    let mut since_save = 0;
    while next < parents.len() {
        let end = (next + batch).min(parents.len());
        let part = pool.install(|| shard(&parents[next..end], n, kind));
        since_save += part.total();
        acc.merge(part);
        next = end;
        if let Some(path) = &opts.checkpoint {
            if since_save >= opts.checkpoint_every || next == parents.len() {
                Checkpoint::from_accumulator(&acc, next).save(path)?;
                since_save = 0;
            }
        }
    }
    Ok(acc.finish())
}

/// Census over the given graphs, which must all have order `n`.
pub fn census_from_graphs(n: usize, kind: MatrixKind, graphs: &[Graph], jobs: usize) -> CliResult<CensusReport> {
    if let Some(g) = graphs.iter().find(|g| g.order() != n) {
        return Err(CliError::Domain(format!("graph of order {} in a census of order {n}", g.order())));
    }
    let acc = pool(jobs)?.install(|| {
        graphs
            .par_iter()
            .fold(
                || CensusAccumulator::new(n, kind),
                |mut acc, g| {
                    acc.add(g).expect("orders checked");
                    acc
                },
            )
            .reduce(
                || CensusAccumulator::new(n, kind),
                |mut a, b| {
                    a.merge(b);
                    a
                },
            )
    });
    Ok(acc.finish())
}

#[derive(Serialize)]
pub struct ClassJson {
    pub key: String,
    pub members: Vec<String>,
}

#[derive(Serialize)]
pub struct ReportJson {
    pub n: usize,
    pub kind: String,
    pub total_graphs: usize,
    pub with_mate: usize,
    pub mate_pairs: usize,
    pub classes: Vec<ClassJson>,
}

pub fn report_json(r: &CensusReport) -> ReportJson {
    ReportJson {
        n: r.n,
        kind: r.kind.tag().to_string(),
        total_graphs: r.total_graphs,
        with_mate: r.with_mate,
        mate_pairs: r.mate_pairs(),
        classes: r
            .classes
            .iter()
            .map(|c| ClassJson {
                key: c.key.serialize(),
                members: c.members.iter().map(|f| f.as_str().to_string()).collect(),
            })
            .collect(),
    }
}

pub fn report_text(r: &CensusReport) -> String {
    format!(
        "order: {}\nkind: {}\ngraphs: {}\nwith_mate: {}\nclasses: {}\npairs: {}\n",
        r.n,
        r.kind,
        r.total_graphs,
        r.with_mate,
        r.classes.len(),
        r.mate_pairs()
    )
}

/// Counts of graphs with a mate, one row per order, columns in
/// `MatrixKind::CLASSICAL` order. Each row is `(n, #graphs, counts)`.
pub fn table_rows(max_n: usize, opts: &CensusOptions) -> CliResult<Vec<(usize, usize, [usize; 4])>> {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let mut counts = [0; 4];
        let mut total = 0;
        for (i, kind) in MatrixKind::CLASSICAL.into_iter().enumerate() {
            let opts = CensusOptions { checkpoint: None, ..opts.clone() };
            let r = run_parallel_census(n, kind, &opts)?;
            counts[i] = r.with_mate;
            total = r.total_graphs;
        }
        rows.push((n, total, counts));
    }
    Ok(rows)
}

pub fn format_table(rows: &[(usize, usize, [usize; 4])]) -> String {
    let mut out = format!("{:>2} {:>8} {:>8} {:>8} {:>8} {:>8}\n", "n", "#graphs", "A", "L", "Q", "NL");
    for (n, total, c) in rows {
        out += &format!("{:>2} {:>8} {:>8} {:>8} {:>8} {:>8}\n", n, total, c[0], c[1], c[2], c[3]);
    }
    out
}
