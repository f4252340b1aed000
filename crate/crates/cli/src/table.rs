//! Degree table: one child process per cell so a cell over budget can be
//! killed.

use std::collections::VecDeque;
use std::io::Read;
use std::path::Path;
use std::process::{Child, Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// What a cell child prints on success.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CellResult {
    pub backend: String,
    pub degree: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct Cell {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub region: String,
    pub backend: Option<String>,
    pub degree: Option<usize>,
    /// `ok`, `failed` or `skipped`
    pub status: String,
    pub error: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct DegreeTable {
    #[serde(rename = "K")]
    pub k: usize,
    pub seed: u64,
    pub budget_secs: u64,
    pub cells: Vec<Cell>,
}

pub struct TableSpec {
    pub k: usize,
    pub l_range: (usize, usize),
    pub m_range: (usize, usize),
    pub seed: u64,
    pub budget: Duration,
    pub workers: usize,
}

struct Running {
    index: usize,
    child: Child,
    started: Instant,
}

/// Cells `(M, L)` with `L < M`, sorted by `M` then `L`.
pub fn cell_coords(spec: &TableSpec) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m in spec.m_range.0..=spec.m_range.1 {
        for l in spec.l_range.0..=spec.l_range.1.min(m.saturating_sub(1)) {
            out.push((m, l));
        }
    }
    out
}

fn spawn(exe: &Path, spec: &TableSpec, m: usize, l: usize) -> std::io::Result<Child> {
    Command::new(exe)
        .args(["cell", "--K", &spec.k.to_string(), "--L", &l.to_string(), "--M", &m.to_string()])
        .args(["--seed", &spec.seed.to_string()])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
}

fn finish(mut child: Child, cell: &mut Cell) {
    let mut out = String::new();
    let mut err = String::new();
    if let Some(mut s) = child.stdout.take() {
        let _ = s.read_to_string(&mut out);
    }
    if let Some(mut s) = child.stderr.take() {
        let _ = s.read_to_string(&mut err);
    }
    let status = child.wait();
    match (status, serde_json::from_str::<CellResult>(out.trim())) {
        (Ok(st), Ok(r)) if st.success() => {
            cell.backend = Some(r.backend);
            cell.degree = Some(r.degree);
            cell.status = "ok".into();
        }
        _ => {
            cell.status = "failed".into();
            cell.error = Some(err.trim().to_string());
        }
    }
}

pub fn run_table(exe: &Path, spec: &TableSpec) -> DegreeTable {
    let coords = cell_coords(spec);
    let mut cells: Vec<Cell> = coords
        .iter()
        .map(|&(m, l)| {
            let region =
                sbflat::sbsystem::DesignParams::new(spec.k, l, m).map(|p| p.region().to_string()).unwrap_or_default();
            Cell { m, l, region, backend: None, degree: None, status: "pending".into(), error: None }
        })
        .collect();
    let mut queue: VecDeque<usize> = (0..coords.len()).collect();
    let mut running: Vec<Running> = Vec::new();
    while !queue.is_empty() || !running.is_empty() {
        while running.len() < spec.workers.max(1) {
            let Some(i) = queue.pop_front() else { break };
            let (m, l) = coords[i];
            match spawn(exe, spec, m, l) {
                Ok(child) => running.push(Running { index: i, child, started: Instant::now() }),
                Err(e) => {
                    cells[i].status = "failed".into();
                    cells[i].error = Some(e.to_string());
                }
            }
        }
        let mut still = Vec::new();
        for mut r in running.drain(..) {
            match r.child.try_wait() {
                Ok(Some(_)) => finish(r.child, &mut cells[r.index]),
                Ok(None) if r.started.elapsed() > spec.budget => {
                    let _ = r.child.kill();
                    let _ = r.child.wait();
                    cells[r.index].status = "skipped".into();
                    cells[r.index].error = Some(format!("exceeded {} s budget", spec.budget.as_secs()));
                }
                Ok(None) => still.push(r),
                Err(e) => {
                    cells[r.index].status = "failed".into();
                    cells[r.index].error = Some(e.to_string());
                }
            }
        }
        running = still;
        if !running.is_empty() {
            thread::sleep(Duration::from_millis(20));
        }
    }
    DegreeTable { k: spec.k, seed: spec.seed, budget_secs: spec.budget.as_secs(), cells }
}
