use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use bgft::digraph::{self, add_directed_chord, directed_cycle, undirected_cycle};
use bgft::Graph;
use clap::{Args, ValueEnum};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    UndirectedCycle,
    DirectedCycle,
    PerturbedCycle,
    File,
}

/// Every knob of an experiment. Defaults reproduce the reference protocol.
#[derive(Args, Debug, Clone)]
pub struct ExperimentConfig {
    #[arg(long, value_enum, default_value_t = GraphKind::PerturbedCycle, global = true)]
    pub graph: GraphKind,
    /// Edge list or Matrix Market (`.mtx`) file, with `--graph file`.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 64, global = true)]
    pub n: usize,
    /// Chord weight of the perturbed cycle.
    #[arg(long, default_value_t = 20.0, global = true)]
    pub eps: f64,
    #[arg(long, default_value_t = 0, global = true)]
    pub chord_src: usize,
    /// Defaults to n/2.
    #[arg(long, global = true)]
    pub chord_dst: Option<usize>,
    /// Band size K.
    #[arg(long, default_value_t = 8, global = true)]
    pub k: usize,
    /// Number of sampled nodes.
    #[arg(long, default_value_t = 20, global = true)]
    pub m: usize,
    /// Heat filter time.
    #[arg(long, default_value_t = 2.0, global = true)]
    pub tau: f64,
    /// Standard deviation of the real Gaussian sample noise.
    #[arg(long, default_value_t = 0.0, global = true)]
    pub noise: f64,
    /// Seed of the ChaCha20 generator behind every random draw.
    #[arg(long, env = "BGFT_SEED", default_value_t = 0, global = true)]
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn label(&self) -> String {
        match self.graph {
            GraphKind::UndirectedCycle => "undirected-cycle".into(),
            GraphKind::DirectedCycle => "directed-cycle".into(),
            GraphKind::PerturbedCycle => "perturbed-cycle".into(),
            GraphKind::File => self.input.as_ref().map(|p| p.display().to_string()).unwrap_or_default(),
        }
    }

    pub fn with_graph(&self, graph: GraphKind) -> Self {
        Self { graph, ..self.clone() }
    }

    pub fn build_graph(&self) -> Result<Graph> {
        let g = match self.graph {
            GraphKind::UndirectedCycle => undirected_cycle(self.n)?,
            GraphKind::DirectedCycle => directed_cycle(self.n)?,
            GraphKind::PerturbedCycle => {
                let dst = self.chord_dst.unwrap_or(self.n / 2);
                add_directed_chord(&directed_cycle(self.n)?, self.eps, self.chord_src, dst)?
            }
            GraphKind::File => {
                let Some(path) = &self.input else {
                    bail!("--graph file requires --input PATH");
                };
                let is_mtx = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("mtx"));
                let loaded = if is_mtx { digraph::load_matrix_market(path) } else { digraph::load_edge_list(path) };
                loaded.with_context(|| format!("reading graph {}", path.display()))?
            }
        };
        Ok(g)
    }
}
