//! Theorem checks swept over a corpus of finite rings, and the counterexample hunter.

pub mod corpus;
pub mod hunt;
pub mod verify;

pub use corpus::{default_specs, Corpus, CorpusEntry, CORPUS_SIZE_CAP};
pub use hunt::{hunt, HuntHit, HuntQuery};
pub use verify::{verify, verify_cr3_integers, CaseVerdict, RingLab, TheoremCase, TheoremId};

use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Verdict counts of a sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub verified: usize,
    pub counterexample: usize,
    pub unknown: usize,
    pub inapplicable: usize,
}

impl Summary {
    fn add(&mut self, v: CaseVerdict) {
        match v {
            CaseVerdict::Verified => self.verified += 1,
            CaseVerdict::Counterexample => self.counterexample += 1,
            CaseVerdict::Unknown => self.unknown += 1,
            CaseVerdict::Inapplicable => self.inapplicable += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.verified + self.counterexample + self.unknown + self.inapplicable
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub corpus: Vec<String>,
    pub theorems: Vec<&'static str>,
    pub cases: Vec<TheoremCase>,
    pub summary: Summary,
    pub by_theorem: BTreeMap<&'static str, Summary>,
}

impl SweepReport {
    fn from_cases(corpus: Vec<String>, theorems: &[TheoremId], cases: Vec<TheoremCase>) -> Self {
        let mut summary = Summary::default();
        let mut by_theorem: BTreeMap<&'static str, Summary> = BTreeMap::new();
        for c in &cases {
            summary.add(c.verdict);
            by_theorem.entry(c.theorem).or_default().add(c.verdict);
        }
        SweepReport {
            corpus,
            theorems: theorems.iter().map(|t| t.name()).collect(),
            cases,
            summary,
            by_theorem,
        }
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &TheoremCase> {
        self.cases
            .iter()
            .filter(|c| c.verdict == CaseVerdict::Counterexample)
    }
}

/// Sweep parameters.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub budget: u64,
    pub seed: u64,
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            budget: crate::classify::DEFAULT_BUDGET,
            seed: 0,
            threads: 0,
        }
    }
}

/// Samples in the integer run of the shortcut check.
pub const INTEGER_SAMPLES: usize = 1000;
/// Coefficient range of the integer run.
pub const INTEGER_COEFF: i64 = 1000;
/// Height bound of the integer run.
pub const INTEGER_BOUND: u64 = 64;

/// Runs every theorem on every ring, one ring per task; the output order does not
/// depend on scheduling.
pub fn sweep(corpus: &Corpus, theorems: &[TheoremId], cfg: &SweepConfig) -> SweepReport {
    let run = || {
        corpus
            .entries
            .par_iter()
            .map(|e| {
                let lab = RingLab::new(Arc::clone(&e.ring), cfg.budget, cfg.seed);
                theorems
                    .iter()
                    .map(|&t| verify(t, &lab))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    };
    let per_ring = if cfg.threads > 0 {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
        {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    } else {
        run()
    };
    let mut cases: Vec<TheoremCase> = per_ring.into_iter().flatten().collect();
    let mut specs: Vec<String> = corpus.entries.iter().map(|e| e.spec.clone()).collect();
    if theorems.contains(&TheoremId::Cr3Shortcuts) {
        cases.push(verify_cr3_integers(
            INTEGER_SAMPLES,
            INTEGER_COEFF,
            INTEGER_BOUND,
            cfg.seed,
        ));
        specs.push(format!("Int:H={INTEGER_BOUND}"));
    }
    SweepReport::from_cases(specs, theorems, cases)
}
