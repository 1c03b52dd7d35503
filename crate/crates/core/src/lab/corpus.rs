//! The default list of finite rings swept by the theorem checks.

use crate::classify::RingTags;
use crate::error::Result;
use crate::ring::{make_finite_ring, FiniteRing};
use serde::Serialize;
use std::sync::Arc;

/// Largest ring admitted by the default corpus.
pub const CORPUS_SIZE_CAP: usize = 64;

/// Products of two corpus rings, chosen to cover nonlocal rings of every kind
/// (char 2, nonreduced, non-Bézout) without repeating isomorphism types.
const PRODUCTS: &[&str] = &[
    "Prod:Zmod:2*Zmod:2",
    "Prod:GF:2*GF:4",
    "Prod:Zmod:4*GF:2",
    "Prod:GF:2*Quot:GF:2[x]/(x^2)",
    "Prod:GF:3*GF:3",
    "Prod:GF:3*Quot:GF:3[x]/(x^2)",
    "Prod:GF:4*GF:4",
    "Prod:Zmod:4*Zmod:4",
    "Prod:Quot:GF:2[x]/(x^2)*Quot:GF:2[x]/(x^2)",
    "Prod:GF:2*Table:builtin:f2xy",
    "Prod:Zmod:4*GF:9",
    "Prod:GF:8*GF:8",
];

/// Ring specs of the default corpus, in sweep order.
pub fn default_specs() -> Vec<String> {
    let mut out: Vec<String> = (2..=16)
        .chain([24, 27, 32])
        .map(|n| format!("Zmod:{n}"))
        .collect();
    out.extend([2, 3, 4, 5, 7, 8, 9].map(|q| format!("GF:{q}")));
    for p in [2, 3] {
        for m in ["x^2", "x^3", "x^2+1"] {
            out.push(format!("Quot:GF:{p}[x]/({m})"));
        }
    }
    out.push("Table:builtin:f2xy".to_string());
    out.extend(PRODUCTS.iter().map(|s| s.to_string()));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub spec: String,
    pub size: usize,
    pub tags: RingTags,
    #[serde(skip)]
    pub ring: Arc<FiniteRing>,
}

/// Constructed rings with tags computed from the rings themselves.
#[derive(Clone, Debug, Serialize)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn from_specs<S: AsRef<str>>(specs: &[S]) -> Result<Self> {
        let entries = specs
            .iter()
            .map(|s| {
                let ring = make_finite_ring(s.as_ref())?;
                Ok(CorpusEntry {
                    spec: s.as_ref().to_string(),
                    size: ring.size(),
                    tags: RingTags::of(&ring),
                    ring,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Corpus { entries })
    }

    pub fn default_corpus() -> Result<Self> {
        Self::from_specs(&default_specs())
    }

    /// Resolves `default` or a comma list of specs.
    pub fn named(name: &str) -> Result<Self> {
        if name.trim() == "default" {
            Self::default_corpus()
        } else {
            let specs: Vec<&str> = crate::ring::split_top_level(name, ',')
                .into_iter()
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            Self::from_specs(&specs)
        }
    }

    pub fn filter(&self, keep: impl Fn(&CorpusEntry) -> bool) -> Self {
        Corpus {
            entries: self.entries.iter().filter(|e| keep(e)).cloned().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_corpus_builds_within_cap() {
        let c = Corpus::default_corpus().unwrap();
        assert_eq!(c.len(), default_specs().len());
        for e in &c.entries {
            assert!(e.size <= CORPUS_SIZE_CAP, "{}", e.spec);
        }
        let table = c
            .entries
            .iter()
            .find(|e| e.spec == "Table:builtin:f2xy")
            .unwrap();
        assert!(table.tags.char2 && table.tags.local && !table.tags.reduced);
        let prod = c
            .entries
            .iter()
            .find(|e| e.spec == "Prod:Zmod:4*GF:9")
            .unwrap();
        assert_eq!(prod.size, 36);
        assert!(prod.tags.product && !prod.tags.local);
    }

    #[test]
    fn named_lists() {
        let c = Corpus::named("Zmod:6, Prod:(Zmod:2)*(Zmod:3)").unwrap();
        assert_eq!(c.len(), 2);
        assert!(Corpus::named("Zmod:1").is_err());
    }
}
