use edrlab_core::classify::DEFAULT_BUDGET;
use edrlab_core::lab::{
    hunt, sweep, verify, CaseVerdict, Corpus, HuntQuery, RingLab, SweepConfig, TheoremId,
};
use edrlab_core::ring::make_finite_ring;

#[test]
fn char2_corpus_cr1_both_directions() {
    let corpus = Corpus::default_corpus()
        .unwrap()
        .filter(|e| e.tags.char2 && e.size <= 16);
    assert!(corpus.len() >= 8);
    let report = sweep(&corpus, &[TheoremId::Cr1], &SweepConfig::default());
    for c in &report.cases {
        assert_eq!(c.verdict, CaseVerdict::Verified, "{}", c.ring);
        assert_eq!(c.evidence["converse_checked"], true);
    }
}

#[test]
fn table_ring_is_outside_hermite_hypotheses() {
    let lab = RingLab::new(
        make_finite_ring("Table:builtin:f2xy").unwrap(),
        DEFAULT_BUDGET,
        0,
    );
    for id in [TheoremId::Th1, TheoremId::Th3, TheoremId::Cr2] {
        let c = verify(id, &lab);
        assert_eq!(c.verdict, CaseVerdict::Inapplicable, "{}", id.name());
        assert!(c.evidence["failed_hypothesis"].is_string());
    }
}

#[test]
fn small_corpus_has_no_counterexamples() {
    let corpus = Corpus::default_corpus().unwrap().filter(|e| e.size <= 12);
    let report = sweep(&corpus, &TheoremId::ALL, &SweepConfig::default());
    let bad: Vec<_> = report
        .counterexamples()
        .map(|c| (c.theorem, c.ring.clone()))
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert_eq!(report.summary.unknown, 0);
    assert_eq!(
        report.summary.total(),
        corpus.len() * TheoremId::ALL.len() + 1
    );
}

#[test]
fn hunts_over_default_corpus() {
    let corpus = Corpus::default_corpus().unwrap();
    let run = |q: &str| hunt(&HuntQuery::parse(q).unwrap(), &corpus, DEFAULT_BUDGET);
    assert!(run("bezout ∧ ¬hermite").hit.is_none());
    assert_eq!(run("¬bezout").hit.unwrap().ring, "Table:builtin:f2xy");
    assert!(run("pre_schreier ∧ zero_det ∧ unimodular ∧ ¬non_full")
        .hit
        .is_none());
}
