use entangle::lawcheck::{
    run_corpus, standard_corpus, CorpusReport, Expectation, Law, LawError, LawReport, LawSuite,
    Mode, Quantifiers, RunConfig, SuiteKind,
};

fn cfg() -> RunConfig {
    RunConfig::default().exhaustive_only()
}

/// `x * y` is even iff one of them is; over `0..n` squared.
fn product_suite(n: usize) -> LawSuite {
    let mut q = Quantifiers::new();
    let (x, y) = (q.var(n), q.var(n));
    let law = Law::values(
        "even product",
        q,
        move |a| format!("x={}, y={}", a.at(x), a.at(y)),
        move |a| (a.at(x) * a.at(y)) % 2 == 0,
        move |a| a.at(x) % 2 == 0 || a.at(y) % 2 == 0,
    );
    let mut q = Quantifiers::new();
    let x2 = q.var(n);
    let wrong = Law::values(
        "square is identity",
        q,
        move |a| format!("x={}", a.at(x2)),
        move |a| a.at(x2) * a.at(x2),
        move |a| a.at(x2),
    );
    LawSuite::new("arith", "none").with(law).with(wrong)
}

#[test]
fn the_standard_corpus_behaves_as_registered() {
    let report = run_corpus(&cfg());
    for e in report.unexpected() {
        eprintln!("{} {}: {:?}", e.kind, e.name, e.problems);
    }
    assert!(report.all_as_expected);
    assert!(report.entries.len() >= 80);
    let failing = report
        .entries
        .iter()
        .filter(|e| matches!(e.expectation, Expectation::Fail(_)))
        .count();
    assert!(failing >= 7 + 3);
}

#[test]
fn corpus_reports_round_trip_through_json() {
    let corpus = standard_corpus().select(Some(SuiteKind::Seven), None);
    let report = corpus.run(&cfg());
    let back: CorpusReport = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(back, report);
    let law_report = report.entries[0].report.clone().unwrap();
    let back: LawReport = serde_json::from_str(&law_report.to_json()).unwrap();
    assert_eq!(back, law_report);
}

#[test]
fn sequential_and_parallel_runs_agree() {
    let corpus = standard_corpus();
    assert_eq!(corpus.run(&cfg()), corpus.run(&cfg().sequential()));
}

#[test]
fn runs_are_deterministic() {
    let corpus = standard_corpus().select(Some(SuiteKind::Seven), None);
    assert_eq!(corpus.run(&cfg()).to_json(), corpus.run(&cfg()).to_json());
}

#[test]
fn selection_by_kind_and_name() {
    let c = standard_corpus();
    let sevens = c.select(Some(SuiteKind::Seven), None);
    assert!(sevens.entries.iter().all(|e| e.kind == SuiteKind::Seven));
    let ident = c.select(None, Some("identity"));
    assert!(ident.entries.len() >= 4);
    assert!(c.get(SuiteKind::Seven, "nondet").is_some());
    assert!(c.get(SuiteKind::Seven, "no such bx").is_none());
    assert!(c.names().contains(&"seven inv".to_string()));
    assert_eq!(SuiteKind::parse("theta"), Some(SuiteKind::Theta));
    assert_eq!(SuiteKind::parse("bogus"), None);
}

#[test]
fn every_witness_in_the_corpus_replays() {
    let c = standard_corpus();
    for entry in &c.entries {
        let suite = entry.suite().unwrap();
        let report = suite.run(&cfg()).unwrap();
        for law in &report.laws {
            for w in &law.failures {
                let again = suite.recheck(&law.name, &w.cell).unwrap();
                assert_eq!(again.as_ref(), Some(w), "{} {}", entry.name, law.name);
            }
        }
    }
}

#[test]
fn exhaustive_run_counts_every_assignment() {
    let r = product_suite(4).run(&cfg()).unwrap();
    let even = r.law("even product").unwrap();
    assert!(even.passed());
    assert_eq!(
        (even.checked, even.space, even.mode),
        (16, 16, Mode::Exhaustive)
    );
    let sq = r.law("square is identity").unwrap();
    // Only 0 and 1 are their own squares.
    assert_eq!(sq.failure_count, 2);
    assert_eq!(sq.failures[0].inputs, "x=2");
    assert_eq!(sq.failures[0].lhs, "4");
    assert_eq!(sq.failures[0].rhs, "2");
    assert_eq!(r.failed_laws(), vec!["square is identity"]);
}

#[test]
fn witness_count_is_bounded() {
    let mut c = cfg();
    c.max_witnesses = 0;
    let r = product_suite(10).run(&c).unwrap();
    let sq = r.law("square is identity").unwrap();
    assert_eq!(sq.failure_count, 8);
    assert_eq!(sq.failures.len(), 1);
    assert!(r.render_text().contains("FAIL square is identity"));
}

#[test]
fn sampling_above_the_cap_is_seeded() {
    let c = RunConfig::default().with_cap(50).with_seed(7);
    let a = product_suite(100).run(&c).unwrap();
    let b = product_suite(100).run(&c.clone().sequential()).unwrap();
    assert_eq!(a, b);
    let even = a.law("even product").unwrap();
    assert_eq!(
        even.mode,
        Mode::Sampled {
            seed: 7,
            requested: 10_000
        }
    );
    assert!(even.checked <= 10_000 && even.checked > 0);
    assert_eq!(even.space, 10_000);
    let other = product_suite(100)
        .run(&RunConfig::default().with_cap(50).with_seed(8))
        .unwrap();
    assert_eq!(
        other.law("even product").unwrap().mode,
        Mode::Sampled {
            seed: 8,
            requested: 10_000
        }
    );
}

#[test]
fn oversized_laws_are_errors_without_sampling() {
    let err = product_suite(100).run(&cfg().with_cap(50)).unwrap_err();
    match err {
        LawError::DomainTooLarge { law, space, cap } => {
            assert_eq!(law, "even product");
            assert_eq!(space, "10000");
            assert_eq!(cap, 50);
        }
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn recheck_of_an_unknown_law_is_an_error() {
    let suite = product_suite(2);
    assert!(matches!(
        suite.recheck("nope", &[0]),
        Err(LawError::UnknownLaw(_))
    ));
    assert_eq!(suite.recheck("square is identity", &[1]).unwrap(), None);
}
