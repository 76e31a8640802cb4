use qideal_core::ideal::classify_ideal;
use qideal_core::io;
use qideal_core::suites::{run_suite, search_counterexample, Params, Shape, SuiteOptions, Verdict, SUITES};
use qideal_core::{Budget, Error};

#[test]
fn every_suite_passes_with_defaults() {
    let opts = SuiteOptions::default();
    for name in SUITES {
        let r = run_suite(name, &Params::new(), &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{name}: {}", r.summary);
    }
}

#[test]
fn reports_are_deterministic() {
    let opts = SuiteOptions::default();
    for name in SUITES {
        let a = run_suite(name, &Params::new(), &opts).unwrap();
        let b = run_suite(name, &Params::new(), &opts).unwrap();
        assert_eq!(a.stable_json(), b.stable_json(), "{name}");
    }
}

#[test]
fn seeds_change_random_instances() {
    let run = |seed| {
        let opts = SuiteOptions { seed, ..SuiteOptions::default() };
        run_suite("FC_SUBSET_IRR", &Params::new(), &opts).unwrap().instances
    };
    assert_eq!(run(1), run(1));
    assert_ne!(run(1), run(2));
}

#[test]
fn suite_names_are_case_insensitive_and_checked() {
    let opts = SuiteOptions::default();
    assert!(run_suite("boolean4_counterexample", &Params::new(), &opts).is_ok());
    assert!(matches!(run_suite("NOPE", &Params::new(), &opts), Err(Error::UnknownSuite(_))));
}

#[test]
fn small_budget_is_reported_not_failed() {
    let opts = SuiteOptions { budget: Budget::with_limit(3), ..SuiteOptions::default() };
    let r = run_suite("SATURATION_FLAT", &Params::new(), &opts).unwrap();
    assert_eq!(r.verdict, Verdict::Budget);
}

#[test]
fn godel_parameters_are_honoured() {
    let mut p = Params::new();
    p.insert("n".into(), "4".into());
    p.insert("b".into(), "1/3".into());
    p.insert("a".into(), "0".into());
    let r = run_suite("GODEL_FLAT_NOT_IRR", &p, &SuiteOptions::default()).unwrap();
    assert_eq!(r.instances, vec!["G4/d_left".to_string()]);
    p.insert("b".into(), "1/5".into());
    assert!(run_suite("GODEL_FLAT_NOT_IRR", &p, &SuiteOptions::default()).is_err());
}

#[test]
fn search_witness_reproduces_through_files() {
    let shape: Shape = "quantale=godel_chain,n=4,points=2,separate=flat/irr".parse().unwrap();
    let r = search_counterexample(&shape, &SuiteOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Finding);
    let w = &r.witnesses[0];
    let dir = std::env::temp_dir().join(format!("qideal-witness-{}", std::process::id()));
    let path = dir.join(&w.file);
    io::write_json(&path, &w.content).unwrap();
    let (a, phi) = io::fuzzy_set_from_json(&io::read_json(&path).unwrap(), &dir).unwrap();
    let c = classify_ideal(&a, &phi, &Budget::default()).unwrap();
    assert!(c.flat && !c.irreducible);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn search_without_separation_passes() {
    let shape: Shape = "quantale=lukasiewicz_chain,n=3,points=2,separate=fc/flat".parse().unwrap();
    let r = search_counterexample(&shape, &SuiteOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(r.witnesses.is_empty());
    assert!("points=0".parse::<Shape>().is_err());
    assert!("separate=flat".parse::<Shape>().is_err());
}
