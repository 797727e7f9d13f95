use std::process::{Command, Output};

use nullcone_cli::record::{parse_vec, OutputRecord, Results};

fn nullcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nullcone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (String, OutputRecord) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = nullcone(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let record = serde_json::from_str(&text).expect("valid record");
    (text, record)
}

fn nontrivial(r: &OutputRecord) -> Vec<(Vec<String>, u64)> {
    let Results::Strata { rows } = &r.results else { panic!("not a table") };
    rows.iter().filter(|r| r.m > 0).map(|r| (r.mu.clone(), r.m)).collect()
}

fn s(v: &[&str]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[test]
fn strata_examples() {
    let (_, a1) = json(&["strata", "--type", "A1"]);
    assert_eq!(nontrivial(&a1), vec![(s(&["1/2"]), 2)]);

    let (_, su21) = json(&["strata", "--relative", "su21"]);
    assert_eq!(nontrivial(&su21), vec![(s(&["1"]), 1), (s(&["1/2"]), 2)]);

    let (_, c2) = json(&["strata", "--type", "C2"]);
    let labels: Vec<_> = nontrivial(&c2).into_iter().map(|(mu, _)| mu).collect();
    assert_eq!(labels, vec![s(&["3/2", "1/2"]), s(&["1/2", "1/2"]), s(&["1/2", "0"])]);
    assert_eq!(c2.diagnostics.len(), 1);
    assert_eq!(c2.diagnostics[0].kind, "rejected_candidate");
    assert_eq!(c2.diagnostics[0].label, Some(s(&["1", "0"])));
}

#[test]
fn optimal_examples() {
    for (support, mu, m) in [("2a+b", s(&["1/2", "0"]), 2), ("a,b", s(&["3/2", "1/2"]), 2)] {
        let (_, r) = json(&["optimal", "--type", "C2", "--support", support]);
        let Results::Optimal(k) = r.results else { panic!() };
        assert_eq!((k.mu, k.m), (mu, m));
    }
    let (_, r) = json(&["optimal", "--type", "A1", "--support", "a"]);
    let Results::Optimal(k) = r.results else { panic!() };
    assert_eq!(k.m, 2);
    // raw coordinates agree with names
    let (_, raw) = json(&["optimal", "--type", "C2", "--support-raw", "1,-1;0,2"]);
    let Results::Optimal(k) = raw.results else { panic!() };
    assert_eq!(k.mu, s(&["3/2", "1/2"]));
}

#[test]
fn mu_p_examples() {
    for (levi, want) in [("b", s(&["1", "0"])), ("a", s(&["1/2", "1/2"])), ("a,b", s(&["0", "0"]))] {
        let (_, r) = json(&["mu-p", "--type", "C2", "--levi", levi]);
        let Results::MuP(m) = r.results else { panic!() };
        assert_eq!(m.mu_p, want);
        assert_eq!(m.cone_route, m.closed_form_route);
    }
}

#[test]
fn induce_examples() {
    let (_, r) = json(&["induce", "--type", "C2", "--levi", "", "--stratum", "trivial"]);
    let Results::Induce(i) = r.results else { panic!() };
    assert_eq!(i.status, "certified");
    assert_eq!(i.induced.unwrap().mu, s(&["3/2", "1/2"]));

    let (_, r) = json(&["induce", "--type", "C2", "--levi", "a", "--stratum", "trivial"]);
    let Results::Induce(i) = r.results else { panic!() };
    assert_eq!(i.induced.unwrap().mu, s(&["1/2", "1/2"]));

    let (_, r) = json(&["induce", "--type", "C2", "--levi", "b", "--stratum", "trivial"]);
    let Results::Induce(i) = r.results else { panic!() };
    assert_eq!(i.status, "flagged");
    assert!(i.induced.is_none());
    assert_eq!(i.fallback.unwrap().mu, s(&["1/2", "1/2"]));
    assert!(!r.diagnostics.is_empty());
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["strata", "--type", "B2"],
        vec!["induce", "--type", "C2", "--levi", "b"],
        vec!["induce", "--type", "A2", "--levi", "a", "--seed", "7"],
    ] {
        let first = json(&args).0;
        let second = json(&args).0;
        assert_eq!(first, second);
        let human = |a: &[&str]| nullcone(a).stdout;
        assert_eq!(human(&args), human(&args));
    }
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["strata", "--type", "G2"],
        vec!["strata", "--relative", "bc1(2,3)"],
        vec!["optimal", "--type", "B3", "--support", "a,b,c"],
        vec!["mu-p", "--type", "A3", "--levi", "b"],
        vec!["induce", "--type", "C2", "--levi", "b"],
    ] {
        let (text, record) = json(&args);
        let again = serde_json::to_string_pretty(&record).unwrap();
        assert_eq!(text.trim_end(), again);
        // every rational parses back exactly and re-renders identically
        if let Results::Strata { rows } = &record.results {
            for row in rows {
                let mu = parse_vec(&row.mu).unwrap();
                assert_eq!(nullcone_cli::record::vec_strs(&mu), row.mu);
            }
        }
    }
}

#[test]
fn top_level_keys_in_fixed_order() {
    let (text, _) = json(&["strata", "--type", "A1"]);
    let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(pos("schema_version") < pos("command"));
    assert!(pos("command") < pos("inputs"));
    assert!(pos("inputs") < pos("results"));
    assert!(pos("results") < pos("diagnostics"));
}

#[test]
fn exit_codes() {
    assert_eq!(nullcone(&["strata", "--type", "Q7"]).status.code(), Some(2));
    assert_eq!(nullcone(&["strata"]).status.code(), Some(2));
    assert_eq!(nullcone(&["strata", "--type", "A1", "--relative", "su21"]).status.code(), Some(2));
    assert_eq!(nullcone(&["optimal", "--type", "C2", "--support", "a,z"]).status.code(), Some(2));
    assert_eq!(nullcone(&["strata", "--type", "A3", "--budget", "2"]).status.code(), Some(3));
}

#[test]
fn gram_and_lattice_flags() {
    let dir = std::env::temp_dir().join(format!("nullcone-gram-{}", std::process::id()));
    std::fs::write(&dir, "1 3\n").unwrap();
    let (_, r) = json(&["strata", "--type", "A1xA1", "--gram", dir.to_str().unwrap()]);
    std::fs::remove_file(&dir).ok();
    assert_eq!(r.inputs.gram_scales, Some(s(&["1", "3"])));
    assert_eq!(nontrivial(&r).len(), 3);

    let (_, adj) = json(&["strata", "--type", "C2", "--lattice", "adjoint"]);
    let levels: Vec<u64> = nontrivial(&adj).into_iter().map(|(_, m)| m).collect();
    assert_eq!(levels, vec![1, 1, 2]);
}

#[test]
fn human_table_mentions_every_row() {
    let out = String::from_utf8(nullcone(&["strata", "--type", "C2"]).stdout).unwrap();
    for label in ["(3/2,1/2)", "(1/2,1/2)", "(1/2,0)", "(0,0)", "rejected_candidate"] {
        assert!(out.contains(label), "{label} missing");
    }
}

#[test]
fn relative_description_file() {
    let path = std::env::temp_dir().join(format!("nullcone-bc1-{}.txt", std::process::id()));
    std::fs::write(&path, "# bc1 with multiplicities 2 and 1\nroot 1 mult 2\nroot 2 mult 1\nsimple 1\ngram 1\n").unwrap();
    let (_, file) = json(&["strata", "--relative", path.to_str().unwrap()]);
    let (_, builtin) = json(&["strata", "--relative", "su21"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(nontrivial(&file), nontrivial(&builtin));

    std::fs::write(&path, "root 1 mult two\n").unwrap();
    let bad = nullcone(&["strata", "--relative", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(bad.status.code(), Some(2));
}
