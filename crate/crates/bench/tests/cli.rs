use std::process::{Command, Output};

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ibfs-bench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

#[test]
fn cerny_10_reports_81() {
    let out = bench(&[
        "run",
        "--cerny",
        "10",
        "--algo",
        "cutoff-ibfs",
        "--maxsize",
        "n",
        "--word",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    assert_eq!(field(&report, "length"), Some("81"));
    assert_eq!(field(&report, "word").map(str::len), Some(81));
}

#[test]
fn cerny_2_eppstein_reports_1() {
    let out = bench(&["run", "--cerny", "2", "--algo", "eppstein", "--word"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    assert_eq!(field(&report, "length"), Some("1"));
    assert_eq!(field(&report, "word"), Some("b"));
}

#[test]
fn exact_and_unbounded_search_agree() {
    let exact = stdout(&bench(&[
        "run", "--random", "6", "2", "--seed", "7", "--algo", "exact",
    ]));
    let search = stdout(&bench(&[
        "run",
        "--random",
        "6",
        "2",
        "--seed",
        "7",
        "--algo",
        "cutoff-ibfs",
        "--maxsize",
        "unbounded",
    ]));
    assert!(field(&exact, "length").is_some());
    assert_eq!(field(&exact, "length"), field(&search, "length"));
}

#[test]
fn distinct_exit_codes() {
    let not_found = bench(&["run", "--cerny", "6", "--maxlen", "10"]);
    assert_eq!(not_found.status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let perms = dir.path().join("perms.txt");
    std::fs::write(&perms, "3 2\n1 0\n2 2\n0 1\n").unwrap();
    let out = bench(&[
        "run",
        "--file",
        perms.to_str().unwrap(),
        "--algo",
        "eppstein",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("not synchronizing"));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "2 2\n3 0\n0 1\n").unwrap();
    let out = bench(&["run", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2: state 3 out of range"), "{err}");
}

#[test]
fn generated_file_round_trips_through_run() {
    let text = stdout(&bench(&["generate", "--random", "30", "3", "--seed", "9"]));
    assert!(text.starts_with("30 3\n"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.txt");
    std::fs::write(&path, &text).unwrap();
    let from_file = stdout(&bench(&[
        "run",
        "--file",
        path.to_str().unwrap(),
        "--algo",
        "eppstein",
    ]));
    let direct = stdout(&bench(&[
        "run", "--random", "30", "3", "--seed", "9", "--algo", "eppstein",
    ]));
    assert_eq!(field(&from_file, "length"), field(&direct, "length"));
}

#[test]
fn improvement_flags_are_accepted() {
    let out = bench(&[
        "run",
        "--random",
        "40",
        "2",
        "--seed",
        "3",
        "--start-mode",
        "high-indegree",
        "--permute-indegree",
        "--maxsize",
        "log",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        bench(&["run", "--cerny", "4", "--start-mode", "bogus"])
            .status
            .code()
            != Some(0)
    );
}

#[test]
fn experiment_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = bench(&[
            "experiment",
            "--n",
            "4",
            "--trials",
            "2",
            "--algos",
            "eppstein,cutoff-ibfs:n",
            "--no-timing",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).contains("n,algorithm,runs,excluded,mean_length,mean_time_s"));
        std::fs::read(&path).unwrap()
    };
    let first = run("a.csv");
    assert_eq!(first, run("b.csv"));
    let text = String::from_utf8(first).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "n,k,trial,seed,algorithm,length,time_s,frontier_peak"
    );
    assert_eq!(lines.len(), 5);
    let seed_of = |l: &str| l.split(',').nth(3).unwrap().to_string();
    assert_eq!(seed_of(lines[1]), seed_of(lines[2]));
    assert_eq!(seed_of(lines[3]), seed_of(lines[4]));
}

#[test]
fn experiment_rejects_unknown_algorithm() {
    let out = bench(&[
        "experiment",
        "--n",
        "4",
        "--trials",
        "1",
        "--algos",
        "cycle",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
