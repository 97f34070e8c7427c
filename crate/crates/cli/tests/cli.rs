use bootcert_cli::{run_command, CommandOutput};
use serde_json::Value;

fn run(args: &[&str]) -> CommandOutput {
    run_command(std::iter::once("bootcert").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_str(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", out.stderr));
    (out.code, v)
}

#[test]
fn certify_example() {
    let (code, v) = json(&[
        "certify", "--d", "2", "--r", "2", "--n", "3", "--t", "2", "--family", "K",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["lowerBound"], 5);
    assert_eq!(v["verifiedSpan"], true);
    assert_eq!(v["verifiedDependencies"], true);
    assert_eq!(v["axisMatrices"][0], serde_json::json!([[1], [1], [1]]));
}

#[test]
fn formula_example() {
    let out = run(&["formula", "--d", "3", "--r", "2", "--n", "5", "--t", "3"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "{\n  \"extremalSize\": 44\n}\n");
}

#[test]
fn minperc_example() {
    let (code, v) = json(&[
        "minperc",
        "--d",
        "2",
        "--r",
        "2",
        "--n",
        "3",
        "--t",
        "2",
        "--family",
        "P",
        "--exhaustive",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["minimum"], 5);
    assert_eq!(v["witness"].as_array().unwrap().len(), 5);
    assert_eq!(v["mode"], "exhaustive");
}

#[test]
fn minperc_assisted_modes_agree() {
    let base = [
        "minperc", "--d", "2", "--r", "2", "--n", "4", "--t", "2", "--family", "K",
    ];
    let (_, plain) = json(&base);
    let mut flags = base.to_vec();
    flags.extend(["--confirm", "--symmetry", "--mandatory", "--jobs", "3"]);
    let (code, pruned) = json(&flags);
    assert_eq!(code, 0);
    assert_eq!(plain["minimum"], 7);
    assert_eq!(plain["witness"], pruned["witness"]);
    assert_eq!(pruned["startedAt"], 7);
}

#[test]
fn inhomogeneous_lists() {
    let (code, v) = json(&["formula", "--r", "2", "--n", "3,4", "--t", "2,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["extremalSize"], 8);
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["formula", "--d", "3", "--r", "1", "--n", "3,4", "--t", "2"][..],
        &["formula", "--r", "1", "--n", "3,4", "--t", "2,2,2"],
        &["formula", "--d", "2", "--r", "3", "--n", "3", "--t", "2"],
        &["formula", "--d", "2", "--r", "1", "--n", "3", "--t", "4"],
        &["formula", "--d", "2", "--n", "3", "--t", "2"],
        &[
            "formula", "--d", "2", "--r", "1", "--n", "3", "--t", "2", "--bogus",
        ],
        &[
            "certify", "--d", "2", "--r", "1", "--n", "3", "--t", "2", "--family", "Q",
        ],
        &["nonsense"],
        &[
            "closure",
            "--d",
            "2",
            "--r",
            "1",
            "--n",
            "3",
            "--t",
            "2",
            "--infected",
            "9",
        ],
        &["rneighbour", "--r", "2"],
        &["rneighbour", "--grid", "3,0", "--r", "2"],
    ] {
        let out = run(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stdout);
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_0() {
    let out = run(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("sweep"));
}

#[test]
fn budget_exceeded_exits_3() {
    let out = run(&[
        "minperc",
        "--d",
        "2",
        "--r",
        "2",
        "--n",
        "4",
        "--t",
        "2",
        "--exhaustive",
        "--budget",
        "10",
    ]);
    assert_eq!(out.code, 3);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(v["error"].as_str().unwrap().contains("budget"));
}

#[test]
fn audit_exit_codes() {
    let spec = [
        "audit", "--d", "2", "--r", "2", "--n", "3", "--t", "2", "--family", "P", "--from-u",
    ];
    let (code, v) = json(&spec);
    assert_eq!(code, 0);
    assert_eq!(v["seedRank"], 5);
    assert_eq!(v["allStepsInSpan"], true);
    let mut removed = spec.to_vec();
    removed.extend(["--remove", "3"]);
    let (code, v) = json(&removed);
    assert_eq!(code, 1);
    assert_eq!(v["percolated"], false);
}

#[test]
fn extremal_reports_u() {
    let (code, v) = json(&[
        "extremal", "--d", "2", "--r", "2", "--n", "3", "--t", "2", "--family", "P",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["uSize"], 5);
    assert_eq!(v["percolates"], true);
    assert_eq!(v["ids"], serde_json::json!([0, 1, 2, 3, 6]));
}

#[test]
fn edges_export_round_trips_through_closure() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k.hg");
    let path = file.to_str().unwrap();
    let (code, v) = json(&[
        "edges", "--d", "2", "--r", "2", "--n", "3", "--t", "2", "--export", path,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 9);
    assert_eq!(v["enumerated"], 9);
    let (code, from_file) = json(&["closure", "--input", path, "--infected", "0,1,2,3,6"]);
    assert_eq!(code, 0);
    assert_eq!(from_file["percolates"], true);
    let (_, from_spec) = json(&[
        "closure", "--d", "2", "--r", "2", "--n", "3", "--t", "2", "--from-u",
    ]);
    assert_eq!(from_file["trace"], from_spec["trace"]);
    let (_, stuck) = json(&["closure", "--input", path, "--infected", "0,1,2,3"]);
    assert_eq!(stuck["percolates"], false);
}

#[test]
fn minperc_reads_hypergraph_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("w.hg");
    let path = file.to_str().unwrap();
    let out = run(&["wsat", "--n", "4", "--export", path, "--no-search"]);
    assert_eq!(out.code, 0);
    let (code, v) = json(&["minperc", "--input", path]);
    assert_eq!(code, 0);
    assert_eq!(v["minimum"], 3);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("f.csv");
    let out = run(&[
        "formula",
        "--d",
        "2",
        "--r",
        "1",
        "--n",
        "3",
        "--t",
        "2",
        "--format",
        "csv",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&file).unwrap(),
        "d,r,n,t,extremal_size\n2,1,3,2,1\n"
    );
}

#[test]
fn sweep_small_csv() {
    let out = run(&["sweep", "--max-n", "3", "--max-d", "2", "--format", "csv"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(
        lines[0],
        "d,r,n,t,family,formula,lower_bound,brute_force,edges,u_size,runtime_ms"
    );
    // d=1: (2,2),(3,2),(3,3); d=2: same three for r=1,2; two families each
    assert_eq!(lines.len(), 1 + 2 * 9);
    for line in &lines[1..] {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[5], f[6], "{line}");
        assert_eq!(f[5], f[7], "{line}");
        assert_eq!(f[5], f[9], "{line}");
    }
}

#[test]
fn rneighbour_modes() {
    let (code, v) = json(&["rneighbour", "--grid", "3,3", "--r", "2", "--exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(v["minimum"], 3);
    let (code, greedy) = json(&["rneighbour", "--grid", "3,3", "--r", "2", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(greedy["witnessPercolates"], true);
    assert!(greedy["upperBound"].as_u64().unwrap() >= 3);
    let (_, again) = json(&["rneighbour", "--grid", "3,3", "--r", "2", "--seed", "7"]);
    assert_eq!(greedy, again);
    let (_, closed) = json(&[
        "rneighbour",
        "--grid",
        "3,3",
        "--r",
        "2",
        "--infected",
        "0,4,8",
    ]);
    assert_eq!(closed["percolates"], true);
}

#[test]
fn greedy_in_minperc_is_seeded() {
    let args = [
        "minperc", "--d", "2", "--r", "2", "--n", "3", "--t", "2", "--greedy", "5", "--seed", "11",
    ];
    let (_, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(a["greedyWitness"], b["greedyWitness"]);
    assert!(a["greedyUpperBound"].as_u64().unwrap() >= 5);
}
