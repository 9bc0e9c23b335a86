use std::collections::HashMap;
use std::fs;
use std::path::Path;

use ballsearch::cli::run;
use ballsearch::constructions::{harary_graph, turan_cycles};
use ballsearch::formats::{parse_graph, write_answers, write_graph};
use ballsearch::model::answers_for;
use ballsearch::{Coloring, QueryGraph};
use tempfile::TempDir;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str], input: &str) -> Output {
    let mut argv = vec!["ballsearch"];
    argv.extend_from_slice(args);
    let mut stdin = input.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Header-to-value map of a one-row CSV.
fn csv_row(text: &str) -> HashMap<String, String> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.len(), row.len());
    header
        .into_iter()
        .zip(row)
        .map(|(h, v)| (h.to_string(), v.to_string()))
        .collect()
}

#[test]
fn construct_round_trips() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("h6.txt");
    let o = cli(
        &[
            "construct",
            "--family",
            "harary",
            "--n",
            "6",
            "--out",
            path_str(&file),
        ],
        "",
    );
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(
        o.stdout.starts_with("edges 9\nbound majority_edges"),
        "{}",
        o.stdout
    );
    let text = fs::read_to_string(&file).unwrap();
    let g = parse_graph(&text).unwrap();
    assert_eq!(g, harary_graph(6, 3).unwrap());
    assert_eq!(write_graph(&g), text);
    assert!(dir.path().join("h6.txt.desc.json").exists());

    let o = cli(&["construct", "--family", "harary", "--n", "6"], "");
    assert_eq!(o.stdout, text);
    assert!(o.stderr.starts_with("edges 9"));
}

#[test]
fn construct_every_family() {
    let dir = TempDir::new().unwrap();
    let weights = dir.path().join("w.txt");
    fs::write(&weights, "5\n1\n1\n1\n").unwrap();
    let cases: [(&[&str], usize); 4] = [
        (&["--family", "turan-cycles", "--n", "6", "--c", "3"], 15),
        (&["--family", "c3", "--n", "6"], 12),
        (&["--family", "harary", "--n", "7", "--k", "5"], 11),
        (
            &[
                "--family",
                "weighted-plurality",
                "--weights",
                path_str(&weights),
                "--c",
                "2",
            ],
            5,
        ),
    ];
    for (args, edges) in cases {
        let mut full = vec!["construct"];
        full.extend_from_slice(args);
        let o = cli(&full, "");
        assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
        assert_eq!(
            parse_graph(&o.stdout).unwrap().edge_count(),
            edges,
            "{args:?}"
        );
    }
    let o = cli(&["construct", "--family", "c3", "--n", "2"], "");
    assert_eq!(o.code, 2);
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = dir.path().join("good.txt");
    let empty = dir.path().join("empty.txt");
    fs::write(&good, write_graph(&harary_graph(6, 3).unwrap())).unwrap();
    fs::write(&empty, "6 0\n").unwrap();

    let o = cli(
        &[
            "verify",
            "--graph",
            path_str(&good),
            "--problem",
            "majority",
            "--c",
            "3",
        ],
        "",
    );
    assert_eq!((o.code, o.stdout.as_str()), (0, "SOLVES\n"));

    let o = cli(
        &[
            "verify",
            "--graph",
            path_str(&empty),
            "--problem",
            "kmaj:4",
            "--c",
            "3",
        ],
        "",
    );
    assert_eq!(o.code, 1);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert!(lines[0].starts_with("FAILS "), "{}", o.stdout);
    assert!(lines.len() >= 3);

    let o = cli(
        &[
            "verify",
            "--graph",
            path_str(&good),
            "--problem",
            "nonsense",
        ],
        "",
    );
    assert_eq!(o.code, 2);
    let o = cli(&["verify", "--graph", "/no/such/file"], "");
    assert_eq!(o.code, 2);
    let o = cli(
        &[
            "verify",
            "--graph",
            path_str(&good),
            "--cap",
            "10",
            "--c",
            "3",
        ],
        "",
    );
    assert_eq!(o.code, 2, "{}", o.stderr);
}

#[test]
fn bounds_rows() {
    let o = cli(&["bounds", "--n", "9", "--k", "6"], "");
    assert_eq!(o.code, 0);
    let row = csv_row(&o.stdout);
    assert_eq!(row["prop1"], "7");
    assert_eq!(row["aigner"], "5");

    let o = cli(&["bounds", "--n", "10", "--k", "8"], "");
    let row = csv_row(&o.stdout);
    assert_eq!((row["prop1"].as_str(), row["aigner"].as_str()), ("6", "7"));

    let o = cli(&["bounds", "--n", "7", "--c", "3"], "");
    let row = csv_row(&o.stdout);
    assert_eq!(row["plurality_upper_exact"], "77/4");
    assert_eq!(row["plurality_upper"], "19.250000");

    let dir = TempDir::new().unwrap();
    let w = dir.path().join("s.txt");
    fs::write(&w, "1\n10\n11\n100\n101\n110\n111\n").unwrap();
    let o = cli(&["bounds", "--weights", path_str(&w)], "");
    let row = csv_row(&o.stdout);
    assert_eq!(row["p"], "4");
    assert_eq!(row["prop3_lower"], "4");
}

#[test]
fn solve_values() {
    let o = cli(
        &["solve", "--n", "4", "--c", "2", "--problem", "majority"],
        "",
    );
    assert_eq!((o.code, o.stdout.as_str()), (0, "3\n"));

    let o = cli(&["solve", "--n", "5", "--cap", "2"], "");
    assert_eq!((o.code, o.stdout.as_str()), (1, "> 2\n"));

    let o = cli(&["solve", "--n", "3", "--tree"], "");
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("1\n"));
    assert!(o.stdout.lines().count() > 1);
}

#[test]
fn tables() {
    let o = cli(&["table", "--theorem", "1", "--n", "3:12", "--c", "3"], "");
    assert_eq!(o.code, 0);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "n,c,majority_edges");
    assert_eq!(lines.len(), 11);
    for (line, n) in lines[1..].iter().zip(3u64..) {
        let want = (n.div_ceil(2) * n).div_ceil(2);
        assert_eq!(*line, format!("{n},3,{want}"));
    }

    let o = cli(&["table", "--theorem", "2", "--n", "5", "--c", "3:4"], "");
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(
        lines[0],
        "n,c,plurality_lower,plurality_upper,plurality_upper_exact"
    );
    assert_eq!(lines.len(), 3);

    let o = cli(
        &["table", "--theorem", "adaptive", "--n", "9", "--k", "5:9"],
        "",
    );
    assert_eq!(o.stdout.lines().count(), 6);

    let o = cli(&["table", "--theorem", "1", "--n", "9:3"], "");
    assert_eq!(o.code, 2);
}

#[test]
fn decode_outputs() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.txt");
    let desc = dir.path().join("g.txt.desc.json");
    let answers = dir.path().join("a.txt");
    let o = cli(
        &[
            "construct",
            "--family",
            "turan-cycles",
            "--n",
            "6",
            "--c",
            "3",
            "--out",
            path_str(&graph),
        ],
        "",
    );
    assert_eq!(o.code, 0);
    let (g, _) = turan_cycles(6, 3).unwrap();
    let args = |with_desc: bool| {
        let mut v = vec![
            "decode",
            "--graph",
            path_str(&graph),
            "--answers",
            path_str(&answers),
            "--problem",
            "plurality",
            "--c",
            "3",
        ];
        if with_desc {
            v.extend(["--descriptor", path_str(&desc)]);
        }
        v.iter().map(|s| s.to_string()).collect::<Vec<_>>()
    };
    for (labels, want) in [
        ([0, 0, 0, 1, 1, 2], "WITNESS 0\n"),
        ([0, 1, 2, 0, 1, 2], "NONE\n"),
        ([2, 1, 1, 0, 1, 0], "WITNESS 1\n"),
    ] {
        let a = answers_for(&g, &Coloring::from_labels(&labels)).unwrap();
        fs::write(&answers, write_answers(&a)).unwrap();
        for with_desc in [false, true] {
            let argv = args(with_desc);
            let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
            let o = cli(&argv, "");
            assert_eq!(
                (o.code, o.stdout.as_str()),
                (0, want),
                "{labels:?}: {}",
                o.stderr
            );
        }
    }

    let empty = dir.path().join("e.txt");
    fs::write(&empty, "2 0\n").unwrap();
    fs::write(&answers, "").unwrap();
    let o = cli(
        &[
            "decode",
            "--graph",
            path_str(&empty),
            "--answers",
            path_str(&answers),
        ],
        "",
    );
    assert_eq!(o.stdout, "UNDECIDABLE\n");

    fs::write(&answers, "0 1 X\n").unwrap();
    let o = cli(
        &[
            "decode",
            "--graph",
            path_str(&empty),
            "--answers",
            path_str(&answers),
        ],
        "",
    );
    assert_eq!(o.code, 2);
}

#[test]
fn adversary_protocol() {
    let o = cli(&["adversary", "--kind", "prop4", "--n", "6"], "0 1\n2 3\n");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines.len(), 4, "{}", o.stdout);
    assert!(lines[..2].iter().all(|l| *l == "S" || *l == "D"));

    let o = cli(&["adversary", "--kind", "prop4", "--n", "6"], "0 0\n");
    assert_eq!(o.code, 2);

    let dir = TempDir::new().unwrap();
    let star = dir.path().join("star.txt");
    let g = QueryGraph::new(7, (1..7).map(|v| (0, v))).unwrap();
    fs::write(&star, write_graph(&g)).unwrap();
    let queries: String = g
        .edges()
        .iter()
        .map(|(u, v)| format!("{u} {v}\n"))
        .collect();
    let o = cli(
        &[
            "adversary",
            "--kind",
            "mindeg",
            "--graph",
            path_str(&star),
            "--c",
            "3",
        ],
        &queries,
    );
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout.lines().count(), 6 + 2);

    let full = dir.path().join("k7.txt");
    fs::write(&full, write_graph(&QueryGraph::complete(7))).unwrap();
    let o = cli(
        &["adversary", "--kind", "mindeg", "--graph", path_str(&full)],
        "",
    );
    assert_eq!(o.code, 1);
}

#[test]
fn seeded_runs_are_deterministic() {
    let a = cli(&["--seed", "7", "bounds", "--n", "12", "--c", "4"], "");
    let b = cli(&["bounds", "--n", "12", "--c", "4", "--seed", "7"], "");
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.code, 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&["frobnicate"], "").code, 2);
    assert_eq!(cli(&["solve"], "").code, 2);
    assert_eq!(cli(&["construct", "--family", "harary"], "").code, 2);
    assert_eq!(cli(&["--help"], "").code, 0);
}
