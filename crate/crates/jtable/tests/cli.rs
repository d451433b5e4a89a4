use std::process::{Command, Output};

use jtable::schema::{generator_from_doc, GeneratorDoc, SingleEntryDoc, TableDoc, VerifyDoc};
use jtable_core::equations::equation_set;
use jtable_core::table::TableIndex;
use jtable_core::{full_table, StableQ};

fn jtable(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jtable"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn table_tsv_rows() {
    let out = jtable(&["table", "5", "2", "--format", "tsv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    let parts: Vec<&str> = rows.iter().map(|r| r.split('\t').nth(2).unwrap()).collect();
    assert_eq!(parts, ["5,3", "5,2,1", "5,1,1,1"]);
}

#[test]
fn table_pretty_grid() {
    let out = jtable(&["table", "4", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "Q = (4,2): 1 x 2 entries\n     l=1    l=2\nk=1  (4,2)  (4,1,1)\n"
    );
}

#[test]
fn table_json_matches_core_and_round_trips() {
    let out = jtable(&["table", "7", "4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: TableDoc = serde_json::from_slice(&out.stdout).unwrap();
    let q = doc.q().unwrap();
    assert_eq!(q, StableQ::new(7, 4).unwrap());
    assert_eq!(doc, TableDoc::from(&full_table(q).unwrap()));
    for e in &doc.entries {
        assert_eq!(e.partition().unwrap().weight(), q.dim());
    }
    let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    assert_eq!(again, stdout(&out));
}

#[test]
fn table_rejects_u_not_above_r() {
    let out = jtable(&["table", "3", "5"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn entry_examples() {
    let text = stdout(&jtable(&["entry", "7", "4", "2", "1"]));
    assert!(text.contains("partition  (5,3,2)\n"), "{text}");
    assert!(text.contains("burge      aabaabba\n"), "{text}");

    let text = stdout(&jtable(&["entry", "7", "4", "1", "1"]));
    assert!(text.contains("partition  (7,3)\n"), "{text}");
}

#[test]
fn entry_json_is_flat() {
    let out = jtable(&["entry", "7", "4", "2", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["u"], 7);
    assert_eq!(v["r"], 4);
    assert_eq!(v["partition"], serde_json::json!([5, 3, 2]));
    assert_eq!(v["burge"], "aabaabba");
    let doc: SingleEntryDoc = serde_json::from_value(v).unwrap();
    assert_eq!((doc.entry.k, doc.entry.l), (2, 1));
}

#[test]
fn entry_out_of_range() {
    assert_eq!(code(&jtable(&["entry", "7", "4", "4", "1"])), 2);
    assert_eq!(code(&jtable(&["entry", "7", "4", "1", "4"])), 2);
}

#[test]
fn equations_examples() {
    let out = jtable(&["equations", "7", "4", "2", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "a1\nb1\na2*b2 - g0*h0\n");

    let out = jtable(&["equations", "7", "4", "1", "1"]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());

    let out = jtable(&["equations", "7", "4", "3", "3"]);
    assert_eq!(stdout(&out).lines().count(), 4);
}

#[test]
fn equations_json_round_trips() {
    let q = StableQ::new(8, 3).unwrap();
    for idx in TableIndex::all(&q) {
        let (k, l) = (idx.k.to_string(), idx.l.to_string());
        let out = jtable(&["equations", "8", "3", &k, &l, "--format", "json"]);
        assert_eq!(code(&out), 0);
        let docs: Vec<GeneratorDoc> = serde_json::from_slice(&out.stdout).unwrap();
        let parsed = docs
            .iter()
            .map(|d| generator_from_doc(d).unwrap())
            .collect::<Vec<_>>();
        assert_eq!(parsed, equation_set(&q, idx).unwrap());
    }
}

#[test]
fn verify_passes() {
    let out = jtable(&["verify", "7", "4"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).ends_with("failures: 0\n"));

    let out = jtable(&["verify", "9", "4", "--trials", "5", "--seed", "7", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: VerifyDoc = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.failures, 0);
    assert_eq!(doc.cells.len(), 3 * 5);
    assert!(doc.cells.iter().all(|c| c.passed && c.d_value == vec![9, 5]));
    assert!(doc.sweep.violations.is_empty());
}

#[test]
fn verify_rejects_small_r() {
    let out = jtable(&["verify", "7", "1"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn verify_with_custom_prime() {
    // largest prime below 2^32
    let out = jtable(&["verify", "6", "3", "--prime", "4294967291", "--format", "tsv"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().count(), 1 + 2 * 3);
}

#[test]
fn matrix_dump() {
    let out = jtable(&["matrix", "7", "4", "2", "3", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<Vec<u64>> = text
        .lines()
        .map(|l| l.split('\t').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.len() == 10));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["table", "9", "4", "--format", "json"][..],
        &["entry", "12", "9", "4", "2"],
        &["equations", "9", "3", "2", "6", "--format", "json"],
        &["verify", "6", "2", "--seed", "11", "--format", "json"],
        &["matrix", "8", "5", "3", "2", "--seed", "5", "--format", "json"],
    ] {
        let a = jtable(args);
        let b = jtable(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seed_changes_sampled_matrix() {
    let a = jtable(&["matrix", "8", "5", "3", "2", "--seed", "1"]);
    let b = jtable(&["matrix", "8", "5", "3", "2", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}
