//! Text renderings: pretty grids, TSV and JSON.

use std::fmt::Write as _;

use serde::Serialize;

use jtable_core::equations::PolyGenerator;
use jtable_core::linalg::ModMatrix;
use jtable_core::table::{JTable, TableEntry, UChains};
use jtable_core::verify::VerifyReport;
use jtable_core::StableQ;

use crate::schema::{generator_doc, GeneratorDoc, SingleEntryDoc, TableDoc, VerifyDoc};

/// Output format selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Pretty,
    Json,
    Tsv,
}

/// Column header shared by `table` and `entry` in TSV mode.
pub const ENTRY_TSV_HEADER: &str =
    "k\tl\tpartition\tcase\ttypes\tburge\tcoranks\tu_top\tu_middle\tu_bottom";

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

fn joined<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn or_dash(s: String) -> String {
    if s.is_empty() {
        "-".into()
    } else {
        s
    }
}

fn types_of(e: &TableEntry) -> String {
    or_dash(joined(e.types.iter()))
}

fn middle(c: &UChains) -> String {
    c.middle.map_or_else(|| "-".into(), |m| m.to_string())
}

fn entry_tsv_row(e: &TableEntry) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
        e.index.k,
        e.index.l,
        joined(e.partition.parts()),
        e.case_path,
        types_of(e),
        e.burge,
        joined(&e.coranks.values),
        e.u_chains.top,
        middle(&e.u_chains),
        e.u_chains.bottom,
    )
}

pub fn table_pretty(t: &JTable) -> String {
    let q = t.q;
    let cells: Vec<Vec<String>> = t
        .rows()
        .map(|row| row.iter().map(|e| e.partition.to_string()).collect())
        .collect();
    let label_w = format!("k={}", q.rows()).len();
    let widths: Vec<usize> = (0..q.cols())
        .map(|j| {
            cells
                .iter()
                .map(|row| row[j].len())
                .chain([format!("l={}", j + 1).len()])
                .max()
                .unwrap_or(0)
        })
        .collect();

    let mut out = format!("Q = {q}: {} x {} entries\n", q.rows(), q.cols());
    let mut line = format!("{:label_w$}", "");
    for (j, w) in widths.iter().enumerate() {
        let _ = write!(line, "  {:<w$}", format!("l={}", j + 1));
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for (i, row) in cells.iter().enumerate() {
        let mut line = format!("{:<label_w$}", format!("k={}", i + 1));
        for (cell, w) in row.iter().zip(&widths) {
            let _ = write!(line, "  {cell:<w$}");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn table_tsv(t: &JTable) -> String {
    let mut out = String::from(ENTRY_TSV_HEADER);
    out.push('\n');
    for e in &t.entries {
        out.push_str(&entry_tsv_row(e));
    }
    out
}

pub fn table(t: &JTable, format: Format) -> String {
    match format {
        Format::Pretty => table_pretty(t),
        Format::Json => json(&TableDoc::from(t)),
        Format::Tsv => table_tsv(t),
    }
}

pub fn entry_pretty(q: &StableQ, e: &TableEntry) -> String {
    let c = &e.u_chains;
    let chains = match c.middle {
        Some(m) => format!("top {}, middle {m}, bottom {}", c.top, c.bottom),
        None => format!("top {}, bottom {}", c.top, c.bottom),
    };
    let rows = [
        ("Q", q.to_string()),
        ("cell", format!("({},{})", e.index.k, e.index.l)),
        ("partition", e.partition.to_string()),
        ("case", e.case_path.to_string()),
        ("types", types_of(e)),
        ("burge", e.burge.to_string()),
        ("coranks", joined(&e.coranks.values)),
        ("u-chains", chains),
    ];
    rows.iter().fold(String::new(), |mut out, (k, v)| {
        let _ = writeln!(out, "{k:<10} {v}");
        out
    })
}

pub fn entry(q: &StableQ, e: &TableEntry, format: Format) -> String {
    match format {
        Format::Pretty => entry_pretty(q, e),
        Format::Json => json(&SingleEntryDoc {
            u: q.u(),
            r: q.r(),
            entry: e.into(),
        }),
        Format::Tsv => format!("{ENTRY_TSV_HEADER}\n{}", entry_tsv_row(e)),
    }
}

/// One generator per line; JSON is a list of term lists.
pub fn equations(gens: &[PolyGenerator], format: Format) -> String {
    match format {
        Format::Pretty | Format::Tsv => gens.iter().map(|g| format!("{g}\n")).collect(),
        Format::Json => json(&gens.iter().map(generator_doc).collect::<Vec<GeneratorDoc>>()),
    }
}

pub fn matrix_tsv(m: &ModMatrix) -> String {
    (0..m.dim())
        .map(|i| {
            let mut row = joined(m.row(i)).replace(',', "\t");
            row.push('\n');
            row
        })
        .collect()
}

pub fn verify_pretty(doc: &VerifyDoc) -> String {
    let mut out = format!(
        "verify Q = ({},{}): trials {}, seed {}, prime {}\n",
        doc.u,
        doc.u - doc.r,
        doc.trials,
        doc.seed,
        doc.prime
    );
    let paren = |p: &[usize]| format!("({})", joined(p));
    let rows: Vec<[String; 7]> = doc
        .cells
        .iter()
        .map(|c| {
            [
                format!("({},{})", c.k, c.l),
                paren(&c.expected),
                if c.closed_form_ok { "ok" } else { "MISMATCH" }.into(),
                paren(&c.observed),
                format!("{}/{}", c.coranks_matching, doc.trials),
                paren(&c.d_value),
                if c.passed { "pass" } else { "FAIL" }.into(),
            ]
        })
        .collect();
    let header = ["cell", "entry", "closed", "sampled", "coranks", "D", "result"].map(String::from);
    let widths: Vec<usize> = (0..7)
        .map(|j| rows.iter().chain([&header]).map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    for row in [&header].into_iter().chain(&rows) {
        let line = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let s = &doc.sweep;
    let _ = writeln!(
        out,
        "sweep: {} samples, {} on table entries, {} cells hit, {} violations",
        s.samples,
        s.matched,
        s.cells_hit,
        s.violations.len()
    );
    for v in &s.violations {
        let _ = writeln!(
            out,
            "  violation: sample {} at ({},{}) generator {}",
            v.sample, v.k, v.l, v.generator
        );
    }
    let _ = writeln!(out, "failures: {}", doc.failures);
    out
}

pub fn verify_tsv(doc: &VerifyDoc) -> String {
    let mut out =
        String::from("k\tl\tentry\tclosed_form_ok\tsampled\tcoranks_matching\td_value\tpassed\n");
    for c in &doc.cells {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            c.k,
            c.l,
            joined(&c.expected),
            c.closed_form_ok,
            joined(&c.observed),
            c.coranks_matching,
            joined(&c.d_value),
            c.passed
        );
    }
    out
}

pub fn verify(report: &VerifyReport, trials: usize, seed: u64, prime: u64, format: Format) -> String {
    let doc = VerifyDoc::new(report, trials, seed, prime);
    match format {
        Format::Pretty => verify_pretty(&doc),
        Format::Json => json(&doc),
        Format::Tsv => verify_tsv(&doc),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use jtable_core::full_table;
    use jtable_core::table::{table_entry, TableIndex};

    #[test]
    fn grid_for_small_table() {
        let t = full_table(StableQ::new(5, 3).unwrap()).unwrap();
        assert_eq!(
            table_pretty(&t),
            "Q = (5,2): 2 x 2 entries\n\
             \x20    l=1      l=2\n\
             k=1  (5,2)    (5,1,1)\n\
             k=2  (4,2,1)  (4,1,1,1)\n"
        );
    }

    #[test]
    fn tsv_has_header_and_one_row_per_entry() {
        let t = full_table(StableQ::new(5, 2).unwrap()).unwrap();
        let text = table_tsv(&t);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], ENTRY_TSV_HEADER);
        let parts: Vec<&str> = lines[1..].iter().map(|l| l.split('\t').nth(2).unwrap()).collect();
        assert_eq!(parts, ["5,3", "5,2,1", "5,1,1,1"]);
        for l in &lines {
            assert_eq!(l.split('\t').count(), 10);
        }
    }

    #[test]
    fn pretty_entry() {
        let q = StableQ::new(7, 4).unwrap();
        let e = table_entry(&q, TableIndex::new(2, 1)).unwrap();
        let text = entry_pretty(&q, &e);
        assert!(text.contains("partition  (5,3,2)\n"), "{text}");
        assert!(text.contains("burge      aabaabba\n"), "{text}");
    }

    #[test]
    fn matrix_rows_are_tab_separated() {
        let m = ModMatrix::from_rows(&[vec![0, 1], vec![0, 0]], 7);
        assert_eq!(matrix_tsv(&m), "0\t1\n0\t0\n");
    }
}
