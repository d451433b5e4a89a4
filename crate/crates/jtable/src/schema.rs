//! Serde documents for the JSON outputs.
//!
//! These mirror the core types field by field; conversions back into core
//! types re-validate everything they parse.

use serde::{Deserialize, Serialize};

use jtable_core::equations::{PolyGenerator, Term, Var};
use jtable_core::table::{JTable, TableEntry, UChains};
use jtable_core::tropical::CorankSequence;
use jtable_core::verify::VerifyReport;
use jtable_core::{Partition, StableQ};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UChainsDoc {
    pub top: usize,
    pub middle: Option<usize>,
    pub bottom: usize,
}

impl From<UChains> for UChainsDoc {
    fn from(c: UChains) -> Self {
        Self {
            top: c.top,
            middle: c.middle,
            bottom: c.bottom,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub k: usize,
    pub l: usize,
    pub partition: Vec<usize>,
    pub case: String,
    pub types: Vec<String>,
    pub burge: String,
    pub coranks: Vec<usize>,
    pub u_chains: UChainsDoc,
}

impl EntryDoc {
    pub fn partition(&self) -> jtable_core::Result<Partition> {
        Partition::new(self.partition.clone())
    }
}

impl From<&TableEntry> for EntryDoc {
    fn from(e: &TableEntry) -> Self {
        Self {
            k: e.index.k,
            l: e.index.l,
            partition: e.partition.parts().to_vec(),
            case: e.case_path.to_string(),
            types: e.types.iter().map(|t| t.to_string()).collect(),
            burge: e.burge.to_string(),
            coranks: e.coranks.values.clone(),
            u_chains: e.u_chains.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    pub u: usize,
    pub r: usize,
    pub entries: Vec<EntryDoc>,
}

impl TableDoc {
    pub fn q(&self) -> jtable_core::Result<StableQ> {
        StableQ::new(self.u, self.r)
    }
}

impl From<&JTable> for TableDoc {
    fn from(t: &JTable) -> Self {
        Self {
            u: t.q.u(),
            r: t.q.r(),
            entries: t.entries.iter().map(EntryDoc::from).collect(),
        }
    }
}

/// A single entry together with the `Q` it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingleEntryDoc {
    pub u: usize,
    pub r: usize,
    #[serde(flatten)]
    pub entry: EntryDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorankDoc {
    pub u: usize,
    pub r: usize,
    pub k: usize,
    pub l: usize,
    pub coranks: Vec<usize>,
}

impl From<&CorankSequence> for CorankDoc {
    fn from(s: &CorankSequence) -> Self {
        Self {
            u: s.u,
            r: s.r,
            k: s.k,
            l: s.l,
            coranks: s.values.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub c: i64,
    pub vars: Vec<String>,
}

pub type GeneratorDoc = Vec<TermDoc>;

pub fn generator_doc(g: &PolyGenerator) -> GeneratorDoc {
    g.terms()
        .iter()
        .map(|t| TermDoc {
            c: t.coeff,
            vars: t.vars.iter().map(|v| v.to_string()).collect(),
        })
        .collect()
}

pub fn generator_from_doc(doc: &[TermDoc]) -> jtable_core::Result<PolyGenerator> {
    let terms = doc
        .iter()
        .map(|t| {
            let vars = t
                .vars
                .iter()
                .map(|v| v.parse::<Var>())
                .collect::<jtable_core::Result<Vec<_>>>()?;
            Ok(Term {
                coeff: t.c,
                vars,
            })
        })
        .collect::<jtable_core::Result<Vec<_>>>()?;
    Ok(PolyGenerator::from_terms(terms))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellVerifyDoc {
    pub k: usize,
    pub l: usize,
    pub expected: Vec<usize>,
    pub closed_form_ok: bool,
    pub observed: Vec<usize>,
    pub coranks_matching: usize,
    pub d_value: Vec<usize>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub sample: usize,
    pub k: usize,
    pub l: usize,
    pub generator: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepDoc {
    pub samples: usize,
    pub matched: usize,
    pub cells_hit: usize,
    pub violations: Vec<ViolationDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub u: usize,
    pub r: usize,
    pub trials: usize,
    pub seed: u64,
    pub prime: u64,
    pub cells: Vec<CellVerifyDoc>,
    pub sweep: SweepDoc,
    pub failures: usize,
}

impl VerifyDoc {
    pub fn new(report: &VerifyReport, trials: usize, seed: u64, prime: u64) -> Self {
        let q = report.q;
        let cells = report
            .cells
            .iter()
            .map(|c| CellVerifyDoc {
                k: c.index.k,
                l: c.index.l,
                expected: c.expected.parts().to_vec(),
                closed_form_ok: c.closed_form_ok,
                observed: c.locus.max_type.parts().to_vec(),
                coranks_matching: c.locus.coranks_matching,
                d_value: c.d_value.parts().to_vec(),
                passed: c.passed(&q),
            })
            .collect();
        let sweep = &report.sweep;
        Self {
            u: q.u(),
            r: q.r(),
            trials,
            seed,
            prime,
            cells,
            sweep: SweepDoc {
                samples: sweep.samples,
                matched: sweep.matched,
                cells_hit: sweep.cells_hit,
                violations: sweep
                    .violations
                    .iter()
                    .map(|v| ViolationDoc {
                        sample: v.sample,
                        k: v.index.k,
                        l: v.index.l,
                        generator: v.generator,
                    })
                    .collect(),
            },
            failures: report.failures(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub u: usize,
    pub r: usize,
    pub k: usize,
    pub l: usize,
    pub prime: u64,
    pub seed: u64,
    pub rows: Vec<Vec<u64>>,
}
