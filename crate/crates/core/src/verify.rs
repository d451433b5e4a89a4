//! End-to-end verification of a table against exact linear algebra.

use alloc::vec::Vec;

use crate::equations::{equation_set, evaluate, random_assignment, sample_point};
use crate::field::DEFAULT_PRIME;
use crate::linalg::{build_matrix, d_oracle, dominance_maximum, jordan_type_of};
use crate::partition::{Partition, StableQ};
use crate::table::{closed_form_partition, full_table, JTable, TableIndex};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    pub prime: u64,
    /// Unconstrained samples for the completeness sweep.
    pub sweep_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            trials: 5,
            seed: 0,
            prime: DEFAULT_PRIME,
            sweep_samples: 1000,
        }
    }
}

/// Jordan types observed on generic points of one equation locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusCheck {
    /// Dominance maximum of the sampled types.
    pub max_type: Partition,
    /// Samples whose measured corank profile equals the predicted one.
    pub coranks_matching: usize,
    pub trials: usize,
}

pub fn check_locus(
    q: &StableQ,
    idx: TableIndex,
    trials: usize,
    seed: u64,
    p: u64,
) -> Result<LocusCheck> {
    let cell = idx.check(q)?;
    let expected = crate::tropical::corank_sequence(cell.u, cell.r, cell.k, cell.l)?.values;
    let mut types = Vec::with_capacity(trials);
    let mut coranks_matching = 0;
    for t in 0..trials as u64 {
        let asn = sample_point(q, idx, seed.wrapping_add(t), p)?;
        let m = build_matrix(&asn, q)?;
        if m.corank_profile()? == expected {
            coranks_matching += 1;
        }
        types.push(jordan_type_of(&m)?);
    }
    Ok(LocusCheck {
        max_type: dominance_maximum(&types)?,
        coranks_matching,
        trials,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellReport {
    pub index: TableIndex,
    pub expected: Partition,
    /// Closed form equals the corank route.
    pub closed_form_ok: bool,
    pub locus: LocusCheck,
    pub d_value: Partition,
}

impl CellReport {
    pub fn locus_ok(&self) -> bool {
        self.locus.max_type == self.expected
    }

    pub fn coranks_ok(&self) -> bool {
        self.locus.coranks_matching == self.locus.trials
    }

    pub fn d_ok(&self, q: &StableQ) -> bool {
        self.d_value == q.partition()
    }

    pub fn passed(&self, q: &StableQ) -> bool {
        self.closed_form_ok && self.locus_ok() && self.coranks_ok() && self.d_ok(q)
    }
}

/// A sample whose Jordan type is a table entry but which violates one of
/// that entry's generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub sample: usize,
    pub index: TableIndex,
    pub generator: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub samples: usize,
    /// Samples whose Jordan type is some table entry.
    pub matched: usize,
    /// Number of distinct table entries hit.
    pub cells_hit: usize,
    pub violations: Vec<Violation>,
}

/// Zero density used for sample `i`: cycles through 0, 1/4, 1/2, 3/4 so that
/// degenerate strata are visited as well as the generic one.
fn zero_probability(i: usize) -> f64 {
    (i % 4) as f64 / 4.0
}

/// Samples unconstrained points; whenever the Jordan type equals an entry
/// `P_{k,l}`, every generator of `E^Q_{k,l}` must vanish there.
pub fn completeness_sweep(table: &JTable, samples: usize, seed: u64, p: u64) -> Result<SweepReport> {
    let q = table.q;
    let gens = TableIndex::all(&q)
        .map(|idx| equation_set(&q, idx))
        .collect::<Result<Vec<_>>>()?;
    let mut hit = alloc::vec![false; gens.len()];
    let mut report = SweepReport {
        samples,
        matched: 0,
        cells_hit: 0,
        violations: Vec::new(),
    };
    for i in 0..samples {
        let asn = random_assignment(&q, seed.wrapping_add(i as u64), p, zero_probability(i))?;
        let jt = jordan_type_of(&build_matrix(&asn, &q)?)?;
        let Some(entry) = table.find(&jt) else {
            continue;
        };
        report.matched += 1;
        let pos = (entry.index.k - 1) * q.cols() + (entry.index.l - 1);
        hit[pos] = true;
        for (n, g) in gens[pos].iter().enumerate() {
            if evaluate(g, &asn)? != 0 {
                report.violations.push(Violation {
                    sample: i,
                    index: entry.index,
                    generator: n,
                });
            }
        }
    }
    report.cells_hit = hit.iter().filter(|&&h| h).count();
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub q: StableQ,
    pub cells: Vec<CellReport>,
    pub sweep: SweepReport,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.cells.iter().filter(|c| !c.passed(&self.q)).count() + self.sweep.violations.len()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

pub fn verify_table(q: StableQ, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let table = full_table(q)?;
    let cells = table
        .entries
        .iter()
        .map(|e| {
            Ok(CellReport {
                index: e.index,
                expected: e.partition.clone(),
                closed_form_ok: closed_form_partition(&q, e.index)? == e.partition,
                locus: check_locus(&q, e.index, cfg.trials, cfg.seed, cfg.prime)?,
                d_value: d_oracle(&e.partition, cfg.trials, cfg.seed, cfg.prime)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sweep = completeness_sweep(&table, cfg.sweep_samples, cfg.seed, cfg.prime)?;
    Ok(VerifyReport { q, cells, sweep })
}
