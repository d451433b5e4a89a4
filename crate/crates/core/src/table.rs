//! The `(r - 1) x (u - r)` table of Jordan types with generic commuting
//! type `Q = (u, u - r)`.
//!
//! Each cell is computed from its corank profile (the conjugate of the first
//! differences) and cross-checked against the closed form selected by the
//! path the profile takes through the four lines of
//! [`CellParams::lines`](crate::tropical::CellParams::lines).

use alloc::vec::Vec;
use core::fmt;

use crate::partition::{almost_rectangular, classify_type, Partition, StableQ, TypeSet};
use crate::tropical::{corank_sequence, CellParams, CorankSequence};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableIndex {
    pub k: usize,
    pub l: usize,
}

impl TableIndex {
    pub fn new(k: usize, l: usize) -> Self {
        Self { k, l }
    }

    pub fn check(&self, q: &StableQ) -> Result<CellParams> {
        CellParams::new(q.u(), q.r(), self.k, self.l)
    }

    /// All indices of `q`, row by row.
    pub fn all(q: &StableQ) -> impl Iterator<Item = TableIndex> {
        let cols = q.cols();
        (1..=q.rows()).flat_map(move |k| (1..=cols).map(move |l| TableIndex { k, l }))
    }
}

/// Which lines the corank profile follows between `L1` and `L4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CasePath {
    /// `L1 -> L2 -> L4`
    A,
    /// `L1 -> L3 -> L4`
    B,
    /// `L1 -> L2 -> L3 -> L4`
    C,
}

impl fmt::Display for CasePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CasePath::A => "A",
            CasePath::B => "B",
            CasePath::C => "C",
        })
    }
}

/// Conjugate of the first differences of the corank profile.
pub fn jordan_type_from_corank(q: &StableQ, idx: TableIndex) -> Result<Partition> {
    let cell = idx.check(q)?;
    let seq = corank_sequence(cell.u, cell.r, cell.k, cell.l)?;
    Partition::new(seq.differences()).map(|d| d.conjugate())
}

/// Strict-minimizer classification over `2 <= s <= 2u`.
pub fn case_path(q: &StableQ, idx: TableIndex) -> Result<CasePath> {
    let cell = idx.check(q)?;
    let (mut l2_strict, mut l3_strict, mut l3_above) = (false, false, true);
    for s in 2..=2 * cell.u {
        let [l1, l2, l3, l4] = cell.lines(s);
        l2_strict |= l2 < l1.min(l3).min(l4);
        l3_strict |= l3 < l1.min(l2).min(l4);
        l3_above &= l3 >= l1.min(l2).min(l4);
    }
    Ok(if l2_strict && l3_strict {
        CasePath::C
    } else if l3_above {
        CasePath::A
    } else {
        CasePath::B
    })
}

/// Builds a partition from signed `(part, multiplicity)` runs, rejecting
/// negative multiplicities and non-positive parts that actually occur.
fn signed_runs(runs: &[(i64, i64)]) -> Option<Partition> {
    let mut out = Vec::new();
    for &(part, mult) in runs {
        if mult < 0 || (mult > 0 && part <= 0) {
            return None;
        }
        out.push((part.max(0) as usize, mult as usize));
    }
    Some(Partition::from_runs(&out))
}

/// Quotients and remainders that parameterize the closed forms.
#[derive(Debug, Clone, Copy)]
struct Breakpoints {
    u: i64,
    r: i64,
    k: i64,
    l: i64,
    lp: i64,
}

impl Breakpoints {
    fn new(cell: &CellParams) -> Self {
        Self {
            u: cell.u as i64,
            r: cell.r as i64,
            k: cell.k as i64,
            l: cell.l as i64,
            lp: cell.lprime() as i64,
        }
    }

    /// `(s1, e1, s2, e2)` with `u - r = s1 l + e1` and `u = s2 k + e2`.
    fn case_a(&self) -> (i64, i64, i64, i64) {
        let s1 = (self.u - self.r) / self.l;
        let s2 = self.u / self.k;
        (s1, self.u - self.r - s1 * self.l, s2, self.u - s2 * self.k)
    }

    /// `(s3, e3, s4, e4)` with `u - 2l' = s3 (k + l - l') + e3` and
    /// `u - r = s4 l' + e4`.
    fn case_b(&self) -> (i64, i64, i64, i64) {
        let d = self.k + self.l - self.lp;
        let s3 = (self.u - 2 * self.lp) / d;
        let s4 = (self.u - self.r) / self.lp;
        (
            s3,
            self.u - 2 * self.lp - s3 * d,
            s4,
            self.u - self.r - s4 * self.lp,
        )
    }

    /// `(s1, e, f)` with `e = (u - r) - s1 l` and
    /// `f = (r - 2l) - (s1 + 1)(k - l)`.
    fn case_c(&self) -> (i64, i64, i64) {
        let s1 = (self.u - self.r) / self.l;
        let e = self.u - self.r - s1 * self.l;
        let f = (self.r - 2 * self.l) - (s1 + 1) * (self.k - self.l);
        (s1, e, f)
    }
}

/// The explicit part lists for each path.
pub fn closed_form_partition(q: &StableQ, idx: TableIndex) -> Result<Partition> {
    let cell = idx.check(q)?;
    let b = Breakpoints::new(&cell);
    let (k, l, lp) = (b.k, b.l, b.lp);
    let parts = match case_path(q, idx)? {
        CasePath::A => {
            let (s1, e1, s2, e2) = b.case_a();
            signed_runs(&[(s2 + 1, e2), (s2, k - e2), (s1 + 1, e1), (s1, l - e1)])
        }
        CasePath::B => {
            let (s3, e3, s4, e4) = b.case_b();
            signed_runs(&[
                (s4 + 3, e4),
                (s4 + 2, lp - e4),
                (s3 + 1, e3),
                (s3, k + l - lp - e3),
            ])
        }
        CasePath::C => {
            let (s1, e, f) = b.case_c();
            if e > 0 {
                signed_runs(&[
                    (s1 + 3, e),
                    (s1 + 2, l + f - e),
                    (s1 + 1, k - l + e - f),
                    (s1, l - e),
                ])
            } else {
                signed_runs(&[(s1 + 2, l + f), (s1 + 1, k - l - f), (s1, l)])
            }
        }
    };
    parts.ok_or(Error::ClosedFormMismatch {
        k: idx.k,
        l: idx.l,
    })
}

/// The same partitions written as unions of almost rectangular blocks
/// `[m]^n`.
pub fn bracket_form_partition(q: &StableQ, idx: TableIndex) -> Result<Partition> {
    let cell = idx.check(q)?;
    let (u, r, k, l, lp) = (cell.u, cell.r, cell.k, cell.l, cell.lprime());
    let mismatch = || Error::ClosedFormMismatch { k, l };
    let blocks: Vec<Partition> = match case_path(q, idx)? {
        CasePath::A => alloc::vec![almost_rectangular(u, k)?, almost_rectangular(u - r, l)?],
        CasePath::B => alloc::vec![
            almost_rectangular(u - r + 2 * lp, lp)?,
            almost_rectangular(u - 2 * lp, k + l - lp)?,
        ],
        CasePath::C => {
            let (s1, e, _) = Breakpoints::new(&cell).case_c();
            if e == 0 {
                alloc::vec![almost_rectangular(u, k)?, almost_rectangular(u - r, l)?]
            } else {
                let (s1, e) = (s1 as usize, e as usize);
                let middle = (u - 2 * l)
                    .checked_sub(s1 * (l - e))
                    .ok_or_else(mismatch)?;
                alloc::vec![
                    almost_rectangular(u - r + 2 * l, l)?,
                    almost_rectangular(middle, k - l + e)?,
                    Partition::from_runs(&[(s1, l - e)]),
                ]
            }
        }
    };
    Ok(Partition::from_unsorted(
        blocks.iter().flat_map(|b| b.parts().iter().copied()).collect(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BurgeLetter {
    Alpha,
    Beta,
}

/// A word over `{alpha, beta}`; rendered with `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BurgeWord(Vec<BurgeLetter>);

impl BurgeWord {
    pub fn letters(&self) -> &[BurgeLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ends_in_alpha(&self) -> bool {
        self.0.last() == Some(&BurgeLetter::Alpha)
    }

    /// Number of positions where `beta` is immediately followed by `alpha`.
    pub fn beta_alpha_pairs(&self) -> usize {
        self.0
            .windows(2)
            .filter(|w| w == &[BurgeLetter::Beta, BurgeLetter::Alpha])
            .count()
    }
}

impl fmt::Display for BurgeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.0 {
            f.write_str(match letter {
                BurgeLetter::Alpha => "a",
                BurgeLetter::Beta => "b",
            })?;
        }
        Ok(())
    }
}

/// `alpha^{u-r-l} beta^l alpha^{r-k} beta^k alpha`.
pub fn burge_code(q: &StableQ, idx: TableIndex) -> Result<BurgeWord> {
    let cell = idx.check(q)?;
    let (u, r, k, l) = (cell.u, cell.r, cell.k, cell.l);
    use BurgeLetter::{Alpha, Beta};
    let runs = [(Alpha, u - r - l), (Beta, l), (Alpha, r - k), (Beta, k), (Alpha, 1)];
    Ok(BurgeWord(
        runs.iter()
            .flat_map(|&(letter, n)| core::iter::repeat_n(letter, n))
            .collect(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UChains {
    pub top: usize,
    pub middle: Option<usize>,
    pub bottom: usize,
}

impl UChains {
    pub fn max(&self) -> usize {
        self.top.max(self.bottom).max(self.middle.unwrap_or(0))
    }
}

pub fn u_chain_lengths(q: &StableQ, idx: TableIndex) -> Result<UChains> {
    let cell = idx.check(q)?;
    let b = Breakpoints::new(&cell);
    let (u, r, k, l, lp) = (b.u, b.r, b.k, b.l, b.lp);
    let (top, middle, bottom) = match case_path(q, idx)? {
        CasePath::A => {
            let (s1, e1, s2, e2) = b.case_a();
            let middle = (e1 > 0 && e2 > 0 && s2 == s1 + 2).then(|| u - (s2 - 1) * (e2 - e1));
            (u, middle, u - r + 2 * k)
        }
        CasePath::B => {
            let (s3, e3, s4, e4) = b.case_b();
            let middle = (e3 > 0 && e4 > 0 && s4 == s3).then(|| s3 * (lp + e3 - e4) + 2 * lp + e3);
            (u - r + 2 * lp, middle, u)
        }
        CasePath::C => {
            let (s1, e, f) = b.case_c();
            if e == 0 {
                ((s1 + 1) * k + l + f, None, u - s1 * f)
            } else {
                (
                    (s1 + 2) * (l + f) + e,
                    Some((s1 + 1) * k + l + f + e),
                    u - s1 * f,
                )
            }
        }
    };
    let to_usize = |v: i64| {
        usize::try_from(v).map_err(|_| Error::ClosedFormMismatch {
            k: idx.k,
            l: idx.l,
        })
    };
    Ok(UChains {
        top: to_usize(top)?,
        middle: middle.map(to_usize).transpose()?,
        bottom: to_usize(bottom)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub index: TableIndex,
    pub partition: Partition,
    pub case_path: CasePath,
    pub types: TypeSet,
    pub burge: BurgeWord,
    pub coranks: CorankSequence,
    pub u_chains: UChains,
}

/// Computes one cell and cross-checks the corank route against the closed
/// form.
pub fn table_entry(q: &StableQ, idx: TableIndex) -> Result<TableEntry> {
    let cell = idx.check(q)?;
    let partition = jordan_type_from_corank(q, idx)?;
    if closed_form_partition(q, idx)? != partition {
        return Err(Error::ClosedFormMismatch {
            k: idx.k,
            l: idx.l,
        });
    }
    Ok(TableEntry {
        index: idx,
        types: classify_type(&partition, q.u())?,
        partition,
        case_path: case_path(q, idx)?,
        burge: burge_code(q, idx)?,
        coranks: corank_sequence(cell.u, cell.r, cell.k, cell.l)?,
        u_chains: u_chain_lengths(q, idx)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JTable {
    pub q: StableQ,
    /// Row-major: `(k, l)` is at `(k - 1) * (u - r) + (l - 1)`.
    pub entries: Vec<TableEntry>,
}

impl JTable {
    pub fn get(&self, k: usize, l: usize) -> Option<&TableEntry> {
        if k == 0 || l == 0 || k > self.q.rows() || l > self.q.cols() {
            return None;
        }
        self.entries.get((k - 1) * self.q.cols() + (l - 1))
    }

    /// The entry with the given Jordan type, if any.
    pub fn find(&self, p: &Partition) -> Option<&TableEntry> {
        self.entries.iter().find(|e| &e.partition == p)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[TableEntry]> {
        self.entries.chunks(self.q.cols())
    }
}

pub fn full_table(q: StableQ) -> Result<JTable> {
    let entries = TableIndex::all(&q)
        .map(|idx| table_entry(&q, idx))
        .collect::<Result<Vec<_>>>()?;
    Ok(JTable { q, entries })
}
