//! Min-plus algebra on 2x2 matrices and the corank profile of powers.
//!
//! A generic matrix on the locus of cell `(k, l)` has order matrix
//! `T = [[k, 0], [r, l']]` with `l' = min(l, r - k)`. The corank of its
//! `s`-th power is the lower envelope of four lines
//!
//! ```text
//! L1(s) = (k + l) s        L2(s) = k s + u - r
//! L3(s) = l' s + u - 2 l'  L4(s) = 2u - r
//! ```
//!
//! (with `corank A = k + l` at `s = 1`).

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_rational::Ratio;

use crate::{Error, Result};

/// A min-plus scalar: a non-negative integer or `+inf`.
///
/// `oplus` is `min`, `otimes` is saturating addition with `+inf` absorbing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MinPlus {
    Finite(u64),
    Infinity,
}

impl MinPlus {
    pub const ZERO: MinPlus = MinPlus::Infinity;
    pub const ONE: MinPlus = MinPlus::Finite(0);

    pub fn oplus(self, other: MinPlus) -> MinPlus {
        core::cmp::min(self, other)
    }

    pub fn otimes(self, other: MinPlus) -> MinPlus {
        match (self, other) {
            (MinPlus::Finite(a), MinPlus::Finite(b)) => MinPlus::Finite(a.saturating_add(b)),
            _ => MinPlus::Infinity,
        }
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            MinPlus::Finite(v) => Some(v),
            MinPlus::Infinity => None,
        }
    }
}

impl Ord for MinPlus {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (MinPlus::Finite(a), MinPlus::Finite(b)) => a.cmp(b),
            (MinPlus::Finite(_), MinPlus::Infinity) => Ordering::Less,
            (MinPlus::Infinity, MinPlus::Finite(_)) => Ordering::Greater,
            (MinPlus::Infinity, MinPlus::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for MinPlus {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for MinPlus {
    fn from(v: u64) -> Self {
        MinPlus::Finite(v)
    }
}

impl fmt::Display for MinPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinPlus::Finite(v) => write!(f, "{v}"),
            MinPlus::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MinPlusMatrix2 {
    pub entries: [[MinPlus; 2]; 2],
}

impl MinPlusMatrix2 {
    pub fn new(entries: [[MinPlus; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn from_finite(entries: [[u64; 2]; 2]) -> Self {
        Self {
            entries: entries.map(|row| row.map(MinPlus::Finite)),
        }
    }

    pub fn identity() -> Self {
        Self::new([
            [MinPlus::ONE, MinPlus::ZERO],
            [MinPlus::ZERO, MinPlus::ONE],
        ])
    }

    pub fn get(&self, i: usize, j: usize) -> MinPlus {
        self.entries[i][j]
    }

    /// `(XY)_ij = min_m (X_im + Y_mj)`.
    pub fn mul(&self, other: &MinPlusMatrix2) -> MinPlusMatrix2 {
        let mut out = [[MinPlus::ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..2)
                    .map(|m| self.entries[i][m].otimes(other.entries[m][j]))
                    .fold(MinPlus::ZERO, MinPlus::oplus);
            }
        }
        MinPlusMatrix2 { entries: out }
    }

    /// `s`-fold min-plus power by repeated squaring; `s = 0` is the identity.
    pub fn pow(&self, mut s: usize) -> MinPlusMatrix2 {
        let mut base = *self;
        let mut acc = MinPlusMatrix2::identity();
        while s > 0 {
            if s & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            s >>= 1;
        }
        acc
    }
}

pub fn min_plus_mul(x: &MinPlusMatrix2, y: &MinPlusMatrix2) -> MinPlusMatrix2 {
    x.mul(y)
}

/// Order matrix `T = [[k, 0], [r, l']]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrderMatrix {
    k: usize,
    lprime: usize,
    r: usize,
}

impl OrderMatrix {
    pub fn new(k: usize, lprime: usize, r: usize) -> Result<Self> {
        if k == 0 || lprime == 0 || k + lprime > r {
            return Err(Error::InvalidOrderMatrix { k, lprime, r });
        }
        Ok(Self { k, lprime, r })
    }

    /// The order matrix of cell `(k, l)`, with `l' = min(l, r - k)`.
    pub fn for_cell(r: usize, k: usize, l: usize) -> Result<Self> {
        if k >= r {
            return Err(Error::InvalidOrderMatrix { k, lprime: l, r });
        }
        Self::new(k, l.min(r - k), r)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lprime(&self) -> usize {
        self.lprime
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn to_matrix(&self) -> MinPlusMatrix2 {
        MinPlusMatrix2::from_finite([[self.k as u64, 0], [self.r as u64, self.lprime as u64]])
    }
}

/// `(T^{(x)s})_11 (+) u` read off the literal min-plus power.
pub fn power_11_direct(t: &OrderMatrix, s: usize, u: usize) -> u64 {
    let entry = t.to_matrix().pow(s).get(0, 0);
    entry.oplus(MinPlus::Finite(u as u64)).finite().unwrap_or(u as u64)
}

/// Closed form for `(T^{(x)s})_11 (+) u`, split by the parity of `s`.
/// `s = 1` returns `k`.
pub fn tropical_power_11(t: &OrderMatrix, s: usize, u: usize) -> Result<u64> {
    let (k, lp, r, u, s64) = (
        t.k as u64,
        t.lprime as u64,
        t.r as u64,
        u as u64,
        s as u64,
    );
    match s {
        0 => Err(Error::PowerTooSmall { s }),
        1 => Ok(k),
        _ if s.is_multiple_of(2) => Ok([s64 * k, s64 / 2 * r, (s64 - 2) * lp + r, u]
            .into_iter()
            .min()
            .unwrap()),
        _ => Ok([
            s64 * k,
            k + (s64 - 1) / 2 * r,
            lp + (s64 - 1) / 2 * r,
            (s64 - 2) * lp + r,
            u,
        ]
        .into_iter()
        .min()
        .unwrap()),
    }
}

/// `min(sk, (s-2)l' + r, u)`, valid once `k + l' <= r`.
pub fn simplified_power_11(t: &OrderMatrix, s: usize, u: usize) -> Result<u64> {
    if s < 2 {
        return Err(Error::PowerTooSmall { s });
    }
    if t.k + t.lprime > t.r {
        return Err(Error::InvalidOrderMatrix {
            k: t.k,
            lprime: t.lprime,
            r: t.r,
        });
    }
    let (k, lp, r, s) = (t.k as u64, t.lprime as u64, t.r as u64, s as u64);
    Ok((s * k).min((s - 2) * lp + r).min(u as u64))
}

/// Parameters `(u, r, k, l)` of one table cell, validated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CellParams {
    pub u: usize,
    pub r: usize,
    pub k: usize,
    pub l: usize,
}

impl CellParams {
    pub fn new(u: usize, r: usize, k: usize, l: usize) -> Result<Self> {
        if r < 2 || u <= r {
            return Err(Error::InvalidStableQ { u, r });
        }
        if k == 0 || k > r - 1 || l == 0 || l > u - r {
            return Err(Error::IndexOutOfRange {
                k,
                l,
                k_max: r - 1,
                l_max: u - r,
            });
        }
        Ok(Self { u, r, k, l })
    }

    pub fn lprime(&self) -> usize {
        self.l.min(self.r - self.k)
    }

    pub fn order_matrix(&self) -> OrderMatrix {
        OrderMatrix {
            k: self.k,
            lprime: self.lprime(),
            r: self.r,
        }
    }

    /// `[L1(s), L2(s), L3(s), L4(s)]`.
    pub fn lines(&self, s: usize) -> [i64; 4] {
        let (u, r, k, l, lp, s) = (
            self.u as i64,
            self.r as i64,
            self.k as i64,
            self.l as i64,
            self.lprime() as i64,
            s as i64,
        );
        [(k + l) * s, k * s + u - r, lp * s + u - 2 * lp, 2 * u - r]
    }

    /// Stable value `2u - r`.
    pub fn final_corank(&self) -> usize {
        2 * self.u - self.r
    }
}

/// Corank of `A^s` for a generic `A` on the locus of cell `(k, l)`.
pub fn corank_at(u: usize, r: usize, k: usize, l: usize, s: usize) -> Result<usize> {
    let cell = CellParams::new(u, r, k, l)?;
    match s {
        0 => Err(Error::PowerTooSmall { s }),
        1 => Ok(k + l),
        _ => Ok(*cell.lines(s).iter().min().unwrap() as usize),
    }
}

/// Corank profile `corank(A), corank(A^2), ...` up to the first power that
/// reaches `2u - r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CorankSequence {
    pub u: usize,
    pub r: usize,
    pub k: usize,
    pub l: usize,
    pub values: Vec<usize>,
}

impl CorankSequence {
    /// First differences with `corank(A^0) = 0`; this is the conjugate of
    /// the Jordan type.
    pub fn differences(&self) -> Vec<usize> {
        let mut prev = 0;
        self.values
            .iter()
            .map(|&v| {
                let d = v - prev;
                prev = v;
                d
            })
            .collect()
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// First differences weakly decrease.
    pub fn is_concave(&self) -> bool {
        self.differences().windows(2).all(|w| w[0] >= w[1])
    }
}

pub fn corank_sequence(u: usize, r: usize, k: usize, l: usize) -> Result<CorankSequence> {
    let cell = CellParams::new(u, r, k, l)?;
    let target = cell.final_corank();
    let mut values = Vec::new();
    for s in 1..=2 * u {
        let c = corank_at(u, r, k, l, s)?;
        values.push(c);
        if c == target {
            break;
        }
    }
    debug_assert_eq!(values.last(), Some(&target));
    debug_assert!(values.len() <= u);
    Ok(CorankSequence { u, r, k, l, values })
}

/// `s`-coordinates of the pairwise intersections of the four lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Intersections {
    pub x12: Ratio<i64>,
    pub x13: Ratio<i64>,
    /// `None` when `k = l'` (parallel lines).
    pub x23: Option<Ratio<i64>>,
    pub x24: Ratio<i64>,
    pub x34: Ratio<i64>,
}

pub fn intersection_coordinates(u: usize, r: usize, k: usize, l: usize) -> Result<Intersections> {
    let cell = CellParams::new(u, r, k, l)?;
    let (u, r, k, l, lp) = (
        u as i64,
        r as i64,
        k as i64,
        l as i64,
        cell.lprime() as i64,
    );
    Ok(Intersections {
        x12: Ratio::new(u - r, l),
        x13: Ratio::new(u - 2 * lp, k + l - lp),
        x23: (k != lp).then(|| Ratio::new(r - 2 * lp, k - lp)),
        x24: Ratio::new(u, k),
        x34: Ratio::new(u - r, lp) + 2,
    })
}
