//! Integer partitions, dominance order, almost rectangular blocks and the
//! two-cluster `(a, b)` decomposition with its type A/B/C predicates.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
    weight: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParts);
        }
        let weight = parts.iter().sum();
        Ok(Self { parts, weight })
    }

    /// Sorts the parts into decreasing order and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let weight = parts.iter().sum();
        Self { parts, weight }
    }

    /// Builds a partition from `(part, multiplicity)` runs; zero parts and
    /// zero multiplicities are skipped.
    pub fn from_runs(runs: &[(usize, usize)]) -> Self {
        let mut parts = Vec::new();
        for &(part, mult) in runs {
            if part > 0 {
                parts.extend(core::iter::repeat_n(part, mult));
            }
        }
        Self::from_unsorted(parts)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<usize> {
        self.parts.first().copied()
    }

    pub fn smallest(&self) -> Option<usize> {
        self.parts.last().copied()
    }

    /// Number of parts equal to `part`.
    pub fn multiplicity(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// The transpose: `result[j]` counts the parts that are at least `j + 1`.
    pub fn conjugate(&self) -> Partition {
        let width = self.largest().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition {
            parts,
            weight: self.weight,
        }
    }

    /// Compares `self` with `other` in dominance order.
    pub fn dominance(&self, other: &Partition) -> Result<Dominance> {
        dominance_leq(self, other)
    }

    /// Largest and smallest parts differ by at most one.
    pub fn is_almost_rectangular(&self) -> bool {
        match (self.largest(), self.smallest()) {
            (Some(a), Some(b)) => a - b <= 1,
            _ => true,
        }
    }

    /// Consecutive parts differ by at least two.
    pub fn is_stable(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyPartition);
        }
        Ok(self.parts.windows(2).all(|w| w[0] - w[1] >= 2))
    }

    /// Prefix sums `p_1, p_1 + p_2, ...`.
    fn prefix_sums(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts.iter().scan(0, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `(5,3,2)` as well as the bare `5,3,2`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = match (s.strip_prefix('('), s.strip_suffix(')')) {
            (Some(_), Some(_)) => &s[1..s.len() - 1],
            (None, None) => s,
            _ => return Err(Error::Parse("unbalanced parentheses")),
        };
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<core::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse("parts must be non-negative integers"))?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

/// The two-part stable partition `Q = (u, u - r)` with `u > r >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StableQ {
    u: usize,
    r: usize,
}

impl StableQ {
    pub fn new(u: usize, r: usize) -> Result<Self> {
        if r < 2 || u <= r {
            return Err(Error::InvalidStableQ { u, r });
        }
        Ok(Self { u, r })
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn second_part(&self) -> usize {
        self.u - self.r
    }

    /// Dimension `2u - r` of the ambient vector space.
    pub fn dim(&self) -> usize {
        2 * self.u - self.r
    }

    pub fn partition(&self) -> Partition {
        Partition {
            parts: alloc::vec![self.u, self.u - self.r],
            weight: self.dim(),
        }
    }

    /// Number of rows `r - 1` (range of `k`).
    pub fn rows(&self) -> usize {
        self.r - 1
    }

    /// Number of columns `u - r` (range of `l`).
    pub fn cols(&self) -> usize {
        self.u - self.r
    }

    /// Every stable two-part `Q` with `u <= max_u`, ordered by `(u, r)`.
    pub fn all_up_to(max_u: usize) -> impl Iterator<Item = StableQ> {
        (3..=max_u).flat_map(|u| (2..u).map(move |r| StableQ { u, r }))
    }
}

impl fmt::Display for StableQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.u - self.r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    LessOrEqual,
    Greater,
    Incomparable,
}

/// Dominance comparison by prefix sums; both partitions must have the same
/// weight.
pub fn dominance_leq(p: &Partition, q: &Partition) -> Result<Dominance> {
    if p.weight != q.weight {
        return Err(Error::WeightMismatch {
            left: p.weight,
            right: q.weight,
        });
    }
    let n = p.len().max(q.len());
    let pad = |x: &Partition| {
        x.prefix_sums()
            .chain(core::iter::repeat(x.weight))
            .take(n)
            .collect::<Vec<_>>()
    };
    let (ps, qs) = (pad(p), pad(q));
    let leq = ps.iter().zip(&qs).all(|(a, b)| a <= b);
    let geq = ps.iter().zip(&qs).all(|(a, b)| a >= b);
    Ok(match (leq, geq) {
        (true, _) => Dominance::LessOrEqual,
        (false, true) => Dominance::Greater,
        (false, false) => Dominance::Incomparable,
    })
}

/// The unique almost rectangular partition of `m` into `k` parts, written
/// `[m]^k`.
pub fn almost_rectangular(m: usize, k: usize) -> Result<Partition> {
    if k == 0 || k > m {
        return Err(Error::TooManyParts { m, k });
    }
    let (q, rem) = (m / k, m % k);
    Ok(Partition::from_runs(&[(q + 1, rem), (q, k - rem)]))
}

pub fn is_stable(p: &Partition) -> Result<bool> {
    p.is_stable()
}

/// `P = (a^{n_a}, (a-1)^{n_{a-1}}, b^{n_b}, (b-1)^{n_{b-1}})` with `a - b >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbForm {
    pub a: usize,
    pub n_a: usize,
    pub n_a1: usize,
    pub b: usize,
    pub n_b: usize,
    pub n_b1: usize,
}

impl AbForm {
    pub fn reassemble(&self) -> Partition {
        Partition::from_runs(&[
            (self.a, self.n_a),
            (self.a - 1, self.n_a1),
            (self.b, self.n_b),
            (self.b - 1, self.n_b1),
        ])
    }
}

/// Greedy parse into two almost rectangular clusters. Every part equal to
/// `a - 1` is put in the first cluster.
pub fn ab_decomposition(p: &Partition) -> Option<AbForm> {
    let a = p.largest()?;
    let n_a = p.multiplicity(a);
    let n_a1 = if a > 1 { p.multiplicity(a - 1) } else { 0 };
    let rest = &p.parts[n_a + n_a1..];
    let b = *rest.first()?;
    if a < b + 2 {
        return None;
    }
    let n_b = rest.iter().take_while(|&&x| x == b).count();
    let n_b1 = rest.len() - n_b;
    if rest[n_b..].iter().any(|&x| x != b - 1) {
        return None;
    }
    Some(AbForm {
        a,
        n_a,
        n_a1,
        b,
        n_b,
        n_b1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartitionType {
    A,
    B,
    C,
}

impl fmt::Display for PartitionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartitionType::A => "A",
            PartitionType::B => "B",
            PartitionType::C => "C",
        })
    }
}

/// Subset of `{A, B, C}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct TypeSet {
    a: bool,
    b: bool,
    c: bool,
}

impl TypeSet {
    pub fn contains(&self, t: PartitionType) -> bool {
        match t {
            PartitionType::A => self.a,
            PartitionType::B => self.b,
            PartitionType::C => self.c,
        }
    }

    pub fn is_empty(&self) -> bool {
        !(self.a || self.b || self.c)
    }

    pub fn iter(&self) -> impl Iterator<Item = PartitionType> + '_ {
        [PartitionType::A, PartitionType::B, PartitionType::C]
            .into_iter()
            .filter(move |&t| self.contains(t))
    }
}

impl FromIterator<PartitionType> for TypeSet {
    fn from_iter<I: IntoIterator<Item = PartitionType>>(iter: I) -> Self {
        let mut set = TypeSet::default();
        for t in iter {
            match t {
                PartitionType::A => set.a = true,
                PartitionType::B => set.b = true,
                PartitionType::C => set.c = true,
            }
        }
        set
    }
}

/// Raw truth of the three type predicates relative to `u`. The sets may
/// overlap.
pub fn classify_type(p: &Partition, u: usize) -> Result<TypeSet> {
    let f = ab_decomposition(p).ok_or(Error::NoAbDecomposition)?;
    let AbForm {
        a,
        n_a,
        n_a1,
        b,
        n_b,
        n_b1,
    } = f;
    let type_a = u == a * n_a + (a - 1) * n_a1;
    let b_first = u == 2 * n_a + 2 * n_a1 + b * n_b + (b - 1) * n_b1;
    let b_second = b + 2 == a && n_b1 == 0 && u == 2 * n_a + (a - 1) * n_a1 + b * n_b;
    let type_c = b + 2 == a
        && n_a > 0
        && n_a1 > 0
        && n_b > 0
        && n_b1 > 0
        && u == 2 * n_a + (a - 1) * n_a1 + b * n_b;
    Ok(TypeSet {
        a: type_a,
        b: b_first || b_second,
        c: type_c,
    })
}
