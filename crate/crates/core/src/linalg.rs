//! Dense matrices over `F_p`, Jordan types of nilpotent matrices, and the
//! Monte Carlo estimate of the generic commuting type.

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::equations::{stream_rng, ParamAssignment, VarFamily};
use crate::field;
use crate::partition::{dominance_leq, Dominance, Partition, StableQ};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    p: u64,
    n: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(n: usize, p: u64) -> Self {
        Self {
            p,
            n,
            data: alloc::vec![0; n * n],
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Self::zeros(n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Row-major entries, reduced mod `p`.
    pub fn from_rows(rows: &[Vec<u64>], p: u64) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            p,
            n,
            data: rows.iter().flatten().map(|&x| x % p).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.n + j] = v % self.p;
    }

    fn add_to(&mut self, i: usize, j: usize, v: u64) {
        let cell = &mut self.data[i * self.n + j];
        *cell = field::add(*cell, v % self.p, self.p);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.n, other.n);
        assert_eq!(self.p, other.p);
        let (n, p) = (self.n, self.p);
        let mut out = ModMatrix::zeros(n, p);
        for i in 0..n {
            for m in 0..n {
                let a = self.get(i, m);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(m, j);
                    if b != 0 {
                        out.add_to(i, j, field::mul(a, b, p));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> ModMatrix {
        let mut base = self.clone();
        let mut acc = ModMatrix::identity(self.n, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> ModMatrix {
        let mut out = ModMatrix::zeros(self.n, self.p);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn commutes_with(&self, other: &ModMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// `M^(2^j) = 0` for the first `2^j >= n`.
    pub fn is_nilpotent(&self) -> bool {
        let mut m = self.clone();
        let mut e = 1;
        while e < self.n {
            m = m.mul(&m);
            e *= 2;
        }
        m.is_zero()
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// `corank(M), corank(M^2), ...` up to the first power equal to zero.
    pub fn corank_profile(&self) -> Result<Vec<usize>> {
        if !self.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        let mut out = Vec::new();
        let mut power = self.clone();
        loop {
            let corank = self.n - power.rank();
            out.push(corank);
            if corank == self.n {
                return Ok(out);
            }
            power = power.mul(self);
        }
    }
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ModMatrix(n={}, p={})", self.n, self.p)?;
        for i in 0..self.n {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Rank by Gaussian elimination.
pub fn rank(m: &ModMatrix) -> usize {
    let (n, p) = (m.n, m.p);
    let mut a = m.data.clone();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| a[r * n + col] != 0) else {
            continue;
        };
        for j in 0..n {
            a.swap(rank * n + j, pivot * n + j);
        }
        let inv = field::inv(a[rank * n + col], p);
        for row in rank + 1..n {
            let factor = field::mul(a[row * n + col], inv, p);
            if factor == 0 {
                continue;
            }
            for j in col..n {
                let t = field::mul(factor, a[rank * n + j], p);
                a[row * n + j] = field::sub(a[row * n + j], t, p);
            }
        }
        rank += 1;
    }
    rank
}

/// Conjugate of the first differences of the corank profile.
pub fn jordan_type_of(m: &ModMatrix) -> Result<Partition> {
    let profile = m.corank_profile()?;
    let mut prev = 0;
    let diffs = profile
        .iter()
        .map(|&c| {
            let d = c - prev;
            prev = c;
            d
        })
        .collect();
    Ok(Partition::new(diffs)?.conjugate())
}

/// Lowest index of a nonzero coefficient, or `len` if there is none.
fn order(coeffs: &[u64]) -> usize {
    coeffs.iter().position(|&c| c != 0).unwrap_or(coeffs.len())
}

/// An endomorphism of `F_p[t]/(t^u) (+) F_p[t]/(t^{u-r})` commuting with
/// multiplication by `t`:
/// `(x, y) -> (a x + t^r g y, h x + b y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub q: StableQ,
    pub p: u64,
    /// Length `u`, zero constant term.
    pub a: Vec<u64>,
    /// Length `u - r`, zero constant term.
    pub b: Vec<u64>,
    /// Length `u - r`.
    pub g: Vec<u64>,
    /// Length `u - r`.
    pub h: Vec<u64>,
}

impl ModuleMap {
    pub fn from_assignment(asn: &ParamAssignment) -> Result<Self> {
        Ok(Self {
            q: asn.q(),
            p: asn.prime(),
            a: asn.coefficients(VarFamily::A)?,
            b: asn.coefficients(VarFamily::B)?,
            g: asn.coefficients(VarFamily::G)?,
            h: asn.coefficients(VarFamily::H)?,
        })
    }

    /// The map with `a = t`, `b = t`, `g = h = 0`, i.e. `J_Q`.
    pub fn shift(q: StableQ, p: u64) -> Self {
        let (u, s) = (q.u(), q.second_part());
        let mut a = alloc::vec![0; u];
        let mut b = alloc::vec![0; s];
        a[1] = 1;
        if s > 1 {
            b[1] = 1;
        }
        Self {
            q,
            p,
            a,
            b,
            g: alloc::vec![0; s],
            h: alloc::vec![0; s],
        }
    }

    /// `t`-adic order of `a`.
    pub fn order_a(&self) -> usize {
        order(&self.a)
    }

    /// `t`-adic order of `b` (`u - r` when `b = 0`).
    pub fn order_b(&self) -> usize {
        order(&self.b)
    }

    /// Matrix on the basis `1, t, ..., t^{u-1}` of the first summand followed
    /// by `1, t, ..., t^{u-r-1}` of the second; column `j` is the image of
    /// basis vector `j`.
    pub fn to_matrix(&self) -> ModMatrix {
        let (u, r, s) = (self.q.u(), self.q.r(), self.q.second_part());
        let mut m = ModMatrix::zeros(u + s, self.p);
        for j in 0..u {
            for (d, &c) in self.a.iter().enumerate().filter(|(_, c)| **c != 0) {
                if j + d < u {
                    m.add_to(j + d, j, c);
                }
            }
            for (d, &c) in self.h.iter().enumerate().filter(|(_, c)| **c != 0) {
                if j + d < s {
                    m.add_to(u + j + d, j, c);
                }
            }
        }
        for j in 0..s {
            for (d, &c) in self.g.iter().enumerate().filter(|(_, c)| **c != 0) {
                if r + j + d < u {
                    m.add_to(r + j + d, u + j, c);
                }
            }
            for (d, &c) in self.b.iter().enumerate().filter(|(_, c)| **c != 0) {
                if j + d < s {
                    m.add_to(u + j + d, u + j, c);
                }
            }
        }
        m
    }
}

pub fn build_matrix(asn: &ParamAssignment, q: &StableQ) -> Result<ModMatrix> {
    if asn.q() != *q {
        return Err(Error::InvalidStableQ { u: q.u(), r: q.r() });
    }
    Ok(ModuleMap::from_assignment(asn)?.to_matrix())
}

/// Direct sum of nilpotent shift blocks (`t^i -> t^{i+1}`) of the given sizes.
pub fn jordan_matrix(partition: &Partition, p: u64) -> ModMatrix {
    let mut m = ModMatrix::zeros(partition.weight(), p);
    let mut offset = 0;
    for &size in partition.parts() {
        for i in 0..size - 1 {
            m.set(offset + i + 1, offset + i, 1);
        }
        offset += size;
    }
    m
}

/// A random nilpotent element of the commutant of `jordan_matrix(P)`.
///
/// The block from summand `j` to summand `i` is multiplication by
/// `t^{max(0, p_i - p_j)} c(t)` with `min(p_i, p_j)` coefficients. Among blocks
/// of equal size the constant terms form a strictly upper triangular matrix.
pub fn commutant_sample(partition: &Partition, seed: u64, p: u64) -> Result<ModMatrix> {
    if partition.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let parts = partition.parts();
    let mut tag: Vec<u64> = parts.iter().map(|&x| x as u64).collect();
    tag.push(u64::MAX - 1);
    let mut rng = stream_rng(seed, &tag);
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, &x| {
            let o = *acc;
            *acc += x;
            Some(o)
        })
        .collect();
    let mut m = ModMatrix::zeros(partition.weight(), p);
    for (i, &pi) in parts.iter().enumerate() {
        for (j, &pj) in parts.iter().enumerate() {
            let shift = pi.saturating_sub(pj);
            for d in 0..pi.min(pj) {
                let c = if d == 0 && pi == pj && i >= j {
                    0
                } else {
                    rng.random_range(0..p)
                };
                if c == 0 {
                    continue;
                }
                for src in 0..pj {
                    let dst = src + d + shift;
                    if dst < pi {
                        m.add_to(offsets[i] + dst, offsets[j] + src, c);
                    }
                }
            }
        }
    }
    debug_assert!(m.commutes_with(&jordan_matrix(partition, p)));
    if !m.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    Ok(m)
}

/// Dominance maximum of the Jordan types of `trials` commutant samples.
pub fn d_oracle(partition: &Partition, trials: usize, seed: u64, p: u64) -> Result<Partition> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let types = (0..trials as u64)
        .map(|t| commutant_sample(partition, seed.wrapping_add(t), p).and_then(|m| jordan_type_of(&m)))
        .collect::<Result<Vec<_>>>()?;
    dominance_maximum(&types)
}

/// The element that dominates every other, if there is one.
pub fn dominance_maximum(types: &[Partition]) -> Result<Partition> {
    types
        .iter()
        .find(|&cand| {
            types
                .iter()
                .all(|other| dominance_leq(other, cand) == Ok(Dominance::LessOrEqual))
        })
        .cloned()
        .ok_or(Error::NoDominanceMaximum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::{sample_point, Var};
    use crate::field::DEFAULT_PRIME;
    use crate::table::TableIndex;
    use crate::tropical::corank_sequence;
    use alloc::vec;

    const P: u64 = DEFAULT_PRIME;

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(u: usize, r: usize) -> StableQ {
        StableQ::new(u, r).unwrap()
    }

    fn partitions_up_to(n: usize) -> Vec<Partition> {
        fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition::new(cur.clone()).unwrap());
                return;
            }
            for x in (1..=max.min(n)).rev() {
                cur.push(x);
                go(n - x, x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        for w in 1..=n {
            go(w, w, &mut Vec::new(), &mut out);
        }
        out
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&ModMatrix::zeros(4, P)), 0);
        assert_eq!(rank(&ModMatrix::identity(6, P)), 6);
        assert_eq!(rank(&jordan_matrix(&part(&[7, 3]), P)), 8);
        let m = ModMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]], 101);
        assert_eq!(rank(&m), 2);
        // Singular mod 7 only.
        let m = ModMatrix::from_rows(&[vec![1, 2], vec![3, 13]], 7);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn rank_matches_transpose() {
        let mut rng = stream_rng(3, &[1]);
        for n in 1..=8 {
            for _ in 0..5 {
                let rows: Vec<Vec<u64>> = (0..n)
                    .map(|_| (0..n).map(|_| rng.random_range(0..3u64)).collect())
                    .collect();
                let m = ModMatrix::from_rows(&rows, 5);
                assert_eq!(rank(&m), rank(&m.transpose()));
            }
        }
    }

    #[test]
    fn jordan_type_examples() {
        assert_eq!(jordan_type_of(&jordan_matrix(&part(&[7, 3]), P)), Ok(part(&[7, 3])));
        assert_eq!(
            jordan_type_of(&ModMatrix::zeros(5, P)),
            Ok(part(&[1, 1, 1, 1, 1]))
        );
        assert_eq!(
            jordan_type_of(&ModMatrix::identity(3, P)),
            Err(Error::NotNilpotent)
        );
        let m = jordan_matrix(&part(&[3]), P);
        assert_eq!(m.get(1, 0), 1);
        assert_eq!(m.get(2, 1), 1);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn jordan_matrix_round_trips() {
        for x in partitions_up_to(12) {
            assert_eq!(jordan_type_of(&jordan_matrix(&x, P)), Ok(x));
        }
        for x in [part(&[9, 7, 5, 4, 3, 2]), part(&[10, 10, 10])] {
            assert_eq!(jordan_type_of(&jordan_matrix(&x, P)), Ok(x));
        }
    }

    #[test]
    fn build_matrix_examples() {
        let q73 = q(7, 4);
        let shift = ModuleMap::shift(q73, P).to_matrix();
        assert_eq!(jordan_type_of(&shift), Ok(part(&[7, 3])));

        let zero = ParamAssignment::zeros(q73, P).unwrap();
        let m = build_matrix(&zero, &q73).unwrap();
        assert!(m.is_zero());
        assert_eq!(jordan_type_of(&m), Ok(part(&[1; 10])));

        let mut g0 = zero.clone();
        g0.set(Var::g(0), 1).unwrap();
        let m = build_matrix(&g0, &q73).unwrap();
        assert!(m.mul(&m).is_zero());
        assert_eq!(m.dim() - rank(&m), 7);
        assert_eq!(jordan_type_of(&m), Ok(part(&[2, 2, 2, 1, 1, 1, 1])));

        assert!(build_matrix(&zero, &q(8, 4)).is_err());
    }

    /// The display layout: rows/columns indexed by the basis `t^{u-1}, ...,
    /// 1` of each summand, upper triangular Toeplitz blocks.
    fn literal_layout(asn: &ParamAssignment) -> ModMatrix {
        let qq = asn.q();
        let (u, r, s) = (qq.u(), qq.r(), qq.second_part());
        let val = |v: Var| asn.get(v).unwrap();
        let mut m = ModMatrix::zeros(u + s, asn.prime());
        for row in 0..u {
            for i in 1..u - row {
                m.set(row, row + i, val(Var::a(i)));
            }
            for i in 0..s.saturating_sub(row) {
                m.set(row, u + row + i, val(Var::g(i)));
            }
        }
        for row in 0..s {
            for i in 0..u - r - row {
                m.set(u + row, r + row + i, val(Var::h(i)));
            }
            for i in 1..s - row {
                m.set(u + row, u + row + i, val(Var::b(i)));
            }
        }
        m
    }

    #[test]
    fn module_form_matches_literal_layout() {
        for qq in StableQ::all_up_to(9) {
            let (u, s) = (qq.u(), qq.second_part());
            let rev = |i: usize| if i < u { u - 1 - i } else { u + (s - 1 - (i - u)) };
            for idx in TableIndex::all(&qq) {
                let asn = sample_point(&qq, idx, 1, P).unwrap();
                let m = build_matrix(&asn, &qq).unwrap();
                let lit = literal_layout(&asn);
                for i in 0..u + s {
                    for j in 0..u + s {
                        assert_eq!(m.get(i, j), lit.get(rev(i), rev(j)), "{qq} {idx:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn build_matrix_commutes_with_shift() {
        for qq in StableQ::all_up_to(9) {
            let shift = ModuleMap::shift(qq, P).to_matrix();
            for seed in 0..100 {
                let asn = crate::equations::random_assignment(&qq, seed, P, 0.3).unwrap();
                let m = build_matrix(&asn, &qq).unwrap();
                assert!(m.commutes_with(&shift));
                assert!(m.is_nilpotent());
            }
        }
    }

    #[test]
    fn sampled_locus_has_table_coranks() {
        let qq = q(7, 4);
        let asn = sample_point(&qq, TableIndex::new(2, 1), 0, P).unwrap();
        let m = build_matrix(&asn, &qq).unwrap();
        assert_eq!(jordan_type_of(&m), Ok(part(&[5, 3, 2])));
        for qq in StableQ::all_up_to(9) {
            for idx in TableIndex::all(&qq) {
                let expected = corank_sequence(qq.u(), qq.r(), idx.k, idx.l).unwrap().values;
                let lp = idx.l.min(qq.r() - idx.k);
                for seed in 0..5 {
                    let asn = sample_point(&qq, idx, seed, P).unwrap();
                    let map = ModuleMap::from_assignment(&asn).unwrap();
                    assert_eq!(map.order_a(), idx.k);
                    assert_eq!(map.order_b(), lp, "{qq} {idx:?}");
                    let m = map.to_matrix();
                    assert_eq!(m.corank_profile().unwrap(), expected, "{qq} {idx:?}");
                }
            }
        }
    }

    #[test]
    fn commutant_samples_commute_and_are_nilpotent() {
        for x in [part(&[4]), part(&[2, 2]), part(&[5, 3, 2]), part(&[3, 3, 1, 1])] {
            let j = jordan_matrix(&x, P);
            for seed in 0..5 {
                let m = commutant_sample(&x, seed, P).unwrap();
                assert!(m.commutes_with(&j));
                assert!(m.pow(x.weight()).is_zero());
            }
        }
        // A single block gives a strictly lower triangular Toeplitz matrix.
        let m = commutant_sample(&part(&[4]), 9, P).unwrap();
        for i in 0..4 {
            for j in i..4 {
                assert_eq!(m.get(i, j), 0);
            }
        }
        for i in 1..4 {
            assert_eq!(m.get(i, i - 1), m.get(3, 2));
        }
        assert_eq!(commutant_sample(&Partition::empty(), 0, P), Err(Error::EmptyPartition));
    }

    #[test]
    fn d_oracle_examples() {
        assert_eq!(d_oracle(&part(&[7, 3]), 5, 0, P), Ok(part(&[7, 3])));
        assert_eq!(d_oracle(&part(&[2, 2]), 5, 0, P), Ok(part(&[4])));
        assert_eq!(d_oracle(&part(&[5, 3, 2]), 5, 0, P), Ok(part(&[7, 3])));
        assert_eq!(d_oracle(&part(&[3, 3, 3]), 5, 1, P), Ok(part(&[9])));
        assert_eq!(d_oracle(&part(&[3]), 0, 0, P), Err(Error::NoTrials));
    }

    #[test]
    fn dominance_maximum_needs_comparable_top() {
        let xs = [part(&[4, 1, 1]), part(&[3, 3])];
        assert_eq!(dominance_maximum(&xs), Err(Error::NoDominanceMaximum));
        let xs = [part(&[2, 2]), part(&[3, 1]), part(&[2, 1, 1])];
        assert_eq!(dominance_maximum(&xs), Ok(part(&[3, 1])));
    }
}
