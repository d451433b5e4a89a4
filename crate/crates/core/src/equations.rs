//! The generator sets `E^Q_{k,l}` in the coordinates `a_i, b_i, g_i, h_i` of
//! the nilpotent commutator of `J_Q`, and samplers for points of `F_p`.
//!
//! A commuting matrix is encoded by four truncated polynomials
//! `a = a_1 t + ... + a_{u-1} t^{u-1}`, `b = b_1 t + ... + b_{u-r-1} t^{u-r-1}`,
//! `g = g_0 + ... + g_{u-r-1} t^{u-r-1}` and `h = h_0 + ... + h_{u-r-1} t^{u-r-1}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field;
use crate::partition::StableQ;
use crate::table::TableIndex;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarFamily {
    A,
    B,
    G,
    H,
}

impl VarFamily {
    fn symbol(self) -> char {
        match self {
            VarFamily::A => 'a',
            VarFamily::B => 'b',
            VarFamily::G => 'g',
            VarFamily::H => 'h',
        }
    }

    /// Inclusive index range for `q`.
    pub fn bounds(self, q: &StableQ) -> (usize, usize) {
        let (u, s) = (q.u(), q.second_part());
        match self {
            VarFamily::A => (1, u - 1),
            VarFamily::B => (1, s - 1),
            VarFamily::G | VarFamily::H => (0, s - 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub family: VarFamily,
    pub index: usize,
}

impl Var {
    pub const fn new(family: VarFamily, index: usize) -> Self {
        Self { family, index }
    }

    pub const fn a(i: usize) -> Self {
        Self::new(VarFamily::A, i)
    }

    pub const fn b(i: usize) -> Self {
        Self::new(VarFamily::B, i)
    }

    pub const fn g(i: usize) -> Self {
        Self::new(VarFamily::G, i)
    }

    pub const fn h(i: usize) -> Self {
        Self::new(VarFamily::H, i)
    }

    pub fn in_bounds(&self, q: &StableQ) -> bool {
        let (lo, hi) = self.family.bounds(q);
        // b has no coordinates at all when u - r = 1.
        lo <= self.index && self.index <= hi && !(self.family == VarFamily::B && hi == 0)
    }

    /// Every coordinate of the commutator of `J_Q`, grouped by family.
    pub fn all(q: &StableQ) -> impl Iterator<Item = Var> + '_ {
        [VarFamily::A, VarFamily::B, VarFamily::G, VarFamily::H]
            .into_iter()
            .flat_map(move |family| {
                let (lo, hi) = family.bounds(q);
                (lo..=hi)
                    .map(move |index| Var { family, index })
                    .filter(move |v| v.in_bounds(q))
            })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.symbol(), self.index)
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('a') => VarFamily::A,
            Some('b') => VarFamily::B,
            Some('g') => VarFamily::G,
            Some('h') => VarFamily::H,
            _ => return Err(Error::Parse("variable must start with a, b, g or h")),
        };
        let index = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse("variable index must be a non-negative integer"))?;
        Ok(Var { family, index })
    }
}

/// `coeff * vars[0] * vars[1] * ...` with `vars` sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: i64,
    pub vars: Vec<Var>,
}

/// A polynomial with integer coefficients, kept with sorted distinct
/// monomials and no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyGenerator {
    terms: Vec<Term>,
}

impl PolyGenerator {
    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I) -> Self {
        let mut merged: BTreeMap<Vec<Var>, i64> = BTreeMap::new();
        for mut t in terms {
            t.vars.sort_unstable();
            *merged.entry(t.vars).or_insert(0) += t.coeff;
        }
        Self {
            terms: merged
                .into_iter()
                .filter(|&(_, c)| c != 0)
                .map(|(vars, coeff)| Term { coeff, vars })
                .collect(),
        }
    }

    pub fn variable(v: Var) -> Self {
        Self::from_terms([Term {
            coeff: 1,
            vars: alloc::vec![v],
        }])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.vars.len()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variables(&self) -> impl Iterator<Item = Var> + '_ {
        self.terms.iter().flat_map(|t| t.vars.iter().copied())
    }
}

/// `a2*b2 - g0*h0`.
impl fmt::Display for PolyGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let mag = t.coeff.unsigned_abs();
            match (i, t.coeff < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != 1 || t.vars.is_empty() {
                write!(f, "{mag}")?;
                if !t.vars.is_empty() {
                    f.write_str("*")?;
                }
            }
            for (j, v) in t.vars.iter().enumerate() {
                if j > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// `E^Q_{k,l}`: linear generators `a_1..a_{k-1}`, `b_1..b_{l'-1}` and, when
/// `k + l > r`, the quadratics `G_m` for `m = 0..k+l-r-1`, where `G_m` is the
/// coefficient of `t^{r+m}` in `a b - g h t^r`.
pub fn equation_set(q: &StableQ, idx: TableIndex) -> Result<Vec<PolyGenerator>> {
    let cell = idx.check(q)?;
    let (r, k, l) = (cell.r, cell.k, cell.l);
    let mut gens: Vec<PolyGenerator> = (1..k).map(|i| PolyGenerator::variable(Var::a(i))).collect();
    let b_linear = if k + l <= r { l } else { r - k };
    gens.extend((1..b_linear).map(|i| PolyGenerator::variable(Var::b(i))));
    if k + l > r {
        for m in 0..k + l - r {
            let ab = (0..=m).map(|j| Term {
                coeff: 1,
                vars: alloc::vec![Var::a(k + j), Var::b(r - k + m - j)],
            });
            let gh = (0..=m).map(|j| Term {
                coeff: -1,
                vars: alloc::vec![Var::g(j), Var::h(m - j)],
            });
            gens.push(PolyGenerator::from_terms(ab.chain(gh)));
        }
    }
    Ok(gens)
}

/// Values in `F_p` for the coordinates of the commutator of `J_Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamAssignment {
    q: StableQ,
    p: u64,
    values: BTreeMap<Var, u64>,
}

impl ParamAssignment {
    /// An assignment with no values set.
    pub fn empty(q: StableQ, p: u64) -> Result<Self> {
        if !field::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            q,
            p,
            values: BTreeMap::new(),
        })
    }

    /// Every coordinate set to zero.
    pub fn zeros(q: StableQ, p: u64) -> Result<Self> {
        let mut asn = Self::empty(q, p)?;
        asn.values = Var::all(&q).map(|v| (v, 0)).collect();
        Ok(asn)
    }

    pub fn q(&self) -> StableQ {
        self.q
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn set(&mut self, v: Var, value: u64) -> Result<()> {
        if !v.in_bounds(&self.q) {
            return Err(Error::VariableOutOfRange(v));
        }
        self.values.insert(v, value % self.p);
        Ok(())
    }

    pub fn get(&self, v: Var) -> Option<u64> {
        self.values.get(&v).copied()
    }

    pub fn is_complete(&self) -> bool {
        Var::all(&self.q).all(|v| self.values.contains_key(&v))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u64)> + '_ {
        self.values.iter().map(|(&v, &x)| (v, x))
    }

    /// Coefficients of `a`, `b`, `g` or `h` as a dense vector (`a` has length
    /// `u`, the others `u - r`); index 0 of `a` and `b` is always zero.
    pub fn coefficients(&self, family: VarFamily) -> Result<Vec<u64>> {
        let len = match family {
            VarFamily::A => self.q.u(),
            _ => self.q.second_part(),
        };
        let start = match family {
            VarFamily::A | VarFamily::B => 1,
            _ => 0,
        };
        let mut out = alloc::vec![0; len];
        for (i, slot) in out.iter_mut().enumerate().skip(start) {
            let v = Var::new(family, i);
            *slot = self.get(v).ok_or(Error::UnassignedVariable(v))?;
        }
        Ok(out)
    }
}

pub fn evaluate(gen: &PolyGenerator, asn: &ParamAssignment) -> Result<u64> {
    let p = asn.p;
    gen.terms.iter().try_fold(0, |acc, t| {
        let mono = t.vars.iter().try_fold(1, |m, &v| {
            asn.get(v)
                .map(|x| field::mul(m, x, p))
                .ok_or(Error::UnassignedVariable(v))
        })?;
        Ok(field::add(acc, field::mul(field::from_i64(t.coeff, p), mono, p), p))
    })
}

fn check_sampling_prime(p: u64) -> Result<()> {
    if !field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < field::MIN_SAMPLING_PRIME {
        return Err(Error::PrimeTooSmall(p));
    }
    Ok(())
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A ChaCha8 stream keyed by `seed` and selected by `tag`.
pub(crate) fn stream_rng(seed: u64, tag: &[u64]) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stream = tag.iter().fold(0x9e37_79b9_7f4a_7c15, |acc, &x| mix(acc ^ x));
    rng.set_stream(stream);
    rng
}

fn uniform(rng: &mut ChaCha8Rng, p: u64) -> u64 {
    rng.random_range(0..p)
}

fn nonzero(rng: &mut ChaCha8Rng, p: u64) -> u64 {
    rng.random_range(1..p)
}

/// A generic point of `V(E^Q_{k,l})`, deterministic in `(seed, q, idx)`.
///
/// Free coordinates are uniform; `a_k`, `g_0`, `h_0` (and `b_l` when
/// `k + l <= r`) are nonzero. When `k + l > r` the quadratic generators are
/// solved in turn for `b_{r-k}, b_{r-k+1}, ...`.
pub fn sample_point(q: &StableQ, idx: TableIndex, seed: u64, p: u64) -> Result<ParamAssignment> {
    let cell = idx.check(q)?;
    check_sampling_prime(p)?;
    let (u, r, k, l) = (cell.u, cell.r, cell.k, cell.l);
    let mut rng = stream_rng(seed, &[u as u64, r as u64, k as u64, l as u64]);
    let mut asn = ParamAssignment::empty(*q, p)?;
    for v in Var::all(q) {
        let forced = v == Var::a(k)
            || v == Var::g(0)
            || v == Var::h(0)
            || (k + l <= r && v == Var::b(l));
        let x = if forced {
            nonzero(&mut rng, p)
        } else {
            uniform(&mut rng, p)
        };
        asn.values.insert(v, x);
    }
    for i in 1..k {
        asn.values.insert(Var::a(i), 0);
    }
    let b_linear = if k + l <= r { l } else { r - k };
    for i in 1..b_linear {
        asn.values.insert(Var::b(i), 0);
    }
    if k + l > r {
        let val = |asn: &ParamAssignment, v: Var| asn.values[&v];
        let ak_inv = field::inv(val(&asn, Var::a(k)), p);
        for m in 0..k + l - r {
            let mut rhs = (0..=m).fold(0, |acc, j| {
                field::add(acc, field::mul(val(&asn, Var::g(j)), val(&asn, Var::h(m - j)), p), p)
            });
            for j in 1..=m {
                let t = field::mul(val(&asn, Var::a(k + j)), val(&asn, Var::b(r - k + m - j)), p);
                rhs = field::sub(rhs, t, p);
            }
            asn.values.insert(Var::b(r - k + m), field::mul(rhs, ak_inv, p));
        }
    }
    debug_assert!(equation_set(q, idx)?
        .iter()
        .all(|g| evaluate(g, &asn) == Ok(0)));
    Ok(asn)
}

/// An assignment with no equations imposed: each coordinate is zero with
/// probability `zero_probability`, otherwise uniform in `F_p`.
pub fn random_assignment(
    q: &StableQ,
    seed: u64,
    p: u64,
    zero_probability: f64,
) -> Result<ParamAssignment> {
    check_sampling_prime(p)?;
    let mut rng = stream_rng(seed, &[q.u() as u64, q.r() as u64, u64::MAX]);
    let mut asn = ParamAssignment::empty(*q, p)?;
    for v in Var::all(q) {
        let zero = rng.random_bool(zero_probability.clamp(0.0, 1.0));
        let x = uniform(&mut rng, p);
        asn.values.insert(v, if zero { 0 } else { x });
    }
    Ok(asn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;
    use alloc::string::{String, ToString};
    use alloc::vec;

    fn q(u: usize, r: usize) -> StableQ {
        StableQ::new(u, r).unwrap()
    }

    fn render(gens: &[PolyGenerator]) -> Vec<String> {
        gens.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn equation_examples() {
        let q74 = q(7, 4);
        assert!(equation_set(&q74, TableIndex::new(1, 1)).unwrap().is_empty());
        assert_eq!(
            render(&equation_set(&q74, TableIndex::new(2, 3)).unwrap()),
            vec!["a1", "b1", "a2*b2 - g0*h0"]
        );
        assert_eq!(
            render(&equation_set(&q74, TableIndex::new(3, 3)).unwrap()),
            vec!["a1", "a2", "a3*b1 - g0*h0", "a3*b2 + a4*b1 - g0*h1 - g1*h0"]
        );
        assert!(equation_set(&q74, TableIndex::new(4, 1)).is_err());
    }

    #[test]
    fn generator_count_is_k_plus_l_minus_two() {
        for q in StableQ::all_up_to(14) {
            for idx in TableIndex::all(&q) {
                let gens = equation_set(&q, idx).unwrap();
                assert_eq!(gens.len(), idx.k + idx.l - 2);
                for g in &gens {
                    assert!(g.degree() <= 2 && !g.is_zero());
                    assert!(g.variables().all(|v| v.in_bounds(&q)), "{q} {idx:?} {g}");
                }
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let q74 = q(7, 4);
        let mut asn = ParamAssignment::zeros(q74, 101).unwrap();
        assert_eq!(evaluate(&PolyGenerator::variable(Var::a(1)), &asn), Ok(0));
        let g = equation_set(&q74, TableIndex::new(2, 3)).unwrap().pop().unwrap();
        for (v, x) in [(Var::a(2), 3), (Var::b(2), 5), (Var::g(0), 1), (Var::h(0), 15)] {
            asn.set(v, x).unwrap();
        }
        assert_eq!(evaluate(&g, &asn), Ok(0));
        for (v, x) in [(Var::a(2), 1), (Var::b(2), 1), (Var::g(0), 1), (Var::h(0), 2)] {
            asn.set(v, x).unwrap();
        }
        assert_eq!(evaluate(&g, &asn), Ok(100));

        let empty = ParamAssignment::empty(q74, 101).unwrap();
        assert_eq!(evaluate(&g, &empty), Err(Error::UnassignedVariable(Var::a(2))));
        assert_eq!(
            asn.clone().set(Var::b(3), 1),
            Err(Error::VariableOutOfRange(Var::b(3)))
        );
        assert_eq!(ParamAssignment::empty(q74, 100), Err(Error::NotPrime(100)));
    }

    #[test]
    fn variable_bounds() {
        let q74 = q(7, 4);
        let names: Vec<String> = Var::all(&q74).map(|v| v.to_string()).collect();
        assert_eq!(
            names,
            vec![
                "a1", "a2", "a3", "a4", "a5", "a6", "b1", "b2", "g0", "g1", "g2", "h0", "h1",
                "h2"
            ]
        );
        // u - r = 1 leaves no b coordinates.
        assert_eq!(Var::all(&q(5, 4)).filter(|v| v.family == VarFamily::B).count(), 0);
        assert_eq!("g12".parse::<Var>(), Ok(Var::g(12)));
        assert!("x1".parse::<Var>().is_err());
        assert!("a".parse::<Var>().is_err());
    }

    #[test]
    fn display_coefficients() {
        let g = PolyGenerator::from_terms([
            Term { coeff: -2, vars: vec![Var::h(0), Var::g(1)] },
            Term { coeff: 3, vars: vec![] },
            Term { coeff: 1, vars: vec![Var::a(1)] },
            Term { coeff: -1, vars: vec![Var::a(1)] },
        ]);
        assert_eq!(g.to_string(), "3 - 2*g1*h0");
        assert_eq!(PolyGenerator::default().to_string(), "0");
    }

    #[test]
    fn sample_point_examples() {
        let q74 = q(7, 4);
        let asn = sample_point(&q74, TableIndex::new(1, 1), 0, DEFAULT_PRIME).unwrap();
        assert_ne!(asn.get(Var::a(1)), Some(0));
        assert!(asn.is_complete());

        let asn = sample_point(&q74, TableIndex::new(2, 3), 5, DEFAULT_PRIME).unwrap();
        let p = DEFAULT_PRIME;
        assert_eq!(asn.get(Var::a(1)), Some(0));
        assert_eq!(asn.get(Var::b(1)), Some(0));
        let (a2, g0, h0) = (
            asn.get(Var::a(2)).unwrap(),
            asn.get(Var::g(0)).unwrap(),
            asn.get(Var::h(0)).unwrap(),
        );
        let expected = field::mul(field::mul(g0, h0, p), field::inv(a2, p), p);
        assert_eq!(asn.get(Var::b(2)), Some(expected));

        assert_eq!(
            sample_point(&q74, TableIndex::new(1, 1), 0, 101),
            Err(Error::PrimeTooSmall(101))
        );
        assert_eq!(
            sample_point(&q74, TableIndex::new(1, 1), 0, 1 << 32),
            Err(Error::NotPrime(1 << 32))
        );
    }

    #[test]
    fn sample_point_is_deterministic() {
        let q = q(9, 4);
        let idx = TableIndex::new(3, 4);
        let a = sample_point(&q, idx, 11, DEFAULT_PRIME).unwrap();
        let b = sample_point(&q, idx, 11, DEFAULT_PRIME).unwrap();
        let c = sample_point(&q, idx, 12, DEFAULT_PRIME).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sampled_points_satisfy_equations() {
        for q in StableQ::all_up_to(9) {
            for idx in TableIndex::all(&q) {
                let gens = equation_set(&q, idx).unwrap();
                for seed in 0..10 {
                    let asn = sample_point(&q, idx, seed, DEFAULT_PRIME).unwrap();
                    assert!(asn.is_complete());
                    for g in &gens {
                        assert_eq!(evaluate(g, &asn), Ok(0), "{q} {idx:?} {g}");
                    }
                }
            }
        }
    }

    #[test]
    fn random_assignment_density() {
        let q = q(8, 3);
        let dense = random_assignment(&q, 1, DEFAULT_PRIME, 0.0).unwrap();
        assert!(dense.iter().all(|(_, x)| x != 0));
        let zero = random_assignment(&q, 1, DEFAULT_PRIME, 1.0).unwrap();
        assert!(zero.iter().all(|(_, x)| x == 0));
        assert!(zero.is_complete());
    }
}
