//! Fincke–Pohst enumeration of short lattice vectors.
//!
//! The quadratic form is written as `Σ D_i (x_i + Σ_{j>i} L_ji x_j)²` from the
//! exact LDLᵀ factorization. All rationals are cleared once up front, so the
//! search itself runs on 128-bit integers: `y_i = lden·x_i + C_i` and the
//! scaled norm is `Σ K_i y_i²` with integer `K_i`. Interval endpoints come
//! from integer square roots, so nothing is rounded.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{ldl, LatticeDesc, LatticeError};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortVectorReport {
    pub bound: Rational,
    /// Number of vectors of each norm `(x, x) <= bound`, including the zero
    /// vector at norm 0.
    pub counts: BTreeMap<Rational, u64>,
    /// Coordinate vectors per norm, sorted lexicographically, when requested.
    pub vectors: Option<BTreeMap<Rational, Vec<Vec<i64>>>>,
}

impl ShortVectorReport {
    pub fn count(&self, norm: &Rational) -> u64 {
        self.counts.get(norm).copied().unwrap_or(0)
    }

    pub fn count_int(&self, norm: i64) -> u64 {
        self.count(&Rational::from_integer(norm.into()))
    }

    /// Vectors of nonzero norm.
    pub fn nonzero_total(&self) -> u64 {
        self.counts
            .iter()
            .filter(|(n, _)| !n.is_zero())
            .map(|(_, c)| c)
            .sum()
    }
}

/// Integer type carrying scaled norms. `i64` covers every bound in practice;
/// `i128` is the fallback for Gram matrices with large denominators.
trait Word:
    Copy
    + Ord
    + Send
    + Sync
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_i128(self) -> i128;
    /// Largest `s >= 0` with `k s² <= room`, for `room >= 0` and `k > 0`.
    fn max_offset(room: Self, k: Self) -> i64;
}

impl Word for i64 {
    #[inline]
    fn from_i64(v: i64) -> Self {
        v
    }

    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }

    #[inline]
    fn to_i128(self) -> i128 {
        self as i128
    }

    /// The float estimate is only a starting point; the result is exact.
    #[inline]
    fn max_offset(room: i64, k: i64) -> i64 {
        let mut s = ((room as f64) / (k as f64)).sqrt() as i64;
        while s > 0 && k * s * s > room {
            s -= 1;
        }
        while k * (s + 1) * (s + 1) <= room {
            s += 1;
        }
        s
    }
}

impl Word for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }

    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }

    fn to_i128(self) -> i128 {
        self
    }

    fn max_offset(room: i128, k: i128) -> i64 {
        (room / k).isqrt() as i64
    }
}

/// Exact integer data of the quadratic form, before picking a word size.
struct Scaled {
    lden: i64,
    /// `lnum[i][j] = lden · L_ji` for `j > i`
    lnum: Vec<Vec<i64>>,
    k: Vec<BigInt>,
    limit: BigInt,
    /// scaled norm / step = gden · norm
    step: BigInt,
}

struct Plan<W> {
    n: usize,
    lden: i64,
    lnum: Vec<Vec<i64>>,
    k: Vec<W>,
    limit: W,
    step: W,
    /// `log2(step)` when `step` is a power of two
    step_shift: Option<u32>,
}

const MAX_DENSE_BUCKETS: i128 = 1 << 22;
const FRONTIER_TARGET: usize = 512;
/// Bound on centre sums and on `|y|`, so `k y²` fits whenever `limit` does.
const SAFE: i64 = 1 << 60;

fn to_i64(v: &BigInt) -> Result<i64, LatticeError> {
    v.to_i64().ok_or(LatticeError::EnumerationOverflow)
}

fn inverse_diagonal(g: &[Vec<Rational>]) -> Vec<Rational> {
    let n = g.len();
    let mut a: Vec<Vec<Rational>> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("nonsingular Gram");
        a.swap(col, p);
        let inv = a[col][col].recip();
        a[col].iter_mut().for_each(|v| *v *= &inv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    (0..n).map(|i| a[i][n + i].clone()).collect()
}

impl Scaled {
    fn new(l: &LatticeDesc, bound: &Rational) -> Result<Self, LatticeError> {
        let g = l.gram();
        let n = g.len();
        let (lmat, d) = ldl(g);
        let lden = lmat
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let lden_sq = Rational::from_integer(&lden * &lden);
        // K_i = D_i · W / lden² must be integral, and W must be a multiple of gden
        let gden = l.gram_denominator();
        let w = d
            .iter()
            .map(|di| (di / &lden_sq).denom().clone())
            .fold(gden.clone(), |acc, den| acc.lcm(&den));
        let wr = Rational::from_integer(w.clone());
        let k = d
            .iter()
            .map(|di| (di * &wr / &lden_sq).to_integer())
            .collect();
        let lnum = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if j > i {
                            to_i64(
                                &(&lmat[j][i] * Rational::from_integer(lden.clone())).to_integer(),
                            )
                        } else {
                            Ok(0)
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let limit = (bound * &wr).floor().to_integer();
        let step = &w / &gden;
        let lden = to_i64(&lden)?;

        // every |x_j| is bounded by sqrt(bound · (G⁻¹)_jj); make sure centre
        // sums stay well inside i64
        let xmax: Vec<i64> = inverse_diagonal(g)
            .iter()
            .map(|v| to_i64(&(v * bound).floor().to_integer()).map(|m| m.isqrt() + 1))
            .collect::<Result<_, _>>()?;
        for i in 0..n {
            let mut acc = lden
                .checked_mul(xmax[i])
                .ok_or(LatticeError::EnumerationOverflow)?;
            for j in i + 1..n {
                acc = lnum[i][j]
                    .abs()
                    .checked_mul(xmax[j])
                    .and_then(|t| acc.checked_add(t))
                    .ok_or(LatticeError::EnumerationOverflow)?;
            }
            if acc > SAFE {
                return Err(LatticeError::EnumerationOverflow);
            }
        }
        Ok(Scaled {
            lden,
            lnum,
            k,
            limit,
            step,
        })
    }

    /// Narrows to `W` when the scaled bound fits with room for one product.
    fn plan<W: Word>(&self, headroom: &BigInt) -> Option<Plan<W>> {
        if &self.limit > headroom {
            return None;
        }
        let step = W::from_big(&self.step)?;
        let step_shift = self
            .step
            .to_u128()
            .filter(|s| s.is_power_of_two())
            .map(|s| s.trailing_zeros());
        Some(Plan {
            n: self.lnum.len(),
            lden: self.lden,
            lnum: self.lnum.clone(),
            k: self.k.iter().map(W::from_big).collect::<Option<_>>()?,
            limit: W::from_big(&self.limit)?,
            step,
            step_shift,
        })
    }
}

impl<W: Word> Plan<W> {
    /// Bucket index `gden · norm` of a scaled norm.
    #[inline]
    fn index(&self, scaled: W) -> i128 {
        match self.step_shift {
            Some(s) => scaled.to_i128() >> s,
            None => scaled.to_i128() / self.step.to_i128(),
        }
    }

    #[inline]
    fn centre(&self, level: usize, x: &[i64]) -> i64 {
        let row = &self.lnum[level];
        (level + 1..self.n).map(|j| row[j] * x[j]).sum()
    }

    /// Integer range of `x_level` given the already fixed higher coordinates.
    #[inline]
    fn range(&self, level: usize, centre: i64, partial: W) -> (i64, i64) {
        let s = W::max_offset(self.limit - partial, self.k[level]);
        let lo = Integer::div_ceil(&(-s - centre), &self.lden);
        let hi = Integer::div_floor(&(s - centre), &self.lden);
        (lo, hi)
    }

    fn descend(&self, level: usize, x: &mut [i64], partial: W, sink: &mut Sink) {
        let c = self.centre(level, x);
        let (lo, hi) = self.range(level, c, partial);
        let k = self.k[level];
        for xi in lo..=hi {
            let y = W::from_i64(self.lden * xi + c);
            let t = partial + k * y * y;
            x[level] = xi;
            if level == 0 {
                sink.record(self.index(t), x);
            } else {
                self.descend(level - 1, x, t, sink);
            }
        }
        x[level] = 0;
    }

    /// Fixes the top coordinates breadth-first until there are enough
    /// independent subtrees to spread over worker threads.
    fn frontier(&self) -> (usize, Vec<(Vec<i64>, W)>) {
        let mut nodes = vec![(vec![0i64; self.n], W::from_i64(0))];
        let mut level = self.n;
        while level > 1 && nodes.len() < FRONTIER_TARGET {
            level -= 1;
            let mut next = Vec::new();
            for (x, partial) in nodes {
                let c = self.centre(level, &x);
                let (lo, hi) = self.range(level, c, partial);
                for xi in lo..=hi {
                    let y = W::from_i64(self.lden * xi + c);
                    let mut x2 = x.clone();
                    x2[level] = xi;
                    next.push((x2, partial + self.k[level] * y * y));
                }
            }
            nodes = next;
        }
        (level, nodes)
    }

    fn run(&self, keep_vectors: bool) -> Sink {
        let max_index = self.index(self.limit);
        let (level, frontier) = self.frontier();
        frontier
            .into_par_iter()
            .fold(
                || Sink::new(max_index, keep_vectors),
                |mut sink, (mut x, partial)| {
                    if level == 0 {
                        sink.record(self.index(partial), &x);
                    } else {
                        self.descend(level - 1, &mut x, partial, &mut sink);
                    }
                    sink
                },
            )
            .reduce(|| Sink::new(max_index, keep_vectors), Sink::merge)
    }
}

enum Buckets {
    Dense(Vec<u64>),
    Sparse(HashMap<i128, u64>),
}

struct Sink {
    buckets: Buckets,
    vectors: Option<Vec<(i128, Vec<i64>)>>,
}

impl Sink {
    fn new(max_index: i128, keep: bool) -> Self {
        let buckets = if max_index < MAX_DENSE_BUCKETS {
            Buckets::Dense(vec![0; max_index as usize + 1])
        } else {
            Buckets::Sparse(HashMap::new())
        };
        Sink {
            buckets,
            vectors: keep.then(Vec::new),
        }
    }

    #[inline]
    fn record(&mut self, index: i128, x: &[i64]) {
        match &mut self.buckets {
            Buckets::Dense(v) => v[index as usize] += 1,
            Buckets::Sparse(m) => *m.entry(index).or_insert(0) += 1,
        }
        if let Some(vs) = &mut self.vectors {
            vs.push((index, x.to_vec()));
        }
    }

    fn merge(mut self, other: Sink) -> Sink {
        match (&mut self.buckets, other.buckets) {
            (Buckets::Dense(a), Buckets::Dense(b)) => {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            }
            (Buckets::Sparse(a), Buckets::Sparse(b)) => {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
            }
            _ => unreachable!("sinks share a layout"),
        }
        if let (Some(a), Some(b)) = (&mut self.vectors, other.vectors) {
            a.extend(b);
        }
        self
    }
}

/// All lattice vectors with `(x, x) <= bound`, counted by norm.
///
/// Subtrees below the first few fixed coordinates run on the rayon pool;
/// counts merge by addition and kept vectors are sorted, so the report does
/// not depend on the thread count.
pub fn short_vectors(
    l: &LatticeDesc,
    bound: &Rational,
    keep_vectors: bool,
) -> Result<ShortVectorReport, LatticeError> {
    if bound.is_negative() {
        return Err(LatticeError::NegativeBound(bound.clone()));
    }
    let gden = l.gram_denominator();
    let gden_r = Rational::from_integer(gden.clone());
    if l.rank() == 0 {
        let mut counts = BTreeMap::new();
        counts.insert(Rational::zero(), 1);
        let vectors = keep_vectors.then(|| BTreeMap::from([(Rational::zero(), vec![vec![]])]));
        return Ok(ShortVectorReport {
            bound: bound.clone(),
            counts,
            vectors,
        });
    }
    let scaled = Scaled::new(l, bound)?;
    // k y² <= limit for every visited node, so the limit is the only size that matters
    let sink = if let Some(plan) = scaled.plan::<i64>(&BigInt::from(i64::MAX / 4)) {
        plan.run(keep_vectors)
    } else if let Some(plan) = scaled.plan::<i128>(&(BigInt::from(SAFE) * BigInt::from(SAFE))) {
        plan.run(keep_vectors)
    } else {
        return Err(LatticeError::EnumerationOverflow);
    };

    let norm_of = |idx: i128| Rational::from_integer(BigInt::from(idx)) / &gden_r;
    let mut counts = BTreeMap::new();
    match sink.buckets {
        Buckets::Dense(v) => {
            for (idx, c) in v.into_iter().enumerate() {
                if c > 0 {
                    counts.insert(norm_of(idx as i128), c);
                }
            }
        }
        Buckets::Sparse(m) => {
            for (idx, c) in m {
                counts.insert(norm_of(idx), c);
            }
        }
    }
    let vectors = sink.vectors.map(|vs| {
        let mut by_norm: BTreeMap<Rational, Vec<Vec<i64>>> = BTreeMap::new();
        for (idx, x) in vs {
            by_norm.entry(norm_of(idx)).or_default().push(x);
        }
        by_norm.values_mut().for_each(|v| v.sort());
        by_norm
    });
    Ok(ShortVectorReport {
        bound: bound.clone(),
        counts,
        vectors,
    })
}

/// Norm-2 vectors, kept.
pub fn roots(l: &LatticeDesc) -> Result<ShortVectorReport, LatticeError> {
    let two = Rational::from_integer(2.into());
    let mut report = short_vectors(l, &two, true)?;
    report.counts.retain(|n, _| *n == two);
    if let Some(v) = report.vectors.as_mut() {
        v.retain(|n, _| *n == two);
    }
    Ok(report)
}
