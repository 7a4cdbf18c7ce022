//! Positive-definite lattices given by rational Gram matrices.

mod construct;
mod enumerate;
mod golay;
mod roots;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

pub use construct::{construct, hermite_basis, LatticeName};
pub use enumerate::{roots, short_vectors, ShortVectorReport};
pub use golay::{golay_code, GolayCode};
pub use roots::{identify_root_system, RootComponent, RootSystemId};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Gram matrix is not square")]
    NotSquare,
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("Gram matrix is not positive definite (pivot {index} is {pivot})")]
    NotPositiveDefinite { index: usize, pivot: Rational },
    #[error("Gram matrix is not integral")]
    NonIntegralGram,
    #[error("invalid rank {0} for this construction")]
    InvalidRank(u32),
    #[error("unknown lattice name {0:?}")]
    UnknownName(String),
    #[error("malformed Gram file: {0}")]
    Parse(String),
    #[error("norm bound must be nonnegative, got {0}")]
    NegativeBound(Rational),
    #[error("enumeration parameters exceed 128-bit exact arithmetic")]
    EnumerationOverflow,
    #[error("root system is not recognized as ADE: {0}")]
    UnrecognizedCartanMatrix(String),
    #[error("norm {0} does not give an exponent in q^(1/24) units")]
    ThetaExponent(Rational),
}

/// A positive-definite lattice, described by the Gram matrix of a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDesc {
    gram: Vec<Vec<Rational>>,
    label: Option<String>,
}

impl LatticeDesc {
    /// Validates symmetry and positive definiteness (all LDLᵀ pivots > 0).
    /// The empty matrix gives the rank-0 lattice.
    pub fn new(gram: Vec<Vec<Rational>>, label: Option<String>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        let (_, d) = ldl(&gram);
        if let Some((index, pivot)) = d.iter().enumerate().find(|(_, p)| !p.is_positive()) {
            return Err(LatticeError::NotPositiveDefinite {
                index,
                pivot: pivot.clone(),
            });
        }
        Ok(Self { gram, label })
    }

    pub fn from_integer_gram(gram: &[Vec<i64>], label: &str) -> Result<Self, LatticeError> {
        let g = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| Rational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        Self::new(g, Some(label.to_string()))
    }

    /// Gram matrix `scale · B Bᵀ` of the integer basis rows `B`.
    pub fn from_basis(
        basis: &[Vec<i64>],
        scale: &Rational,
        label: &str,
    ) -> Result<Self, LatticeError> {
        let n = basis.len();
        let mut g = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..=i {
                let dot: i128 = basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                let v = Rational::from_integer(BigInt::from(dot)) * scale;
                g[i][j] = v.clone();
                g[j][i] = v;
            }
        }
        Self::new(g, Some(label.to_string()))
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn determinant(&self) -> Rational {
        let (_, d) = ldl(&self.gram);
        d.iter().fold(Rational::one(), |acc, p| acc * p)
    }

    pub fn is_integral(&self) -> bool {
        self.gram.iter().flatten().all(|v| v.is_integer())
    }

    /// Integral with every diagonal entry even.
    pub fn is_even(&self) -> bool {
        self.is_integral()
            && self
                .gram
                .iter()
                .enumerate()
                .all(|(i, row)| row[i].to_integer().is_even())
    }

    pub fn is_unimodular(&self) -> Result<bool, LatticeError> {
        if !self.is_integral() {
            return Err(LatticeError::NonIntegralGram);
        }
        Ok(self.determinant().is_one())
    }

    /// `(x, y)` for coordinate vectors in this basis.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj != 0 {
                    acc += &self.gram[i][j] * Rational::from_integer((xi * yj).into());
                }
            }
        }
        acc
    }

    /// Least common multiple of the Gram denominators; all norms lie in
    /// `(1/den) Z`.
    pub fn gram_denominator(&self) -> BigInt {
        self.gram
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }

    /// Reads the text format: first line the rank `n`, then `n` rows of `n`
    /// whitespace-separated rationals.
    pub fn parse_gram(text: &str, label: Option<String>) -> Result<Self, LatticeError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| LatticeError::Parse("missing rank line".into()))?
            .parse()
            .map_err(|_| LatticeError::Parse("rank line is not an integer".into()))?;
        let mut gram = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| LatticeError::Parse(format!("missing row {}", i + 1)))?;
            let row = line
                .split_whitespace()
                .map(|tok| {
                    crate::parse_rational(tok)
                        .ok_or_else(|| LatticeError::Parse(format!("bad entry {tok:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != n {
                return Err(LatticeError::Parse(format!(
                    "row {} has {} entries",
                    i + 1,
                    row.len()
                )));
            }
            gram.push(row);
        }
        if lines.next().is_some() {
            return Err(LatticeError::Parse(
                "trailing data after the last row".into(),
            ));
        }
        Self::new(gram, label)
    }

    pub fn to_gram_text(&self) -> String {
        let mut out = format!("{}\n", self.rank());
        for row in &self.gram {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for LatticeDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (rank {})",
            self.label.as_deref().unwrap_or("lattice"),
            self.rank()
        )
    }
}

/// Block-diagonal Gram matrix. Labels combine as `a+b`.
pub fn direct_sum(a: &LatticeDesc, b: &LatticeDesc) -> LatticeDesc {
    let (m, n) = (a.rank(), b.rank());
    let mut g = vec![vec![Rational::zero(); m + n]; m + n];
    for i in 0..m {
        g[i][..m].clone_from_slice(&a.gram[i]);
    }
    for i in 0..n {
        g[m + i][m..].clone_from_slice(&b.gram[i]);
    }
    let label = match (a.label(), b.label()) {
        (_, _) if n == 0 => a.label.clone(),
        (_, _) if m == 0 => b.label.clone(),
        (Some(x), Some(y)) => Some(format!("{x}+{y}")),
        _ => None,
    };
    LatticeDesc { gram: g, label }
}

/// Exact `G = L D Lᵀ` with `L` unit lower triangular. Returns `(L, D)`; stops
/// filling once a nonpositive pivot shows up.
pub(crate) fn ldl(g: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let n = g.len();
    let mut l = vec![vec![Rational::zero(); n]; n];
    let mut d = vec![Rational::zero(); n];
    for i in 0..n {
        let mut di = g[i][i].clone();
        for k in 0..i {
            di -= &l[i][k] * &l[i][k] * &d[k];
        }
        d[i] = di;
        l[i][i] = Rational::one();
        if !d[i].is_positive() {
            break;
        }
        for j in i + 1..n {
            let mut v = g[j][i].clone();
            for k in 0..i {
                v -= &l[j][k] * &l[i][k] * &d[k];
            }
            l[j][i] = v / &d[i];
        }
    }
    (l, d)
}
