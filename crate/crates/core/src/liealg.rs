//! Simple Lie algebra data and affine-level quantities.
//!
//! Dimensions and (dual) Coxeter numbers come from closed-form tables.
//! [`root_system_oracle`] rebuilds the same numbers from the Cartan matrix
//! and exists to cross-check those tables.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LieError {
    #[error("inadmissible rank {rank} for family {family}")]
    InadmissibleRank { family: Family, rank: u32 },
    #[error("cannot parse simple type {0:?}")]
    BadTypeName(String),
    #[error("level must be positive, got {0}")]
    NonpositiveLevel(Rational),
    #[error("root system oracle is limited to rank <= {max}, got {rank}")]
    OracleScaleExceeded { rank: u32, max: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn is_simply_laced(self) -> bool {
        matches!(self, Family::A | Family::D | Family::E)
    }

    fn admits(self, rank: u32) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A finite-type simple Lie algebra, labelled canonically (no aliases such as
/// `B1`, `C2` or `D3`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    family: Family,
    rank: u32,
}

impl SimpleType {
    pub fn new(family: Family, rank: u32) -> Result<Self, LieError> {
        if family.admits(rank) {
            Ok(Self { family, rank })
        } else {
            Err(LieError::InadmissibleRank { family, rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Every admissible type of rank at most `max_rank`, in canonical order.
    pub fn all_up_to_rank(max_rank: u32) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in 1..=max_rank {
                if let Ok(t) = SimpleType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LieError::BadTypeName(s.to_string());
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(bad()),
        };
        let rank: u32 = chars.as_str().parse().map_err(|_| bad())?;
        SimpleType::new(family, rank)
    }
}

/// Dimension, Coxeter number and dual Coxeter number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dims {
    pub dim: u64,
    pub coxeter: u64,
    pub dual_coxeter: u64,
}

pub fn dims(t: SimpleType) -> Dims {
    let n = t.rank as u64;
    let (dim, coxeter, dual_coxeter) = match t.family {
        Family::A => (n * (n + 2), n + 1, n + 1),
        Family::B => (n * (2 * n + 1), 2 * n, 2 * n - 1),
        Family::C => (n * (2 * n + 1), 2 * n, n + 1),
        Family::D => (n * (2 * n - 1), 2 * n - 2, 2 * n - 2),
        Family::E => match n {
            6 => (78, 12, 12),
            7 => (133, 18, 18),
            _ => (248, 30, 30),
        },
        Family::F => (52, 12, 9),
        Family::G => (14, 6, 4),
    };
    Dims {
        dim,
        coxeter,
        dual_coxeter,
    }
}

/// `κ(h_α, h_α) = 4 h∨` for a long root `α`.
pub fn killing_on_long_coroot(t: SimpleType) -> u64 {
    4 * dims(t).dual_coxeter
}

/// A simple component together with its affine level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffinePair {
    ty: SimpleType,
    level: Rational,
}

impl AffinePair {
    pub fn new(ty: SimpleType, level: Rational) -> Result<Self, LieError> {
        if !level.is_positive() {
            return Err(LieError::NonpositiveLevel(level));
        }
        Ok(Self { ty, level })
    }

    pub fn ty(&self) -> SimpleType {
        self.ty
    }

    pub fn level(&self) -> &Rational {
        &self.level
    }

    /// `h∨ / k`.
    pub fn ratio(&self) -> Rational {
        Rational::from_integer(dims(self.ty).dual_coxeter.into()) / &self.level
    }
}

impl fmt::Display for AffinePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.ty, self.level)
    }
}

/// Central charge `k dim g / (k + h∨)` of the Sugawara Virasoro element.
pub fn sugawara_c(p: &AffinePair) -> Rational {
    let d = dims(p.ty);
    let dim = Rational::from_integer(d.dim.into());
    let h = Rational::from_integer(d.dual_coxeter.into());
    &p.level * dim / (&p.level + h)
}

/// Symmetrized Cartan matrix `(α_i, α_j)` with long roots of squared length 2.
pub fn simple_root_form(t: SimpleType) -> Vec<Vec<Rational>> {
    let n = t.rank as usize;
    let int = |v: i64| Rational::from_integer(v.into());
    let half = Rational::new(1.into(), 2.into());
    let mut b = vec![vec![Rational::zero(); n]; n];
    let link = |b: &mut Vec<Vec<Rational>>, i: usize, j: usize, v: Rational| {
        b[i][j] = v.clone();
        b[j][i] = v;
    };
    for (i, row) in b.iter_mut().enumerate() {
        row[i] = int(2);
    }
    match t.family {
        Family::A => (1..n).for_each(|i| link(&mut b, i - 1, i, int(-1))),
        Family::B => {
            (1..n).for_each(|i| link(&mut b, i - 1, i, int(-1)));
            b[n - 1][n - 1] = int(1);
        }
        Family::C => {
            for i in 0..n - 1 {
                b[i][i] = int(1);
            }
            (1..n - 1).for_each(|i| link(&mut b, i - 1, i, -half.clone()));
            link(&mut b, n - 2, n - 1, int(-1));
        }
        Family::D => {
            (1..n - 1).for_each(|i| link(&mut b, i - 1, i, int(-1)));
            link(&mut b, n - 3, n - 1, int(-1));
        }
        Family::E => {
            // chain 0..n-2, extra node n-1 hangs off node 2
            (1..n - 1).for_each(|i| link(&mut b, i - 1, i, int(-1)));
            link(&mut b, 2, n - 1, int(-1));
        }
        Family::F => {
            link(&mut b, 0, 1, int(-1));
            link(&mut b, 1, 2, int(-1));
            link(&mut b, 2, 3, -half.clone());
            b[2][2] = int(1);
            b[3][3] = int(1);
        }
        Family::G => {
            b[0][0] = Rational::new(2.into(), 3.into());
            link(&mut b, 0, 1, int(-1));
        }
    }
    b
}

/// Cartan matrix `A_ij = 2 (α_i, α_j) / (α_i, α_i)`.
pub fn cartan_matrix(t: SimpleType) -> Vec<Vec<i64>> {
    let b = simple_root_form(t);
    let two = Rational::from_integer(2.into());
    b.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|v| {
                    let a = &two * v / &b[i][i];
                    debug_assert!(a.is_integer());
                    a.to_integer().try_into().unwrap()
                })
                .collect()
        })
        .collect()
}

pub const ORACLE_MAX_RANK: u32 = 12;

/// Rebuilds `(dim, h∨)` from the Cartan matrix: generates the positive roots
/// by root strings, finds the highest root, and sums its comarks.
pub fn root_system_oracle(t: SimpleType) -> Result<(u64, u64), LieError> {
    if t.rank > ORACLE_MAX_RANK {
        return Err(LieError::OracleScaleExceeded {
            rank: t.rank,
            max: ORACLE_MAX_RANK,
        });
    }
    let n = t.rank as usize;
    let a = cartan_matrix(t);
    let form = simple_root_form(t);

    // positive roots as coefficient vectors over the simple roots
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        index.insert(v.clone(), roots.len());
        roots.push(v.clone());
        queue.push_back(v);
    }
    // breadth-first by height, so every β - α_i is already known when β is processed
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            // pairing <β, α_i^∨> = Σ_j c_j A_ij
            let pairing: i64 = (0..n).map(|j| beta[j] * a[i][j]).sum();
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if index.contains_key(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            let is_simple_i = beta
                .iter()
                .enumerate()
                .all(|(j, &c)| c == i64::from(j == i));
            let q = if is_simple_i { 0 } else { p - pairing };
            if q > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if !index.contains_key(&up) {
                    index.insert(up.clone(), roots.len());
                    roots.push(up.clone());
                    queue.push_back(up);
                }
            }
        }
    }
    let dim = n as u64 + 2 * roots.len() as u64;
    let highest = roots
        .iter()
        .max_by_key(|r| r.iter().sum::<i64>())
        .expect("nonempty root system");
    // comark a_i^∨ = a_i (α_i, α_i) / (θ, θ) with (θ, θ) = 2
    let mut dual = Rational::one();
    for i in 0..n {
        dual += Rational::from_integer(highest[i].into()) * &form[i][i]
            / Rational::from_integer(2.into());
    }
    assert!(dual.is_integer());
    Ok((dim, dual.to_integer().try_into().unwrap()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rank_admissibility() {
        for bad in [
            "B1", "C2", "D3", "E5", "E9", "F3", "G3", "A0", "X3", "E", "",
        ] {
            assert!(bad.parse::<SimpleType>().is_err(), "{bad}");
        }
        assert_eq!(t("e8").to_string(), "E8");
    }

    #[test]
    fn table_values() {
        assert_eq!(
            dims(t("E8")),
            Dims {
                dim: 248,
                coxeter: 30,
                dual_coxeter: 30
            }
        );
        assert_eq!(
            dims(t("A1")),
            Dims {
                dim: 3,
                coxeter: 2,
                dual_coxeter: 2
            }
        );
        assert_eq!(
            dims(t("D24")),
            Dims {
                dim: 1128,
                coxeter: 46,
                dual_coxeter: 46
            }
        );
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(root_system_oracle(t("A2")).unwrap(), (8, 3));
        assert_eq!(root_system_oracle(t("B2")).unwrap(), (10, 3));
        assert_eq!(root_system_oracle(t("D4")).unwrap(), (28, 6));
        assert_eq!(root_system_oracle(t("G2")).unwrap(), (14, 4));
        assert_eq!(root_system_oracle(t("F4")).unwrap(), (52, 9));
        assert!(matches!(
            root_system_oracle(t("A13")),
            Err(LieError::OracleScaleExceeded { .. })
        ));
    }

    #[test]
    fn tables_match_oracle() {
        for ty in SimpleType::all_up_to_rank(ORACLE_MAX_RANK) {
            let d = dims(ty);
            assert_eq!(
                root_system_oracle(ty).unwrap(),
                (d.dim, d.dual_coxeter),
                "{ty}"
            );
            // dim = rank (h + 1) holds for every simple type
            assert_eq!(d.dim, ty.rank() as u64 * (d.coxeter + 1), "{ty}");
            if ty.family().is_simply_laced() {
                assert_eq!(d.coxeter, d.dual_coxeter);
            }
        }
    }

    #[test]
    fn sugawara_examples() {
        let pair = |s: &str, k: Rational| AffinePair::new(t(s), k).unwrap();
        assert_eq!(sugawara_c(&pair("E8", q(1, 1))), q(8, 1));
        assert_eq!(sugawara_c(&pair("A1", q(1, 1))), q(1, 1));
        assert_eq!(sugawara_c(&pair("A1", q(2, 1))), q(3, 2));
        assert!(AffinePair::new(t("A1"), q(0, 1)).is_err());
        assert!(AffinePair::new(t("A1"), q(-1, 2)).is_err());
    }

    #[test]
    fn killing_normalization() {
        assert_eq!(killing_on_long_coroot(t("E8")), 120);
        assert_eq!(killing_on_long_coroot(t("A1")), 8);
        assert_eq!(killing_on_long_coroot(t("G2")), 16);
    }

    #[test]
    fn sugawara_monotone_and_bounded() {
        for ty in SimpleType::all_up_to_rank(8) {
            let dim = Rational::from_integer(dims(ty).dim.into());
            let mut prev = Rational::zero();
            for k in 1..20 {
                let level = q(k, 3);
                let c = sugawara_c(&AffinePair::new(ty, level.clone()).unwrap());
                assert!(c > prev && c < dim);
                let h = Rational::from_integer(dims(ty).dual_coxeter.into());
                assert_eq!(c, &dim / (Rational::one() + h / level));
                prev = c;
            }
        }
    }
}
