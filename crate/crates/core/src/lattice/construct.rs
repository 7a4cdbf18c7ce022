//! Standard lattices: root lattices `A_n`, `D_n`, and the even unimodular
//! lattices E8, E8⊕E8, Γ16 = D16⁺ and Leech.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;

use super::{direct_sum, golay_code, LatticeDesc, LatticeError};
use crate::liealg::{cartan_matrix, Family, SimpleType};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeName {
    E8,
    A(u32),
    D(u32),
    E8E8,
    Gamma16,
    Leech,
}

impl fmt::Display for LatticeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeName::E8 => write!(f, "E8"),
            LatticeName::A(n) => write!(f, "A{n}"),
            LatticeName::D(n) => write!(f, "D{n}"),
            LatticeName::E8E8 => write!(f, "E8E8"),
            LatticeName::Gamma16 => write!(f, "Gamma16"),
            LatticeName::Leech => write!(f, "Leech"),
        }
    }
}

impl FromStr for LatticeName {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let unknown = || LatticeError::UnknownName(s.to_string());
        match lower.as_str() {
            "e8" => Ok(LatticeName::E8),
            "e8e8" | "e8+e8" => Ok(LatticeName::E8E8),
            "gamma16" | "d16+" => Ok(LatticeName::Gamma16),
            "leech" => Ok(LatticeName::Leech),
            _ => {
                let (head, tail) = lower.split_at(1);
                let n: u32 = tail.parse().map_err(|_| unknown())?;
                match head {
                    "a" => Ok(LatticeName::A(n)),
                    "d" => Ok(LatticeName::D(n)),
                    _ => Err(unknown()),
                }
            }
        }
    }
}

pub fn construct(name: LatticeName) -> Result<LatticeDesc, LatticeError> {
    match name {
        LatticeName::A(n) => root_lattice(Family::A, n),
        LatticeName::D(n) => root_lattice(Family::D, n),
        LatticeName::E8 => Ok(e8().clone()),
        LatticeName::E8E8 => Ok(direct_sum(e8(), e8()).with_label("E8E8")),
        LatticeName::Gamma16 => {
            static CELL: OnceLock<LatticeDesc> = OnceLock::new();
            Ok(CELL
                .get_or_init(|| glued_lattice(gamma16_basis(), "Gamma16"))
                .clone())
        }
        LatticeName::Leech => {
            static CELL: OnceLock<LatticeDesc> = OnceLock::new();
            Ok(CELL.get_or_init(leech).clone())
        }
    }
}

fn root_lattice(family: Family, n: u32) -> Result<LatticeDesc, LatticeError> {
    let ty = SimpleType::new(family, n).map_err(|_| LatticeError::InvalidRank(n))?;
    LatticeDesc::from_integer_gram(&cartan_matrix(ty), &ty.to_string())
}

fn e8() -> &'static LatticeDesc {
    static CELL: OnceLock<LatticeDesc> = OnceLock::new();
    CELL.get_or_init(|| glued_lattice(e8_basis(), "E8"))
}

/// Generators of `D_n ∪ (D_n + (1/2, ..., 1/2))` in doubled coordinates.
#[cfg(test)]
fn glued_dn_generators(n: usize) -> Vec<Vec<i64>> {
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        let mut v = vec![0; n];
        v[i] = 2;
        v[i + 1] = -2;
        gens.push(v);
    }
    let mut v = vec![0; n];
    v[n - 2] = 2;
    v[n - 1] = 2;
    gens.push(v);
    gens.push(vec![1; n]);
    gens
}

/// Simple roots of E8 inside `D8⁺`, doubled: `½(1,-1,...,-1,1)`, `e1 + e2`
/// and `e_{i+1} - e_i`.
fn e8_basis() -> Vec<Vec<i64>> {
    let mut basis = vec![vec![1, -1, -1, -1, -1, -1, -1, 1]];
    let mut v = vec![0; 8];
    v[0] = 2;
    v[1] = 2;
    basis.push(v);
    for i in 0..6 {
        let mut v = vec![0; 8];
        v[i] = -2;
        v[i + 1] = 2;
        basis.push(v);
    }
    basis
}

/// Basis of `D16⁺`, doubled: simple roots of D15 on coordinates 2..16 and
/// the half-sum vector.
fn gamma16_basis() -> Vec<Vec<i64>> {
    let mut basis = Vec::new();
    for i in 1..15 {
        let mut v = vec![0; 16];
        v[i] = 2;
        v[i + 1] = -2;
        basis.push(v);
    }
    let mut v = vec![0; 16];
    v[14] = 2;
    v[15] = 2;
    basis.push(v);
    basis.push(vec![1; 16]);
    basis
}

/// Gram `B Bᵀ / 4` of a doubled-coordinate basis.
fn glued_lattice(basis: Vec<Vec<i64>>, label: &str) -> LatticeDesc {
    LatticeDesc::from_basis(&basis, &Rational::new(1.into(), 4.into()), label)
        .expect("glued D_n basis is positive definite")
}

/// Leech lattice in `√8`-scaled coordinates: generated by `2c` for Golay
/// codewords `c`, by `4 D24`, and by `(-3, 1, ..., 1)`. Gram is `B Bᵀ / 8`.
fn leech() -> LatticeDesc {
    let mut gens: Vec<Vec<i64>> = golay_code()
        .generator_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(|b| 2 * b as i64).collect())
        .collect();
    for i in 0..23 {
        let mut v = vec![0; 24];
        v[i] = 4;
        v[i + 1] = -4;
        gens.push(v);
    }
    let mut v = vec![0; 24];
    v[22] = 4;
    v[23] = 4;
    gens.push(v);
    let mut odd = vec![1; 24];
    odd[0] = -3;
    gens.push(odd);
    let basis = triangular_basis(&gens);
    LatticeDesc::from_basis(&basis, &Rational::new(1.into(), 8.into()), "Leech")
        .expect("Leech basis is positive definite")
}

/// Hermite basis in reverse row order. Up to a column permutation it is
/// lower triangular, so the LDLᵀ factor is `B · diag(1/b_ii)` and its
/// denominators divide the pivots; this keeps enumeration in 128 bits.
fn triangular_basis(generators: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut basis = hermite_basis(generators);
    basis.reverse();
    basis
}

/// Row-style Hermite normal form of the lattice spanned by integer
/// generators; returns a basis in echelon form with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_basis(generators: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = generators.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<i128>> = generators
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut pivot_row = 0;
    for col in 0..cols {
        loop {
            // smallest nonzero entry at or below the pivot row becomes the pivot
            let Some(best) = (pivot_row..rows.len())
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].abs())
            else {
                break;
            };
            rows.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col] != 0 {
                    let q = Integer::div_floor(&rows[r][col], &rows[pivot_row][col]);
                    let (head, tail) = rows.split_at_mut(r);
                    for (x, p) in tail[0].iter_mut().zip(&head[pivot_row]) {
                        *x -= q * p;
                    }
                    if rows[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < rows.len() && rows[pivot_row][col] != 0 {
            if rows[pivot_row][col] < 0 {
                rows[pivot_row].iter_mut().for_each(|x| *x = -*x);
            }
            let p = rows[pivot_row][col];
            for r in 0..pivot_row {
                let q = Integer::div_floor(&rows[r][col], &p);
                if q != 0 {
                    let (head, tail) = rows.split_at_mut(pivot_row);
                    for (x, y) in head[r].iter_mut().zip(&tail[0]) {
                        *x -= q * y;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    rows.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| i64::try_from(v).expect("HNF entry fits in i64"))
                .collect()
        })
        .collect()
}
