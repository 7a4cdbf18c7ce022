//! Identification of the ADE root system carried by the norm-2 vectors.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{roots, LatticeDesc, LatticeError};
use crate::liealg::{cartan_matrix, dims, Family, SimpleType};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootComponent {
    pub ty: SimpleType,
    pub multiplicity: u32,
}

/// A multiset of simply-laced components, kept in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootSystemId {
    components: Vec<RootComponent>,
}

impl RootSystemId {
    pub fn from_types(types: impl IntoIterator<Item = SimpleType>) -> Self {
        let mut counts: BTreeMap<SimpleType, u32> = BTreeMap::new();
        for t in types {
            *counts.entry(t).or_insert(0) += 1;
        }
        Self {
            components: counts
                .into_iter()
                .map(|(ty, multiplicity)| RootComponent { ty, multiplicity })
                .collect(),
        }
    }

    pub fn components(&self) -> &[RootComponent] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Component types with repetition, in canonical order.
    pub fn types(&self) -> Vec<SimpleType> {
        self.components
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.ty, c.multiplicity as usize))
            .collect()
    }

    pub fn coxeter_numbers(&self) -> Vec<u64> {
        self.components.iter().map(|c| dims(c.ty).coxeter).collect()
    }

    pub fn rank(&self) -> u32 {
        self.components
            .iter()
            .map(|c| c.ty.rank() * c.multiplicity)
            .sum()
    }

    /// Number of roots, `Σ multiplicity · (dim - rank)`.
    pub fn root_count(&self) -> u64 {
        self.components
            .iter()
            .map(|c| c.multiplicity as u64 * (dims(c.ty).dim - c.ty.rank() as u64))
            .sum()
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_types(self.types().into_iter().chain(other.types()))
    }
}

impl fmt::Display for RootSystemId {
    /// `E8^2`, `A11 D7 E6`, or `∅` for the empty system.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                if c.multiplicity == 1 {
                    c.ty.to_string()
                } else {
                    format!("{}^{}", c.ty, c.multiplicity)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for RootSystemId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Self::default());
        }
        let mut types = Vec::new();
        for tok in s.split_whitespace() {
            let (name, mult) = match tok.split_once('^') {
                Some((n, m)) => (
                    n,
                    m.parse::<usize>()
                        .map_err(|_| format!("bad multiplicity in {tok:?}"))?,
                ),
                None => (tok, 1),
            };
            let ty: SimpleType = name.parse().map_err(|e| format!("{e}"))?;
            if !ty.family().is_simply_laced() {
                return Err(format!("{ty} is not simply laced"));
            }
            types.extend(std::iter::repeat_n(ty, mult));
        }
        Ok(Self::from_types(types))
    }
}

/// Splits the roots into irreducible components, picks positive roots with a
/// generic functional `f(α) = Σ α_i t^i` on basis coordinates, extracts the
/// simple roots and matches each Cartan matrix against the ADE catalogue.
pub fn identify_root_system(l: &LatticeDesc) -> Result<RootSystemId, LatticeError> {
    let report = roots(l)?;
    let two = Rational::from_integer(2.into());
    let all: Vec<Vec<i64>> = report
        .vectors
        .and_then(|mut v| v.remove(&two))
        .unwrap_or_default();
    if all.is_empty() {
        return Ok(RootSystemId::default());
    }
    if !l.is_integral() {
        return Err(LatticeError::NonIntegralGram);
    }
    let gram: Vec<Vec<i64>> = l
        .gram()
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.to_integer().to_i64().unwrap())
                .collect()
        })
        .collect();
    // G·α for every root, so pairings are plain dot products
    let images: Vec<Vec<i64>> = all
        .iter()
        .map(|a| {
            gram.iter()
                .map(|row| row.iter().zip(a).map(|(g, x)| g * x).sum())
                .collect()
        })
        .collect();
    let pair =
        |i: usize, j: usize| -> i64 { all[i].iter().zip(&images[j]).map(|(a, b)| a * b).sum() };

    // connected components under nonzero pairing
    let m = all.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..m {
        for j in i + 1..m {
            if pair(i, j) != 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..m {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }

    let functional = generic_functional(&all);
    let mut types = Vec::new();
    for members in groups.values() {
        let positive: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&i| functional(&all[i]).is_positive())
            .collect();
        let pos_set: HashSet<&[i64]> = positive.iter().map(|&i| all[i].as_slice()).collect();
        let mut decomposable = HashSet::new();
        for (a, &i) in positive.iter().enumerate() {
            for &j in &positive[a + 1..] {
                let s: Vec<i64> = all[i].iter().zip(&all[j]).map(|(x, y)| x + y).collect();
                if pos_set.contains(s.as_slice()) {
                    decomposable.insert(s);
                }
            }
        }
        let simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&i| !decomposable.contains(&all[i]))
            .collect();
        let cartan: Vec<Vec<i64>> = simple
            .iter()
            .map(|&i| simple.iter().map(|&j| pair(i, j)).collect())
            .collect();
        let ty = match_ade(&cartan)?;
        if members.len() as u64 != dims(ty).dim - ty.rank() as u64 {
            return Err(LatticeError::UnrecognizedCartanMatrix(format!(
                "{ty} component carries {} roots",
                members.len()
            )));
        }
        types.push(ty);
    }
    Ok(RootSystemId::from_types(types))
}

/// Smallest `t >= 2` with `Σ α_i t^i ≠ 0` on every root.
fn generic_functional(roots: &[Vec<i64>]) -> impl Fn(&[i64]) -> BigInt {
    let eval = |t: &BigInt, a: &[i64]| -> BigInt {
        a.iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * t + BigInt::from(c))
    };
    let mut t = BigInt::from(2);
    while roots.iter().any(|a| eval(&t, a).is_zero()) {
        t += 1;
    }
    move |a: &[i64]| eval(&t, a)
}

/// Reads the Dynkin diagram off a simply-laced Cartan matrix and confirms the
/// match by comparing against the catalogue matrix under the induced labelling.
fn match_ade(cartan: &[Vec<i64>]) -> Result<SimpleType, LatticeError> {
    let n = cartan.len();
    let bad = |why: &str| LatticeError::UnrecognizedCartanMatrix(format!("{why}: {cartan:?}"));
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        if cartan[i][i] != 2 {
            return Err(bad("diagonal entry is not 2"));
        }
        for j in 0..n {
            if i != j {
                match cartan[i][j] {
                    0 => {}
                    -1 => adj[i].push(j),
                    _ => return Err(bad("off-diagonal entry outside {0, -1}")),
                }
            }
        }
    }
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if n == 0 || edges != n - 1 {
        return Err(bad("diagram is not a tree"));
    }
    // labelling that realizes the catalogue ordering
    let branch: Vec<usize> = (0..n).filter(|&i| adj[i].len() >= 3).collect();
    let (ty, order) = match branch.as_slice() {
        [] => {
            let start = (0..n)
                .find(|&i| adj[i].len() <= 1)
                .ok_or_else(|| bad("cycle"))?;
            let path = walk(&adj, start, usize::MAX);
            (SimpleType::new(Family::A, n as u32).unwrap(), path)
        }
        [b] if adj[*b].len() == 3 => {
            let mut legs: Vec<Vec<usize>> = adj[*b].iter().map(|&s| walk(&adj, s, *b)).collect();
            legs.sort_by_key(Vec::len);
            let lens: Vec<usize> = legs.iter().map(Vec::len).collect();
            match lens.as_slice() {
                [1, 1, _] => {
                    // D_n: long leg, branch, then the two short legs
                    let mut order: Vec<usize> = legs[2].iter().rev().copied().collect();
                    order.push(*b);
                    order.push(legs[0][0]);
                    order.push(legs[1][0]);
                    (SimpleType::new(Family::D, n as u32).unwrap(), order)
                }
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => {
                    // E_n: leg of length 2, branch, long leg, then the short leg
                    let mut order: Vec<usize> = legs[1].iter().rev().copied().collect();
                    order.push(*b);
                    order.extend(&legs[2]);
                    order.push(legs[0][0]);
                    (SimpleType::new(Family::E, n as u32).unwrap(), order)
                }
                _ => return Err(bad("branch legs do not form D or E")),
            }
        }
        _ => return Err(bad("more than one branch node")),
    };
    let catalogue = cartan_matrix(ty);
    for i in 0..n {
        for j in 0..n {
            if cartan[order[i]][order[j]] != catalogue[i][j] {
                return Err(bad(&format!("labelling does not reproduce {ty}")));
            }
        }
    }
    Ok(ty)
}

/// Follows a path starting at `start`, never stepping back to `from`.
fn walk(adj: &[Vec<usize>], start: usize, from: usize) -> Vec<usize> {
    let mut path = vec![start];
    let (mut prev, mut cur) = (from, start);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&v| v != prev).collect();
        if next.len() != 1 {
            break;
        }
        prev = cur;
        cur = next[0];
        path.push(cur);
    }
    path
}
