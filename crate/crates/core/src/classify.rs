//! Level constraints `h∨/k = (d - 24)/24` and the finite search for
//! semisimple weight-one Lie algebras compatible with them.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::lattice::RootSystemId;
use crate::liealg::{dims, sugawara_c, AffinePair, SimpleType};
use crate::modforms::{validate_central_charge, ModError};
use crate::verify::{Check, Report};
use crate::{rat, Rational};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("central charge {0} is not one of 8, 16, 24")]
    InvalidCentralCharge(i64),
    #[error("ratio {0} is not positive; no positive level exists")]
    NonpositiveRatio(Rational),
    #[error("rational levels need an explicit level cap")]
    SearchSpaceUnbounded,
    #[error("rank bound {0} exceeds 24")]
    RankTooLarge(u32),
    #[error("exact rank {exact} exceeds the rank bound {max}")]
    InconsistentRanks { exact: u32, max: u32 },
    #[error("level cap must be at least 1")]
    InvalidLevelCap,
    #[error("malformed Niemeier table: {0}")]
    TableMalformed(String),
}

impl From<ModError> for ClassifyError {
    fn from(e: ModError) -> Self {
        match e {
            ModError::InvalidCentralCharge(c) => ClassifyError::InvalidCentralCharge(c),
            other => unreachable!("unexpected error {other}"),
        }
    }
}

/// `κ(u, v) / ⟨u, v⟩ = 2 (d/c - 1)`.
pub fn killing_ratio(c: i64, d: u64) -> Result<Rational, ClassifyError> {
    validate_central_charge(c)?;
    Ok(rat(2) * (Rational::new((d as i64).into(), c.into()) - rat(1)))
}

/// The `c = 24` specialization `(d - 24)/12`.
pub fn killing_ratio_24(d: u64) -> Rational {
    Rational::new((d as i64 - 24).into(), 12.into())
}

/// `k = h∨ / r`.
pub fn level_from_ratio(t: SimpleType, r: &Rational) -> Result<Rational, ClassifyError> {
    if !r.is_positive() {
        return Err(ClassifyError::NonpositiveRatio(r.clone()));
    }
    Ok(Rational::from_integer(dims(t).dual_coxeter.into()) / r)
}

/// A multiset of affine pairs, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemisimpleCandidate {
    pairs: Vec<AffinePair>,
}

impl SemisimpleCandidate {
    pub fn new(mut pairs: Vec<AffinePair>) -> Self {
        pairs.sort();
        Self { pairs }
    }

    /// All components at level 1.
    pub fn level_one(types: impl IntoIterator<Item = SimpleType>) -> Self {
        Self::new(
            types
                .into_iter()
                .map(|t| AffinePair::new(t, rat(1)).expect("level 1 is positive"))
                .collect(),
        )
    }

    pub fn pairs(&self) -> &[AffinePair] {
        &self.pairs
    }

    pub fn dim(&self) -> u64 {
        self.pairs.iter().map(|p| dims(p.ty()).dim).sum()
    }

    pub fn rank(&self) -> u32 {
        self.pairs.iter().map(|p| p.ty().rank()).sum()
    }

    /// `r = (d - 24)/24`.
    pub fn ratio(&self) -> Rational {
        Rational::new((self.dim() as i64 - 24).into(), 24.into())
    }

    pub fn charges(&self) -> Vec<Rational> {
        self.pairs.iter().map(sugawara_c).collect()
    }

    pub fn total_charge(&self) -> Rational {
        self.charges().into_iter().sum()
    }

    pub fn root_system(&self) -> RootSystemId {
        RootSystemId::from_types(self.pairs.iter().map(AffinePair::ty))
    }

    pub fn to_json(&self) -> CandidateJson {
        CandidateJson {
            pairs: self
                .pairs
                .iter()
                .map(|p| PairJson {
                    ty: p.ty().to_string(),
                    level: p.level().to_string(),
                })
                .collect(),
            dim: self.dim(),
            rank: self.rank(),
            ratio: self.ratio().to_string(),
            charges: self.charges().iter().map(ToString::to_string).collect(),
        }
    }
}

impl Ord for SemisimpleCandidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.pairs.cmp(&other.pairs))
    }
}

impl PartialOrd for SemisimpleCandidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SemisimpleCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|p| format!("({},{})", p.ty(), p.level()))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PairJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub level: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CandidateJson {
    pub pairs: Vec<PairJson>,
    pub dim: u64,
    pub rank: u32,
    pub ratio: String,
    pub charges: Vec<String>,
}

/// Recomputes `r` from `d` and checks each constraint separately.
pub fn verify_candidate(cand: &SemisimpleCandidate) -> Report {
    let mut report = Report::new("candidate");
    let r = cand.ratio();
    report.push(Check::new(
        "ratio is positive",
        "> 0",
        r.to_string(),
        r.is_positive(),
    ));
    for p in cand.pairs() {
        let got = p.ratio();
        report.push(Check::new(
            format!("h∨/k for ({},{})", p.ty(), p.level()),
            r.to_string(),
            got.to_string(),
            got == r,
        ));
    }
    let total = cand.total_charge();
    report.push(Check::new(
        "sum of Sugawara charges",
        "24",
        total.to_string(),
        total == rat(24),
    ));
    report.push(Check::new(
        "rank bound",
        "<= 24",
        cand.rank().to_string(),
        cand.rank() <= 24,
    ));
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    pub rank_max: u32,
    pub rank_exact: Option<u32>,
    pub integer_levels: bool,
    /// `None` means no cap; only allowed with integer levels.
    pub level_cap: Option<u64>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            rank_max: 24,
            rank_exact: None,
            integer_levels: true,
            level_cap: None,
        }
    }
}

impl EnumOptions {
    fn rank_bound(&self) -> Result<u32, ClassifyError> {
        if self.rank_max > 24 {
            return Err(ClassifyError::RankTooLarge(self.rank_max));
        }
        match self.rank_exact {
            Some(exact) if exact > self.rank_max => Err(ClassifyError::InconsistentRanks {
                exact,
                max: self.rank_max,
            }),
            Some(exact) => Ok(exact),
            None => Ok(self.rank_max),
        }
    }

    /// The level at which `t` realizes `r = m/24`, if it is admissible.
    fn admissible_level(&self, t: SimpleType, m: u64) -> Option<Rational> {
        let k = Rational::new((24 * dims(t).dual_coxeter).into(), m.into());
        if self.integer_levels && !k.is_integer() {
            return None;
        }
        match self.level_cap {
            Some(cap) if k > Rational::from_integer(cap.into()) => None,
            _ => Some(k),
        }
    }
}

/// The two non-semisimple cases, reported next to the candidate list.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SpecialCase {
    pub dim: u64,
    pub description: &'static str,
}

pub fn special_cases() -> Vec<SpecialCase> {
    vec![
        SpecialCase {
            dim: 0,
            description:
                "V1 = 0: character J + 0, weight-two space is the 196884-dimensional algebra",
        },
        SpecialCase {
            dim: 24,
            description:
                "V1 abelian of rank 24: Killing form vanishes, V is the Leech lattice theory",
        },
    ]
}

/// Largest `Σ dim` over multisets of simple types with `Σ rank <= rank_bound`.
fn max_total_dim(types: &[SimpleType], rank_bound: u32) -> u64 {
    let mut best = vec![0u64; rank_bound as usize + 1];
    for budget in 1..=rank_bound as usize {
        for t in types {
            let r = t.rank() as usize;
            if r <= budget {
                best[budget] = best[budget].max(best[budget - r] + dims(*t).dim);
            }
        }
    }
    best[rank_bound as usize]
}

struct Item {
    ty: SimpleType,
    level: Rational,
    dim: usize,
    rank: u32,
}

/// All multisets of `items` with `Σ dim = target` and total rank within
/// `bound` (or equal to it when `exact`).
fn knapsack(items: &[Item], target: usize, bound: u32, exact: bool) -> Vec<Vec<usize>> {
    let n = items.len();
    let full: u32 = if bound >= 31 {
        u32::MAX
    } else {
        (1u32 << (bound + 1)) - 1
    };
    // reach[i][s]: bitmask of total ranks reachable with items i.. at dimension s
    let mut reach = vec![vec![0u32; target + 1]; n + 1];
    reach[n][0] = 1;
    for i in (0..n).rev() {
        let (dim, rank) = (items[i].dim, items[i].rank);
        for s in 0..=target {
            let mut mask = reach[i + 1][s];
            if s >= dim {
                mask |= (reach[i][s - dim] << rank) & full;
            }
            reach[i][s] = mask;
        }
    }
    let feasible = |mask: u32, budget: u32| {
        if exact {
            mask >> budget & 1 == 1
        } else {
            mask & ((1u32 << (budget + 1)) - 1) != 0
        }
    };
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(
        i: usize,
        left: usize,
        budget: u32,
        items: &[Item],
        reach: &[Vec<u32>],
        feasible: &dyn Fn(u32, u32) -> bool,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == items.len() {
            if left == 0 {
                out.push(chosen.clone());
            }
            return;
        }
        let (dim, rank) = (items[i].dim, items[i].rank);
        let mut copies = 0;
        let (mut l, mut b) = (left, budget);
        loop {
            if feasible(reach[i + 1][l], b) {
                go(i + 1, l, b, items, reach, feasible, chosen, out);
            }
            if l < dim || b < rank {
                break;
            }
            l -= dim;
            b -= rank;
            copies += 1;
            chosen.push(i);
        }
        chosen.truncate(chosen.len() - copies);
    }
    if feasible(reach[0][target], bound) {
        go(
            0,
            target,
            bound,
            items,
            &reach,
            &feasible,
            &mut chosen,
            &mut out,
        );
    }
    out
}

/// Every multiset of pairs with a common ratio `r = h∨/k`, `Σ dim = 24(1 + r)`
/// and the requested rank and level constraints, sorted by `d` and then by
/// the sorted pair list.
pub fn enumerate_candidates(opts: &EnumOptions) -> Result<Vec<SemisimpleCandidate>, ClassifyError> {
    let bound = opts.rank_bound()?;
    if opts.level_cap == Some(0) {
        return Err(ClassifyError::InvalidLevelCap);
    }
    if !opts.integer_levels && opts.level_cap.is_none() {
        return Err(ClassifyError::SearchSpaceUnbounded);
    }
    let types = SimpleType::all_up_to_rank(bound);
    let max_dim = max_total_dim(&types, bound);
    if max_dim <= 24 {
        return Ok(Vec::new());
    }
    // r = m/24 with d = 24 + m
    let mut found: Vec<SemisimpleCandidate> = (1..=max_dim - 24)
        .into_par_iter()
        .flat_map_iter(|m| {
            let items: Vec<Item> = types
                .iter()
                .filter_map(|&ty| {
                    opts.admissible_level(ty, m).map(|level| Item {
                        ty,
                        level,
                        dim: dims(ty).dim as usize,
                        rank: ty.rank(),
                    })
                })
                .collect();
            knapsack(&items, 24 + m as usize, bound, opts.rank_exact.is_some())
                .into_iter()
                .map(|idx| {
                    SemisimpleCandidate::new(
                        idx.into_iter()
                            .map(|i| {
                                AffinePair::new(items[i].ty, items[i].level.clone())
                                    .expect("levels are positive")
                            })
                            .collect(),
                    )
                })
                .collect::<Vec<_>>()
        })
        .collect();
    found.sort();
    Ok(found)
}

/// Reference enumeration for small parameters: every multiset of
/// `(type, integer level)` pairs with total rank at most `rank_max` and levels
/// at most `level_cap`, filtered by the defining conditions.
pub fn naive_candidates(rank_max: u32, level_cap: u64) -> Vec<SemisimpleCandidate> {
    let pairs: Vec<AffinePair> = SimpleType::all_up_to_rank(rank_max)
        .into_iter()
        .flat_map(|t| (1..=level_cap).map(move |k| AffinePair::new(t, rat(k as i64)).unwrap()))
        .collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn go(
        start: usize,
        budget: u32,
        pairs: &[AffinePair],
        stack: &mut Vec<AffinePair>,
        out: &mut Vec<SemisimpleCandidate>,
    ) {
        if !stack.is_empty() {
            let cand = SemisimpleCandidate::new(stack.clone());
            let r = cand.ratio();
            if r.is_positive() && cand.pairs().iter().all(|p| p.ratio() == r) {
                out.push(cand);
            }
        }
        for i in start..pairs.len() {
            let rank = pairs[i].ty().rank();
            if rank <= budget {
                stack.push(pairs[i].clone());
                go(i, budget - rank, pairs, stack, out);
                stack.pop();
            }
        }
    }
    go(0, rank_max, &pairs, &mut stack, &mut out);
    out.sort();
    out
}

/// One nonempty Niemeier root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiemeierEntry {
    pub root_system: RootSystemId,
    pub coxeter_number: u64,
}

/// Version of the built-in root-system table.
pub const NIEMEIER_TABLE_VERSION: &str = "1";

/// The 23 root systems of the even unimodular rank-24 lattices other than
/// Leech, as listed in Conway–Sloane, Sphere Packings, Lattices and Groups,
/// ch. 16, Table 16.1. Data, not derived.
const NIEMEIER_DATA: [(&str, u64); 23] = [
    ("D24", 46),
    ("D16 E8", 30),
    ("E8^3", 30),
    ("A24", 25),
    ("D12^2", 22),
    ("A17 E7", 18),
    ("D10 E7^2", 18),
    ("A15 D9", 16),
    ("D8^3", 14),
    ("A12^2", 13),
    ("A11 D7 E6", 12),
    ("E6^4", 12),
    ("A9^2 D6", 10),
    ("D6^4", 10),
    ("A8^3", 9),
    ("A7^2 D5^2", 8),
    ("A6^4", 7),
    ("A5^4 D4", 6),
    ("D4^6", 6),
    ("A4^6", 5),
    ("A3^8", 4),
    ("A2^12", 3),
    ("A1^24", 2),
];

pub fn niemeier_table() -> Vec<NiemeierEntry> {
    NIEMEIER_DATA
        .iter()
        .map(|&(s, h)| NiemeierEntry {
            root_system: s.parse().expect("built-in table parses"),
            coxeter_number: h,
        })
        .collect()
}

fn check_table(table: &[NiemeierEntry]) -> Result<(), ClassifyError> {
    let mut seen = BTreeSet::new();
    for e in table {
        let name = e.root_system.to_string();
        if e.root_system.rank() != 24 {
            return Err(ClassifyError::TableMalformed(format!(
                "{name} has rank {}",
                e.root_system.rank()
            )));
        }
        if e.root_system
            .coxeter_numbers()
            .iter()
            .any(|&h| h != e.coxeter_number)
        {
            return Err(ClassifyError::TableMalformed(format!(
                "{name} does not have common Coxeter number {}",
                e.coxeter_number
            )));
        }
        if !seen.insert(e.root_system.clone()) {
            return Err(ClassifyError::TableMalformed(format!(
                "{name} listed twice"
            )));
        }
    }
    Ok(())
}

/// Checks every entry as a level-one candidate with `r` equal to its Coxeter
/// number, then compares the table with the level-one, rank-24 enumeration.
pub fn niemeier_crosscheck(table: &[NiemeierEntry]) -> Result<Report, ClassifyError> {
    check_table(table)?;
    let mut report = Report::new("niemeier");
    for e in table {
        let cand = SemisimpleCandidate::level_one(e.root_system.types());
        let sub = verify_candidate(&cand);
        let r = cand.ratio();
        let h = Rational::from_integer(e.coxeter_number.into());
        report.push(Check::new(
            format!("{} at level 1", e.root_system),
            format!("all checks pass, r = {h}"),
            format!(
                "{} checks pass, r = {r}",
                if sub.passed() { "all" } else { "not all" }
            ),
            sub.passed() && r == h,
        ));
    }
    let opts = EnumOptions {
        rank_max: 24,
        rank_exact: Some(24),
        integer_levels: true,
        level_cap: Some(1),
    };
    let found: BTreeSet<RootSystemId> = enumerate_candidates(&opts)?
        .iter()
        .map(SemisimpleCandidate::root_system)
        .collect();
    let table_set: BTreeSet<RootSystemId> = table.iter().map(|e| e.root_system.clone()).collect();
    let show = |s: &BTreeSet<RootSystemId>| {
        s.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    };
    report.push(Check::new(
        "level-1 rank-24 enumeration equals table",
        format!("{} systems: {}", table_set.len(), show(&table_set)),
        format!("{} systems: {}", found.len(), show(&found)),
        found == table_set,
    ));
    Ok(report)
}

/// Solutions `x = ⟨e, e⟩` of `(d/3) x = 4620 x + 20336 x²`.
pub fn solve_idempotent_norm(d: u64) -> BTreeSet<Rational> {
    let mut out = BTreeSet::from([Rational::zero()]);
    out.insert((Rational::new((d as i64).into(), 3.into()) - rat(4620)) / rat(20336));
    out
}

/// A polynomial coefficient of the form `a + b·d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineInD {
    pub constant: Rational,
    pub per_d: Rational,
}

impl AffineInD {
    fn at(&self, d: u64) -> Rational {
        &self.constant + &self.per_d * Rational::from_integer(d.into())
    }
}

impl fmt::Display for AffineInD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.constant.is_zero(), self.per_d.is_zero()) {
            (_, true) => write!(f, "{}", self.constant),
            (true, false) => write!(f, "({})d", self.per_d),
            (false, false) => write!(f, "{} + ({})d", self.constant, self.per_d),
        }
    }
}

/// Coefficients `[x⁰, x¹, x²]` of `Tr o(e·e) - Tr o(e)²` for an idempotent
/// `e` with `x = ⟨e, e⟩`, using `Tr o(ab) = (d/3)⟨a, b⟩` and
/// `Tr o(e)² = 4620 x + 20336 x²`.
pub fn idempotent_relation() -> [AffineInD; 3] {
    let zero = || Rational::zero();
    // Tr o(e·e) = Tr o(e) = (d/3)⟨e, e⟩
    let lhs = [
        AffineInD {
            constant: zero(),
            per_d: zero(),
        },
        AffineInD {
            constant: zero(),
            per_d: Rational::new(1.into(), 3.into()),
        },
        AffineInD {
            constant: zero(),
            per_d: zero(),
        },
    ];
    let rhs = [
        AffineInD {
            constant: zero(),
            per_d: zero(),
        },
        AffineInD {
            constant: rat(4620),
            per_d: zero(),
        },
        AffineInD {
            constant: rat(20336),
            per_d: zero(),
        },
    ];
    let sub = |a: &AffineInD, b: &AffineInD| AffineInD {
        constant: &a.constant - &b.constant,
        per_d: &a.per_d - &b.per_d,
    };
    [
        sub(&lhs[0], &rhs[0]),
        sub(&lhs[1], &rhs[1]),
        sub(&lhs[2], &rhs[2]),
    ]
}

/// Substitutes the two trace formulas into the idempotent relation and
/// follows the nonzero root to the number of simple ideals `t = 24/(8x)`.
pub fn trace_checks_v2(d: u64) -> Report {
    let mut report = Report::new("prop31");
    let rel = idempotent_relation();
    let shown = format!("({})x^2 + ({})x + ({}) = 0", rel[2], rel[1], rel[0]);
    let expected_rel = [
        AffineInD {
            constant: Rational::zero(),
            per_d: Rational::zero(),
        },
        AffineInD {
            constant: rat(-4620),
            per_d: Rational::new(1.into(), 3.into()),
        },
        AffineInD {
            constant: rat(-20336),
            per_d: Rational::zero(),
        },
    ];
    report.push(Check::new(
        "idempotent relation in d",
        "(-20336)x^2 + (-4620 + (1/3)d)x + (0) = 0",
        shown,
        rel == expected_rel,
    ));
    let roots = solve_idempotent_norm(d);
    let listed = roots
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    let roots_ok = roots
        .iter()
        .all(|x| (rel[2].at(d) * x * x + rel[1].at(d) * x + rel[0].at(d)).is_zero());
    report.push(Check::new(
        format!("roots at d = {d} satisfy the relation"),
        "0",
        listed.clone(),
        roots_ok,
    ));
    match roots.iter().find(|x| !x.is_zero()) {
        None => report.push(Check::new(
            "nonzero root",
            "exists",
            format!("double root at 0 ({listed})"),
            false,
        )),
        Some(x) => {
            report.push(Check::new(
                "nonzero root is positive",
                "> 0",
                x.to_string(),
                x.is_positive(),
            ));
            if x.is_positive() {
                // Y(2e, z) generates a Virasoro algebra of central charge 2⟨2e, 2e⟩ = 8x
                let c = rat(8) * x;
                let t = rat(24) / &c;
                report.push(Check::new(
                    "central charge of 2e",
                    "24",
                    c.to_string(),
                    c == rat(24),
                ));
                report.push(Check::new(
                    "number of simple ideals t = 24/c",
                    "1",
                    t.to_string(),
                    t.is_one(),
                ));
            }
        }
    }
    report
}
