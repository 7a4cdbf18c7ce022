//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so every line is printed; exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use holochar::classify::{
    enumerate_candidates, killing_ratio, killing_ratio_24, niemeier_table, solve_idempotent_norm,
    EnumOptions, SemisimpleCandidate,
};
use holochar::lattice::{
    construct, golay_code, roots, short_vectors, LatticeDesc, LatticeName, RootSystemId,
};
use holochar::liealg::{cartan_matrix, dims, Family, SimpleType};
use holochar::modforms::{
    character, delta, eisenstein, form_space, in_span, theta_of, trace_form_rhs, SpanResult,
};
use holochar::qseries::QExpansion;

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn frac(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Collects failures for one criterion.
#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

// ---------------------------------------------------------------- oracles

/// Vectors of E8 = D8 ∪ (D8 + ½·1) by norm, counted in ambient doubled
/// coordinates `y = 2x`: all `y_i` of one parity and `Σ y_i ≡ 0 (mod 4)`.
fn e8_ambient_counts(max_norm: i64) -> BTreeMap<i64, u64> {
    // norm = Σ y² / 4
    let limit = 4 * max_norm;
    let r = (limit as f64).sqrt() as i64 + 1;
    let mut counts = BTreeMap::new();
    for parity in 0..2 {
        let vals: Vec<i64> = (-r..=r).filter(|v| v.rem_euclid(2) == parity).collect();
        fn go(
            depth: usize,
            sum: i64,
            sq: i64,
            limit: i64,
            vals: &[i64],
            counts: &mut BTreeMap<i64, u64>,
        ) {
            if sq > limit {
                return;
            }
            if depth == 8 {
                if sum.rem_euclid(4) == 0 {
                    *counts.entry(sq / 4).or_insert(0) += 1;
                }
                return;
            }
            for &v in vals {
                go(depth + 1, sum + v, sq + v * v, limit, vals, counts);
            }
        }
        go(0, 0, 0, limit, &vals, &mut counts);
    }
    counts
}

/// `∏_{n>=1} (1 - q^n)^{-power}` through `q^(terms-1)`, expanding each factor
/// as the geometric series `Σ q^{nm}`.
fn inverse_eta_product(power: u32, terms: usize) -> Vec<i64> {
    let mut poly = vec![0i64; terms];
    poly[0] = 1;
    for n in 1..terms {
        for _ in 0..power {
            let old = poly.clone();
            for (i, slot) in poly.iter_mut().enumerate() {
                *slot = (0..=i / n).map(|m| old[i - m * n]).sum();
            }
        }
    }
    poly
}

fn rational_inverse_diagonal(g: &[Vec<Q>]) -> Vec<Q> {
    let n = g.len();
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row = g[i].clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).unwrap();
        a.swap(c, p);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    (0..n).map(|i| a[i][n + i].clone()).collect()
}

/// Counts by norm over the coordinate box `|x_i| <= sqrt(bound (G⁻¹)_ii)`,
/// which contains every vector of norm at most `bound`.
fn box_counts(l: &LatticeDesc, bound: &Q) -> BTreeMap<Q, u64> {
    let g = l.gram();
    let n = g.len();
    let den = g.iter().flatten().fold(BigInt::one(), |acc, v| {
        num_integer::lcm(acc, v.denom().clone())
    });
    let gi: Vec<Vec<i64>> = g
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| {
                    (v * Q::from_integer(den.clone()))
                        .to_integer()
                        .to_i64()
                        .unwrap()
                })
                .collect()
        })
        .collect();
    let radius: Vec<i64> = rational_inverse_diagonal(g)
        .iter()
        .map(|v| ((v * bound).to_f64().unwrap().sqrt().floor() as i64) + 1)
        .collect();
    let scaled_bound = bound * Q::from_integer(den.clone());
    let mut counts = BTreeMap::new();
    let mut x: Vec<i64> = radius.iter().map(|r| -r).collect();
    loop {
        let norm: i64 = (0..n)
            .map(|i| (0..n).map(|j| gi[i][j] * x[i] * x[j]).sum::<i64>())
            .sum();
        if q(norm) <= scaled_bound {
            *counts.entry(Q::new(norm.into(), den.clone())).or_insert(0) += 1;
        }
        let mut i = 0;
        while i < n {
            x[i] += 1;
            if x[i] <= radius[i] {
                break;
            }
            x[i] = -radius[i];
            i += 1;
        }
        if i == n {
            break;
        }
    }
    counts
}

/// All multisets of `(type, integer level)` with total rank at most
/// `rank_max` and level at most `cap`, kept when every `h∨/k` equals
/// `(d - 24)/24 > 0`. Ratios are compared by cross-multiplication.
fn brute_force(rank_max: u32, cap: u64) -> BTreeSet<Vec<(SimpleType, u64)>> {
    let pairs: Vec<(SimpleType, u64)> = SimpleType::all_up_to_rank(rank_max)
        .into_iter()
        .flat_map(|t| (1..=cap).map(move |k| (t, k)))
        .collect();
    let mut out = BTreeSet::new();
    let mut stack: Vec<(SimpleType, u64)> = Vec::new();
    fn go(
        start: usize,
        budget: u32,
        pairs: &[(SimpleType, u64)],
        stack: &mut Vec<(SimpleType, u64)>,
        out: &mut BTreeSet<Vec<(SimpleType, u64)>>,
    ) {
        if !stack.is_empty() {
            let d: u64 = stack.iter().map(|(t, _)| dims(*t).dim).sum();
            // h∨/k = (d - 24)/24  ⇔  24 h∨ = k (d - 24)
            let ok = d > 24
                && stack
                    .iter()
                    .all(|(t, k)| 24 * dims(*t).dual_coxeter == k * (d - 24));
            if ok {
                let mut v = stack.clone();
                v.sort();
                out.insert(v);
            }
        }
        for i in start..pairs.len() {
            let r = pairs[i].0.rank();
            if r <= budget {
                stack.push(pairs[i]);
                go(i, budget - r, pairs, stack, out);
                stack.pop();
            }
        }
    }
    go(0, rank_max, &pairs, &mut stack, &mut out);
    out
}

fn as_pairs(c: &SemisimpleCandidate) -> Vec<(SimpleType, u64)> {
    let mut v: Vec<(SimpleType, u64)> = c
        .pairs()
        .iter()
        .map(|p| {
            (
                p.ty(),
                p.level().to_integer().to_u64().expect("integer level"),
            )
        })
        .collect();
    v.sort();
    v
}

// ---------------------------------------------------------------- criteria

type Criterion = (&'static str, fn(&mut Outcome));

fn criterion_1(o: &mut Outcome) {
    let c8 = character(8, 0, -8 + 24 * 4).unwrap();
    o.check(c8.base() == -8, format!("character(8) base {}", c8.base()));
    o.check(
        c8.coeff_q(0) == Some(q(1)),
        "character(8) leading coefficient",
    );
    o.check(
        c8.coeff_q(1) == Some(q(248)),
        format!("character(8) q^1 term {:?}", c8.coeff_q(1)),
    );
    let c16 = character(16, 0, -16 + 24 * 2).unwrap();
    o.check(
        c16.base() == -16,
        format!("character(16) base {}", c16.base()),
    );
    o.check(
        c16.coeff_q(0) == Some(q(1)),
        "character(16) leading coefficient",
    );
    o.check(
        c16.coeff_q(1) == Some(q(496)),
        format!("character(16) q^1 term {:?}", c16.coeff_q(1)),
    );

    // Θ_E8 from ambient vectors, 1/η⁸ from the product, through q^3
    let terms = 4;
    let theta = e8_ambient_counts(2 * (terms as i64 - 1));
    let inv = inverse_eta_product(8, terms);
    for n in 0..terms {
        let expected: i64 = (0..=n)
            .map(|i| *theta.get(&(2 * i as i64)).unwrap_or(&0) as i64 * inv[n - i])
            .sum();
        let got = c8.coeff_q(n as i64);
        o.check(
            got == Some(q(expected)),
            format!("character(8) q^{n}: {got:?} vs brute force {expected}"),
        );
    }
    o.note(format!(
        "q^2, q^3 terms {} {}",
        c8.coeff_q(2).unwrap(),
        c8.coeff_q(3).unwrap()
    ));
}

fn criterion_2(o: &mut Outcome) {
    let trunc = 24 * 3;
    let ch = character(24, 0, trunc).unwrap();
    o.check(ch.coeff(-24) == Some(q(1)), "q^-1 coefficient");
    o.check(ch.coeff(0) == Some(q(0)), "constant term");
    o.check(
        ch.coeff(24) == Some(q(196884)),
        format!("q^1 coefficient {:?}", ch.coeff(24)),
    );
    let space = form_space(2, 1, trunc).unwrap();
    o.check(
        space.dim() == 1,
        format!("dim form_space(2, 1) = {}", space.dim()),
    );
    match in_span(&ch.dq(), &space) {
        Ok(SpanResult::Member(coords)) => o.note(format!("D_q ch = {} · basis", coords[0])),
        other => o.check(
            false,
            format!("D_q character(24, 0) not in span: {other:?}"),
        ),
    }
}

fn criterion_3(o: &mut Outcome) {
    o.check(killing_ratio(8, 248) == Ok(q(60)), "killing_ratio(8, 248)");
    o.check(
        killing_ratio(16, 496) == Ok(q(60)),
        "killing_ratio(16, 496)",
    );
    for d in 0..=10_000u64 {
        let expected = frac(d as i64 - 24, 12);
        if killing_ratio(24, d) != Ok(expected.clone()) || killing_ratio_24(d) != expected {
            o.check(false, format!("killing ratio at d = {d}"));
            break;
        }
    }
    let half = frac(1, 2);
    for (c, const24, d) in [
        (8, 0, 248u64),
        (16, 0, 496),
        (24, 0, 0),
        (24, 24, 24),
        (24, 1128, 1128),
    ] {
        let k = killing_ratio(c, d).unwrap();
        let e = 24 - c;
        let s2 = trace_form_rhs(c, const24, &q(2), e + 24).unwrap();
        let s1 = trace_form_rhs(c, const24, &q(1), e + 24).unwrap();
        o.check(
            s2.coeff(e) == Some(k.clone()),
            format!("scale 2, c = {c}, d = {d}: {:?}", s2.coeff(e)),
        );
        o.check(
            s1.coeff(e) == Some(&k * &half),
            format!("scale 1, c = {c}, d = {d}: {:?}", s1.coeff(e)),
        );
    }
}

fn criterion_4(o: &mut Outcome) {
    let roots = solve_idempotent_norm(196884);
    o.check(
        roots == BTreeSet::from([q(0), q(3)]),
        format!("roots {roots:?}"),
    );
    let x = roots
        .iter()
        .find(|x| !x.is_zero())
        .cloned()
        .unwrap_or_default();
    // Y(2e, z): central charge 2⟨2e, 2e⟩ = 8x per simple ideal; t ideals give 24
    let c = q(8) * &x;
    o.check(c == q(24), format!("central charge of 2e: {c}"));
    let t = q(24) / c;
    o.check(t == q(1), format!("t = {t}"));
}

fn criterion_5(o: &mut Outcome) {
    for (name, rank) in [
        (LatticeName::E8, 8),
        (LatticeName::Gamma16, 16),
        (LatticeName::E8E8, 16),
        (LatticeName::Leech, 24),
    ] {
        let l = construct(name).unwrap();
        o.check(l.rank() == rank, format!("{name} rank {}", l.rank()));
        o.check(l.is_even(), format!("{name} even"));
        o.check(l.is_unimodular() == Ok(true), format!("{name} unimodular"));
    }
    let trunc = 24 * 5 + 1;
    let a = theta_of(&construct(LatticeName::E8E8).unwrap(), trunc).unwrap();
    let b = theta_of(&construct(LatticeName::Gamma16).unwrap(), trunc).unwrap();
    o.check(
        a == b,
        format!(
            "theta(E8E8) vs theta(Gamma16) differ at {:?}",
            a.first_difference(&b)
        ),
    );
    o.check(
        a.coeff(24 * 5) == Some(q(37500480)),
        "theta16 q^5 coefficient",
    );

    let start = Instant::now();
    let leech = construct(LatticeName::Leech).unwrap();
    let r = roots(&leech).unwrap();
    o.check(
        r.count_int(2) == 0,
        format!("Leech roots {}", r.count_int(2)),
    );
    let sv = short_vectors(&leech, &q(4), true).unwrap();
    let n4 = sv.count_int(4);
    o.check(n4 == 196560, format!("Leech norm-4 vectors {n4}"));
    if let Some(vs) = sv.vectors.as_ref().and_then(|m| m.get(&q(4))) {
        let set: BTreeSet<&Vec<i64>> = vs.iter().collect();
        let paired = vs
            .iter()
            .all(|v| set.contains(&v.iter().map(|x| -x).collect::<Vec<_>>()));
        o.check(
            paired && vs.len() % 2 == 0,
            "norm-4 vectors pair up under v -> -v",
        );
        o.note(format!("{} pairs", vs.len() / 2));
    }
    let elapsed = start.elapsed();
    o.check(
        elapsed < Duration::from_secs(120),
        format!("Leech enumeration took {elapsed:?}"),
    );
}

fn criterion_6(o: &mut Outcome) {
    let code = golay_code();
    let words = code.codewords();
    let distinct: BTreeSet<u32> = words.iter().copied().collect();
    o.check(
        distinct.len() == 4096,
        format!("{} distinct codewords", distinct.len()),
    );
    let mut by_weight = BTreeMap::new();
    for w in &distinct {
        *by_weight.entry(w.count_ones()).or_insert(0u32) += 1;
    }
    let expected = BTreeMap::from([(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)]);
    o.check(
        by_weight == expected,
        format!("weight enumerator {by_weight:?}"),
    );
    let min = distinct
        .iter()
        .filter(|&&w| w != 0)
        .map(|w| w.count_ones())
        .min();
    o.check(min == Some(8), format!("minimum distance {min:?}"));
}

fn criterion_7(o: &mut Outcome) {
    let all = enumerate_candidates(&EnumOptions::default()).unwrap();
    o.note(format!("{} integer-level candidates", all.len()));
    let d24 = vec![(SimpleType::new(Family::D, 24).unwrap(), 1u64)];
    let e8 = vec![(SimpleType::new(Family::E, 8).unwrap(), 1u64); 3];
    let listed: Vec<Vec<(SimpleType, u64)>> = all.iter().map(as_pairs).collect();
    o.check(listed.contains(&d24), "contains (D24, 1)");
    o.check(listed.contains(&e8), "contains (E8, 1) x 3");
    for c in &all {
        let d = c.dim();
        let ratio = frac(d as i64 - 24, 24);
        let per_pair = c
            .pairs()
            .iter()
            .all(|p| Q::from_integer(dims(p.ty()).dual_coxeter.into()) / p.level() == ratio);
        let total: Q = c
            .pairs()
            .iter()
            .map(|p| {
                let dd = dims(p.ty());
                p.level() * Q::from_integer(dd.dim.into())
                    / (p.level() + Q::from_integer(dd.dual_coxeter.into()))
            })
            .sum();
        o.check(
            d > 24 && per_pair,
            format!("{c}: h∨/k differs from (d - 24)/24"),
        );
        o.check(total == q(24), format!("{c}: Σc = {total}"));
    }
    for c in &listed {
        if c == &d24 || c == &e8 {
            let d: u64 = c.iter().map(|(t, _)| dims(*t).dim).sum();
            o.note(format!("d = {d}"));
        }
    }
    let slice: BTreeSet<RootSystemId> = enumerate_candidates(&EnumOptions {
        rank_max: 24,
        rank_exact: Some(24),
        integer_levels: true,
        level_cap: Some(1),
    })
    .unwrap()
    .iter()
    .map(SemisimpleCandidate::root_system)
    .collect();
    let table: BTreeSet<RootSystemId> = niemeier_table()
        .into_iter()
        .map(|e| e.root_system)
        .collect();
    o.check(
        table.len() == 23,
        format!("table has {} entries", table.len()),
    );
    o.check(
        slice == table,
        format!("level-1 rank-24 slice has {} systems", slice.len()),
    );
}

fn criterion_8(o: &mut Outcome) {
    let mut compared = 0;
    for rank_max in 1..=8 {
        for cap in 1..=6 {
            let opts = EnumOptions {
                rank_max,
                rank_exact: None,
                integer_levels: true,
                level_cap: Some(cap),
            };
            let found = enumerate_candidates(&opts).unwrap();
            let listed: Vec<Vec<(SimpleType, u64)>> = found.iter().map(as_pairs).collect();
            let as_set: BTreeSet<Vec<(SimpleType, u64)>> = listed.iter().cloned().collect();
            o.check(
                as_set.len() == listed.len(),
                format!("duplicates at rank {rank_max}, cap {cap}"),
            );
            let oracle = brute_force(rank_max, cap);
            o.check(
                as_set == oracle,
                format!(
                    "rank {rank_max}, cap {cap}: {} vs {}",
                    as_set.len(),
                    oracle.len()
                ),
            );
            compared += oracle.len();
        }
    }
    o.check(compared > 0, "oracle found nothing");
    o.note(format!("{compared} candidates compared"));
}

fn arb_series() -> impl Strategy<Value = QExpansion> {
    let coeff = (-20i64..=20, 1i64..=6).prop_map(|(n, d)| frac(n, d));
    (-48i64..48, prop::collection::vec(coeff, 1..16))
        .prop_map(|(base, coeffs)| QExpansion::new(base, coeffs).unwrap())
}

fn criterion_9(o: &mut Outcome) {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    let laws = runner.run(&(arb_series(), arb_series(), arb_series()), |(a, b, c)| {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&b.add(&c)).agrees_with(&a.mul(&b).add(&a.mul(&c))));
        prop_assert!(a
            .mul(&b)
            .dq()
            .agrees_with(&a.dq().mul(&b).add(&a.mul(&b.dq()))));
        if !a.is_zero() {
            let one = a.mul(&a.invert().unwrap());
            prop_assert!(one.agrees_with(&QExpansion::one(a.coeffs().len() as i64)));
            prop_assert_eq!(one.trunc(), a.coeffs().len() as i64);
        }
        Ok(())
    });
    o.check(laws.is_ok(), format!("series laws: {laws:?}"));

    let trunc = 24 * 50;
    let e4 = eisenstein(4, trunc).unwrap();
    let e6 = eisenstein(6, trunc).unwrap();
    let lhs = e4.pow(3).unwrap().sub(&e6.pow(2).unwrap());
    let rhs = delta(trunc).unwrap().scale(&q(1728));
    o.check(
        lhs == rhs,
        format!(
            "E4^3 - E6^2 vs 1728 Delta differ at {:?}",
            lhs.first_difference(&rhs)
        ),
    );
    let theta = theta_of(&construct(LatticeName::E8).unwrap(), trunc).unwrap();
    o.check(
        theta == e4,
        format!(
            "theta(E8) vs E4 differ at {:?}",
            theta.first_difference(&e4)
        ),
    );

    // short vectors against box search
    let mut lattices: Vec<(LatticeDesc, Q)> = Vec::new();
    for n in 1..=8 {
        lattices.push((construct(LatticeName::A(n)).unwrap(), q(4)));
    }
    for n in 4..=8 {
        lattices.push((construct(LatticeName::D(n)).unwrap(), q(4)));
    }
    for n in [6, 7] {
        let t = SimpleType::new(Family::E, n).unwrap();
        lattices.push((
            LatticeDesc::from_integer_gram(&cartan_matrix(t), &t.to_string()).unwrap(),
            q(4),
        ));
    }
    let odd = LatticeDesc::from_integer_gram(&[vec![3, 1, 0], vec![1, 5, 2], vec![0, 2, 7]], "odd")
        .unwrap();
    lattices.push((odd, q(12)));
    let scaled = LatticeDesc::new(
        vec![vec![frac(2, 3), frac(-1, 3)], vec![frac(-1, 3), frac(2, 3)]],
        Some("A2/3".into()),
    )
    .unwrap();
    lattices.push((scaled, frac(7, 3)));
    for (l, bound) in &lattices {
        let got = short_vectors(l, bound, false).unwrap().counts;
        let expected = box_counts(l, bound);
        o.check(got == expected, format!("{:?} bound {bound}", l.label()));
    }
    // E8 itself: the box over its Gram is too large, so use ambient coordinates
    let e8 = short_vectors(&construct(LatticeName::E8).unwrap(), &q(6), false).unwrap();
    let ambient = e8_ambient_counts(6);
    let same =
        ambient.iter().all(|(n, c)| e8.count_int(*n) == *c) && e8.counts.len() == ambient.len();
    o.check(same, "E8 short vectors vs ambient count");

    let mut runner = TestRunner::new(Config {
        cases: 64,
        failure_persistence: None,
        ..Config::default()
    });
    let random = runner.run(
        &(1usize..=4)
            .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)),
        |basis| {
            let n = basis.len();
            let gram: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| basis[i].iter().zip(&basis[j]).map(|(a, b)| a * b).sum())
                        .collect()
                })
                .collect();
            let Ok(l) = LatticeDesc::from_integer_gram(&gram, "random") else {
                return Ok(()); // singular basis
            };
            let bound = q(6);
            prop_assert_eq!(
                short_vectors(&l, &bound, false).unwrap().counts,
                box_counts(&l, &bound)
            );
            Ok(())
        },
    );
    o.check(random.is_ok(), format!("random Gram matrices: {random:?}"));
    o.note(format!("{} named lattices", lattices.len() + 1));
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("character coefficients", criterion_1),
        ("c = 24 character and weight-2 derivative", criterion_2),
        ("Killing ratios and trace-form coefficients", criterion_3),
        ("idempotent norm", criterion_4),
        ("even unimodular lattices, theta16, Leech", criterion_5),
        ("Golay code", criterion_6),
        ("enumeration containment and consistency", criterion_7),
        ("enumeration vs brute force", criterion_8),
        (
            "series laws, modular identities, short vectors",
            criterion_9,
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let mut outcome = Outcome::default();
        let start = Instant::now();
        run(&mut outcome);
        let elapsed = start.elapsed();
        let verdict = if outcome.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let notes = if outcome.notes.is_empty() {
            String::new()
        } else {
            format!(" [{}]", outcome.notes.join("; "))
        };
        println!(
            "criterion {}: {verdict} {name} ({:.2}s){notes}",
            i + 1,
            elapsed.as_secs_f64()
        );
        for f in &outcome.failures {
            println!("    {f}");
        }
        if !outcome.failures.is_empty() {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
