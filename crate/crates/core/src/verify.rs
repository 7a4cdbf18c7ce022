//! Named check suites. Each check records the exact expected and actual
//! values as strings.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::classify::{
    enumerate_candidates, killing_ratio, killing_ratio_24, naive_candidates, niemeier_crosscheck,
    niemeier_table, solve_idempotent_norm, trace_checks_v2, EnumOptions,
};
use crate::lattice::{construct, roots, short_vectors, LatticeName};
use crate::modforms::{
    character, form_space, form_space_u, in_span, theta_of, trace_form_rhs, SpanResult,
};
use crate::qseries::QExpansion;
use crate::{rat, Rational};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
        pass: bool,
    ) -> Self {
        Self {
            name: name.into(),
            expected: expected.into(),
            actual: actual.into(),
            pass,
        }
    }

    /// Passes when the two displayed values are equal.
    pub fn equal<T: fmt::Display + PartialEq>(
        name: impl Into<String>,
        expected: T,
        actual: T,
    ) -> Self {
        let pass = expected == actual;
        Self::new(name, expected.to_string(), actual.to_string(), pass)
    }

    fn error(name: impl Into<String>, expected: impl Into<String>, err: impl fmt::Display) -> Self {
        Self::new(name, expected, format!("error: {err}"), false)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Appends the checks of `other`, prefixing names with its suite.
    pub fn absorb(&mut self, other: Report) {
        for mut c in other.checks {
            c.name = format!("{}: {}", other.suite, c.name);
            self.checks.push(c);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{mark} {}: expected {}, got {}",
                c.name, c.expected, c.actual
            )?;
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        write!(
            f,
            "{}: {passed}/{} checks passed",
            self.suite,
            self.checks.len()
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Lemma21,
    Cor23,
    Weight2,
    Prop31,
    Theta16,
    Leech,
    Niemeier,
    EnumOracle,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Lemma21,
        Suite::Cor23,
        Suite::Weight2,
        Suite::Prop31,
        Suite::Theta16,
        Suite::Leech,
        Suite::Niemeier,
        Suite::EnumOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma21 => "lemma21",
            Suite::Cor23 => "cor23",
            Suite::Weight2 => "weight2",
            Suite::Prop31 => "prop31",
            Suite::Theta16 => "theta16",
            Suite::Leech => "leech",
            Suite::Niemeier => "niemeier",
            Suite::EnumOracle => "enum-oracle",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("unknown suite {0:?}")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

pub fn run_suite(suite: Suite) -> Report {
    match suite {
        Suite::Lemma21 => lemma21(),
        Suite::Cor23 => cor23(),
        Suite::Weight2 => weight2(),
        Suite::Prop31 => prop31(),
        Suite::Theta16 => theta16(),
        Suite::Leech => leech(),
        Suite::Niemeier => niemeier(),
        Suite::EnumOracle => enum_oracle(),
        Suite::All => {
            let mut all = Report::new("all");
            for s in Suite::EACH {
                all.absorb(run_suite(s));
            }
            all
        }
    }
}

/// `∏_{n>=1} (1 - q^n)^{-power}` on `q^0 .. q^(terms-1)`, by multiplying in one
/// geometric factor at a time.
pub fn inverse_product(power: u32, terms: usize) -> Vec<i64> {
    let mut poly = vec![0i64; terms];
    poly[0] = 1;
    for n in 1..terms {
        for _ in 0..power {
            for i in n..terms {
                poly[i] += poly[i - n];
            }
        }
    }
    poly
}

/// `Θ_{E8}/η⁸` with the theta series taken from lattice enumeration and
/// `η⁸` from the product formula; `q`-power coefficients from `q^(-1/3)`.
fn e8_character_by_enumeration(terms: usize) -> Result<Vec<Rational>, String> {
    let e8 = construct(LatticeName::E8).map_err(|e| e.to_string())?;
    let bound = rat(2 * (terms as i64 - 1));
    let report = short_vectors(&e8, &bound, false).map_err(|e| e.to_string())?;
    let theta: Vec<i64> = (0..terms)
        .map(|n| report.count_int(2 * n as i64) as i64)
        .collect();
    let inv = inverse_product(8, terms);
    Ok((0..terms)
        .map(|n| rat((0..=n).map(|i| theta[i] * inv[n - i]).sum()))
        .collect())
}

fn coefficient_check(
    report: &mut Report,
    name: &str,
    series: &QExpansion,
    exp: i64,
    expected: i64,
) {
    match series.coeff(exp) {
        Some(v) => report.push(Check::equal(name, rat(expected), v)),
        None => report.push(Check::new(
            name,
            expected.to_string(),
            "outside window",
            false,
        )),
    }
}

fn lemma21() -> Report {
    let mut report = Report::new("lemma21");
    match character(8, 0, 8 + 24 * 4) {
        Ok(ch) => {
            report.push(Check::equal("character(8) base", -8, ch.base()));
            coefficient_check(&mut report, "character(8) at q^(-1/3)", &ch, -8, 1);
            coefficient_check(&mut report, "character(8) at q^(2/3)", &ch, 16, 248);
            match e8_character_by_enumeration(4) {
                Ok(brute) => {
                    for (n, b) in brute.into_iter().enumerate() {
                        let e = -8 + 24 * n as i64;
                        report.push(Check::equal(
                            format!("character(8) vs theta/eta^8 at u^{e}"),
                            b,
                            ch.coeff(e).unwrap_or_default(),
                        ));
                    }
                }
                Err(e) => report.push(Check::error("theta(E8)/eta^8 by enumeration", "series", e)),
            }
        }
        Err(e) => report.push(Check::error("character(8)", "series", e)),
    }
    match character(16, 0, 16 + 48) {
        Ok(ch) => {
            report.push(Check::equal("character(16) base", -16, ch.base()));
            coefficient_check(&mut report, "character(16) at q^(-2/3)", &ch, -16, 1);
            coefficient_check(&mut report, "character(16) at q^(1/3)", &ch, 8, 496);
        }
        Err(e) => report.push(Check::error("character(16)", "series", e)),
    }
    match character(24, 0, 48) {
        Ok(ch) => {
            coefficient_check(&mut report, "character(24, 0) at q^-1", &ch, -24, 1);
            coefficient_check(&mut report, "character(24, 0) at q^0", &ch, 0, 0);
            coefficient_check(&mut report, "character(24, 0) at q^1", &ch, 24, 196884);
        }
        Err(e) => report.push(Check::error("character(24, 0)", "series", e)),
    }
    for c in [0, 12, 32] {
        let rejected = character(c, 0, 10).is_err();
        report.push(Check::new(
            format!("character({c}) rejected"),
            "error",
            rejected.to_string(),
            rejected,
        ));
    }
    report
}

fn cor23() -> Report {
    let mut report = Report::new("cor23");
    for (c, d) in [(8, 248), (16, 496)] {
        match killing_ratio(c, d) {
            Ok(k) => report.push(Check::equal(format!("killing_ratio({c}, {d})"), rat(60), k)),
            Err(e) => report.push(Check::error(format!("killing_ratio({c}, {d})"), "60", e)),
        }
    }
    let mismatch = (0..=10_000u64).find(|&d| {
        killing_ratio(24, d).ok() != Some(killing_ratio_24(d))
            || killing_ratio_24(d) != Rational::new((d as i64 - 24).into(), 12.into())
    });
    report.push(Check::new(
        "killing_ratio(24, d) = (d - 24)/12 for 0 <= d <= 10000",
        "no mismatch",
        mismatch.map_or("no mismatch".to_string(), |d| {
            format!("mismatch at d = {d}")
        }),
        mismatch.is_none(),
    ));
    for (c, const24, d) in [
        (8, 0, 248u64),
        (16, 0, 496),
        (24, 0, 0),
        (24, 24, 24),
        (24, 1128, 1128),
    ] {
        let expected = killing_ratio(c, d).expect("valid central charge");
        for (scale, factor) in [
            (rat(2), rat(1)),
            (rat(1), Rational::new(1.into(), 2.into())),
        ] {
            let name = format!("trace_form_rhs(c = {c}, d = {d}, scale = {scale}) at q^(1 - c/24)");
            match trace_form_rhs(c, const24, &scale, 24 - c + 24) {
                Ok(s) => report.push(Check::equal(
                    name,
                    &expected * &factor,
                    s.coeff(24 - c).unwrap_or_default(),
                )),
                Err(e) => report.push(Check::error(name, expected.to_string(), e)),
            }
        }
    }
    report
}

fn span_check(
    report: &mut Report,
    name: String,
    f: Result<QExpansion, String>,
    space: Result<crate::modforms::FormSpaceBasis, String>,
    expected: Rational,
) {
    let outcome = f.and_then(|f| space.and_then(|s| in_span(&f, &s).map_err(|e| e.to_string())));
    match outcome {
        Ok(SpanResult::Member(coords)) => {
            let shown = coords
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ");
            report.push(Check::new(
                name,
                expected.to_string(),
                shown,
                coords == vec![expected],
            ));
        }
        Ok(SpanResult::NotMember { exponent, residual }) => report.push(Check::new(
            name,
            expected.to_string(),
            format!("not in span: residual {residual} at u^{exponent}"),
            false,
        )),
        Err(e) => report.push(Check::error(name, expected.to_string(), e)),
    }
}

fn weight2() -> Report {
    let mut report = Report::new("weight2");
    let trunc = 24 * 4;
    match form_space(2, 1, trunc) {
        Ok(space) => report.push(Check::equal("dim form_space(2, 1)", 1, space.dim())),
        Err(e) => report.push(Check::error("form_space(2, 1)", "basis", e)),
    }
    for const24 in [0, 24, 744] {
        span_check(
            &mut report,
            format!("D_q character(24, {const24}) in form_space(2, 1)"),
            character(24, const24, trunc)
                .map(|c| c.dq())
                .map_err(|e| e.to_string()),
            form_space(2, 1, trunc).map_err(|e| e.to_string()),
            rat(-1),
        );
    }
    for c in [8i64, 16] {
        span_check(
            &mut report,
            format!("D_q character({c}) in the weight-2 space with pole u^-{c}"),
            character(c, 0, trunc)
                .map(|ch| ch.dq())
                .map_err(|e| e.to_string()),
            form_space_u(2, c, trunc).map_err(|e| e.to_string()),
            Rational::new((-c).into(), 24.into()),
        );
    }
    report
}

fn prop31() -> Report {
    let mut report = trace_checks_v2(196884);
    report.suite = "prop31".into();
    let roots = solve_idempotent_norm(196884);
    let shown = roots
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    report.push(Check::new(
        "solve_idempotent_norm(196884)",
        "0, 3",
        shown,
        roots == [rat(0), rat(3)].into(),
    ));
    let double = solve_idempotent_norm(13860);
    report.push(Check::equal(
        "solve_idempotent_norm(13860) size",
        1,
        double.len(),
    ));
    report
}

fn theta16() -> Report {
    let mut report = Report::new("theta16");
    let trunc = 24 * 5 + 1;
    let a = construct(LatticeName::E8E8).map_err(|e| e.to_string());
    let b = construct(LatticeName::Gamma16).map_err(|e| e.to_string());
    let thetas = a.and_then(|a| {
        b.and_then(|b| {
            let ta = theta_of(&a, trunc).map_err(|e| e.to_string())?;
            let tb = theta_of(&b, trunc).map_err(|e| e.to_string())?;
            Ok((ta, tb))
        })
    });
    match thetas {
        Ok((ta, tb)) => {
            for n in 0..=5 {
                let e = 24 * n;
                report.push(Check::equal(
                    format!("theta(E8E8) = theta(Gamma16) at q^{n}"),
                    ta.coeff(e).unwrap_or_default(),
                    tb.coeff(e).unwrap_or_default(),
                ));
            }
            let first_diff = ta.first_difference(&tb);
            report.push(Check::new(
                "theta(E8E8) and theta(Gamma16) agree on the window",
                "agree",
                first_diff.map_or("agree".to_string(), |e| format!("differ at u^{e}")),
                first_diff.is_none(),
            ));
        }
        Err(e) => report.push(Check::error("theta series", "series", e)),
    }
    report
}

fn leech() -> Report {
    let mut report = Report::new("leech");
    let l = match construct(LatticeName::Leech) {
        Ok(l) => l,
        Err(e) => {
            report.push(Check::error("construct(Leech)", "lattice", e));
            return report;
        }
    };
    report.push(Check::equal("rank", 24, l.rank()));
    report.push(Check::equal("even", true, l.is_even()));
    report.push(Check::equal(
        "unimodular",
        true,
        l.is_unimodular().unwrap_or(false),
    ));
    match roots(&l) {
        Ok(r) => report.push(Check::equal("roots", 0, r.count_int(2))),
        Err(e) => report.push(Check::error("roots", "0", e)),
    }
    match short_vectors(&l, &rat(4), false) {
        Ok(r) => report.push(Check::equal("norm-4 vectors", 196560, r.count_int(4))),
        Err(e) => report.push(Check::error("norm-4 vectors", "196560", e)),
    }
    report
}

fn niemeier() -> Report {
    match niemeier_crosscheck(&niemeier_table()) {
        Ok(r) => r,
        Err(e) => {
            let mut report = Report::new("niemeier");
            report.push(Check::error("table", "well formed", e));
            report
        }
    }
}

fn enum_oracle() -> Report {
    let mut report = Report::new("enum-oracle");
    for (rank_max, cap) in [(4, 6), (8, 2), (8, 6)] {
        let opts = EnumOptions {
            rank_max,
            rank_exact: None,
            integer_levels: true,
            level_cap: Some(cap),
        };
        let name = format!("knapsack vs naive, rank <= {rank_max}, level <= {cap}");
        match enumerate_candidates(&opts) {
            Ok(found) => {
                let naive = naive_candidates(rank_max, cap);
                report.push(Check::new(
                    name,
                    format!("{} candidates", naive.len()),
                    format!(
                        "{} candidates{}",
                        found.len(),
                        if found == naive { "" } else { ", different" }
                    ),
                    found == naive,
                ));
            }
            Err(e) => report.push(Check::error(name, "candidates", e)),
        }
    }
    report
}
