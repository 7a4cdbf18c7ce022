//! Named modular objects as [`QExpansion`]s.
//!
//! All `trunc` arguments are exclusive upper exponents in `q^(1/24)` units,
//! like [`QExpansion::trunc`]. Results are computed with whatever extra
//! working precision they need and cut back to `trunc`.

use num_traits::{One, Zero};

use crate::lattice::{short_vectors, LatticeDesc, LatticeError};
use crate::qseries::{QExpansion, SeriesError};
use crate::{rat, Rational};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ModError {
    #[error("central charge {0} is not one of 8, 16, 24 (it must be a positive multiple of 8, at most 24)")]
    InvalidCentralCharge(i64),
    #[error("weight {0} is not admissible here")]
    InvalidWeight(i64),
    #[error("trunc {0} is too small for this series")]
    InvalidTrunc(i64),
    #[error("window ends at {have}, need at least {need} to decide membership")]
    WindowTooShort { need: i64, have: i64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Checks the central charge: a positive multiple of 8 that is at most 24.
pub fn validate_central_charge(c: i64) -> Result<i64, ModError> {
    if c > 0 && c % 8 == 0 && c <= 24 {
        Ok(c)
    } else {
        Err(ModError::InvalidCentralCharge(c))
    }
}

/// `σ_k(n)`, the sum of `d^k` over divisors of `n`.
pub fn divisor_sigma(k: u32, n: u64) -> num_bigint::BigInt {
    let mut acc = num_bigint::BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += num_bigint::BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                acc += num_bigint::BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    acc
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`, from
/// `Σ_{k<m+1} C(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let mut binom = num_bigint::BigInt::one(); // C(m+1, 0)
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bk;
            binom = binom * (m + 1 - k) / (k + 1);
        }
        // binom is now C(m+1, m) = m + 1
        b.push(-acc / Rational::from_integer(binom));
    }
    b
}

/// Integral-power series `Σ a(n) q^n` on `[0, trunc)`.
fn q_series(trunc: i64, coeff: impl Fn(u64) -> Rational) -> QExpansion {
    assert!(trunc > 0);
    let top = ((trunc - 1) / 24) as u64;
    let coeffs: Vec<Rational> = (0..=top).map(coeff).collect();
    QExpansion::from_q_coeffs(0, &coeffs, trunc)
}

/// `η(q) = q^(1/24) ∏ (1 - q^n)`, expanded with Euler's pentagonal numbers:
/// `η = Σ_k (-1)^k q^(1/24 + k(3k-1)/2)`.
pub fn eta(trunc: i64) -> Result<QExpansion, ModError> {
    if trunc <= 1 {
        return Err(ModError::InvalidTrunc(trunc));
    }
    let mut coeffs = vec![Rational::zero(); (trunc - 1) as usize];
    let mut k: i64 = 0;
    loop {
        let mut hit = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = 1 + 12 * kk * (3 * kk - 1);
            if e < trunc {
                hit = true;
                coeffs[(e - 1) as usize] = rat(if kk % 2 == 0 { 1 } else { -1 });
            }
        }
        if !hit {
            break;
        }
        k += 1;
    }
    Ok(QExpansion::new(1, coeffs)?)
}

/// `E₂ = 1 - 24 Σ σ₁(n) qⁿ`.
pub fn eisenstein2(trunc: i64) -> Result<QExpansion, ModError> {
    if trunc <= 0 {
        return Err(ModError::InvalidTrunc(trunc));
    }
    Ok(q_series(trunc, |n| {
        if n == 0 {
            Rational::one()
        } else {
            Rational::from_integer(divisor_sigma(1, n) * -24)
        }
    }))
}

/// `E_{2k} = 1 - (4k / B_{2k}) Σ σ_{2k-1}(n) qⁿ` for even weight `2k >= 4`.
pub fn eisenstein(weight: i64, trunc: i64) -> Result<QExpansion, ModError> {
    if weight < 4 || weight % 2 != 0 {
        return Err(ModError::InvalidWeight(weight));
    }
    if trunc <= 0 {
        return Err(ModError::InvalidTrunc(trunc));
    }
    let b = bernoulli_numbers(weight as usize);
    let factor = -rat(2 * weight) / &b[weight as usize];
    Ok(q_series(trunc, |n| {
        if n == 0 {
            Rational::one()
        } else {
            &factor * Rational::from_integer(divisor_sigma(weight as u32 - 1, n))
        }
    }))
}

/// `Δ = η²⁴ = q - 24q² + 252q³ - ...`.
pub fn delta(trunc: i64) -> Result<QExpansion, ModError> {
    let eta_trunc = (trunc - 23).max(2);
    Ok(eta(eta_trunc)?.pow(24)?.truncate(trunc))
}

/// `J = E₄³/Δ - 744 = q⁻¹ + 0 + 196884q + ...`.
pub fn j_function(trunc: i64) -> Result<QExpansion, ModError> {
    if trunc <= -24 {
        return Err(ModError::InvalidTrunc(trunc));
    }
    let e4 = eisenstein(4, trunc + 24)?;
    let d = delta(trunc + 48)?;
    let j = e4.pow(3)?.mul(&d.invert()?);
    Ok(j.sub(&QExpansion::constant(rat(744), trunc.max(1)))
        .truncate(trunc))
}

/// The character of a holomorphic VOA of central charge `c`:
/// `Θ_{E8}/η⁸`, `Θ_{E8}²/η¹⁶`, or `J + const24`.
///
/// `Θ_{E8}` is taken as `E₄`; the two agree coefficientwise, which the tests
/// check against lattice enumeration.
pub fn character(c: i64, const24: i64, trunc: i64) -> Result<QExpansion, ModError> {
    validate_central_charge(c)?;
    if trunc <= -c {
        return Err(ModError::InvalidTrunc(trunc));
    }
    match c {
        24 => {
            let j = j_function(trunc)?;
            Ok(j.add(&QExpansion::constant(rat(const24), trunc.max(1)))
                .truncate(trunc))
        }
        _ => {
            let len = trunc + c;
            let theta = eisenstein(4, len)?.pow(c / 8)?;
            let eta_c = eta(len + 1)?.pow(c)?;
            Ok(theta.mul(&eta_c.invert()?).truncate(trunc))
        }
    }
}

/// `Θ_L = Σ_{α ∈ L} q^((α,α)/2)`, by short-vector enumeration.
pub fn theta_of(lattice: &LatticeDesc, trunc: i64) -> Result<QExpansion, ModError> {
    if trunc <= 0 {
        return Err(ModError::InvalidTrunc(trunc));
    }
    // q^(norm/2) = u^(12 norm); keep norms with 12 norm < trunc
    let bound = Rational::new((trunc - 1).into(), 12.into());
    let report = short_vectors(lattice, &bound, false)?;
    let mut coeffs = vec![Rational::zero(); trunc as usize];
    for (norm, count) in &report.counts {
        let e = norm * rat(12);
        if !e.is_integer() {
            return Err(LatticeError::ThetaExponent(norm.clone()).into());
        }
        let e: usize = e.to_integer().try_into().expect("exponent below trunc");
        coeffs[e] = rat(*count as i64);
    }
    Ok(QExpansion::new(0, coeffs)?)
}

/// `scale · (1/24) · ((24/c) D_q ch + E₂ ch)` with `⟨u, v⟩ = 1`.
///
/// With `scale = 2` the `q^(1 - c/24)` coefficient is the Killing-form ratio
/// `2 (dim V₁ / c - 1)`; `scale = 1` is the expansion taken at face value.
pub fn trace_form_rhs(
    c: i64,
    const24: i64,
    scale: &Rational,
    trunc: i64,
) -> Result<QExpansion, ModError> {
    let ch = character(c, const24, trunc)?;
    let e2 = eisenstein2(trunc + c)?;
    let sum = ch
        .dq()
        .scale(&Rational::new(24.into(), c.into()))
        .add(&e2.mul(&ch));
    Ok(sum.scale(&(scale / rat(24))).truncate(trunc))
}

/// Default `scale` for [`trace_form_rhs`].
pub fn default_trace_scale() -> Rational {
    rat(2)
}

/// Basis of the space `η^(-pole) · M_{weight + pole/2}`, i.e. weight-`weight`
/// forms whose pole at infinity has order at most `pole/24`, with `pole` in
/// `q^(1/24)` units. For `pole = 24m` this is `Δ^(-m) M_{weight + 12m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpaceBasis {
    pub weight: i64,
    pub pole_u: i64,
    /// Exponents `(a, b, c)` of `E₄^a E₆^b Δ^c`, one per basis element.
    pub monomials: Vec<(u32, u32, u32)>,
    pub basis: Vec<QExpansion>,
}

impl FormSpaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Pole order at infinity in integral `q` powers.
    pub fn pole_order(&self) -> Rational {
        Rational::new(self.pole_u.into(), 24.into())
    }

    pub fn trunc(&self) -> i64 {
        self.basis
            .iter()
            .map(QExpansion::trunc)
            .min()
            .unwrap_or(i64::MAX)
    }
}

/// Monomials `E₄^a E₆^b Δ^c` of weight `k`, with `b ∈ {0, 1}` (higher powers
/// of `E₆` reduce through `E₆² = E₄³ - 1728Δ`), ordered by `c`.
fn monomials(k: i64) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    let mut c = 0;
    while 12 * c <= k {
        let rest = k - 12 * c;
        for b in 0..=1 {
            let r = rest - 6 * b;
            if r >= 0 && r % 4 == 0 {
                out.push(((r / 4) as u32, b as u32, c as u32));
            }
        }
        c += 1;
    }
    out
}

/// `form_space(weight, m)`: forms with a pole of order at most `m`.
pub fn form_space(weight: i64, pole_order: i64, trunc: i64) -> Result<FormSpaceBasis, ModError> {
    form_space_u(weight, 24 * pole_order, trunc)
}

/// Same as [`form_space`] with the pole given in `q^(1/24)` units, which
/// admits the fractional poles `c/24` of the `c = 8, 16` characters.
pub fn form_space_u(weight: i64, pole_u: i64, trunc: i64) -> Result<FormSpaceBasis, ModError> {
    if weight < 2 || weight % 2 != 0 || pole_u < 0 || pole_u % 4 != 0 {
        return Err(ModError::InvalidWeight(weight));
    }
    let k = weight + pole_u / 2;
    if k % 2 != 0 {
        return Err(ModError::InvalidWeight(weight));
    }
    if trunc <= -pole_u {
        return Err(ModError::InvalidTrunc(trunc));
    }
    let len = trunc + pole_u;
    let monos = monomials(k);
    let e4 = eisenstein(4, len)?;
    let e6 = eisenstein(6, len)?;
    let dl = delta(len + 24)?;
    let eta_inv = if pole_u == 0 {
        QExpansion::one(len)
    } else {
        eta(len + 1)?.pow(-pole_u)?
    };
    let basis = monos
        .iter()
        .map(|&(a, b, c)| {
            let f = e4
                .pow(a as i64)?
                .mul(&e6.pow(b as i64)?)
                .mul(&dl.pow(c as i64)?)
                .mul(&eta_inv);
            Ok(f.truncate(trunc))
        })
        .collect::<Result<Vec<_>, ModError>>()?;
    Ok(FormSpaceBasis {
        weight,
        pole_u,
        monomials: monos,
        basis,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanResult {
    /// Coordinates on the basis, in basis order.
    Member(Vec<Rational>),
    /// First exponent where the residual after elimination is nonzero.
    NotMember { exponent: i64, residual: Rational },
}

/// Solves for `f` in the span of `basis` by elimination on the distinct
/// leading exponents, then checks the residual on the whole window.
pub fn in_span(f: &QExpansion, space: &FormSpaceBasis) -> Result<SpanResult, ModError> {
    let have = f.trunc().min(space.trunc());
    let need = (24 * space.dim() as i64).max(1 - space.pole_u);
    if have < need {
        return Err(ModError::WindowTooShort { need, have });
    }
    let mut residual = f.truncate(have);
    let mut coords = Vec::with_capacity(space.dim());
    for b in &space.basis {
        let lead = b.base();
        let coord = residual
            .coeff(lead)
            .expect("leading exponent inside window")
            / b.leading();
        if !coord.is_zero() {
            residual = residual.sub(&b.scale(&coord));
        }
        coords.push(coord);
    }
    match (residual.base()..residual.trunc()).find(|&e| !residual.coeff(e).unwrap().is_zero()) {
        None => Ok(SpanResult::Member(coords)),
        Some(exponent) => Ok(SpanResult::NotMember {
            exponent,
            residual: residual.coeff(exponent).unwrap(),
        }),
    }
}
