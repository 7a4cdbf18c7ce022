//! Truncated Laurent series in `u = q^(1/24)` with exact rational coefficients.
//!
//! Every exponent is an integer number of `u`-units, so `q^(-1/3)` is stored as
//! exponent `-8` and `q` as exponent `24`. A series is known on the half-open
//! window `[base, trunc)`; everything at or above `trunc` is unknown.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::Rational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series has no invertible leading coefficient")]
    ZeroLeadingCoefficient,
    #[error("coefficient window is empty (trunc {trunc} <= base {base})")]
    EmptyWindow { base: i64, trunc: i64 },
    #[error("bad coefficient {0:?}")]
    BadCoefficient(String),
    #[error("unsupported unit {0:?}, expected \"q^(1/24)\"")]
    BadUnit(String),
}

/// Units of the stored exponents, as written in the JSON form.
pub const UNIT: &str = "q^(1/24)";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QExpansion {
    base: i64,
    coeffs: Vec<Rational>,
}

impl QExpansion {
    /// Builds a series from its lowest exponent and coefficients, then trims
    /// leading zeros.
    pub fn new(base: i64, coeffs: Vec<Rational>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::EmptyWindow { base, trunc: base });
        }
        let mut s = Self { base, coeffs };
        s.canonicalize();
        Ok(s)
    }

    pub fn from_integers(base: i64, coeffs: &[i64]) -> Self {
        Self::new(
            base,
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
        .expect("nonempty coefficient list")
    }

    /// The series `c + O(u^trunc)`.
    pub fn constant(c: Rational, trunc: i64) -> Self {
        assert!(trunc > 0, "constant series needs trunc > 0");
        let mut coeffs = vec![Rational::zero(); trunc as usize];
        coeffs[0] = c;
        Self::new(0, coeffs).unwrap()
    }

    pub fn one(trunc: i64) -> Self {
        Self::constant(Rational::one(), trunc)
    }

    /// `O(u^trunc)`: zero on a window of length one ending at `trunc`.
    pub fn zero(trunc: i64) -> Self {
        Self {
            base: trunc - 1,
            coeffs: vec![Rational::zero()],
        }
    }

    /// The monomial `c * u^exp + O(u^trunc)`.
    pub fn monomial(c: Rational, exp: i64, trunc: i64) -> Self {
        assert!(trunc > exp);
        let mut coeffs = vec![Rational::zero(); (trunc - exp) as usize];
        coeffs[0] = c;
        Self::new(exp, coeffs).unwrap()
    }

    /// Builds a series that only has integral powers of `q`: `coeffs[n]` is the
    /// coefficient of `q^(shift/24 + n)`. The window ends at `trunc`.
    pub fn from_q_coeffs(shift: i64, coeffs: &[Rational], trunc: i64) -> Self {
        assert!(trunc > shift);
        let mut dense = vec![Rational::zero(); (trunc - shift) as usize];
        for (n, c) in coeffs.iter().enumerate() {
            let idx = 24 * n;
            if idx >= dense.len() {
                break;
            }
            dense[idx] = c.clone();
        }
        Self::new(shift, dense).unwrap()
    }

    fn canonicalize(&mut self) {
        let lead = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len() - 1);
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.base += lead as i64;
        }
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    /// Exclusive upper bound of the known window.
    pub fn trunc(&self) -> i64 {
        self.base + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn leading(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Coefficient of `u^exp`; `None` when `exp` lies beyond the window.
    pub fn coeff(&self, exp: i64) -> Option<Rational> {
        if exp >= self.trunc() {
            None
        } else if exp < self.base {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(exp - self.base) as usize].clone())
        }
    }

    /// Coefficient of `q^n` counted from the base, i.e. of `u^(base + 24 n)`.
    pub fn coeff_q(&self, n: i64) -> Option<Rational> {
        self.coeff(self.base + 24 * n)
    }

    /// Shrinks the window to `[base, trunc)`. A larger `trunc` is ignored.
    pub fn truncate(&self, trunc: i64) -> Self {
        if trunc >= self.trunc() {
            return self.clone();
        }
        if trunc <= self.base {
            return Self::zero(trunc);
        }
        let mut out = self.clone();
        out.coeffs.truncate((trunc - self.base) as usize);
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            base: self.base,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self {
            base: self.base,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        };
        out.canonicalize();
        out
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            base: self.base + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let base = self.base.min(other.base);
        let trunc = self.trunc().min(other.trunc());
        let coeffs = (base..trunc)
            .map(|e| self.coeff(e).unwrap() + other.coeff(e).unwrap())
            .collect();
        Self::new(base, coeffs).unwrap()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product. The result is known on as many terms as the shorter
    /// operand.
    pub fn mul(&self, other: &Self) -> Self {
        let base = self.base + other.base;
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![Rational::zero(); len];
        let nz_a: Vec<usize> = (0..len).filter(|&i| !self.coeffs[i].is_zero()).collect();
        let nz_b: Vec<usize> = (0..len).filter(|&j| !other.coeffs[j].is_zero()).collect();
        for &i in &nz_a {
            let a = &self.coeffs[i];
            for &j in &nz_b {
                if i + j >= len {
                    break;
                }
                out[i + j] += a * &other.coeffs[j];
            }
        }
        Self::new(base, out).unwrap()
    }

    /// Multiplicative inverse, with the same relative precision.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let lead = &self.coeffs[0];
        if lead.is_zero() {
            return Err(SeriesError::ZeroLeadingCoefficient);
        }
        let len = self.coeffs.len();
        let inv_lead = lead.recip();
        let nz: Vec<usize> = (1..len).filter(|&i| !self.coeffs[i].is_zero()).collect();
        let mut out: Vec<Rational> = Vec::with_capacity(len);
        out.push(inv_lead.clone());
        for n in 1..len {
            let mut acc = Rational::zero();
            for &i in &nz {
                if i > n {
                    break;
                }
                if !out[n - i].is_zero() {
                    acc += &self.coeffs[i] * &out[n - i];
                }
            }
            out.push(-acc * &inv_lead);
        }
        Ok(Self::new(-self.base, out).unwrap())
    }

    /// `q d/dq`: the term `u^e` picks up the factor `e/24`.
    pub fn dq(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.base + i as i64;
                c * Rational::new(e.into(), 24.into())
            })
            .collect();
        let mut out = Self {
            base: self.base,
            coeffs,
        };
        if out.is_zero() {
            out = Self::zero(self.trunc());
        } else {
            out.canonicalize();
        }
        out
    }

    /// Integer power; negative exponents go through [`invert`](Self::invert).
    /// `pow(a, 0)` is `1` with the relative precision of `a`.
    pub fn pow(&self, n: i64) -> Result<Self, SeriesError> {
        if n == 0 {
            return Ok(Self::one(self.coeffs.len() as i64));
        }
        let mut base = if n < 0 { self.invert()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc: Option<Self> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.unwrap())
    }

    /// True when both series agree on their common window.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    /// First exponent in the common window where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        let lo = self.base.min(other.base);
        let hi = self.trunc().min(other.trunc());
        (lo..hi).find(|&e| self.coeff(e) != other.coeff(e))
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            base: self.base,
            unit: UNIT.to_string(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<Self, SeriesError> {
        if j.unit != UNIT {
            return Err(SeriesError::BadUnit(j.unit.clone()));
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<Rational>()
                    .map_err(|_| SeriesError::BadCoefficient(s.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(j.base, coeffs)
    }
}

/// Wire form: `{"base": int, "unit": "q^(1/24)", "coeffs": ["p/q", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub base: i64,
    pub unit: String,
    pub coeffs: Vec<String>,
}

impl Serialize for QExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QExpansion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        QExpansion::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// Formats `u^e` as a power of `q`, e.g. `q^(-1/3)`, `q`, `q^2`.
fn q_power(e: i64) -> String {
    let (num, den) = {
        let g = e.gcd(&24);
        (e / g, 24 / g)
    };
    match (num, den) {
        (0, _) => String::new(),
        (1, 1) => "q".to_string(),
        (n, 1) => format!("q^{n}"),
        (n, d) => format!("q^({n}/{d})"),
    }
}

fn push_term(out: &mut String, c: &Rational, mono: &str) {
    let neg = c.is_negative();
    let abs = c.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if mono.is_empty() {
        out.push_str(&abs.to_string());
    } else if abs.is_one() {
        out.push_str(mono);
    } else if abs.is_integer() {
        out.push_str(&format!("{abs}{mono}"));
    } else {
        out.push_str(&format!("({abs}){mono}"));
    }
}

impl fmt::Display for QExpansion {
    /// Series whose exponents all share the residue of `base` mod 24 are
    /// printed as `q^(base/24) * (series in integral powers of q)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let aligned = self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % 24 == 0 || c.is_zero());
        let factored = aligned && self.base.rem_euclid(24) != 0;
        let mut body = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.base + i as i64;
            let mono = if factored {
                q_power(24 * (i as i64 / 24))
            } else {
                q_power(e)
            };
            push_term(&mut body, c, &mono);
        }
        if body.is_empty() {
            body.push('0');
        }
        let big_o = if factored {
            let rel = (self.coeffs.len() as i64 + 23) / 24;
            format!(
                "O({})",
                if rel == 0 {
                    "1".to_string()
                } else {
                    q_power(24 * rel)
                }
            )
        } else {
            let t = self.trunc();
            format!("O({})", if t == 0 { "1".to_string() } else { q_power(t) })
        };
        if factored {
            write!(f, "{} * ({} + {})", q_power(self.base), body, big_o)
        } else {
            write!(f, "{} + {}", body, big_o)
        }
    }
}

/// Exact integer coefficient, for callers that know the series is integral.
pub fn as_integer(c: &Rational) -> Option<BigInt> {
    c.is_integer().then(|| c.to_integer())
}
