//! Exact arithmetic on the circle R/Z.
//!
//! A point is a dyadic fraction `raw / 2^64` held in a `u64`; addition is
//! machine wrapping addition, so the circle group law is exact and orbits
//! never drift. A rotation angle is required to have odd `raw`, which makes
//! the quantized rotation a cyclic group of full order `2^64` — the
//! fixed-point surrogate of an irrational angle. Horizons must stay far below
//! `2^64` for the surrogate to be faithful; every horizon in this crate is.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{format_rat, Rat};
use crate::sequences::{IndexSequence, SequenceKind};

/// A point of R/Z with exact dyadic coordinate `raw / 2^64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TorusPoint {
    raw: u64,
}

pub const ZERO: TorusPoint = TorusPoint { raw: 0 };

impl TorusPoint {
    pub const fn from_raw(raw: u64) -> Self {
        TorusPoint { raw }
    }

    pub const fn raw(self) -> u64 {
        self.raw
    }

    /// Nearest dyadic point to a float in `[0, 1)`. Round half up; no parity
    /// adjustment (see [`TorusPoint::quantize`] for rotation angles).
    pub fn from_unit_f64(v: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&v) {
            return Err(Error::domain(format!("{v} is outside [0, 1)")));
        }
        if v == 0.0 {
            return Ok(ZERO);
        }
        let bits = v.to_bits();
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let mantissa = if exponent == 0 {
            bits & 0xf_ffff_ffff_ffff // subnormal
        } else {
            (bits & 0xf_ffff_ffff_ffff) | (1 << 52)
        };
        let e = if exponent == 0 { -1074 } else { exponent - 1075 };
        // v = mantissa * 2^e with v < 1, so raw = mantissa * 2^(e+64) rounded.
        let shift = e + 64;
        let raw = if shift >= 0 {
            (mantissa as u128) << shift
        } else {
            let s = (-shift) as u32;
            if s >= 128 {
                0
            } else {
                ((mantissa as u128) + (1u128 << (s - 1))) >> s
            }
        };
        debug_assert!(raw < (1u128 << 64));
        Ok(TorusPoint { raw: raw as u64 })
    }

    /// Nearest dyadic point to the fraction `p/q` reduced mod 1.
    pub fn from_fraction(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::domain("zero denominator"));
        }
        let p = p % q;
        // round(p * 2^64 / q) = floor((p * 2^65 + q) / 2q), exact in integers
        let num = (BigUint::from(p) << 65u32) + BigUint::from(q);
        let raw = num / (BigUint::from(q) << 1u32);
        Ok(TorusPoint {
            raw: raw.to_u64().expect("p/q < 1 rounds below 2^64"),
        })
    }

    /// Quantizes a rotation angle: nearest dyadic point, then forced to odd
    /// `raw` (one ulp up) so the rotation has maximal order.
    pub fn quantize(v: f64) -> Result<Self> {
        Ok(Self::from_unit_f64(v)?.force_odd())
    }

    /// Evaluates a continued fraction `[0; a1, a2, ...]` to its convergent
    /// `p/q` exactly, then quantizes like [`TorusPoint::quantize`].
    pub fn quantize_continued_fraction(coeffs: &[u64]) -> Result<Self> {
        if coeffs.is_empty() || coeffs.contains(&0) {
            return Err(Error::domain("continued-fraction coefficients must be >= 1"));
        }
        // Walk p/q = 1/(a1 + 1/(a2 + ...)) from the tail.
        let (mut p, mut q) = (BigUint::from(1u8), BigUint::from(*coeffs.last().unwrap()));
        for &a in coeffs.iter().rev().skip(1) {
            // x -> 1/(a + x) maps p/q to q/(a q + p)
            let new_q = BigUint::from(a) * &q + &p;
            p = q;
            q = new_q;
        }
        let num = (p << 65u32) + &q;
        let raw = num / (q << 1u32);
        Ok(TorusPoint {
            raw: raw.to_u64().expect("fraction reduced mod 1"),
        })
    }

    fn force_odd(self) -> Self {
        if self.raw % 2 == 0 {
            TorusPoint {
                raw: self.raw.wrapping_add(1),
            }
        } else {
            self
        }
    }

    pub fn add(self, other: TorusPoint) -> TorusPoint {
        TorusPoint {
            raw: self.raw.wrapping_add(other.raw),
        }
    }

    pub fn sub(self, other: TorusPoint) -> TorusPoint {
        TorusPoint {
            raw: self.raw.wrapping_sub(other.raw),
        }
    }

    /// n-fold multiple `n·x` mod 1, exact.
    pub fn mul_u64(self, n: u64) -> TorusPoint {
        TorusPoint {
            raw: self.raw.wrapping_mul(n),
        }
    }

    pub fn as_f64(self) -> f64 {
        self.raw as f64 / 18_446_744_073_709_551_616.0
    }

    /// Exact rational value `raw / 2^64`.
    pub fn to_rat(self) -> Rat {
        Rat::new(self.raw.into(), num_bigint::BigInt::from(1u8) << 64)
    }

    /// Exact decimal rendering of `raw / 2^64` (always finite).
    pub fn to_decimal_string(self) -> String {
        format_rat(&self.to_rat())
    }

    /// Parses the exact decimal form produced by `to_decimal_string`.
    pub fn from_decimal_string(s: &str) -> Result<Self> {
        let r = crate::rat::parse_rat(s)?;
        let scaled = r * Rat::from_integer(num_bigint::BigInt::from(1u8) << 64);
        if !scaled.is_integer() {
            return Err(Error::schema(format!(
                "`{s}` is not a multiple of 2^-64"
            )));
        }
        let raw = scaled
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::schema(format!("`{s}` is outside [0, 1)")))?;
        Ok(TorusPoint { raw })
    }
}

impl std::fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

/// Rotation of the circle by an angle with odd `raw`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rotation {
    alpha: TorusPoint,
}

impl Rotation {
    pub fn new(alpha: TorusPoint) -> Result<Self> {
        if alpha.raw % 2 == 0 {
            return Err(Error::domain(format!(
                "rotation angle raw {} is even; quantize angles to odd raw",
                alpha.raw
            )));
        }
        Ok(Rotation { alpha })
    }

    pub fn alpha(self) -> TorusPoint {
        self.alpha
    }

    /// The golden angle (sqrt(5) - 1)/2 quantized exactly: the nearest odd
    /// multiple of 2^-64, computed by integer square root of 5·2^126.
    pub fn golden() -> Self {
        let target = BigUint::from(5u8) << 126u32;
        let s = target.sqrt(); // floor(sqrt(5·2^126))
        // round to nearest: s+1 iff target >= (s + 1/2)^2, i.e. 4·target >= 4s^2+4s+1
        let rounded = if (&target << 2u32) >= ((&s * &s) << 2u32) + (&s << 2u32) + BigUint::from(1u8)
        {
            s + BigUint::from(1u8)
        } else {
            s
        };
        let raw = (rounded - (BigUint::from(1u8) << 63u32))
            .to_u64()
            .expect("golden angle fits u64");
        Rotation {
            alpha: TorusPoint::from_raw(raw).force_odd(),
        }
    }

    /// Orbit point `x0 + n·alpha`, exact for any n.
    pub fn point_at(self, x0: TorusPoint, n: u64) -> TorusPoint {
        x0.add(self.alpha.mul_u64(n))
    }

    /// Streaming orbit `x0 + n·alpha` for n = 1..=n_max, O(1) state.
    pub fn orbit(self, x0: TorusPoint, n_max: u64) -> Orbit {
        Orbit {
            current: x0,
            alpha: self.alpha,
            remaining: n_max,
        }
    }
}

/// Iterator over consecutive orbit points (see [`Rotation::orbit`]).
#[derive(Debug, Clone)]
pub struct Orbit {
    current: TorusPoint,
    alpha: TorusPoint,
    remaining: u64,
}

impl Iterator for Orbit {
    type Item = TorusPoint;

    fn next(&mut self) -> Option<TorusPoint> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        self.current = self.current.add(self.alpha);
        Some(self.current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).ok();
        (n.unwrap_or(usize::MAX), n)
    }
}

/// Greedy scan for indices N with `{(N+1)·alpha}` strictly positive and
/// strictly smaller than at every previously accepted index. Along such a
/// subsequence, coboundary averages of piecewise monotone transfer functions
/// become eventually strictly monotone.
pub fn descent_indices(rot: Rotation, count: usize, scan_limit: u64) -> Result<IndexSequence> {
    if count == 0 {
        return Err(Error::domain("requested zero descent indices"));
    }
    let mut best: Option<u64> = None;
    let mut values = Vec::with_capacity(count);
    for n in 1..=scan_limit {
        let v = rot.point_at(ZERO, n + 1).raw();
        if v > 0 && best.is_none_or(|b| v < b) {
            best = Some(v);
            values.push(n);
            if values.len() == count {
                return IndexSequence::new(values, SequenceKind::Descent);
            }
        }
    }
    Err(Error::ScanExhausted {
        scan_limit,
        partial: values,
    })
}
