//! Rational piecewise-affine functions on the circle.
//!
//! A [`CircleFn`] is a finite list of half-open pieces `[b_i, b_{i+1})` with
//! exact rational value-at-start and slope; the last piece wraps around to
//! the first breakpoint. All coefficients are arbitrary-precision rationals
//! (floats are converted to their exact dyadic value on construction), so
//! evaluation, means, and coboundary identities are exact. A separate cached
//! float view handles the long-horizon compensated-summation paths, with the
//! usual one-ulp evaluation error.
//!
//! The module also hosts coboundaries `f = F - F∘T` over a rotation, the
//! Rademacher bit functions, and the detector for "barriers": flat pieces on
//! which a function attains its essential supremum or infimum on positive
//! measure. A transfer function with such a flat extreme pins the sign of its
//! coboundary's ergodic averages on the preimage of the flat set; without
//! one, the averages change sign along any completely recurrent subsequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{format_rat, parse_rat, rat, rat_to_f64, Rat};
use crate::torus::{Rotation, TorusPoint};

/// One half-open piece `[at, next_breakpoint)` of a [`CircleFn`].
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub at: TorusPoint,
    pub value: Rat,
    pub slope: Rat,
}

impl Piece {
    pub fn new(at: TorusPoint, value: Rat, slope: Rat) -> Self {
        Piece { at, value, slope }
    }

    pub fn flat(at: TorusPoint, value: Rat) -> Self {
        Piece::new(at, value, Rat::zero())
    }
}

/// A finitely-piecewise affine function on R/Z with exact rational
/// coefficients. Pieces are half-open and the last piece wraps.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleFn {
    pieces: Vec<Piece>,
    // cached float mirror of (value, slope) per piece
    float_coeffs: Vec<(f64, f64)>,
}

impl CircleFn {
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::domain("a piecewise function needs at least one piece"));
        }
        if pieces.windows(2).any(|w| w[0].at >= w[1].at) {
            return Err(Error::domain("breakpoints must be strictly increasing"));
        }
        let float_coeffs = pieces
            .iter()
            .map(|p| (rat_to_f64(&p.value), rat_to_f64(&p.slope)))
            .collect();
        Ok(CircleFn { pieces, float_coeffs })
    }

    pub fn constant(c: Rat) -> Self {
        CircleFn::new(vec![Piece::flat(crate::torus::ZERO, c)]).expect("one piece")
    }

    /// Indicator of the half-open arc `[start, end)` (wrapping allowed).
    pub fn indicator(start: TorusPoint, end: TorusPoint) -> Result<Self> {
        if start == end {
            return Err(Error::domain("empty arc indicator"));
        }
        let one = Piece::flat(start, rat(1, 1));
        let zero = Piece::flat(end, Rat::zero());
        let pieces = if start < end {
            vec![one, zero]
        } else {
            vec![zero, one]
        };
        CircleFn::new(pieces)
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Index of the piece whose half-open interval contains `x`.
    fn piece_index(&self, x: TorusPoint) -> usize {
        let n = self.pieces.len();
        if n == 1 {
            return 0;
        }
        let k = self.pieces.partition_point(|p| p.at <= x);
        if k == 0 {
            n - 1 // x lies before the first breakpoint: wrapped last piece
        } else {
            k - 1
        }
    }

    /// Exact evaluation: `value + slope · (x - at)` on the containing piece.
    pub fn eval(&self, x: TorusPoint) -> Rat {
        let p = &self.pieces[self.piece_index(x)];
        let delta = x.sub(p.at).raw();
        if p.slope.is_zero() || delta == 0 {
            return p.value.clone();
        }
        let frac = Rat::new(BigInt::from(delta), BigInt::from(1u8) << 64);
        &p.value + &p.slope * frac
    }

    /// Float evaluation from the cached coefficients (about one ulp of error).
    pub fn eval_f64(&self, x: TorusPoint) -> f64 {
        let i = self.piece_index(x);
        let (v, s) = self.float_coeffs[i];
        if s == 0.0 {
            return v;
        }
        let delta = x.sub(self.pieces[i].at).raw();
        v + s * (delta as f64 / 18_446_744_073_709_551_616.0)
    }

    /// Length of piece `i` as an exact fraction of the circle.
    fn piece_len_raw(&self, i: usize) -> u128 {
        let n = self.pieces.len();
        if n == 1 {
            return 1u128 << 64;
        }
        let here = self.pieces[i].at.raw();
        let next = self.pieces[(i + 1) % n].at.raw();
        next.wrapping_sub(here) as u128
    }

    fn piece_len(&self, i: usize) -> Rat {
        Rat::new(BigInt::from(self.piece_len_raw(i)), BigInt::from(1u8) << 64)
    }

    /// Exact mean over the circle: sum of `value·len + slope·len²/2`.
    pub fn exact_mean(&self) -> Rat {
        let mut acc = Rat::zero();
        for (i, p) in self.pieces.iter().enumerate() {
            let len = self.piece_len(i);
            acc += &p.value * &len + &p.slope * &len * &len / rat(2, 1);
        }
        acc
    }

    pub fn mean_f64(&self) -> f64 {
        rat_to_f64(&self.exact_mean())
    }

    /// Essential supremum (attained or approached on pieces).
    pub fn ess_sup(&self) -> Rat {
        self.piece_extremes().map(|(_, hi)| hi).max().expect("nonempty")
    }

    pub fn ess_inf(&self) -> Rat {
        self.piece_extremes().map(|(lo, _)| lo).min().expect("nonempty")
    }

    /// Largest absolute value taken (or approached) anywhere.
    pub fn sup_abs(&self) -> Rat {
        let hi = self.ess_sup();
        let lo = self.ess_inf();
        if hi.abs() >= lo.abs() {
            hi.abs()
        } else {
            lo.abs()
        }
    }

    fn piece_extremes(&self) -> impl Iterator<Item = (Rat, Rat)> + '_ {
        self.pieces.iter().enumerate().map(|(i, p)| {
            let end = &p.value + &p.slope * self.piece_len(i);
            if end >= p.value {
                (p.value.clone(), end)
            } else {
                (end, p.value.clone())
            }
        })
    }

    /// Pointwise sum, on the union of breakpoints.
    pub fn add(&self, other: &CircleFn) -> CircleFn {
        let mut ats: Vec<TorusPoint> = self
            .pieces
            .iter()
            .chain(other.pieces.iter())
            .map(|p| p.at)
            .collect();
        ats.sort_unstable();
        ats.dedup();
        let pieces = ats
            .into_iter()
            .map(|b| {
                let si = &self.pieces[self.piece_index(b)].slope;
                let so = &other.pieces[other.piece_index(b)].slope;
                Piece::new(b, self.eval(b) + other.eval(b), si + so)
            })
            .collect();
        CircleFn::new(pieces).expect("union of valid breakpoints")
    }

    pub fn scale(&self, c: &Rat) -> CircleFn {
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece::new(p.at, &p.value * c, &p.slope * c))
            .collect();
        CircleFn::new(pieces).expect("same breakpoints")
    }

    pub fn plus_const(&self, c: &Rat) -> CircleFn {
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece::new(p.at, &p.value + c, p.slope.clone()))
            .collect();
        CircleFn::new(pieces).expect("same breakpoints")
    }

    /// `x ↦ self(x) - self(x + alpha)`: the coboundary difference against the
    /// rotated copy, exact on the union of original and shifted breakpoints.
    pub fn sub_rotated(&self, alpha: TorusPoint) -> CircleFn {
        let mut ats: Vec<TorusPoint> = self
            .pieces
            .iter()
            .flat_map(|p| [p.at, p.at.sub(alpha)])
            .collect();
        ats.sort_unstable();
        ats.dedup();
        let pieces = ats
            .into_iter()
            .map(|b| {
                let shifted = b.add(alpha);
                let s_here = &self.pieces[self.piece_index(b)].slope;
                let s_there = &self.pieces[self.piece_index(shifted)].slope;
                Piece::new(b, self.eval(b) - self.eval(shifted), s_here - s_there)
            })
            .collect();
        CircleFn::new(pieces).expect("union of valid breakpoints")
    }
}

/// A coboundary `f = F - F∘T` over a circle rotation, carrying its transfer
/// function and the derived observable.
#[derive(Debug, Clone)]
pub struct Coboundary {
    pub transfer: CircleFn,
    pub rotation: Rotation,
    pub derived: CircleFn,
}

/// Builds the coboundary with transfer function `transfer` over `rot`.
/// The derived observable has exact mean zero.
pub fn make_coboundary(transfer: CircleFn, rot: Rotation) -> Coboundary {
    let derived = transfer.sub_rotated(rot.alpha());
    debug_assert!(derived.exact_mean().is_zero());
    Coboundary {
        transfer,
        rotation: rot,
        derived,
    }
}

/// One side of a barrier: the flat extreme level and the measure of the
/// pieces attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct BarrierSide {
    pub level: Rat,
    pub attaining_measure: Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BarrierKind {
    Upper,
    Lower,
    Both,
    None,
}

/// Result of [`detect_barrier`].
#[derive(Debug, Clone, PartialEq)]
pub struct BarrierInfo {
    pub upper: Option<BarrierSide>,
    pub lower: Option<BarrierSide>,
}

impl BarrierInfo {
    pub fn kind(&self) -> BarrierKind {
        match (&self.upper, &self.lower) {
            (Some(_), Some(_)) => BarrierKind::Both,
            (Some(_), None) => BarrierKind::Upper,
            (None, Some(_)) => BarrierKind::Lower,
            (None, None) => BarrierKind::None,
        }
    }
}

/// Decides whether `f` attains its essential supremum (resp. infimum) on
/// zero-slope pieces of positive total length. For piecewise-affine
/// functions this is decidable exactly: sloped pieces attain any given level
/// on sets of measure zero, so only flat pieces can carry a barrier.
pub fn detect_barrier(f: &CircleFn) -> BarrierInfo {
    let sup = f.ess_sup();
    let inf = f.ess_inf();
    let mut upper_measure = Rat::zero();
    let mut lower_measure = Rat::zero();
    for (i, p) in f.pieces().iter().enumerate() {
        if !p.slope.is_zero() {
            continue;
        }
        if p.value == sup {
            upper_measure += f.piece_len(i);
        }
        if p.value == inf {
            lower_measure += f.piece_len(i);
        }
    }
    BarrierInfo {
        upper: (!upper_measure.is_zero()).then(|| BarrierSide {
            level: sup,
            attaining_measure: upper_measure,
        }),
        lower: (!lower_measure.is_zero()).then(|| BarrierSide {
            level: inf,
            attaining_measure: lower_measure,
        }),
    }
}

/// Rademacher function `r_k(x)`: +1 if the fractional part of `2^k x` lies
/// in `[0, 1/2)`, else -1. The half-open convention makes every point
/// unambiguous. For a dyadic `x` this is a bit test.
pub fn rademacher(k: u32, x: TorusPoint) -> i8 {
    if k >= 64 {
        return 1; // 2^k x is an integer for dyadic x, fractional part 0
    }
    let shifted = x.raw() << k;
    if shifted >> 63 == 0 {
        1
    } else {
        -1
    }
}

/// The largest level δ such that both `{f ≥ δ}` and `{f ≤ -δ}` have positive
/// measure, for mean-zero two-sided observables: `min(ess sup, -ess inf)`.
pub fn two_sided_level(f: &CircleFn) -> Result<Rat> {
    let sup = f.ess_sup();
    let neg_inf = -f.ess_inf();
    let level = if sup <= neg_inf { sup } else { neg_inf };
    if level <= Rat::zero() {
        return Err(Error::domain(
            "observable does not take values of both signs",
        ));
    }
    Ok(level)
}

/// Exact evaluator with all piece coefficients brought to a single integer
/// scale: `f(x) · scale` is an integer, where `scale = lcm(denominators) · 2^64`.
/// This is what makes long exact Cesàro sums cheap: orbit sums accumulate in
/// integers and only the stored averages pay for a gcd.
pub struct ExactEvaluator {
    ats: Vec<u64>,
    // f(x) · scale = a + b · (x - at) on the containing piece
    terms: Vec<(BigInt, BigInt)>,
    scale: BigInt,
}

impl ExactEvaluator {
    pub fn new(f: &CircleFn) -> Self {
        let mut denom_lcm = BigInt::from(1u8);
        for p in f.pieces() {
            denom_lcm = denom_lcm.lcm(p.value.denom());
            denom_lcm = denom_lcm.lcm(p.slope.denom());
        }
        let scale = &denom_lcm << 64u32;
        let terms = f
            .pieces()
            .iter()
            .map(|p| {
                let a = (&p.value * Rat::from_integer(scale.clone())).to_integer();
                let b = (&p.slope * Rat::from_integer(denom_lcm.clone())).to_integer();
                (a, b)
            })
            .collect();
        ExactEvaluator {
            ats: f.pieces().iter().map(|p| p.at.raw()).collect(),
            terms,
            scale,
        }
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    fn piece_index(&self, x: u64) -> usize {
        let n = self.ats.len();
        if n == 1 {
            return 0;
        }
        let k = self.ats.partition_point(|&a| a <= x);
        if k == 0 {
            n - 1
        } else {
            k - 1
        }
    }

    /// Numerator of `f(x)` over [`ExactEvaluator::scale`].
    pub fn eval_num(&self, x: TorusPoint) -> BigInt {
        let i = self.piece_index(x.raw());
        let (a, b) = &self.terms[i];
        if b.is_zero() {
            return a.clone();
        }
        let delta = x.raw().wrapping_sub(self.ats[i]);
        a + b * BigInt::from(delta)
    }

    /// When every piece is flat and the scaled values leave i128 sums
    /// headroom for 2^40-term horizons, exposes a plain integer table for
    /// the fast summation path.
    pub fn small_flat(&self) -> Option<SmallEvaluator> {
        let cap = BigInt::from(1u8) << 80u32;
        let mut nums = Vec::with_capacity(self.terms.len());
        for (a, b) in &self.terms {
            if !b.is_zero() || a.abs() > cap {
                return None;
            }
            nums.push(a.to_i128()?);
        }
        Some(SmallEvaluator {
            ats: self.ats.clone(),
            nums,
        })
    }
}

/// Flat-piece evaluator over machine integers (numerators over the parent
/// evaluator's scale).
pub struct SmallEvaluator {
    ats: Vec<u64>,
    nums: Vec<i128>,
}

impl SmallEvaluator {
    #[inline]
    pub fn eval_num(&self, x: u64) -> i128 {
        let n = self.ats.len();
        if n == 1 {
            return self.nums[0];
        }
        let k = self.ats.partition_point(|&a| a <= x);
        self.nums[if k == 0 { n - 1 } else { k - 1 }]
    }
}

/// Named constructions used throughout the experiments and the CLI presets.
pub mod presets {
    use super::*;
    use crate::torus::ZERO;

    /// Indicator of `[0, 1/2)`.
    pub fn half_indicator() -> CircleFn {
        CircleFn::indicator(ZERO, TorusPoint::from_raw(1 << 63)).expect("valid arc")
    }

    /// `1_[0,1/2) - 1/2`: the mean-zero two-valued step.
    pub fn half_indicator_centered() -> CircleFn {
        half_indicator().plus_const(&rat(-1, 2))
    }

    /// The sawtooth `x ↦ x` (one strictly increasing piece).
    pub fn sawtooth() -> CircleFn {
        CircleFn::new(vec![Piece::new(ZERO, Rat::zero(), rat(1, 1))]).expect("one piece")
    }

    /// Square wave with `m` full periods per circle and heights ±h,
    /// positive on the first half-period.
    pub fn square_wave(m: u64, h: Rat) -> Result<CircleFn> {
        if m == 0 || m >= (1 << 62) {
            return Err(Error::domain("period count out of range"));
        }
        let half = 2 * m;
        let mut pieces = Vec::with_capacity(half as usize);
        for j in 0..half {
            let at = TorusPoint::from_fraction(j, half)?;
            let v = if j % 2 == 0 { h.clone() } else { -h.clone() };
            pieces.push(Piece::flat(at, v));
        }
        CircleFn::new(pieces)
    }

    /// `min(2x, 1/2)`-style flat-top: rises on `[0, 1/4)`, flat at 1/2 on
    /// `[1/4, 1)`. Upper barrier only.
    pub fn flat_top() -> CircleFn {
        CircleFn::new(vec![
            Piece::new(ZERO, Rat::zero(), rat(2, 1)),
            Piece::flat(TorusPoint::from_raw(1 << 62), rat(1, 2)),
        ])
        .expect("two pieces")
    }
}

// ---------------------------------------------------------------------------
// serialization: {"domain":"circle","pieces":[{"at","value","slope"}]}
// breakpoints as exact decimal strings of raw/2^64, coefficients as
// rational strings
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PieceWire {
    at: String,
    value: String,
    slope: String,
}

#[derive(Serialize, Deserialize)]
struct CircleFnWire {
    domain: String,
    pieces: Vec<PieceWire>,
}

impl Serialize for CircleFn {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = CircleFnWire {
            domain: "circle".to_string(),
            pieces: self
                .pieces
                .iter()
                .map(|p| PieceWire {
                    at: p.at.to_decimal_string(),
                    value: format_rat(&p.value),
                    slope: format_rat(&p.slope),
                })
                .collect(),
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CircleFn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = CircleFnWire::deserialize(deserializer)?;
        if wire.domain != "circle" {
            return Err(D::Error::custom(format!(
                "expected circle domain, got `{}`",
                wire.domain
            )));
        }
        let pieces = wire
            .pieces
            .iter()
            .map(|p| {
                Ok(Piece::new(
                    TorusPoint::from_decimal_string(&p.at).map_err(D::Error::custom)?,
                    parse_rat(&p.value).map_err(D::Error::custom)?,
                    parse_rat(&p.slope).map_err(D::Error::custom)?,
                ))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        CircleFn::new(pieces).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;
    use crate::torus::ZERO;
    use proptest::prelude::*;

    fn golden() -> Rotation {
        Rotation::golden()
    }

    #[test]
    fn indicator_eval() {
        let f = presets::half_indicator();
        assert_eq!(f.eval(TorusPoint::from_unit_f64(0.25).unwrap()), rat_int(1));
        assert_eq!(f.eval(TorusPoint::from_unit_f64(0.75).unwrap()), rat_int(0));
        assert_eq!(f.eval(ZERO), rat_int(1));
        // left endpoints are inclusive, right exclusive
        assert_eq!(f.eval(TorusPoint::from_raw(1 << 63)), rat_int(0));
        assert_eq!(f.eval(TorusPoint::from_raw((1 << 63) - 1)), rat_int(1));
    }

    #[test]
    fn sawtooth_eval_and_mean() {
        let g = presets::sawtooth();
        let x = TorusPoint::from_unit_f64(0.3).unwrap();
        assert_eq!(g.eval(x), x.to_rat());
        assert_eq!(g.exact_mean(), rat(1, 2));
    }

    #[test]
    fn square_wave_eval() {
        // one period, heights ±3/2: positive on [0, 1/2)
        let w = presets::square_wave(1, rat(3, 2)).unwrap();
        assert_eq!(w.eval(TorusPoint::from_unit_f64(0.25).unwrap()), rat(3, 2));
        assert_eq!(w.eval(TorusPoint::from_unit_f64(0.75).unwrap()), rat(-3, 2));
        assert!(w.exact_mean().is_zero());
    }

    #[test]
    fn means() {
        assert_eq!(presets::half_indicator().exact_mean(), rat(1, 2));
        assert!(presets::half_indicator_centered().exact_mean().is_zero());
        assert_eq!(CircleFn::constant(rat(7, 3)).exact_mean(), rat(7, 3));
    }

    #[test]
    fn coboundary_of_indicator_is_three_valued() {
        let cb = make_coboundary(presets::half_indicator(), golden());
        assert!(cb.derived.exact_mean().is_zero());
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..1000u64 {
            let x = TorusPoint::from_fraction(i, 1000).unwrap();
            let v = cb.derived.eval(x);
            assert!(v == rat_int(-1) || v == rat_int(0) || v == rat_int(1));
            seen.insert(format_rat(&v));
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn coboundary_of_constant_is_zero() {
        let cb = make_coboundary(CircleFn::constant(rat(5, 7)), golden());
        for i in 0..100u64 {
            let x = TorusPoint::from_fraction(i, 100).unwrap();
            assert!(cb.derived.eval(x).is_zero());
        }
    }

    #[test]
    fn sawtooth_coboundary_quarter_turn() {
        // F(x) = x, alpha ≈ 1/4: f = -alpha on [0, 1-alpha), 1-alpha on [1-alpha, 1)
        let rot = Rotation::new(TorusPoint::quantize(0.25).unwrap()).unwrap();
        let alpha = rot.alpha().to_rat();
        let cb = make_coboundary(presets::sawtooth(), rot);
        assert_eq!(cb.derived.pieces().len(), 2);
        let lo = TorusPoint::from_unit_f64(0.3).unwrap();
        assert_eq!(cb.derived.eval(lo), -alpha.clone());
        let hi = TorusPoint::from_unit_f64(0.9).unwrap();
        assert_eq!(cb.derived.eval(hi), Rat::from_integer(1.into()) - alpha);
    }

    #[test]
    fn coboundary_pointwise_identity() {
        let rot = golden();
        let cb = make_coboundary(presets::flat_top(), rot);
        let mut rng_state = 0x243F_6A88_85A3_08D3u64;
        for _ in 0..10_000 {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let x = TorusPoint::from_raw(rng_state);
            let direct = cb.transfer.eval(x) - cb.transfer.eval(x.add(rot.alpha()));
            assert_eq!(cb.derived.eval(x), direct);
        }
    }

    #[test]
    fn barrier_detection() {
        let b = detect_barrier(&presets::half_indicator());
        assert_eq!(b.kind(), BarrierKind::Both);
        let up = b.upper.unwrap();
        assert_eq!(up.level, rat_int(1));
        assert_eq!(up.attaining_measure, rat(1, 2));
        let lo = b.lower.unwrap();
        assert_eq!(lo.level, rat_int(0));
        assert_eq!(lo.attaining_measure, rat(1, 2));

        assert_eq!(detect_barrier(&presets::sawtooth()).kind(), BarrierKind::None);

        let b = detect_barrier(&presets::flat_top());
        assert_eq!(b.kind(), BarrierKind::Upper);
        let up = b.upper.unwrap();
        assert_eq!(up.level, rat(1, 2));
        assert_eq!(up.attaining_measure, rat(3, 4));
        assert!(b.lower.is_none());
    }

    #[test]
    fn rademacher_values() {
        let q = |v: f64| TorusPoint::from_unit_f64(v).unwrap();
        assert_eq!(rademacher(0, q(0.25)), 1);
        assert_eq!(rademacher(0, q(0.75)), -1);
        // {2 · 0.25} = 0.5 falls in the second half under the half-open rule
        assert_eq!(rademacher(1, q(0.25)), -1);
        assert_eq!(rademacher(2, q(0.6)), rademacher(0, q(0.6).mul_u64(4)));
    }

    #[test]
    fn rademacher_integrates_to_zero() {
        // exact count of +1 atoms at level k+1
        for k in 0..=10u32 {
            let atoms = 1u64 << (k + 1);
            let mut sum = 0i64;
            for j in 0..atoms {
                sum += rademacher(k, TorusPoint::from_fraction(j, atoms).unwrap()) as i64;
            }
            assert_eq!(sum, 0, "r_{k} has mean zero");
        }
    }

    #[test]
    fn two_sided_level_of_centered_step() {
        assert_eq!(two_sided_level(&presets::half_indicator_centered()).unwrap(), rat(1, 2));
        assert!(two_sided_level(&presets::half_indicator()).is_err());
    }

    #[test]
    fn exact_evaluator_matches_eval() {
        for f in [
            presets::half_indicator_centered(),
            presets::sawtooth(),
            presets::flat_top(),
            make_coboundary(presets::sawtooth(), golden()).derived,
        ] {
            let ev = ExactEvaluator::new(&f);
            let scale = Rat::from_integer(ev.scale().clone());
            for i in 0..500u64 {
                let x = TorusPoint::from_fraction(i, 500).unwrap();
                assert_eq!(
                    Rat::new(ev.eval_num(x), ev.scale().clone()),
                    f.eval(x),
                    "at {x}"
                );
                let _ = scale.clone();
            }
        }
    }

    #[test]
    fn small_evaluator_for_flat_functions() {
        let f = presets::half_indicator_centered();
        let ev = ExactEvaluator::new(&f);
        let small = ev.small_flat().expect("flat pieces");
        for i in 0..100u64 {
            let x = TorusPoint::from_fraction(i, 100).unwrap();
            assert_eq!(BigInt::from(small.eval_num(x.raw())), ev.eval_num(x));
        }
        assert!(ExactEvaluator::new(&presets::sawtooth()).small_flat().is_none());
    }

    #[test]
    fn json_round_trip() {
        for f in [
            presets::half_indicator(),
            presets::half_indicator_centered(),
            presets::sawtooth(),
            presets::flat_top(),
        ] {
            let s = serde_json::to_string(&f).unwrap();
            let back: CircleFn = serde_json::from_str(&s).unwrap();
            assert_eq!(back, f);
        }
        let s = serde_json::to_string(&presets::half_indicator()).unwrap();
        assert!(s.contains("\"domain\":\"circle\""));
        assert!(s.contains("\"at\":\"0.5\""));
    }

    proptest! {
        #[test]
        fn sup_abs_bounds_eval(raw: u64) {
            let f = make_coboundary(presets::flat_top(), golden()).derived;
            let x = TorusPoint::from_raw(raw);
            prop_assert!(f.eval(x).abs() <= f.sup_abs());
        }

        #[test]
        fn rademacher_self_similarity(k in 0u32..20, raw: u64) {
            let x = TorusPoint::from_raw(raw);
            prop_assert_eq!(rademacher(k, x), rademacher(0, x.mul_u64(1u64 << k)));
        }
    }
}
