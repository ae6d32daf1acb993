use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::context::PrecisionContext;
use super::decimal::{digit_count_int, pow10_int, round_shift};
use crate::error::{Error, Result};

/// A scaled decimal value `mantissa * 10^-scale` tied to a precision context.
///
/// Values in `[0.01, 100)` are kept at exactly `digits + guard` fractional
/// digits; everything else carries `digits + guard` significant digits. The
/// representation is canonical, so two equal values with the same context
/// share mantissa and scale. Zero is `(0, 0)`.
///
/// All rounding is half-to-even.
#[derive(Clone, Debug)]
pub struct Real {
    mantissa: BigInt,
    scale: i64,
    ctx: PrecisionContext,
}

/// Scale a normalized value of exponent `e` is stored at.
fn target_scale(e: i64, working: i64) -> i64 {
    if (-1..=2).contains(&e) {
        working
    } else {
        working - e
    }
}

impl Real {
    /// Normalizes `mantissa * 10^-scale` into the canonical form for `ctx`.
    /// `sticky` marks a nonzero tail already discarded below `scale`.
    pub(crate) fn from_parts(
        mantissa: BigInt,
        scale: i64,
        ctx: PrecisionContext,
        sticky: bool,
    ) -> Real {
        let working = i64::from(ctx.working_digits());
        let mut m = mantissa;
        let mut s = scale;
        let mut sticky = sticky;
        if m.is_zero() {
            return Real::zero(ctx);
        }
        loop {
            let e = digit_count_int(&m) as i64 - s;
            let target = target_scale(e, working);
            match s.cmp(&target) {
                Ordering::Greater => {
                    m = round_shift(&m, (s - target) as u64, sticky);
                    sticky = false;
                    s = target;
                    if m.is_zero() {
                        return Real::zero(ctx);
                    }
                }
                Ordering::Less => {
                    m *= pow10_int((target - s) as u64);
                    s = target;
                    break;
                }
                Ordering::Equal => break,
            }
        }
        Real {
            mantissa: m,
            scale: s,
            ctx,
        }
    }

    pub fn zero(ctx: PrecisionContext) -> Real {
        Real {
            mantissa: BigInt::zero(),
            scale: 0,
            ctx,
        }
    }

    pub fn one(ctx: PrecisionContext) -> Real {
        Real::from_int(1, ctx)
    }

    pub fn from_int(value: impl Into<BigInt>, ctx: PrecisionContext) -> Real {
        Real::from_parts(value.into(), 0, ctx, false)
    }

    /// `num / den`, correctly rounded.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, ctx: PrecisionContext) -> Real {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        Real::from_int(num, ctx) / Real::from_int(den, ctx)
    }

    /// Parses a decimal literal such as `-1.25`, `3`, `.5` or `6.02e23`.
    pub fn parse(text: &str, ctx: PrecisionContext) -> Result<Real> {
        let bad = || Error::Parse(text.to_string());
        let s = text.trim();
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (num, exp) = match body.find(['e', 'E']) {
            Some(i) => (
                &body[..i],
                body[i + 1..].parse::<i64>().map_err(|_| bad())?,
            ),
            None => (body, 0),
        };
        let (int_part, frac_part) = match num.find('.') {
            Some(i) => (&num[..i], &num[i + 1..]),
            None => (num, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut m: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            m = -m;
        }
        Ok(Real::from_parts(m, frac_part.len() as i64 - exp, ctx, false))
    }

    pub fn context(&self) -> PrecisionContext {
        self.ctx
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    /// Decimal exponent `e` with `10^(e-1) <= |self| < 10^e`; `None` for zero.
    pub fn exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(digit_count_int(&self.mantissa) as i64 - self.scale)
        }
    }

    /// One unit in the last of `digits` significant places of this value.
    /// For zero this is `10^-digits`.
    pub fn ulp(&self) -> Real {
        let b = i64::from(self.ctx.digits());
        let e = self.exponent().unwrap_or(0);
        Real::from_parts(BigInt::from(1), b - e, self.ctx, false)
    }

    /// `|self - other| <= ulps * ulp(other)`.
    pub fn within_ulps(&self, other: &Real, ulps: u32) -> bool {
        let diff = (self - other).abs();
        let bound = other.ulp() * Real::from_int(ulps, other.ctx);
        diff <= bound
    }

    pub fn abs(&self) -> Real {
        Real {
            mantissa: self.mantissa.abs(),
            scale: self.scale,
            ctx: self.ctx,
        }
    }

    /// Re-rounds this value into another context.
    pub fn with_context(&self, ctx: PrecisionContext) -> Real {
        Real::from_parts(self.mantissa.clone(), self.scale, ctx, false)
    }

    pub fn checked_div(&self, rhs: &Real) -> Result<Real> {
        if rhs.is_zero() {
            return Err(Error::domain("div", "division by zero"));
        }
        Ok(div_impl(self, rhs))
    }

    /// Rounds to `digits` significant digits, keeping this context.
    pub fn round_significant(&self, digits: u32) -> Real {
        match self.exponent() {
            None => self.clone(),
            Some(e) => {
                let places = i64::from(digits) - e;
                Real::from_parts(self.round_to_places(places), places, self.ctx, false)
            }
        }
    }

    /// `round(self * 10^places)` as an integer, half to even.
    pub fn round_to_places(&self, places: i64) -> BigInt {
        if places >= self.scale {
            &self.mantissa * pow10_int((places - self.scale) as u64)
        } else {
            round_shift(&self.mantissa, (self.scale - places) as u64, false)
        }
    }

    /// Renders exactly `places` fractional digits, e.g. `-0.0500` for four.
    pub fn to_fixed_string(&self, places: u32) -> String {
        let m = self.round_to_places(i64::from(places));
        let negative = m.is_negative();
        let digits = m.abs().to_string();
        let places = places as usize;
        let padded = if digits.len() <= places {
            format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = padded.split_at(padded.len() - places);
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(int_part);
        if places > 0 {
            out.push('.');
            out.push_str(frac_part);
        }
        out
    }

    /// Significant digits and decimal exponent after rounding to `digits`
    /// places: value = 0.d1d2..dn * 10^e.
    fn significand(&self, digits: u32) -> (String, i64) {
        let e = self.exponent().expect("nonzero");
        let places = i64::from(digits) - e;
        let mut m = self.round_to_places(places).abs();
        let mut e = e;
        if digit_count_int(&m) > u64::from(digits) {
            m /= 10;
            e += 1;
        }
        (m.to_string(), e)
    }

    /// Renders exactly `digits` significant digits (trailing zeros kept).
    /// Plain notation for magnitudes in `[1e-6, 1e9)`, scientific otherwise.
    pub fn to_sig_string(&self, digits: u32) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let (ds, e) = self.significand(digits);
        render(self.is_negative(), &ds, e)
    }

    /// Approximate conversion, mostly for reporting and plotting.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exponent().expect("nonzero");
        let m = self.round_to_places(17 - e);
        format!("{}e{}", m, e - 17)
            .parse()
            .expect("formatted float parses")
    }

    fn cmp_magnitude(&self, other: &Real) -> Ordering {
        match (self.exponent(), other.exponent()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) if a != b => a.cmp(&b),
            _ => {
                let s = self.scale.max(other.scale);
                let a = self.mantissa.abs() * pow10_int((s - self.scale) as u64);
                let b = other.mantissa.abs() * pow10_int((s - other.scale) as u64);
                a.cmp(&b)
            }
        }
    }
}

fn render(negative: bool, ds: &str, e: i64) -> String {
    let n = ds.len() as i64;
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-5..=9).contains(&e) {
        if e <= 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-e) as usize));
            out.push_str(ds);
        } else if e >= n {
            out.push_str(ds);
            out.extend(std::iter::repeat_n('0', (e - n) as usize));
        } else {
            out.push_str(&ds[..e as usize]);
            out.push('.');
            out.push_str(&ds[e as usize..]);
        }
    } else {
        out.push_str(&ds[..1]);
        if n > 1 {
            out.push('.');
            out.push_str(&ds[1..]);
        }
        out.push('e');
        out.push_str(&(e - 1).to_string());
    }
    out
}

/// Shortest rendering that round-trips at the context's target digits.
impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let (ds, e) = self.significand(self.ctx.digits());
        let trimmed = ds.trim_end_matches('0');
        f.write_str(&render(self.is_negative(), trimmed, e))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.mantissa.sign(), other.mantissa.sign());
        if sa != sb {
            let rank = |s: Sign| match s {
                Sign::Minus => 0,
                Sign::NoSign => 1,
                Sign::Plus => 2,
            };
            return rank(sa).cmp(&rank(sb));
        }
        let mag = self.cmp_magnitude(other);
        if sa == Sign::Minus {
            mag.reverse()
        } else {
            mag
        }
    }
}

fn add_impl(a: &Real, b: &Real) -> Real {
    let ctx = a.ctx.finer(b.ctx);
    let working = i64::from(ctx.working_digits());
    let (ea, eb) = match (a.exponent(), b.exponent()) {
        (None, _) => return b.with_context(ctx),
        (_, None) => return a.with_context(ctx),
        (Some(x), Some(y)) => (x, y),
    };
    let (big, small, e_small) = if ea >= eb { (a, b, eb) } else { (b, a, ea) };
    // An operand far below the rounding point only decides direction.
    let cutoff = big.scale + working + 5;
    if e_small <= -(cutoff - 1) {
        let m = &big.mantissa * pow10_int((cutoff - big.scale) as u64)
            + small.mantissa.signum();
        return Real::from_parts(m, cutoff, ctx, false);
    }
    let s = a.scale.max(b.scale);
    let m = &a.mantissa * pow10_int((s - a.scale) as u64)
        + &b.mantissa * pow10_int((s - b.scale) as u64);
    Real::from_parts(m, s, ctx, false)
}

fn mul_impl(a: &Real, b: &Real) -> Real {
    let ctx = a.ctx.finer(b.ctx);
    Real::from_parts(&a.mantissa * &b.mantissa, a.scale + b.scale, ctx, false)
}

fn div_impl(a: &Real, b: &Real) -> Real {
    let ctx = a.ctx.finer(b.ctx);
    let eb = b.exponent().expect("division by zero");
    let Some(ea) = a.exponent() else {
        return Real::zero(ctx);
    };
    let working = i64::from(ctx.working_digits());
    let t0 = (working + 2).max(working - (ea - eb)) + 2;
    let k = t0 - a.scale + b.scale;
    let (num, den) = if k >= 0 {
        (&a.mantissa * pow10_int(k as u64), b.mantissa.clone())
    } else {
        (a.mantissa.clone(), &b.mantissa * pow10_int((-k) as u64))
    };
    let (q, r) = num.div_rem(&den);
    Real::from_parts(q, t0, ctx, !r.is_zero())
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            mantissa: -self.mantissa,
            ..self
        }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        -(self.clone())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:expr) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                $imp(self, rhs)
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                $imp(&self, &rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                $imp(&self, rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                $imp(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, |a: &Real, b: &Real| add_impl(a, &-b));
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);
