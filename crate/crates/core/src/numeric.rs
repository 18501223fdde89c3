//! Certified real arithmetic on powers of big rationals.
//!
//! Values of the form `X^(p/q)` with `X` a positive rational are kept
//! symbolically as [`RealPower`]. Decimal output and comparisons go through
//! dyadic enclosures `[lo, hi] * 2^scale` whose mantissas are truncated
//! outward, so every printed digit and every ordering decision is proven
//! rather than estimated. Exact big-integer cross powers are the fallback
//! when enclosures cannot separate two values.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Mantissa width of the first enclosure attempt.
pub const START_PRECISION_BITS: u64 = 128;
/// Give up escalating beyond this mantissa width.
pub const MAX_PRECISION_BITS: u64 = 1 << 22;
/// Default budget for exact cross-power comparisons, in decimal digits.
pub const DEFAULT_DIGIT_BUDGET: u64 = 1_000_000;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Dyadic interval `[lo * 2^scale, hi * 2^scale]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: BigUint,
    hi: BigUint,
    scale: i64,
}

fn shr_ceil(x: &BigUint, shift: u64) -> BigUint {
    let q = x >> shift;
    if &(&q << shift) == x {
        q
    } else {
        q + 1u32
    }
}

/// Compare `x * 2^sx` with `y * 2^sy`.
fn cmp_scaled(x: &BigUint, sx: i64, y: &BigUint, sy: i64) -> Ordering {
    match (x.is_zero(), y.is_zero()) {
        (true, true) => return Ordering::Equal,
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        _ => {}
    }
    let top_x = x.bits() as i64 + sx;
    let top_y = y.bits() as i64 + sy;
    if top_x != top_y {
        return top_x.cmp(&top_y);
    }
    if sx >= sy {
        (x << (sx - sy) as u64).cmp(y)
    } else {
        x.cmp(&(y << (sy - sx) as u64))
    }
}

impl Enclosure {
    fn normalized(lo: BigUint, hi: BigUint, scale: i64, prec: u64) -> Self {
        let bits = hi.bits();
        if bits <= prec {
            return Enclosure { lo, hi, scale };
        }
        let shift = bits - prec;
        Enclosure { lo: lo >> shift, hi: shr_ceil(&hi, shift), scale: scale + shift as i64 }
    }

    pub fn from_biguint(x: &BigUint, prec: u64) -> Self {
        Self::normalized(x.clone(), x.clone(), 0, prec)
    }

    /// Enclosure of `num / den`; `den` must be nonzero.
    pub fn from_ratio(num: &BigUint, den: &BigUint, prec: u64) -> Self {
        if den.is_one() {
            return Self::from_biguint(num, prec);
        }
        let shift = prec as i64 + den.bits() as i64 - num.bits() as i64 + 1;
        let (q, rem) =
            if shift >= 0 { (num << shift as u64).div_rem(den) } else { num.div_rem(&(den << (-shift) as u64)) };
        let hi = if rem.is_zero() { q.clone() } else { &q + 1u32 };
        Self::normalized(q, hi, -shift, prec)
    }

    pub fn lo(&self) -> (&BigUint, i64) {
        (&self.lo, self.scale)
    }

    pub fn hi(&self) -> (&BigUint, i64) {
        (&self.hi, self.scale)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn mul(&self, other: &Enclosure, prec: u64) -> Enclosure {
        Self::normalized(&self.lo * &other.lo, &self.hi * &other.hi, self.scale + other.scale, prec)
    }

    pub fn pow(&self, mut e: u64, prec: u64) -> Enclosure {
        let mut acc = Enclosure::from_biguint(&BigUint::one(), prec);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, prec);
            }
        }
        acc
    }

    /// Enclosure of the `q`-th root, with roughly `prec` mantissa bits.
    pub fn root(&self, q: u64, prec: u64) -> Enclosure {
        assert!(q >= 1, "root index must be positive");
        if q == 1 {
            return self.clone();
        }
        let q_i = q as i64;
        let rem = self.scale.rem_euclid(q_i) as u64;
        let mut scale = self.scale.div_euclid(q_i);
        let mut lo = &self.lo << rem;
        let mut hi = &self.hi << rem;
        let extra = (prec as i64 + 2) - (hi.bits() / q) as i64;
        if extra > 0 {
            lo <<= extra as u64 * q;
            hi <<= extra as u64 * q;
        } else if extra < 0 {
            let shift = (-extra) as u64 * q;
            lo >>= shift;
            hi = shr_ceil(&hi, shift);
        }
        scale -= extra;
        let root_lo = lo.nth_root(q as u32);
        let mut root_hi = hi.nth_root(q as u32);
        if Pow::pow(&root_hi, q as u32) != hi {
            root_hi += 1u32;
        }
        Self::normalized(root_lo, root_hi, scale, prec)
    }

    /// Decided ordering, or `None` when the intervals overlap.
    pub fn decide(&self, other: &Enclosure) -> Option<Ordering> {
        if cmp_scaled(&self.hi, self.scale, &other.lo, other.scale) == Ordering::Less {
            return Some(Ordering::Less);
        }
        if cmp_scaled(&self.lo, self.scale, &other.hi, other.scale) == Ordering::Greater {
            return Some(Ordering::Greater);
        }
        if self.is_exact()
            && other.is_exact()
            && cmp_scaled(&self.lo, self.scale, &other.lo, other.scale) == Ordering::Equal
        {
            return Some(Ordering::Equal);
        }
        None
    }

    /// Midpoint as an `f64` (for display and diagnostics only).
    pub fn approx_f64(&self) -> f64 {
        let bits = self.hi.bits();
        let shift = bits.saturating_sub(60);
        let m = (&self.hi >> shift).to_f64().unwrap_or(f64::NAN);
        m * (2f64).powf((self.scale + shift as i64) as f64)
    }
}

/// `round(x * 2^scale * 10^k)`, half away from zero.
fn round_scaled_decimal(x: &BigUint, scale: i64, k: i64) -> BigUint {
    let mut num = x.clone();
    let mut den = BigUint::one();
    if scale >= 0 {
        num <<= scale as u64;
    } else {
        den <<= (-scale) as u64;
    }
    let ten = BigUint::from(10u32);
    if k >= 0 {
        num *= Pow::pow(&ten, k as u64);
    } else {
        den *= Pow::pow(&ten, (-k) as u64);
    }
    (num * 2u32 + &den) / (den * 2u32)
}

fn round_rational_decimal(x: &BigRational, k: i64) -> BigUint {
    let ten = BigInt::from(10);
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    if k >= 0 {
        num *= Pow::pow(&ten, k as u64);
    } else {
        den *= Pow::pow(&ten, (-k) as u64);
    }
    let r: BigInt = Integer::div_floor(&(num * 2 + &den), &(den * 2));
    r.to_biguint().unwrap_or_default()
}

/// Render `n * 10^-k` with exactly `digits` significant digits.
fn format_significant(n: &BigUint, k: i64, digits: usize) -> String {
    let s = n.to_string();
    let exp10 = s.len() as i64 - 1 - k;
    if !(-6..21).contains(&exp10) {
        let (head, tail) = s.split_at(1);
        return if tail.is_empty() { format!("{head}e{exp10}") } else { format!("{head}.{tail}e{exp10}") };
    }
    debug_assert!(s.len() == digits || n.is_zero());
    format_fixed(n, k)
}

/// Render `n * 10^-k` in plain positional notation.
fn format_fixed(n: &BigUint, k: i64) -> String {
    let s = n.to_string();
    if k <= 0 {
        let mut out = s;
        out.extend(std::iter::repeat_n('0', (-k) as usize));
        return out;
    }
    let k = k as usize;
    if s.len() > k {
        let (int, frac) = s.split_at(s.len() - k);
        format!("{int}.{frac}")
    } else {
        format!("0.{}{}", "0".repeat(k - s.len()), s)
    }
}

/// Natural logarithm of a big integer as `f64` (relative error ~1e-16).
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Render a rational as `"p"` or `"p/q"`.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn format_ratio_u64(x: &Ratio<u64>) -> String {
    if *x.denom() == 1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"p"` or `"p/q"` (also accepts a finite decimal such as `"3.605"`).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let p: BigInt = digits.parse().map_err(|_| bad())?;
        let q = Pow::pow(&BigInt::from(10), frac.len() as u64);
        return Ok(BigRational::new(p, q));
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

/// Exact `x^e` for a rational and a machine exponent.
pub fn rational_pow(x: &BigRational, e: u64) -> BigRational {
    BigRational::new_raw(Pow::pow(x.numer(), e), Pow::pow(x.denom(), e))
}

fn to_biguint_parts(x: &BigRational) -> (BigUint, BigUint) {
    let (_, n) = x.numer().clone().into_parts();
    let (_, d) = x.denom().clone().into_parts();
    (n, d)
}

/// The real number `base^exponent` with `base > 0` rational and `exponent >= 0` rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealPower {
    base: BigRational,
    exponent: Ratio<u64>,
}

impl RealPower {
    pub fn new(base: BigRational, exponent: Ratio<u64>) -> Result<Self> {
        if base.numer().sign() != Sign::Plus {
            return Err(Error::InvalidParams(format!("power base must be positive, got {}", format_rational(&base))));
        }
        Ok(RealPower { base, exponent })
    }

    pub fn from_integer(base: BigUint, exponent: Ratio<u64>) -> Result<Self> {
        Self::new(BigRational::from_integer(BigInt::from(base)), exponent)
    }

    pub fn rational(x: BigRational) -> Result<Self> {
        Self::new(x, Ratio::from_integer(1))
    }

    pub fn base(&self) -> &BigRational {
        &self.base
    }

    pub fn exponent(&self) -> Ratio<u64> {
        self.exponent
    }

    /// `self^(1/q)`.
    pub fn nth_root(&self, q: u64) -> RealPower {
        RealPower { base: self.base.clone(), exponent: self.exponent / Ratio::from_integer(q) }
    }

    /// Upper bound on the bit size of the exact value `base^p`.
    fn power_bits(&self) -> u64 {
        let (n, d) = to_biguint_parts(&self.base);
        n.bits().max(d.bits()).saturating_mul(*self.exponent.numer())
    }

    /// The value itself when it is rational.
    pub fn exact_value(&self) -> Option<BigRational> {
        let p = *self.exponent.numer();
        let q = *self.exponent.denom();
        if p == 0 {
            return Some(BigRational::one());
        }
        let (n, d) = to_biguint_parts(&self.base);
        let q32 = u32::try_from(q).ok()?;
        let rn = n.nth_root(q32);
        let rd = d.nth_root(q32);
        if Pow::pow(&rn, q32) != n || Pow::pow(&rd, q32) != d {
            return None;
        }
        if self.power_bits() / q > 64 * 1024 * 1024 {
            return None;
        }
        Some(BigRational::new(Pow::pow(BigInt::from(rn), p), Pow::pow(BigInt::from(rd), p)))
    }

    pub fn enclosure(&self, prec: u64) -> Enclosure {
        let p = *self.exponent.numer();
        let q = *self.exponent.denom();
        let guard = 16 + 2 * (64 - p.leading_zeros() as u64);
        let work = prec + guard;
        let (n, d) = to_biguint_parts(&self.base);
        Enclosure::from_ratio(&n, &d, work).pow(p, work).root(q, work)
    }

    /// Natural logarithm as `f64`.
    pub fn ln(&self) -> f64 {
        let (n, d) = to_biguint_parts(&self.base);
        let e = *self.exponent.numer() as f64 / *self.exponent.denom() as f64;
        e * (ln_biguint(&n) - ln_biguint(&d))
    }

    pub fn approx_f64(&self) -> f64 {
        self.ln().exp()
    }

    /// Correctly rounded decimal with `digits` significant digits.
    pub fn to_significant(&self, digits: usize) -> Result<String> {
        let digits = digits.max(1);
        let ln10 = std::f64::consts::LN_10;
        let mut k = digits as i64 - 1 - (self.ln() / ln10).floor() as i64;
        if let Some(x) = self.exact_value() {
            for _ in 0..4 {
                let n = round_rational_decimal(&x, k);
                let len = n.to_string().len();
                if len > digits {
                    k -= 1;
                } else if len < digits && !n.is_zero() {
                    k += 1;
                } else {
                    return Ok(format_significant(&n, k, digits));
                }
            }
            return Err(Error::Precision("failed to normalize exact decimal".into()));
        }
        let mut prec = START_PRECISION_BITS.max(digits as u64 * 4 + 64);
        while prec <= MAX_PRECISION_BITS {
            let enc = self.enclosure(prec);
            let mut settled = None;
            for _ in 0..4 {
                let lo = round_scaled_decimal(&enc.lo, enc.scale, k);
                let len = lo.to_string().len();
                if len > digits {
                    k -= 1;
                } else if len < digits && !lo.is_zero() {
                    k += 1;
                } else {
                    settled = Some(lo);
                    break;
                }
            }
            if let Some(lo) = settled {
                let hi = round_scaled_decimal(&enc.hi, enc.scale, k);
                if lo == hi {
                    return Ok(format_significant(&lo, k, digits));
                }
            }
            prec *= 2;
        }
        Err(Error::Precision(format!("could not certify {digits} significant digits")))
    }

    /// Correctly rounded decimal with `decimals` digits after the point.
    pub fn to_fixed(&self, decimals: usize) -> Result<String> {
        let k = decimals as i64;
        if let Some(x) = self.exact_value() {
            return Ok(format_fixed(&round_rational_decimal(&x, k), k));
        }
        let magnitude = (self.ln() / std::f64::consts::LN_2).max(0.0) as u64;
        let mut prec = START_PRECISION_BITS.max(magnitude + (decimals as f64 * LOG2_10) as u64 + 64);
        while prec <= MAX_PRECISION_BITS {
            let enc = self.enclosure(prec);
            let lo = round_scaled_decimal(&enc.lo, enc.scale, k);
            let hi = round_scaled_decimal(&enc.hi, enc.scale, k);
            if lo == hi {
                return Ok(format_fixed(&lo, k));
            }
            prec *= 2;
        }
        Err(Error::Precision(format!("could not certify {decimals} decimals")))
    }

    /// Exact ordering against another power.
    ///
    /// Structural shortcuts first, then enclosures of growing width, then
    /// exact cross powers when their size fits `digit_budget`.
    pub fn compare(&self, other: &RealPower, digit_budget: u64) -> Result<Ordering> {
        if self.exponent == other.exponent {
            if self.exponent.numer() == &0 {
                return Ok(Ordering::Equal);
            }
            return Ok(self.base.cmp(&other.base));
        }
        let one = BigRational::one();
        if self.base == other.base {
            return Ok(match self.base.cmp(&one) {
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => self.exponent.cmp(&other.exponent),
                Ordering::Less => other.exponent.cmp(&self.exponent),
            });
        }
        let mut prec = START_PRECISION_BITS;
        while prec <= 4096 {
            if let Some(ord) = self.enclosure(prec).decide(&other.enclosure(prec)) {
                return Ok(ord);
            }
            prec *= 2;
        }
        // Cross powers: compare base1^(p1 q2) with base2^(p2 q1).
        let e1 = self.exponent.numer().checked_mul(*other.exponent.denom());
        let e2 = other.exponent.numer().checked_mul(*self.exponent.denom());
        if let (Some(e1), Some(e2)) = (e1, e2) {
            let (n1, d1) = to_biguint_parts(&self.base);
            let (n2, d2) = to_biguint_parts(&other.base);
            let bits = (n1.bits() + d2.bits())
                .saturating_mul(e1.max(e2))
                .max((n2.bits() + d1.bits()).saturating_mul(e1.max(e2)));
            if (bits as f64) / LOG2_10 <= digit_budget as f64 {
                let lhs = Pow::pow(&n1, e1) * Pow::pow(&d2, e2);
                let rhs = Pow::pow(&n2, e2) * Pow::pow(&d1, e1);
                return Ok(lhs.cmp(&rhs));
            }
        }
        while prec <= MAX_PRECISION_BITS {
            if let Some(ord) = self.enclosure(prec).decide(&other.enclosure(prec)) {
                return Ok(ord);
            }
            prec *= 2;
        }
        Err(Error::Precision("values could not be separated".into()))
    }

    /// Exact ordering against a rational constant.
    pub fn cmp_rational(&self, c: &BigRational) -> Result<Ordering> {
        self.compare(&RealPower::rational(c.clone())?, DEFAULT_DIGIT_BUDGET)
    }

    /// Whether the value lies in the closed interval `[lo, hi]`.
    pub fn within(&self, lo: &BigRational, hi: &BigRational) -> Result<bool> {
        Ok(self.cmp_rational(lo)? != Ordering::Less && self.cmp_rational(hi)? != Ordering::Greater)
    }
}

impl fmt::Display for RealPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^({})", format_rational(&self.base), format_ratio_u64(&self.exponent))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(base: u64, p: u64, q: u64) -> RealPower {
        RealPower::from_integer(BigUint::from(base), Ratio::new(p, q)).unwrap()
    }

    fn rat(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    // Reference digits from an independent 50-digit evaluation.
    #[test]
    fn significant_digits_match_reference() {
        assert_eq!(rp(18, 3, 10).to_significant(20).unwrap(), "2.3800262745964406460");
        assert_eq!(rp(200, 5, 18).to_significant(20).unwrap(), "4.3568739839010378810");
        assert_eq!(rp(102, 1, 6).to_significant(12).unwrap(), "2.16155701483");
        assert_eq!(rp(2, 1, 2).to_significant(30).unwrap(), "1.41421356237309504880168872421");
        assert_eq!(rp(2700, 5, 18).to_significant(10).unwrap(), "8.977524544");
        assert_eq!(rp(10, 1, 3).to_significant(5).unwrap(), "2.1544");
    }

    #[test]
    fn fixed_decimals() {
        assert_eq!(rp(102, 1, 6).to_fixed(4).unwrap(), "2.1616");
        assert_eq!(rp(18, 3, 10).to_fixed(2).unwrap(), "2.38");
        assert_eq!(rp(4, 1, 2).to_fixed(3).unwrap(), "2.000");
    }

    #[test]
    fn exact_values_print_exactly() {
        assert_eq!(rp(4, 1, 2).to_significant(5).unwrap(), "2.0000");
        assert_eq!(rp(1000, 1, 3).to_significant(3).unwrap(), "10.0");
        assert_eq!(rp(8, 2, 3).exact_value(), Some(rat("4")));
        assert_eq!(rp(2, 1, 2).exact_value(), None);
        let quarter = RealPower::new(rat("1/16"), Ratio::new(1, 2)).unwrap();
        assert_eq!(quarter.to_significant(3).unwrap(), "0.250");
    }

    #[test]
    fn huge_values_use_scientific_notation() {
        let s = rp(10, 100, 1).to_significant(3).unwrap();
        assert_eq!(s, "1.00e100");
        let s = rp(7, 1000, 3).to_significant(6).unwrap();
        assert!(s.ends_with("e281"), "{s}");
    }

    #[test]
    fn comparisons() {
        let a = rp(18, 3, 10);
        assert_eq!(a.cmp_rational(&rat("2.38")).unwrap(), Ordering::Greater);
        assert_eq!(a.cmp_rational(&rat("2.381")).unwrap(), Ordering::Less);
        assert_eq!(rp(4, 1, 2).cmp_rational(&rat("2")).unwrap(), Ordering::Equal);
        assert_eq!(rp(2, 1, 2).compare(&rp(4, 1, 4), 1000).unwrap(), Ordering::Equal);
        assert_eq!(rp(18, 3, 10).compare(&rp(6, 1, 2), 1000).unwrap(), Ordering::Less);
        assert_eq!(rp(2, 1, 2).compare(&rp(2, 1, 3), 1000).unwrap(), Ordering::Greater);
        assert!(a.within(&rat("2.38"), &rat("2.39")).unwrap());
    }

    #[test]
    fn equal_values_in_different_forms() {
        // 8^(1/3) = 2 = 4^(1/2): enclosures overlap, exact route decides.
        assert_eq!(rp(8, 1, 3).compare(&rp(4, 1, 2), 1000).unwrap(), Ordering::Equal);
    }

    #[test]
    fn enclosure_contains_value() {
        let enc = rp(2, 1, 2).enclosure(64);
        let two = BigUint::from(2u32);
        let (lo, s) = enc.lo();
        let (hi, _) = enc.hi();
        // lo^2 * 2^(2s) <= 2 <= hi^2 * 2^(2s)
        assert_ne!(cmp_scaled(&(lo * lo), 2 * s, &two, 0), Ordering::Greater);
        assert_ne!(cmp_scaled(&(hi * hi), 2 * s, &two, 0), Ordering::Less);
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(format_rational(&rat("6/4")), "3/2");
        assert_eq!(format_rational(&rat("18")), "18");
        assert_eq!(rat("3.605"), BigRational::new(721.into(), 200.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn ln_of_large_integers() {
        let x = Pow::pow(BigUint::from(10u32), 2000u32);
        assert!((ln_biguint(&x) - 2000.0 * std::f64::consts::LN_10).abs() < 1e-9);
    }
}
