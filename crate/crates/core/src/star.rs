//! Valid colorings of a star with one edge's color fixed.
//!
//! `f(a)` counts the colorings of a star with `a` edges (the fixed edge
//! included) where the fixed color appears at most `t-2` more times and every
//! other color at most `t-1` times. Note the indexing: `a` is the full edge
//! count, so only `a - 1` edges are free.

use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combin::{binomial, factorial};
use crate::error::{Error, Result};
use crate::params::ForbidParams;

/// Generic distribution DP over colors.
///
/// `ways[j]` is the number of ways the colors handled so far cover `j` of the
/// labelled free edges; color `i` may take up to `cap(i)` more.
pub fn f_star(p: &ForbidParams, a: u32) -> Result<BigUint> {
    if a == 0 {
        return Err(Error::InvalidParams("star must have at least one edge".into()));
    }
    let free = (a - 1) as usize;
    let capacity = (p.t() - 2) as usize + (p.r() - 1) as usize * (p.t() - 1) as usize;
    if free > capacity {
        return Ok(BigUint::zero());
    }
    let mut ways = vec![BigUint::zero(); free + 1];
    ways[0] = BigUint::one();
    for color in 0..p.r() {
        let cap = if color == 0 { p.t() - 2 } else { p.t() - 1 } as usize;
        let mut next = vec![BigUint::zero(); free + 1];
        for (j, w) in ways.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for s in 0..=cap.min(free - j) {
                next[j + s] += w * binomial((free - j) as u64, s as i64);
            }
        }
        ways = next;
    }
    Ok(ways.swap_remove(free))
}

/// Two colors: `sum_{k = max(0, a-t)}^{t-2} C(a-1, k)`, zero on an empty range.
pub fn f_star_two_colors(t: u32, a: u32) -> Result<BigUint> {
    if t < 2 || a == 0 {
        return Err(Error::InvalidParams(format!("need t >= 2 and a >= 1, got t={t}, a={a}")));
    }
    let lo = (i64::from(a) - i64::from(t)).max(0);
    let hi = i64::from(t) - 2;
    Ok((lo..=hi).map(|k| binomial(u64::from(a) - 1, k)).sum())
}

/// Closed forms for `t = 3` at the top of the degree range:
///
/// * `f(2r-1) = (2r-1)! / 2^(r-1)`
/// * `f(2r-2) = r (2r-2)! / 2^(r-1)`
/// * `f(2r-3) = (r+1)(2r-2)! / (3 * 2^(r-1))`
pub fn f_star_t3_closed(r: u32, a: u32) -> Result<BigUint> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("need r >= 2, got {r}")));
    }
    let r64 = u64::from(r);
    let two_pow = BigUint::one() << (r64 - 1);
    let (num, den) = if a + 1 == 2 * r {
        (factorial(2 * r64 - 1), two_pow)
    } else if a + 2 == 2 * r {
        (factorial(2 * r64 - 2) * r64, two_pow)
    } else if a + 3 == 2 * r {
        (factorial(2 * r64 - 2) * (r64 + 1), two_pow * 3u32)
    } else {
        return Err(Error::InvalidParams(format!("closed form covers a in {{2r-3, 2r-2, 2r-1}}, got a={a} for r={r}")));
    };
    let (q, rem) = num_integer::Integer::div_rem(&num, &den);
    debug_assert!(rem.is_zero());
    Ok(q)
}

/// `t = 3`: exact sum over color-multiplicity patterns.
///
/// Split on whether the fixed color is used again (`c1` in `{0, 1}`), then on
/// the number `s` of other colors used twice. Each pattern contributes
/// `(a-1)! (r-1)! / (2^s s! (a-1-c1-2s)! (r-a+c1+s)!)`.
pub fn f_star_t3_profile_sum(r: u32, a: u32) -> Result<BigUint> {
    if r < 2 || a == 0 {
        return Err(Error::InvalidParams(format!("need r >= 2 and a >= 1, got r={r}, a={a}")));
    }
    let (r, a) = (i64::from(r), i64::from(a));
    let top = factorial((a - 1) as u64) * factorial((r - 1) as u64);
    let mut total = BigUint::zero();
    for c1 in 0..=1i64 {
        for s in 0..=a {
            let ones = a - 1 - c1 - 2 * s;
            let zeros = r - a + c1 + s;
            if ones < 0 || zeros < 0 {
                continue;
            }
            let den =
                (BigUint::one() << s as u64) * factorial(s as u64) * factorial(ones as u64) * factorial(zeros as u64);
            total += &top / den;
        }
    }
    Ok(total)
}

/// Enumerate all `r^(a-1)` colorings of the free edges.
pub fn f_star_brute(p: &ForbidParams, a: u32) -> Result<BigUint> {
    if a == 0 {
        return Err(Error::InvalidParams("star must have at least one edge".into()));
    }
    let free = a - 1;
    let r = p.r() as usize;
    if (free as f64) * (r as f64).log2() > 32.0 {
        return Err(Error::Budget(format!("{r}^{free} assignments")));
    }
    let mut digits = vec![0usize; free as usize];
    // Color 0 is the fixed edge's color; every digit starts at 0.
    let mut uses = vec![0u32; r];
    uses[0] = 1 + free;
    let cap = p.t() - 1;
    let mut count: u64 = 0;
    loop {
        if uses.iter().all(|&u| u <= cap) {
            count += 1;
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(BigUint::from(count));
            }
            uses[digits[i]] -= 1;
            digits[i] += 1;
            if digits[i] == r {
                digits[i] = 0;
                uses[0] += 1;
                i += 1;
            } else {
                uses[digits[i]] += 1;
                break;
            }
        }
    }
}

/// Which evaluation route to use for `f(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FMethod {
    Auto,
    Dp,
    TwoColor,
    T3Closed,
    T3Profile,
    Brute,
}

impl FromStr for FMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => FMethod::Auto,
            "dp" => FMethod::Dp,
            "two-color" => FMethod::TwoColor,
            "t3-closed" => FMethod::T3Closed,
            "t3-profile" => FMethod::T3Profile,
            "brute" => FMethod::Brute,
            _ => return Err(Error::Parse(format!("unknown method {s:?}"))),
        })
    }
}

impl std::fmt::Display for FMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FMethod::Auto => "auto",
            FMethod::Dp => "dp",
            FMethod::TwoColor => "two-color",
            FMethod::T3Closed => "t3-closed",
            FMethod::T3Profile => "t3-profile",
            FMethod::Brute => "brute",
        })
    }
}

/// Evaluate `f(a)` by the requested route. `Auto` means the DP.
///
/// Routes restricted to `r = 2` or `t = 3` reject other parameters.
pub fn f_with(p: &ForbidParams, a: u32, method: FMethod) -> Result<BigUint> {
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("method requires {what}, got {p}")))
        }
    };
    match method {
        FMethod::Auto | FMethod::Dp => f_star(p, a),
        FMethod::TwoColor => {
            need(p.r() == 2, "r = 2")?;
            f_star_two_colors(p.t(), a)
        }
        FMethod::T3Closed => {
            need(p.t() == 3, "t = 3")?;
            f_star_t3_closed(p.r(), a)
        }
        FMethod::T3Profile => {
            need(p.t() == 3, "t = 3")?;
            f_star_t3_profile_sum(p.r(), a)
        }
        FMethod::Brute => f_star_brute(p, a),
    }
}
