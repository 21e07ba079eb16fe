//! Real-number parsing that also accepts fractions such as `1/8` or `-3/4`.

use crate::error::{Error, Result};

/// Parses a decimal (`0.125`, `1e-3`) or a fraction of two integers
/// (`1/8`). Fractions are divided in double precision after an exact
/// integer parse.
pub fn parse_real(s: &str) -> Result<f64> {
    let t = s.trim();
    let bad = || Error::Number(s.to_string());
    let x = match t.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            num as f64 / den as f64
        }
        None => t.parse::<f64>().map_err(|_| bad())?,
    };
    if x.is_finite() {
        Ok(x)
    } else {
        Err(bad())
    }
}

/// Parses `lo,hi` or `lo..hi`.
pub fn parse_range(s: &str) -> Result<(f64, f64)> {
    let (lo, hi) = s
        .split_once("..")
        .or_else(|| s.split_once(','))
        .ok_or_else(|| Error::Number(s.to_string()))?;
    Ok((parse_real(lo)?, parse_real(hi)?))
}

/// Parses a list of unsigned integers: `1,2,4` or an inclusive span `1..6`.
pub fn parse_uint_list(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::Number(s.to_string());
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect()
}
