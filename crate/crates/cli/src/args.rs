//! Parsing of probabilities, rectangles and sweep ranges.

use dgeom::scalar::parse_rational;
use dgeom::{Error, Rational, Result};
use num_traits::ToPrimitive;

pub fn rational(text: &str) -> Result<Rational> {
    parse_rational(text.trim())
}

pub fn float(text: &str) -> Result<f64> {
    rational(text)?.to_f64().ok_or_else(|| Error::invalid(format!("{text:?} is not representable")))
}

pub fn floats(text: &str) -> Result<Vec<f64>> {
    text.split(',').map(float).collect()
}

/// `WxH`.
pub fn dims(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::invalid(format!("expected WxH, got {text:?}"));
    let (w, h) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((w.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?))
}

/// `x0,y0,x1,y1`.
pub fn corners(text: &str) -> Result<[f64; 4]> {
    let v = floats(text)?;
    v.try_into().map_err(|_| Error::invalid(format!("expected x0,y0,x1,y1, got {text:?}")))
}

/// A grid `start:stop:step`, inclusive of `stop` up to rounding. Values are
/// printed back with the precision of the inputs.
pub fn range(text: &str) -> Result<Vec<String>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::invalid(format!("expected start:stop:step, got {text:?}")));
    }
    let (a, b, s) = (float(parts[0])?, float(parts[1])?, float(parts[2])?);
    if !(s > 0.0) || b < a {
        return Err(Error::invalid(format!("empty range {text:?}")));
    }
    let decimals = parts.iter().map(|p| p.split_once('.').map_or(0, |(_, f)| f.len())).max().unwrap_or(0);
    let count = ((b - a) / s + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| format!("{:.*}", decimals, a + i as f64 * s)).collect())
}

pub fn is_range(text: &str) -> bool {
    text.matches(':').count() == 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let r = range("0.40:0.60:0.02").unwrap();
        assert_eq!(r.len(), 11);
        assert_eq!(r[0], "0.40");
        assert_eq!(r[10], "0.60");
        assert_eq!(range("1:4:1").unwrap(), ["1", "2", "3", "4"]);
        assert!(range("0.6:0.4:0.1").is_err());
        assert!(range("0:1:0").is_err());
        assert!(range("0:1").is_err());
    }

    #[test]
    fn numbers() {
        assert_eq!(float("347/1000").unwrap(), 0.347);
        assert_eq!(rational("0.25").unwrap(), Rational::new(1.into(), 4.into()));
        assert_eq!(dims("17x16").unwrap(), (17, 16));
        assert!(dims("17").is_err());
        assert_eq!(corners("1,2,3,4").unwrap(), [1.0, 2.0, 3.0, 4.0]);
    }
}
