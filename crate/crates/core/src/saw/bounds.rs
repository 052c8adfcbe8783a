use num_traits::Float;

use crate::error::{Error, Result};

use super::observable::chi;

/// `√(2+√2)`.
pub fn hexagonal_connective_constant<T: Float>() -> T {
    let two = T::one() + T::one();
    (two + two.sqrt()).sqrt()
}

/// `2·Π_{T=1}^{t_max} (1+υ_T)²` with `upsilon[T-1] = υ_T`.
pub fn hammersley_welsh_bound<T: Float>(x: T, t_max: usize, upsilon: &[T]) -> Result<T> {
    if !(x > T::zero() && x <= chi::<T>() * (T::one() + T::epsilon())) {
        return Err(Error::invalid("x must lie in (0, χ]"));
    }
    if upsilon.len() < t_max {
        return Err(Error::invalid(format!("need υ_T for T ≤ {t_max}, got {}", upsilon.len())));
    }
    let two = T::one() + T::one();
    Ok(upsilon[..t_max].iter().fold(two, |acc, &u| acc * (T::one() + u) * (T::one() + u)))
}

/// Root `y > 1` of `1/y² + 1/y³ = 1/κ_hex`, the connective constant of the
/// 3-12-2 lattice, by bisection.
pub fn fisher_lattice_constant<T: Float>(kappa_hex: T) -> Result<T> {
    if !(kappa_hex > T::one()) {
        return Err(Error::invalid("kappa_hex must exceed 1 for a root bracket"));
    }
    let g = |y: T| T::one() / (y * y) + T::one() / (y * y * y) - T::one() / kappa_hex;
    let mut lo = T::one();
    let mut hi = T::one() + T::one();
    while g(hi) > T::zero() {
        hi = hi + hi;
    }
    let tol = T::from(1e-13).unwrap();
    for _ in 0..400 {
        let mid = (lo + hi) / (T::one() + T::one());
        if g(mid) > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < tol {
            break;
        }
    }
    Ok((lo + hi) / (T::one() + T::one()))
}
