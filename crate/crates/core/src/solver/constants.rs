//! Exact list sizes from the existence argument.

use num_bigint::BigUint;

use crate::{Error, Result};

/// Bit length beyond which the values are refused.
const MAX_BITS: u64 = 1 << 22;

/// `32 ell^3 + 1`.
pub fn paper_list_size(ell: &BigUint) -> BigUint {
    ell.pow(3) * 32u32 + 1u32
}

/// `f(ell, 0) = 32 ell^3 + 1` and `f(ell, h) = f(32 (32 ell^3 + 1)^3 + 1, h - 1)`.
pub fn paper_f(ell: u64, h: u32) -> Result<BigUint> {
    let mut x = BigUint::from(ell);
    for _ in 0..=2 * h as u64 {
        if x.bits().saturating_mul(3) + 6 > MAX_BITS {
            return Err(Error::SizeLimit {
                what: "bits of f(ell, h)",
                actual: x.bits() as u128 * 3,
                limit: MAX_BITS as u128,
            });
        }
        x = paper_list_size(&x);
    }
    Ok(x)
}

/// `b(k) = f(2k + 1, 2k)`.
pub fn paper_b(k: u32) -> Result<BigUint> {
    paper_f(2 * k as u64 + 1, 2 * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(paper_f(1, 0).unwrap(), BigUint::from(33u32));
        assert_eq!(paper_f(2, 0).unwrap(), BigUint::from(257u32));
        assert_eq!(paper_b(0).unwrap(), BigUint::from(33u32));
        assert!(paper_f(1, 40).is_err());
    }
}
