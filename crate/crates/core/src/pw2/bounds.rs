//! Counting side of the interval argument: witnesses are at most
//! `n (ell - 1)` but at least a harmonic-type sum that grows like `n ln n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, ToPrimitive};
use serde::Serialize;

/// `n ln n - 3n` and the log steps leading to it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogChain<F> {
    /// `n ln floor((n + 1) / 2) - (n + 1)`
    pub floor_log: F,
    /// `n ln(n / 2) - (n + 1)`
    pub half_log: F,
    /// `n ln n - 3n`
    pub final_bound: F,
}

pub fn log_chain<F: Float>(n: u64) -> LogChain<F> {
    let f = |x: u64| F::from(x).expect("integer fits the float type");
    let nf = f(n);
    let m = f(n.div_ceil(2));
    LogChain {
        floor_log: nf * m.ln() - (nf + F::one()),
        half_log: nf * (nf / f(2)).ln() - (nf + F::one()),
        final_bound: nf * nf.ln() - f(3) * nf,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessBounds {
    pub n: u64,
    pub ell: u64,
    /// `n (ell - 1)`
    pub upper: u64,
    /// `sum_k (2n - 4k - 1) / (2k + 1)`, exact.
    #[serde(serialize_with = "ser_ratio")]
    pub exact_sum: BigRational,
    /// `sum_k (n / (k + 1) - 2)`, exact.
    #[serde(serialize_with = "ser_ratio")]
    pub shifted_sum: BigRational,
    /// `n H_m - 2m` with `m = floor((n + 1) / 2)`, exact.
    #[serde(serialize_with = "ser_ratio")]
    pub harmonic: BigRational,
    pub logs: LogChain<f64>,
    /// Every step of the chain holds, as exact or float comparisons.
    pub chain_holds: bool,
    /// The exact sum exceeds `n (ell - 1)`.
    pub contradiction: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub fn count_witness_bounds(n: u64, ell: u64) -> WitnessBounds {
    let kmax = (n - 1) / 2;
    let mut exact = ratio(0, 1);
    let mut shifted = ratio(0, 1);
    for k in 0..=kmax {
        exact += ratio(2 * n - 4 * k - 1, 2 * k + 1);
        shifted += ratio(n, k + 1) - ratio(2, 1);
    }
    let m = n.div_ceil(2);
    let mut h = ratio(0, 1);
    for k in 1..=m {
        h += ratio(1, k);
    }
    let harmonic = h * BigInt::from(n) - ratio(2 * m, 1);
    let logs = log_chain::<f64>(n);
    let harmonic_f = harmonic.to_f64().unwrap_or(f64::INFINITY);
    let chain_holds = exact >= shifted
        && shifted >= harmonic
        && harmonic_f >= logs.floor_log
        && logs.floor_log >= logs.half_log
        && logs.half_log >= logs.final_bound;
    let upper = n * (ell - 1);
    WitnessBounds {
        n,
        ell,
        upper,
        contradiction: exact > ratio(upper, 1),
        exact_sum: exact,
        shifted_sum: shifted,
        harmonic,
        logs,
        chain_holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_sums() {
        assert_eq!(count_witness_bounds(1, 1).exact_sum, ratio(1, 1));
        // n = 3: 5/1 + 1/3
        assert_eq!(count_witness_bounds(3, 1).exact_sum, ratio(16, 3));
        let b = count_witness_bounds(100, 2);
        assert!(b.contradiction && b.chain_holds);
        assert!((b.logs.final_bound - 160.517).abs() < 1e-3);
    }

    #[test]
    fn float_types_agree() {
        let a = log_chain::<f32>(1000).final_bound as f64;
        let b = log_chain::<f64>(1000).final_bound;
        assert!((a - b).abs() / b < 1e-5);
    }
}
