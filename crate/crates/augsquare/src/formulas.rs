//! Closed-form relations between the average efficiency factor of a
//! contraction and those of the designs generated from it.
//!
//! For a `k x v` contraction with average efficiency factor `E_con`:
//!
//! * the two-replicate resolvable design for `vk` treatments has
//!   `E_res = (vk - 1) / ((vk - 2v + 1) + 4(v - 1)/E_con)`;
//! * the `v x v` augmented design with `v* = v^2 - k(v - 1)` treatments has
//!   `E_aug = (v* - 1) / ((v* - 2v + 1) + 2v(v - 1)/(k E_con))`;
//! * removing the `k` checks (orthogonal to rows and columns, efficiency
//!   one) subtracts `k` from numerator and denominator, giving `E_test`;
//! * the average pairwise variance of test-entry differences is
//!   `A_test = 2 / E_test`, and conversely `E_con = 2 / (k A_abd)` turns a
//!   published block-design A-value into an efficiency factor.
//!
//! These are scalar relations: they never inspect an actual design, so
//! they can audit third-party `E_con` claims as well as our own.

use crate::{Error, Result};

/// Total number of treatments in the augmented design: `v^2 - k(v - 1)`.
pub fn v_star(v: usize, k: usize) -> usize {
    v * v - k * (v - 1)
}

/// Validated `(v, k, E_con)` triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignParams {
    v: usize,
    k: usize,
    e_con: f64,
}

impl DesignParams {
    pub fn new(v: usize, k: usize, e_con: f64) -> Result<Self> {
        if v < 4 || k < 2 || k + 2 > v {
            return Err(Error::InvalidParams(format!(
                "v = {v}, k = {k} outside v >= 4, 2 <= k <= v - 2"
            )));
        }
        if !(e_con > 0.0 && e_con <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "E_con = {e_con} outside (0, 1]"
            )));
        }
        Ok(Self { v, k, e_con })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn e_con(&self) -> f64 {
        self.e_con
    }
}

/// Average efficiency factor of the derived two-replicate resolvable design.
pub fn e_res(p: &DesignParams) -> f64 {
    let v = p.v as f64;
    let k = p.k as f64;
    (v * k - 1.0) / ((v * k - 2.0 * v + 1.0) + 4.0 * (v - 1.0) / p.e_con)
}

/// Average efficiency factor of the full augmented design (checks included).
pub fn e_aug(p: &DesignParams) -> f64 {
    let v = p.v as f64;
    let k = p.k as f64;
    let vs = v_star(p.v, p.k) as f64;
    (vs - 1.0) / ((vs - 2.0 * v + 1.0) + 2.0 * v * (v - 1.0) / (k * p.e_con))
}

/// Average efficiency factor of the test entries alone: `k` is subtracted
/// from the numerator and denominator of `E_aug`.
pub fn e_test(p: &DesignParams) -> f64 {
    let v = p.v as f64;
    let k = p.k as f64;
    let vs = v_star(p.v, p.k) as f64;
    (vs - 1.0 - k) / ((vs - 2.0 * v + 1.0 - k) + 2.0 * v * (v - 1.0) / (k * p.e_con))
}

/// Average pairwise variance of test-entry differences: `2 / E_test`.
pub fn a_test(e_test: f64) -> Result<f64> {
    if e_test <= 0.0 {
        return Err(Error::NonPositiveValue);
    }
    Ok(2.0 / e_test)
}

/// Converts a published block-design A-value to the corresponding average
/// efficiency factor: `E_con = 2 / (k A_abd)`.
pub fn e_con_from_a_abd(k: usize, a_abd: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidParams(format!("k = {k} below 2")));
    }
    if a_abd <= 0.0 {
        return Err(Error::InvalidParams(format!("A_abd = {a_abd} not positive")));
    }
    Ok(2.0 / (k as f64 * a_abd))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn params(v: usize, k: usize, e_con: f64) -> DesignParams {
        DesignParams::new(v, k, e_con).unwrap()
    }

    #[test]
    fn e_res_direct_substitution() {
        assert_close(e_res(&params(5, 3, 1.0)), 14.0 / 22.0, 1e-15);
        assert_close(e_res(&params(4, 2, 1.0)), 7.0 / 13.0, 1e-15);
        assert_close(e_res(&params(10, 3, 0.705895)), 0.467749, 5e-7);
    }

    #[test]
    fn e_aug_direct_substitution() {
        assert_close(e_aug(&params(5, 3, 1.0)), 12.0 / (4.0 + 40.0 / 3.0), 1e-15);
        assert_close(e_aug(&params(5, 3, 22.0 / 27.0)), 33.0 / 56.0, 1e-15);
        assert_close(e_aug(&params(5, 3, 0.814815)), 0.589286, 5e-7);
        assert_close(e_aug(&params(12, 3, 0.68006)), 0.505979, 5e-7);
    }

    #[test]
    fn e_test_direct_substitution() {
        assert_close(e_test(&params(5, 3, 1.0)), 9.0 / (1.0 + 40.0 / 3.0), 1e-14);
        assert_close(e_test(&params(5, 3, 22.0 / 27.0)), 99.0 / 191.0, 1e-14);
        assert_close(e_test(&params(12, 3, 0.68006)), 0.499066, 5e-7);
    }

    #[test]
    fn a_test_examples() {
        assert_close(a_test(0.5).unwrap(), 4.0, 1e-15);
        assert_close(a_test(1.0).unwrap(), 2.0, 1e-15);
        let at = a_test(e_test(&params(12, 3, 0.68006))).unwrap();
        assert_close(at, 4.0075, 5e-5);
        assert!(a_test(0.0).is_err());
        assert!(a_test(-1.0).is_err());
    }

    #[test]
    fn a_abd_conversions() {
        // The published E_con for A_abd = 0.9167 was computed from the
        // unrounded 11/12, so the rounded input only reproduces it to
        // one unit in the fourth decimal.
        assert_close(e_con_from_a_abd(3, 0.9167).unwrap(), 0.727246, 5e-7);
        assert_close(e_con_from_a_abd(3, 0.9167).unwrap(), 0.7273, 1e-4);
        assert_close(e_con_from_a_abd(4, 0.6333).unwrap(), 0.7895, 5e-5);
        assert_close(e_con_from_a_abd(5, 0.4833).unwrap(), 0.8276, 5e-5);
        assert!(e_con_from_a_abd(1, 0.5).is_err());
        assert!(e_con_from_a_abd(3, 0.0).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(DesignParams::new(3, 2, 0.5).is_err());
        assert!(DesignParams::new(5, 4, 0.5).is_err());
        assert!(DesignParams::new(5, 3, 0.0).is_err());
        assert!(DesignParams::new(5, 3, 1.1).is_err());
        assert!(DesignParams::new(5, 3, f64::NAN).is_err());
        assert!(DesignParams::new(5, 3, 1.0).is_ok());
    }

    #[test]
    fn monotone_in_e_con() {
        for (v, k) in [(5usize, 3usize), (8, 2), (12, 4), (20, 3)] {
            let grid: Vec<f64> = (1..=40).map(|i| i as f64 / 40.0).collect();
            for pair in grid.windows(2) {
                let lo = params(v, k, pair[0]);
                let hi = params(v, k, pair[1]);
                assert!(e_res(&hi) > e_res(&lo));
                assert!(e_aug(&hi) > e_aug(&lo));
                assert!(e_test(&hi) > e_test(&lo));
            }
        }
    }

    #[test]
    fn shared_denominator_identity() {
        // (v*-1)/E_aug - (v*-1-k)/E_test = k: both share the denominator
        // before the +-k shift.
        for (v, k) in [(5usize, 3usize), (10, 3), (16, 4), (26, 4), (9, 7)] {
            for e in [0.1, 0.5, 0.68006, 0.9, 1.0] {
                let p = params(v, k, e);
                let vs = v_star(v, k) as f64;
                let lhs = (vs - 1.0) / e_aug(&p) - (vs - 1.0 - k as f64) / e_test(&p);
                assert_close(lhs, k as f64, 1e-10);
            }
        }
    }

    #[test]
    fn test_entries_lose_efficiency() {
        for (v, k) in [(5usize, 3usize), (12, 3), (16, 4)] {
            for e in [0.25, 0.5, 0.75, 1.0] {
                let p = params(v, k, e);
                assert!(e_test(&p) < e_aug(&p));
                assert!(e_aug(&p) < 1.0);
            }
        }
    }

    #[test]
    fn v_star_matches_definition() {
        assert_eq!(v_star(5, 3), 13);
        assert_eq!(v_star(12, 3), 111);
        assert_eq!(v_star(26, 4), 576);
    }
}
