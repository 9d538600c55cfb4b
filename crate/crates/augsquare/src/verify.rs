//! Numerical verification of the closed-form efficiency relations on
//! concrete designs.
//!
//! `verify_formula` compares the average efficiency factor of an augmented
//! design obtained by direct eigen-decomposition against the closed-form
//! value predicted from its contraction, and likewise for the test-entry
//! variant. `verify_spectrum` checks the full eigenvalue pairing: the
//! augmented cef multiset must equal `v* - 2v + 1` unit cefs together with
//! `(k/v)(1 -+ sqrt(1 - theta))` over the contraction cefs `theta`.

use serde::Serialize;

use crate::designs::{AugmentedDesign, Contraction};
use crate::formulas::{self, DesignParams};
use crate::spectra::{augmented_cefs, contraction_cefs, harmonic_mean};
use crate::{construct, Error, Result};

/// Agreement threshold for all verification checks.
pub const VERIFY_TOL: f64 = 1e-8;

/// Outcome of a verification run, serializable for CI artifacts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    /// Largest absolute deviation observed by the check.
    pub max_deviation: f64,
    /// Average efficiency factor from the direct eigen-decomposition.
    pub e_direct: f64,
    /// Average efficiency factor predicted from the contraction.
    pub e_predicted: f64,
    /// Test-entry averages (formula check only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_test_direct: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_test_predicted: Option<f64>,
    /// Cef multiset from the eigen-decomposition, ascending.
    pub cefs_direct: Vec<f64>,
    /// Cef multiset predicted by the pairing, ascending.
    pub cefs_predicted: Vec<f64>,
}

/// Pairing prediction: `v* - 2v + 1` unit cefs plus
/// `(k/v)(1 - sqrt(1 - theta))` and `(k/v)(1 + sqrt(1 - theta))` for each
/// contraction cef `theta`, sorted ascending. For `theta = 1` the pair
/// degenerates to `(k/v, k/v)`.
pub fn paired_cefs(v: usize, k: usize, contraction_cefs: &[f64]) -> Vec<f64> {
    let scale = k as f64 / v as f64;
    let units = formulas::v_star(v, k) - 2 * v + 1;
    let mut cefs = vec![1.0; units];
    for &theta in contraction_cefs {
        let root = (1.0 - theta).max(0.0).sqrt();
        cefs.push(scale * (1.0 - root));
        cefs.push(scale * (1.0 + root));
    }
    cefs.sort_by(|a, b| a.partial_cmp(b).expect("cefs are finite"));
    cefs
}

/// Removes the `k` unit cefs contributed by the checks (the `k` largest
/// values, all 1 within tolerance) and returns the harmonic mean of the
/// rest.
fn e_without_checks(cefs: &[f64], k: usize) -> Result<f64> {
    let n = cefs.len();
    debug_assert!(n > k);
    for &cef in &cefs[n - k..] {
        debug_assert!(
            (cef - 1.0).abs() <= 1e-6,
            "expected a unit cef for a check, found {cef}"
        );
    }
    harmonic_mean(&cefs[..n - k])
}

/// Verifies the closed-form E relations on one concrete instance: builds
/// the augmented design from `c` with entries placed by `seed`, and
/// compares direct eigen-decomposition against prediction for both the
/// whole-design and test-entries-only averages.
pub fn verify_formula(c: &Contraction, seed: u64) -> Result<VerificationReport> {
    let con = contraction_cefs(c)?;
    let design = construct::fill_entries(&construct::augment(c), seed)?;
    let aug = augmented_cefs(&design)?;
    let params = DesignParams::new(c.v(), c.k(), con.e)?;

    let e_predicted = formulas::e_aug(&params);
    let e_test_predicted = formulas::e_test(&params);
    let e_test_direct = e_without_checks(&aug.cefs, c.k())?;

    let dev_aug = (aug.e - e_predicted).abs();
    let dev_test = (e_test_direct - e_test_predicted).abs();
    let max_deviation = dev_aug.max(dev_test);
    Ok(VerificationReport {
        passed: max_deviation <= VERIFY_TOL,
        max_deviation,
        e_direct: aug.e,
        e_predicted,
        e_test_direct: Some(e_test_direct),
        e_test_predicted: Some(e_test_predicted),
        cefs_predicted: paired_cefs(c.v(), c.k(), &con.cefs),
        cefs_direct: aug.cefs,
    })
}

/// Verifies the spectral pairing on a (contraction, augmented design)
/// pair: the design's check positions must reproduce the contraction
/// incidence exactly (else [`Error::MismatchedPair`]), and the cef
/// multisets are compared elementwise after sorting.
pub fn verify_spectrum(c: &Contraction, d: &AugmentedDesign) -> Result<VerificationReport> {
    if c.v() != d.v() || c.k() != d.k() || d.check_positions() != c.incidence() {
        return Err(Error::MismatchedPair);
    }
    let con = contraction_cefs(c)?;
    let aug = augmented_cefs(d)?;
    let cefs_predicted = paired_cefs(c.v(), c.k(), &con.cefs);
    debug_assert_eq!(cefs_predicted.len(), aug.cefs.len());
    let max_deviation = aug
        .cefs
        .iter()
        .zip(&cefs_predicted)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let e_predicted = harmonic_mean(&cefs_predicted)?;
    Ok(VerificationReport {
        passed: max_deviation <= VERIFY_TOL,
        max_deviation,
        e_direct: aug.e,
        e_predicted,
        e_test_direct: None,
        e_test_predicted: None,
        cefs_predicted,
        cefs_direct: aug.cefs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{augment, cyclic_contraction, fill_entries, random_contraction};
    use crate::testutil::example_contraction;

    #[test]
    fn formula_holds_on_the_cyclic_example() {
        let c = cyclic_contraction(5, &[1, 2, 3]).unwrap();
        for seed in [0u64, 1, 42] {
            let report = verify_formula(&c, seed).unwrap();
            assert!(report.passed, "deviation {}", report.max_deviation);
            assert!((report.e_direct - 33.0 / 56.0).abs() < 1e-9);
            assert!((report.e_predicted - 33.0 / 56.0).abs() < 1e-9);
            assert!((report.e_test_direct.unwrap() - 99.0 / 191.0).abs() < 1e-8);
        }
    }

    #[test]
    fn spectrum_pairing_on_the_cyclic_example() {
        let c = cyclic_contraction(5, &[1, 2, 3]).unwrap();
        let d = fill_entries(&augment(&c), 7).unwrap();
        let report = verify_spectrum(&c, &d).unwrap();
        assert!(report.passed, "deviation {}", report.max_deviation);
        // Paired values predicted from the two distinct contraction cefs.
        for want in [0.276393, 0.923607, 0.476393, 0.723607] {
            assert!(
                report.cefs_predicted.iter().any(|x| (x - want).abs() < 5e-7),
                "missing {want}"
            );
        }
        let units = report
            .cefs_predicted
            .iter()
            .filter(|x| (**x - 1.0).abs() < 1e-12)
            .count();
        assert_eq!(units, 4); // v* - 2v + 1
    }

    #[test]
    fn degenerate_pair_at_unit_theta() {
        let cefs = paired_cefs(5, 3, &[1.0]);
        // thetas of 1 collapse to (k/v, k/v).
        let near: Vec<&f64> = cefs.iter().filter(|x| (**x - 0.6).abs() < 1e-12).collect();
        assert_eq!(near.len(), 2);
    }

    #[test]
    fn worked_example_check_positions_match_incidence() {
        let c = example_contraction();
        let d = fill_entries(&augment(&c), 3).unwrap();
        let report = verify_spectrum(&c, &d).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn mismatched_pair_is_rejected() {
        let c = example_contraction();
        let other = cyclic_contraction(5, &[1, 2, 3]).unwrap();
        let d = fill_entries(&augment(&other), 1).unwrap();
        assert!(matches!(
            verify_spectrum(&c, &d).unwrap_err(),
            Error::MismatchedPair
        ));
    }

    #[test]
    fn random_campaign_small() {
        let mut checked = 0;
        let mut seed = 0u64;
        while checked < 12 {
            seed += 1;
            let v = 5 + (seed % 5) as usize; // 5..=9
            let k = 2 + (seed % 3) as usize; // 2..=4
            if k + 2 > v {
                continue;
            }
            let c = random_contraction(v, k, seed).unwrap();
            if contraction_cefs(&c).is_err() {
                continue; // disconnected draw
            }
            let formula = verify_formula(&c, seed.wrapping_mul(31)).unwrap();
            assert!(formula.passed, "formula failed at seed {seed}");
            let d = fill_entries(&augment(&c), seed.wrapping_mul(31)).unwrap();
            let spectrum = verify_spectrum(&c, &d).unwrap();
            assert!(spectrum.passed, "spectrum failed at seed {seed}");
            checked += 1;
        }
    }

    #[test]
    fn unit_cef_count_matches_pairing_structure() {
        let c = cyclic_contraction(7, &[1, 2, 4]).unwrap();
        let d = fill_entries(&augment(&c), 5).unwrap();
        let report = verify_spectrum(&c, &d).unwrap();
        let tol = 1e-8;
        let direct_units = report.cefs_direct.iter().filter(|x| (**x - 1.0).abs() <= tol).count();
        let paired_units = report
            .cefs_predicted
            .iter()
            .filter(|x| (**x - 1.0).abs() <= tol)
            .count();
        assert_eq!(direct_units, paired_units);
        let baseline = formulas::v_star(7, 3) - 2 * 7 + 1;
        assert!(direct_units >= baseline);
    }

    #[test]
    fn report_serializes_to_json() {
        let c = cyclic_contraction(5, &[1, 2, 3]).unwrap();
        let report = verify_formula(&c, 1).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains("\"passed\":true"));
        let spectrum = verify_spectrum(&c, &fill_entries(&augment(&c), 1).unwrap()).unwrap();
        let text = serde_json::to_string(&spectrum).unwrap();
        assert!(!text.contains("e_test_direct"));
    }
}
