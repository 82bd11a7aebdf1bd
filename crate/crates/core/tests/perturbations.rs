//! Each checker passes on the true relation and reports a witness once its
//! reference side is corrupted.

use toroidal_fock::lattice::CartanData;
use toroidal_fock::polyring::{serre_poly_k1, serre_poly_k1_with_site, SERRE_K1_QINV_SITES};
use toroidal_fock::relations::{
    check_delta, check_factorization, check_heisenberg, check_locality, check_ope, check_phipsi,
    CheckOptions, CheckReport, Perturbation,
};

fn cartan(name: &str) -> CartanData {
    CartanData::builtin(name).unwrap()
}

fn assert_detects(run: impl Fn(&CheckOptions) -> CheckReport, p: Perturbation) {
    let clean = run(&CheckOptions::default());
    assert!(clean.passed(), "baseline {} fails: {:?}", clean.suite, clean.witness);
    let bad = run(&CheckOptions::perturbed(p));
    assert!(!bad.passed(), "{:?} undetected by {}", p, bad.suite);
    let w = bad.witness.expect("failure carries a witness");
    assert_ne!(w.expected, w.actual);
}

#[test]
fn heisenberg() {
    assert_detects(|o| check_heisenberg(&cartan("A2"), 3, 3, o), Perturbation::HeisenbergNoHalf);
}

#[test]
fn ope() {
    assert_detects(|o| check_ope(&cartan("A2"), 2, o), Perturbation::OpePairingFlipped);
}

#[test]
fn locality() {
    assert_detects(|o| check_locality(&cartan("A3"), 2, o), Perturbation::LocalityMinus);
}

#[test]
fn delta() {
    assert_detects(|o| check_delta(&cartan("A2"), 1, 3, 2, o), Perturbation::DeltaUnitScalar);
}

#[test]
fn phipsi_first_g_coefficient() {
    assert_detects(|o| check_phipsi(&cartan("A2"), 3, o), Perturbation::GFirstNegated);
}

/// The psi-conjugation exponent with the opposite sign is refuted.
#[test]
fn phipsi_psi_exponent() {
    assert_detects(|o| check_phipsi(&cartan("A2"), 3, o), Perturbation::PsiExponentFlipped);
}

#[test]
fn factorization_small_window() {
    let r = check_factorization(&cartan("A1"), 4, &CheckOptions::default());
    assert!(r.passed(), "{:?}", r.witness);
}

/// The cubic polynomial is already nonzero, so a failing report alone proves
/// nothing; the corrupted site must at least change the polynomial.
#[test]
fn serre_site_changes_cubic_polynomial() {
    let base = serre_poly_k1();
    for site in 0..SERRE_K1_QINV_SITES {
        assert_ne!(serre_poly_k1_with_site(Some(site)), base, "site {site}");
    }
}
