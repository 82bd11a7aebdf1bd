use proptest::prelude::*;

use toroidal_fock::fock::{bracket_scalar, heis_apply_simple, BasisState, FockVector, Part};
use toroidal_fock::lattice::{CartanData, LatticeElt};
use toroidal_fock::relations::{check_heisenberg, check_ope, test_vectors, CheckOptions};
use toroidal_fock::vertex::{vertex_mode, Sign};
use toroidal_fock::QRat;

fn a3() -> CartanData {
    CartanData::builtin("A3").unwrap()
}

fn parts(rank: u32) -> impl Strategy<Value = Vec<Part>> {
    prop::collection::vec((1..=rank, (0u32..3).prop_map(|k| 2 * k + 1)), 0..4)
}

fn lattice(rank: usize) -> impl Strategy<Value = LatticeElt> {
    prop::collection::vec(-2i64..=2, rank).prop_map(LatticeElt)
}

fn odd_mode() -> impl Strategy<Value = i64> {
    (0i64..3).prop_map(|k| 2 * k + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn heisenberg_bracket_on_random_states(p in parts(3), beta in lattice(3), i in 1usize..=3, j in 1usize..=3, m in odd_mode()) {
        let c = a3();
        let v = FockVector::basis(BasisState::new(p, beta));
        let up = heis_apply_simple(&c, i, m, &heis_apply_simple(&c, j, -m, &v).unwrap()).unwrap();
        let down = heis_apply_simple(&c, j, -m, &heis_apply_simple(&c, i, m, &v).unwrap()).unwrap();
        prop_assert_eq!(&up - &down, v.scale(&bracket_scalar(c.entry(i, j), m)));
    }

    #[test]
    fn vertex_modes_are_graded(p in parts(3), beta in lattice(3), i in 1usize..=3, n in -4i64..=4, plus in any::<bool>()) {
        let c = a3();
        let s = BasisState::new(p, beta.clone());
        let d = s.degree() as i64;
        let alpha = c.root(i).unwrap();
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let out = vertex_mode(&c, &alpha, sign, n, &FockVector::basis(s));
        for (t, _) in out.iter() {
            prop_assert_eq!(t.degree() as i64, d - n);
            prop_assert_eq!(t.lattice(), &(&beta + &alpha.scaled(sign.value())));
        }
    }

    #[test]
    fn vertex_modes_are_linear(p1 in parts(3), p2 in parts(3), beta in lattice(3), n in -3i64..=3, k in -3i64..=3, e in -2i64..=2) {
        let c = a3();
        let alpha = c.root(2).unwrap();
        let x = QRat::from_int(k) * QRat::q_pow(e);
        let v1 = FockVector::basis(BasisState::new(p1, beta.clone()));
        let v2 = FockVector::basis(BasisState::new(p2, beta));
        let mut sum = v1.clone();
        sum.add_scaled(&v2, &x);
        let mut expected = vertex_mode(&c, &alpha, Sign::Minus, n, &v1);
        expected.add_scaled(&vertex_mode(&c, &alpha, Sign::Minus, n, &v2), &x);
        prop_assert_eq!(vertex_mode(&c, &alpha, Sign::Minus, n, &sum), expected);
    }

    #[test]
    fn test_vectors_are_bounded_and_distinct(i in 1usize..=3, j in 1usize..=3, d in 0u32..5) {
        let c = a3();
        let vs = test_vectors(&c, i, j, d);
        prop_assert!(vs.iter().all(|s| s.degree() <= d as u64));
        let mut sorted = vs.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), vs.len());
        let (ai, aj) = (c.root(i).unwrap(), c.root(j).unwrap());
        for l in [LatticeElt::zero(3), ai.clone(), &ai + &aj] {
            prop_assert!(vs.contains(&BasisState::vacuum(l)));
        }
    }
}

/// Enlarging a window only adds comparisons.
#[test]
fn windows_are_monotone() {
    let c = CartanData::builtin("A2").unwrap();
    let o = CheckOptions::default();
    let mut last = 0;
    for (m, d) in [(1, 1), (3, 3), (5, 5)] {
        let r = check_heisenberg(&c, m, d, &o);
        assert!(r.passed());
        assert!(r.checked > last);
        last = r.checked;
    }
    let a1 = CartanData::builtin("A1").unwrap();
    let mut last = 0;
    for w in 1..=3 {
        let r = check_ope(&a1, w, &o);
        assert!(r.passed());
        assert!(r.checked > last);
        last = r.checked;
    }
}
