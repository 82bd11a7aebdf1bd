//! A reported witness must be reproducible from the public operator API.

use toroidal_fock::fock::{heis_apply, BasisState, FockVector};
use toroidal_fock::lattice::{CartanData, LatticeElt};
use toroidal_fock::relations::{
    check_heisenberg, check_ope, check_serre_operator, serre_prefactor, test_vectors, CheckOptions, Perturbation, Witness,
};
use toroidal_fock::vertex::{product_mode, Sign};
use toroidal_fock::QRat;

fn a2() -> CartanData {
    CartanData::builtin("A2").unwrap()
}

/// Coefficient of the basis state printed as `state` in `v`.
fn coeff_of(v: &FockVector, state: &str) -> QRat {
    v.iter().find(|(s, _)| s.to_string() == state).map(|(_, c)| c.clone()).unwrap_or_else(QRat::zero)
}

fn find_input(candidates: Vec<BasisState>, w: &Witness) -> BasisState {
    candidates.into_iter().find(|s| s.to_string() == w.input).expect("witness input is a test vector")
}

fn sign(text: &str) -> Sign {
    match text {
        "+" => Sign::Plus,
        "-" => Sign::Minus,
        other => panic!("bad sign {other}"),
    }
}

#[test]
fn heisenberg_witness_recomputes() {
    let c = a2();
    let r = check_heisenberg(&c, 3, 3, &CheckOptions::perturbed(Perturbation::HeisenbergNoHalf));
    let w = r.witness.expect("perturbation detected");
    assert_eq!(w.modes, [1, -1]);
    let states: Vec<BasisState> = toroidal_fock::fock::heisenberg_monomials(&[1, 2], 3)
        .into_iter()
        .map(|m| BasisState::new(m, LatticeElt::zero(2)))
        .collect();
    let s = find_input(states, &w);
    let v = FockVector::basis(s);
    // part is "[a_i(m), a_j(n)]"; recover the nodes from the digits
    let nodes: Vec<usize> = w.part.chars().filter_map(|ch| ch.to_digit(10)).map(|d| d as usize).take(2).collect();
    let (ai, aj) = (c.root(nodes[0]).unwrap(), c.root(nodes[1]).unwrap());
    let (m, n) = (w.modes[0], w.modes[1]);
    let comm = &heis_apply(&c, &ai, m, &heis_apply(&c, &aj, n, &v).unwrap()).unwrap()
        - &heis_apply(&c, &aj, n, &heis_apply(&c, &ai, m, &v).unwrap()).unwrap();
    let actual = coeff_of(&comm, &w.state);
    assert_eq!(actual.to_string(), w.actual);
    assert_ne!(w.expected, w.actual);
}

#[test]
fn ope_witness_recomputes() {
    let c = a2();
    let r = check_ope(&c, 2, &CheckOptions::perturbed(Perturbation::OpePairingFlipped));
    let w = r.witness.expect("perturbation detected");
    // part is "X{i}^{s}(z) X{j}^{t}(w)"
    let tokens: Vec<&str> = w.part.split(['X', '^', '(', ' ']).filter(|t| !t.is_empty() && !t.ends_with(')')).collect();
    let (i, s, j, t) = (tokens[0].parse().unwrap(), sign(tokens[1]), tokens[2].parse().unwrap(), sign(tokens[3]));
    let input = find_input(test_vectors(&c, i, j, 2), &w);
    let ops = [(c.root(i).unwrap(), s), (c.root(j).unwrap(), t)];
    let prod = product_mode(&c, &ops, &w.modes, &FockVector::basis(input)).unwrap();
    assert_eq!(coeff_of(&prod, &w.state).to_string(), w.actual);
}

/// Recomputes the symmetrized Serre combination with uncached operator
/// products, independently of the checker's memoized chains.
#[test]
fn serre_operator_witness_recomputes() {
    let c = a2();
    let r = check_serre_operator(&c, 3, &CheckOptions::default());
    let Some(w) = r.witness else {
        // The identity holding would make this test moot, not wrong.
        return;
    };
    assert!(w.part.contains("X1^+ X1^+ X2^+"), "first block is (1, 2, +): {}", w.part);
    let s = Sign::Plus;
    let (x, y) = ((c.root(1).unwrap(), s), (c.root(2).unwrap(), s));
    let vac = FockVector::vacuum(LatticeElt::zero(2));
    let pre = serre_prefactor(s, false);
    let f = |m1: i64, m2: i64, n: i64| {
        let mut acc = FockVector::zero();
        for (e, k) in pre.terms() {
            let (e1, e2) = (e[0], e[1]);
            // z2 X(z1)X(z2)Y(w): shift m2 by one more
            acc.add_scaled(&product_mode(&c, &[x.clone(), x.clone(), y.clone()], &[m1 + e1, m2 + e2 + 1, n], &vac).unwrap(), k);
            // -(z1 + z2) X(z1)Y(w)X(z2)
            let minus = -k;
            acc.add_scaled(&product_mode(&c, &[x.clone(), y.clone(), x.clone()], &[m1 + e1 + 1, n, m2 + e2], &vac).unwrap(), &minus);
            acc.add_scaled(&product_mode(&c, &[x.clone(), y.clone(), x.clone()], &[m1 + e1, n, m2 + e2 + 1], &vac).unwrap(), &minus);
            // z1 Y(w)X(z1)X(z2)
            acc.add_scaled(&product_mode(&c, &[y.clone(), x.clone(), x.clone()], &[n, m1 + e1 + 1, m2 + e2], &vac).unwrap(), k);
        }
        acc
    };
    let (m1, m2, n) = (w.modes[0], w.modes[1], w.modes[2]);
    let total = &f(m1, m2, n) + &f(m2, m1, n);
    assert_eq!(coeff_of(&total, &w.state).to_string(), w.actual);
    assert!(!total.is_zero());
}
