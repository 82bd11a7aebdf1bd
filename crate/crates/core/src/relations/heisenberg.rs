use serde_json::Value;

use super::{finish, node_pairs, odd_modes, params, run_blocks, CheckOptions, CheckReport, Perturbation, Timer};
use crate::coeff::QRat;
use crate::fock::{bracket_scalar, heis_apply, heisenberg_monomials, BasisState, FockVector};
use crate::lattice::{CartanData, LatticeElt};

/// `[a_i(m), a_j(n)] = delta_{m+n,0} [a_ij m][m]/(2m)` on every basis state of
/// degree `<= degree`, for odd `|m|, |n| <= modes`.
pub fn check_heisenberg(c: &CartanData, modes: i64, degree: u32, opts: &CheckOptions) -> CheckReport {
    let timer = Timer::start();
    let pairs = node_pairs(c, opts, |_| true);
    let simple: Vec<usize> = (1..=c.rank()).collect();
    let states: Vec<BasisState> = heisenberg_monomials(&simple, degree)
        .into_iter()
        .map(|m| BasisState::new(m, LatticeElt::zero(c.rank())))
        .collect();
    let ms = odd_modes(modes);
    let tally = run_blocks(
        c,
        &pairs,
        |_| states.clone(),
        |_, &(i, j), s, t| {
            let (ai, aj) = (c.root(i).expect("node"), c.root(j).expect("node"));
            let r = c.pairing(&ai, &aj).expect("rank");
            let v = FockVector::basis(s.clone());
            for &m in &ms {
                for &n in &ms {
                    let ij = heis_apply(c, &ai, m, &heis_apply(c, &aj, n, &v).expect("odd")).expect("odd");
                    let ji = heis_apply(c, &aj, n, &heis_apply(c, &ai, m, &v).expect("odd")).expect("odd");
                    let actual = &ij - &ji;
                    let expected = if m + n == 0 {
                        let mut k = if m > 0 { bracket_scalar(r, m) } else { -bracket_scalar(r, n) };
                        if opts.perturbation == Perturbation::HeisenbergNoHalf {
                            k = k.scale_int(2);
                        }
                        v.scale(&k)
                    } else {
                        v.scale(&QRat::zero())
                    };
                    if !t.compare(&format!("[a{i}(m), a{j}(n)]"), &[m, n], s, &expected, &actual) {
                        return;
                    }
                }
            }
        },
    );
    let p = params(Some(c), &[("modes", Value::from(modes)), ("degree", Value::from(degree))], opts);
    finish("heisenberg", p, tally, opts, timer)
}
