//! Relations between the vertex operators and the Cartan currents `φ`, `ψ`.
//!
//! Mode conventions: `φ_i(z) = sum_{a>=0} φ_{i,-a} z^a`,
//! `ψ_i(z) = sum_{b>=0} ψ_{i,b} z^{-b}`, `X(z) = sum_n X(n) z^{-n}`.

use std::collections::HashMap;

use serde_json::Value;

use super::{finish, node_pairs, params, run_blocks, test_vectors, window, CheckOptions, CheckReport, Perturbation, Tally, Timer};
use crate::coeff::{q_minus_qinv, QRat};
use crate::fock::{heisenberg_monomials, BasisState, FockVector};
use crate::lattice::{CartanData, LatticeElt};
use crate::series::{g_series, TruncSeries};
use crate::vertex::{Current, Field, NormalPrep, Sign, Vertex, VertexOp};

/// `2(q + q^-1)/(q - q^-1)`.
pub fn delta_scalar() -> QRat {
    let num = (&QRat::q_pow(1) + &QRat::q_pow(-1)).scale_int(2);
    &num / &q_minus_qinv()
}

/// Vacua at `0`, `alpha_i` and `alpha_i + alpha_j` for every simple `j`,
/// dressed with all creation monomials of degree `<= degree` on all nodes.
fn node_vectors(c: &CartanData, i: usize, degree: u32) -> Vec<BasisState> {
    let ai = c.root(i).expect("node");
    let mut lattices = vec![LatticeElt::zero(c.rank()), ai.clone()];
    for j in 1..=c.rank() {
        let l = &ai + &c.root(j).expect("node");
        if !lattices.contains(&l) {
            lattices.push(l);
        }
    }
    let nodes: Vec<usize> = (1..=c.rank()).collect();
    let mut out = Vec::new();
    for m in heisenberg_monomials(&nodes, degree) {
        for l in &lattices {
            out.push(BasisState::new(m.clone(), l.clone()));
        }
    }
    out
}

fn cur(ctx: &Vertex, alpha: &LatticeElt, kind: Current, n: i64, v: &FockVector) -> FockVector {
    ctx.current(alpha, kind, n, v).expect("non-negative index")
}

fn mode_prep(ctx: &Vertex, op: &VertexOp, v: &FockVector) -> NormalPrep {
    ctx.normal_prepare(std::slice::from_ref(op), v)
}

/// `[X_i^+(m), X_i^-(n)] = K (v^{m-n} ψ_{i,m+n} [m+n >= 0] - v^{n-m} φ_{i,m+n} [m+n <= 0])`
/// with `K = 2(q+q^-1)/(q-q^-1)`, `v = q^{1/2}`: the mode form of the
/// delta-function commutator at level one, where `δ(wq^{±1}/z)` forces the
/// `w`-mode to cancel the `z`-mode up to the current's index.
pub fn check_delta(c: &CartanData, i: usize, modes: i64, degree: u32, opts: &CheckOptions) -> CheckReport {
    let timer = Timer::start();
    let opts = CheckOptions { affine: opts.affine || i == 0, ..*opts };
    let k = if opts.perturbation == Perturbation::DeltaUnitScalar { QRat::one() } else { delta_scalar() };
    let win = window(modes);
    let tally = run_blocks(
        c,
        &[i],
        |&i| node_vectors(c, i, degree),
        |ctx, &i, state, tally| {
            let ai = c.root(i).expect("node");
            let (xp, xm) = (VertexOp::new(ai.clone(), Sign::Plus), VertexOp::new(ai.clone(), Sign::Minus));
            let v = FockVector::basis(state.clone());
            let (pv, mv) = (mode_prep(ctx, &xp, &v), mode_prep(ctx, &xm, &v));
            let mut plus_then: HashMap<i64, NormalPrep> = HashMap::new();
            let mut minus_then: HashMap<i64, NormalPrep> = HashMap::new();
            for &m in &win {
                for &n in &win {
                    let pm = plus_then.entry(n).or_insert_with(|| mode_prep(ctx, &xp, &ctx.eval(&mv, &[n])));
                    let a = ctx.eval(pm, &[m]);
                    let mp = minus_then.entry(m).or_insert_with(|| mode_prep(ctx, &xm, &ctx.eval(&pv, &[m])));
                    let b = ctx.eval(mp, &[n]);
                    let actual = &a - &b;
                    let mut expected = FockVector::zero();
                    if m + n >= 0 {
                        expected.add_scaled(&cur(ctx, &ai, Current::Psi, m + n, &v), &(&k * &QRat::half_pow(m - n)));
                    }
                    if m + n <= 0 {
                        expected.add_scaled(&cur(ctx, &ai, Current::Phi, -(m + n), &v), &-(&k * &QRat::half_pow(n - m)));
                    }
                    if !tally.compare(&format!("[X{i}^+(m), X{i}^-(n)]"), &[m, n], state, &expected, &actual) {
                        return;
                    }
                }
            }
        },
    );
    let p = params(Some(c), &[("node", Value::from(i)), ("modes", Value::from(modes)), ("degree", Value::from(degree))], &opts);
    finish("delta", p, tally, &opts, timer)
}

/// Coefficients of `G_ij(x)`, with the perturbation applied.
fn g_coeffs(pairing: i64, bound: usize, opts: &CheckOptions) -> TruncSeries {
    let g = g_series(pairing, bound);
    if opts.perturbation != Perturbation::GFirstNegated {
        return g;
    }
    let mut cs = g.coeffs().to_vec();
    if cs.len() > 1 {
        cs[1] = -&cs[1];
    }
    TruncSeries::new(g.var(), bound, cs)
}

/// Coefficients of `G(q^{-s/2} x)^e`.
fn g_power(g: &TruncSeries, s: Sign, e: i64) -> TruncSeries {
    let shifted = g.subst_scale(&QRat::half_pow(-s.value()));
    if e == 1 {
        shifted
    } else {
        TruncSeries::one(g.var(), g.bound()).div(&shifted).expect("G(0) = 1")
    }
}

/// `:X_i^+(zq^-1) X_i^-(z): = φ_i(zq^{-1/2})` and `:X_i^+(zq) X_i^-(z): = ψ_i(zq^{1/2})`,
/// coefficientwise for `|N| <= window_bound` on one vector.
fn factorization_body(ctx: &Vertex, i: usize, window_bound: i64, state: &BasisState, tally: &mut Tally) {
    let ai = ctx.cartan().root(i).expect("node");
    let ops = [VertexOp::new(ai.clone(), Sign::Plus), VertexOp::new(ai.clone(), Sign::Minus)];
    let v = FockVector::basis(state.clone());
    let phi_field = Field::normal(&[Field::vertex(&ops[0]).shifted(-2), Field::vertex(&ops[1])]);
    let psi_field = Field::normal(&[Field::vertex(&ops[0]).shifted(2), Field::vertex(&ops[1])]);
    let (phi_prep, psi_prep) = (ctx.prepare(&[phi_field], &v), ctx.prepare(&[psi_field], &v));
    for total in window(window_bound) {
        let phi_side = ctx.eval(&phi_prep, &[total]);
        let mut phi = FockVector::zero();
        if total <= 0 {
            phi.add_scaled(&cur(ctx, &ai, Current::Phi, -total, &v), &QRat::half_pow(total));
        }
        if !tally.compare(&format!(":X{i}^+(zq^-1) X{i}^-(z): = phi{i}(zq^-1/2)"), &[total], state, &phi, &phi_side) {
            return;
        }
        let psi_side = ctx.eval(&psi_prep, &[total]);
        let mut psi = FockVector::zero();
        if total >= 0 {
            psi.add_scaled(&cur(ctx, &ai, Current::Psi, total, &v), &QRat::half_pow(-total));
        }
        if !tally.compare(&format!(":X{i}^+(zq) X{i}^-(z): = psi{i}(zq^1/2)"), &[total], state, &psi, &psi_side) {
            return;
        }
    }
}

/// Factorization of the Cartan currents through normal-ordered vertex
/// operators, for `z`-modes within `degree` on vectors of degree `<= degree`.
pub fn check_factorization(c: &CartanData, degree: u32, opts: &CheckOptions) -> CheckReport {
    let timer = Timer::start();
    let blocks: Vec<usize> = super::nodes(c, opts).into_iter().filter(|&i| !opts.affine || i == 0).collect();
    let tally = run_blocks(c, &blocks, |&i| node_vectors(c, i, degree), |ctx, &i, s, t| factorization_body(ctx, i, degree as i64, s, t));
    let p = params(Some(c), &[("degree", Value::from(degree))], opts);
    finish("factorization", p, tally, opts, timer)
}

#[derive(Clone, Copy)]
enum Block {
    Pair(usize, usize),
    Factor(usize),
}

/// Cartan-current relations within `degree`:
/// * `[φ_i(z), φ_j(w)] = [ψ_i(z), ψ_j(w)] = 0`;
/// * `φ_i(z)ψ_j(w) G(qz/w) = ψ_j(w)φ_i(z) G(q^-1 z/w)`, cross-multiplied;
/// * `φ_i(z) X_j^±(w) = X_j^±(w) φ_i(z) G(q^{∓1/2} z/w)^{±1}`;
/// * `ψ_i(z) X_j^±(w) = X_j^±(w) ψ_i(z) G(q^{∓1/2} w/z)^{∓1}`;
/// * the factorization of [`check_factorization`].
pub fn check_phipsi(c: &CartanData, degree: u32, opts: &CheckOptions) -> CheckReport {
    let timer = Timer::start();
    let mut blocks: Vec<Block> = node_pairs(c, opts, |_| true).into_iter().map(|(i, j)| Block::Pair(i, j)).collect();
    blocks.extend(super::nodes(c, opts).into_iter().filter(|&i| !opts.affine || i == 0).map(Block::Factor));
    let d = degree as i64;
    let tally = run_blocks(
        c,
        &blocks,
        |b| match *b {
            Block::Pair(i, j) => test_vectors(c, i, j, degree),
            Block::Factor(i) => node_vectors(c, i, degree),
        },
        |ctx, b, state, tally| match *b {
            Block::Factor(i) => factorization_body(ctx, i, d, state, tally),
            Block::Pair(i, j) => pair_body(ctx, i, j, d, opts, state, tally),
        },
    );
    let p = params(Some(c), &[("degree", Value::from(degree))], opts);
    finish("phipsi", p, tally, opts, timer)
}

fn pair_body(ctx: &Vertex, i: usize, j: usize, d: i64, opts: &CheckOptions, state: &BasisState, tally: &mut Tally) {
    let c = ctx.cartan();
    let (ai, aj) = (c.root(i).expect("node"), c.root(j).expect("node"));
    let v = FockVector::basis(state.clone());
    let phi = |a: i64, w: &FockVector| cur(ctx, &ai, Current::Phi, a, w);
    let psi = |b: i64, w: &FockVector| cur(ctx, &ai, Current::Psi, b, w);
    let phi_j = |a: i64, w: &FockVector| cur(ctx, &aj, Current::Phi, a, w);
    let psi_j = |b: i64, w: &FockVector| cur(ctx, &aj, Current::Psi, b, w);

    let phi_v: Vec<FockVector> = (0..=d).map(|a| phi(a, &v)).collect();
    let psi_v: Vec<FockVector> = (0..=d).map(|b| psi(b, &v)).collect();
    let phi_j_v: Vec<FockVector> = (0..=d).map(|a| phi_j(a, &v)).collect();
    let psi_j_v: Vec<FockVector> = (0..=d).map(|b| psi_j(b, &v)).collect();

    for a in 0..=d {
        for b in 0..=d {
            let (l, r) = (phi(a, &phi_j_v[b as usize]), phi_j(b, &phi_v[a as usize]));
            if !tally.compare(&format!("[phi{i}, phi{j}]"), &[-a, -b], state, &r, &l) {
                return;
            }
            let (l, r) = (psi(a, &psi_j_v[b as usize]), psi_j(b, &psi_v[a as usize]));
            if !tally.compare(&format!("[psi{i}, psi{j}]"), &[a, b], state, &r, &l) {
                return;
            }
        }
    }

    let pairing = c.pairing(&ai, &aj).expect("rank");
    let g = g_coeffs(pairing, d as usize, opts);
    // phi_{-a} psi_b v and psi_b phi_{-a} v, shared across the sums below
    let phi_psi: Vec<Vec<FockVector>> = (0..=d).map(|a| psi_j_v.iter().map(|w| phi(a, w)).collect()).collect();
    let psi_phi: Vec<Vec<FockVector>> = (0..=d).map(|a| (0..=d).map(|b| psi_j(b, &phi_v[a as usize])).collect()).collect();
    for a in 0..=d {
        for b in 0..=d {
            let mut lhs = FockVector::zero();
            let mut rhs = FockVector::zero();
            for k in 0..=a.min(b) {
                let gk = g.coeff(k as usize);
                let (ak, bk) = ((a - k) as usize, (b - k) as usize);
                lhs.add_scaled(&phi_psi[ak][bk], &(&gk * &QRat::q_pow(k)));
                rhs.add_scaled(&psi_phi[ak][bk], &(&gk * &QRat::q_pow(-k)));
            }
            if !tally.compare(&format!("phi{i}(z) psi{j}(w) G(qz/w) = psi{j}(w) phi{i}(z) G(z/qw)"), &[-a, b], state, &rhs, &lhs) {
                return;
            }
        }
    }

    let win = window(d);
    for s in Sign::BOTH {
        let x = VertexOp::new(aj.clone(), s);
        let h_phi = g_power(&g, s, s.value());
        let psi_exp = if opts.perturbation == Perturbation::PsiExponentFlipped { s.value() } else { -s.value() };
        let h_psi = g_power(&g, s, psi_exp);
        let xv = mode_prep(ctx, &x, &v);
        let x_after_phi: Vec<NormalPrep> = phi_v.iter().map(|w| mode_prep(ctx, &x, w)).collect();
        let x_after_psi: Vec<NormalPrep> = psi_v.iter().map(|w| mode_prep(ctx, &x, w)).collect();
        // X(m) applied after phi_{-a} / psi_a, keyed by (a, m)
        let mut after_phi: HashMap<(usize, i64), FockVector> = HashMap::new();
        let mut after_psi: HashMap<(usize, i64), FockVector> = HashMap::new();
        for &n in &win {
            let xnv = ctx.eval(&xv, &[n]);
            for a in 0..=d {
                let lhs = phi(a, &xnv);
                let mut rhs = FockVector::zero();
                for k in 0..=a {
                    let key = ((a - k) as usize, n - k);
                    let term = after_phi.entry(key).or_insert_with(|| ctx.eval(&x_after_phi[key.0], &[key.1]));
                    rhs.add_scaled(term, &h_phi.coeff(k as usize));
                }
                if !tally.compare(&format!("phi{i}(z) X{j}^{s}(w)"), &[-a, n], state, &rhs, &lhs) {
                    return;
                }
                let lhs = psi(a, &xnv);
                let mut rhs = FockVector::zero();
                for k in 0..=a {
                    let key = ((a - k) as usize, n + k);
                    let term = after_psi.entry(key).or_insert_with(|| ctx.eval(&x_after_psi[key.0], &[key.1]));
                    rhs.add_scaled(term, &h_psi.coeff(k as usize));
                }
                if !tally.compare(&format!("psi{i}(z) X{j}^{s}(w)"), &[a, n], state, &rhs, &lhs) {
                    return;
                }
            }
        }
    }
}
