use std::collections::HashMap;

use serde_json::Value;

use super::{finish, node_pairs, params, window, CheckOptions, CheckReport, Perturbation, Tally, Timer};
use crate::coeff::QRat;
use crate::error::{Error, Result};
use crate::fock::{BasisState, FockVector};
use crate::lattice::{CartanData, LatticeElt};
use crate::polyring::{monomial_string, serre_f_check, serre_poly_k1_with_site, MPoly};
use crate::vertex::{Sign, Vertex, VertexOp};

fn first_nonzero(t: &mut Tally, part: &str, p: &MPoly) {
    match p.terms().next_back() {
        None => {
            t.checked += 1;
        }
        Some((e, c)) => {
            t.compare_scalar(part, e, "", &monomial_string(p.vars(), e), &QRat::zero(), c);
        }
    }
}

/// The cubic Serre polynomial (`k = 1`) or the antisymmetrized `f` (`k >= 2`)
/// is identically zero.
pub fn check_serre_symbolic(k: i64, opts: &CheckOptions) -> Result<CheckReport> {
    if k < 1 {
        return Err(Error::Usage(format!("Serre order must be at least 1, got {k}")));
    }
    let timer = Timer::start();
    let mut t = Tally::default();
    if k == 1 {
        let site = match opts.perturbation {
            Perturbation::SerreSite(n) => Some(n),
            _ => None,
        };
        first_nonzero(&mut t, "Sym_{z1,z2} cubic Serre polynomial", &serre_poly_k1_with_site(site));
    } else {
        first_nonzero(&mut t, "antisymmetrized f", &serre_f_check(k)?);
    }
    let p = params(None, &[("k", Value::from(k))], opts);
    Ok(finish("serre-sym", p, t, opts, timer))
}

/// `(z1 + p z2)(z2 - p z1)` with `p = q^{-2s}` (`q^{-s}` when perturbed).
pub fn serre_prefactor(sign: Sign, perturbed: bool) -> MPoly {
    let vars = ["z1", "z2"];
    let p = QRat::q_pow(if perturbed { -sign.value() } else { -2 * sign.value() });
    let z1 = MPoly::var(&vars, "z1", QRat::one());
    let z2 = MPoly::var(&vars, "z2", QRat::one());
    &(&z1 + &z2.scale(&p)) * &(&z2 - &z1.scale(&p))
}

type Terms = Vec<(i64, i64, QRat)>;

fn terms(p: &MPoly) -> Terms {
    p.terms().map(|(e, c)| (e[0], e[1], c.clone())).collect()
}

/// Products of vertex modes applied to one vector, memoized on every suffix.
struct Chains<'v, 'c> {
    ctx: &'v Vertex<'c>,
    ops: [VertexOp; 2],
    v: FockVector,
    memo: HashMap<Vec<(usize, i64)>, FockVector>,
}

impl Chains<'_, '_> {
    fn apply(&mut self, word: &[(usize, i64)]) -> FockVector {
        if word.is_empty() {
            return self.v.clone();
        }
        if let Some(x) = self.memo.get(word) {
            return x.clone();
        }
        let rest = self.apply(&word[1..]);
        let (op, n) = word[0];
        let out = if rest.is_zero() { rest } else { self.ctx.mode(&self.ops[op], n, &rest) };
        self.memo.insert(word.to_vec(), out.clone());
        out
    }
}

/// The symmetrized cubic Serre combination
/// `Sym_{z1,z2} P(z1,z2) (z2 X(z1)X(z2)Y(w) - (z1+z2) X(z1)Y(w)X(z2) + z1 Y(w)X(z1)X(z2))`
/// with `X = X_i^s`, `Y = X_j^s`, `(alpha_i|alpha_j) = -1`, vanishes on the vacuum
/// for all modes `|M1|, |M2|, |N| <= window_bound`.
pub fn check_serre_operator(c: &CartanData, window_bound: i64, opts: &CheckOptions) -> CheckReport {
    let timer = Timer::start();
    let pairs = node_pairs(c, opts, |r| r == -1);
    let win = window(window_bound);
    let perturbed = opts.perturbation == Perturbation::SerrePrefactor;
    let mut t = Tally::default();
    let vacuum = BasisState::vacuum(LatticeElt::zero(c.rank()));
    'outer: for &(i, j) in &pairs {
        for s in Sign::BOTH {
            let ctx = Vertex::new(c);
            let pre = serre_prefactor(s, perturbed);
            let vars = ["z1", "z2"];
            let z1 = MPoly::var(&vars, "z1", QRat::one());
            let z2 = MPoly::var(&vars, "z2", QRat::one());
            let (ta, tb, tc) = (terms(&(&pre * &z2)), terms(&(&pre * &(&z1 + &z2))), terms(&(&pre * &z1)));
            let ops = [VertexOp::new(c.root(i).expect("node"), s), VertexOp::new(c.root(j).expect("node"), s)];
            let mut chains = Chains { ctx: &ctx, ops, v: FockVector::basis(vacuum.clone()), memo: HashMap::new() };
            // coefficient of z1^{-m1} z2^{-m2} w^{-n} in the unsymmetrized expression
            let mut f = |m1: i64, m2: i64, n: i64| {
                let mut acc = FockVector::zero();
                for (e1, e2, x) in &ta {
                    acc.add_scaled(&chains.apply(&[(0, m1 + e1), (0, m2 + e2), (1, n)]), x);
                }
                for (e1, e2, x) in &tb {
                    acc.add_scaled(&chains.apply(&[(0, m1 + e1), (1, n), (0, m2 + e2)]), &-x);
                }
                for (e1, e2, x) in &tc {
                    acc.add_scaled(&chains.apply(&[(1, n), (0, m1 + e1), (0, m2 + e2)]), x);
                }
                acc
            };
            let part = format!("Serre X{i}^{s} X{i}^{s} X{j}^{s}");
            for &n in &win {
                for &m1 in &win {
                    for &m2 in &win {
                        let total = &f(m1, m2, n) + &f(m2, m1, n);
                        if !t.compare(&part, &[m1, m2, n], &vacuum, &FockVector::zero(), &total) {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    let p = params(Some(c), &[("window", Value::from(window_bound)), ("pairs", Value::from(pairs.len()))], opts);
    finish("serre-op", p, t, opts, timer)
}
