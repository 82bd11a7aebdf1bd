use std::collections::HashMap;

use serde_json::Value;

use super::{finish, node_pairs, params, run_blocks, test_vectors, window, CheckOptions, CheckReport, Perturbation, Timer};
use crate::fock::FockVector;
use crate::lattice::CartanData;
use crate::series::{contraction, PairKind};
use crate::vertex::{NormalPrep, Sign, Vertex, VertexOp};

const SIGN_PAIRS: [(Sign, Sign); 4] = [(Sign::Plus, Sign::Plus), (Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus), (Sign::Minus, Sign::Minus)];

/// `X_a(m) X_b(n) v` for a fixed `v`, memoized over the inner mode.
struct Products<'v, 'c> {
    ctx: &'v Vertex<'c>,
    a: VertexOp,
    b: VertexOp,
    v: FockVector,
    inner: HashMap<i64, NormalPrep>,
}

impl<'v, 'c> Products<'v, 'c> {
    fn new(ctx: &'v Vertex<'c>, a: VertexOp, b: VertexOp, v: FockVector) -> Self {
        Self { ctx, a, b, v, inner: HashMap::new() }
    }

    fn get(&mut self, m: i64, n: i64) -> FockVector {
        let ctx = self.ctx;
        let (a, b, v) = (&self.a, &self.b, &self.v);
        let prep = self.inner.entry(n).or_insert_with(|| {
            let bv = ctx.eval(&ctx.normal_prepare(std::slice::from_ref(b), v), &[n]);
            ctx.normal_prepare(std::slice::from_ref(a), &bv)
        });
        ctx.eval(prep, &[m])
    }
}

/// `X_a(z) X_b(w) = :X_a(z) X_b(w): * contraction(w/z)`, coefficientwise for
/// `|m|, |n| <= window_bound`, on vacua and on states of degree `<= 2`.
pub fn check_ope(c: &CartanData, window_bound: i64, opts: &CheckOptions) -> CheckReport {
    let timer = Timer::start();
    let mut blocks = Vec::new();
    for (i, j) in node_pairs(c, opts, |_| true) {
        for (s, t) in SIGN_PAIRS {
            blocks.push((i, j, s, t));
        }
    }
    let win = window(window_bound);
    let tally = run_blocks(
        c,
        &blocks,
        |&(i, j, _, _)| test_vectors(c, i, j, 2),
        |ctx, &(i, j, s, t), state, tally| {
            let a = VertexOp::new(c.root(i).expect("node"), s);
            let b = VertexOp::new(c.root(j).expect("node"), t);
            let v = FockVector::basis(state.clone());
            let deg = state.degree() as i64;
            let bound = (deg + window_bound + 1) as usize;
            let series = if opts.perturbation == Perturbation::OpePairingFlipped {
                let r = -c.pairing(&a.alpha, &b.alpha).expect("rank");
                if s == t {
                    contraction(r, PairKind::Same, -s.value(), bound)
                } else {
                    contraction(r, PairKind::Mixed, 0, bound)
                }
            } else {
                ctx.contraction_for(&a, &b, bound).expect("rank")
            };
            let normal = ctx.normal_prepare(&[a.clone(), b.clone()], &v);
            let mut memo: HashMap<(i64, i64), FockVector> = HashMap::new();
            let mut products = Products::new(ctx, a, b, v);
            let part = format!("X{i}^{s}(z) X{j}^{t}(w)");
            for &n in &win {
                for &m in &win {
                    let actual = products.get(m, n);
                    let mut expected = FockVector::zero();
                    for l in 0..=(deg - n).max(-1) {
                        let key = (m - l, n + l);
                        let term = memo.entry(key).or_insert_with(|| ctx.eval(&normal, &[key.0, key.1]));
                        expected.add_scaled(term, &series.coeff(l as usize));
                    }
                    if !tally.compare(&part, &[m, n], state, &expected, &actual) {
                        return;
                    }
                }
            }
        },
    );
    let p = params(Some(c), &[("window", Value::from(window_bound)), ("vector_degree", Value::from(2))], opts);
    finish("ope", p, tally, opts, timer)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Branch {
    /// `[X_i^s(m), X_j^t(n)] = 0` for orthogonal roots.
    Orthogonal,
    /// `(z + w)[X_i^+(z), X_j^-(w)] = 0` for pairing -1.
    AntiLocal,
}

/// Commutativity of orthogonal vertex operators and the `(z + w)` locality of
/// `X_i^+`, `X_j^-` at pairing `-1`, for modes `|m|, |n| <= window_bound` on
/// test vectors of degree `<= window_bound`.
pub fn check_locality(c: &CartanData, window_bound: i64, opts: &CheckOptions) -> CheckReport {
    let timer = Timer::start();
    let mut blocks = Vec::new();
    let orthogonal = node_pairs(c, opts, |r| r == 0);
    for &(i, j) in &orthogonal {
        for (s, t) in SIGN_PAIRS {
            blocks.push((i, j, s, t, Branch::Orthogonal));
        }
    }
    let antilocal = node_pairs(c, opts, |r| r == -1);
    for &(i, j) in &antilocal {
        blocks.push((i, j, Sign::Plus, Sign::Minus, Branch::AntiLocal));
    }
    let win = window(window_bound);
    let sign = if opts.perturbation == Perturbation::LocalityMinus { -1 } else { 1 };
    let tally = run_blocks(
        c,
        &blocks,
        |&(i, j, ..)| test_vectors(c, i, j, window_bound as u32),
        |ctx, &(i, j, s, t, branch), state, tally| {
            let a = VertexOp::new(c.root(i).expect("node"), s);
            let b = VertexOp::new(c.root(j).expect("node"), t);
            let v = FockVector::basis(state.clone());
            let mut ab = Products::new(ctx, a.clone(), b.clone(), v.clone());
            let mut ba = Products::new(ctx, b, a, v);
            let mut comm = |m: i64, n: i64| &ab.get(m, n) - &ba.get(n, m);
            let zero = FockVector::zero();
            for &m in &win {
                for &n in &win {
                    let (part, actual) = match branch {
                        Branch::Orthogonal => (format!("[X{i}^{s}(m), X{j}^{t}(n)]"), comm(m, n)),
                        Branch::AntiLocal => {
                            let mut x = comm(m + 1, n);
                            x.add_scaled(&comm(m, n + 1), &crate::coeff::QRat::from_int(sign));
                            (format!("(z+w)[X{i}^+(z), X{j}^-(w)]"), x)
                        }
                    };
                    if !tally.compare(&part, &[m, n], state, &zero, &actual) {
                        return;
                    }
                }
            }
        },
    );
    let p = params(
        Some(c),
        &[
            ("window", Value::from(window_bound)),
            ("orthogonal_pairs", Value::from(orthogonal.len())),
            ("antilocal_pairs", Value::from(antilocal.len())),
        ],
        opts,
    );
    let mut report = finish("locality", p, tally, opts, timer);
    if orthogonal.is_empty() && report.note.is_none() {
        report.note = Some("no orthogonal pair: commutativity branch skipped".into());
    }
    report
}
