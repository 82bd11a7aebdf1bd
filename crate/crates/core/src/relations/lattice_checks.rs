use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::{finish, params, CheckOptions, CheckReport, Tally, Timer};
use crate::coeff::QRat;
use crate::fock::{group_apply, BasisState, FockVector};
use crate::lattice::{CartanData, LatticeElt};
use crate::series::{contraction, qpow_homog, qpow_homog_product, qpow_twisted, PairKind, TruncSeries};

fn random_elt(rng: &mut ChaCha8Rng, rank: usize) -> LatticeElt {
    LatticeElt((0..rank).map(|_| rng.gen_range(-3..=3)).collect())
}

fn sign_vector(s: i64, at: &LatticeElt) -> FockVector {
    FockVector::term(BasisState::vacuum(at.clone()), QRat::from_int(s))
}

/// Bimultiplicativity of the cocycle, the commutator `(-1)^{(alpha|beta)}`,
/// and the group law of the signed lattice shifts, on `samples` random
/// triples drawn from a seeded generator.
pub fn check_cocycle(c: &CartanData, samples: usize, seed: u64, opts: &CheckOptions) -> CheckReport {
    let timer = Timer::start();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::default();
    let rank = c.rank();
    let origin = LatticeElt::zero(rank);
    for _ in 0..samples {
        let a = random_elt(&mut rng, rank);
        let b = random_elt(&mut rng, rank);
        let g = random_elt(&mut rng, rank);
        let modes: Vec<i64> = a.coords().iter().chain(b.coords()).chain(g.coords()).copied().collect();
        let eps = |x: &LatticeElt, y: &LatticeElt| c.cocycle(x, y);
        let pairing = c.pairing(&a, &b).expect("rank");
        let parity = if pairing.rem_euclid(2) == 0 { 1 } else { -1 };
        let scalar_checks = [
            ("eps(a+b, g) = eps(a, g) eps(b, g)", eps(&(&a + &b), &g), eps(&a, &g) * eps(&b, &g)),
            ("eps(a, b+g) = eps(a, b) eps(a, g)", eps(&a, &(&b + &g)), eps(&a, &b) * eps(&a, &g)),
            ("eps(a, b) eps(b, a) = (-1)^(a|b)", parity, eps(&a, &b) * eps(&b, &a)),
        ];
        for (part, expected, actual) in scalar_checks {
            if !t.compare(part, &modes, &BasisState::vacuum(g.clone()), &sign_vector(expected, &origin), &sign_vector(actual, &origin)) {
                return done(c, samples, seed, t, opts, timer);
            }
        }
        let v = FockVector::vacuum(g.clone());
        let e = |x: &LatticeElt, k: i32, w: &FockVector| group_apply(c, x, k, w).expect("exponent ±1");
        let ab = e(&a, 1, &e(&b, 1, &v));
        let ba = e(&b, 1, &e(&a, 1, &v));
        let fused = e(&(&a + &b), 1, &v).scale(&QRat::from_int(eps(&a, &b)));
        let op_checks = [
            ("e_a e_b = (-1)^(a|b) e_b e_a", ba.scale(&QRat::from_int(parity)), ab.clone()),
            ("e_a e_b = eps(a, b) e_(a+b)", fused, ab),
            ("e_a e_a^-1 = 1", v.clone(), e(&a, 1, &e(&a, -1, &v))),
            ("e_a^-1 e_a = 1", v.clone(), e(&a, -1, &e(&a, 1, &v))),
        ];
        for (part, expected, actual) in op_checks {
            if !t.compare(part, &modes, &BasisState::vacuum(g.clone()), &expected, &actual) {
                return done(c, samples, seed, t, opts, timer);
            }
        }
    }
    done(c, samples, seed, t, opts, timer)
}

fn done(c: &CartanData, samples: usize, seed: u64, t: Tally, opts: &CheckOptions, timer: Timer) -> CheckReport {
    let p = params(Some(c), &[("samples", Value::from(samples)), ("seed", Value::from(seed))], opts);
    finish("cocycle", p, t, opts, timer)
}

fn compare_series(t: &mut Tally, part: &str, input: &str, expected: &TruncSeries, actual: &TruncSeries) -> bool {
    let bound = expected.bound().min(actual.bound());
    for n in 0..=bound {
        let state = format!("{}^{n}", expected.var());
        if !t.compare_scalar(part, &[n as i64], input, &state, &expected.coeff(n), &actual.coeff(n)) {
            return false;
        }
    }
    true
}

/// Expansion of `(1 + c x)/(1 - c x)` (`plus`) or `(1 - c x)/(1 + c x)`.
fn mobius(c: &QRat, plus: bool, bound: usize) -> TruncSeries {
    let mut coeffs = vec![QRat::one()];
    let step = if plus { c.clone() } else { -c };
    let mut power = QRat::one();
    for _ in 1..=bound {
        power = &power * &step;
        coeffs.push(power.scale_int(2));
    }
    TruncSeries::new("x", bound, coeffs)
}

/// Exponential forms of the q-binomial series against independent product
/// and closed-form expansions.
pub fn check_series_oracle(homog_bound: usize, twisted_bound: usize, opts: &CheckOptions) -> CheckReport {
    let timer = Timer::start();
    let mut t = Tally::default();
    let ok = (|| {
        for r in -2..=2 {
            let input = format!("r={r}");
            if !compare_series(&mut t, "exp form = q-Pochhammer ratio", &input, &qpow_homog_product(r, homog_bound), &qpow_homog(r, homog_bound)) {
                return false;
            }
        }
        let classical = mobius(&QRat::one(), false, twisted_bound);
        let twisted = TruncSeries::new("x", twisted_bound, qpow_twisted(1, twisted_bound).coeffs().to_vec());
        if !compare_series(&mut t, "twisted r=1 = (1-z)/(1+z)", "r=1", &classical, &twisted) {
            return false;
        }
        // pairing -1: (z + q^{∓1} w)/(z - q^{∓1} w) for equal signs, (z - w)/(z + w) otherwise
        for s in [1i64, -1] {
            let shift = -s;
            let expected = mobius(&QRat::q_pow(shift), true, homog_bound);
            let actual = contraction(-1, PairKind::Same, shift, homog_bound);
            if !compare_series(&mut t, "same-sign contraction at pairing -1", &format!("sign={s}"), &expected, &actual) {
                return false;
            }
        }
        let expected = mobius(&QRat::one(), false, homog_bound);
        compare_series(&mut t, "mixed contraction at pairing -1", "", &expected, &contraction(-1, PairKind::Mixed, 0, homog_bound))
    })();
    debug_assert_eq!(ok, t.witness.is_none());
    let p = params(None, &[("homog_bound", Value::from(homog_bound)), ("twisted_bound", Value::from(twisted_bound))], opts);
    finish("series-oracle", p, t, opts, timer)
}
