//! Acceptance suite: one line per criterion, exact comparisons throughout.
//! Exits non-zero if any criterion fails.

use std::time::Instant;

use toroidal_fock::coeff::QRat;
use toroidal_fock::polyring::serre_poly_k1;
use toroidal_fock::relations::{
    check_cocycle, check_delta, check_factorization, check_heisenberg, check_locality, check_ope, check_phipsi,
    check_serre_operator, check_serre_symbolic, CheckOptions, CheckReport, Perturbation,
};
use toroidal_fock::series::{qpow_homog, qpow_twisted};
use toroidal_fock::{CartanData, TruncSeries};

struct Outcome {
    ok: bool,
    detail: String,
}

fn summarize(reports: &[CheckReport]) -> Outcome {
    let ok = reports.iter().all(CheckReport::passed);
    let detail = reports
        .iter()
        .map(|r| {
            let mut s = format!("{}[{}] {:?} ({} coeffs, {} ms)", r.suite, r.params.get("cartan").map(|v| v.to_string()).unwrap_or_default(), r.status, r.checked, r.ms);
            if let Some(w) = &r.witness {
                s += &format!(" witness {} modes {:?} on {} at {}: expected {} got {}", w.part, w.modes, w.input, w.state, w.expected, w.actual);
            }
            s
        })
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { ok, detail }
}

fn cartan(name: &str) -> CartanData {
    CartanData::builtin(name).expect("builtin type")
}

/// `prod_{k} (1 - q^{e_k} z)` over the listed exponents.
fn linear_product(exps: impl Iterator<Item = i64>, bound: usize) -> TruncSeries {
    let mut p = TruncSeries::one("z", bound);
    for e in exps {
        p = p.mul(&TruncSeries::new("z", bound, vec![QRat::one(), -QRat::q_pow(e)]));
    }
    p
}

fn criterion_1() -> Outcome {
    let p = serre_poly_k1();
    let r = check_serre_symbolic(1, &CheckOptions::default()).unwrap();
    let mut o = summarize(&[r]);
    o.ok &= p.is_zero();
    o.detail += &format!("; polynomial has {} terms", p.len());
    o
}

fn criterion_2() -> Outcome {
    let reports: Vec<_> = [2, 3].iter().map(|&k| check_serre_symbolic(k, &CheckOptions::default()).unwrap()).collect();
    summarize(&reports)
}

fn criterion_3() -> Outcome {
    // (1-z)^r_{q^2} = (q^{1-r}z; q^2)_inf / (q^{1+r}z; q^2)_inf; the common
    // factors cancel, leaving a finite product or its reciprocal.
    let bound = 12;
    let mut bad = Vec::new();
    for r in -2i64..=2 {
        let oracle = if r >= 0 {
            linear_product((0..r).map(|k| 1 - r + 2 * k), bound)
        } else {
            TruncSeries::one("z", bound).div(&linear_product((0..-r).map(|k| 1 + r + 2 * k), bound)).unwrap()
        };
        if qpow_homog(r, bound) != oracle {
            bad.push(format!("r={r}"));
        }
    }
    let classical: Vec<QRat> = (0..=20).map(|n| if n == 0 { QRat::one() } else { QRat::from_int(if n % 2 == 0 { 2 } else { -2 }) }).collect();
    if qpow_twisted(1, 20) != TruncSeries::new("z", 20, classical) {
        bad.push("twisted r=1".into());
    }
    Outcome { ok: bad.is_empty(), detail: if bad.is_empty() { "all series agree".into() } else { format!("mismatch: {}", bad.join(", ")) } }
}

fn criterion_4() -> Outcome {
    let o = CheckOptions::default();
    summarize(&[check_heisenberg(&cartan("A2"), 5, 7, &o), check_heisenberg(&cartan("A1"), 5, 7, &o)])
}

fn criterion_5() -> Outcome {
    summarize(&[check_cocycle(&cartan("A3"), 1000, 2024, &CheckOptions::default())])
}

fn criterion_6() -> Outcome {
    let o = CheckOptions::default();
    summarize(&[check_ope(&cartan("A1"), 5, &o), check_ope(&cartan("A2"), 5, &o)])
}

fn criterion_7() -> Outcome {
    let o = CheckOptions::default();
    summarize(&[check_factorization(&cartan("A1"), 8, &o), check_factorization(&cartan("A2"), 8, &o)])
}

fn criterion_8() -> Outcome {
    let o = CheckOptions::default();
    let (a1, a2) = (cartan("A1"), cartan("A2"));
    summarize(&[check_delta(&a1, 1, 3, 3, &o), check_delta(&a2, 1, 3, 3, &o), check_delta(&a2, 2, 3, 3, &o)])
}

fn criterion_9() -> Outcome {
    let r = check_locality(&cartan("A3"), 4, &CheckOptions::default());
    let both = r.params["orthogonal_pairs"].as_u64().unwrap() > 0 && r.params["antilocal_pairs"].as_u64().unwrap() > 0;
    let mut o = summarize(&[r]);
    o.ok &= both;
    o
}

fn criterion_10() -> Outcome {
    summarize(&[check_phipsi(&cartan("A2"), 6, &CheckOptions::default())])
}

fn criterion_11() -> Outcome {
    let op = check_serre_operator(&cartan("A2"), 3, &CheckOptions::default());
    let sym = check_serre_symbolic(1, &CheckOptions::default()).unwrap();
    let agree = op.passed() && sym.passed();
    let mut o = summarize(&[op, sym]);
    o.ok = agree;
    o
}

fn criterion_12() -> Outcome {
    let a2 = cartan("A2");
    let m = CheckOptions::perturbed;
    let reports = vec![
        ("heisenberg", check_heisenberg(&a2, 5, 7, &m(Perturbation::HeisenbergNoHalf))),
        ("ope", check_ope(&a2, 3, &m(Perturbation::OpePairingFlipped))),
        ("locality", check_locality(&cartan("A3"), 2, &m(Perturbation::LocalityMinus))),
        ("delta", check_delta(&a2, 1, 3, 3, &m(Perturbation::DeltaUnitScalar))),
        ("phipsi G1", check_phipsi(&a2, 4, &m(Perturbation::GFirstNegated))),
        ("serre-sym", check_serre_symbolic(1, &m(Perturbation::SerreSite(0))).unwrap()),
        ("serre-op", check_serre_operator(&a2, 3, &m(Perturbation::SerrePrefactor))),
    ];
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for (name, r) in &reports {
        match &r.witness {
            Some(w) if !r.passed() => notes.push(format!("{name}: {} {:?}", w.part, w.modes)),
            _ => bad.push(name.to_string()),
        }
    }
    let heis_at_first_modes = reports[0].1.witness.as_ref().is_some_and(|w| w.modes == [1, -1]);
    if !heis_at_first_modes {
        bad.push("heisenberg witness not at (1, -1)".into());
    }
    let detail = if bad.is_empty() { format!("all perturbations detected: {}", notes.join("; ")) } else { format!("undetected: {}", bad.join(", ")) };
    Outcome { ok: bad.is_empty(), detail }
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 12] = [
        (1, "cubic Serre polynomial vanishes", criterion_1),
        (2, "antisymmetrized f vanishes for k = 2, 3", criterion_2),
        (3, "q-binomial exponential forms match product oracles", criterion_3),
        (4, "Heisenberg brackets (A1, A2; M = 5, D = 7)", criterion_4),
        (5, "cocycle and group law on 1000 random A3 triples", criterion_5),
        (6, "OPE (A1, A2; D = 5)", criterion_6),
        (7, "current factorization to degree 8 (A1, A2)", criterion_7),
        (8, "delta commutator (A1, A2; M = 3, D = 3)", criterion_8),
        (9, "locality and anti-locality (A3; D = 4)", criterion_9),
        (10, "Cartan-current conjugation (A2; D = 6)", criterion_10),
        (11, "operator-level Serre (A2; D = 3) agrees with symbolic", criterion_11),
        (12, "every checker detects its perturbation", criterion_12),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (n, name, f) in criteria {
        if filter.is_some_and(|k| k != n) {
            continue;
        }
        let start = Instant::now();
        let o = f();
        let verdict = if o.ok { "PASS" } else { "FAIL" };
        if !o.ok {
            failed += 1;
        }
        println!("criterion {n:>2} {verdict} {name} [{:.1} s]: {}", start.elapsed().as_secs_f64(), o.detail);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
