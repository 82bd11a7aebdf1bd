//! Sparse multivariate Laurent polynomials over [`QRat`] with named variables,
//! the symmetric-group actions on them, and the polynomial identities behind
//! the Serre relations.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::QRat;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, QRat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: QRat) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    /// `c * name`.
    pub fn var(vars: &[&str], name: &str, c: QRat) -> Self {
        let mut p = Self::zero(vars);
        let mut e = vec![0; vars.len()];
        let k = vars.iter().position(|v| *v == name).unwrap_or_else(|| panic!("unknown variable {name}"));
        e[k] = 1;
        p.add_term(e, c);
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &QRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i64]) -> QRat {
        self.terms.get(exps).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: QRat) {
        assert_eq!(exps.len(), self.vars.len(), "exponent arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Re-expresses `self` over `vars`, which must contain all its variables.
    fn embed(&self, vars: &[String]) -> Self {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let map: Vec<usize> = self.vars.iter().map(|v| vars.iter().position(|u| u == v).expect("superset")).collect();
        let mut out = Self { vars: vars.to_vec(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let mut f = vec![0; vars.len()];
            for (k, &x) in e.iter().enumerate() {
                f[map[k]] = x;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    fn align(&self, rhs: &Self) -> (Self, Self) {
        if self.vars == rhs.vars {
            return (self.clone(), rhs.clone());
        }
        let mut vars = self.vars.clone();
        for v in &rhs.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        (self.embed(&vars), rhs.embed(&vars))
    }

    pub fn arith(&self, rhs: &Self, op: PolyOp) -> Self {
        match op {
            PolyOp::Add => self + rhs,
            PolyOp::Sub => self - rhs,
            PolyOp::Mul => self * rhs,
        }
    }

    pub fn scale(&self, c: &QRat) -> Self {
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&QRat) -> QRat) -> Self {
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, x) in &self.terms {
            out.add_term(e.clone(), f(x));
        }
        out
    }

    fn var_indices(&self, vars: &[&str]) -> Result<Vec<usize>> {
        vars.iter()
            .map(|v| self.vars.iter().position(|u| u == v).ok_or_else(|| Error::Usage(format!("variable {v} not present"))))
            .collect()
    }

    /// Coefficient polynomial of `name^k`, with `name` removed.
    pub fn coeff_of(&self, name: &str, k: i64) -> Result<Self> {
        let idx = self.var_indices(&[name])?[0];
        let vars: Vec<&str> = self.vars.iter().filter(|v| *v != name).map(String::as_str).collect();
        let mut out = Self::zero(&vars);
        for (e, c) in &self.terms {
            if e[idx] == k {
                let mut f = e.clone();
                f.remove(idx);
                out.add_term(f, c.clone());
            }
        }
        Ok(out)
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.align(other);
        a.terms == b.terms
    }
}

impl std::ops::Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let (mut a, b) = self.align(rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&QRat::from_int(-1))
    }
}

impl std::ops::Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let (a, b) = self.align(rhs);
        let mut out = MPoly { vars: a.vars.clone(), terms: BTreeMap::new() };
        for (e, x) in &a.terms {
            for (f, y) in &b.terms {
                let g: Vec<i64> = e.iter().zip(f).map(|(s, t)| s + t).collect();
                out.add_term(g, x * y);
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &x) in self.vars.iter().zip(e) {
                match x {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{x}")?,
                }
            }
        }
        Ok(())
    }
}

/// Renders a monomial exponent vector, e.g. `z1^2*w`.
pub fn monomial_string(vars: &[String], e: &[i64]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &x)| x != 0)
        .map(|(v, &x)| if x == 1 { v.clone() } else { format!("{v}^{x}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Visits every permutation of `0..n` with its sign (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize], i64)) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1;
    f(&perm, sign);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            f(&perm, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Relabels `vars[k] -> vars[sigma[k]]` in `p`.
pub fn sym_action(sigma: &[usize], p: &MPoly, vars: &[&str]) -> Result<MPoly> {
    if sigma.len() != vars.len() {
        return Err(Error::Usage(format!("permutation of {} points acting on {} variables", sigma.len(), vars.len())));
    }
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        if s >= sigma.len() || std::mem::replace(&mut seen[s], true) {
            return Err(Error::Usage(format!("{sigma:?} is not a permutation")));
        }
    }
    let idx = p.var_indices(vars)?;
    let mut out = MPoly { vars: p.vars.clone(), terms: BTreeMap::new() };
    for (e, c) in &p.terms {
        let mut f = e.clone();
        for (k, &s) in sigma.iter().enumerate() {
            f[idx[s]] = e[idx[k]];
        }
        out.add_term(f, c.clone());
    }
    Ok(out)
}

fn permutation_sum(p: &MPoly, vars: &[&str], signed: bool) -> Result<MPoly> {
    let idx = p.var_indices(vars)?;
    let mut out = MPoly { vars: p.vars.clone(), terms: BTreeMap::new() };
    for_each_permutation(vars.len(), |sigma, sign| {
        for (e, c) in &p.terms {
            let mut f = e.clone();
            for (k, &s) in sigma.iter().enumerate() {
                f[idx[s]] = e[idx[k]];
            }
            out.add_term(f, if signed && sign < 0 { -c } else { c.clone() });
        }
    });
    Ok(out)
}

/// `sum_sigma sgn(sigma) sigma.p` over all permutations of `vars`.
pub fn antisymmetrize(p: &MPoly, vars: &[&str]) -> Result<MPoly> {
    permutation_sum(p, vars, true)
}

/// `sum_sigma sigma.p` over all permutations of `vars`.
pub fn symmetrize(p: &MPoly, vars: &[&str]) -> Result<MPoly> {
    permutation_sum(p, vars, false)
}

/// `[a, b; k]_{q^2} = (a - b)(a - b q^2) ... (a - b q^{2(k-1)})`.
pub fn qbracket(a: &MPoly, b: &MPoly, k: i64) -> Result<MPoly> {
    if k < 1 {
        return Err(Error::Usage(format!("q-bracket length must be positive, got {k}")));
    }
    let mut out = MPoly::constant(&[], QRat::one());
    for j in 0..k {
        out = &out * &(a - &b.scale(&QRat::q_pow(2 * j)));
    }
    Ok(out)
}

/// `[z, w; k]_{q^2}` in the named variables.
pub fn qbracket_poly(zvar: &str, wvar: &str, k: i64) -> Result<MPoly> {
    let vars = [zvar, wvar];
    qbracket(&MPoly::var(&vars, zvar, QRat::one()), &MPoly::var(&vars, wvar, QRat::one()), k)
}

/// Number of `q^{-1}` occurrences in the cubic Serre polynomial build.
pub const SERRE_K1_QINV_SITES: usize = 12;

/// The `S_2`-symmetrized cubic Serre polynomial in `z1, z2, w`:
///
/// `sum_sigma sigma.{ (z1-z2) ( z2 (z1+q^-1 w)(z2+q^-1 w)(w-q^-1 z1)(w-q^-1 z2)
///   + (z1+z2)(z1+q^-1 w)(z2-q^-1 w)(w-q^-1 z1)(w+q^-1 z2)
///   + z1 (z1-q^-1 w)(z2-q^-1 w)(w+q^-1 z1)(w+q^-1 z2) ) }`.
pub fn serre_poly_k1() -> MPoly {
    serre_poly_k1_with_site(None)
}

/// As [`serre_poly_k1`], with the `site`-th `q^{-1}` (0-based, reading
/// order) replaced by `q^{-2}`.
pub fn serre_poly_k1_with_site(site: Option<usize>) -> MPoly {
    let vars = ["z1", "z2", "w"];
    let x = |n: &str| MPoly::var(&vars, n, QRat::one());
    let mut counter = 0usize;
    let mut qinv = || {
        let c = if Some(counter) == site { QRat::q_pow(-2) } else { QRat::q_pow(-1) };
        counter += 1;
        c
    };
    // a + s * q^-1 * b
    let mut lin = |a: &str, s: i64, b: &str| &x(a) + &x(b).scale(&qinv().scale_int(s));
    let (z1, z2) = (x("z1"), x("z2"));
    let t1 = &(&(&(&z2 * &lin("z1", 1, "w")) * &lin("z2", 1, "w")) * &lin("w", -1, "z1")) * &lin("w", -1, "z2");
    let t2 = &(&(&(&(&z1 + &z2) * &lin("z1", 1, "w")) * &lin("z2", -1, "w")) * &lin("w", -1, "z1")) * &lin("w", 1, "z2");
    let t3 = &(&(&(&z1 * &lin("z1", -1, "w")) * &lin("z2", -1, "w")) * &lin("w", 1, "z1")) * &lin("w", 1, "z2");
    let inner = &(&z1 - &z2) * &(&(&t1 + &t2) + &t3);
    symmetrize(&inner, &["z1", "z2"]).expect("variables present")
}

fn z_names(k: i64) -> Vec<String> {
    (1..=k + 1).map(|s| format!("z{s}")).collect()
}

/// The `r`-th summand of the polynomial `f(z_1..z_{k+1})`: the first `r`
/// variables carry `[z_s, -w q^-k][w, z_s q^-k]`, the remaining ones
/// `[w, -z_s q^-k][z_s, w q^-k]` (all brackets of length `k`).
pub fn serre_f_summand(k: i64, r: i64) -> Result<MPoly> {
    if k < 1 || !(0..=k + 1).contains(&r) {
        return Err(Error::Usage(format!("summand {r} of f for k = {k}")));
    }
    let names = z_names(k);
    let mut vars: Vec<&str> = names.iter().map(String::as_str).collect();
    vars.push("w");
    let x = |n: &str| MPoly::var(&vars, n, QRat::one());
    let qk = QRat::q_pow(-k);
    let w = x("w");
    let mut out = MPoly::constant(&vars, QRat::one());
    for (s, name) in names.iter().enumerate() {
        let z = x(name);
        let factor = if (s as i64) < r {
            &qbracket(&z, &w.scale(&-&qk), k)? * &qbracket(&w, &z.scale(&qk), k)?
        } else {
            &qbracket(&w, &z.scale(&-&qk), k)? * &qbracket(&z, &w.scale(&qk), k)?
        };
        out = &out * &factor;
    }
    Ok(out)
}

/// `f(z_1..z_{k+1}) = sum_{r=0}^{k+1} summand_r`.
pub fn serre_f(k: i64) -> Result<MPoly> {
    let mut f = serre_f_summand(k, 0)?;
    for r in 1..=k + 1 {
        f = &f + &serre_f_summand(k, r)?;
    }
    Ok(f)
}

/// Antisymmetrization of `f` over `z_1..z_{k+1}`.
pub fn serre_f_check(k: i64) -> Result<MPoly> {
    if k < 2 {
        return Err(Error::Usage(format!("serre_f_check needs k >= 2, got {k}")));
    }
    let names = z_names(k);
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    antisymmetrize(&serre_f(k)?, &vars)
}

#[cfg(test)]
mod tests {
    use super::*;

    const V2: [&str; 2] = ["z1", "z2"];
    const V3: [&str; 3] = ["z1", "z2", "z3"];

    fn x(vars: &[&str], n: &str) -> MPoly {
        MPoly::var(vars, n, QRat::one())
    }

    fn mono(vars: &[&str], e: Vec<i64>) -> MPoly {
        let mut p = MPoly::zero(vars);
        p.add_term(e, QRat::one());
        p
    }

    #[test]
    fn arith_examples() {
        let (z1, z2) = (x(&V2, "z1"), x(&V2, "z2"));
        let lhs = &(&z1 - &z2) * &(&z1 + &z2);
        assert_eq!(lhs, &(&z1 * &z1) - &(&z2 * &z2));
        let zw = ["z", "w"];
        let a = &x(&zw, "z") + &MPoly::var(&zw, "w", QRat::q_pow(-1));
        assert!((&a - &a).is_zero());
        // (z - w)(z - w q^2) = z^2 - (1+q^2) w z + q^2 w^2, expanded term by term
        let (z, w) = (x(&zw, "z"), x(&zw, "w"));
        let p = &(&z - &w) * &(&z - &w.scale(&QRat::q_pow(2)));
        assert_eq!(p.coeff(&[2, 0]), QRat::one());
        assert_eq!(p.coeff(&[1, 1]), -(&QRat::one() + &QRat::q_pow(2)));
        assert_eq!(p.coeff(&[0, 2]), QRat::q_pow(2));
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn variable_union() {
        let a = MPoly::var(&["z"], "z", QRat::one());
        let b = MPoly::var(&["w"], "w", QRat::one());
        let s = &a + &b;
        assert_eq!(s.vars(), &["z".to_string(), "w".to_string()]);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn action_examples() {
        let p = &x(&V2, "z1") - &x(&V2, "z2");
        assert_eq!(sym_action(&[1, 0], &p, &V2).unwrap(), -&p);
        assert_eq!(sym_action(&[0, 1], &p, &V2).unwrap(), p);
        let m = mono(&V3, vec![1, 2, 0]);
        assert_eq!(sym_action(&[1, 2, 0], &m, &V3).unwrap(), mono(&V3, vec![0, 1, 2]));
        assert!(sym_action(&[0, 1, 2], &p, &V2).is_err());
        assert!(sym_action(&[0, 0], &p, &V2).is_err());
    }

    #[test]
    fn antisymmetrize_examples() {
        let z1 = x(&V2, "z1");
        assert_eq!(antisymmetrize(&z1, &V2).unwrap(), &z1 - &x(&V2, "z2"));
        let sym12 = &(&x(&V3, "z1") * &x(&V3, "z2")) + &x(&V3, "z3");
        assert!(antisymmetrize(&sym12, &V3).unwrap().is_zero());
        let p = &mono(&V3, vec![2, 1, 0]) + &mono(&V3, vec![0, 0, 3]).scale(&QRat::q_pow(1));
        let a = antisymmetrize(&p, &V3).unwrap();
        assert_eq!(antisymmetrize(&a, &V3).unwrap(), a.scale(&QRat::from_int(6)));
    }

    #[test]
    fn symmetrize_examples() {
        let (z1, z2) = (x(&V2, "z1"), x(&V2, "z2"));
        assert_eq!(symmetrize(&z1, &V2).unwrap(), &z1 + &z2);
        assert!(symmetrize(&(&z1 - &z2), &V2).unwrap().is_zero());
        assert_eq!(symmetrize(&(&z1 * &z2), &V2).unwrap(), (&z1 * &z2).scale(&QRat::from_int(2)));
    }

    #[test]
    fn antisymmetrize_respects_sign() {
        let p = &mono(&V3, vec![3, 1, 0]) + &mono(&V3, vec![0, 2, 1]).scale(&QRat::q_pow(-1));
        let base = antisymmetrize(&p, &V3).unwrap();
        for_each_permutation(3, |sigma, sign| {
            let moved = sym_action(sigma, &p, &V3).unwrap();
            assert_eq!(antisymmetrize(&moved, &V3).unwrap(), base.scale(&QRat::from_int(sign)));
        });
    }

    #[test]
    fn permutations_enumerated_once() {
        let mut seen = std::collections::BTreeSet::new();
        let mut total = 0;
        for_each_permutation(4, |p, s| {
            seen.insert(p.to_vec());
            // sign from inversion count
            let inv = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            assert_eq!(s, if inv % 2 == 0 { 1 } else { -1 });
            total += 1;
        });
        assert_eq!((seen.len(), total), (24, 24));
    }

    #[test]
    fn qbracket_examples() {
        let zw = ["z", "w"];
        assert_eq!(qbracket_poly("z", "w", 1).unwrap(), &x(&zw, "z") - &x(&zw, "w"));
        let b2 = qbracket_poly("z", "w", 2).unwrap();
        assert_eq!(b2.coeff(&[1, 1]), -(&QRat::one() + &QRat::q_pow(2)));
        for k in 1..=5 {
            let b = qbracket_poly("z", "w", k).unwrap();
            assert_eq!(b.coeff(&[k, 0]), QRat::one());
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(b.coeff(&[0, k]), QRat::q_pow(k * (k - 1)).scale_int(sign));
            // q -> 1 gives (z - w)^k
            let classical = b.map_coeffs(|c| {
                let r = c.specialize_q1().unwrap();
                QRat::from_bigint(r.to_integer())
            });
            let mut expect = MPoly::constant(&zw, QRat::one());
            for _ in 0..k {
                expect = &expect * &(&x(&zw, "z") - &x(&zw, "w"));
            }
            assert_eq!(classical, expect);
        }
        assert!(qbracket_poly("z", "w", 0).is_err());
    }

    #[test]
    fn serre_f_summands_have_transposition_symmetry() {
        let names = ["z1", "z2", "z3"];
        for r in 0..=3 {
            let s = serre_f_summand(2, r).unwrap();
            let (a, b) = if r >= 2 { (0, 1) } else { (1, 2) };
            let mut sigma = vec![0, 1, 2];
            sigma.swap(a, b);
            assert_eq!(sym_action(&sigma, &s, &names).unwrap(), s, "r = {r}");
        }
        assert!(serre_f_check(1).is_err());
    }

    #[test]
    fn serre_f_vanishes_for_k2() {
        assert!(serre_f_check(2).unwrap().is_zero());
    }
}
