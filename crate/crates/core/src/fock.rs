//! The Fock space `S(H^-) ⊗ C[Q]` at level one.
//!
//! A basis state is a monomial in the creation operators `a_i(-n)` (n odd,
//! positive) tensored with a group-algebra element `e^beta`. The sign that a
//! twisted group element picks up is folded into the coefficient, so every
//! vector has a unique expansion over these states.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{qint, QRat};
use crate::error::{Error, Result};
use crate::lattice::{CartanData, LatticeElt};

/// One factor `a_node(-part)` of a creation monomial.
pub type Part = (u32, u32);

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BasisState {
    parts: Vec<Part>,
    lattice: LatticeElt,
}

impl BasisState {
    /// Sorts `parts`; each part must be `(node >= 1, odd part >= 1)`.
    pub fn new(mut parts: Vec<Part>, lattice: LatticeElt) -> Self {
        debug_assert!(parts.iter().all(|&(i, n)| i >= 1 && n % 2 == 1));
        parts.sort_unstable();
        Self { parts, lattice }
    }

    pub fn vacuum(lattice: LatticeElt) -> Self {
        Self { parts: Vec::new(), lattice }
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn lattice(&self) -> &LatticeElt {
        &self.lattice
    }

    /// Principal degree: the sum of the creation modes' absolute values.
    pub fn degree(&self) -> u64 {
        self.parts.iter().map(|&(_, n)| n as u64).sum()
    }

    fn with_part(&self, p: Part) -> Self {
        let pos = self.parts.partition_point(|x| *x < p);
        let mut parts = Vec::with_capacity(self.parts.len() + 1);
        parts.extend_from_slice(&self.parts[..pos]);
        parts.push(p);
        parts.extend_from_slice(&self.parts[pos..]);
        Self { parts, lattice: self.lattice.clone() }
    }

    fn merged(&self, extra: &[Part]) -> Self {
        if extra.is_empty() {
            return self.clone();
        }
        let mut parts = Vec::with_capacity(self.parts.len() + extra.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(extra);
        parts.sort_unstable();
        Self { parts, lattice: self.lattice.clone() }
    }

    fn with_lattice(&self, lattice: LatticeElt) -> Self {
        Self { parts: self.parts.clone(), lattice }
    }
}

pub fn degree(s: &BasisState) -> u64 {
    s.degree()
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(i, n) in self.parts.iter().rev() {
            write!(f, "a{i}(-{n})")?;
        }
        write!(f, "|{}⟩", self.lattice)
    }
}

/// A finite linear combination of basis states; no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FockVector {
    terms: BTreeMap<BasisState, QRat>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum(beta: LatticeElt) -> Self {
        Self::basis(BasisState::vacuum(beta))
    }

    pub fn basis(s: BasisState) -> Self {
        Self::term(s, QRat::one())
    }

    pub fn term(s: BasisState, c: QRat) -> Self {
        let mut v = Self::zero();
        v.add_term(s, c);
        v
    }

    pub fn add_term(&mut self, s: BasisState, c: QRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisState, &QRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &BasisState) -> QRat {
        self.terms.get(s).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn scale(&self, c: &QRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Self { terms: self.terms.iter().map(|(s, x)| (s.clone(), x * c)).collect() }
    }

    pub fn add_scaled(&mut self, other: &FockVector, c: &QRat) {
        if c.is_zero() {
            return;
        }
        for (s, x) in &other.terms {
            self.add_term(s.clone(), if c.is_one() { x.clone() } else { x * c });
        }
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<u64> {
        let mut d: Vec<u64> = self.terms.keys().map(BasisState::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn max_degree(&self) -> u64 {
        self.terms.keys().map(BasisState::degree).max().unwrap_or(0)
    }

    /// The first state (in canonical order) where `self` and `other` differ.
    pub fn first_difference(&self, other: &FockVector) -> Option<(BasisState, QRat, QRat)> {
        let mut keys: Vec<&BasisState> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|k| {
            let (a, b) = (self.coeff(k), other.coeff(k));
            (a != b).then(|| (k.clone(), a, b))
        })
    }

    /// Multiplies every state by the creation monomial `extra`, scaled by `c`,
    /// accumulating into `out`.
    pub fn mul_creation_into(&self, extra: &[Part], c: &QRat, out: &mut FockVector) {
        for (s, x) in &self.terms {
            out.add_term(s.merged(extra), x * c);
        }
    }
}

impl std::ops::Add for &FockVector {
    type Output = FockVector;
    fn add(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &QRat::one());
        out
    }
}

impl std::ops::Sub for &FockVector {
    type Output = FockVector;
    fn sub(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &QRat::from_int(-1));
        out
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{s}")?;
        }
        Ok(())
    }
}

/// `[a_i(m), a_j(-m)]` at level one for `m > 0`: `[a_ij m] [m] / (2m)`.
pub fn bracket_scalar(a_ij: i64, m: i64) -> QRat {
    let num = &qint(a_ij * m) * &qint(m);
    &num * &QRat::ratio(1, 2 * m).expect("m != 0")
}

fn check_mode(m: i64) -> Result<()> {
    if m == 0 || m % 2 == 0 {
        return Err(Error::Usage(format!("Heisenberg mode must be odd and nonzero, got {m}")));
    }
    Ok(())
}

/// `a_i(m)` for a simple node `i`: multiplication for `m < 0`, the
/// contraction derivation for `m > 0`.
pub fn heis_apply_simple(c: &CartanData, i: usize, m: i64, v: &FockVector) -> Result<FockVector> {
    check_mode(m)?;
    let mut out = FockVector::zero();
    if m < 0 {
        let p = (i as u32, (-m) as u32);
        for (s, x) in v.iter() {
            out.add_term(s.with_part(p), x.clone());
        }
        return Ok(out);
    }
    let scalars: Vec<QRat> = (1..=c.rank()).map(|j| bracket_scalar(c.entry(i, j), m)).collect();
    let part = m as u32;
    for (s, x) in v.iter() {
        let mut k = 0;
        while k < s.parts.len() {
            let p = s.parts[k];
            let run = s.parts[k..].iter().take_while(|&&y| y == p).count();
            if p.1 == part {
                let sc = &scalars[p.0 as usize - 1];
                if !sc.is_zero() {
                    let mut parts = s.parts.clone();
                    parts.remove(k);
                    let t = BasisState { parts, lattice: s.lattice.clone() };
                    out.add_term(t, &(x * sc) * &QRat::from_int(run as i64));
                }
            }
            k += run;
        }
    }
    Ok(out)
}

/// `a_alpha(m) = sum_i c_i a_i(m)` for `alpha = sum_i c_i alpha_i`.
pub fn heis_apply(c: &CartanData, alpha: &LatticeElt, m: i64, v: &FockVector) -> Result<FockVector> {
    check_mode(m)?;
    let mut out = FockVector::zero();
    for (i, &ci) in alpha.coords().iter().enumerate() {
        if ci != 0 {
            out.add_scaled(&heis_apply_simple(c, i + 1, m, v)?, &QRat::from_int(ci));
        }
    }
    Ok(out)
}

/// The group element `e_alpha^{±1}` acting on the twisted group algebra:
/// `e_alpha |beta⟩ = eps(alpha, beta) |beta + alpha⟩`, and its inverse.
pub fn group_apply(c: &CartanData, alpha: &LatticeElt, exponent: i32, v: &FockVector) -> Result<FockVector> {
    if exponent != 1 && exponent != -1 {
        return Err(Error::Usage(format!("group exponent must be ±1, got {exponent}")));
    }
    let mut out = FockVector::zero();
    for (s, x) in v.iter() {
        let (target, sign) = if exponent == 1 {
            (&s.lattice + alpha, c.cocycle(alpha, &s.lattice))
        } else {
            let t = &s.lattice - alpha;
            let sign = c.cocycle(alpha, &t);
            (t, sign)
        };
        let coeff = if sign == 1 { x.clone() } else { -x };
        out.add_term(s.with_lattice(target), coeff);
    }
    Ok(out)
}

/// All creation monomials on `nodes` of total degree at most `max_degree`.
pub fn heisenberg_monomials(nodes: &[usize], max_degree: u32) -> Vec<Vec<Part>> {
    let gens: Vec<Part> = (1..=max_degree)
        .step_by(2)
        .flat_map(|n| nodes.iter().map(move |&i| (i as u32, n)))
        .collect();
    let mut out = Vec::new();
    fn rec(gens: &[Part], start: usize, budget: u32, cur: &mut Vec<Part>, out: &mut Vec<Vec<Part>>) {
        out.push(cur.clone());
        for k in start..gens.len() {
            let g = gens[k];
            if g.1 <= budget {
                cur.push(g);
                rec(gens, k, budget - g.1, cur, out);
                cur.pop();
            }
        }
    }
    rec(&gens, 0, max_degree, &mut Vec::new(), &mut out);
    for m in out.iter_mut() {
        m.sort_unstable();
    }
    out.sort_by_key(|m| (m.iter().map(|p| p.1).sum::<u32>(), m.clone()));
    out
}
