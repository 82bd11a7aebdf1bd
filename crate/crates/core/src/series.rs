//! Truncated univariate power series with exact coefficients, the q-analog
//! binomial series and the OPE contraction factors built from them.

use std::fmt;

use crate::coeff::{qint, QRat};
use crate::error::{Error, Result};

/// `c_0 + c_1 x + ... + c_D x^D + O(x^{D+1})`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    var: String,
    coeffs: Vec<QRat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl TruncSeries {
    /// Pads or truncates `coeffs` to `bound + 1` entries.
    pub fn new(var: &str, bound: usize, mut coeffs: Vec<QRat>) -> Self {
        coeffs.resize(bound + 1, QRat::zero());
        Self { var: var.to_string(), coeffs }
    }

    pub fn zero(var: &str, bound: usize) -> Self {
        Self::new(var, bound, Vec::new())
    }

    pub fn one(var: &str, bound: usize) -> Self {
        Self::new(var, bound, vec![QRat::one()])
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Inclusive maximal retained degree.
    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[QRat] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> QRat {
        self.coeffs.get(n).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn truncate(&self, bound: usize) -> Self {
        Self::new(&self.var, bound, self.coeffs[..=bound.min(self.bound())].to_vec())
    }

    fn pair_bound(&self, rhs: &Self) -> usize {
        self.bound().min(rhs.bound())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let d = self.pair_bound(rhs);
        Self::new(&self.var, d, (0..=d).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let d = self.pair_bound(rhs);
        Self::new(&self.var, d, (0..=d).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let d = self.pair_bound(rhs);
        let mut out = vec![QRat::zero(); d + 1];
        for (i, a) in self.coeffs.iter().take(d + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(d + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Self::new(&self.var, d, out)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let b0 = &rhs.coeffs[0];
        if b0.is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let inv0 = b0.inv()?;
        let d = self.pair_bound(rhs);
        let mut out: Vec<QRat> = Vec::with_capacity(d + 1);
        for n in 0..=d {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                if !rhs.coeffs[k].is_zero() {
                    acc -= &(&rhs.coeffs[k] * &out[n - k]);
                }
            }
            out.push(&acc * &inv0);
        }
        Ok(Self::new(&self.var, d, out))
    }

    pub fn arith(&self, rhs: &Self, op: SeriesOp) -> Result<Self> {
        Ok(match op {
            SeriesOp::Add => self.add(rhs),
            SeriesOp::Sub => self.sub(rhs),
            SeriesOp::Mul => self.mul(rhs),
            SeriesOp::Div => self.div(rhs)?,
        })
    }

    pub fn scale(&self, c: &QRat) -> Self {
        Self::new(&self.var, self.bound(), self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `x -> c x`: the n-th coefficient is multiplied by `c^n`.
    pub fn subst_scale(&self, c: &QRat) -> Self {
        let mut p = QRat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            out.push(x * &p);
            p = &p * c;
        }
        Self::new(&self.var, self.bound(), out)
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm { op: "exp", expected: "0", found: self.coeffs[0].to_string() });
        }
        let d = self.bound();
        let mut out = vec![QRat::one()];
        for n in 1..=d {
            let mut acc = QRat::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &(&self.coeffs[k].scale_int(k as i64) * &out[n - k]);
                }
            }
            out.push(&acc * &QRat::ratio(1, n as i64)?);
        }
        Ok(Self::new(&self.var, d, out))
    }

    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm { op: "log", expected: "1", found: self.coeffs[0].to_string() });
        }
        let d = self.bound();
        let mut out = vec![QRat::zero()];
        for n in 1..=d {
            let mut acc = self.coeffs[n].scale_int(n as i64);
            for k in 1..n {
                if !out[k].is_zero() {
                    acc -= &(&out[k].scale_int(k as i64) * &self.coeffs[n - k]);
                }
            }
            out.push(&acc * &QRat::ratio(1, n as i64)?);
        }
        Ok(Self::new(&self.var, d, out))
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*{}", self.var)?,
                _ => write!(f, "{c}*{}^{n}", self.var)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.bound() + 1)
    }
}

/// `(1-z)^r_{q^2} = exp(-sum_{n>=1} [rn]/(n[n]) z^n)`, truncated at degree `bound`.
pub fn qpow_homog(r: i64, bound: usize) -> TruncSeries {
    let mut expo = vec![QRat::zero()];
    for n in 1..=bound as i64 {
        let c = &qint(r * n) / &(&qint(n) * &QRat::from_int(n));
        expo.push(-c);
    }
    TruncSeries::new("z", bound, expo).exp().expect("constant term is zero")
}

/// `((1-z)/(1+z))^r_{q^2} = exp(-sum_{n odd} 2[rn]/(n[n]) z^n)`.
pub fn qpow_twisted(r: i64, bound: usize) -> TruncSeries {
    let mut expo = vec![QRat::zero()];
    for n in 1..=bound as i64 {
        if n % 2 == 0 {
            expo.push(QRat::zero());
            continue;
        }
        let c = &qint(r * n).scale_int(2) / &(&qint(n) * &QRat::from_int(n));
        expo.push(-c);
    }
    TruncSeries::new("z", bound, expo).exp().expect("constant term is zero")
}

/// The q-Pochhammer ratio `(q^{1-r}z; q^2)_inf / (q^{1+r}z; q^2)_inf`.
///
/// The two infinite products share all but `|r|` factors, so the ratio is the
/// finite product `(q^{1-r}z; q^2)_r` for `r >= 0` and the reciprocal of
/// `(q^{1+r}z; q^2)_{|r|}` for `r < 0`. This is computed by multiplying linear
/// factors, independently of the exponential form.
pub fn qpow_homog_product(r: i64, bound: usize) -> TruncSeries {
    let start = if r >= 0 { 1 - r } else { 1 + r };
    let mut prod = TruncSeries::one("z", bound);
    for n in 0..r.abs() {
        let factor = TruncSeries::new("z", bound, vec![QRat::one(), -QRat::q_pow(start + 2 * n)]);
        prod = prod.mul(&factor);
    }
    if r >= 0 {
        prod
    } else {
        TruncSeries::one("z", bound).div(&prod).expect("unit constant term")
    }
}

/// Taylor coefficients at `x = 0` of
/// `(q^a x - 1)/(q^a x + 1) * (x + q^a)/(x - q^a)`.
pub fn g_series(a: i64, bound: usize) -> TruncSeries {
    let qa = QRat::q_pow(a);
    let q2a = QRat::q_pow(2 * a);
    let one = QRat::one();
    let num = TruncSeries::new("x", bound, vec![-qa.clone(), &q2a - &one, qa.clone()]);
    let den = TruncSeries::new("x", bound, vec![-qa.clone(), &one - &q2a, qa]);
    num.div(&den).expect("constant term -q^a is nonzero")
}

/// Whether the two vertex operators in an OPE carry the same or opposite signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Same,
    Mixed,
}

/// OPE contraction factor as a series in `x = w/z`.
///
/// Same-sign pairs give `((1-z)/(1+z))^pairing_{q^2}` at `z = q^{q_shift} x`;
/// mixed pairs give the reciprocal orientation `((1+x)/(1-x))^pairing`.
pub fn contraction(pairing: i64, kind: PairKind, q_shift: i64, bound: usize) -> TruncSeries {
    let base = match kind {
        PairKind::Same => qpow_twisted(pairing, bound),
        PairKind::Mixed => qpow_twisted(-pairing, bound),
    };
    TruncSeries::new("x", bound, base.subst_scale(&QRat::q_pow(q_shift)).coeffs().to_vec())
}
