//! Exact arithmetic in the coefficient field.
//!
//! Every scalar lives in `Q(v)` with `v = q^{1/2}`, so the half-integer powers
//! `q^{±n/2}` that appear in the vertex operators stay inside one rational
//! function field. A [`QRat`] is a reduced fraction of integer Laurent
//! polynomials in `v`; its `Display` shows exponents in terms of `q`.

mod laurent;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use laurent::Laurent;
use laurent::{poly_div_exact, poly_gcd};

use crate::error::{Error, Result};

/// Element of `Q(q^{1/2})` in canonical form.
///
/// The denominator has lowest `v`-power zero and a positive leading
/// coefficient, and shares no nonunit factor with the numerator in `Z[v]`.
/// Structural equality is therefore equality of field elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct QRat {
    num: Laurent,
    den: Laurent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl QRat {
    pub fn zero() -> Self {
        Self { num: Laurent::zero(), den: Laurent::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(Laurent::monomial(BigInt::from(n), 0))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_laurent(Laurent::monomial(n, 0))
    }

    /// The rational number `n / d`.
    pub fn ratio(n: i64, d: i64) -> Result<Self> {
        Self::new(Laurent::monomial(n.into(), 0), Laurent::monomial(d.into(), 0))
    }

    pub fn from_laurent(num: Laurent) -> Self {
        Self { num, den: Laurent::one() }
    }

    /// `q^n`.
    pub fn q_pow(n: i64) -> Self {
        Self::half_pow(2 * n)
    }

    /// `q^{k/2}`, i.e. `v^k`.
    pub fn half_pow(k: i64) -> Self {
        Self::from_laurent(Laurent::monomial(BigInt::one(), k))
    }

    pub fn new(num: Laurent, den: Laurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Laurent, den: Laurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let num = num.shift(-den.low());
        let den = den.shift(-den.low());
        if den.is_monomial() {
            let c = den.coeffs()[0].clone();
            if c.is_one() {
                return Self { num, den };
            }
        }
        let g = poly_gcd(num.coeffs(), den.coeffs());
        let (mut num, mut den) = if g.len() == 1 && g[0].is_one() {
            (num, den)
        } else {
            (div_by(&num, &g), div_by(&den, &g))
        };
        if den.leading().is_some_and(|c| c.is_negative()) {
            num = -&num;
            den = -&den;
        }
        Self { num, den }
    }

    pub fn numer(&self) -> &Laurent {
        &self.num
    }

    pub fn denom(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial in `v`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn arith(&self, rhs: &Self, op: ArithOp) -> Result<Self> {
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
            ArithOp::Div => self.checked_div(rhs)?,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self * &Self::from_int(k)
    }

    /// Multiplication by `v^k = q^{k/2}`.
    pub fn shift_half(&self, k: i64) -> Self {
        Self { num: self.num.shift(k), den: self.den.clone() }
    }

    /// The rational number obtained at `q = 1`.
    pub fn specialize_q1(&self) -> Result<BigRational> {
        let d = self.den.eval_one();
        if d.is_zero() {
            return Err(Error::PoleAtOne(self.den.to_string()));
        }
        Ok(BigRational::new(self.num.eval_one(), d))
    }
}

fn div_by(p: &Laurent, g: &[BigInt]) -> Laurent {
    Laurent::from_coeffs(p.low(), poly_div_exact(p.coeffs(), g))
}

/// The symmetric q-integer `[n] = (q^n - q^{-n}) / (q - q^{-1})`.
pub fn qint(n: i64) -> QRat {
    let m = n.abs();
    let sign = n.signum();
    let terms = (0..m).map(|j| (sign, 2 * (m - 1 - 2 * j)));
    QRat::from_laurent(Laurent::from_terms(terms))
}

/// `q - q^{-1}`.
pub fn q_minus_qinv() -> QRat {
    QRat::from_laurent(Laurent::from_terms([(1, 2), (-1, -2)]))
}

pub fn qrat_arith(a: &QRat, b: &QRat, op: ArithOp) -> Result<QRat> {
    a.arith(b, op)
}

impl Default for QRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QRat {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return QRat::from_laurent(&self.num + &rhs.num);
            }
            return QRat::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = poly_gcd(self.den.coeffs(), rhs.den.coeffs());
        let b1 = div_by(&self.den, &g);
        let d1 = div_by(&rhs.den, &g);
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        QRat::reduce(num, &self.den * &d1)
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QRat::from_laurent(&self.num * &rhs.num);
        }
        // cross-cancel before multiplying
        let cancel = |num: &Laurent, den: &Laurent| {
            if den.is_one() {
                return (num.clone(), den.clone());
            }
            let g = poly_gcd(num.coeffs(), den.coeffs());
            if g.len() == 1 && g[0].is_one() {
                (num.clone(), den.clone())
            } else {
                (div_by(num, &g), div_by(den, &g))
            }
        };
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let (num, den) = if den.leading().is_some_and(|c| c.is_negative()) {
            (-&num, -&den)
        } else {
            (num, den)
        };
        QRat { num, den }
    }
}

impl Div for &QRat {
    type Output = QRat;
    /// Panics on division by zero; use [`QRat::checked_div`] for a `Result`.
    fn div(self, rhs: &QRat) -> QRat {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat { (&self).$m(&rhs) }
        }
        impl $tr<&QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: &QRat) -> QRat { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl std::ops::AddAssign<&QRat> for QRat {
    fn add_assign(&mut self, rhs: &QRat) {
        *self = &*self + rhs;
    }
}

impl std::ops::SubAssign<&QRat> for QRat {
    fn sub_assign(&mut self, rhs: &QRat) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Laurent| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", wrap(&self.num))
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> QRat {
        QRat::q_pow(1)
    }

    fn qi() -> QRat {
        QRat::q_pow(-1)
    }

    #[test]
    fn examples_from_arith() {
        assert_eq!(&(&q() + &qi()) - &qi(), q());
        let d = q_minus_qinv();
        assert_eq!(&d * &d.inv().unwrap(), QRat::one());
        // (q^2 - 1) / (q - q^-1): oracle is cross multiplication
        let lhs = &QRat::q_pow(2) - &QRat::one();
        let quot = lhs.checked_div(&d).unwrap();
        assert_eq!(&quot * &d, lhs);
        assert_eq!(quot, q());
    }

    #[test]
    fn division_by_zero_errors() {
        assert_eq!(q().checked_div(&QRat::zero()), Err(Error::DivisionByZero));
        assert!(QRat::new(Laurent::one(), Laurent::zero()).is_err());
    }

    #[test]
    fn qint_values() {
        assert_eq!(qint(1), QRat::one());
        assert_eq!(qint(2), &q() + &qi());
        // [3] by dividing q^3 - q^-3 by q - q^-1
        let three = (&QRat::q_pow(3) - &QRat::q_pow(-3)).checked_div(&q_minus_qinv()).unwrap();
        assert_eq!(three, qint(3));
        assert_eq!(qint(3).to_string(), "(q^2+1+q^-2)");
        assert_eq!(qint(-3), -qint(3));
        assert_eq!(qint(0), QRat::zero());
    }

    #[test]
    fn specialization() {
        assert_eq!(qint(3).specialize_q1().unwrap(), BigRational::from_integer(3.into()));
        assert!(matches!(q_minus_qinv().inv().unwrap().specialize_q1(), Err(Error::PoleAtOne(_))));
        let x = (&QRat::q_pow(-2) - &QRat::q_pow(2)).scale_int(2);
        assert!(x.specialize_q1().unwrap().is_zero());
    }

    #[test]
    fn canonical_form_is_structural() {
        // (q^2 - 1)/(q^3 - q) == 1/q, built two ways
        let a = (&QRat::q_pow(2) - &QRat::one()).checked_div(&(&QRat::q_pow(3) - &q())).unwrap();
        assert_eq!(a, qi());
        let half = QRat::ratio(2, 4).unwrap();
        assert_eq!(half, QRat::ratio(-1, -2).unwrap());
        assert_eq!(half.denom().coeffs()[0], BigInt::from(2));
    }

    #[test]
    fn half_powers() {
        let v = QRat::half_pow(1);
        assert_eq!(&v * &v, q());
        assert_eq!(QRat::half_pow(-3).to_string(), "q^(-3/2)");
    }

    fn arb_laurent() -> impl Strategy<Value = Laurent> {
        (prop::collection::vec(-4i64..=4, 1..4), -3i64..=3)
            .prop_map(|(c, low)| Laurent::from_coeffs(low, c.into_iter().map(BigInt::from).collect()))
    }

    fn arb_qrat() -> impl Strategy<Value = QRat> {
        (arb_laurent(), arb_laurent()).prop_filter_map("nonzero denominator", |(n, d)| QRat::new(n, d).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_qrat(), b in arb_qrat(), c in arb_qrat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, QRat::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), QRat::one());
            }
        }

        #[test]
        fn qint_addition(m in -8i64..8, n in -8i64..8) {
            let lhs = qint(m + n);
            let rhs = &(&QRat::q_pow(n) * &qint(m)) + &(&QRat::q_pow(-m) * &qint(n));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(qint(-n), -qint(n));
            prop_assert_eq!(qint(n).specialize_q1().unwrap(), BigRational::from_integer(n.into()));
        }
    }
}
