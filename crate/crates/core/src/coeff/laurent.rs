//! Integer Laurent polynomials in the half-parameter `v = q^{1/2}`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `sum_k coeffs[k] * v^(low + k)`. The zero polynomial has no coefficients;
/// otherwise the first and last coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: exp, coeffs: vec![c] }
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    /// Builds from `(coefficient, exponent)` pairs; exponents may repeat.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (c, e) in terms {
            acc = &acc + &Self::monomial(BigInt::from(c), e);
        }
        acc
    }

    fn trim(&mut self) {
        let end = self.coeffs.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
        self.coeffs.truncate(end);
        let start = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if start > 0 {
            self.coeffs.drain(..start);
            self.low += start as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Substitution `v -> -v`.
    pub fn negate_var(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if (self.low + k as i64).is_odd() { -c } else { c.clone() })
            .collect();
        Self { low: self.low, coeffs }
    }

    /// Integer content (positive gcd of the coefficients).
    pub fn content(&self) -> BigInt {
        content(&self.coeffs)
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc + c)
    }

    /// Value at `v = -1`.
    pub fn eval_minus_one(&self) -> BigInt {
        self.negate_var().eval_one()
    }
}

impl std::ops::Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + k] += c;
        }
        Laurent::from_coeffs(low, coeffs)
    }
}

impl std::ops::Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        Laurent::from_coeffs(self.low + rhs.low, poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl fmt::Display for Laurent {
    /// Renders in `q`, with odd powers of `v` shown as half-integer exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + k as i64;
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let pow = q_power_str(e);
            match (mag.is_one(), pow.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{pow}")?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{pow}")?,
            }
        }
        Ok(())
    }
}

fn q_power_str(e: i64) -> String {
    match e {
        0 => String::new(),
        2 => "q".to_string(),
        _ if e % 2 == 0 => format!("q^{}", e / 2),
        _ => format!("q^({}/2)", e),
    }
}

// Dense integer polynomial helpers (index = degree).

pub(crate) fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn content(c: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in c {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(c: &[BigInt]) -> Vec<BigInt> {
    let g = content(c);
    if g.is_one() || g.is_zero() {
        return c.to_vec();
    }
    c.iter().map(|x| x / &g).collect()
}

fn trimmed(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

/// Pseudo-remainder of `a` by `b` (both nonzero, trimmed).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        let off = dr - db;
        for (j, y) in b.iter().enumerate() {
            r[off + j] -= &lr * y;
        }
        r = trimmed(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Greatest common divisor in `Z[v]` with positive leading coefficient.
const GCD_PRIME: u64 = 2_147_483_647;

fn mod_p(c: &[BigInt]) -> Vec<u64> {
    let p = BigInt::from(GCD_PRIME);
    c.iter().map(|x| x.mod_floor(&p).try_into().expect("reduced below p")).collect()
}

fn inv_mod_p(x: u64) -> u64 {
    let (mut base, mut e, mut acc) = (x, GCD_PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % GCD_PRIME;
        }
        base = base * base % GCD_PRIME;
        e >>= 1;
    }
    acc
}

/// Certificate that the primitive parts of `a` and `b` are coprime: their
/// gcd over `F_p` is constant while `p` divides neither leading coefficient,
/// so no nonconstant common factor exists over `Z`. `false` is inconclusive.
fn coprime_mod_p(a: &[BigInt], b: &[BigInt]) -> bool {
    let (mut x, mut y) = (mod_p(a), mod_p(b));
    if x.last() == Some(&0) || y.last() == Some(&0) {
        return false;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    // Euclid over F_p; `y` keeps a nonzero leading coefficient
    while y.len() > 1 {
        let inv = inv_mod_p(*y.last().unwrap());
        while x.len() >= y.len() {
            let f = x.last().unwrap() * inv % GCD_PRIME;
            let shift = x.len() - y.len();
            for (k, yc) in y.iter().enumerate() {
                let t = f * yc % GCD_PRIME;
                x[shift + k] = (x[shift + k] + GCD_PRIME - t) % GCD_PRIME;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
            if x.is_empty() {
                return false;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    true
}

pub(crate) fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return normalize_sign(b.to_vec());
    }
    if b.is_empty() {
        return normalize_sign(a.to_vec());
    }
    if a.len() == 1 || b.len() == 1 {
        // gcd with a constant is an integer; stop as soon as it reaches 1
        let (short, long) = if a.len() == 1 { (a, b) } else { (b, a) };
        let mut g = short[0].abs();
        for x in long {
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
        return vec![g];
    }
    let g = content(a).gcd(&content(b));
    if coprime_mod_p(a, b) {
        return vec![g];
    }
    let (mut x, mut y) = (primitive(a), primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let r = pseudo_rem(&x, &y);
        if r.is_empty() {
            break;
        }
        x = y;
        y = primitive(&r);
    }
    if y.len() == 1 {
        // constant remainder: polynomials are coprime up to content
        return vec![g];
    }
    normalize_sign(y.into_iter().map(|c| c * &g).collect())
}

fn normalize_sign(mut c: Vec<BigInt>) -> Vec<BigInt> {
    if c.last().is_some_and(|x| x.is_negative()) {
        for x in c.iter_mut() {
            *x = -&*x;
        }
    }
    c
}

/// Exact quotient `a / b` in `Z[v]`; panics if the division is not exact.
pub(crate) fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    if b.len() == 1 {
        return a
            .iter()
            .map(|x| {
                let (q, r) = x.div_rem(&b[0]);
                assert!(r.is_zero(), "inexact polynomial division");
                q
            })
            .collect();
    }
    let mut r = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    let lb = &b[db];
    for k in (0..quot.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] -= &c * y;
            }
        }
        quot[k] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()), "inexact polynomial division");
    quot
}

impl PartialOrd for Laurent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Laurent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.low, &self.coeffs).cmp(&(other.low, &other.coeffs))
    }
}
