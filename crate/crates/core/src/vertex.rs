//! Twisted vertex operators `X_alpha^±(z) = E_-^±(alpha, z) E_+^±(alpha, z) e_alpha^{±1}`,
//! their modes, the `φ`/`ψ` Cartan currents and normal-ordered products.
//!
//! Everything is computed exactly on a given vector: annihilation exponentials
//! terminate at the input's degree, so a mode picks up finitely many terms.
//!
//! Exponents (odd `n > 0`, sign `s = ±1`):
//! * `E_-^s(alpha, z) = exp( s sum 2 q^{-sn/2}/[n] a_alpha(-n) z^n)`
//! * `E_+^s(alpha, z) = exp(-s sum 2 q^{-sn/2}/[n] a_alpha(n) z^{-n})`
//! * `φ_alpha(z) = exp((q^-1 - q) 2 sum a_alpha(-n) z^n)`
//! * `ψ_alpha(z) = exp((q - q^-1) 2 sum a_alpha(n) z^{-n})`

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::coeff::{q_minus_qinv, qint, QRat};
use crate::error::{Error, Result};
use crate::fock::{group_apply, heis_apply_simple, FockVector, Part};
use crate::lattice::{CartanData, LatticeElt};
use crate::series::{contraction, PairKind, TruncSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Current {
    Phi,
    Psi,
}

/// `X_alpha^sign`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexOp {
    pub alpha: LatticeElt,
    pub sign: Sign,
}

impl VertexOp {
    pub fn new(alpha: LatticeElt, sign: Sign) -> Self {
        Self { alpha, sign }
    }
}

impl fmt::Display for VertexOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X[{}]^{}", self.alpha, self.sign)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Piece {
    Vertex(Sign),
    Current(Current),
}

/// A normal-ordered exponential field `E_-(z) E_+(z) e_...` in one variable.
///
/// Each piece `(alpha, kind, h)` contributes its exponents evaluated at
/// `z q^{h/2}`; vertex pieces also contribute their group element, in order.
/// Normal ordering several fields in a common variable adds their exponents,
/// since creation (and annihilation) operators commute among themselves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    pieces: Vec<(LatticeElt, Piece, i64)>,
}

impl Field {
    pub fn vertex(op: &VertexOp) -> Self {
        Self { pieces: vec![(op.alpha.clone(), Piece::Vertex(op.sign), 0)] }
    }

    pub fn current(alpha: &LatticeElt, kind: Current) -> Self {
        Self { pieces: vec![(alpha.clone(), Piece::Current(kind), 0)] }
    }

    /// The field at `z q^{h/2}`.
    pub fn shifted(mut self, half_shift: i64) -> Self {
        for p in &mut self.pieces {
            p.2 += half_shift;
        }
        self
    }

    /// `:F_1(z) ... F_k(z):`.
    pub fn normal(fields: &[Field]) -> Self {
        Self { pieces: fields.iter().flat_map(|f| f.pieces.iter().cloned()).collect() }
    }

    /// Per-node coefficients `L_i` of `sum_i L_i a_i(∓n)` in the creation
    /// (`creation = true`) or annihilation exponent at odd `n > 0`.
    fn coeffs(&self, n: i64, rank: usize, creation: bool) -> Vec<QRat> {
        let mut out = vec![QRat::zero(); rank];
        for (alpha, piece, h) in &self.pieces {
            let c = match (piece, creation) {
                (Piece::Vertex(s), true) => &vertex_coeff(*s, n).scale_int(s.value()) * &QRat::half_pow(h * n),
                (Piece::Vertex(s), false) => &vertex_coeff(*s, n).scale_int(-s.value()) * &QRat::half_pow(-h * n),
                (Piece::Current(Current::Phi), true) => &(-&q_minus_qinv()).scale_int(2) * &QRat::half_pow(h * n),
                (Piece::Current(Current::Psi), false) => &q_minus_qinv().scale_int(2) * &QRat::half_pow(-h * n),
                _ => continue,
            };
            for (i, &ci) in alpha.coords().iter().enumerate() {
                if ci != 0 {
                    out[i] += &c.scale_int(ci);
                }
            }
        }
        out
    }

    fn group_elements(&self) -> impl DoubleEndedIterator<Item = (&LatticeElt, i32)> {
        self.pieces.iter().filter_map(|(alpha, piece, _)| match piece {
            Piece::Vertex(s) => Some((alpha, s.value() as i32)),
            Piece::Current(_) => None,
        })
    }
}

/// A polynomial in creation operators: sorted monomial -> coefficient.
type CreationPoly = BTreeMap<Vec<Part>, QRat>;

/// Coefficient of `z^{-n}` in `X(z q^{h/2})`, relative to `X(n)`: `q^{-hn/2}`.
pub fn shift_factor(half_shift: i64, n: i64) -> QRat {
    QRat::half_pow(-half_shift * n)
}

fn vertex_coeff(sign: Sign, n: i64) -> QRat {
    // 2 q^{-sn/2} / [n]
    &QRat::half_pow(-sign.value() * n).scale_int(2) / &qint(n)
}

/// Fields applied to a vector, after their group and annihilation stages.
pub struct NormalPrep {
    fields: Vec<Field>,
    stage: Vec<(Vec<usize>, FockVector)>,
}

/// Exact evaluator with per-field caches of creation polynomials.
pub struct Vertex<'a> {
    cartan: &'a CartanData,
    creation: RefCell<HashMap<Field, Vec<CreationPoly>>>,
}

impl<'a> Vertex<'a> {
    pub fn new(cartan: &'a CartanData) -> Self {
        Self { cartan, creation: RefCell::new(HashMap::new()) }
    }

    pub fn cartan(&self) -> &CartanData {
        self.cartan
    }

    /// Coefficient of `z^j` in the creation exponential of `field`.
    fn creation_poly(&self, field: &Field, j: usize) -> CreationPoly {
        if let Some(p) = self.creation.borrow().get(field).and_then(|v| v.get(j)) {
            return p.clone();
        }
        let rank = self.cartan.rank();
        let mut cache = self.creation.borrow_mut();
        let polys = cache.entry(field.clone()).or_insert_with(|| {
            let mut one = CreationPoly::new();
            one.insert(Vec::new(), QRat::one());
            vec![one]
        });
        while polys.len() <= j {
            // p_k = (1/k) sum_n n L_n a(-n) p_{k-n}
            let k = polys.len();
            let mut next = CreationPoly::new();
            for n in (1..=k).step_by(2) {
                let weight = QRat::ratio(n as i64, k as i64).expect("k > 0");
                for (i, l) in field.coeffs(n as i64, rank, true).iter().enumerate() {
                    if l.is_zero() {
                        continue;
                    }
                    let scale = l * &weight;
                    let p = ((i + 1) as u32, n as u32);
                    for (mono, c) in &polys[k - n] {
                        let mut m = mono.clone();
                        let pos = m.partition_point(|x| *x < p);
                        m.insert(pos, p);
                        let entry = next.entry(m).or_insert_with(QRat::zero);
                        *entry += &(c * &scale);
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            polys.push(next);
        }
        polys[j].clone()
    }

    fn apply_creation(&self, field: &Field, j: usize, v: &FockVector, out: &mut FockVector) {
        if v.is_zero() {
            return;
        }
        for (mono, x) in &self.creation_poly(field, j) {
            v.mul_creation_into(mono, x, out);
        }
    }

    /// `e_0..e_deg` with `sum_k e_k z^{-k} = E_+(z) v` for the annihilation
    /// exponential of `field`; `e_k = (1/k) sum_n n L_n a(n) e_{k-n}`.
    fn annihilation_series(&self, field: &Field, v: &FockVector) -> Vec<FockVector> {
        let deg = v.max_degree() as usize;
        let rank = self.cartan.rank();
        let coeffs: Vec<Vec<QRat>> = (0..=deg).map(|n| if n % 2 == 1 { field.coeffs(n as i64, rank, false) } else { Vec::new() }).collect();
        let mut e = vec![v.clone()];
        for k in 1..=deg {
            let mut next = FockVector::zero();
            for n in (1..=k).step_by(2) {
                let prev = &e[k - n];
                if prev.is_zero() {
                    continue;
                }
                let weight = QRat::ratio(n as i64, k as i64).expect("k > 0");
                for (i, l) in coeffs[n].iter().enumerate() {
                    if !l.is_zero() {
                        let a = heis_apply_simple(self.cartan, i + 1, n as i64, prev).expect("odd positive mode");
                        next.add_scaled(&a, &(l * &weight));
                    }
                }
            }
            e.push(next);
        }
        e
    }

    fn group(&self, field: &Field, v: &FockVector) -> FockVector {
        let mut u = v.clone();
        for (alpha, k) in field.group_elements().rev() {
            u = group_apply(self.cartan, alpha, k, &u).expect("exponent ±1");
        }
        u
    }

    /// Coefficient of `z^{-n}` in `field(z) v`.
    pub fn field_mode(&self, field: &Field, n: i64, v: &FockVector) -> FockVector {
        self.eval(&self.prepare(std::slice::from_ref(field), v), &[n])
    }

    /// `X_alpha^sign(n) v`.
    pub fn mode(&self, op: &VertexOp, n: i64, v: &FockVector) -> FockVector {
        self.field_mode(&Field::vertex(op), n, v)
    }

    /// `φ_alpha` coefficient of `z^n` (i.e. `φ_{-n}`) or `ψ_alpha` coefficient of
    /// `z^{-n}` (i.e. `ψ_n`), for `n >= 0`.
    pub fn current(&self, alpha: &LatticeElt, kind: Current, n: i64, v: &FockVector) -> Result<FockVector> {
        if n < 0 {
            return Err(Error::Usage(format!("φ/ψ mode index must be non-negative, got {n}")));
        }
        let mode = match kind {
            Current::Phi => -n,
            Current::Psi => n,
        };
        Ok(self.field_mode(&Field::current(alpha, kind), mode, v))
    }

    /// Group and annihilation stages of `:F_1(z_1) ... F_k(z_k): v`, shared by
    /// all modes. Group elements act in their original order.
    pub fn prepare(&self, fields: &[Field], v: &FockVector) -> NormalPrep {
        let mut u = v.clone();
        for f in fields.iter().rev() {
            u = self.group(f, &u);
        }
        let mut stage = vec![(Vec::new(), u)];
        for f in fields {
            let mut next = Vec::new();
            for (ks, w) in stage {
                for (k, e) in self.annihilation_series(f, &w).into_iter().enumerate() {
                    if !e.is_zero() {
                        let mut ks = ks.clone();
                        ks.push(k);
                        next.push((ks, e));
                    }
                }
            }
            stage = next;
        }
        NormalPrep { fields: fields.to_vec(), stage }
    }

    /// Coefficient of `prod_r z_r^{-n_r}` on a prepared vector.
    pub fn eval(&self, prep: &NormalPrep, modes: &[i64]) -> FockVector {
        assert_eq!(prep.fields.len(), modes.len(), "one mode per field");
        let mut out = FockVector::zero();
        for (ks, w) in &prep.stage {
            let js: Vec<i64> = ks.iter().zip(modes).map(|(&k, &n)| k as i64 - n).collect();
            if js.iter().any(|&j| j < 0) {
                continue;
            }
            let mut acc = w.clone();
            for (f, &j) in prep.fields.iter().zip(&js) {
                let mut next = FockVector::zero();
                self.apply_creation(f, j as usize, &acc, &mut next);
                acc = next;
            }
            out.add_scaled(&acc, &QRat::one());
        }
        out
    }

    /// [`Vertex::prepare`] for vertex operators.
    pub fn normal_prepare(&self, ops: &[VertexOp], v: &FockVector) -> NormalPrep {
        let fields: Vec<Field> = ops.iter().map(Field::vertex).collect();
        self.prepare(&fields, v)
    }

    /// Coefficient of `prod_r z_r^{-n_r}` in `:X_1(z_1)...X_k(z_k): v`, with all
    /// `E_-` left of all `E_+` and group elements in their original order.
    pub fn normal_mode(&self, ops: &[VertexOp], modes: &[i64], v: &FockVector) -> Result<FockVector> {
        if ops.len() != modes.len() || ops.is_empty() {
            return Err(Error::Usage(format!("{} operators with {} modes", ops.len(), modes.len())));
        }
        Ok(self.eval(&self.normal_prepare(ops, v), modes))
    }

    /// Coefficient of `z^{-total}` in `:X_1(z q^{h_1/2}) ... X_k(z q^{h_k/2}): v`.
    pub fn normal_diagonal(&self, ops: &[VertexOp], half_shifts: &[i64], total: i64, v: &FockVector) -> Result<FockVector> {
        if ops.len() != half_shifts.len() || ops.is_empty() {
            return Err(Error::Usage(format!("{} operators with {} shifts", ops.len(), half_shifts.len())));
        }
        let fields: Vec<Field> = ops.iter().zip(half_shifts).map(|(op, &h)| Field::vertex(op).shifted(h)).collect();
        Ok(self.field_mode(&Field::normal(&fields), total, v))
    }

    /// `X_1(n_1) ... X_k(n_k) v`, applied right to left.
    pub fn product_mode(&self, ops: &[VertexOp], modes: &[i64], v: &FockVector) -> Result<FockVector> {
        if ops.len() != modes.len() || ops.is_empty() {
            return Err(Error::Usage(format!("{} operators with {} modes", ops.len(), modes.len())));
        }
        let mut acc = v.clone();
        for (op, &n) in ops.iter().zip(modes).rev() {
            acc = self.mode(op, n, &acc);
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// OPE factor for `X_a(z) X_b(w)` as a series in `w/z`:
    /// `X_a(z) X_b(w) = :X_a(z) X_b(w): * contraction`.
    pub fn contraction_for(&self, a: &VertexOp, b: &VertexOp, bound: usize) -> Result<TruncSeries> {
        let r = self.cartan.pairing(&a.alpha, &b.alpha)?;
        Ok(if a.sign == b.sign {
            contraction(r, PairKind::Same, -a.sign.value(), bound)
        } else {
            contraction(r, PairKind::Mixed, 0, bound)
        })
    }
}

/// `X_alpha^sign(n) v`.
pub fn vertex_mode(c: &CartanData, alpha: &LatticeElt, sign: Sign, n: i64, v: &FockVector) -> FockVector {
    Vertex::new(c).mode(&VertexOp::new(alpha.clone(), sign), n, v)
}

/// `φ_{i,-n} v` or `ψ_{i,n} v`; node 0 uses the affine root.
pub fn phi_psi_mode(c: &CartanData, i: usize, kind: Current, n: i64, v: &FockVector) -> Result<FockVector> {
    Vertex::new(c).current(&c.root(i)?, kind, n, v)
}

/// Coefficient of `z^{-m} w^{-n}` in `:X_alpha^s(z) X_beta^t(w): v`.
pub fn normal_pair_mode(c: &CartanData, first: (&LatticeElt, Sign), second: (&LatticeElt, Sign), m: i64, n: i64, v: &FockVector) -> FockVector {
    let ops = [VertexOp::new(first.0.clone(), first.1), VertexOp::new(second.0.clone(), second.1)];
    Vertex::new(c).normal_mode(&ops, &[m, n], v).expect("two operators, two modes")
}

pub fn product_mode(c: &CartanData, ops: &[(LatticeElt, Sign)], modes: &[i64], v: &FockVector) -> Result<FockVector> {
    let ops: Vec<VertexOp> = ops.iter().map(|(a, s)| VertexOp::new(a.clone(), *s)).collect();
    Vertex::new(c).product_mode(&ops, modes, v)
}
