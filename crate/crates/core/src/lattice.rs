//! Cartan data, the root lattice `Q` and the sign cocycle of its double cover.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer coordinates over the simple-root basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct LatticeElt(pub Vec<i64>);

impl LatticeElt {
    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    /// The simple root `alpha_i` for `1 <= i <= rank`.
    pub fn simple(rank: usize, i: usize) -> Self {
        assert!((1..=rank).contains(&i), "simple root index {i} out of range 1..={rank}");
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Self(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }
}

impl std::ops::Add for &LatticeElt {
    type Output = LatticeElt;
    fn add(self, rhs: &LatticeElt) -> LatticeElt {
        assert_eq!(self.rank(), rhs.rank(), "lattice rank mismatch");
        LatticeElt(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &LatticeElt {
    type Output = LatticeElt;
    fn sub(self, rhs: &LatticeElt) -> LatticeElt {
        self + &rhs.scaled(-1)
    }
}

impl std::ops::Neg for &LatticeElt {
    type Output = LatticeElt;
    fn neg(self) -> LatticeElt {
        self.scaled(-1)
    }
}

impl fmt::Display for LatticeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A symmetric generalized Cartan matrix with its root lattice.
///
/// Nodes `1..=rank` are the simple roots. When an affine root is attached,
/// node `0` refers to it; its realization as a lattice vector is whatever
/// was supplied (for builtin types, minus the highest root).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    name: String,
    matrix: Vec<Vec<i64>>,
    affine_root: Option<LatticeElt>,
}

#[derive(Deserialize)]
struct CartanFile {
    matrix: Vec<Vec<i64>>,
    #[serde(default)]
    affine_root: Option<Vec<i64>>,
}

impl CartanData {
    /// Validates and wraps an explicit matrix.
    pub fn from_matrix(name: impl Into<String>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartan(format!("row {} has length {}, expected {n}", i + 1, row.len())));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry ({0},{0}) is {1}, expected 2", i + 1, row[i])));
            }
            for (j, &a) in row.iter().enumerate() {
                if i != j && a > 0 {
                    return Err(Error::InvalidCartan(format!("off-diagonal entry ({},{}) = {a} is positive", i + 1, j + 1)));
                }
                if a != matrix[j][i] {
                    return Err(Error::InvalidCartan(format!(
                        "asymmetric: entry ({},{}) = {a} but ({},{}) = {}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1,
                        matrix[j][i]
                    )));
                }
            }
        }
        Ok(Self { name: name.into(), matrix, affine_root: None })
    }

    /// Builtin simply-laced types in Bourbaki labelling: `A_l`, `D_l` (l >= 4), `E6`, `E7`, `E8`.
    pub fn builtin(name: &str) -> Result<Self> {
        let norm: String = name.chars().filter(|c| *c != '_').collect::<String>().to_ascii_uppercase();
        let unknown = || Error::UnknownCartanType(name.to_string());
        let (kind, rank) = norm.split_at(1);
        let rank: usize = rank.parse().map_err(|_| unknown())?;
        let mut edges = Vec::new();
        match (kind, rank) {
            ("A", l) if l >= 1 => edges.extend((1..l).map(|i| (i, i + 1))),
            ("D", l) if l >= 4 => {
                edges.extend((1..l - 1).map(|i| (i, i + 1)));
                edges.push((l - 2, l));
            }
            ("E", l @ 6..=8) => {
                edges.extend([(1, 3), (3, 4), (4, 5), (2, 4)]);
                edges.extend((5..l).map(|i| (i, i + 1)));
            }
            _ => return Err(unknown()),
        }
        let mut m = vec![vec![0i64; rank]; rank];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in edges {
            m[i - 1][j - 1] = -1;
            m[j - 1][i - 1] = -1;
        }
        let mut c = Self::from_matrix(format!("{kind}{rank}"), m)?;
        let theta = highest_root(kind, rank);
        c.affine_root = Some(-&LatticeElt(theta));
        Ok(c)
    }

    /// Reads `{"matrix": [[...]], "affine_root": [...]?}`.
    pub fn from_json_str(name: &str, text: &str) -> Result<Self> {
        let f: CartanFile = serde_json::from_str(text).map_err(|e| Error::InvalidCartan(e.to_string()))?;
        let mut c = Self::from_matrix(name, f.matrix)?;
        if let Some(r) = f.affine_root {
            c = c.with_affine_root(LatticeElt(r))?;
        }
        Ok(c)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidCartan(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&path.display().to_string(), &text)
    }

    /// Attaches a lattice vector for node 0.
    pub fn with_affine_root(mut self, root: LatticeElt) -> Result<Self> {
        if root.rank() != self.rank() {
            return Err(Error::Usage(format!("affine root has rank {}, expected {}", root.rank(), self.rank())));
        }
        self.affine_root = Some(root);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i - 1][j - 1]
    }

    pub fn affine_root(&self) -> Option<&LatticeElt> {
        self.affine_root.as_ref()
    }

    /// Lattice vector of node `i`; node 0 needs an attached affine root.
    pub fn root(&self, i: usize) -> Result<LatticeElt> {
        match i {
            0 => self.affine_root.clone().ok_or_else(|| Error::Usage("no affine root attached".into())),
            i if i <= self.rank() => Ok(LatticeElt::simple(self.rank(), i)),
            _ => Err(Error::Usage(format!("node {i} out of range 0..={}", self.rank()))),
        }
    }

    /// The matrix extended by the affine row and column, when available.
    pub fn affine_matrix(&self) -> Option<Vec<Vec<i64>>> {
        let a0 = self.affine_root.as_ref()?;
        let roots: Vec<LatticeElt> = std::iter::once(a0.clone()).chain((1..=self.rank()).map(|i| LatticeElt::simple(self.rank(), i))).collect();
        Some(roots.iter().map(|x| roots.iter().map(|y| self.pair(x, y)).collect()).collect())
    }

    fn pair(&self, a: &LatticeElt, b: &LatticeElt) -> i64 {
        let mut s = 0;
        for (i, &ci) in a.0.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (j, &dj) in b.0.iter().enumerate() {
                s += ci * dj * self.matrix[i][j];
            }
        }
        s
    }

    /// The bilinear form `(a|b)`.
    pub fn pairing(&self, a: &LatticeElt, b: &LatticeElt) -> Result<i64> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        Ok(self.pair(a, b))
    }

    fn check_rank(&self, a: &LatticeElt) -> Result<()> {
        if a.rank() != self.rank() {
            return Err(Error::Usage(format!("lattice element of rank {} used with rank {} Cartan data", a.rank(), self.rank())));
        }
        Ok(())
    }

    /// The cocycle section: `eps(alpha_i, alpha_j) = 1` for `i <= j` and
    /// `(-1)^{a_ij}` for `i > j`, extended bimultiplicatively. Returns ±1.
    pub fn cocycle(&self, a: &LatticeElt, b: &LatticeElt) -> i64 {
        let mut e = 0i64;
        for i in 0..self.rank() {
            for j in 0..i {
                e += self.matrix[i][j] * a.0[i] * b.0[j];
            }
        }
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

fn highest_root(kind: &str, rank: usize) -> Vec<i64> {
    match (kind, rank) {
        ("A", l) => vec![1; l],
        ("D", l) => {
            let mut v = vec![2; l];
            v[0] = 1;
            v[l - 2] = 1;
            v[l - 1] = 1;
            v
        }
        ("E", 6) => vec![1, 2, 2, 3, 2, 1],
        ("E", 7) => vec![2, 2, 3, 4, 3, 2, 1],
        ("E", 8) => vec![2, 3, 4, 6, 5, 4, 3, 2],
        _ => unreachable!("validated by caller"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn builtin_matrices() {
        assert_eq!(CartanData::builtin("A2").unwrap().matrix(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(CartanData::builtin("A1").unwrap().matrix(), &[vec![2]]);
        assert_eq!(CartanData::builtin("a_3").unwrap().rank(), 3);
        for name in ["D4", "D6", "E6", "E7", "E8"] {
            assert!(CartanData::builtin(name).is_ok(), "{name}");
        }
        assert!(matches!(CartanData::builtin("B2"), Err(Error::UnknownCartanType(_))));
        assert!(CartanData::builtin("D3").is_err());
    }

    #[test]
    fn highest_roots_are_dominant_of_norm_two() {
        for name in ["A1", "A4", "D4", "D7", "E6", "E7", "E8"] {
            let c = CartanData::builtin(name).unwrap();
            let theta = -c.affine_root().unwrap();
            assert_eq!(c.pairing(&theta, &theta).unwrap(), 2, "{name}");
            for i in 1..=c.rank() {
                assert!(c.pairing(&theta, &c.root(i).unwrap()).unwrap() >= 0, "{name} node {i}");
            }
        }
        let aff = CartanData::builtin("A2").unwrap().affine_matrix().unwrap();
        assert_eq!(aff, vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
    }

    #[test]
    fn rejects_bad_matrices() {
        let e = CartanData::from_matrix("x", vec![vec![2, -1], vec![0, 2]]).unwrap_err();
        assert!(e.to_string().contains("asymmetric"), "{e}");
        assert!(CartanData::from_matrix("x", vec![vec![1]]).is_err());
        assert!(CartanData::from_matrix("x", vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(CartanData::from_json_str("x", r#"{"matrix": [[2,-1],[0,2]]}"#).is_err());
        let ok = CartanData::from_json_str("x", r#"{"matrix": [[2,-3],[-3,2]]}"#).unwrap();
        assert_eq!(ok.entry(1, 2), -3);
    }

    #[test]
    fn pairing_examples() {
        let c = CartanData::builtin("A2").unwrap();
        let (a1, a2) = (c.root(1).unwrap(), c.root(2).unwrap());
        assert_eq!(c.pairing(&a1, &a1).unwrap(), 2);
        assert_eq!(c.pairing(&a1, &a2).unwrap(), -1);
        let s = &a1 + &a2;
        assert_eq!(c.pairing(&s, &s).unwrap(), 2);
        assert!(c.pairing(&a1, &LatticeElt::zero(3)).is_err());
    }

    #[test]
    fn cocycle_examples() {
        let c = CartanData::builtin("A2").unwrap();
        let (a1, a2) = (c.root(1).unwrap(), c.root(2).unwrap());
        assert_eq!(c.cocycle(&a1, &a2) * c.cocycle(&a2, &a1), -1);
        assert_eq!(c.cocycle(&a1, &a1), 1);
        assert_eq!(c.cocycle(&(&a1 + &a2), &a1), -1);
    }

    #[test]
    fn display() {
        assert_eq!(LatticeElt(vec![1, 1]).to_string(), "a1+a2");
        assert_eq!(LatticeElt(vec![-2, 0, 1]).to_string(), "-2a1+a3");
        assert_eq!(LatticeElt(vec![0, 0]).to_string(), "0");
    }

    proptest! {
        #[test]
        fn cocycle_is_bimultiplicative(
            a in prop::collection::vec(-3i64..=3, 3),
            b in prop::collection::vec(-3i64..=3, 3),
            g in prop::collection::vec(-3i64..=3, 3),
        ) {
            let c = CartanData::builtin("A3").unwrap();
            let (a, b, g) = (LatticeElt(a), LatticeElt(b), LatticeElt(g));
            prop_assert_eq!(c.cocycle(&(&a + &b), &g), c.cocycle(&a, &g) * c.cocycle(&b, &g));
            prop_assert_eq!(c.cocycle(&g, &(&a + &b)), c.cocycle(&g, &a) * c.cocycle(&g, &b));
            let p = c.pairing(&a, &b).unwrap();
            prop_assert_eq!(c.cocycle(&a, &b) * c.cocycle(&b, &a), if p % 2 == 0 { 1 } else { -1 });
            prop_assert_eq!(p, c.pairing(&b, &a).unwrap());
        }
    }
}
