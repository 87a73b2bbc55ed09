//! Matrix Lie groups `GL(n)`, `SO(n)` and `SL(n)` with a fixed algebra basis.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::algebra::{LieAlgebra, DEFAULT_TOL};
use crate::error::{check_dim, Error, Result};
use crate::tensor::Tensor3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    GL,
    SO,
    SL,
}

/// A matrix group of a given kind acting on `ℝⁿ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MatrixGroup {
    pub kind: GroupKind,
    pub n: usize,
}

impl fmt::Display for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.n)
    }
}

impl FromStr for MatrixGroup {
    type Err = Error;

    /// Parses tags such as `SO3`, `SL2` or `GL4`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown group tag `{s}`"));
        let (kind, rest) = match s.get(..2).map(|p| p.to_ascii_uppercase()) {
            Some(p) if p == "GL" => (GroupKind::GL, &s[2..]),
            Some(p) if p == "SO" => (GroupKind::SO, &s[2..]),
            Some(p) if p == "SL" => (GroupKind::SL, &s[2..]),
            _ => return Err(bad()),
        };
        let n: usize = rest.trim_matches(|c| c == '(' || c == ')').parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        Ok(Self { kind, n })
    }
}

impl Serialize for MatrixGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MatrixGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn e(n: usize, i: usize, j: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    m[(i, j)] = 1.0;
    m
}

impl MatrixGroup {
    pub fn so3() -> Self {
        Self { kind: GroupKind::SO, n: 3 }
    }

    pub fn sl2() -> Self {
        Self { kind: GroupKind::SL, n: 2 }
    }

    pub fn gl(n: usize) -> Self {
        Self { kind: GroupKind::GL, n }
    }

    /// Algebra basis. `so(3)` uses the hat basis with `[E1, E2] = E3`;
    /// `sl(n)` lists diagonal generators, then upper, then lower entries, so
    /// `sl(2)` is `(h, e, f)`.
    pub fn basis(&self) -> Vec<DMatrix<f64>> {
        let n = self.n;
        match self.kind {
            GroupKind::GL => (0..n).flat_map(|i| (0..n).map(move |j| e(n, i, j))).collect(),
            GroupKind::SO if n == 3 => vec![
                e(3, 2, 1) - e(3, 1, 2),
                e(3, 0, 2) - e(3, 2, 0),
                e(3, 1, 0) - e(3, 0, 1),
            ],
            GroupKind::SO => {
                let mut b = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        b.push(e(n, j, i) - e(n, i, j));
                    }
                }
                b
            }
            GroupKind::SL => {
                let mut b: Vec<_> = (0..n - 1).map(|i| e(n, i, i) - e(n, i + 1, i + 1)).collect();
                for i in 0..n {
                    for j in i + 1..n {
                        b.push(e(n, i, j));
                    }
                }
                for i in 0..n {
                    for j in 0..i {
                        b.push(e(n, i, j));
                    }
                }
                b
            }
        }
    }

    pub fn algebra_dim(&self) -> usize {
        let n = self.n;
        match self.kind {
            GroupKind::GL => n * n,
            GroupKind::SO => n * (n - 1) / 2,
            GroupKind::SL => n * n - 1,
        }
    }

    /// `Σ x_i E_i`.
    pub fn hat(&self, x: &DVector<f64>) -> Result<DMatrix<f64>> {
        check_dim(self.algebra_dim(), x.len())?;
        let mut m = DMatrix::zeros(self.n, self.n);
        for (b, xi) in self.basis().iter().zip(x.iter()) {
            m += b * *xi;
        }
        Ok(m)
    }

    /// Coordinates of an algebra element (least squares onto the basis).
    pub fn vee(&self, m: &DMatrix<f64>) -> Result<DVector<f64>> {
        check_dim(self.n, m.nrows())?;
        check_dim(self.n, m.ncols())?;
        let basis = self.basis();
        let d = basis.len();
        let mut gram = DMatrix::zeros(d, d);
        let mut rhs = DVector::zeros(d);
        for i in 0..d {
            rhs[i] = basis[i].dot(m);
            for j in 0..d {
                gram[(i, j)] = basis[i].dot(&basis[j]);
            }
        }
        gram.cholesky().map(|c| c.solve(&rhs)).ok_or(Error::SingularMatrix)
    }

    /// Structure constants in the chosen basis.
    pub fn algebra(&self) -> LieAlgebra {
        let basis = self.basis();
        let d = basis.len();
        let mut c = Tensor3::zeros(d, d, d);
        for i in 0..d {
            for j in 0..d {
                let br = &basis[i] * &basis[j] - &basis[j] * &basis[i];
                let x = self.vee(&br).expect("basis Gram matrix is positive-definite");
                for k in 0..d {
                    c.set(k, i, j, x[k]);
                }
            }
        }
        LieAlgebra::from_tensor_unchecked(None, c).expect("cubic tensor")
    }

    /// Whether `m` lies in the Lie algebra, to `tol`.
    pub fn in_algebra(&self, m: &DMatrix<f64>, tol: f64) -> bool {
        if m.nrows() != self.n || m.ncols() != self.n {
            return false;
        }
        match self.kind {
            GroupKind::GL => true,
            GroupKind::SO => (m + m.transpose()).amax() <= tol,
            GroupKind::SL => m.trace().abs() <= tol,
        }
    }

    /// Whether `g` lies in the group, to `tol`.
    pub fn in_group(&self, g: &DMatrix<f64>, tol: f64) -> bool {
        if g.nrows() != self.n || g.ncols() != self.n {
            return false;
        }
        let det = g.determinant();
        match self.kind {
            GroupKind::GL => det.abs() > tol,
            GroupKind::SO => {
                (g.transpose() * g - DMatrix::identity(self.n, self.n)).amax() <= tol
                    && (det - 1.0).abs() <= tol
            }
            GroupKind::SL => (det - 1.0).abs() <= tol,
        }
    }

    pub fn element(&self, g: DMatrix<f64>) -> Result<MatrixGroupElement> {
        MatrixGroupElement::new(*self, g)
    }

    pub fn identity(&self) -> DMatrix<f64> {
        DMatrix::identity(self.n, self.n)
    }

    pub fn exp(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        x.clone().exp()
    }
}

/// A group element, checked against its group's defining equations.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixGroupElement {
    pub group: MatrixGroup,
    pub g: DMatrix<f64>,
    pub tol: f64,
}

impl MatrixGroupElement {
    pub fn new(group: MatrixGroup, g: DMatrix<f64>) -> Result<Self> {
        Self::with_tol(group, g, DEFAULT_TOL)
    }

    pub fn with_tol(group: MatrixGroup, g: DMatrix<f64>, tol: f64) -> Result<Self> {
        if !group.in_group(&g, tol) {
            return Err(Error::GroupMismatch(format!("matrix is not in {group}")));
        }
        Ok(Self { group, g, tol })
    }

    pub fn inverse(&self) -> Result<Self> {
        let g = self.g.clone().try_inverse().ok_or(Error::SingularMatrix)?;
        Ok(Self { group: self.group, g, tol: self.tol })
    }

    /// `Ad_g X = g X g⁻¹`.
    pub fn adjoint(&self, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let inv = self.g.clone().try_inverse().ok_or(Error::SingularMatrix)?;
        Ok(&self.g * x * inv)
    }
}

/// A point of `T^nG` or `T^(n)G`: base matrix plus algebra slots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JetElement {
    pub group: MatrixGroup,
    #[serde(with = "matrix_rows")]
    pub base: DMatrix<f64>,
    #[serde(with = "matrix_list")]
    pub slots: Vec<DMatrix<f64>>,
}

impl JetElement {
    /// Builds a jet after checking the base and every slot.
    pub fn new(group: MatrixGroup, base: DMatrix<f64>, slots: Vec<DMatrix<f64>>) -> Result<Self> {
        let j = Self { group, base, slots };
        j.validate(DEFAULT_TOL)?;
        Ok(j)
    }

    pub fn unit(group: MatrixGroup, slots: usize) -> Self {
        Self {
            group,
            base: group.identity(),
            slots: vec![DMatrix::zeros(group.n, group.n); slots],
        }
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        if !self.group.in_group(&self.base, tol) {
            return Err(Error::GroupMismatch(format!("base is not in {}", self.group)));
        }
        for (i, s) in self.slots.iter().enumerate() {
            if !self.group.in_algebra(s, tol) {
                return Err(Error::GroupMismatch(format!(
                    "slot {i} is not in the algebra of {}",
                    self.group
                )));
            }
        }
        Ok(())
    }

    /// Largest entry of `base − I` and of every slot; zero for the unit.
    pub fn distance_from_unit(&self) -> f64 {
        let b = (&self.base - self.group.identity()).amax();
        self.slots.iter().fold(b, |m, s| m.max(s.amax()))
    }

    /// Largest entrywise difference.
    pub fn distance(&self, other: &JetElement) -> f64 {
        if self.slots.len() != other.slots.len() {
            return f64::INFINITY;
        }
        let b = (&self.base - &other.base).amax();
        self.slots
            .iter()
            .zip(&other.slots)
            .fold(b, |m, (a, c)| m.max((a - c).amax()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: JetElement = serde_json::from_str(s)?;
        j.validate(DEFAULT_TOL)?;
        Ok(j)
    }
}

pub(crate) fn check_group(a: &JetElement, b: &JetElement) -> Result<()> {
    if a.group != b.group {
        return Err(Error::GroupMismatch(format!("{} vs {}", a.group, b.group)));
    }
    check_dim(a.slots.len(), b.slots.len())
}

mod matrix_rows {
    use nalgebra::DMatrix;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
        m.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    pub fn from_rows<E: serde::de::Error>(rows: Vec<Vec<f64>>) -> Result<DMatrix<f64>, E> {
        let n = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(E::custom("ragged matrix rows"));
        }
        Ok(DMatrix::from_row_iterator(n, c, rows.into_iter().flatten()))
    }

    pub fn serialize<S: Serializer>(m: &DMatrix<f64>, s: S) -> Result<S::Ok, S::Error> {
        to_rows(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<DMatrix<f64>, D::Error> {
        from_rows(Vec::<Vec<f64>>::deserialize(d)?)
    }
}

mod matrix_list {
    use nalgebra::DMatrix;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(ms: &[DMatrix<f64>], s: S) -> Result<S::Ok, S::Error> {
        ms.iter().map(super::matrix_rows::to_rows).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<DMatrix<f64>>, D::Error> {
        Vec::<Vec<Vec<f64>>>::deserialize(d)?
            .into_iter()
            .map(super::matrix_rows::from_rows)
            .collect()
    }
}
