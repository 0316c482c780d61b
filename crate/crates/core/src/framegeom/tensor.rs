use std::ops::{Add, Sub};

use crate::exprcore::{Bindings, Expr, ExprError, FrameIndex};

/// Components of a vector field in the orthonormal frame `{e1, e2, e3}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VectorField(pub [Expr; 3]);

impl VectorField {
    pub fn zero() -> Self {
        VectorField::default()
    }

    pub fn basis(i: FrameIndex) -> Self {
        let mut v = VectorField::zero();
        v.0[i.idx()] = Expr::one();
        v
    }

    /// The structure vector field ξ = e3.
    pub fn xi() -> Self {
        VectorField::basis(FrameIndex::E3)
    }

    pub fn new(a: Expr, b: Expr, c: Expr) -> Self {
        VectorField([a, b, c])
    }

    pub fn component(&self, i: FrameIndex) -> &Expr {
        &self.0[i.idx()]
    }

    /// The metric is the identity on frame components.
    pub fn dot(&self, other: &VectorField) -> Expr {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, s: &Expr) -> VectorField {
        VectorField(std::array::from_fn(|i| s * &self.0[i]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Expr::is_zero)
    }

    pub fn substitute(&self, b: &Bindings) -> Result<VectorField, ExprError> {
        Ok(VectorField([
            self.0[0].substitute(b)?,
            self.0[1].substitute(b)?,
            self.0[2].substitute(b)?,
        ]))
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

impl Add for VectorField {
    type Output = VectorField;
    fn add(self, rhs: VectorField) -> VectorField {
        &self + &rhs
    }
}

impl Sub for VectorField {
    type Output = VectorField;
    fn sub(self, rhs: VectorField) -> VectorField {
        &self - &rhs
    }
}

/// A (1,1) tensor as a 3×3 matrix over the frame; column `j` is the image of `e_j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tensor11 {
    cols: [VectorField; 3],
}

impl Tensor11 {
    pub fn zero() -> Self {
        Tensor11::default()
    }

    pub fn identity() -> Self {
        Tensor11::from_columns(FrameIndex::ALL.map(VectorField::basis))
    }

    pub fn from_columns(cols: [VectorField; 3]) -> Self {
        Tensor11 { cols }
    }

    /// Builds from `entry(row, col)` = `g(T e_col, e_row)`.
    pub fn from_fn(mut entry: impl FnMut(FrameIndex, FrameIndex) -> Expr) -> Self {
        Tensor11::from_columns(FrameIndex::ALL.map(|j| VectorField(FrameIndex::ALL.map(|i| entry(i, j)))))
    }

    pub fn diagonal(a: Expr, b: Expr, c: Expr) -> Self {
        let d = [a, b, c];
        Tensor11::from_fn(|i, j| if i == j { d[i.idx()].clone() } else { Expr::zero() })
    }

    pub fn column(&self, j: FrameIndex) -> &VectorField {
        &self.cols[j.idx()]
    }

    /// `g(T e_col, e_row)`.
    pub fn entry(&self, row: FrameIndex, col: FrameIndex) -> &Expr {
        &self.cols[col.idx()].0[row.idx()]
    }

    pub fn apply(&self, v: &VectorField) -> VectorField {
        FrameIndex::ALL.iter().fold(VectorField::zero(), |acc, j| {
            &acc + &self.cols[j.idx()].scale(&v.0[j.idx()])
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Tensor11) -> Tensor11 {
        Tensor11::from_columns(other.cols.clone().map(|c| self.apply(&c)))
    }

    pub fn scale(&self, s: &Expr) -> Tensor11 {
        Tensor11::from_columns(self.cols.clone().map(|c| c.scale(s)))
    }

    pub fn transpose(&self) -> Tensor11 {
        Tensor11::from_fn(|i, j| self.entry(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(VectorField::is_zero)
    }

    pub fn trace(&self) -> Expr {
        FrameIndex::ALL.iter().map(|&i| self.entry(i, i).clone()).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Expr> {
        self.cols.iter().flat_map(|c| c.0.iter())
    }

    pub fn has_formal_derivatives(&self) -> bool {
        self.entries().any(Expr::has_formal_derivatives)
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Tensor11, ExprError> {
        let [c0, c1, c2] = &self.cols;
        Ok(Tensor11::from_columns([
            c0.substitute(b)?,
            c1.substitute(b)?,
            c2.substitute(b)?,
        ]))
    }
}

impl Add for &Tensor11 {
    type Output = Tensor11;
    fn add(self, rhs: &Tensor11) -> Tensor11 {
        Tensor11::from_columns(std::array::from_fn(|j| &self.cols[j] + &rhs.cols[j]))
    }
}

impl Sub for &Tensor11 {
    type Output = Tensor11;
    fn sub(self, rhs: &Tensor11) -> Tensor11 {
        Tensor11::from_columns(std::array::from_fn(|j| &self.cols[j] - &rhs.cols[j]))
    }
}

/// `entries[i][j][k] = g(∇_{e_i} e_j, e_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConnectionTable {
    entries: [[[Expr; 3]; 3]; 3],
}

impl ConnectionTable {
    pub fn from_vectors(nabla: [[VectorField; 3]; 3]) -> Self {
        ConnectionTable {
            entries: nabla.map(|row| row.map(|v| v.0)),
        }
    }

    pub fn get(&self, i: FrameIndex, j: FrameIndex, k: FrameIndex) -> &Expr {
        &self.entries[i.idx()][j.idx()][k.idx()]
    }

    /// `∇_{e_i} e_j`.
    pub fn nabla(&self, i: FrameIndex, j: FrameIndex) -> VectorField {
        VectorField(self.entries[i.idx()][j.idx()].clone())
    }

    /// `g(∇_{e_i}e_j, e_k) = −g(∇_{e_i}e_k, e_j)` for all index triples.
    pub fn is_metric_compatible(&self) -> bool {
        FrameIndex::ALL.iter().all(|&i| {
            FrameIndex::ALL.iter().all(|&j| {
                FrameIndex::ALL
                    .iter()
                    .all(|&k| *self.get(i, j, k) == -self.get(i, k, j))
            })
        })
    }
}
