//! Exact dense linear algebra: reduced row echelon forms, kernels, subspace
//! arithmetic and canonical quotient spaces.
//!
//! Everything here is deterministic. A [`Subspace`] is always stored through
//! its unique reduced row-echelon basis with strictly increasing pivots, so
//! two subspaces are equal as sets iff their representations are `==`.

use crate::field::{FieldSpec, Scalar};
use std::fmt;

/// A dense matrix over an exact field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

/// A sparse row: strictly increasing column indices paired with nonzero
/// entries. Used when assembling large relation/boundary systems.
pub type SparseVec = Vec<(usize, Scalar)>;

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r);
        }
        Matrix {
            field,
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.at(j, i).clone()
        })
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.at(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.field.sub(self.at(i, j), other.at(i, j))
        })
    }

    /// Applies the matrix to a column vector of length `cols`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = self.field;
        let mut out = vec![f.zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for i in 0..self.rows {
                let a = self.at(i, j);
                if !f.is_zero(a) {
                    out[i] = f.add(&out[i], &f.mul(a, x));
                }
            }
        }
        out
    }

    /// Applies the matrix to a sparse column vector.
    pub fn apply_sparse(&self, v: &SparseVec) -> Vec<Scalar> {
        let f = self.field;
        let mut out = vec![f.zero(); self.rows];
        for (j, x) in v {
            for i in 0..self.rows {
                let a = self.at(i, *j);
                if !f.is_zero(a) {
                    out[i] = f.add(&out[i], &f.mul(a, x));
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.field, other.field);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// The canonical reduced row-echelon form with zero rows dropped, plus
    /// its pivot columns. Deterministic: leftmost pivot, top-down.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut acc = RrefAccumulator::new(self.field, self.cols);
        for i in 0..self.rows {
            acc.insert_dense(self.row_vec(i));
        }
        acc.into_parts()
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{x : self * x = 0}`, canonicalized.
    pub fn kernel_basis(&self) -> Subspace {
        let f = self.field;
        let n = self.cols;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut acc = RrefAccumulator::new(f, n);
        for free in 0..n {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![f.zero(); n];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.at(i, free));
            }
            acc.insert_dense(v);
        }
        Subspace::from_accumulator(n, acc)
    }

    /// The row space as a canonical subspace of `K^cols`.
    pub fn row_space(&self) -> Subspace {
        let (r, pivots) = self.rref();
        Subspace {
            ambient_dim: self.cols,
            basis: r,
            pivots,
        }
    }

    /// The column space as a canonical subspace of `K^rows`.
    pub fn column_space(&self) -> Subspace {
        self.transpose().row_space()
    }

    /// One solution `x` of `self * x = b`, if any: free coordinates are zero.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let f = self.field;
        // eliminate on [self | b]
        let mut aug = Matrix::from_fn(f, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        aug = r;
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            if p == self.cols {
                return None; // inconsistent row 0 .. 0 | 1
            }
            x[p] = aug.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// Solves `self * X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let mut cols = Vec::with_capacity(b.cols);
        for j in 0..b.cols {
            let col: Vec<Scalar> = (0..b.rows).map(|i| b.at(i, j).clone()).collect();
            cols.push(self.solve(&col)?);
        }
        Some(Matrix::from_fn(self.field, self.cols, b.cols, |i, j| {
            cols[j][i].clone()
        }))
    }

    /// A right inverse `S` with `self * S = id`, if the map is surjective.
    pub fn right_inverse(&self) -> Option<Matrix> {
        self.solve_matrix(&Matrix::identity(self.field, self.rows))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| self.field.format(v)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Incrementally maintained reduced row-echelon basis. Rows can be fed in any
/// order; the final basis is the canonical one for the span.
pub struct RrefAccumulator {
    field: FieldSpec,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RrefAccumulator {
    pub fn new(field: FieldSpec, width: usize) -> Self {
        RrefAccumulator {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` against the current basis, in place.
    fn reduce(&self, v: &mut [Scalar]) {
        let f = self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (j, rj) in row.iter().enumerate() {
                if !f.is_zero(rj) {
                    v[j] = f.sub(&v[j], &f.mul(&c, rj));
                }
            }
        }
    }

    /// Residual of `v` after reduction (not inserted).
    pub fn residual(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        self.reduce(&mut v);
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let f = self.field;
        self.residual(v.to_vec()).iter().all(|x| f.is_zero(x))
    }

    /// Inserts a row; returns true if it enlarged the span.
    pub fn insert_dense(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.width);
        let f = self.field;
        self.reduce(&mut v);
        let pivot = match v.iter().position(|x| !f.is_zero(x)) {
            Some(p) => p,
            None => return false,
        };
        // normalize to leading 1
        let inv = f.inv(&v[pivot]).expect("nonzero pivot");
        for x in v.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        // eliminate the new pivot column from existing rows
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[pivot]) {
                continue;
            }
            let c = row[pivot].clone();
            for (j, vj) in v.iter().enumerate() {
                if !f.is_zero(vj) {
                    row[j] = f.sub(&row[j], &f.mul(&c, vj));
                }
            }
        }
        // keep rows sorted by pivot
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }

    pub fn insert_sparse(&mut self, v: &SparseVec) -> bool {
        let f = self.field;
        let mut dense = vec![f.zero(); self.width];
        for (j, x) in v {
            dense[*j] = f.add(&dense[*j], x);
        }
        self.insert_dense(dense)
    }

    pub fn into_parts(self) -> (Matrix, Vec<usize>) {
        let m = Matrix::from_rows(self.field, self.width, self.rows);
        (m, self.pivots)
    }

    pub fn to_subspace(&self) -> Subspace {
        Subspace {
            ambient_dim: self.width,
            basis: Matrix::from_rows(self.field, self.width, self.rows.clone()),
            pivots: self.pivots.clone(),
        }
    }
}

/// A linear subspace of `K^n` in canonical reduced row-echelon form.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zero(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Canonical span of the given vectors.
    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        let mut acc = RrefAccumulator::new(field, ambient_dim);
        for v in vectors {
            acc.insert_dense(v.clone());
        }
        Subspace::from_accumulator(ambient_dim, acc)
    }

    pub fn from_rows(m: &Matrix) -> Self {
        m.row_space()
    }

    fn from_accumulator(ambient_dim: usize, acc: RrefAccumulator) -> Self {
        let (basis, pivots) = acc.into_parts();
        Subspace {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        (0..self.dim()).map(move |i| self.basis.row_vec(i))
    }

    fn accumulator(&self) -> RrefAccumulator {
        let mut acc = RrefAccumulator::new(self.field(), self.ambient_dim);
        for i in 0..self.dim() {
            acc.insert_dense(self.basis.row_vec(i));
        }
        acc
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        self.accumulator().contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let acc = self.accumulator();
        other.basis_vectors().all(|v| acc.contains(&v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(
            self.ambient_dim, other.ambient_dim,
            "ambient dimension mismatch"
        );
        let mut acc = self.accumulator();
        for v in other.basis_vectors() {
            acc.insert_dense(v);
        }
        Subspace::from_accumulator(self.ambient_dim, acc)
    }

    /// Intersection, via the kernel of the stacked coefficient system: a
    /// vector `x A = y B` lies in both row spans.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(
            self.ambient_dim, other.ambient_dim,
            "ambient dimension mismatch"
        );
        let f = self.field();
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(f, self.ambient_dim);
        }
        // columns: coefficients on self's basis then other's; rows: ambient coords
        let stacked = Matrix::from_fn(f, self.ambient_dim, a + b, |i, j| {
            if j < a {
                self.basis.at(j, i).clone()
            } else {
                f.neg(other.basis.at(j - a, i))
            }
        });
        let ker = stacked.kernel_basis();
        let mut acc = RrefAccumulator::new(f, self.ambient_dim);
        for coeff in ker.basis_vectors() {
            let mut v = vec![f.zero(); self.ambient_dim];
            for (idx, c) in coeff[..a].iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                for j in 0..self.ambient_dim {
                    let t = f.mul(c, self.basis.at(idx, j));
                    v[j] = f.add(&v[j], &t);
                }
            }
            acc.insert_dense(v);
        }
        Subspace::from_accumulator(self.ambient_dim, acc)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of K^{}) {:?}",
            self.dim(),
            self.ambient_dim,
            self.basis
        )
    }
}

/// A canonical quotient `K^n / S`: the non-pivot coordinates of `S` index the
/// quotient basis, `projection . section = id`, and `ker(projection) = S`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuotientSpace {
    pub relations: Subspace,
    pub projection: Matrix,
    pub section: Matrix,
}

impl QuotientSpace {
    pub fn new(ambient_dim: usize, relations: Subspace) -> Self {
        assert_eq!(
            relations.ambient_dim(),
            ambient_dim,
            "ambient dimension mismatch"
        );
        let f = relations.field();
        let k = relations.dim();
        let q = ambient_dim - k;
        let mut is_pivot = vec![false; ambient_dim];
        for &p in relations.pivots() {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..ambient_dim).filter(|&j| !is_pivot[j]).collect();
        let mut projection = Matrix::zero(f, q, ambient_dim);
        for (row, &fr) in free.iter().enumerate() {
            projection.set(row, fr, f.one());
            for (i, &p) in relations.pivots().iter().enumerate() {
                projection.set(row, p, f.neg(relations.basis().at(i, fr)));
            }
        }
        let mut section = Matrix::zero(f, ambient_dim, q);
        for (col, &fr) in free.iter().enumerate() {
            section.set(fr, col, f.one());
        }
        QuotientSpace {
            relations,
            projection,
            section,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.relations.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.relations.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.projection.rows
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.apply(v)
    }

    pub fn lift(&self, w: &[Scalar]) -> Vec<Scalar> {
        self.section.apply(w)
    }
}

impl fmt::Debug for QuotientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QuotientSpace(K^{} / dim {})",
            self.ambient_dim(),
            self.relations.dim()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        let f = q();
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            f,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
                .collect(),
        )
    }

    fn vecq(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| q().from_i64(x)).collect()
    }

    #[test]
    fn rref_zero_matrix_is_empty() {
        let (r, piv) = mat(&[&[0, 0], &[0, 0]]).rref();
        assert_eq!(r.rows, 0);
        assert!(piv.is_empty());
    }

    #[test]
    fn rref_identity_fixed() {
        let id = Matrix::identity(q(), 3);
        let (r, piv) = id.rref();
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1, 2]);
    }

    #[test]
    fn rref_collinear_rows() {
        let (r, piv) = mat(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r, mat(&[&[1, 2]]));
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        assert_eq!(Matrix::identity(q(), 4).kernel_basis().dim(), 0);
    }

    #[test]
    fn kernel_of_zero_map_is_full() {
        let k = Matrix::zero(q(), 2, 3).kernel_basis();
        assert_eq!(k.dim(), 3);
        assert_eq!(k, Subspace::full(q(), 3));
    }

    #[test]
    fn kernel_of_single_row() {
        let k = mat(&[&[1, 2]]).kernel_basis();
        let expected = Subspace::span(q(), 2, &[vecq(&[-2, 1])]);
        assert_eq!(k, expected);
    }

    #[test]
    fn quotient_trivial_relation() {
        let qs = QuotientSpace::new(3, Subspace::zero(q(), 3));
        assert_eq!(qs.projection, Matrix::identity(q(), 3));
    }

    #[test]
    fn quotient_by_everything() {
        let qs = QuotientSpace::new(2, Subspace::full(q(), 2));
        assert_eq!(qs.dim(), 0);
    }

    #[test]
    fn quotient_identifies_mod_relations() {
        let s = Subspace::span(q(), 2, &[vecq(&[1, 1])]);
        let qs = QuotientSpace::new(2, s);
        assert_eq!(qs.dim(), 1);
        assert_eq!(qs.project(&vecq(&[0, 1])), qs.project(&vecq(&[-1, 0])));
    }

    #[test]
    fn quotient_projection_section_identity_and_kernel() {
        let s = Subspace::span(q(), 4, &[vecq(&[1, 2, 0, 0]), vecq(&[0, 0, 1, -1])]);
        let qs = QuotientSpace::new(4, s.clone());
        assert_eq!(qs.projection.mul(&qs.section), Matrix::identity(q(), 2));
        assert_eq!(qs.projection.kernel_basis(), s);
    }

    #[test]
    fn subspace_ops_idempotent() {
        let a = Subspace::span(q(), 3, &[vecq(&[1, 2, 0]), vecq(&[0, 0, 1])]);
        assert_eq!(a.sum(&a), a);
        assert_eq!(a.intersect(&a), a);
    }

    #[test]
    fn subspace_ops_complementary() {
        let a = Subspace::span(q(), 4, &[vecq(&[1, 0, 0, 0]), vecq(&[0, 1, 0, 0])]);
        let b = Subspace::span(q(), 4, &[vecq(&[0, 0, 1, 0]), vecq(&[0, 0, 0, 1])]);
        assert_eq!(a.intersect(&b).dim(), 0);
        assert_eq!(a.sum(&b), Subspace::full(q(), 4));
    }

    #[test]
    fn subspace_intersection_contained() {
        let a = Subspace::span(q(), 2, &[vecq(&[1, 0]), vecq(&[0, 1])]);
        let b = Subspace::span(q(), 2, &[vecq(&[1, 1])]);
        assert_eq!(a.intersect(&b), b);
        assert!(a.contains_subspace(&b));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        let x = m.solve(&vecq(&[3, 6])).unwrap();
        assert_eq!(m.apply(&x), vecq(&[3, 6]));
        assert!(m.solve(&vecq(&[1, 0])).is_none());
    }

    #[test]
    fn gf5_rank() {
        let f = FieldSpec::prime_field(5).unwrap();
        // [[1,2],[3,6]] over GF(5): second row = 3 * first, rank 1
        let m = Matrix::from_rows(
            f,
            2,
            vec![
                vec![f.from_i64(1), f.from_i64(2)],
                vec![f.from_i64(3), f.from_i64(6)],
            ],
        );
        assert_eq!(m.rank(), 1);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = Matrix> {
            (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-4i64..5, r * c).prop_map(move |vals| {
                    let f = q();
                    Matrix {
                        field: f,
                        rows: r,
                        cols: c,
                        data: vals.into_iter().map(|x| f.from_i64(x)).collect(),
                    }
                })
            })
        }

        proptest! {
            #[test]
            fn rank_nullity(m in small_matrix()) {
                prop_assert_eq!(m.rank() + m.kernel_basis().dim(), m.cols);
            }

            #[test]
            fn rref_idempotent_and_canonical(m in small_matrix()) {
                let (r, piv) = m.rref();
                let (r2, piv2) = r.rref();
                prop_assert_eq!(&r2, &r);
                prop_assert_eq!(piv2, piv);
                // row-equivalent input (rows permuted and one row scaled) reduces identically
                if m.rows >= 2 {
                    let mut rows: Vec<Vec<Scalar>> = (0..m.rows).map(|i| m.row_vec(i)).collect();
                    rows.swap(0, m.rows - 1);
                    for x in rows[0].iter_mut() {
                        *x = m.field.mul(x, &m.field.from_i64(3));
                    }
                    let m2 = Matrix::from_rows(m.field, m.cols, rows);
                    prop_assert_eq!(m2.rref().0, r);
                }
            }

            #[test]
            fn quotient_residual_lands_in_relations(m in small_matrix(), coeffs in proptest::collection::vec(-3i64..4, 5)) {
                let s = m.row_space();
                let qs = QuotientSpace::new(m.cols, s.clone());
                let f = m.field;
                let v: Vec<Scalar> = (0..m.cols).map(|j| f.from_i64(coeffs[j % coeffs.len()])).collect();
                let back = qs.lift(&qs.project(&v));
                let diff: Vec<Scalar> = back.iter().zip(&v).map(|(a, b)| f.sub(a, b)).collect();
                prop_assert!(s.contains(&diff));
            }

            #[test]
            fn modular_law_dims(m1 in small_matrix(), rows2 in proptest::collection::vec(proptest::collection::vec(-3i64..4, 4), 1..4)) {
                let a = m1.row_space();
                if m1.cols == 4 {
                    let b = Subspace::span(q(), 4, &rows2.iter().map(|r| vecq(r)).collect::<Vec<_>>());
                    let sum = a.sum(&b);
                    let int = a.intersect(&b);
                    prop_assert_eq!(sum.dim() + int.dim(), a.dim() + b.dim());
                    prop_assert!(sum.contains_subspace(&a));
                    prop_assert!(a.contains_subspace(&int));
                }
            }
        }
    }
}
