//! Finite-dimensional algebras with bracket, given by structure constants.
//!
//! A [`FiniteAwb`] is an associative algebra with an extra bilinear bracket
//! satisfying `[ab,c] = [a,c]b + a[b,c]`. Both operations are stored as dense
//! `n x n x n` tensors over an exact field, so every construction in this
//! module (ideals, centers, quotients, direct sums) is a finite, reproducible
//! linear-algebra computation.

use crate::error::AwbError;
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Matrix, QuotientSpace, RrefAccumulator, Subspace};
use std::fmt;

/// A dense 3-tensor with shape `(d0, d1, d2)`: a bilinear map
/// `K^d0 x K^d1 -> K^d2` given on basis pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor3 {
    pub field: FieldSpec,
    pub d0: usize,
    pub d1: usize,
    pub d2: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zero(field: FieldSpec, d0: usize, d1: usize, d2: usize) -> Self {
        Tensor3 {
            field,
            d0,
            d1,
            d2,
            data: vec![field.zero(); d0 * d1 * d2],
        }
    }

    pub fn from_fn(
        field: FieldSpec,
        d0: usize,
        d1: usize,
        d2: usize,
        mut f: impl FnMut(usize, usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(d0 * d1 * d2);
        for i in 0..d0 {
            for j in 0..d1 {
                for k in 0..d2 {
                    data.push(f(i, j, k));
                }
            }
        }
        Tensor3 {
            field,
            d0,
            d1,
            d2,
            data,
        }
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.d1 + j) * self.d2 + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        self.data[(i * self.d1 + j) * self.d2 + k] = v;
    }

    /// The value on a basis pair, as a coordinate slice of length `d2`.
    pub fn on_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.d1 + j) * self.d2;
        &self.data[start..start + self.d2]
    }

    /// Bilinear evaluation on coordinate vectors.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.d0, "left argument dimension mismatch");
        assert_eq!(y.len(), self.d1, "right argument dimension mismatch");
        let f = self.field;
        let mut out = vec![f.zero(); self.d2];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, t) in self.on_basis(i, j).iter().enumerate() {
                    if !f.is_zero(t) {
                        out[k] = f.add(&out[k], &f.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor3({}x{}x{})", self.d0, self.d1, self.d2)
    }
}

/// One violated law instance: which law, on which basis tuple, and the two
/// sides that disagree (formatted canonically).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Witness {
    pub law: String,
    pub indices: Vec<usize>,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl Witness {
    pub fn summary(&self) -> String {
        format!(
            "{} at {:?}: [{}] != [{}]",
            self.law,
            self.indices,
            self.left.join(", "),
            self.right.join(", ")
        )
    }
}

/// Outcome of an axiom check; valid iff no witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Default, serde::Serialize)]
pub struct ValidationReport {
    pub witnesses: Vec<Witness>,
}

impl ValidationReport {
    pub fn new(witnesses: Vec<Witness>) -> Self {
        ValidationReport { witnesses }
    }

    pub fn is_valid(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn merged(mut self, other: ValidationReport) -> ValidationReport {
        self.witnesses.extend(other.witnesses);
        self
    }

    pub fn into_result(self, context: &str) -> Result<(), AwbError> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(AwbError::InvalidStructure {
                context: context.to_string(),
                report: self,
            })
        }
    }
}

/// The operation being evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AwbOp {
    Product,
    Bracket,
}

/// A finite-dimensional algebra with bracket, by structure constants:
/// `product.at(i,j,k)` is the coefficient of `e_k` in `e_i e_j`, and
/// `bracket.at(i,j,k)` that of `e_k` in `[e_i, e_j]`.
#[derive(Clone)]
pub struct FiniteAwb {
    pub field: FieldSpec,
    pub dim: usize,
    pub product: Tensor3,
    pub bracket: Tensor3,
    /// Readability label; never semantic.
    pub name: String,
}

impl FiniteAwb {
    /// Builds and validates. Rejects tensors violating associativity or the
    /// bracket identity.
    pub fn new(
        field: FieldSpec,
        dim: usize,
        product: Tensor3,
        bracket: Tensor3,
        name: &str,
    ) -> Result<Self, AwbError> {
        let a = Self::new_unchecked(field, dim, product, bracket, name);
        let report = a.validate();
        report.into_result(&format!("algebra `{}`", a.name))?;
        Ok(a)
    }

    /// Escape hatch for deliberately invalid fixtures and raw file loading.
    pub fn new_unchecked(
        field: FieldSpec,
        dim: usize,
        product: Tensor3,
        bracket: Tensor3,
        name: &str,
    ) -> Self {
        assert!(
            product.d0 == dim && product.d1 == dim && product.d2 == dim,
            "product tensor shape mismatch"
        );
        assert!(
            bracket.d0 == dim && bracket.d1 == dim && bracket.d2 == dim,
            "bracket tensor shape mismatch"
        );
        assert_eq!(product.field, field);
        assert_eq!(bracket.field, field);
        FiniteAwb {
            field,
            dim,
            product,
            bracket,
            name: name.to_string(),
        }
    }

    /// The abelian algebra: both operations zero.
    pub fn abelian(field: FieldSpec, dim: usize, name: &str) -> Self {
        FiniteAwb::new_unchecked(
            field,
            dim,
            Tensor3::zero(field, dim, dim, dim),
            Tensor3::zero(field, dim, dim, dim),
            name,
        )
    }

    /// An associative algebra with the commutator bracket `[a,b] = ab - ba`.
    pub fn tautological(
        field: FieldSpec,
        dim: usize,
        product: Tensor3,
        name: &str,
    ) -> Result<Self, AwbError> {
        let f = field;
        let bracket = Tensor3::from_fn(f, dim, dim, dim, |i, j, k| {
            f.sub(product.at(i, j, k), product.at(j, i, k))
        });
        FiniteAwb::new(field, dim, product, bracket, name)
    }

    /// An associative algebra with the zero bracket.
    pub fn with_trivial_bracket(
        field: FieldSpec,
        dim: usize,
        product: Tensor3,
        name: &str,
    ) -> Result<Self, AwbError> {
        let bracket = Tensor3::zero(field, dim, dim, dim);
        FiniteAwb::new(field, dim, product, bracket, name)
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_element(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.product.eval(x, y)
    }

    pub fn brk(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.bracket.eval(x, y)
    }

    pub fn evaluate(&self, x: &[Scalar], y: &[Scalar], op: AwbOp) -> Vec<Scalar> {
        match op {
            AwbOp::Product => self.mul(x, y),
            AwbOp::Bracket => self.brk(x, y),
        }
    }

    /// Checks associativity and `[ab,c] = [a,c]b + a[b,c]` on all basis
    /// triples; failures are reported, not thrown.
    pub fn validate(&self) -> ValidationReport {
        let f = self.field;
        let n = self.dim;
        let mut witnesses = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ij = self.product.on_basis(i, j).to_vec();
                let br_ij = self.bracket.on_basis(i, j).to_vec();
                for k in 0..n {
                    let jk = self.product.on_basis(j, k).to_vec();
                    // (e_i e_j) e_k = e_i (e_j e_k)
                    let left = self.mul(&ij, &self.basis_element(k));
                    let right = self.mul(&self.basis_element(i), &jk);
                    if left != right {
                        witnesses.push(self.witness("associativity", &[i, j, k], &left, &right));
                    }
                    // [e_i e_j, e_k] = [e_i, e_k] e_j + e_i [e_j, e_k]
                    let left = self.brk(&ij, &self.basis_element(k));
                    let t1 = self.mul(self.bracket.on_basis(i, k), &self.basis_element(j));
                    let t2 = self.mul(&self.basis_element(i), self.bracket.on_basis(j, k));
                    let right: Vec<Scalar> =
                        t1.iter().zip(&t2).map(|(a, b)| f.add(a, b)).collect();
                    if left != right {
                        witnesses.push(self.witness(
                            "bracket_identity",
                            &[i, j, k],
                            &left,
                            &right,
                        ));
                    }
                    let _ = br_ij;
                }
            }
        }
        ValidationReport::new(witnesses)
    }

    fn witness(&self, law: &str, indices: &[usize], left: &[Scalar], right: &[Scalar]) -> Witness {
        let f = self.field;
        Witness {
            law: law.to_string(),
            indices: indices.to_vec(),
            left: left.iter().map(|v| f.format(v)).collect(),
            right: right.iter().map(|v| f.format(v)).collect(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.product.is_zero() && self.bracket.is_zero()
    }

    /// Structural equality: same field, dimension and tensors (labels ignored).
    pub fn same_structure(&self, other: &FiniteAwb) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.product == other.product
            && self.bracket == other.bracket
    }

    /// Whether the subspace is closed under both operations.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        assert_eq!(s.ambient_dim(), self.dim);
        let vs: Vec<Vec<Scalar>> = s.basis_vectors().collect();
        for x in &vs {
            for y in &vs {
                if !s.contains(&self.mul(x, y)) || !s.contains(&self.brk(x, y)) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the subspace absorbs products and brackets on both sides.
    pub fn is_two_sided_ideal(&self, s: &Subspace) -> bool {
        assert_eq!(s.ambient_dim(), self.dim);
        let vs: Vec<Vec<Scalar>> = s.basis_vectors().collect();
        for x in &vs {
            for j in 0..self.dim {
                let e = self.basis_element(j);
                if !s.contains(&self.mul(x, &e))
                    || !s.contains(&self.mul(&e, x))
                    || !s.contains(&self.brk(x, &e))
                    || !s.contains(&self.brk(&e, x))
                {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest two-sided ideal containing the seeds, by fixpoint iteration:
    /// close under left/right product and bracket with all basis vectors.
    pub fn ideal_closure(&self, seeds: &[Vec<Scalar>]) -> Subspace {
        let mut acc = RrefAccumulator::new(self.field, self.dim);
        for v in seeds {
            assert_eq!(v.len(), self.dim, "seed dimension mismatch");
            acc.insert_dense(v.clone());
        }
        loop {
            let current: Vec<Vec<Scalar>> = acc.to_subspace().basis_vectors().collect();
            let before = acc.dim();
            for b in &current {
                for j in 0..self.dim {
                    let e = self.basis_element(j);
                    acc.insert_dense(self.mul(b, &e));
                    acc.insert_dense(self.mul(&e, b));
                    acc.insert_dense(self.brk(b, &e));
                    acc.insert_dense(self.brk(&e, b));
                }
            }
            if acc.dim() == before {
                return acc.to_subspace();
            }
        }
    }

    /// The commutator ideal `[[B, C]]` of two two-sided ideals: the ideal
    /// generated by `bc, cb, [b,c], [c,b]`.
    pub fn commutator_ideal(
        &self,
        b_sub: &Subspace,
        c_sub: &Subspace,
    ) -> Result<Subspace, AwbError> {
        if !self.is_two_sided_ideal(b_sub) {
            return Err(AwbError::NotAnIdeal("first argument".into()));
        }
        if !self.is_two_sided_ideal(c_sub) {
            return Err(AwbError::NotAnIdeal("second argument".into()));
        }
        let mut seeds = Vec::new();
        for b in b_sub.basis_vectors() {
            for c in c_sub.basis_vectors() {
                seeds.push(self.mul(&b, &c));
                seeds.push(self.mul(&c, &b));
                seeds.push(self.brk(&b, &c));
                seeds.push(self.brk(&c, &b));
            }
        }
        Ok(self.ideal_closure(&seeds))
    }

    /// `[[A, A]]` together with the perfectness flag `[[A,A]] = A`.
    pub fn derived_and_perfect(&self) -> (Subspace, bool) {
        let full = Subspace::full(self.field, self.dim);
        let derived = self
            .commutator_ideal(&full, &full)
            .expect("full space is an ideal");
        let perfect = derived.dim() == self.dim;
        (derived, perfect)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_and_perfect().1
    }

    /// The center `{x : xb = bx = [x,b] = [b,x] = 0 for all b}`, the kernel
    /// of a stacked linear system.
    pub fn center(&self) -> Subspace {
        let f = self.field;
        let n = self.dim;
        if n == 0 {
            return Subspace::zero(f, 0);
        }
        // rows indexed by (condition, j, k); columns by the coordinates of x
        let mut rows = Vec::with_capacity(4 * n * n);
        for j in 0..n {
            for k in 0..n {
                for cond in 0..4 {
                    let row: Vec<Scalar> = (0..n)
                        .map(|i| {
                            match cond {
                                0 => self.product.at(i, j, k), // x e_j
                                1 => self.product.at(j, i, k), // e_j x
                                2 => self.bracket.at(i, j, k), // [x, e_j]
                                _ => self.bracket.at(j, i, k), // [e_j, x]
                            }
                            .clone()
                        })
                        .collect();
                    rows.push(row);
                }
            }
        }
        Matrix::from_rows(f, n, rows).kernel_basis()
    }

    /// Quotient by a two-sided ideal, with the projection morphism.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(FiniteAwb, AwbMorphism), AwbError> {
        if !self.is_two_sided_ideal(ideal) {
            return Err(AwbError::NotAnIdeal("quotient relation subspace".into()));
        }
        let qs = QuotientSpace::new(self.dim, ideal.clone());
        let q = qs.dim();
        let f = self.field;
        let lifts: Vec<Vec<Scalar>> = (0..q)
            .map(|i| {
                let mut w = vec![f.zero(); q];
                w[i] = f.one();
                qs.lift(&w)
            })
            .collect();
        let mut product = Tensor3::zero(f, q, q, q);
        let mut bracket = Tensor3::zero(f, q, q, q);
        for i in 0..q {
            for j in 0..q {
                let p = qs.project(&self.mul(&lifts[i], &lifts[j]));
                let b = qs.project(&self.brk(&lifts[i], &lifts[j]));
                for k in 0..q {
                    product.set(i, j, k, p[k].clone());
                    bracket.set(i, j, k, b[k].clone());
                }
            }
        }
        let quotient = FiniteAwb::new(
            f,
            q,
            product,
            bracket,
            &format!("{}/(dim {})", self.name, ideal.dim()),
        )?;
        let proj = AwbMorphism::new(self.clone(), quotient.clone(), qs.projection.clone());
        Ok((quotient, proj))
    }

    /// `A / [[A,A]]`: always abelian.
    pub fn abelianization(&self) -> (FiniteAwb, AwbMorphism) {
        let (derived, _) = self.derived_and_perfect();
        self.quotient(&derived).expect("derived algebra is an ideal")
    }

    /// `A / <[a, a']>`: the bracket dies, the product survives.
    pub fn associativization(&self) -> (FiniteAwb, AwbMorphism) {
        let mut seeds = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                seeds.push(self.bracket.on_basis(i, j).to_vec());
            }
        }
        let ideal = self.ideal_closure(&seeds);
        self.quotient(&ideal).expect("closure is an ideal")
    }

    /// Maximal quotient with an antisymmetric, Jacobi bracket: mod out the
    /// ideal generated by all `[x,x]` (polarized) and all Jacobiators.
    pub fn poisson_quotient(&self) -> (FiniteAwb, AwbMorphism) {
        let f = self.field;
        let mut seeds = Vec::new();
        for i in 0..self.dim {
            seeds.push(self.bracket.on_basis(i, i).to_vec());
            for j in (i + 1)..self.dim {
                let sym: Vec<Scalar> = self
                    .bracket
                    .on_basis(i, j)
                    .iter()
                    .zip(self.bracket.on_basis(j, i))
                    .map(|(a, b)| f.add(a, b))
                    .collect();
                seeds.push(sym);
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let (ei, ej, ek) = (
                        self.basis_element(i),
                        self.basis_element(j),
                        self.basis_element(k),
                    );
                    let t1 = self.brk(&ei, self.bracket.on_basis(j, k));
                    let t2 = self.brk(&ej, &self.brk(&ek, &ei));
                    let t3 = self.brk(&ek, self.bracket.on_basis(i, j));
                    let jacobiator: Vec<Scalar> = t1
                        .iter()
                        .zip(&t2)
                        .zip(&t3)
                        .map(|((a, b), c)| f.add(&f.add(a, b), c))
                        .collect();
                    seeds.push(jacobiator);
                }
            }
        }
        let ideal = self.ideal_closure(&seeds);
        self.quotient(&ideal).expect("closure is an ideal")
    }

    /// Block-diagonal direct sum; each summand embeds as a two-sided ideal.
    #[allow(clippy::type_complexity)]
    pub fn direct_sum(
        &self,
        other: &FiniteAwb,
    ) -> Result<(FiniteAwb, [AwbMorphism; 2], [AwbMorphism; 2]), AwbError> {
        if self.field != other.field {
            return Err(AwbError::FieldMismatch(self.field, other.field));
        }
        let f = self.field;
        let (da, db) = (self.dim, other.dim);
        let n = da + db;
        let block = |ta: &Tensor3, tb: &Tensor3| {
            Tensor3::from_fn(f, n, n, n, |i, j, k| {
                if i < da && j < da && k < da {
                    ta.at(i, j, k).clone()
                } else if i >= da && j >= da && k >= da {
                    tb.at(i - da, j - da, k - da).clone()
                } else {
                    f.zero()
                }
            })
        };
        let sum = FiniteAwb::new(
            f,
            n,
            block(&self.product, &other.product),
            block(&self.bracket, &other.bracket),
            &format!("{}(+){}", self.name, other.name),
        )?;
        let inj_a = AwbMorphism::new(
            self.clone(),
            sum.clone(),
            Matrix::from_fn(f, n, da, |i, j| {
                if i == j { f.one() } else { f.zero() }
            }),
        );
        let inj_b = AwbMorphism::new(
            other.clone(),
            sum.clone(),
            Matrix::from_fn(f, n, db, |i, j| {
                if i == j + da { f.one() } else { f.zero() }
            }),
        );
        let proj_a = AwbMorphism::new(
            sum.clone(),
            self.clone(),
            Matrix::from_fn(f, da, n, |i, j| {
                if i == j { f.one() } else { f.zero() }
            }),
        );
        let proj_b = AwbMorphism::new(
            sum.clone(),
            other.clone(),
            Matrix::from_fn(f, db, n, |i, j| {
                if i + da == j { f.one() } else { f.zero() }
            }),
        );
        Ok((sum, [inj_a, inj_b], [proj_a, proj_b]))
    }

    /// Materializes a closed subspace as an algebra on its canonical basis,
    /// with the inclusion morphism.
    pub fn subalgebra_on(
        &self,
        s: &Subspace,
        name: &str,
    ) -> Result<(FiniteAwb, AwbMorphism), AwbError> {
        if !self.is_subalgebra(s) {
            return Err(AwbError::NotASubalgebra(name.into()));
        }
        let f = self.field;
        let k = s.dim();
        let basis: Vec<Vec<Scalar>> = s.basis_vectors().collect();
        // coordinates w.r.t. an rref basis are read off at the pivot columns
        let coords = |v: &[Scalar]| -> Vec<Scalar> {
            s.pivots().iter().map(|&p| v[p].clone()).collect()
        };
        let mut product = Tensor3::zero(f, k, k, k);
        let mut bracket = Tensor3::zero(f, k, k, k);
        for i in 0..k {
            for j in 0..k {
                let p = coords(&self.mul(&basis[i], &basis[j]));
                let b = coords(&self.brk(&basis[i], &basis[j]));
                for t in 0..k {
                    product.set(i, j, t, p[t].clone());
                    bracket.set(i, j, t, b[t].clone());
                }
            }
        }
        let sub = FiniteAwb::new(f, k, product, bracket, name)?;
        let incl = AwbMorphism::new(
            sub.clone(),
            self.clone(),
            Matrix::from_fn(f, self.dim, k, |i, j| basis[j][i].clone()),
        );
        Ok((sub, incl))
    }
}

impl fmt::Debug for FiniteAwb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAwb({}, dim {}, {})", self.name, self.dim, self.field)
    }
}

/// A linear map between algebras, `matrix`: (target dim) x (source dim).
/// Whether it is actually a homomorphism is checked by [`AwbMorphism::check`].
#[derive(Clone)]
pub struct AwbMorphism {
    pub source: FiniteAwb,
    pub target: FiniteAwb,
    pub matrix: Matrix,
}

impl AwbMorphism {
    pub fn new(source: FiniteAwb, target: FiniteAwb, matrix: Matrix) -> Self {
        assert_eq!(matrix.rows, target.dim, "morphism matrix row mismatch");
        assert_eq!(matrix.cols, source.dim, "morphism matrix column mismatch");
        assert_eq!(source.field, target.field, "morphism field mismatch");
        AwbMorphism {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(a: &FiniteAwb) -> Self {
        AwbMorphism::new(a.clone(), a.clone(), Matrix::identity(a.field, a.dim))
    }

    pub fn zero(source: &FiniteAwb, target: &FiniteAwb) -> Self {
        AwbMorphism::new(
            source.clone(),
            target.clone(),
            Matrix::zero(source.field, target.dim, source.dim),
        )
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// `self` then `next` (`next . self`).
    pub fn then(&self, next: &AwbMorphism) -> AwbMorphism {
        assert_eq!(self.target.dim, next.source.dim, "composition mismatch");
        AwbMorphism::new(
            self.source.clone(),
            next.target.clone(),
            next.matrix.mul(&self.matrix),
        )
    }

    /// Verifies `f(xy) = f(x)f(y)` and `f([x,y]) = [f(x),f(y)]` on basis pairs.
    pub fn check(&self) -> ValidationReport {
        let mut witnesses = Vec::new();
        let n = self.source.dim;
        for i in 0..n {
            for j in 0..n {
                let left = self.apply(self.source.product.on_basis(i, j));
                let fi = self.apply(&self.source.basis_element(i));
                let fj = self.apply(&self.source.basis_element(j));
                let right = self.target.mul(&fi, &fj);
                if left != right {
                    witnesses.push(self.target.witness("product_hom", &[i, j], &left, &right));
                }
                let left = self.apply(self.source.bracket.on_basis(i, j));
                let right = self.target.brk(&fi, &fj);
                if left != right {
                    witnesses.push(self.target.witness("bracket_hom", &[i, j], &left, &right));
                }
            }
        }
        ValidationReport::new(witnesses)
    }

    pub fn is_morphism(&self) -> bool {
        self.check().is_valid()
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel_basis()
    }

    pub fn image(&self) -> Subspace {
        self.matrix.column_space()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().dim() == self.target.dim
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().dim() == 0
    }
}

impl fmt::Debug for AwbMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AwbMorphism({} -> {}) {:?}",
            self.source.name, self.target.name, self.matrix
        )
    }
}

/// Free-function aliases matching the operation names used in reports.
pub fn validate_awb(a: &FiniteAwb) -> ValidationReport {
    a.validate()
}

pub fn check_morphism(f: &AwbMorphism) -> ValidationReport {
    f.check()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn corpus_algebras_all_validate() {
        for a in fixtures::corpus() {
            assert!(a.validate().is_valid(), "{} failed validation", a.name);
        }
    }

    #[test]
    fn corrupted_fixtures_fail_with_exact_witnesses() {
        let a = fixtures::invalid::bracket_dim1(q());
        let rep = a.validate();
        assert_eq!(rep.witnesses.len(), 1);
        let w = &rep.witnesses[0];
        assert_eq!(w.law, "bracket_identity");
        assert_eq!(w.indices, vec![0, 0, 0]);
        assert_eq!(w.left, vec!["1"]);
        assert_eq!(w.right, vec!["2"]);

        let b = fixtures::invalid::assoc_dim2(q());
        let rep = b.validate();
        assert!(rep.witnesses.iter().all(|w| w.law == "associativity"));
        let w = &rep.witnesses[0];
        assert_eq!(w.indices, vec![0, 0, 0]);
        assert_eq!(w.left, vec!["1", "0"]);
        assert_eq!(w.right, vec!["0", "0"]);

        let c = fixtures::invalid::bracket_n2(q());
        let rep = c.validate();
        let w = &rep.witnesses[0];
        assert_eq!(w.law, "bracket_identity");
        assert_eq!(w.indices, vec![0, 0, 0]);
        assert_eq!(w.left, vec!["0", "0"]);
        assert_eq!(w.right, vec!["0", "2"]);
    }

    #[test]
    fn evaluate_matrix_units() {
        let a = fixtures::t_m2(q());
        // e11 . e12 = e12
        let out = a.mul(&a.basis_element(0), &a.basis_element(1));
        assert_eq!(out, a.basis_element(1));
        // commutator bracket of an element with itself is zero
        let f = q();
        let x: Vec<Scalar> = [1, 2, 3, 4].iter().map(|&v| f.from_i64(v)).collect();
        assert_eq!(a.brk(&x, &x), a.zero_vec());
        // abelian: everything is zero
        let ab = fixtures::abelian(q(), 3);
        assert_eq!(
            ab.evaluate(&ab.basis_element(0), &ab.basis_element(1), AwbOp::Product),
            ab.zero_vec()
        );
    }

    #[test]
    fn tautological_bracket_values() {
        let a = fixtures::t_m2(q());
        // [e11, e12] = e11 e12 - e12 e11 = e12
        assert_eq!(
            a.brk(&a.basis_element(0), &a.basis_element(1)),
            a.basis_element(1)
        );
        // commutative truncation: zero bracket
        let dual = fixtures::dual_numbers(q());
        let taut =
            FiniteAwb::tautological(q(), 2, dual.product.clone(), "t_dual").unwrap();
        assert!(taut.bracket.is_zero());
        // dim 0
        let z = FiniteAwb::tautological(q(), 0, Tensor3::zero(q(), 0, 0, 0), "zero").unwrap();
        assert!(z.is_abelian());
    }

    #[test]
    fn tautological_rejects_nonassociative_input() {
        let bad = fixtures::invalid::assoc_dim2(q());
        assert!(FiniteAwb::tautological(q(), 2, bad.product.clone(), "bad").is_err());
        assert!(FiniteAwb::with_trivial_bracket(q(), 2, bad.product, "bad").is_err());
    }

    #[test]
    fn ideal_closure_examples() {
        let a = fixtures::t_m2(q());
        assert_eq!(a.ideal_closure(&[a.zero_vec()]).dim(), 0);
        // M2 is simple: any nonzero element generates everything
        assert_eq!(a.ideal_closure(&[a.basis_element(0)]).dim(), 4);
        let n2 = fixtures::n2(q());
        let span_y = n2.ideal_closure(&[n2.basis_element(1)]);
        assert_eq!(span_y.dim(), 1);
        assert!(span_y.contains(&n2.basis_element(1)));
    }

    #[test]
    fn commutator_ideal_examples() {
        let ab = fixtures::abelian(q(), 2);
        let full = Subspace::full(q(), 2);
        assert_eq!(ab.commutator_ideal(&full, &full).unwrap().dim(), 0);

        let a = fixtures::t_m2(q());
        let full4 = Subspace::full(q(), 4);
        assert_eq!(a.commutator_ideal(&full4, &full4).unwrap().dim(), 4);

        let n2 = fixtures::n2(q());
        let full2 = Subspace::full(q(), 2);
        let d = n2.commutator_ideal(&full2, &full2).unwrap();
        assert_eq!(d.dim(), 1);
        assert!(d.contains(&n2.basis_element(1)));

        // non-ideal input is rejected
        let not_ideal = Subspace::span(q(), 4, &[a.basis_element(0)]);
        assert!(a.commutator_ideal(&not_ideal, &full4).is_err());
    }

    #[test]
    fn commutator_ideal_contained_in_intersection() {
        for a in fixtures::corpus() {
            let full = Subspace::full(a.field, a.dim);
            let (derived, _) = a.derived_and_perfect();
            let center = a.center();
            for b_sub in [&full, &derived, &center] {
                for c_sub in [&full, &derived, &center] {
                    let cc = a.commutator_ideal(b_sub, c_sub).unwrap();
                    assert!(
                        b_sub.intersect(c_sub).contains_subspace(&cc),
                        "[[B,C]] not inside intersection for {}",
                        a.name
                    );
                }
            }
        }
    }

    #[test]
    fn derived_and_perfect_examples() {
        let (d, p) = fixtures::t_m2(q()).derived_and_perfect();
        assert_eq!((d.dim(), p), (4, true));
        let (d, p) = fixtures::abelian(q(), 3).derived_and_perfect();
        assert_eq!((d.dim(), p), (0, false));
        let (d, p) = fixtures::n2(q()).derived_and_perfect();
        assert_eq!((d.dim(), p), (1, false));
        assert!(fixtures::t_m2_sum(q()).is_perfect());
    }

    #[test]
    fn center_examples() {
        let ab = fixtures::abelian(q(), 2);
        assert_eq!(ab.center(), Subspace::full(q(), 2));
        assert_eq!(fixtures::t_m2(q()).center().dim(), 0);
        let n2 = fixtures::n2(q());
        let z = n2.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&n2.basis_element(1)));
    }

    #[test]
    fn center_is_an_ideal() {
        for a in fixtures::corpus() {
            let z = a.center();
            let closed = a.ideal_closure(&z.basis_vectors().collect::<Vec<_>>());
            assert_eq!(closed, z, "center of {} is not an ideal", a.name);
        }
    }

    #[test]
    fn quotient_examples() {
        let a = fixtures::t_m2(q());
        let (q0, proj) = a.quotient(&Subspace::zero(q(), 4)).unwrap();
        assert!(q0.same_structure(&a));
        assert!(proj.is_morphism());

        let (qfull, _) = a.quotient(&Subspace::full(q(), 4)).unwrap();
        assert_eq!(qfull.dim, 0);

        let n2 = fixtures::n2(q());
        let span_y = n2.ideal_closure(&[n2.basis_element(1)]);
        let (qn, proj) = n2.quotient(&span_y).unwrap();
        assert_eq!(qn.dim, 1);
        assert!(qn.is_abelian());
        assert!(proj.is_morphism());

        let not_ideal = Subspace::span(q(), 4, &[a.basis_element(0)]);
        assert!(a.quotient(&not_ideal).is_err());
    }

    #[test]
    fn quotient_projections_compose() {
        // N2: 0 inside span{y}; (A/I)/(J/I) = A/J
        let a = fixtures::n2(q());
        let i = Subspace::zero(q(), 2);
        let j = a.ideal_closure(&[a.basis_element(1)]);
        let (ai, proj_i) = a.quotient(&i).unwrap();
        let j_in_ai = Subspace::span(
            q(),
            ai.dim,
            &j.basis_vectors().map(|v| proj_i.apply(&v)).collect::<Vec<_>>(),
        );
        let (_, proj_rest) = ai.quotient(&j_in_ai).unwrap();
        let (_, proj_j) = a.quotient(&j).unwrap();
        assert_eq!(proj_i.then(&proj_rest).matrix, proj_j.matrix);
    }

    #[test]
    fn abelianization_examples() {
        let (ab, _) = fixtures::t_m2(q()).abelianization();
        assert_eq!(ab.dim, 0);
        let a3 = fixtures::abelian(q(), 3);
        let (ab3, _) = a3.abelianization();
        assert!(ab3.same_structure(&a3));
        let (abn, _) = fixtures::n2(q()).abelianization();
        assert_eq!(abn.dim, 1);
        for a in fixtures::corpus() {
            let (ab, proj) = a.abelianization();
            assert!(ab.is_abelian());
            assert!(proj.is_morphism());
        }
    }

    #[test]
    fn associativization_examples() {
        let n2 = fixtures::n2(q());
        let (asn, _) = n2.associativization();
        assert!(asn.same_structure(&n2), "zero bracket: nothing to kill");
        let (as_m2, _) = fixtures::t_m2(q()).associativization();
        assert_eq!(as_m2.dim, 0, "commutators generate all of M2");
        let a3 = fixtures::abelian(q(), 3);
        assert!(a3.associativization().0.same_structure(&a3));
        for a in fixtures::corpus() {
            assert!(a.associativization().0.bracket.is_zero());
        }
    }

    #[test]
    fn poisson_quotient_examples() {
        let t = fixtures::t_m2(q());
        assert!(t.poisson_quotient().0.same_structure(&t));
        let a2 = fixtures::abelian(q(), 2);
        assert!(a2.poisson_quotient().0.same_structure(&a2));
        let bp = fixtures::bracket_pair(q());
        let (pq, _) = bp.poisson_quotient();
        assert_eq!(pq.dim, 1);
    }

    #[test]
    fn poisson_quotient_is_antisymmetric_and_jacobi() {
        for a in fixtures::corpus() {
            let (p, proj) = a.poisson_quotient();
            assert!(proj.is_morphism());
            let f = p.field;
            for i in 0..p.dim {
                for j in 0..p.dim {
                    let sym: Vec<Scalar> = p
                        .bracket
                        .on_basis(i, j)
                        .iter()
                        .zip(p.bracket.on_basis(j, i))
                        .map(|(x, y)| f.add(x, y))
                        .collect();
                    assert!(sym.iter().all(|v| f.is_zero(v)));
                    for k in 0..p.dim {
                        let t1 = p.brk(&p.basis_element(i), p.bracket.on_basis(j, k));
                        let t2 = p.brk(&p.basis_element(j), &p.brk(&p.basis_element(k), &p.basis_element(i)));
                        let t3 = p.brk(&p.basis_element(k), p.bracket.on_basis(i, j));
                        let jac: Vec<Scalar> = t1
                            .iter()
                            .zip(&t2)
                            .zip(&t3)
                            .map(|((x, y), z)| f.add(&f.add(x, y), z))
                            .collect();
                        assert!(jac.iter().all(|v| f.is_zero(v)));
                    }
                }
            }
        }
    }

    #[test]
    fn direct_sum_examples() {
        let a = fixtures::t_m2(q());
        let zero = FiniteAwb::abelian(q(), 0, "zero");
        let (s, _, _) = a.direct_sum(&zero).unwrap();
        assert!(s.same_structure(&a));

        let (s, injs, projs) = a.direct_sum(&a).unwrap();
        assert_eq!(s.dim, 8);
        assert!(s.is_perfect());
        for m in injs.iter().chain(projs.iter()) {
            assert!(m.is_morphism());
        }
        // each summand embeds as a two-sided ideal
        assert!(s.is_two_sided_ideal(&injs[0].image()));
        assert!(s.is_two_sided_ideal(&injs[1].image()));

        let (s2, _, _) = fixtures::abelian(q(), 1)
            .direct_sum(&fixtures::abelian(q(), 2))
            .unwrap();
        assert!(s2.is_abelian());

        let gf5 = FieldSpec::prime_field(5).unwrap();
        assert!(a.direct_sum(&fixtures::t_m2(gf5)).is_err());
    }

    #[test]
    fn morphism_checks() {
        let a = fixtures::t_m2(q());
        assert!(AwbMorphism::identity(&a).is_morphism());
        assert!(AwbMorphism::zero(&a, &fixtures::n2(q())).is_morphism());
        let n2 = fixtures::n2(q());
        let span_y = n2.ideal_closure(&[n2.basis_element(1)]);
        let (_, proj) = n2.quotient(&span_y).unwrap();
        assert!(proj.is_morphism());
        // a non-morphism is caught
        let bad = AwbMorphism::new(a.clone(), a.clone(), {
            let mut m = Matrix::identity(q(), 4);
            m.set(0, 1, q().one());
            m
        });
        assert!(!bad.is_morphism());
    }

    #[test]
    fn subalgebra_on_ideal_basis() {
        let sum = fixtures::t_m2_sum(q());
        let first: Vec<Vec<Scalar>> = (0..4).map(|i| sum.basis_element(i)).collect();
        let s = Subspace::span(q(), 8, &first);
        let (sub, incl) = sum.subalgebra_on(&s, "first_factor").unwrap();
        assert_eq!(sub.dim, 4);
        assert!(sub.same_structure(&fixtures::t_m2(q())));
        assert!(incl.is_morphism());
        // a subspace that is not closed is rejected
        let bad = Subspace::span(q(), 2, &[fixtures::n2(q()).basis_element(0)]);
        assert!(fixtures::n2(q()).subalgebra_on(&bad, "bad").is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn element(dim: usize) -> impl Strategy<Value = Vec<i64>> {
            proptest::collection::vec(-3i64..4, dim)
        }

        proptest! {
            #[test]
            fn bracket_identity_on_random_elements(
                xs in element(4), ys in element(4), zs in element(4)
            ) {
                let a = fixtures::t_m2(q());
                let f = a.field;
                let x: Vec<Scalar> = xs.iter().map(|&v| f.from_i64(v)).collect();
                let y: Vec<Scalar> = ys.iter().map(|&v| f.from_i64(v)).collect();
                let z: Vec<Scalar> = zs.iter().map(|&v| f.from_i64(v)).collect();
                let left = a.brk(&a.mul(&x, &y), &z);
                let t1 = a.mul(&a.brk(&x, &z), &y);
                let t2 = a.mul(&x, &a.brk(&y, &z));
                let right: Vec<Scalar> = t1.iter().zip(&t2).map(|(u, v)| f.add(u, v)).collect();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn ideal_closure_is_idempotent(seed in element(2)) {
                let a = fixtures::n2(q());
                let f = a.field;
                let v: Vec<Scalar> = seed.iter().map(|&s| f.from_i64(s)).collect();
                let s1 = a.ideal_closure(&[v]);
                let s2 = a.ideal_closure(&s1.basis_vectors().collect::<Vec<_>>());
                prop_assert_eq!(s1, s2);
            }
        }
    }
}
