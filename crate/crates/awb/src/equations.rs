//! A small formal-term language for multilinear identities.
//!
//! Action axioms, compatibility conditions, crossed-module laws and the
//! tensor-product relation families are all instances of the same pattern:
//! a list of equations between sums of terms, where each term composes
//! bilinear and linear operations applied to basis variables. Encoding them
//! as data (rather than hand-unrolled loops) keeps the checkers auditable
//! one-to-one against their source tables and lets witnesses cite the
//! equation they violate.

use crate::algebra::{Tensor3, Witness};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::SparseVec;

/// Index of a registered space.
pub type SpaceId = usize;
/// Index of a registered bilinear operation.
pub type BilinId = usize;
/// Index of a registered linear operation.
pub type LinId = usize;

pub struct BilinOp {
    pub name: String,
    pub args: (SpaceId, SpaceId),
    pub out: SpaceId,
    pub tensor: Tensor3,
}

pub struct LinOp {
    pub name: String,
    pub arg: SpaceId,
    pub out: SpaceId,
    pub matrix: crate::linalg::Matrix,
}

/// The evaluation context: spaces with dimensions plus the registered
/// operations between them.
pub struct System {
    pub field: FieldSpec,
    space_dims: Vec<usize>,
    space_names: Vec<String>,
    bilin: Vec<BilinOp>,
    lin: Vec<LinOp>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// A variable, by position in the equation's variable list.
    Var(usize),
    /// A bilinear operation applied to two subterms.
    Bil(BilinId, Box<Expr>, Box<Expr>),
    /// A linear map applied to a subterm.
    Lin(LinId, Box<Expr>),
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    pub fn bil(op: BilinId, a: Expr, b: Expr) -> Expr {
        Expr::Bil(op, Box::new(a), Box::new(b))
    }

    pub fn lin(op: LinId, a: Expr) -> Expr {
        Expr::Lin(op, Box::new(a))
    }
}

/// `lhs = rhs` (sums of terms), quantified over basis tuples of `vars`.
#[derive(Clone, Debug)]
pub struct Equation {
    pub id: String,
    pub vars: Vec<SpaceId>,
    pub lhs: Vec<Expr>,
    pub rhs: Vec<Expr>,
}

impl System {
    pub fn new(field: FieldSpec) -> Self {
        System {
            field,
            space_dims: Vec::new(),
            space_names: Vec::new(),
            bilin: Vec::new(),
            lin: Vec::new(),
        }
    }

    pub fn add_space(&mut self, name: &str, dim: usize) -> SpaceId {
        self.space_dims.push(dim);
        self.space_names.push(name.to_string());
        self.space_dims.len() - 1
    }

    pub fn add_bilinear(
        &mut self,
        name: &str,
        args: (SpaceId, SpaceId),
        out: SpaceId,
        tensor: Tensor3,
    ) -> BilinId {
        assert_eq!(tensor.d0, self.space_dims[args.0], "{name}: d0 mismatch");
        assert_eq!(tensor.d1, self.space_dims[args.1], "{name}: d1 mismatch");
        assert_eq!(tensor.d2, self.space_dims[out], "{name}: d2 mismatch");
        self.bilin.push(BilinOp {
            name: name.to_string(),
            args,
            out,
            tensor,
        });
        self.bilin.len() - 1
    }

    pub fn add_linear(
        &mut self,
        name: &str,
        arg: SpaceId,
        out: SpaceId,
        matrix: crate::linalg::Matrix,
    ) -> LinId {
        assert_eq!(matrix.cols, self.space_dims[arg], "{name}: arg mismatch");
        assert_eq!(matrix.rows, self.space_dims[out], "{name}: out mismatch");
        self.lin.push(LinOp {
            name: name.to_string(),
            arg,
            out,
            matrix,
        });
        self.lin.len() - 1
    }

    pub fn space_dim(&self, s: SpaceId) -> usize {
        self.space_dims[s]
    }

    pub fn bilinear_name(&self, op: BilinId) -> &str {
        &self.bilin[op].name
    }

    /// The space an expression evaluates into.
    pub fn space_of(&self, e: &Expr, vars: &[SpaceId]) -> SpaceId {
        match e {
            Expr::Var(i) => vars[*i],
            Expr::Bil(op, _, _) => self.bilin[*op].out,
            Expr::Lin(op, _) => self.lin[*op].out,
        }
    }

    fn eval(&self, e: &Expr, vars: &[SpaceId], assign: &[usize]) -> Vec<Scalar> {
        match e {
            Expr::Var(i) => {
                let dim = self.space_dims[vars[*i]];
                let mut v = vec![self.field.zero(); dim];
                v[assign[*i]] = self.field.one();
                v
            }
            Expr::Bil(op, a, b) => {
                let x = self.eval(a, vars, assign);
                let y = self.eval(b, vars, assign);
                self.bilin[*op].tensor.eval(&x, &y)
            }
            Expr::Lin(op, a) => {
                let x = self.eval(a, vars, assign);
                self.lin[*op].matrix.apply(&x)
            }
        }
    }

    /// Sum of terms; the terms must share one output space.
    pub fn eval_side(&self, side: &[Expr], vars: &[SpaceId], assign: &[usize]) -> Vec<Scalar> {
        let out = self.space_of(&side[0], vars);
        let f = self.field;
        let mut acc = vec![f.zero(); self.space_dims[out]];
        for term in side {
            debug_assert_eq!(self.space_of(term, vars), out, "mixed output spaces");
            let v = self.eval(term, vars, assign);
            for (a, b) in acc.iter_mut().zip(&v) {
                *a = f.add(a, b);
            }
        }
        acc
    }

    fn tuples<'a>(&'a self, vars: &'a [SpaceId]) -> impl Iterator<Item = Vec<usize>> + 'a {
        let dims: Vec<usize> = vars.iter().map(|&s| self.space_dims[s]).collect();
        let total: usize = dims.iter().product();
        let empty = dims.contains(&0);
        (0..if empty { 0 } else { total }).map(move |mut idx| {
            let mut t = vec![0usize; dims.len()];
            for (slot, &d) in t.iter_mut().zip(&dims).rev() {
                *slot = idx % d;
                idx /= d;
            }
            t
        })
    }

    /// Checks one equation on all basis tuples; returns a witness per
    /// violated tuple, in lexicographic tuple order.
    pub fn check_equation(&self, eq: &Equation) -> Vec<Witness> {
        let f = self.field;
        let mut witnesses = Vec::new();
        for assign in self.tuples(&eq.vars) {
            let left = self.eval_side(&eq.lhs, &eq.vars, &assign);
            let right = self.eval_side(&eq.rhs, &eq.vars, &assign);
            if left != right {
                witnesses.push(Witness {
                    law: eq.id.clone(),
                    indices: assign.clone(),
                    left: left.iter().map(|v| f.format(v)).collect(),
                    right: right.iter().map(|v| f.format(v)).collect(),
                });
            }
        }
        witnesses
    }

    pub fn check_all(&self, eqs: &[Equation]) -> Vec<Witness> {
        eqs.iter().flat_map(|eq| self.check_equation(eq)).collect()
    }

    fn eval_sparse(&self, e: &Expr, vars: &[SpaceId], assign: &[usize]) -> SparseVec {
        match e {
            Expr::Var(i) => vec![(assign[*i], self.field.one())],
            Expr::Bil(op, a, b) => {
                let x = self.eval_sparse(a, vars, assign);
                let y = self.eval_sparse(b, vars, assign);
                let f = self.field;
                let tensor = &self.bilin[*op].tensor;
                let mut out: SparseVec = Vec::new();
                for (i, xi) in &x {
                    for (j, yj) in &y {
                        let c = f.mul(xi, yj);
                        for (k, t) in tensor.on_basis(*i, *j).iter().enumerate() {
                            if !f.is_zero(t) {
                                out.push((k, f.mul(&c, t)));
                            }
                        }
                    }
                }
                combine_sparse(self.field, out)
            }
            Expr::Lin(op, a) => {
                let x = self.eval_sparse(a, vars, assign);
                let f = self.field;
                let m = &self.lin[*op].matrix;
                let mut out: SparseVec = Vec::new();
                for (j, xj) in &x {
                    for i in 0..m.rows {
                        let v = m.at(i, *j);
                        if !f.is_zero(v) {
                            out.push((i, f.mul(v, xj)));
                        }
                    }
                }
                combine_sparse(self.field, out)
            }
        }
    }

    /// `lhs - rhs` on every basis tuple, as sparse rows in the common output
    /// space. Used to assemble relation spans; evaluation stays sparse so
    /// large generator spaces never materialize dense zero vectors.
    pub fn difference_rows(&self, eq: &Equation) -> Vec<SparseVec> {
        let f = self.field;
        let mut rows = Vec::new();
        for assign in self.tuples(&eq.vars) {
            let mut row: SparseVec = Vec::new();
            for term in &eq.lhs {
                row.extend(self.eval_sparse(term, &eq.vars, &assign));
            }
            for term in &eq.rhs {
                for (i, v) in self.eval_sparse(term, &eq.vars, &assign) {
                    row.push((i, f.neg(&v)));
                }
            }
            let row = combine_sparse(f, row);
            if !row.is_empty() {
                rows.push(row);
            }
        }
        rows
    }
}

/// Sorts by index and sums entries sharing an index, dropping zeros.
pub fn combine_sparse(field: FieldSpec, mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((last, acc)) if *last == i => *acc = field.add(acc, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !field.is_zero(x));
    out
}

/// Rewrites an equation through permutations of its operations and spaces;
/// used to generate the role-exchanged halves of symmetric tables.
pub struct Swap {
    /// `bilin_map[i]` = the op standing in for op `i` after the exchange.
    pub bilin_map: Vec<BilinId>,
    /// Same for spaces (affects variable sorts).
    pub space_map: Vec<SpaceId>,
}

impl Swap {
    fn apply_expr(&self, e: &Expr) -> Expr {
        match e {
            Expr::Var(i) => Expr::Var(*i),
            Expr::Bil(op, a, b) => Expr::bil(
                self.bilin_map[*op],
                self.apply_expr(a),
                self.apply_expr(b),
            ),
            Expr::Lin(op, a) => Expr::lin(*op, self.apply_expr(a)),
        }
    }

    pub fn apply(&self, eq: &Equation, id_suffix: &str) -> Equation {
        Equation {
            id: format!("{}{}", eq.id, id_suffix),
            vars: eq.vars.iter().map(|&s| self.space_map[s]).collect(),
            lhs: eq.lhs.iter().map(|e| self.apply_expr(e)).collect(),
            rhs: eq.rhs.iter().map(|e| self.apply_expr(e)).collect(),
        }
    }
}

/// A canonical fingerprint of an equation up to side exchange and renaming of
/// variables (within the same sort). Two equations with equal fingerprints
/// impose the same relations.
pub fn fingerprint(sys: &System, eq: &Equation) -> String {
    fn serialize(e: &Expr, perm: &[usize], sys: &System) -> String {
        match e {
            Expr::Var(i) => format!("v{}", perm[*i]),
            Expr::Bil(op, a, b) => format!(
                "{}({},{})",
                sys.bilin[*op].name,
                serialize(a, perm, sys),
                serialize(b, perm, sys)
            ),
            Expr::Lin(op, a) => format!("{}({})", sys.lin[*op].name, serialize(a, perm, sys)),
        }
    }
    let n = eq.vars.len();
    let mut best: Option<String> = None;
    // all renamings of variables; the operation signatures pin the sorts, so
    // two serializations collide only when the equations really agree
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |perm| {
        let mut sides: Vec<String> = [&eq.lhs, &eq.rhs]
            .iter()
            .map(|side| {
                let mut terms: Vec<String> =
                    side.iter().map(|t| serialize(t, perm, sys)).collect();
                terms.sort();
                terms.join("+")
            })
            .collect();
        sides.sort();
        let s = sides.join(" = ");
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    });
    best.unwrap_or_default()
}

fn permutations(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permutations(perm, k + 1, visit);
        perm.swap(k, i);
    }
}
