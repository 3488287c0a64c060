//! Actions of one algebra with bracket on another, semidirect products, and
//! the compatibility conditions for mutual actions.
//!
//! An action is four bilinear maps (two "dot" maps twisting the product, two
//! "star" maps twisting the bracket) subject to twelve coherence equations.
//! The equations live in a data table indexed the way they are usually
//! displayed (six rows, dot column and star column), so validation witnesses
//! cite `action (row, col)`.

use crate::algebra::{FiniteAwb, Tensor3, ValidationReport};
use crate::equations::{Equation, Expr, System};
use crate::error::AwbError;
use crate::field::Scalar;
use crate::linalg::{Matrix, Subspace};

/// An action of `actor` on `actee`:
/// `ldot(a, m)`, `rdot(m, a)` twist the product; `lstar(a, m)`, `rstar(m, a)`
/// twist the bracket.
#[derive(Clone)]
pub struct AwbAction {
    pub actor: FiniteAwb,
    pub actee: FiniteAwb,
    /// shape (dim actor, dim actee, dim actee)
    pub ldot: Tensor3,
    /// shape (dim actee, dim actor, dim actee)
    pub rdot: Tensor3,
    /// shape (dim actor, dim actee, dim actee)
    pub lstar: Tensor3,
    /// shape (dim actee, dim actor, dim actee)
    pub rstar: Tensor3,
}

impl AwbAction {
    pub fn new(
        actor: FiniteAwb,
        actee: FiniteAwb,
        ldot: Tensor3,
        rdot: Tensor3,
        lstar: Tensor3,
        rstar: Tensor3,
    ) -> Self {
        let (a, m) = (actor.dim, actee.dim);
        assert_eq!(actor.field, actee.field, "action field mismatch");
        assert_eq!((ldot.d0, ldot.d1, ldot.d2), (a, m, m), "ldot shape");
        assert_eq!((rdot.d0, rdot.d1, rdot.d2), (m, a, m), "rdot shape");
        assert_eq!((lstar.d0, lstar.d1, lstar.d2), (a, m, m), "lstar shape");
        assert_eq!((rstar.d0, rstar.d1, rstar.d2), (m, a, m), "rstar shape");
        AwbAction {
            actor,
            actee,
            ldot,
            rdot,
            lstar,
            rstar,
        }
    }

    /// All four maps zero. Always valid.
    pub fn trivial(actor: &FiniteAwb, actee: &FiniteAwb) -> Result<Self, AwbError> {
        if actor.field != actee.field {
            return Err(AwbError::FieldMismatch(actor.field, actee.field));
        }
        let f = actor.field;
        let (a, m) = (actor.dim, actee.dim);
        Ok(AwbAction::new(
            actor.clone(),
            actee.clone(),
            Tensor3::zero(f, a, m, m),
            Tensor3::zero(f, m, a, m),
            Tensor3::zero(f, a, m, m),
            Tensor3::zero(f, m, a, m),
        ))
    }

    /// The action of an algebra on itself by its own operations.
    pub fn self_action(a: &FiniteAwb) -> Self {
        AwbAction::new(
            a.clone(),
            a.clone(),
            a.product.clone(),
            a.product.clone(),
            a.bracket.clone(),
            a.bracket.clone(),
        )
    }

    pub fn is_trivial(&self) -> bool {
        self.ldot.is_zero() && self.rdot.is_zero() && self.lstar.is_zero() && self.rstar.is_zero()
    }

    pub fn same_tensors(&self, other: &AwbAction) -> bool {
        self.ldot == other.ldot
            && self.rdot == other.rdot
            && self.lstar == other.lstar
            && self.rstar == other.rstar
    }

    pub fn validate(&self) -> ValidationReport {
        let (sys, eqs) = action_equation_table(self);
        ValidationReport::new(sys.check_all(&eqs))
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Equation ids that hold identically (both sides are the zero
    /// expression) when the actee is abelian: the last three display rows.
    pub fn identically_satisfied_ids(&self) -> Vec<String> {
        if self.actee.is_abelian() {
            (4..=6)
                .flat_map(|r| [format!("action ({r},1)"), format!("action ({r},2)")])
                .collect()
        } else {
            Vec::new()
        }
    }
}

/// The twelve action equations as a checkable table.
pub fn action_equation_table(act: &AwbAction) -> (System, Vec<Equation>) {
    let mut sys = System::new(act.actor.field);
    let sa = sys.add_space("actor", act.actor.dim);
    let sm = sys.add_space("actee", act.actee.dim);
    let mul_a = sys.add_bilinear("mul_a", (sa, sa), sa, act.actor.product.clone());
    let brk_a = sys.add_bilinear("brk_a", (sa, sa), sa, act.actor.bracket.clone());
    let mul_m = sys.add_bilinear("mul_m", (sm, sm), sm, act.actee.product.clone());
    let brk_m = sys.add_bilinear("brk_m", (sm, sm), sm, act.actee.bracket.clone());
    let ld = sys.add_bilinear("ldot", (sa, sm), sm, act.ldot.clone());
    let rd = sys.add_bilinear("rdot", (sm, sa), sm, act.rdot.clone());
    let ls = sys.add_bilinear("lstar", (sa, sm), sm, act.lstar.clone());
    let rs = sys.add_bilinear("rstar", (sm, sa), sm, act.rstar.clone());

    let v = Expr::var;
    let b = Expr::bil;
    // variables: rows 1-3 use (a1, a2, m); rows 4-6 use (a, m1, m2)
    let aam = vec![sa, sa, sm];
    let amm = vec![sa, sm, sm];
    let eqs = vec![
        Equation {
            id: "action (1,1)".into(),
            vars: aam.clone(),
            lhs: vec![b(ld, b(mul_a, v(0), v(1)), v(2))],
            rhs: vec![b(ld, v(0), b(ld, v(1), v(2)))],
        },
        Equation {
            id: "action (1,2)".into(),
            vars: aam.clone(),
            lhs: vec![b(rs, b(ld, v(0), v(2)), v(1))],
            rhs: vec![b(ld, v(0), b(rs, v(2), v(1))), b(ld, b(brk_a, v(0), v(1)), v(2))],
        },
        Equation {
            id: "action (2,1)".into(),
            vars: aam.clone(),
            lhs: vec![b(rd, v(2), b(mul_a, v(0), v(1)))],
            rhs: vec![b(rd, b(rd, v(2), v(0)), v(1))],
        },
        Equation {
            id: "action (2,2)".into(),
            vars: aam.clone(),
            lhs: vec![b(rs, b(rd, v(2), v(0)), v(1))],
            rhs: vec![b(rd, b(rs, v(2), v(1)), v(0)), b(rd, v(2), b(brk_a, v(0), v(1)))],
        },
        Equation {
            id: "action (3,1)".into(),
            vars: aam.clone(),
            lhs: vec![b(rd, b(ld, v(0), v(2)), v(1))],
            rhs: vec![b(ld, v(0), b(rd, v(2), v(1)))],
        },
        Equation {
            id: "action (3,2)".into(),
            vars: aam,
            lhs: vec![b(ls, b(mul_a, v(0), v(1)), v(2))],
            rhs: vec![b(ld, v(0), b(ls, v(1), v(2))), b(rd, b(ls, v(0), v(2)), v(1))],
        },
        Equation {
            id: "action (4,1)".into(),
            vars: amm.clone(),
            lhs: vec![b(rd, b(mul_m, v(1), v(2)), v(0))],
            rhs: vec![b(mul_m, v(1), b(rd, v(2), v(0)))],
        },
        Equation {
            id: "action (4,2)".into(),
            vars: amm.clone(),
            lhs: vec![b(brk_m, b(rd, v(1), v(0)), v(2))],
            rhs: vec![b(mul_m, v(1), b(ls, v(0), v(2))), b(rd, b(brk_m, v(1), v(2)), v(0))],
        },
        Equation {
            id: "action (5,1)".into(),
            vars: amm.clone(),
            lhs: vec![b(ld, v(0), b(mul_m, v(1), v(2)))],
            rhs: vec![b(mul_m, b(ld, v(0), v(1)), v(2))],
        },
        Equation {
            id: "action (5,2)".into(),
            vars: amm.clone(),
            lhs: vec![b(brk_m, b(ld, v(0), v(1)), v(2))],
            rhs: vec![b(ld, v(0), b(brk_m, v(1), v(2))), b(mul_m, b(ls, v(0), v(2)), v(1))],
        },
        Equation {
            id: "action (6,1)".into(),
            vars: amm.clone(),
            lhs: vec![b(mul_m, b(rd, v(1), v(0)), v(2))],
            rhs: vec![b(mul_m, v(1), b(ld, v(0), v(2)))],
        },
        Equation {
            id: "action (6,2)".into(),
            vars: amm,
            lhs: vec![b(rs, b(mul_m, v(1), v(2)), v(0))],
            rhs: vec![b(mul_m, v(1), b(rs, v(2), v(0))), b(mul_m, b(rs, v(1), v(0)), v(2))],
        },
    ];
    (sys, eqs)
}

/// Free-function alias used in reports.
pub fn validate_action(act: &AwbAction) -> ValidationReport {
    act.validate()
}

/// The action of a subalgebra on a two-sided ideal inside an enclosing
/// algebra, read off from the enclosing operations. Returns the action and
/// the inclusion morphisms realizing the actor and actee.
pub fn action_from_ideal(
    b: &FiniteAwb,
    a_sub: &Subspace,
    m_sub: &Subspace,
) -> Result<(AwbAction, AwbMorphismPair), AwbError> {
    if !b.is_subalgebra(a_sub) {
        return Err(AwbError::NotASubalgebra("actor subspace".into()));
    }
    if !b.is_two_sided_ideal(m_sub) {
        return Err(AwbError::NotAnIdeal("actee subspace".into()));
    }
    let (actor, incl_a) = b.subalgebra_on(a_sub, &format!("{}<sub>", b.name))?;
    let (actee, incl_m) = b.subalgebra_on(m_sub, &format!("{}<ideal>", b.name))?;
    let f = b.field;
    let m_coords = |v: &[Scalar]| -> Vec<Scalar> {
        m_sub.pivots().iter().map(|&p| v[p].clone()).collect()
    };
    let abasis: Vec<Vec<Scalar>> = a_sub.basis_vectors().collect();
    let mbasis: Vec<Vec<Scalar>> = m_sub.basis_vectors().collect();
    let (da, dm) = (actor.dim, actee.dim);
    let mut ldot = Tensor3::zero(f, da, dm, dm);
    let mut rdot = Tensor3::zero(f, dm, da, dm);
    let mut lstar = Tensor3::zero(f, da, dm, dm);
    let mut rstar = Tensor3::zero(f, dm, da, dm);
    for (i, av) in abasis.iter().enumerate() {
        for (j, mv) in mbasis.iter().enumerate() {
            for (k, c) in m_coords(&b.mul(av, mv)).into_iter().enumerate() {
                ldot.set(i, j, k, c);
            }
            for (k, c) in m_coords(&b.mul(mv, av)).into_iter().enumerate() {
                rdot.set(j, i, k, c);
            }
            for (k, c) in m_coords(&b.brk(av, mv)).into_iter().enumerate() {
                lstar.set(i, j, k, c);
            }
            for (k, c) in m_coords(&b.brk(mv, av)).into_iter().enumerate() {
                rstar.set(j, i, k, c);
            }
        }
    }
    let act = AwbAction::new(actor, actee, ldot, rdot, lstar, rstar);
    Ok((act, AwbMorphismPair { actor_inclusion: incl_a, actee_inclusion: incl_m }))
}

/// The two inclusions produced by [`action_from_ideal`].
pub struct AwbMorphismPair {
    pub actor_inclusion: crate::algebra::AwbMorphism,
    pub actee_inclusion: crate::algebra::AwbMorphism,
}

/// Action induced by a homomorphism `f : A -> M`: act through the image.
pub fn action_from_hom(f: &crate::algebra::AwbMorphism) -> Result<AwbAction, AwbError> {
    f.check().into_result("action_from_hom morphism")?;
    let (a, m) = (f.source.clone(), f.target.clone());
    let fld = a.field;
    let (da, dm) = (a.dim, m.dim);
    let images: Vec<Vec<Scalar>> = (0..da).map(|i| f.apply(&a.basis_element(i))).collect();
    let mut ldot = Tensor3::zero(fld, da, dm, dm);
    let mut rdot = Tensor3::zero(fld, dm, da, dm);
    let mut lstar = Tensor3::zero(fld, da, dm, dm);
    let mut rstar = Tensor3::zero(fld, dm, da, dm);
    for i in 0..da {
        for j in 0..dm {
            let e = m.basis_element(j);
            for (k, c) in m.mul(&images[i], &e).into_iter().enumerate() {
                ldot.set(i, j, k, c);
            }
            for (k, c) in m.mul(&e, &images[i]).into_iter().enumerate() {
                rdot.set(j, i, k, c);
            }
            for (k, c) in m.brk(&images[i], &e).into_iter().enumerate() {
                lstar.set(i, j, k, c);
            }
            for (k, c) in m.brk(&e, &images[i]).into_iter().enumerate() {
                rstar.set(j, i, k, c);
            }
        }
    }
    Ok(AwbAction::new(a, m, ldot, rdot, lstar, rstar))
}

/// Action of `A` on `M` through a surjection `mu : M -> A` with central
/// kernel: choose a linear section, act by preimages. The result does not
/// depend on the section; that independence is re-verified with a second,
/// kernel-shifted section.
pub fn action_from_central_surjection(
    mu: &crate::algebra::AwbMorphism,
) -> Result<AwbAction, AwbError> {
    mu.check().into_result("central surjection")?;
    if !mu.is_surjective() {
        return Err(AwbError::NotSurjective);
    }
    let kernel = mu.kernel();
    if !mu.source.center().contains_subspace(&kernel) {
        return Err(AwbError::KernelNotCentral);
    }
    let section = mu
        .matrix
        .right_inverse()
        .ok_or(AwbError::NotSurjective)?;
    let build = |sec: &Matrix| -> AwbAction {
        let (a, m) = (mu.target.clone(), mu.source.clone());
        let fld = a.field;
        let (da, dm) = (a.dim, m.dim);
        let lifts: Vec<Vec<Scalar>> = (0..da).map(|i| sec.apply(&a.basis_element(i))).collect();
        let mut ldot = Tensor3::zero(fld, da, dm, dm);
        let mut rdot = Tensor3::zero(fld, dm, da, dm);
        let mut lstar = Tensor3::zero(fld, da, dm, dm);
        let mut rstar = Tensor3::zero(fld, dm, da, dm);
        for i in 0..da {
            for j in 0..dm {
                let e = m.basis_element(j);
                for (k, c) in m.mul(&lifts[i], &e).into_iter().enumerate() {
                    ldot.set(i, j, k, c);
                }
                for (k, c) in m.mul(&e, &lifts[i]).into_iter().enumerate() {
                    rdot.set(j, i, k, c);
                }
                for (k, c) in m.brk(&lifts[i], &e).into_iter().enumerate() {
                    lstar.set(i, j, k, c);
                }
                for (k, c) in m.brk(&e, &lifts[i]).into_iter().enumerate() {
                    rstar.set(j, i, k, c);
                }
            }
        }
        AwbAction::new(a, m, ldot, rdot, lstar, rstar)
    };
    let act = build(&section);
    if kernel.dim() > 0 {
        // shift each lift by a kernel vector; centrality makes this invisible
        let f = mu.source.field;
        let kvecs: Vec<Vec<Scalar>> = kernel.basis_vectors().collect();
        let mut shifted = section.clone();
        for j in 0..shifted.cols {
            let kv = &kvecs[j % kvecs.len()];
            for i in 0..shifted.rows {
                let v = f.add(shifted.at(i, j), &kv[i]);
                shifted.set(i, j, v);
            }
        }
        let act2 = build(&shifted);
        if !act.same_tensors(&act2) {
            return Err(AwbError::TheoremViolation {
                context: "central surjection action depends on the section".into(),
            });
        }
    }
    Ok(act)
}

/// The semidirect product `M x| A` of an action, with its canonical maps.
pub struct Semidirect {
    pub algebra: FiniteAwb,
    /// `m -> (m, 0)`
    pub inclusion: crate::algebra::AwbMorphism,
    /// `(m, a) -> a`
    pub projection: crate::algebra::AwbMorphism,
    /// `a -> (0, a)`
    pub section: crate::algebra::AwbMorphism,
}

/// Builds `M x| A`: on `M (+) A`, the product is
/// `(m1,a1)(m2,a2) = (m1 m2 + ldot(a1,m2) + rdot(m1,a2), a1 a2)` and the
/// bracket is the same shape through the star maps. Fails if the result
/// violates the algebra axioms, which would mean the action was not one.
pub fn semidirect(act: &AwbAction) -> Result<Semidirect, AwbError> {
    let f = act.actor.field;
    let (dm, da) = (act.actee.dim, act.actor.dim);
    let n = dm + da;
    let twist = |op_m: &Tensor3, op_a: &Tensor3, l: &Tensor3, r: &Tensor3| {
        Tensor3::from_fn(f, n, n, n, |i, j, k| {
            if i < dm && j < dm {
                if k < dm {
                    op_m.at(i, j, k).clone()
                } else {
                    f.zero()
                }
            } else if i < dm {
                // (m, 0)(0, a) = (rdot(m, a), 0)
                if k < dm {
                    r.at(i, j - dm, k).clone()
                } else {
                    f.zero()
                }
            } else if j < dm {
                // (0, a)(m, 0) = (ldot(a, m), 0)
                if k < dm {
                    l.at(i - dm, j, k).clone()
                } else {
                    f.zero()
                }
            } else if k >= dm {
                op_a.at(i - dm, j - dm, k - dm).clone()
            } else {
                f.zero()
            }
        })
    };
    let product = twist(
        &act.actee.product,
        &act.actor.product,
        &act.ldot,
        &act.rdot,
    );
    let bracket = twist(
        &act.actee.bracket,
        &act.actor.bracket,
        &act.lstar,
        &act.rstar,
    );
    let name = format!("{} x| {}", act.actee.name, act.actor.name);
    let algebra = FiniteAwb::new(f, n, product, bracket, &name)?;
    let inclusion = crate::algebra::AwbMorphism::new(
        act.actee.clone(),
        algebra.clone(),
        Matrix::from_fn(f, n, dm, |i, j| if i == j { f.one() } else { f.zero() }),
    );
    let projection = crate::algebra::AwbMorphism::new(
        algebra.clone(),
        act.actor.clone(),
        Matrix::from_fn(f, da, n, |i, j| {
            if j == i + dm {
                f.one()
            } else {
                f.zero()
            }
        }),
    );
    let section = crate::algebra::AwbMorphism::new(
        act.actor.clone(),
        algebra.clone(),
        Matrix::from_fn(f, n, da, |i, j| {
            if i == j + dm {
                f.one()
            } else {
                f.zero()
            }
        }),
    );
    Ok(Semidirect {
        algebra,
        inclusion,
        projection,
        section,
    })
}

/// Recovers the action from a split extension
/// `0 -> M -i-> B -pi-> A -> 0` with `pi . s = id`.
pub fn action_from_split_extension(
    b: &FiniteAwb,
    i: &crate::algebra::AwbMorphism,
    pi: &crate::algebra::AwbMorphism,
    s: &crate::algebra::AwbMorphism,
) -> Result<AwbAction, AwbError> {
    i.check().into_result("extension inclusion")?;
    pi.check().into_result("extension projection")?;
    s.check().into_result("extension section")?;
    if !i.is_injective() {
        return Err(AwbError::NotExact("inclusion is not injective".into()));
    }
    if pi.kernel() != i.image() {
        return Err(AwbError::NotExact("ker(pi) != im(i)".into()));
    }
    let compose = s.then(pi);
    if compose.matrix != Matrix::identity(b.field, pi.target.dim) {
        return Err(AwbError::NotExact("pi . s != id".into()));
    }
    let (a, m) = (pi.target.clone(), i.source.clone());
    let f = b.field;
    let (da, dm) = (a.dim, m.dim);
    let pull = |w: &[Scalar]| -> Result<Vec<Scalar>, AwbError> {
        i.matrix.solve(w).ok_or_else(|| {
            AwbError::NotExact("operation value leaves the embedded ideal".into())
        })
    };
    let mut ldot = Tensor3::zero(f, da, dm, dm);
    let mut rdot = Tensor3::zero(f, dm, da, dm);
    let mut lstar = Tensor3::zero(f, da, dm, dm);
    let mut rstar = Tensor3::zero(f, dm, da, dm);
    for x in 0..da {
        let sa = s.apply(&a.basis_element(x));
        for y in 0..dm {
            let im = i.apply(&m.basis_element(y));
            for (k, c) in pull(&b.mul(&sa, &im))?.into_iter().enumerate() {
                ldot.set(x, y, k, c);
            }
            for (k, c) in pull(&b.mul(&im, &sa))?.into_iter().enumerate() {
                rdot.set(y, x, k, c);
            }
            for (k, c) in pull(&b.brk(&sa, &im))?.into_iter().enumerate() {
                lstar.set(x, y, k, c);
            }
            for (k, c) in pull(&b.brk(&im, &sa))?.into_iter().enumerate() {
                rstar.set(y, x, k, c);
            }
        }
    }
    Ok(AwbAction::new(a, m, ldot, rdot, lstar, rstar))
}

/// Restricts an action along a morphism into the actor.
pub fn pullback_action(
    f: &crate::algebra::AwbMorphism,
    act: &AwbAction,
) -> Result<AwbAction, AwbError> {
    assert_eq!(f.target.dim, act.actor.dim, "pullback target mismatch");
    f.check().into_result("pullback morphism")?;
    let fld = act.actor.field;
    let (db, dm) = (f.source.dim, act.actee.dim);
    let images: Vec<Vec<Scalar>> = (0..db)
        .map(|i| f.apply(&f.source.basis_element(i)))
        .collect();
    let mut ldot = Tensor3::zero(fld, db, dm, dm);
    let mut rdot = Tensor3::zero(fld, dm, db, dm);
    let mut lstar = Tensor3::zero(fld, db, dm, dm);
    let mut rstar = Tensor3::zero(fld, dm, db, dm);
    for i in 0..db {
        for j in 0..dm {
            let e = act.actee.basis_element(j);
            for (k, c) in act.ldot.eval(&images[i], &e).into_iter().enumerate() {
                ldot.set(i, j, k, c);
            }
            for (k, c) in act.rdot.eval(&e, &images[i]).into_iter().enumerate() {
                rdot.set(j, i, k, c);
            }
            for (k, c) in act.lstar.eval(&images[i], &e).into_iter().enumerate() {
                lstar.set(i, j, k, c);
            }
            for (k, c) in act.rstar.eval(&e, &images[i]).into_iter().enumerate() {
                rstar.set(j, i, k, c);
            }
        }
    }
    Ok(AwbAction::new(
        f.source.clone(),
        act.actee.clone(),
        ldot,
        rdot,
        lstar,
        rstar,
    ))
}

/// How an associative-algebra action lifts to algebras with bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftMode {
    /// Zero brackets and zero star maps.
    TrivialBracket,
    /// Commutator brackets; star maps are dot-commutators.
    Tautological,
}

/// Lifts an associative action (`ldot`, `rdot` satisfying the six dot
/// equations) through the trivial-bracket or tautological embedding.
pub fn lift_associative_action(
    field: crate::field::FieldSpec,
    actor_product: Tensor3,
    actee_product: Tensor3,
    ldot: Tensor3,
    rdot: Tensor3,
    mode: LiftMode,
) -> Result<AwbAction, AwbError> {
    let (da, dm) = (actor_product.d0, actee_product.d0);
    let (actor, actee, lstar, rstar) = match mode {
        LiftMode::TrivialBracket => {
            let actor = FiniteAwb::with_trivial_bracket(field, da, actor_product, "I(actor)")?;
            let actee = FiniteAwb::with_trivial_bracket(field, dm, actee_product, "I(actee)")?;
            (
                actor,
                actee,
                Tensor3::zero(field, da, dm, dm),
                Tensor3::zero(field, dm, da, dm),
            )
        }
        LiftMode::Tautological => {
            let actor = FiniteAwb::tautological(field, da, actor_product, "T(actor)")?;
            let actee = FiniteAwb::tautological(field, dm, actee_product, "T(actee)")?;
            let lstar = Tensor3::from_fn(field, da, dm, dm, |i, j, k| {
                field.sub(ldot.at(i, j, k), rdot.at(j, i, k))
            });
            let rstar = Tensor3::from_fn(field, dm, da, dm, |i, j, k| {
                field.sub(rdot.at(i, j, k), ldot.at(j, i, k))
            });
            (actor, actee, lstar, rstar)
        }
    };
    let act = AwbAction::new(actor, actee, ldot, rdot, lstar, rstar);
    act.validate().into_result("lifted associative action")?;
    Ok(act)
}

/// A compatible pair of mutual actions, the input data of the non-abelian
/// tensor product.
#[derive(Clone)]
pub struct MutualActions {
    /// action of M on N
    pub m_on_n: AwbAction,
    /// action of N on M
    pub n_on_m: AwbAction,
}

impl MutualActions {
    pub fn new(m_on_n: AwbAction, n_on_m: AwbAction) -> Self {
        assert_eq!(m_on_n.actor.dim, n_on_m.actee.dim, "M dimension mismatch");
        assert_eq!(m_on_n.actee.dim, n_on_m.actor.dim, "N dimension mismatch");
        MutualActions { m_on_n, n_on_m }
    }

    pub fn m(&self) -> &FiniteAwb {
        &self.m_on_n.actor
    }

    pub fn n(&self) -> &FiniteAwb {
        &self.m_on_n.actee
    }

    /// Mutual trivial actions; always compatible.
    pub fn trivial(m: &FiniteAwb, n: &FiniteAwb) -> Result<Self, AwbError> {
        Ok(MutualActions::new(
            AwbAction::trivial(m, n)?,
            AwbAction::trivial(n, m)?,
        ))
    }

    /// Both actions of an algebra on itself by its operations.
    pub fn self_mutual(a: &FiniteAwb) -> Self {
        MutualActions::new(AwbAction::self_action(a), AwbAction::self_action(a))
    }

    /// Mutual actions of two two-sided ideals inside one algebra.
    pub fn from_ideals(
        b: &FiniteAwb,
        m_sub: &Subspace,
        n_sub: &Subspace,
    ) -> Result<Self, AwbError> {
        let (m_on_n, _) = action_from_ideal(b, m_sub, n_sub)?;
        let (n_on_m, _) = action_from_ideal(b, n_sub, m_sub)?;
        Ok(MutualActions::new(m_on_n, n_on_m))
    }
}

/// The 32 compatibility equations (16 displayed plus the 16 with the roles
/// of M and N exchanged) as a checkable table.
pub fn compatibility_table(mutual: &MutualActions) -> (System, Vec<Equation>) {
    let m = mutual.m();
    let n = mutual.n();
    let mut sys = System::new(m.field);
    let sm = sys.add_space("M", m.dim);
    let sn = sys.add_space("N", n.dim);
    let mul_m = sys.add_bilinear("mul_m", (sm, sm), sm, m.product.clone());
    let brk_m = sys.add_bilinear("brk_m", (sm, sm), sm, m.bracket.clone());
    let mul_n = sys.add_bilinear("mul_n", (sn, sn), sn, n.product.clone());
    let brk_n = sys.add_bilinear("brk_n", (sn, sn), sn, n.bracket.clone());
    // action of M on N
    let ld_mn = sys.add_bilinear("ldot_mn", (sm, sn), sn, mutual.m_on_n.ldot.clone());
    let rd_nm = sys.add_bilinear("rdot_nm", (sn, sm), sn, mutual.m_on_n.rdot.clone());
    let ls_mn = sys.add_bilinear("lstar_mn", (sm, sn), sn, mutual.m_on_n.lstar.clone());
    let rs_nm = sys.add_bilinear("rstar_nm", (sn, sm), sn, mutual.m_on_n.rstar.clone());
    // action of N on M
    let ld_nm = sys.add_bilinear("ldot_nm", (sn, sm), sm, mutual.n_on_m.ldot.clone());
    let rd_mn = sys.add_bilinear("rdot_mn", (sm, sn), sm, mutual.n_on_m.rdot.clone());
    let ls_nm = sys.add_bilinear("lstar_nm", (sn, sm), sm, mutual.n_on_m.lstar.clone());
    let rs_mn = sys.add_bilinear("rstar_mn", (sm, sn), sm, mutual.n_on_m.rstar.clone());

    let v = Expr::var;
    let b = Expr::bil;
    // rows 1-4: vars (m, m', n'); rows 5-8: vars (m, n, n')
    let mmn = vec![sm, sm, sn];
    let mnn = vec![sm, sn, sn];
    let mut eqs = vec![
        Equation {
            id: "compat (1,1)".into(),
            vars: mmn.clone(),
            lhs: vec![b(rd_mn, v(0), b(ld_mn, v(1), v(2)))],
            rhs: vec![b(mul_m, v(0), b(rd_mn, v(1), v(2)))],
        },
        Equation {
            id: "compat (1,2)".into(),
            vars: mmn.clone(),
            lhs: vec![b(rd_mn, v(0), b(rd_nm, v(2), v(1)))],
            rhs: vec![b(mul_m, v(0), b(ld_nm, v(2), v(1)))],
        },
        Equation {
            id: "compat (2,1)".into(),
            vars: mmn.clone(),
            lhs: vec![b(rd_mn, v(0), b(ls_mn, v(1), v(2)))],
            rhs: vec![b(mul_m, v(0), b(rs_mn, v(1), v(2)))],
        },
        Equation {
            id: "compat (2,2)".into(),
            vars: mmn.clone(),
            lhs: vec![b(rd_mn, v(0), b(rs_nm, v(2), v(1)))],
            rhs: vec![b(mul_m, v(0), b(ls_nm, v(2), v(1)))],
        },
        Equation {
            id: "compat (3,1)".into(),
            vars: mmn.clone(),
            lhs: vec![b(rs_mn, v(0), b(ld_mn, v(1), v(2)))],
            rhs: vec![b(brk_m, v(0), b(rd_mn, v(1), v(2)))],
        },
        Equation {
            id: "compat (3,2)".into(),
            vars: mmn.clone(),
            lhs: vec![b(rs_mn, v(0), b(rd_nm, v(2), v(1)))],
            rhs: vec![b(brk_m, v(0), b(ld_nm, v(2), v(1)))],
        },
        Equation {
            id: "compat (4,1)".into(),
            vars: mmn.clone(),
            lhs: vec![b(rs_mn, v(0), b(ls_mn, v(1), v(2)))],
            rhs: vec![b(brk_m, v(0), b(rs_mn, v(1), v(2)))],
        },
        Equation {
            id: "compat (4,2)".into(),
            vars: mmn,
            lhs: vec![b(rs_mn, v(0), b(rs_nm, v(2), v(1)))],
            rhs: vec![b(brk_m, v(0), b(ls_nm, v(2), v(1)))],
        },
        Equation {
            id: "compat (5,1)".into(),
            vars: mnn.clone(),
            lhs: vec![b(ld_mn, b(rd_mn, v(0), v(1)), v(2))],
            rhs: vec![b(mul_n, b(ld_mn, v(0), v(1)), v(2))],
        },
        Equation {
            id: "compat (5,2)".into(),
            vars: mnn.clone(),
            lhs: vec![b(ld_mn, b(ld_nm, v(1), v(0)), v(2))],
            rhs: vec![b(mul_n, b(rd_nm, v(1), v(0)), v(2))],
        },
        Equation {
            id: "compat (6,1)".into(),
            vars: mnn.clone(),
            lhs: vec![b(ld_mn, b(rs_mn, v(0), v(1)), v(2))],
            rhs: vec![b(mul_n, b(ls_mn, v(0), v(1)), v(2))],
        },
        Equation {
            id: "compat (6,2)".into(),
            vars: mnn.clone(),
            lhs: vec![b(ld_mn, b(ls_nm, v(1), v(0)), v(2))],
            rhs: vec![b(mul_n, b(rs_nm, v(1), v(0)), v(2))],
        },
        Equation {
            id: "compat (7,1)".into(),
            vars: mnn.clone(),
            lhs: vec![b(ls_mn, b(rd_mn, v(0), v(1)), v(2))],
            rhs: vec![b(brk_n, b(ld_mn, v(0), v(1)), v(2))],
        },
        Equation {
            id: "compat (7,2)".into(),
            vars: mnn.clone(),
            lhs: vec![b(ls_mn, b(ld_nm, v(1), v(0)), v(2))],
            rhs: vec![b(brk_n, b(rd_nm, v(1), v(0)), v(2))],
        },
        Equation {
            id: "compat (8,1)".into(),
            vars: mnn.clone(),
            lhs: vec![b(ls_mn, b(rs_mn, v(0), v(1)), v(2))],
            rhs: vec![b(brk_n, b(ls_mn, v(0), v(1)), v(2))],
        },
        Equation {
            id: "compat (8,2)".into(),
            vars: mnn,
            lhs: vec![b(ls_mn, b(ls_nm, v(1), v(0)), v(2))],
            rhs: vec![b(brk_n, b(rs_nm, v(1), v(0)), v(2))],
        },
    ];
    // exchange the roles of M and N
    let swap = crate::equations::Swap {
        bilin_map: vec![
            mul_n, brk_n, mul_m, brk_m, // mul_m, brk_m, mul_n, brk_n
            ld_nm, rd_mn, ls_nm, rs_mn, // action of M on N -> action of N on M
            ld_mn, rd_nm, ls_mn, rs_nm, // and back
        ],
        space_map: vec![sn, sm],
    };
    let swapped: Vec<Equation> = eqs.iter().map(|eq| swap.apply(eq, " swapped")).collect();
    eqs.extend(swapped);
    (sys, eqs)
}

/// Evaluates all 32 compatibility equations over basis triples.
pub fn check_compatibility(mutual: &MutualActions) -> ValidationReport {
    let (sys, eqs) = compatibility_table(mutual);
    ValidationReport::new(sys.check_all(&eqs))
}
