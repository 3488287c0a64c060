//! Crossed modules and cat1 structures, with the explicit equivalence
//! between them.
//!
//! A crossed module is a morphism `mu : M -> A` plus an action of `A` on `M`
//! satisfying the equivariance laws (CM1) and the Peiffer-type laws (CM2).
//! A cat1 structure is an algebra `R` with a subalgebra `P` and two
//! retractions `s, t` whose kernels annihilate each other. The two encode
//! the same data; both directions of the translation are implemented and
//! produce certified isomorphism witnesses.

use crate::action::{semidirect, AwbAction, Semidirect};
use crate::algebra::{AwbMorphism, FiniteAwb, Tensor3, ValidationReport, Witness};
use crate::equations::{Equation, Expr, System};
use crate::error::AwbError;
use crate::field::Scalar;
use crate::linalg::{Matrix, Subspace};

/// A morphism `mu : M -> A` with an action of `A` on `M`.
#[derive(Clone)]
pub struct CrossedModule {
    /// `mu : actee -> actor` of the action.
    pub mu: AwbMorphism,
    /// Action of the target on the source.
    pub act: AwbAction,
}

impl CrossedModule {
    pub fn new(mu: AwbMorphism, act: AwbAction) -> Self {
        assert_eq!(mu.source.dim, act.actee.dim, "mu source must be the actee");
        assert_eq!(mu.target.dim, act.actor.dim, "mu target must be the actor");
        CrossedModule { mu, act }
    }

    pub fn module(&self) -> &FiniteAwb {
        &self.mu.source
    }

    pub fn base(&self) -> &FiniteAwb {
        &self.mu.target
    }

    /// An ideal inclusion `B -> A` with the operation action.
    pub fn from_ideal(a: &FiniteAwb, ideal: &Subspace) -> Result<Self, AwbError> {
        let full = Subspace::full(a.field, a.dim);
        let (act, pair) = crate::action::action_from_ideal(a, &full, ideal)?;
        // actor is A on its canonical (full) basis, identical to `a`
        let mut act = act;
        act.actor = a.clone();
        Ok(CrossedModule::new(pair.actee_inclusion, act))
    }

    /// The zero map on a representation.
    pub fn from_representation(act: AwbAction) -> Self {
        let mu = AwbMorphism::zero(&act.actee, &act.actor);
        CrossedModule::new(mu, act)
    }

    /// Full validation: `mu` is a morphism, the action is an action, and the
    /// CM1/CM2 laws hold.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = self.mu.check();
        rep = rep.merged(self.act.validate());
        let (sys, eqs) = crossed_module_table(self);
        rep.merged(ValidationReport::new(sys.check_all(&eqs)))
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }
}

/// The four CM1 equations (over pairs `(m, a)`) and four CM2 equalities
/// (over pairs `(m, m')`).
pub fn crossed_module_table(xm: &CrossedModule) -> (System, Vec<Equation>) {
    let m = xm.module();
    let a = xm.base();
    let mut sys = System::new(m.field);
    let sm = sys.add_space("M", m.dim);
    let sa = sys.add_space("A", a.dim);
    let mul_m = sys.add_bilinear("mul_m", (sm, sm), sm, m.product.clone());
    let brk_m = sys.add_bilinear("brk_m", (sm, sm), sm, m.bracket.clone());
    let mul_a = sys.add_bilinear("mul_a", (sa, sa), sa, a.product.clone());
    let brk_a = sys.add_bilinear("brk_a", (sa, sa), sa, a.bracket.clone());
    let ld = sys.add_bilinear("ldot", (sa, sm), sm, xm.act.ldot.clone());
    let rd = sys.add_bilinear("rdot", (sm, sa), sm, xm.act.rdot.clone());
    let ls = sys.add_bilinear("lstar", (sa, sm), sm, xm.act.lstar.clone());
    let rs = sys.add_bilinear("rstar", (sm, sa), sm, xm.act.rstar.clone());
    let mu = sys.add_linear("mu", sm, sa, xm.mu.matrix.clone());

    let v = Expr::var;
    let b = Expr::bil;
    let l = Expr::lin;
    let ma = vec![sm, sa];
    let mm = vec![sm, sm];
    let eqs = vec![
        Equation {
            id: "CM1.1".into(),
            vars: ma.clone(),
            lhs: vec![l(mu, b(rd, v(0), v(1)))],
            rhs: vec![b(mul_a, l(mu, v(0)), v(1))],
        },
        Equation {
            id: "CM1.2".into(),
            vars: ma.clone(),
            lhs: vec![l(mu, b(ld, v(1), v(0)))],
            rhs: vec![b(mul_a, v(1), l(mu, v(0)))],
        },
        Equation {
            id: "CM1.3".into(),
            vars: ma.clone(),
            lhs: vec![l(mu, b(rs, v(0), v(1)))],
            rhs: vec![b(brk_a, l(mu, v(0)), v(1))],
        },
        Equation {
            id: "CM1.4".into(),
            vars: ma,
            lhs: vec![l(mu, b(ls, v(1), v(0)))],
            rhs: vec![b(brk_a, v(1), l(mu, v(0)))],
        },
        Equation {
            id: "CM2.1".into(),
            vars: mm.clone(),
            lhs: vec![b(ld, l(mu, v(0)), v(1))],
            rhs: vec![b(mul_m, v(0), v(1))],
        },
        Equation {
            id: "CM2.2".into(),
            vars: mm.clone(),
            lhs: vec![b(rd, v(0), l(mu, v(1)))],
            rhs: vec![b(mul_m, v(0), v(1))],
        },
        Equation {
            id: "CM2.3".into(),
            vars: mm.clone(),
            lhs: vec![b(ls, l(mu, v(0)), v(1))],
            rhs: vec![b(brk_m, v(0), v(1))],
        },
        Equation {
            id: "CM2.4".into(),
            vars: mm,
            lhs: vec![b(rs, v(0), l(mu, v(1)))],
            rhs: vec![b(brk_m, v(0), v(1))],
        },
    ];
    (sys, eqs)
}

pub fn validate_xmod(xm: &CrossedModule) -> ValidationReport {
    xm.validate()
}

/// The structural consequences of the crossed-module laws, verified rather
/// than assumed: a central kernel, an ideal image, and a representation of
/// the quotient on the kernel.
pub struct XModStructure {
    pub kernel: Subspace,
    pub image: Subspace,
    /// Representation of `A / im(mu)` on `ker(mu)`.
    pub induced_representation: AwbAction,
    /// Projection `A -> A / im(mu)`.
    pub quotient_projection: AwbMorphism,
}

/// Asserts (i) `ker(mu)` is central in `M`, (ii) `im(mu)` is a two-sided
/// ideal of `A`, (iii) `im(mu)` acts trivially on `ker(mu)`; returns the
/// induced representation of `A/im(mu)` on `ker(mu)`. Failures are reported
/// as theorem violations because they cannot happen for a valid input.
pub fn xmod_structural_checks(xm: &CrossedModule) -> Result<XModStructure, AwbError> {
    let m = xm.module();
    let a = xm.base();
    let kernel = xm.mu.kernel();
    if !m.center().contains_subspace(&kernel) {
        return Err(AwbError::TheoremViolation {
            context: "crossed module kernel is not central".into(),
        });
    }
    let image = xm.mu.image();
    if !a.is_two_sided_ideal(&image) {
        return Err(AwbError::TheoremViolation {
            context: "crossed module image is not an ideal".into(),
        });
    }
    // the image acts trivially on the kernel
    let f = a.field;
    for iv in image.basis_vectors() {
        for kv in kernel.basis_vectors() {
            for val in [
                xm.act.ldot.eval(&iv, &kv),
                xm.act.rdot.eval(&kv, &iv),
                xm.act.lstar.eval(&iv, &kv),
                xm.act.rstar.eval(&kv, &iv),
            ] {
                if val.iter().any(|x| !f.is_zero(x)) {
                    return Err(AwbError::TheoremViolation {
                        context: "image of mu does not act trivially on the kernel".into(),
                    });
                }
            }
        }
    }
    // induced representation of A/im(mu) on ker(mu)
    let (quot, proj) = a.quotient(&image)?;
    let (kernel_alg, _) = m.subalgebra_on(&kernel, &format!("ker({})", m.name))?;
    let k_coords =
        |v: &[Scalar]| -> Vec<Scalar> { kernel.pivots().iter().map(|&p| v[p].clone()).collect() };
    let lifts: Vec<Vec<Scalar>> = (0..quot.dim)
        .map(|i| {
            proj.matrix
                .solve(&quot.basis_element(i))
                .expect("projection is surjective")
        })
        .collect();
    let kvecs: Vec<Vec<Scalar>> = kernel.basis_vectors().collect();
    let (dq, dk) = (quot.dim, kernel_alg.dim);
    let mut ldot = Tensor3::zero(f, dq, dk, dk);
    let mut rdot = Tensor3::zero(f, dk, dq, dk);
    let mut lstar = Tensor3::zero(f, dq, dk, dk);
    let mut rstar = Tensor3::zero(f, dk, dq, dk);
    for (i, av) in lifts.iter().enumerate() {
        for (j, kv) in kvecs.iter().enumerate() {
            for (t, c) in k_coords(&xm.act.ldot.eval(av, kv)).into_iter().enumerate() {
                ldot.set(i, j, t, c);
            }
            for (t, c) in k_coords(&xm.act.rdot.eval(kv, av)).into_iter().enumerate() {
                rdot.set(j, i, t, c);
            }
            for (t, c) in k_coords(&xm.act.lstar.eval(av, kv)).into_iter().enumerate() {
                lstar.set(i, j, t, c);
            }
            for (t, c) in k_coords(&xm.act.rstar.eval(kv, av)).into_iter().enumerate() {
                rstar.set(j, i, t, c);
            }
        }
    }
    let induced = AwbAction::new(quot, kernel_alg, ldot, rdot, lstar, rstar);
    induced
        .validate()
        .into_result("induced representation on the kernel")
        .map_err(|_| AwbError::TheoremViolation {
            context: "induced action of A/im(mu) on ker(mu) is not a representation".into(),
        })?;
    Ok(XModStructure {
        kernel,
        image,
        induced_representation: induced,
        quotient_projection: proj,
    })
}

/// The three semidirect-product morphisms attached to a crossed module:
/// `(mu, id) : M x| A -> A x| A`, `(id, mu) : M x| M -> M x| A` and
/// `phi(m, a) = (-m, mu(m) + a)`.
pub struct SemidirectHoms {
    pub m_rtimes_a: Semidirect,
    pub a_rtimes_a: Semidirect,
    pub m_rtimes_m: Semidirect,
    pub mu_id: AwbMorphism,
    pub id_mu: AwbMorphism,
    pub phi: AwbMorphism,
}

pub fn semidirect_homs(xm: &CrossedModule) -> Result<SemidirectHoms, AwbError> {
    let m = xm.module().clone();
    let a = xm.base().clone();
    let f = m.field;
    let (dm, da) = (m.dim, a.dim);
    let m_rtimes_a = semidirect(&xm.act)?;
    let a_rtimes_a = semidirect(&AwbAction::self_action(&a))?;
    let m_rtimes_m = semidirect(&AwbAction::self_action(&m))?;

    let mu = &xm.mu.matrix;
    let mu_id = AwbMorphism::new(
        m_rtimes_a.algebra.clone(),
        a_rtimes_a.algebra.clone(),
        Matrix::from_fn(f, 2 * da, dm + da, |i, j| {
            if i < da && j < dm {
                mu.at(i, j).clone()
            } else if i >= da && j >= dm && i - da == j - dm {
                f.one()
            } else {
                f.zero()
            }
        }),
    );
    let id_mu = AwbMorphism::new(
        m_rtimes_m.algebra.clone(),
        m_rtimes_a.algebra.clone(),
        Matrix::from_fn(f, dm + da, 2 * dm, |i, j| {
            if i < dm && j < dm && i == j {
                f.one()
            } else if i >= dm && j >= dm {
                mu.at(i - dm, j - dm).clone()
            } else {
                f.zero()
            }
        }),
    );
    let phi = AwbMorphism::new(
        m_rtimes_a.algebra.clone(),
        m_rtimes_a.algebra.clone(),
        Matrix::from_fn(f, dm + da, dm + da, |i, j| {
            if i < dm && j < dm && i == j {
                f.from_i64(-1)
            } else if i >= dm && j < dm {
                mu.at(i - dm, j).clone()
            } else if i >= dm && j >= dm && i == j {
                f.one()
            } else {
                f.zero()
            }
        }),
    );
    for (name, h) in [("(mu, id)", &mu_id), ("(id, mu)", &id_mu), ("phi", &phi)] {
        h.check().into_result(name)?;
    }
    Ok(SemidirectHoms {
        m_rtimes_a,
        a_rtimes_a,
        m_rtimes_m,
        mu_id,
        id_mu,
        phi,
    })
}

/// A cat1 structure `(R, P, s, t)`.
#[derive(Clone)]
pub struct Cat1Awb {
    pub r: FiniteAwb,
    pub p: Subspace,
    pub s: Matrix,
    pub t: Matrix,
}

impl Cat1Awb {
    pub fn new(r: FiniteAwb, p: Subspace, s: Matrix, t: Matrix) -> Self {
        assert_eq!(p.ambient_dim(), r.dim, "subalgebra ambient mismatch");
        assert_eq!((s.rows, s.cols), (r.dim, r.dim), "s shape");
        assert_eq!((t.rows, t.cols), (r.dim, r.dim), "t shape");
        Cat1Awb { r, p, s, t }
    }

    /// `(A, A, id, id)`: the trivial structure on an algebra.
    pub fn trivial(a: &FiniteAwb) -> Self {
        Cat1Awb::new(
            a.clone(),
            Subspace::full(a.field, a.dim),
            Matrix::identity(a.field, a.dim),
            Matrix::identity(a.field, a.dim),
        )
    }

    /// Checks: `P` closed, `s`/`t` endomorphisms with image in `P`
    /// restricting to the identity on `P`, and the annihilation conditions
    /// between the two kernels.
    pub fn validate(&self) -> ValidationReport {
        let f = self.r.field;
        let mut witnesses = Vec::new();
        if !self.r.is_subalgebra(&self.p) {
            witnesses.push(flag_witness("cat1.subalgebra"));
        }
        for (name, m) in [("s", &self.s), ("t", &self.t)] {
            let endo = AwbMorphism::new(self.r.clone(), self.r.clone(), m.clone());
            for mut w in endo.check().witnesses {
                w.law = format!("cat1.{name}_{}", w.law);
                witnesses.push(w);
            }
            if !self.p.contains_subspace(&m.column_space()) {
                witnesses.push(flag_witness(&format!("cat1.{name}_image_in_p")));
            }
            for (idx, v) in self.p.basis_vectors().enumerate() {
                let sv = m.apply(&v);
                if sv != v {
                    witnesses.push(Witness {
                        law: format!("cat1.{name}_restriction_identity"),
                        indices: vec![idx],
                        left: sv.iter().map(|x| f.format(x)).collect(),
                        right: v.iter().map(|x| f.format(x)).collect(),
                    });
                }
            }
        }
        let ker_s = self.s.kernel_basis();
        let ker_t = self.t.kernel_basis();
        for (i, u) in ker_s.basis_vectors().enumerate() {
            for (j, w) in ker_t.basis_vectors().enumerate() {
                for (law, val) in [
                    ("cat1.ker_s_ker_t_product", self.r.mul(&u, &w)),
                    ("cat1.ker_t_ker_s_product", self.r.mul(&w, &u)),
                    ("cat1.ker_s_ker_t_bracket", self.r.brk(&u, &w)),
                    ("cat1.ker_t_ker_s_bracket", self.r.brk(&w, &u)),
                ] {
                    if val.iter().any(|x| !f.is_zero(x)) {
                        witnesses.push(Witness {
                            law: law.into(),
                            indices: vec![i, j],
                            left: val.iter().map(|x| f.format(x)).collect(),
                            right: vec!["0".into(); val.len()],
                        });
                    }
                }
            }
        }
        ValidationReport::new(witnesses)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }
}

fn flag_witness(law: &str) -> Witness {
    Witness {
        law: law.to_string(),
        indices: vec![],
        left: vec![],
        right: vec![],
    }
}

pub fn validate_cat1(c: &Cat1Awb) -> ValidationReport {
    c.validate()
}

/// `cat1 -> crossed module`: `M = ker(s)` with `mu = t` restricted, the base
/// is `P`, and `P` acts through the operations of `R`.
pub fn cat1_to_xmod(c: &Cat1Awb) -> Result<CrossedModule, AwbError> {
    c.validate().into_result("cat1 structure")?;
    let f = c.r.field;
    let ker_s = c.s.kernel_basis();
    let (m_alg, m_incl) = c.r.subalgebra_on(&ker_s, &format!("ker_s({})", c.r.name))?;
    let (p_alg, p_incl) = c.r.subalgebra_on(&c.p, &format!("p({})", c.r.name))?;
    let p_coords =
        |v: &[Scalar]| -> Vec<Scalar> { c.p.pivots().iter().map(|&x| v[x].clone()).collect() };
    let m_coords =
        |v: &[Scalar]| -> Vec<Scalar> { ker_s.pivots().iter().map(|&x| v[x].clone()).collect() };
    // mu = t restricted to ker(s), landing in P
    let mvecs: Vec<Vec<Scalar>> = ker_s.basis_vectors().collect();
    let mu = Matrix::from_fn(f, p_alg.dim, m_alg.dim, |i, j| {
        p_coords(&c.t.apply(&mvecs[j]))[i].clone()
    });
    let pvecs: Vec<Vec<Scalar>> = c.p.basis_vectors().collect();
    let (dp, dm) = (p_alg.dim, m_alg.dim);
    let mut ldot = Tensor3::zero(f, dp, dm, dm);
    let mut rdot = Tensor3::zero(f, dm, dp, dm);
    let mut lstar = Tensor3::zero(f, dp, dm, dm);
    let mut rstar = Tensor3::zero(f, dm, dp, dm);
    for (i, pv) in pvecs.iter().enumerate() {
        for (j, mv) in mvecs.iter().enumerate() {
            for (k, v) in m_coords(&c.r.mul(pv, mv)).into_iter().enumerate() {
                ldot.set(i, j, k, v);
            }
            for (k, v) in m_coords(&c.r.mul(mv, pv)).into_iter().enumerate() {
                rdot.set(j, i, k, v);
            }
            for (k, v) in m_coords(&c.r.brk(pv, mv)).into_iter().enumerate() {
                lstar.set(i, j, k, v);
            }
            for (k, v) in m_coords(&c.r.brk(mv, pv)).into_iter().enumerate() {
                rstar.set(j, i, k, v);
            }
        }
    }
    let _ = (m_incl, p_incl);
    let act = AwbAction::new(p_alg.clone(), m_alg.clone(), ldot, rdot, lstar, rstar);
    let xm = CrossedModule::new(AwbMorphism::new(m_alg, p_alg, mu), act);
    xm.validate()
        .into_result("crossed module from cat1")
        .map_err(|e| match e {
            AwbError::InvalidStructure { report, .. } => AwbError::TheoremViolation {
                context: format!(
                    "cat1 data produced an invalid crossed module: {}",
                    report.witnesses[0].summary()
                ),
            },
            other => other,
        })?;
    Ok(xm)
}

/// `crossed module -> cat1`: `R = M x| A`, `P = 0 (+) A`,
/// `s(m, a) = a`, `t(m, a) = mu(m) + a`.
pub fn xmod_to_cat1(xm: &CrossedModule) -> Result<Cat1Awb, AwbError> {
    let sd = semidirect(&xm.act)?;
    let f = sd.algebra.field;
    let (dm, da) = (xm.module().dim, xm.base().dim);
    let n = dm + da;
    let p = Subspace::span(
        f,
        n,
        &(0..da)
            .map(|i| sd.algebra.basis_element(dm + i))
            .collect::<Vec<_>>(),
    );
    let s = Matrix::from_fn(f, n, n, |i, j| {
        if i >= dm && i == j {
            f.one()
        } else {
            f.zero()
        }
    });
    let t = Matrix::from_fn(f, n, n, |i, j| {
        if i >= dm && j < dm {
            xm.mu.matrix.at(i - dm, j).clone()
        } else if i >= dm && i == j {
            f.one()
        } else {
            f.zero()
        }
    });
    let c = Cat1Awb::new(sd.algebra, p, s, t);
    c.validate()
        .into_result("cat1 from crossed module")
        .map_err(|e| match e {
            AwbError::InvalidStructure { report, .. } => AwbError::TheoremViolation {
                context: format!(
                    "crossed module produced an invalid cat1 structure: {}",
                    report.witnesses[0].summary()
                ),
            },
            other => other,
        })?;
    Ok(c)
}

/// Lifts an associative crossed module (`mu` with a dot-only action) through
/// the trivial-bracket or tautological embedding.
pub fn lift_associative_xmod(
    field: crate::field::FieldSpec,
    base_product: Tensor3,
    module_product: Tensor3,
    mu_matrix: Matrix,
    ldot: Tensor3,
    rdot: Tensor3,
    mode: crate::action::LiftMode,
) -> Result<CrossedModule, AwbError> {
    let act =
        crate::action::lift_associative_action(field, base_product, module_product, ldot, rdot, mode)?;
    let mu = AwbMorphism::new(act.actee.clone(), act.actor.clone(), mu_matrix);
    let xm = CrossedModule::new(mu, act);
    xm.validate().into_result("lifted associative crossed module")?;
    Ok(xm)
}

/// A morphism of crossed modules: `beta . mu = mu' . alpha` plus the four
/// action-equivariance equations.
pub struct XModMorphism {
    pub alpha: AwbMorphism,
    pub beta: AwbMorphism,
}

impl XModMorphism {
    pub fn check(&self, from: &CrossedModule, to: &CrossedModule) -> ValidationReport {
        let mut witnesses = self.alpha.check().witnesses;
        witnesses.extend(self.beta.check().witnesses);
        let f = from.module().field;
        let square_l = self.beta.matrix.mul(&from.mu.matrix);
        let square_r = to.mu.matrix.mul(&self.alpha.matrix);
        if square_l != square_r {
            witnesses.push(flag_witness("xmod_morphism.square"));
        }
        for ai in 0..from.base().dim {
            let a = from.base().basis_element(ai);
            let ba = self.beta.apply(&a);
            for mi in 0..from.module().dim {
                let m = from.module().basis_element(mi);
                let am = self.alpha.apply(&m);
                let cases = [
                    (
                        "xmod_morphism.ldot",
                        self.alpha.apply(&from.act.ldot.eval(&a, &m)),
                        to.act.ldot.eval(&ba, &am),
                    ),
                    (
                        "xmod_morphism.rdot",
                        self.alpha.apply(&from.act.rdot.eval(&m, &a)),
                        to.act.rdot.eval(&am, &ba),
                    ),
                    (
                        "xmod_morphism.lstar",
                        self.alpha.apply(&from.act.lstar.eval(&a, &m)),
                        to.act.lstar.eval(&ba, &am),
                    ),
                    (
                        "xmod_morphism.rstar",
                        self.alpha.apply(&from.act.rstar.eval(&m, &a)),
                        to.act.rstar.eval(&am, &ba),
                    ),
                ];
                for (law, left, right) in cases {
                    if left != right {
                        witnesses.push(Witness {
                            law: law.into(),
                            indices: vec![ai, mi],
                            left: left.iter().map(|x| f.format(x)).collect(),
                            right: right.iter().map(|x| f.format(x)).collect(),
                        });
                    }
                }
            }
        }
        ValidationReport::new(witnesses)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.alpha.is_injective()
            && self.alpha.is_surjective()
            && self.beta.is_injective()
            && self.beta.is_surjective()
    }
}

/// The canonical isomorphism between `xm` and
/// `cat1_to_xmod(xmod_to_cat1(xm))`: `m -> (m, 0)`, `a -> (0, a)`.
pub fn roundtrip_iso(xm: &CrossedModule) -> Result<XModMorphism, AwbError> {
    let c = xmod_to_cat1(xm)?;
    let back = cat1_to_xmod(&c)?;
    let f = xm.module().field;
    let (dm, da) = (xm.module().dim, xm.base().dim);
    let ker_s = c.s.kernel_basis();
    let m_coords =
        |v: &[Scalar]| -> Vec<Scalar> { ker_s.pivots().iter().map(|&x| v[x].clone()).collect() };
    let p_coords =
        |v: &[Scalar]| -> Vec<Scalar> { c.p.pivots().iter().map(|&x| v[x].clone()).collect() };
    let alpha = Matrix::from_fn(f, back.module().dim, dm, |i, j| {
        // (m_j, 0) in R, expressed in ker(s) coordinates
        let mut v = vec![f.zero(); dm + da];
        v[j] = f.one();
        m_coords(&v)[i].clone()
    });
    let beta = Matrix::from_fn(f, back.base().dim, da, |i, j| {
        let mut v = vec![f.zero(); dm + da];
        v[dm + j] = f.one();
        p_coords(&v)[i].clone()
    });
    let witness = XModMorphism {
        alpha: AwbMorphism::new(xm.module().clone(), back.module().clone(), alpha),
        beta: AwbMorphism::new(xm.base().clone(), back.base().clone(), beta),
    };
    let rep = witness.check(xm, &back);
    if !rep.is_valid() || !witness.is_isomorphism() {
        return Err(AwbError::TheoremViolation {
            context: "round-trip crossed module is not isomorphic to the original".into(),
        });
    }
    Ok(witness)
}

/// Isomorphism witness for the other round trip: `R -> ker(s') x| P'` by
/// `r -> (r - s(r), s(r))`, compatible with the cat1 data on both sides.
pub struct Cat1Iso {
    pub map: AwbMorphism,
}

pub fn cat1_roundtrip_iso(c: &Cat1Awb) -> Result<Cat1Iso, AwbError> {
    let xm = cat1_to_xmod(c)?;
    let c2 = xmod_to_cat1(&xm)?;
    let f = c.r.field;
    let n = c.r.dim;
    let ker_s = c.s.kernel_basis();
    let m_coords =
        |v: &[Scalar]| -> Vec<Scalar> { ker_s.pivots().iter().map(|&x| v[x].clone()).collect() };
    let p_coords =
        |v: &[Scalar]| -> Vec<Scalar> { c.p.pivots().iter().map(|&x| v[x].clone()).collect() };
    let dm = ker_s.dim();
    let map = Matrix::from_fn(f, c2.r.dim, n, |i, j| {
        let e = c.r.basis_element(j);
        let se = c.s.apply(&e);
        if i < dm {
            let diff: Vec<Scalar> = e.iter().zip(&se).map(|(a, b)| f.sub(a, b)).collect();
            m_coords(&diff)[i].clone()
        } else {
            p_coords(&se)[i - dm].clone()
        }
    });
    let map = AwbMorphism::new(c.r.clone(), c2.r.clone(), map);
    let ok = map.is_morphism()
        && map.is_injective()
        && map.is_surjective()
        && {
            // f(P) = P' and the retractions commute with f
            let fp = Subspace::span(
                f,
                c2.r.dim,
                &c.p.basis_vectors().map(|v| map.apply(&v)).collect::<Vec<_>>(),
            );
            fp == c2.p
        }
        && c2.s.mul(&map.matrix) == map.matrix.mul(&c.s)
        && c2.t.mul(&map.matrix) == map.matrix.mul(&c.t);
    if !ok {
        return Err(AwbError::TheoremViolation {
            context: "round-trip cat1 structure is not isomorphic to the original".into(),
        });
    }
    Ok(Cat1Iso { map })
}
