//! The built-in fixture corpus: small algebras (and later actions, crossed
//! modules and cat1 structures) used by the test suites, the examples and the
//! shipped JSON files.

use crate::algebra::{FiniteAwb, Tensor3};
use crate::field::FieldSpec;

fn gf5() -> FieldSpec {
    FieldSpec::prime_field(5).expect("5 is prime")
}

/// Structure constants of the 2x2 matrix algebra on the basis
/// `e11, e12, e21, e22` (index `2r + c`).
pub fn m2_product(field: FieldSpec) -> Tensor3 {
    Tensor3::from_fn(field, 4, 4, 4, |i, j, k| {
        let (a, b) = (i / 2, i % 2);
        let (c, d) = (j / 2, j % 2);
        if b == c && k == 2 * a + d {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// The abelian algebra of the given dimension.
pub fn abelian(field: FieldSpec, dim: usize) -> FiniteAwb {
    let mut a = FiniteAwb::abelian(field, dim, "");
    a.name = format!("ab{dim}{}", suffix(field));
    a
}

/// Two-dimensional algebra `x. x = y`, all other products zero, zero bracket.
pub fn n2(field: FieldSpec) -> FiniteAwb {
    let mut product = Tensor3::zero(field, 2, 2, 2);
    product.set(0, 0, 1, field.one());
    FiniteAwb::with_trivial_bracket(field, 2, product, &format!("n2{}", suffix(field)))
        .expect("n2 is associative")
}

/// The 2x2 matrix algebra with the commutator bracket.
pub fn t_m2(field: FieldSpec) -> FiniteAwb {
    FiniteAwb::tautological(field, 4, m2_product(field), &format!("t_m2{}", suffix(field)))
        .expect("matrix algebra is associative")
}

/// The 2x2 matrix algebra with the zero bracket.
pub fn m2_trivial(field: FieldSpec) -> FiniteAwb {
    FiniteAwb::with_trivial_bracket(
        field,
        4,
        m2_product(field),
        &format!("m2_trivial{}", suffix(field)),
    )
    .expect("matrix algebra is associative")
}

/// Direct sum of two copies of [`t_m2`]; perfect of dimension 8.
pub fn t_m2_sum(field: FieldSpec) -> FiniteAwb {
    let a = t_m2(field);
    let (mut sum, _, _) = a.direct_sum(&a).expect("same field");
    sum.name = format!("t_m2_sum{}", suffix(field));
    sum
}

/// A three-dimensional commutative Poisson algebra: basis `1, x, y` with
/// `x^2 = xy = y^2 = 0` and bracket `[x,y] = x = -[y,x]`.
pub fn poisson3(field: FieldSpec) -> FiniteAwb {
    let one = field.one();
    let mut product = Tensor3::zero(field, 3, 3, 3);
    for i in 0..3 {
        product.set(0, i, i, one.clone());
        product.set(i, 0, i, one.clone());
    }
    let mut bracket = Tensor3::zero(field, 3, 3, 3);
    bracket.set(1, 2, 1, one.clone());
    bracket.set(2, 1, 1, field.neg(&one));
    FiniteAwb::new(field, 3, product, bracket, &format!("poisson3{}", suffix(field)))
        .expect("poisson3 satisfies the axioms")
}

/// The dual numbers `K[x]/(x^2)` on the basis `1, x`, zero bracket.
pub fn dual_numbers(field: FieldSpec) -> FiniteAwb {
    let one = field.one();
    let mut product = Tensor3::zero(field, 2, 2, 2);
    product.set(0, 0, 0, one.clone());
    product.set(0, 1, 1, one.clone());
    product.set(1, 0, 1, one.clone());
    FiniteAwb::with_trivial_bracket(field, 2, product, &format!("dual{}", suffix(field)))
        .expect("dual numbers are associative")
}

/// Zero product with the standard three-dimensional simple Lie bracket on
/// `e, f, h`. Perfect purely through the bracket, with nonzero degree-one
/// homology, so the kernel/homology cross-checks agree on a nonzero value.
pub fn sl2_bracket(field: FieldSpec) -> FiniteAwb {
    let product = Tensor3::zero(field, 3, 3, 3);
    let mut bracket = Tensor3::zero(field, 3, 3, 3);
    let one = field.one();
    bracket.set(0, 1, 2, one.clone()); // [e,f] = h
    bracket.set(1, 0, 2, field.neg(&one)); // [f,e] = -h
    bracket.set(2, 0, 0, field.from_i64(2)); // [h,e] = 2e
    bracket.set(0, 2, 0, field.from_i64(-2)); // [e,h] = -2e
    bracket.set(2, 1, 1, field.from_i64(-2)); // [h,f] = -2f
    bracket.set(1, 2, 1, field.from_i64(2)); // [f,h] = 2f
    FiniteAwb::new(
        field,
        3,
        product,
        bracket,
        &format!("sl2_bracket{}", suffix(field)),
    )
    .expect("bracket identity is vacuous over a zero product")
}

/// Two-dimensional algebra with zero product and bracket `[x,y] = [y,x] = x`.
/// Valid (the bracket identity reads 0 = 0) but not antisymmetric.
pub fn bracket_pair(field: FieldSpec) -> FiniteAwb {
    let product = Tensor3::zero(field, 2, 2, 2);
    let mut bracket = Tensor3::zero(field, 2, 2, 2);
    bracket.set(0, 1, 0, field.one());
    bracket.set(1, 0, 0, field.one());
    FiniteAwb::new(
        field,
        2,
        product,
        bracket,
        &format!("bracket_pair{}", suffix(field)),
    )
    .expect("bracket_pair satisfies the axioms")
}

fn suffix(field: FieldSpec) -> String {
    match field {
        FieldSpec::Rationals => String::new(),
        FieldSpec::PrimeField(p) => format!("_gf{p}"),
    }
}

/// Every valid algebra fixture, over Q and GF(5).
pub fn corpus() -> Vec<FiniteAwb> {
    let q = FieldSpec::Rationals;
    let p = gf5();
    let mut all = vec![
        abelian(q, 1),
        abelian(q, 2),
        abelian(q, 3),
        n2(q),
        t_m2(q),
        m2_trivial(q),
        t_m2_sum(q),
        poisson3(q),
        dual_numbers(q),
        bracket_pair(q),
        sl2_bracket(q),
    ];
    all.extend([
        abelian(p, 2),
        n2(p),
        t_m2(p),
        m2_trivial(p),
        t_m2_sum(p),
        poisson3(p),
        dual_numbers(p),
        bracket_pair(p),
        sl2_bracket(p),
    ]);
    all
}

/// Look up a corpus algebra by label.
pub fn by_name(name: &str) -> Option<FiniteAwb> {
    corpus().into_iter().find(|a| a.name == name)
}

/// Deliberately corrupted structures for negative tests. Each fails
/// validation with an exactly known first witness.
pub mod invalid {
    use super::*;

    /// Dim 1, `x.x = x`, `[x,x] = x`: the bracket identity gives `x != 2x`.
    pub fn bracket_dim1(field: FieldSpec) -> FiniteAwb {
        let mut product = Tensor3::zero(field, 1, 1, 1);
        product.set(0, 0, 0, field.one());
        let mut bracket = Tensor3::zero(field, 1, 1, 1);
        bracket.set(0, 0, 0, field.one());
        FiniteAwb::new_unchecked(field, 1, product, bracket, "invalid_bracket_dim1")
    }

    /// Dim 2, `x.x = y`, `y.x = x`, zero bracket: `(xx)x = x` but `x(xx) = 0`.
    pub fn assoc_dim2(field: FieldSpec) -> FiniteAwb {
        let mut product = Tensor3::zero(field, 2, 2, 2);
        product.set(0, 0, 1, field.one());
        product.set(1, 0, 0, field.one());
        let bracket = Tensor3::zero(field, 2, 2, 2);
        FiniteAwb::new_unchecked(field, 2, product, bracket, "invalid_assoc_dim2")
    }

    /// The n2 product with a corrupted bracket `[x,x] = x`:
    /// `[xx,x] = [y,x] = 0` but `[x,x]x + x[x,x] = 2y`.
    pub fn bracket_n2(field: FieldSpec) -> FiniteAwb {
        let mut product = Tensor3::zero(field, 2, 2, 2);
        product.set(0, 0, 1, field.one());
        let mut bracket = Tensor3::zero(field, 2, 2, 2);
        bracket.set(0, 0, 0, field.one());
        FiniteAwb::new_unchecked(field, 2, product, bracket, "invalid_bracket_n2")
    }

    pub fn all(field: FieldSpec) -> Vec<FiniteAwb> {
        vec![bracket_dim1(field), assoc_dim2(field), bracket_n2(field)]
    }
}

use crate::action::{action_from_central_surjection, AwbAction, MutualActions};
use crate::algebra::AwbMorphism;
use crate::linalg::{Matrix, Subspace};
use crate::xmod::{xmod_to_cat1, Cat1Awb, CrossedModule};

/// The nilpotent two-dimensional representation of `n2`: both generators act
/// through the shift matrix, star maps vanish.
pub fn n2_representation(field: FieldSpec) -> AwbAction {
    let n2 = n2(field);
    let m = abelian(field, 2);
    let mut ldot = Tensor3::zero(field, 2, 2, 2);
    ldot.set(0, 1, 0, field.one());
    let mut rdot = Tensor3::zero(field, 2, 2, 2);
    rdot.set(1, 0, 0, field.one());
    AwbAction::new(
        n2,
        m,
        ldot,
        rdot,
        Tensor3::zero(field, 2, 2, 2),
        Tensor3::zero(field, 2, 2, 2),
    )
}

/// Named crossed-module fixtures.
pub fn xmod_corpus(field: FieldSpec) -> Vec<(String, CrossedModule)> {
    let n2a = n2(field);
    let span_y = n2a.ideal_closure(&[n2a.basis_element(1)]);
    let sum = t_m2_sum(field);
    let first = Subspace::span(
        field,
        8,
        &(0..4).map(|i| sum.basis_element(i)).collect::<Vec<_>>(),
    );
    let t = t_m2(field);
    let (_, proj) = n2a
        .quotient(&span_y)
        .expect("span{y} is an ideal of n2");
    let quot_act = action_from_central_surjection(&proj).expect("kernel is central");
    vec![
        (
            "xmod_incl_n2".into(),
            CrossedModule::from_ideal(&n2a, &span_y).expect("ideal inclusion"),
        ),
        (
            "xmod_incl_sum_first".into(),
            CrossedModule::from_ideal(&sum, &first).expect("ideal inclusion"),
        ),
        (
            "xmod_id_t_m2".into(),
            CrossedModule::new(AwbMorphism::identity(&t), AwbAction::self_action(&t)),
        ),
        (
            "xmod_rep_n2".into(),
            CrossedModule::from_representation(n2_representation(field)),
        ),
        ("xmod_quot_n2".into(), CrossedModule::new(proj, quot_act)),
    ]
}

/// Named cat1 fixtures: the trivial one plus the translates of the crossed
/// modules.
pub fn cat1_corpus(field: FieldSpec) -> Vec<(String, Cat1Awb)> {
    let mut out = vec![("cat1_trivial_t_m2".to_string(), Cat1Awb::trivial(&t_m2(field)))];
    for (name, xm) in xmod_corpus(field) {
        out.push((
            format!("cat1_from_{name}"),
            xmod_to_cat1(&xm).expect("fixture crossed modules convert"),
        ));
    }
    out
}

/// Writes the shipped fixture files into a directory. Returns the list of
/// (relative path, canonical contents) pairs actually produced.
pub fn fixture_files() -> Vec<(String, String)> {
    use crate::io;
    let q = FieldSpec::Rationals;
    let mut out: Vec<(String, String)> = Vec::new();
    let algebra = |name: &str, a: &crate::algebra::FiniteAwb| {
        (
            format!("{name}.json"),
            io::to_canonical_json(&io::algebra_to_file(a)),
        )
    };
    for a in corpus() {
        let name = a.name.clone();
        out.push(algebra(&name, &a));
    }
    // enlarged copy used as a central extension source
    let ext = {
        let (mut s, _, _) = t_m2(q).direct_sum(&abelian(q, 1)).expect("same field");
        s.name = "t_m2_ext".into();
        s
    };
    out.push(algebra("t_m2_ext", &ext));
    for bad in invalid::all(q) {
        let name = bad.name.clone();
        out.push((
            format!("invalid/{name}.json"),
            crate::io::to_canonical_json(&crate::io::algebra_to_file(&bad)),
        ));
    }
    // actions
    let self_act = AwbAction::self_action(&t_m2(q));
    out.push((
        "action_t_m2_self.json".into(),
        crate::io::to_canonical_json(&crate::io::action_to_file(
            &self_act,
            "t_m2.json",
            "t_m2.json",
        )),
    ));
    out.push((
        "action_rep_n2.json".into(),
        crate::io::to_canonical_json(&crate::io::action_to_file(
            &n2_representation(q),
            "n2.json",
            "ab2.json",
        )),
    ));
    let n2a = n2(q);
    let span_y = n2a.ideal_closure(&[n2a.basis_element(1)]);
    let incl_xm = CrossedModule::from_ideal(&n2a, &span_y).expect("ideal inclusion");
    out.push((
        "action_incl_n2.json".into(),
        crate::io::to_canonical_json(&crate::io::action_to_file(
            &incl_xm.act,
            "n2.json",
            "ab1.json",
        )),
    ));
    let (_, proj) = n2a.quotient(&span_y).expect("ideal");
    let quot_act = action_from_central_surjection(&proj).expect("central");
    out.push((
        "action_quot_n2.json".into(),
        crate::io::to_canonical_json(&crate::io::action_to_file(
            &quot_act,
            "ab1.json",
            "n2.json",
        )),
    ));
    // mutual actions
    out.push((
        "mutual_t_m2_self.json".into(),
        crate::io::to_canonical_json(&crate::io::mutual_actions_to_file(
            &MutualActions::self_mutual(&t_m2(q)),
        )),
    ));
    out.push((
        "mutual_trivial_ab2_ab3.json".into(),
        crate::io::to_canonical_json(&crate::io::mutual_actions_to_file(
            &MutualActions::trivial(&abelian(q, 2), &abelian(q, 3)).expect("same field"),
        )),
    ));
    // crossed modules
    out.push((
        "xmod_incl_n2.json".into(),
        crate::io::to_canonical_json(&crate::io::xmod_to_file(&incl_xm, "action_incl_n2.json")),
    ));
    let rep_xm = CrossedModule::from_representation(n2_representation(q));
    out.push((
        "xmod_rep_n2.json".into(),
        crate::io::to_canonical_json(&crate::io::xmod_to_file(&rep_xm, "action_rep_n2.json")),
    ));
    let quot_xm = CrossedModule::new(proj, quot_act);
    out.push((
        "xmod_quot_n2.json".into(),
        crate::io::to_canonical_json(&crate::io::xmod_to_file(&quot_xm, "action_quot_n2.json")),
    ));
    let id_xm = CrossedModule::new(
        AwbMorphism::identity(&t_m2(q)),
        AwbAction::self_action(&t_m2(q)),
    );
    out.push((
        "xmod_id_t_m2.json".into(),
        crate::io::to_canonical_json(&crate::io::xmod_to_file(&id_xm, "action_t_m2_self.json")),
    ));
    // cat1 structures: the trivial one and the translate of the n2 inclusion
    out.push((
        "cat1_trivial_t_m2.json".into(),
        crate::io::to_canonical_json(&crate::io::cat1_to_file(
            &Cat1Awb::trivial(&t_m2(q)),
            "t_m2.json",
        )),
    ));
    let cat_incl = xmod_to_cat1(&incl_xm).expect("fixture converts");
    let mut r_alg = cat_incl.r.clone();
    r_alg.name = "r_incl_n2".into();
    out.push(algebra("r_incl_n2", &r_alg));
    out.push((
        "cat1_incl_n2.json".into(),
        crate::io::to_canonical_json(&crate::io::cat1_to_file(&cat_incl, "r_incl_n2.json")),
    ));
    // central extension t_m2_ext -> t_m2
    let ce = AwbMorphism::new(
        ext.clone(),
        t_m2(q),
        Matrix::from_fn(q, 4, 5, |i, j| if i == j { q.one() } else { q.zero() }),
    );
    out.push((
        "ce_t_m2_ext.json".into(),
        crate::io::to_canonical_json(&crate::io::morphism_to_file(
            &ce,
            "t_m2_ext.json",
            "t_m2.json",
        )),
    ));
    // ideal generators
    let gens = crate::io::VectorsFile {
        format_version: crate::io::FORMAT_VERSION,
        kind: "vectors".into(),
        vectors: vec![(0..8)
            .map(|i| if i == 0 { "1".into() } else { "0".into() })
            .collect()],
    };
    out.push((
        "ideal_sum_first.json".into(),
        crate::io::to_canonical_json(&gens),
    ));
    let gens = crate::io::VectorsFile {
        format_version: crate::io::FORMAT_VERSION,
        kind: "vectors".into(),
        vectors: vec![(0..4)
            .map(|i| if i == 0 { "1".into() } else { "0".into() })
            .collect()],
    };
    out.push((
        "ideal_t_m2_full.json".into(),
        crate::io::to_canonical_json(&gens),
    ));
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[cfg(test)]
mod file_tests {
    use super::*;
    use std::path::PathBuf;

    fn fixtures_dir() -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
    }

    /// The checked-in fixture files are exactly the generated corpus.
    /// Run with `AWB_WRITE_FIXTURES=1` to (re)write them.
    #[test]
    fn fixture_files_match_generated_corpus() {
        let dir = fixtures_dir();
        let files = fixture_files();
        if std::env::var("AWB_WRITE_FIXTURES").is_ok() {
            for (rel, contents) in &files {
                let path = dir.join(rel);
                std::fs::create_dir_all(path.parent().unwrap()).unwrap();
                std::fs::write(&path, contents).unwrap();
            }
        }
        for (rel, contents) in &files {
            let path = dir.join(rel);
            let on_disk = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("missing fixture {rel}: {e}"));
            assert_eq!(&on_disk, contents, "fixture {rel} is stale");
        }
    }

    #[test]
    fn corpus_lookup_by_name() {
        assert!(by_name("t_m2").is_some());
        assert!(by_name("n2_gf5").is_some());
        assert!(by_name("missing").is_none());
    }

    #[test]
    fn xmod_and_cat1_corpora_are_valid() {
        for (name, xm) in xmod_corpus(FieldSpec::Rationals) {
            assert!(xm.is_valid(), "{name} is invalid");
        }
        for (name, c) in cat1_corpus(FieldSpec::Rationals) {
            assert!(c.is_valid(), "{name} is invalid");
        }
    }
}
