//! The non-abelian tensor product: relation families, quotient dimensions,
//! collapse morphisms and induced crossed modules.

use awb::action::MutualActions;
use awb::field::FieldSpec;
use awb::fixtures;
use awb::tensor::{nonabelian_tensor, psi_maps, trivial_tensor_check, xmod_on_tensor};

fn main() {
    let q = FieldSpec::Rationals;
    // trivial actions on abelian factors: the closed four-block description
    let rep = trivial_tensor_check(&fixtures::abelian(q, 2), &fixtures::abelian(q, 3)).unwrap();
    println!(
        "ab2 [x] ab3 over trivial actions: dim {} = 4 * {} * {}",
        rep.actual_dim, rep.m_ab_dim, rep.n_ab_dim
    );

    // the tensor square of the matrix algebra over its self actions
    let a = fixtures::t_m2(q);
    let t = nonabelian_tensor(&MutualActions::self_mutual(&a)).unwrap();
    println!(
        "{} [x] {}: generators {}, relations {}, dim {} ({} relation families, {} distinct rows)",
        a.name,
        a.name,
        t.layout.total(),
        t.relations.dim(),
        t.dim(),
        t.counts.total,
        t.counts.rows_distinct
    );
    let (psi_m, _) = psi_maps(&t).unwrap();
    println!("collapse onto the factor is onto: {}", psi_m.is_surjective());
    let (xm, _) = xmod_on_tensor(&t).unwrap();
    println!("collapse is a crossed module: {}", xm.is_valid());
}
