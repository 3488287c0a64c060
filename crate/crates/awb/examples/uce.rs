//! Universal central extensions of perfect algebras: the kernel of the
//! tensor-square collapse against degree-one homology, plus universality.

use awb::algebra::AwbMorphism;
use awb::extension::{uce, universality_check, validate_central_extension};
use awb::field::FieldSpec;
use awb::fixtures;

fn main() {
    let q = FieldSpec::Rationals;
    for a in [fixtures::t_m2(q), fixtures::sl2_bracket(q)] {
        let u = uce(&a).expect("perfect algebra");
        println!(
            "{}: tensor square dim {}, kernel dim {} = H1 dim {} (disjoint code paths agree: {})",
            a.name,
            u.tensor.dim(),
            u.kernel_dim,
            u.h1_dim,
            u.kernel_matches_h1
        );
        let v = fixtures::abelian(q, 1);
        let (_, _, projs) = a.direct_sum(&v).unwrap();
        let ce = validate_central_extension(&projs[0]).unwrap();
        let rep = universality_check(&u, &ce).unwrap();
        println!(
            "  universality against a trivial enlargement: morphism {}, factors {}, section independent {}",
            rep.is_morphism, rep.factors_through, rep.section_independent
        );
        let ce = validate_central_extension(&AwbMorphism::identity(&a)).unwrap();
        universality_check(&u, &ce).unwrap();
        println!("  universality against the identity extension: ok");
    }
}
