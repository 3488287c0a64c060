//! Centers, derived algebras, perfectness, and the canonical quotients.

use awb::field::FieldSpec;
use awb::fixtures;

fn main() {
    let q = FieldSpec::Rationals;
    for a in [
        fixtures::abelian(q, 2),
        fixtures::n2(q),
        fixtures::t_m2(q),
        fixtures::poisson3(q),
        fixtures::sl2_bracket(q),
    ] {
        let center = a.center();
        let (derived, perfect) = a.derived_and_perfect();
        let (ab, _) = a.abelianization();
        let (assoc, _) = a.associativization();
        let (poisson, _) = a.poisson_quotient();
        println!(
            "{:<12} center {} derived {} perfect {:<5} abelianization {} associativization {} poisson quotient {}",
            a.name,
            center.dim(),
            derived.dim(),
            perfect,
            ab.dim,
            assoc.dim,
            poisson.dim
        );
    }
}
