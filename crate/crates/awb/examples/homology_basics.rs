//! The chain complex, its verified boundaries, and low-degree homology.

use awb::field::FieldSpec;
use awb::fixtures;
use awb::homology::{build_complex, h0_isomorphism_check, hochschild_comparison};

fn main() {
    let q = FieldSpec::Rationals;
    let n2 = fixtures::n2(q);
    let complex = build_complex(&n2, 3).expect("squares to zero");
    println!("chain dimensions of {}: {:?}", n2.name, complex.dims);
    for degree in 0..=2 {
        let h = complex.homology(degree).unwrap();
        println!(
            "H_{degree}: dim {} (cycles {}, boundaries {})",
            h.dim,
            h.cycles.dim(),
            h.boundaries.dim()
        );
    }
    let h0 = h0_isomorphism_check(&n2).unwrap();
    println!("im(d_1) = derived algebra: {}", h0.matches);

    // degree-zero and degree-one comparison with the associative theory
    for (name, product) in [
        ("m2", fixtures::m2_product(q)),
        ("dual", fixtures::dual_numbers(q).product.clone()),
    ] {
        let rep = hochschild_comparison(q, &product).unwrap();
        println!(
            "{name}: iso at degree 0: {}, onto at degree 1: {}",
            rep.iso_at_0, rep.surjective_at_1
        );
    }
}
