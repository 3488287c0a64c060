//! Crossed modules, their structural consequences, and the cat1 equivalence.

use awb::field::FieldSpec;
use awb::fixtures;
use awb::xmod::{cat1_roundtrip_iso, roundtrip_iso, xmod_structural_checks, xmod_to_cat1};

fn main() {
    let q = FieldSpec::Rationals;
    for (name, xm) in fixtures::xmod_corpus(q) {
        let st = xmod_structural_checks(&xm).expect("valid crossed module");
        let witness = roundtrip_iso(&xm).expect("equivalence round trip");
        println!(
            "{name}: kernel dim {} (central), image dim {} (ideal), round trip iso: {}",
            st.kernel.dim(),
            st.image.dim(),
            witness.is_isomorphism()
        );
    }
    for (name, c) in fixtures::cat1_corpus(q) {
        let back = cat1_roundtrip_iso(&c).expect("cat1 round trip");
        println!(
            "{name}: R dim {}, P dim {}, round trip morphism: {}",
            c.r.dim,
            c.p.dim(),
            back.map.is_morphism()
        );
    }
    let xm = &fixtures::xmod_corpus(q)[0].1;
    let c = xmod_to_cat1(xm).unwrap();
    println!(
        "translate of the first crossed module: ker(s) dim {}, ker(t) dim {}",
        c.s.kernel_basis().dim(),
        c.t.kernel_basis().dim()
    );
}
