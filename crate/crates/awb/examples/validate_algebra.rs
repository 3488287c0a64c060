//! Validate structure constants: every fixture passes, corrupted data fails
//! with a witness naming the violated law and basis triple.

use awb::field::FieldSpec;
use awb::fixtures;

fn main() {
    let q = FieldSpec::Rationals;
    for a in fixtures::corpus() {
        let rep = a.validate();
        println!("{:<16} dim {:<2} over {:<6} valid: {}", a.name, a.dim, a.field.to_string(), rep.is_valid());
    }
    println!();
    for bad in fixtures::invalid::all(q) {
        let rep = bad.validate();
        let w = &rep.witnesses[0];
        println!("{}: {}", bad.name, w.summary());
    }
}
