//! Right exactness, the ideal sequence, and the four-term homology sequence
//! on the direct sum of two matrix tensor algebras.

use awb::action::MutualActions;
use awb::algebra::AwbMorphism;
use awb::extension::four_term_sequence;
use awb::field::FieldSpec;
use awb::fixtures;
use awb::linalg::{Matrix, Subspace};
use awb::tensor::{ideal_tensor_sequence, right_exactness_check};

fn main() {
    let q = FieldSpec::Rationals;
    let sum = fixtures::t_m2_sum(q);
    let first = Subspace::span(q, 8, &(0..4).map(|i| sum.basis_element(i)).collect::<Vec<_>>());
    let second = Subspace::span(q, 8, &(4..8).map(|i| sum.basis_element(i)).collect::<Vec<_>>());
    let full = Subspace::full(q, 8);

    let mutual1 = MutualActions::from_ideals(&sum, &first, &second).unwrap();
    let mutual2 = MutualActions::from_ideals(&sum, &full, &second).unwrap();
    let mutual3 = MutualActions::from_ideals(&sum, &second, &second).unwrap();
    let basis: Vec<_> = first.basis_vectors().collect();
    let f = AwbMorphism::new(
        mutual1.m().clone(),
        sum.clone(),
        Matrix::from_fn(q, 8, 4, |i, j| basis[j][i].clone()),
    );
    let g = AwbMorphism::new(
        sum.clone(),
        mutual3.m().clone(),
        Matrix::from_fn(q, 4, 8, |i, j| if j == i + 4 { q.one() } else { q.zero() }),
    );
    let rex = right_exactness_check(&f, &g, &mutual1, &mutual2, &mutual3).unwrap();
    println!(
        "tensored sequence {} -> {} -> {} -> 0: image = kernel ({}), onto ({})",
        rex.t1_dim, rex.t2_dim, rex.t3_dim, rex.image_equals_kernel, rex.surjective
    );

    let seq = ideal_tensor_sequence(&sum, &first).unwrap();
    println!(
        "ideal sequence: sigma image dim {} is an ideal ({}), kernel of tau equals it ({})",
        seq.report.sigma_image_dim, seq.report.sigma_image_is_ideal, seq.report.kernel_equals_image
    );

    let four = four_term_sequence(&sum, &first).unwrap();
    println!(
        "four-term sequence: ker(psi_M) {} -> H1(A) {} -> H1(A/M) {} -> coker {} -> 0, exact: {}",
        four.ker_psi_m_dim,
        four.h1_a_dim,
        four.h1_quotient_dim,
        four.coker_dim,
        four.exact_at_h1_a && four.exact_at_h1_quotient && four.connecting_surjective
    );
}
