//! Actions, their twelve coherence equations, and semidirect products.

use awb::action::{action_from_split_extension, semidirect, AwbAction};
use awb::field::FieldSpec;
use awb::fixtures;

fn main() {
    let q = FieldSpec::Rationals;
    let a = fixtures::t_m2(q);
    let act = AwbAction::self_action(&a);
    println!("self action of {}: valid = {}", a.name, act.is_valid());

    let rep_action = fixtures::n2_representation(q);
    println!(
        "representation of n2 on the plane: valid = {}, equations holding identically: {:?}",
        rep_action.is_valid(),
        rep_action.identically_satisfied_ids()
    );

    let sd = semidirect(&act).expect("valid action");
    println!(
        "semidirect product dim {} with split maps: projection . section = id: {}",
        sd.algebra.dim,
        sd.section.then(&sd.projection).matrix == awb::linalg::Matrix::identity(q, a.dim)
    );
    let recovered =
        action_from_split_extension(&sd.algebra, &sd.inclusion, &sd.projection, &sd.section)
            .expect("split extension");
    println!(
        "action recovered from the split extension matches: {}",
        recovered.same_tensors(&act)
    );
}
