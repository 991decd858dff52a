//! Built-in example registry, so every documented invocation runs without
//! authoring input files.

use crate::construct::{action_groupoid, group_bundle, pair_groupoid, product_groupoid};
use crate::group::GroupTable;
use crate::groupoid::FiniteGroupoid;
use crate::manifest::{Manifest, ManifestPayload};
use crate::rat::{int, rat};
use crate::stepbundle::StepSubgroupBundle;
use std::collections::BTreeSet;

fn set(elements: &[usize]) -> BTreeSet<usize> {
    elements.iter().copied().collect()
}

/// pair groupoid over three objects with one inverse entry redirected:
/// structurally sound, but the inverse law fails at arrow 1.
fn broken_pair3() -> FiniteGroupoid {
    let mut data = pair_groupoid(3).to_data();
    data.inverse
        .iter_mut()
        .find(|(a, _)| *a == 1)
        .expect("arrow 1 exists")
        .1 = 2;
    FiniteGroupoid::from_data(&data).expect("still structurally sound")
}

fn z4_sign_action() -> FiniteGroupoid {
    let z4 = GroupTable::cyclic(4);
    let act: Vec<Vec<usize>> = (0..2)
        .map(|x| (0..4).map(|h| x ^ (h % 2)).collect())
        .collect();
    action_groupoid(&z4, 2, &act).expect("sign action is valid")
}

/// Z2-fiber bundle dropping to the trivial group after 1/2: not open.
fn drop_bundle() -> StepSubgroupBundle {
    StepSubgroupBundle {
        ambient: GroupTable::cyclic(2),
        breakpoints: vec![int(0), rat(1, 2), int(1)],
        pieces: vec![set(&[0, 1]), set(&[0])],
        points: vec![set(&[0, 1]), set(&[0, 1]), set(&[0])],
    }
}

/// Z2 fibers everywhere except a trivial fiber at the isolated point 1/2:
/// open.
fn isolated_drop_bundle() -> StepSubgroupBundle {
    StepSubgroupBundle {
        ambient: GroupTable::cyclic(2),
        breakpoints: vec![int(0), rat(1, 2), int(1)],
        pieces: vec![set(&[0, 1]), set(&[0, 1])],
        points: vec![set(&[0, 1]), set(&[0]), set(&[0, 1])],
    }
}

fn constant_z2_bundle() -> StepSubgroupBundle {
    StepSubgroupBundle {
        ambient: GroupTable::cyclic(2),
        breakpoints: vec![int(0), int(1)],
        pieces: vec![set(&[0, 1])],
        points: vec![set(&[0, 1]), set(&[0, 1])],
    }
}

/// All registry names, in listing order.
pub fn example_names() -> Vec<&'static str> {
    vec![
        "pair2",
        "pair3",
        "pair6",
        "z4-sign",
        "bundle-z2-s3",
        "pair2xZ2",
        "broken-pair3",
        "drop-bundle",
        "isolated-drop",
        "constant-z2",
    ]
}

/// Looks up a built-in example by name.
pub fn example(name: &str) -> Option<Manifest> {
    let payload = match name {
        "pair2" => ManifestPayload::Groupoid(pair_groupoid(2)),
        "pair3" => ManifestPayload::Groupoid(pair_groupoid(3)),
        "pair6" => ManifestPayload::Groupoid(pair_groupoid(6)),
        "z4-sign" => ManifestPayload::Groupoid(z4_sign_action()),
        "bundle-z2-s3" => ManifestPayload::Groupoid(group_bundle(&[
            GroupTable::cyclic(2),
            GroupTable::symmetric3(),
        ])),
        "pair2xZ2" => ManifestPayload::Groupoid(product_groupoid(
            &pair_groupoid(2),
            &group_bundle(&[GroupTable::cyclic(2), GroupTable::cyclic(2)]),
        )),
        "broken-pair3" => ManifestPayload::Groupoid(broken_pair3()),
        "drop-bundle" => ManifestPayload::Bundle(drop_bundle()),
        "isolated-drop" => ManifestPayload::Bundle(isolated_drop_bundle()),
        "constant-z2" => ManifestPayload::Bundle(constant_z2_bundle()),
        _ => return None,
    };
    Some(Manifest {
        name: Some(name.to_string()),
        seed: None,
        payload,
    })
}
