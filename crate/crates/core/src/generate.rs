//! Deterministic test-case generators: a catalog of small groups, a family
//! of groupoids with nontrivial isotropy, random step bundles, and random
//! admissible sheet functions. Everything is driven by [`SplitMix64`], so a
//! fixed seed reproduces the exact same instances everywhere.

use crate::construct::{
    action_groupoid, disjoint_union, group_bundle, pair_groupoid, product_groupoid,
};
use crate::convolution::GroupoidFunction;
use crate::group::GroupTable;
use crate::groupoid::FiniteGroupoid;
use crate::piecewise::Piecewise;
use crate::rat::{rat, Rat};
use crate::rng::SplitMix64;
use crate::stepbundle::{SheetFunction, StepSubgroupBundle};
use num_traits::Zero;
use std::collections::BTreeSet;

/// Small groups of order at most 8, by name.
pub fn small_groups() -> Vec<(&'static str, GroupTable)> {
    vec![
        ("1", GroupTable::trivial()),
        ("Z2", GroupTable::cyclic(2)),
        ("Z3", GroupTable::cyclic(3)),
        ("Z4", GroupTable::cyclic(4)),
        ("V4", GroupTable::cyclic(2).product(&GroupTable::cyclic(2))),
        ("Z5", GroupTable::cyclic(5)),
        ("Z6", GroupTable::cyclic(6)),
        ("S3", GroupTable::symmetric3()),
        ("Z7", GroupTable::cyclic(7)),
        ("Z8", GroupTable::cyclic(8)),
        ("Z4xZ2", GroupTable::cyclic(4).product(&GroupTable::cyclic(2))),
        (
            "Z2xZ2xZ2",
            GroupTable::cyclic(2)
                .product(&GroupTable::cyclic(2))
                .product(&GroupTable::cyclic(2)),
        ),
        ("D4", GroupTable::dihedral(4)),
        ("Q8", GroupTable::quaternion()),
    ]
}

fn group(name: &str) -> GroupTable {
    small_groups()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t)
        .unwrap_or_else(|| panic!("unknown group {name}"))
}

/// Named action groupoids with nontrivial isotropy (plus a few free ones).
pub fn action_catalog() -> Vec<(String, FiniteGroupoid)> {
    let mut catalog = Vec::new();
    let mut push = |name: String, table: &GroupTable, points: usize, act: Vec<Vec<usize>>| {
        let groupoid = action_groupoid(table, points, &act).expect("catalog action is valid");
        catalog.push((name, groupoid));
    };

    // quotient characters acting on two points: x·h = x xor χ(h)
    let two_point = |table: &GroupTable, chi: &dyn Fn(usize) -> usize| -> Vec<Vec<usize>> {
        (0..2)
            .map(|x| (0..table.order()).map(|h| x ^ chi(h)).collect())
            .collect()
    };

    let z4 = group("Z4");
    push("sign4".into(), &z4, 2, two_point(&z4, &|h| h % 2));
    let z8 = group("Z8");
    push("sign8".into(), &z8, 2, two_point(&z8, &|h| h % 2));
    let z6 = group("Z6");
    push("sign6".into(), &z6, 2, two_point(&z6, &|h| h % 2));
    let v4 = group("V4");
    // first Z2 factor: elements are a*2+b
    push("v4-first".into(), &v4, 2, two_point(&v4, &|h| h / 2));
    let d4 = group("D4");
    // reflections (indices 4..8) swap the two points
    push("d4-flip".into(), &d4, 2, two_point(&d4, &|h| usize::from(h >= 4)));
    let q8 = group("Q8");
    // the subgroup {±1, ±i} has indices 0..4; the rest swap
    push("q8-char".into(), &q8, 2, two_point(&q8, &|h| usize::from(h >= 4)));
    let s3 = group("S3");
    // odd permutations (indices 3..6) swap
    push("s3-sign".into(), &s3, 2, two_point(&s3, &|h| usize::from(h >= 3)));

    // S3 acting naturally on three letters (as a right action, a letter
    // moves by the inverse permutation); perms are in table order
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [0, 2, 1],
        [2, 1, 0],
        [1, 0, 2],
    ];
    let act: Vec<Vec<usize>> = (0..3)
        .map(|x| {
            (0..6)
                .map(|h| perms[h].iter().position(|&v| v == x).unwrap())
                .collect()
        })
        .collect();
    push("s3-natural".into(), &s3, 3, act);

    // Z6 rotating three points (isotropy Z2)
    let act: Vec<Vec<usize>> = (0..3)
        .map(|x| (0..6).map(|h| (x + h) % 3).collect())
        .collect();
    push("z6-rot3".into(), &z6, 3, act);

    // Z8 shifting four points mod four (isotropy Z2)
    let act: Vec<Vec<usize>> = (0..4)
        .map(|x| (0..8).map(|h| (x + h) % 4).collect())
        .collect();
    push("z8-shift4".into(), &z8, 4, act);

    // trivial actions: everything is isotropy
    for points in 1..=3usize {
        let z2 = group("Z2");
        let act = (0..points).map(|x| vec![x, x]).collect();
        push(format!("z2-trivial{points}"), &z2, points, act);
    }

    // free ones for contrast
    let z2 = group("Z2");
    push("z2-swap".into(), &z2, 2, vec![vec![0, 1], vec![1, 0]]);
    let act: Vec<Vec<usize>> = (0..4)
        .map(|x| (0..4).map(|h| (x + h) % 4).collect())
        .collect();
    push("z4-regular".into(), &z4, 4, act);

    catalog
}

/// Bundle fiber lists used to build product instances.
fn bundle_configs() -> Vec<(&'static str, Vec<GroupTable>)> {
    vec![
        ("b-z2", vec![group("Z2")]),
        ("b-z3", vec![group("Z3")]),
        ("b-z4", vec![group("Z4")]),
        ("b-v4", vec![group("V4")]),
        ("b-z5", vec![group("Z5")]),
        ("b-z6", vec![group("Z6")]),
        ("b-s3", vec![group("S3")]),
        ("b-z8", vec![group("Z8")]),
        ("b-d4", vec![group("D4")]),
        ("b-q8", vec![group("Q8")]),
        ("b-z2z2", vec![group("Z2"), group("Z2")]),
        ("b-z2z3", vec![group("Z2"), group("Z3")]),
        ("b-z4z2", vec![group("Z4"), group("Z2")]),
        ("b-s3z2", vec![group("S3"), group("Z2")]),
        ("b-z2x3", vec![group("Z2"), group("Z2"), group("Z2")]),
        ("b-z3z4z2", vec![group("Z3"), group("Z4"), group("Z2")]),
        ("b-z2e", vec![group("Z2"), group("1")]),
        ("b-eee", vec![group("1"), group("1"), group("1")]),
        ("b-d4q8", vec![group("D4"), group("Q8")]),
        ("b-z6s3v4", vec![group("Z6"), group("S3"), group("V4")]),
    ]
}

/// The deterministic groupoid family exercised by the synthesis and
/// convolution checks: products of pair groupoids with group bundles, action
/// groupoids with isotropy, plus bundles, pair groupoids, and disjoint
/// unions on their own. Well over 100 instances.
pub fn standard_family() -> Vec<(String, FiniteGroupoid)> {
    let mut family = Vec::new();

    for n in 1..=4usize {
        for (bname, fibers) in bundle_configs() {
            let g = product_groupoid(&pair_groupoid(n), &group_bundle(&fibers));
            family.push((format!("pair{n}x{bname}"), g));
        }
    }

    for (name, g) in action_catalog() {
        family.push((format!("act-{name}"), g));
    }

    // products of pair groupoids with action groupoids
    let actions = action_catalog();
    let pick = |name: &str| {
        actions
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g.clone())
            .expect("catalog name")
    };
    for n in 2..=3usize {
        for name in ["sign4", "s3-natural", "d4-flip"] {
            let g = product_groupoid(&pair_groupoid(n), &pick(name));
            family.push((format!("pair{n}x{name}"), g));
        }
    }

    for (bname, fibers) in bundle_configs() {
        family.push((bname.to_string(), group_bundle(&fibers)));
    }

    for n in 1..=6usize {
        family.push((format!("pair{n}"), pair_groupoid(n)));
    }

    family.push((
        "pair2+pair3".into(),
        disjoint_union(&pair_groupoid(2), &pair_groupoid(3)),
    ));
    family.push((
        "pair2+z2".into(),
        disjoint_union(&pair_groupoid(2), &group_bundle(&[group("Z2")])),
    ));
    family.push((
        "pair2+pair2".into(),
        disjoint_union(&pair_groupoid(2), &pair_groupoid(2)),
    ));
    family.push((
        "sign4+pair2".into(),
        disjoint_union(&pick("sign4"), &pair_groupoid(2)),
    ));
    family.push((
        "s3+e".into(),
        disjoint_union(
            &group_bundle(&[group("S3")]),
            &group_bundle(&[group("1")]),
        ),
    ));

    family
}

/// Positive rationals, one per object.
pub fn random_lambda(rng: &mut SplitMix64, count: usize) -> Vec<Rat> {
    (0..count).map(|_| rng.positive_rat()).collect()
}

/// A random rational-valued function on arrows, zero on about a third of them.
pub fn random_groupoid_function(rng: &mut SplitMix64, g: &FiniteGroupoid) -> GroupoidFunction {
    GroupoidFunction::from_fn(g, |_| {
        if rng.chance(1, 3) {
            Rat::zero()
        } else {
            rng.small_rat()
        }
    })
}

/// Interior breakpoint pool: proper fractions with small denominators.
fn breakpoint_pool() -> Vec<Rat> {
    let mut pool = BTreeSet::new();
    for den in 2..=8i64 {
        for num in 1..den {
            pool.insert(rat(num, den));
        }
    }
    pool.into_iter().collect()
}

/// A random step bundle: ambient group of order ≤ 8, at most 5 pieces.
/// Point groups are biased toward the open-containment configuration so both
/// verdicts occur with substantial probability.
pub fn random_bundle(rng: &mut SplitMix64) -> StepSubgroupBundle {
    let groups = small_groups();
    let (_, ambient) = &groups[rng.below(groups.len())];
    let subgroups = ambient.subgroups();
    let piece_count = 1 + rng.below(5);

    let pool = breakpoint_pool();
    let mut interior: BTreeSet<Rat> = BTreeSet::new();
    while interior.len() < piece_count - 1 {
        interior.insert(pool[rng.below(pool.len())].clone());
    }
    let mut breakpoints: Vec<Rat> = vec![Rat::zero()];
    breakpoints.extend(interior);
    breakpoints.push(Rat::from_integer(1.into()));

    let pieces: Vec<BTreeSet<usize>> = (0..piece_count)
        .map(|_| subgroups[rng.below(subgroups.len())].clone())
        .collect();

    let points: Vec<BTreeSet<usize>> = (0..=piece_count)
        .map(|j| {
            if rng.chance(1, 2) {
                // a subgroup contained in the neighboring pieces: keeps the
                // projection open at this breakpoint
                let mut candidates: Vec<&BTreeSet<usize>> = subgroups
                    .iter()
                    .filter(|s| {
                        (j == 0 || s.is_subset(&pieces[j - 1]))
                            && (j == piece_count || s.is_subset(&pieces[j]))
                    })
                    .collect();
                if candidates.is_empty() {
                    candidates.push(&subgroups[0]);
                }
                candidates[rng.below(candidates.len())].clone()
            } else {
                subgroups[rng.below(subgroups.len())].clone()
            }
        })
        .collect();

    StepSubgroupBundle {
        ambient: ambient.clone(),
        breakpoints,
        pieces,
        points,
    }
}

/// A continuous, strictly positive, piecewise-linear scale profile.
pub fn random_positive_scale(rng: &mut SplitMix64) -> Piecewise {
    let pool = breakpoint_pool();
    let mut xs: BTreeSet<Rat> = BTreeSet::new();
    for _ in 0..rng.below(3) {
        xs.insert(pool[rng.below(pool.len())].clone());
    }
    let mut points = vec![(Rat::zero(), rng.positive_rat())];
    points.extend(xs.into_iter().map(|x| (x, rng.positive_rat())));
    points.push((Rat::from_integer(1.into()), rng.positive_rat()));
    Piecewise::from_polyline(&points).expect("polyline spans [0,1]")
}

/// A random admissible sheet function for the bundle: a continuous polyline
/// per element, forced to vanish identically on the terminal sub-interval of
/// every dying sheet.
pub fn random_admissible(rng: &mut SplitMix64, bundle: &StepSubgroupBundle) -> SheetFunction {
    let k = bundle.pieces.len();
    let quarter = rat(1, 4);
    let sheets = (0..bundle.ambient.order())
        .map(|g| {
            // nodes: bundle breakpoints plus three quartile nodes per piece
            let mut points: Vec<(Rat, Rat)> = Vec::new();
            for j in 0..=k {
                let b = &bundle.breakpoints[j];
                let exists_left = j > 0 && bundle.pieces[j - 1].contains(&g);
                let exists_right = j < k && bundle.pieces[j].contains(&g);
                let exists_at = bundle.points[j].contains(&g);
                let dying = !exists_at && (exists_left || exists_right);
                let value = if exists_at && !dying {
                    rng.small_rat()
                } else {
                    Rat::zero()
                };
                points.push((b.clone(), value));
                if j < k {
                    let width = &bundle.breakpoints[j + 1] - b;
                    let q1 = b + &(width.clone() * &quarter);
                    let q2 = b + &(width.clone() * &rat(1, 2));
                    let q3 = b + &(width * &rat(3, 4));
                    if bundle.pieces[j].contains(&g) {
                        // zero next to an endpoint where the sheet dies
                        let die_left = !bundle.points[j].contains(&g);
                        let die_right = !bundle.points[j + 1].contains(&g);
                        let v1 = if die_left { Rat::zero() } else { rng.small_rat() };
                        let v3 = if die_right { Rat::zero() } else { rng.small_rat() };
                        points.push((q1, v1));
                        points.push((q2, rng.small_rat()));
                        points.push((q3, v3));
                    } else {
                        points.push((q1, Rat::zero()));
                        points.push((q2, Rat::zero()));
                        points.push((q3, Rat::zero()));
                    }
                }
            }
            Piecewise::from_polyline(&points).expect("nodes span [0,1] in order")
        })
        .collect();
    SheetFunction { sheets }
}
