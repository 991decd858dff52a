//! Standard groupoid constructors.

use crate::group::{GroupTable, GroupTableError};
use crate::groupoid::{ArrowId, FiniteGroupoid, GroupoidData, ObjectId};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("pair groupoid needs at least one object")]
    EmptyPair,
    #[error("fiber {index} is not a group: {source}")]
    BadFiber {
        index: usize,
        source: GroupTableError,
    },
    #[error("action table has wrong shape")]
    ActionShape,
    #[error("action moves point {point} out of range under element {element}")]
    ActionOutOfRange { point: usize, element: usize },
    #[error("identity acts nontrivially on point {point}")]
    ActionIdentity { point: usize },
    #[error("action incompatible with the group law at (point {point}, {a}, {b})")]
    ActionCompatibility { point: usize, a: usize, b: usize },
}

fn build(data: GroupoidData) -> FiniteGroupoid {
    FiniteGroupoid::from_data(&data).expect("constructor emits structurally sound tables")
}

/// The pair groupoid on `n` objects: one arrow `(x, y)` for every ordered
/// pair, with range `x`, source `y`, and `(x,y)∘(y,z) = (x,z)`. Arrow ids are
/// row-major: `id(x, y) = x·n + y`.
pub fn pair_groupoid(n: usize) -> FiniteGroupoid {
    assert!(n >= 1, "pair groupoid needs at least one object");
    let n32 = n as u32;
    let id = |x: u32, y: u32| x * n32 + y;
    let mut data = GroupoidData {
        objects: n32,
        ..Default::default()
    };
    for x in 0..n32 {
        for y in 0..n32 {
            data.arrows.push((id(x, y), y, x));
            data.inverse.push((id(x, y), id(y, x)));
        }
        data.identity.push((x, id(x, x)));
    }
    for x in 0..n32 {
        for y in 0..n32 {
            for z in 0..n32 {
                data.compose.push((id(x, y), id(y, z), id(x, z)));
            }
        }
    }
    build(data)
}

/// Checked variant of [`pair_groupoid`] for manifest input.
pub fn try_pair_groupoid(n: usize) -> Result<FiniteGroupoid, ConstructError> {
    if n == 0 {
        return Err(ConstructError::EmptyPair);
    }
    Ok(pair_groupoid(n))
}

/// A bundle of groups: one object per fiber, arrows only within fibers,
/// composition given by each group's multiplication. The empty sequence
/// yields the empty groupoid.
pub fn group_bundle(fibers: &[GroupTable]) -> FiniteGroupoid {
    let mut data = GroupoidData {
        objects: fibers.len() as u32,
        ..Default::default()
    };
    let mut offset = 0u32;
    for (x, table) in fibers.iter().enumerate() {
        let x = x as u32;
        let order = table.order();
        for a in 0..order {
            let id = offset + a as u32;
            data.arrows.push((id, x, x));
            data.inverse.push((id, offset + table.inverse(a) as u32));
            for b in 0..order {
                data.compose
                    .push((id, offset + b as u32, offset + table.mul(a, b) as u32));
            }
        }
        data.identity.push((x, offset + table.identity() as u32));
        offset += order as u32;
    }
    build(data)
}

/// Builds a group bundle from raw multiplication tables, rejecting any fiber
/// that is not a group (with the failing triple in the error).
pub fn try_group_bundle(raw: &[Vec<Vec<usize>>]) -> Result<FiniteGroupoid, ConstructError> {
    let fibers: Vec<GroupTable> = raw
        .iter()
        .enumerate()
        .map(|(index, rows)| {
            GroupTable::from_rows(rows).map_err(|source| ConstructError::BadFiber { index, source })
        })
        .collect::<Result<_, _>>()?;
    Ok(group_bundle(&fibers))
}

/// The action groupoid of a right action of a group on a finite set.
///
/// `act[x][h]` is `x·h`. Arrows are pairs `(x, h)` with range `x` and source
/// `x·h` (id `x·|H| + h`); `(x, h)∘(x·h, k) = (x, hk)`.
pub fn action_groupoid(
    group: &GroupTable,
    points: usize,
    act: &[Vec<usize>],
) -> Result<FiniteGroupoid, ConstructError> {
    let order = group.order();
    if act.len() != points || act.iter().any(|row| row.len() != order) {
        return Err(ConstructError::ActionShape);
    }
    for (point, row) in act.iter().enumerate() {
        for (element, &image) in row.iter().enumerate() {
            if image >= points {
                return Err(ConstructError::ActionOutOfRange { point, element });
            }
        }
    }
    for point in 0..points {
        if act[point][group.identity()] != point {
            return Err(ConstructError::ActionIdentity { point });
        }
        for a in 0..order {
            for b in 0..order {
                if act[act[point][a]][b] != act[point][group.mul(a, b)] {
                    return Err(ConstructError::ActionCompatibility { point, a, b });
                }
            }
        }
    }

    let id = |x: usize, h: usize| (x * order + h) as u32;
    let mut data = GroupoidData {
        objects: points as u32,
        ..Default::default()
    };
    for x in 0..points {
        for h in 0..order {
            data.arrows.push((id(x, h), act[x][h] as u32, x as u32));
            data.inverse
                .push((id(x, h), id(act[x][h], group.inverse(h))));
            for k in 0..order {
                data.compose
                    .push((id(x, h), id(act[x][h], k), id(x, group.mul(h, k))));
            }
        }
        data.identity.push((x as u32, id(x, group.identity())));
    }
    Ok(build(data))
}

/// Componentwise product over the product object set. Object `(x1, x2)` is
/// numbered `x1·n2 + x2`; arrow `(a1, a2)` is numbered `a1·|G2| + a2`.
pub fn product_groupoid(g1: &FiniteGroupoid, g2: &FiniteGroupoid) -> FiniteGroupoid {
    let n2 = g2.object_count() as u32;
    let m2 = g2.arrow_count() as u32;
    let obj = |x1: ObjectId, x2: ObjectId| x1.0 * n2 + x2.0;
    let arr = |a1: ArrowId, a2: ArrowId| a1.0 * m2 + a2.0;
    let mut data = GroupoidData {
        objects: g1.object_count() as u32 * n2,
        ..Default::default()
    };
    for a1 in g1.arrow_ids() {
        for a2 in g2.arrow_ids() {
            let id = arr(a1, a2);
            data.arrows.push((
                id,
                obj(g1.source(a1), g2.source(a2)),
                obj(g1.range(a1), g2.range(a2)),
            ));
            data.inverse.push((id, arr(g1.inverse(a1), g2.inverse(a2))));
        }
    }
    for (a1, b1) in g1.composable_pairs() {
        let c1 = g1.compose(a1, b1).expect("listed pair composes");
        for (a2, b2) in g2.composable_pairs() {
            let c2 = g2.compose(a2, b2).expect("listed pair composes");
            data.compose.push((arr(a1, a2), arr(b1, b2), arr(c1, c2)));
        }
    }
    for x1 in g1.objects() {
        for x2 in g2.objects() {
            data.identity
                .push((obj(x1, x2), arr(g1.identity(x1), g2.identity(x2))));
        }
    }
    build(data)
}

/// Disjoint union: objects and arrows of `g2` are shifted past those of `g1`.
pub fn disjoint_union(g1: &FiniteGroupoid, g2: &FiniteGroupoid) -> FiniteGroupoid {
    let obj_shift = g1.object_count() as u32;
    let arr_shift = g1.arrow_count() as u32;
    let mut data = g1.to_data();
    data.objects += g2.object_count() as u32;
    let d2 = g2.to_data();
    data.arrows.extend(
        d2.arrows
            .iter()
            .map(|&(id, s, r)| (id + arr_shift, s + obj_shift, r + obj_shift)),
    );
    data.compose.extend(
        d2.compose
            .iter()
            .map(|&(a, b, c)| (a + arr_shift, b + arr_shift, c + arr_shift)),
    );
    data.inverse.extend(
        d2.inverse
            .iter()
            .map(|&(a, b)| (a + arr_shift, b + arr_shift)),
    );
    data.identity.extend(
        d2.identity
            .iter()
            .map(|&(x, a)| (x + obj_shift, a + arr_shift)),
    );
    build(data)
}

/// The empty groupoid: no objects, no arrows.
pub fn empty_groupoid() -> FiniteGroupoid {
    build(GroupoidData::default())
}

/// One object, one (identity) arrow.
pub fn trivial_groupoid() -> FiniteGroupoid {
    pair_groupoid(1)
}
