//! Decomposition of a groupoid into its stability part and principal
//! quotient.
//!
//! The stability groupoid `G' = {g : r(g) = s(g)}` is a bundle of groups over
//! the object set. Quotienting by `g ~ h ⇔ r(g)=r(h), s(g)=s(h)` yields a
//! principal groupoid `Ḡ` with `[g][h] = [gh]`; the class of `g` is the set
//! `G_{s(g)}^{r(g)}`, a torsor under the isotropy group at `s(g)`.
//!
//! No topology object accompanies the quotient: on a finite arrow set the
//! quotient topology is again discrete, so the groupoid structure is all
//! there is to carry.

use crate::action::GroupoidAction;
use crate::group::GroupTable;
use crate::groupoid::{ArrowId, FiniteGroupoid, GroupoidData, ObjectId};
use crate::unionfind::UnionFind;
use std::collections::HashMap;

/// One isotropy group `G_x^x`, with its elements embedded as arrows of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyFiber {
    pub object: ObjectId,
    /// Arrow ids of `G` with both endpoints at `object`, ascending.
    pub arrows: Vec<ArrowId>,
    /// Multiplication table over positions in `arrows`.
    pub table: GroupTable,
}

impl IsotropyFiber {
    pub fn order(&self) -> usize {
        self.arrows.len()
    }

    /// Position of an arrow inside this fiber.
    pub fn position(&self, arrow: ArrowId) -> Option<usize> {
        self.arrows.binary_search(&arrow).ok()
    }
}

/// The stability groupoid viewed as a bundle of groups, one fiber per object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyBundle {
    pub fibers: Vec<IsotropyFiber>,
}

impl IsotropyBundle {
    pub fn fiber(&self, x: ObjectId) -> &IsotropyFiber {
        &self.fibers[x.index()]
    }

    /// Total number of stability arrows.
    pub fn arrow_count(&self) -> usize {
        self.fibers.iter().map(IsotropyFiber::order).sum()
    }

    /// The stability groupoid as a groupoid in its own right, together with
    /// the embedding map from its arrow ids back into `G`.
    pub fn as_groupoid(&self, g: &FiniteGroupoid) -> (FiniteGroupoid, Vec<ArrowId>) {
        let mut embedding: Vec<ArrowId> = self
            .fibers
            .iter()
            .flat_map(|f| f.arrows.iter().copied())
            .collect();
        embedding.sort_unstable();
        let position: HashMap<ArrowId, u32> = embedding
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new as u32))
            .collect();
        let mut data = GroupoidData {
            objects: g.object_count() as u32,
            ..Default::default()
        };
        for (new, &old) in embedding.iter().enumerate() {
            let arrow = g.arrow(old);
            data.arrows.push((new as u32, arrow.src.0, arrow.dst.0));
            data.inverse.push((new as u32, position[&g.inverse(old)]));
        }
        for &a in &embedding {
            for &b in &embedding {
                if g.source(a) == g.range(b) {
                    let ab = g.compose(a, b).expect("stability arrows compose");
                    data.compose.push((position[&a], position[&b], position[&ab]));
                }
            }
        }
        for x in g.objects() {
            data.identity.push((x.0, position[&g.identity(x)]));
        }
        (
            FiniteGroupoid::from_data(&data).expect("stability subgroupoid is structurally sound"),
            embedding,
        )
    }
}

/// Computes the stability groupoid `G'` as a bundle of groups.
///
/// Requires a valid groupoid; each fiber is then a group under composition.
pub fn stability_groupoid(g: &FiniteGroupoid) -> IsotropyBundle {
    let fibers = g
        .objects()
        .map(|x| {
            let arrows = g.fiber_between(x, x);
            let rows: Vec<Vec<usize>> = arrows
                .iter()
                .map(|&a| {
                    arrows
                        .iter()
                        .map(|&b| {
                            let ab = g.compose(a, b).expect("isotropy arrows compose");
                            arrows.binary_search(&ab).expect("isotropy is closed")
                        })
                        .collect()
                })
                .collect();
            IsotropyFiber {
                object: x,
                table: GroupTable::from_rows(&rows)
                    .expect("isotropy fiber of a valid groupoid is a group"),
                arrows,
            }
        })
        .collect();
    IsotropyBundle { fibers }
}

/// The orbit equivalence relation `E(G)` on objects: `x ~ y` iff some arrow
/// joins them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    class_index: Vec<u32>,
    classes: Vec<Vec<ObjectId>>,
}

impl OrbitPartition {
    pub fn classes(&self) -> &[Vec<ObjectId>] {
        &self.classes
    }

    pub fn class_of(&self, x: ObjectId) -> usize {
        self.class_index[x.index()] as usize
    }

    pub fn same_class(&self, x: ObjectId, y: ObjectId) -> bool {
        self.class_index[x.index()] == self.class_index[y.index()]
    }
}

/// Orbit partition by union-find over arrow endpoints. Classes are listed by
/// ascending minimal object, members ascending.
pub fn orbit_partition(g: &FiniteGroupoid) -> OrbitPartition {
    let mut uf = UnionFind::new(g.object_count());
    for a in g.arrow_ids() {
        uf.union(g.source(a).index(), g.range(a).index());
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut class_index = vec![u32::MAX; g.object_count()];
    let mut classes: Vec<Vec<ObjectId>> = Vec::new();
    for x in 0..g.object_count() {
        let root = uf.find(x);
        let idx = match roots.iter().position(|&r| r == root) {
            Some(i) => i,
            None => {
                roots.push(root);
                classes.push(Vec::new());
                roots.len() - 1
            }
        };
        class_index[x] = idx as u32;
        classes[idx].push(ObjectId(x as u32));
    }
    OrbitPartition {
        class_index,
        classes,
    }
}

/// The principal quotient `Ḡ` with its class map and chosen representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalQuotient {
    /// The quotient groupoid; its objects are those of `G`.
    pub groupoid: FiniteGroupoid,
    /// `G`-arrow id -> quotient arrow id.
    pub class_of: Vec<u32>,
    /// Quotient arrow id -> representative `G`-arrow (minimal id by default).
    pub representative: Vec<ArrowId>,
}

impl PrincipalQuotient {
    pub fn class(&self, g_arrow: ArrowId) -> ArrowId {
        ArrowId(self.class_of[g_arrow.index()])
    }

    pub fn representative(&self, class: ArrowId) -> ArrowId {
        self.representative[class.index()]
    }

    /// Members of a class, ascending by arrow id.
    pub fn members(&self, class: ArrowId, g: &FiniteGroupoid) -> Vec<ArrowId> {
        let rep = self.representative(class);
        g.fiber_between(g.source(rep), g.range(rep))
    }

    /// Same quotient with a different representative choice; each entry must
    /// belong to the class it represents.
    pub fn with_representatives(&self, reps: Vec<ArrowId>) -> PrincipalQuotient {
        assert_eq!(reps.len(), self.representative.len());
        for (class, &rep) in reps.iter().enumerate() {
            assert_eq!(
                self.class_of[rep.index()] as usize, class,
                "representative must lie in its class"
            );
        }
        PrincipalQuotient {
            groupoid: self.groupoid.clone(),
            class_of: self.class_of.clone(),
            representative: reps,
        }
    }
}

/// Builds the principal quotient and verifies exhaustively that composition
/// of classes is well defined. A failure of that check cannot happen for a
/// valid groupoid and is reported as a panic (internal inconsistency).
pub fn principal_quotient(g: &FiniteGroupoid) -> PrincipalQuotient {
    // Classes keyed by (source, range); ordered by minimal member id, which
    // is also the default representative.
    let mut key_to_class: HashMap<(ObjectId, ObjectId), u32> = HashMap::new();
    let mut representative: Vec<ArrowId> = Vec::new();
    let mut class_of = vec![u32::MAX; g.arrow_count()];
    for a in g.arrow_ids() {
        let key = (g.source(a), g.range(a));
        let class = *key_to_class.entry(key).or_insert_with(|| {
            representative.push(a);
            (representative.len() - 1) as u32
        });
        class_of[a.index()] = class;
    }

    let mut data = GroupoidData {
        objects: g.object_count() as u32,
        ..Default::default()
    };
    for (class, &rep) in representative.iter().enumerate() {
        let class = class as u32;
        data.arrows.push((class, g.source(rep).0, g.range(rep).0));
        data.inverse.push((class, class_of[g.inverse(rep).index()]));
    }
    for (c1, &rep1) in representative.iter().enumerate() {
        for (c2, &rep2) in representative.iter().enumerate() {
            if g.source(rep1) == g.range(rep2) {
                let composite = g.compose(rep1, rep2).expect("representatives compose");
                data.compose
                    .push((c1 as u32, c2 as u32, class_of[composite.index()]));
            }
        }
    }
    for x in g.objects() {
        data.identity.push((x.0, class_of[g.identity(x).index()]));
    }
    let quotient = PrincipalQuotient {
        groupoid: FiniteGroupoid::from_data(&data).expect("quotient tables are structurally sound"),
        class_of,
        representative,
    };
    assert!(
        verify_quotient_well_defined(g, &quotient),
        "quotient composition is not well defined: internal inconsistency"
    );
    quotient
}

/// Exhaustive well-definedness check: every composable pair of `G`-arrows
/// lands in the class composite of its classes.
pub fn verify_quotient_well_defined(g: &FiniteGroupoid, q: &PrincipalQuotient) -> bool {
    g.composable_pairs().into_iter().all(|(a, b)| {
        let ab = g.compose(a, b).expect("listed pair composes");
        q.groupoid.compose(q.class(a), q.class(b)) == Some(q.class(ab))
    })
}

/// The class `[g] = G_{s(g)}^{r(g)}` of an arrow, ascending by id.
pub fn class_of(g: &FiniteGroupoid, arrow: ArrowId) -> Vec<ArrowId> {
    g.fiber_between(g.source(arrow), g.range(arrow))
}

/// The right-translation action of the stability groupoid on the arrows of
/// `G`: the space is `G`, anchored by the source map, with `g·h = g∘h` for
/// stability arrows `h` at `s(g)`. Free for every valid groupoid.
pub fn isotropy_action(g: &FiniteGroupoid) -> GroupoidAction {
    let bundle = stability_groupoid(g);
    let (actor, embedding) = bundle.as_groupoid(g);
    let anchor: Vec<ObjectId> = g.arrow_ids().map(|a| g.source(a)).collect();
    let g = g.clone();
    GroupoidAction::from_fn(actor, anchor, move |z, h| {
        g.compose(ArrowId(z as u32), embedding[h.index()])
            .expect("translation by a stability arrow at the source composes")
            .index()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        action_groupoid, disjoint_union, group_bundle, pair_groupoid, product_groupoid,
    };
    use crate::group::GroupTable;

    fn sign_action_groupoid() -> FiniteGroupoid {
        let z4 = GroupTable::cyclic(4);
        let act: Vec<Vec<usize>> = (0..2)
            .map(|x| (0..4).map(|h| x ^ (h % 2)).collect())
            .collect();
        action_groupoid(&z4, 2, &act).unwrap()
    }

    #[test]
    fn stability_of_pair_groupoid_is_trivial() {
        let g = pair_groupoid(3);
        let bundle = stability_groupoid(&g);
        for fiber in &bundle.fibers {
            assert_eq!(fiber.order(), 1);
        }
    }

    #[test]
    fn stability_of_bundle_is_everything() {
        let g = group_bundle(&[GroupTable::cyclic(2), GroupTable::symmetric3()]);
        let bundle = stability_groupoid(&g);
        assert_eq!(bundle.arrow_count(), g.arrow_count());
        let (sub, embedding) = bundle.as_groupoid(&g);
        assert_eq!(sub.arrow_count(), g.arrow_count());
        assert_eq!(embedding.len(), g.arrow_count());
        assert_eq!(bundle.fibers[0].table.isomorphism_label(), "Z2");
        assert_eq!(bundle.fibers[1].table.isomorphism_label(), "S3");
    }

    #[test]
    fn stability_of_sign_action_is_z2_everywhere() {
        // oracle: arrows with r = s, enumerated directly
        let g = sign_action_groupoid();
        let direct: Vec<usize> = g
            .objects()
            .map(|x| {
                g.arrow_ids()
                    .filter(|&a| g.source(a) == x && g.range(a) == x)
                    .count()
            })
            .collect();
        assert_eq!(direct, vec![2, 2]);
        let bundle = stability_groupoid(&g);
        for fiber in &bundle.fibers {
            assert_eq!(fiber.table.isomorphism_label(), "Z2");
        }
    }

    #[test]
    fn orbit_partitions() {
        let g = pair_groupoid(4);
        assert_eq!(orbit_partition(&g).classes().len(), 1);

        let bundle = group_bundle(&[
            GroupTable::cyclic(2),
            GroupTable::cyclic(3),
            GroupTable::trivial(),
        ]);
        assert_eq!(orbit_partition(&bundle).classes().len(), 3);

        let union = disjoint_union(&pair_groupoid(2), &group_bundle(&[GroupTable::cyclic(2)]));
        let orbits = orbit_partition(&union);
        assert_eq!(
            orbits.classes(),
            &[
                vec![ObjectId(0), ObjectId(1)],
                vec![ObjectId(2)]
            ]
        );
        assert!(orbits.same_class(ObjectId(0), ObjectId(1)));
        assert!(!orbits.same_class(ObjectId(1), ObjectId(2)));
    }

    #[test]
    fn quotient_of_principal_groupoid_is_bijective() {
        let g = pair_groupoid(3);
        let q = principal_quotient(&g);
        assert_eq!(q.groupoid.arrow_count(), g.arrow_count());
        assert_eq!(q.groupoid, g);
        assert!(verify_quotient_well_defined(&g, &q));
    }

    #[test]
    fn quotient_of_group_bundle_is_identities() {
        let g = group_bundle(&[GroupTable::cyclic(2)]);
        let q = principal_quotient(&g);
        assert_eq!(q.groupoid.arrow_count(), 1);
        assert!(q.groupoid.is_identity(ArrowId(0)));
    }

    #[test]
    fn quotient_of_pair_times_bundle() {
        let z2 = GroupTable::cyclic(2);
        let g = product_groupoid(&pair_groupoid(2), &group_bundle(&[z2.clone(), z2]));
        let q = principal_quotient(&g);
        // every class has two members; 16 arrows collapse to 8
        assert_eq!(q.groupoid.arrow_count(), 8);
        for class in q.groupoid.arrow_ids() {
            assert_eq!(q.members(class, &g).len(), 2);
        }
        // the quotient is principal and splits into two orbit components,
        // each a pair groupoid on two objects
        let orbits = orbit_partition(&q.groupoid);
        assert_eq!(orbits.classes().len(), 2);
        for class in orbits.classes() {
            assert_eq!(class.len(), 2);
            for &x in class {
                assert_eq!(q.groupoid.fiber_between(x, x).len(), 1);
                for &y in class {
                    assert_eq!(q.groupoid.fiber_between(x, y).len(), 1);
                }
            }
        }
        assert_eq!(q.groupoid.validate(), Default::default());
    }

    #[test]
    fn quotient_is_always_principal_and_sized_by_orbits() {
        for g in [
            sign_action_groupoid(),
            product_groupoid(&pair_groupoid(2), &group_bundle(&[GroupTable::cyclic(4)])),
            disjoint_union(&pair_groupoid(2), &group_bundle(&[GroupTable::symmetric3()])),
        ] {
            let q = principal_quotient(&g);
            assert_eq!(q.groupoid.validate(), Default::default());
            for x in q.groupoid.objects() {
                assert_eq!(q.groupoid.fiber_between(x, x).len(), 1);
            }
            // |Ḡ^x| equals the orbit size of x
            let orbits = orbit_partition(&g);
            for x in g.objects() {
                let orbit_size = orbits.classes()[orbits.class_of(x)].len();
                assert_eq!(q.groupoid.range_fiber(x).len(), orbit_size);
            }
            // class decomposition of range fibers:
            // |G^x| = Σ over classes in Ḡ^x of the isotropy order at the source
            for x in g.objects() {
                let total: usize = q
                    .groupoid
                    .range_fiber(x)
                    .iter()
                    .map(|&c| {
                        let rep = q.representative(c);
                        g.fiber_between(g.source(rep), g.source(rep)).len()
                    })
                    .sum();
                assert_eq!(total, g.range_fiber(x).len());
            }
        }
    }

    #[test]
    fn class_map_is_a_homomorphism() {
        let g = sign_action_groupoid();
        let q = principal_quotient(&g);
        for (a, b) in g.composable_pairs() {
            let ab = g.compose(a, b).unwrap();
            assert_eq!(
                q.groupoid.compose(q.class(a), q.class(b)),
                Some(q.class(ab))
            );
        }
        for a in g.arrow_ids() {
            assert_eq!(q.groupoid.inverse(q.class(a)), q.class(g.inverse(a)));
        }
        for x in g.objects() {
            assert_eq!(q.groupoid.identity(x), q.class(g.identity(x)));
        }
    }

    #[test]
    fn classes_are_isotropy_torsors() {
        let g = sign_action_groupoid();
        for a in g.arrow_ids() {
            let class = class_of(&g, a);
            let isotropy = g.fiber_between(g.source(a), g.source(a));
            assert_eq!(class.len(), isotropy.len());
        }
    }

    #[test]
    fn isotropy_action_is_free_with_class_orbits() {
        let g = sign_action_groupoid();
        let action = isotropy_action(&g);
        assert!(action.verify().is_empty());
        let report = action.verify_free_proper();
        assert!(report.free);

        // orbits of the translation action coincide with the classes
        let q = principal_quotient(&g);
        let orbits = action.orbits();
        assert_eq!(orbits.len(), q.groupoid.arrow_count());
        for orbit in &orbits {
            assert_eq!(orbit.len(), 2);
            let class = q.class(ArrowId(orbit[0] as u32));
            for &member in orbit {
                assert_eq!(q.class(ArrowId(member as u32)), class);
            }
        }

        // pair groupoid: all orbits are singletons
        let pair = pair_groupoid(3);
        let action = isotropy_action(&pair);
        assert!(action.verify_free_proper().free);
        assert!(action.orbits().iter().all(|o| o.len() == 1));
    }
}
