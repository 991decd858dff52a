//! Finite groupoids as explicit arrow tables.
//!
//! A groupoid over a finite object set `X` is stored by its arrow list
//! (each arrow has a source and a range), a partial composition table, an
//! inverse table, and an identity arrow per object. Composition `a∘b` is
//! defined exactly when `s(a) = r(b)`; fibers are written `G^x` (range x),
//! `G_x` (source x) and `G_x^y = G_x ∩ G^y`.
//!
//! Structural soundness (all ids in range, tables total where required) is
//! enforced at construction. The groupoid axioms themselves are checked by
//! [`FiniteGroupoid::validate`], which reports every violation with a
//! witness, so deliberately broken tables can be represented and diagnosed.

use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub u32);

impl ObjectId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ArrowId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An arrow `g` with source `s(g) = src` and range `r(g) = dst`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub src: ObjectId,
    pub dst: ObjectId,
}

/// Raw groupoid tables as they appear in manifests, before any checking.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupoidData {
    pub objects: u32,
    /// `(id, src, dst)` triples; ids must form `0..arrows.len()`.
    pub arrows: Vec<(u32, u32, u32)>,
    /// `(a, b, ab)` entries of the partial composition table.
    pub compose: Vec<(u32, u32, u32)>,
    /// `(a, inverse_of_a)` pairs; must be total.
    pub inverse: Vec<(u32, u32)>,
    /// `(object, identity_arrow)` pairs; must be total.
    pub identity: Vec<(u32, u32)>,
}

/// Structural table defects: dangling or duplicate references. These are
/// reported separately from groupoid axiom violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuralIssue {
    ArrowIdsNotDense,
    ArrowEndpointOutOfRange { arrow: u32 },
    ComposeRefOutOfRange { entry: (u32, u32, u32) },
    DuplicateComposeEntry { left: u32, right: u32 },
    InverseRefOutOfRange { entry: (u32, u32) },
    DuplicateInverseEntry { arrow: u32 },
    MissingInverseEntry { arrow: u32 },
    IdentityRefOutOfRange { entry: (u32, u32) },
    DuplicateIdentityEntry { object: u32 },
    MissingIdentityEntry { object: u32 },
}

impl fmt::Display for StructuralIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ArrowIdsNotDense => write!(f, "arrow ids do not form 0..n"),
            Self::ArrowEndpointOutOfRange { arrow } => {
                write!(f, "arrow {arrow} has an endpoint outside the object set")
            }
            Self::ComposeRefOutOfRange { entry } => {
                write!(f, "compose entry {entry:?} references an unknown arrow id")
            }
            Self::DuplicateComposeEntry { left, right } => {
                write!(f, "duplicate compose entry for ({left}, {right})")
            }
            Self::InverseRefOutOfRange { entry } => {
                write!(f, "inverse entry {entry:?} references an unknown arrow id")
            }
            Self::DuplicateInverseEntry { arrow } => {
                write!(f, "duplicate inverse entry for arrow {arrow}")
            }
            Self::MissingInverseEntry { arrow } => {
                write!(f, "no inverse entry for arrow {arrow}")
            }
            Self::IdentityRefOutOfRange { entry } => {
                write!(f, "identity entry {entry:?} is out of range")
            }
            Self::DuplicateIdentityEntry { object } => {
                write!(f, "duplicate identity entry for object {object}")
            }
            Self::MissingIdentityEntry { object } => {
                write!(f, "no identity entry for object {object}")
            }
        }
    }
}

/// Groupoid axiom violations, each with a witnessing arrow or tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// compose(a, b) is present although s(a) != r(b).
    ComposeNotComposable { left: ArrowId, right: ArrowId },
    /// s(a) = r(b) but compose(a, b) is missing.
    ComposeMissing { left: ArrowId, right: ArrowId },
    /// r(ab) != r(a) or s(ab) != s(b).
    CompositeEndpoints { left: ArrowId, right: ArrowId, result: ArrowId },
    /// (ab)c != a(bc) on a composable triple.
    NotAssociative { a: ArrowId, b: ArrowId, c: ArrowId },
    /// identity(x) does not have src = dst = x.
    IdentityEndpoints { object: ObjectId, arrow: ArrowId },
    /// e·g != g or g·e != g for the relevant identity e.
    IdentityNotNeutral { arrow: ArrowId, left_side: bool },
    /// a·inv(a) != identity(r(a)) or inv(a)·a != identity(s(a)),
    /// including the case where the product is not even defined.
    InverseLaw { arrow: ArrowId, left_side: bool },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ComposeNotComposable { left, right } => {
                write!(f, "compose({left}, {right}) defined although s({left}) != r({right})")
            }
            Self::ComposeMissing { left, right } => {
                write!(f, "compose({left}, {right}) missing although s({left}) = r({right})")
            }
            Self::CompositeEndpoints { left, right, result } => {
                write!(f, "compose({left}, {right}) = {result} has wrong endpoints")
            }
            Self::NotAssociative { a, b, c } => {
                write!(f, "associativity fails on ({a}, {b}, {c})")
            }
            Self::IdentityEndpoints { object, arrow } => {
                write!(f, "identity({object}) = {arrow} is not an endo-arrow at {object}")
            }
            Self::IdentityNotNeutral { arrow, left_side } => {
                if *left_side {
                    write!(f, "identity(r({arrow}))·{arrow} != {arrow}")
                } else {
                    write!(f, "{arrow}·identity(s({arrow})) != {arrow}")
                }
            }
            Self::InverseLaw { arrow, left_side } => {
                if *left_side {
                    write!(f, "{arrow}·inv({arrow}) != identity(r({arrow}))")
                } else {
                    write!(f, "inv({arrow})·{arrow} != identity(s({arrow}))")
                }
            }
        }
    }
}

/// Outcome of a full axiom check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub structural: Vec<StructuralIssue>,
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.structural.is_empty() && self.violations.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct FiniteGroupoid {
    object_count: u32,
    arrows: Vec<Arrow>,
    compose: HashMap<(u32, u32), u32>,
    inverse: Vec<u32>,
    identity: Vec<u32>,
    range_fibers: Vec<Vec<ArrowId>>,
    source_fibers: Vec<Vec<ArrowId>>,
}

impl PartialEq for FiniteGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.object_count == other.object_count
            && self.arrows == other.arrows
            && self.compose == other.compose
            && self.inverse == other.inverse
            && self.identity == other.identity
    }
}

impl Eq for FiniteGroupoid {}

impl FiniteGroupoid {
    /// Builds a groupoid from raw tables, rejecting structural defects.
    /// The groupoid axioms are not enforced here; see [`Self::validate`].
    pub fn from_data(data: &GroupoidData) -> Result<Self, Vec<StructuralIssue>> {
        let mut issues = Vec::new();
        let n_arrows = data.arrows.len();
        let n_objects = data.objects as usize;

        let mut arrows = vec![None; n_arrows];
        let mut ids_dense = true;
        for &(id, src, dst) in &data.arrows {
            let slot = arrows.get_mut(id as usize);
            match slot {
                Some(slot @ None) => {
                    *slot = Some(Arrow {
                        src: ObjectId(src),
                        dst: ObjectId(dst),
                    })
                }
                _ => ids_dense = false,
            }
            if src as usize >= n_objects || dst as usize >= n_objects {
                issues.push(StructuralIssue::ArrowEndpointOutOfRange { arrow: id });
            }
        }
        if !ids_dense || arrows.iter().any(Option::is_none) {
            issues.push(StructuralIssue::ArrowIdsNotDense);
        }

        let in_range = |id: u32| (id as usize) < n_arrows;
        let mut compose = HashMap::new();
        for &(a, b, c) in &data.compose {
            if !in_range(a) || !in_range(b) || !in_range(c) {
                issues.push(StructuralIssue::ComposeRefOutOfRange { entry: (a, b, c) });
                continue;
            }
            if compose.insert((a, b), c).is_some() {
                issues.push(StructuralIssue::DuplicateComposeEntry { left: a, right: b });
            }
        }

        let mut inverse = vec![None; n_arrows];
        for &(a, b) in &data.inverse {
            if !in_range(a) || !in_range(b) {
                issues.push(StructuralIssue::InverseRefOutOfRange { entry: (a, b) });
                continue;
            }
            if inverse[a as usize].replace(b).is_some() {
                issues.push(StructuralIssue::DuplicateInverseEntry { arrow: a });
            }
        }
        for (a, slot) in inverse.iter().enumerate() {
            if slot.is_none() {
                issues.push(StructuralIssue::MissingInverseEntry { arrow: a as u32 });
            }
        }

        let mut identity = vec![None; n_objects];
        for &(x, a) in &data.identity {
            if x as usize >= n_objects || !in_range(a) {
                issues.push(StructuralIssue::IdentityRefOutOfRange { entry: (x, a) });
                continue;
            }
            if identity[x as usize].replace(a).is_some() {
                issues.push(StructuralIssue::DuplicateIdentityEntry { object: x });
            }
        }
        for (x, slot) in identity.iter().enumerate() {
            if slot.is_none() {
                issues.push(StructuralIssue::MissingIdentityEntry { object: x as u32 });
            }
        }

        if !issues.is_empty() {
            return Err(issues);
        }

        let arrows: Vec<Arrow> = arrows.into_iter().map(Option::unwrap).collect();
        let mut range_fibers = vec![Vec::new(); n_objects];
        let mut source_fibers = vec![Vec::new(); n_objects];
        for (id, arrow) in arrows.iter().enumerate() {
            range_fibers[arrow.dst.index()].push(ArrowId(id as u32));
            source_fibers[arrow.src.index()].push(ArrowId(id as u32));
        }

        Ok(Self {
            object_count: data.objects,
            arrows,
            compose,
            inverse: inverse.into_iter().map(Option::unwrap).collect(),
            identity: identity.into_iter().map(Option::unwrap).collect(),
            range_fibers,
            source_fibers,
        })
    }

    /// Reconstructs the raw tables (canonical: compose entries sorted).
    pub fn to_data(&self) -> GroupoidData {
        let mut compose: Vec<(u32, u32, u32)> =
            self.compose.iter().map(|(&(a, b), &c)| (a, b, c)).collect();
        compose.sort_unstable();
        GroupoidData {
            objects: self.object_count,
            arrows: self
                .arrows
                .iter()
                .enumerate()
                .map(|(id, a)| (id as u32, a.src.0, a.dst.0))
                .collect(),
            compose,
            inverse: self
                .inverse
                .iter()
                .enumerate()
                .map(|(a, &b)| (a as u32, b))
                .collect(),
            identity: self
                .identity
                .iter()
                .enumerate()
                .map(|(x, &a)| (x as u32, a))
                .collect(),
        }
    }

    pub fn object_count(&self) -> usize {
        self.object_count as usize
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> {
        (0..self.object_count).map(ObjectId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len() as u32).map(ArrowId)
    }

    pub fn arrow(&self, id: ArrowId) -> Arrow {
        self.arrows[id.index()]
    }

    pub fn source(&self, id: ArrowId) -> ObjectId {
        self.arrows[id.index()].src
    }

    pub fn range(&self, id: ArrowId) -> ObjectId {
        self.arrows[id.index()].dst
    }

    /// `a∘b` when `s(a) = r(b)` and the table has the entry.
    pub fn compose(&self, a: ArrowId, b: ArrowId) -> Option<ArrowId> {
        self.compose.get(&(a.0, b.0)).copied().map(ArrowId)
    }

    pub fn inverse(&self, a: ArrowId) -> ArrowId {
        ArrowId(self.inverse[a.index()])
    }

    pub fn identity(&self, x: ObjectId) -> ArrowId {
        ArrowId(self.identity[x.index()])
    }

    pub fn is_identity(&self, a: ArrowId) -> bool {
        let arrow = self.arrow(a);
        arrow.src == arrow.dst && self.identity(arrow.src) == a
    }

    /// Range fiber `G^x`, ascending by arrow id.
    pub fn range_fiber(&self, x: ObjectId) -> &[ArrowId] {
        &self.range_fibers[x.index()]
    }

    /// Source fiber `G_x`, ascending by arrow id.
    pub fn source_fiber(&self, x: ObjectId) -> &[ArrowId] {
        &self.source_fibers[x.index()]
    }

    /// `G_src^rng`: arrows with the given source and range.
    pub fn fiber_between(&self, src: ObjectId, rng: ObjectId) -> Vec<ArrowId> {
        self.source_fibers[src.index()]
            .iter()
            .copied()
            .filter(|&a| self.range(a) == rng)
            .collect()
    }

    /// Exhaustive axiom check; the report is empty exactly for valid groupoids.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.arrows.len() as u32;

        // Composition: defined exactly on composable pairs, with correct endpoints.
        for a in 0..n {
            for b in 0..n {
                let composable = self.source(ArrowId(a)) == self.range(ArrowId(b));
                match self.compose(ArrowId(a), ArrowId(b)) {
                    Some(_) if !composable => {
                        report.violations.push(AxiomViolation::ComposeNotComposable {
                            left: ArrowId(a),
                            right: ArrowId(b),
                        });
                    }
                    Some(ab) => {
                        if self.range(ab) != self.range(ArrowId(a))
                            || self.source(ab) != self.source(ArrowId(b))
                        {
                            report.violations.push(AxiomViolation::CompositeEndpoints {
                                left: ArrowId(a),
                                right: ArrowId(b),
                                result: ab,
                            });
                        }
                    }
                    None if composable => {
                        report.violations.push(AxiomViolation::ComposeMissing {
                            left: ArrowId(a),
                            right: ArrowId(b),
                        });
                    }
                    None => {}
                }
            }
        }

        // Associativity over all composable triples.
        for a in self.arrow_ids() {
            for &b in self.range_fiber(self.source(a)) {
                let Some(ab) = self.compose(a, b) else { continue };
                for &c in self.range_fiber(self.source(b)) {
                    let Some(bc) = self.compose(b, c) else { continue };
                    if self.compose(ab, c) != self.compose(a, bc) {
                        report
                            .violations
                            .push(AxiomViolation::NotAssociative { a, b, c });
                    }
                }
            }
        }

        // Identities: endo-arrows that are neutral for composition.
        for x in self.objects() {
            let e = self.identity(x);
            let arrow = self.arrow(e);
            if arrow.src != x || arrow.dst != x {
                report
                    .violations
                    .push(AxiomViolation::IdentityEndpoints { object: x, arrow: e });
            }
        }
        for g in self.arrow_ids() {
            let e_left = self.identity(self.range(g));
            if self.compose(e_left, g) != Some(g) {
                report.violations.push(AxiomViolation::IdentityNotNeutral {
                    arrow: g,
                    left_side: true,
                });
            }
            let e_right = self.identity(self.source(g));
            if self.compose(g, e_right) != Some(g) {
                report.violations.push(AxiomViolation::IdentityNotNeutral {
                    arrow: g,
                    left_side: false,
                });
            }
        }

        // Inverses: g·inv(g) and inv(g)·g are the appropriate identities.
        for g in self.arrow_ids() {
            let inv = self.inverse(g);
            if self.compose(g, inv) != Some(self.identity(self.range(g))) {
                report.violations.push(AxiomViolation::InverseLaw {
                    arrow: g,
                    left_side: true,
                });
            }
            if self.compose(inv, g) != Some(self.identity(self.source(g))) {
                report.violations.push(AxiomViolation::InverseLaw {
                    arrow: g,
                    left_side: false,
                });
            }
        }

        report
    }

    /// Composable pairs `(a, b)` with `s(a) = r(b)`, in lexicographic order.
    pub fn composable_pairs(&self) -> Vec<(ArrowId, ArrowId)> {
        let mut pairs = Vec::new();
        for a in self.arrow_ids() {
            for &b in self.range_fiber(self.source(a)) {
                pairs.push((a, b));
            }
        }
        pairs.sort_unstable();
        pairs
    }
}

/// Validates raw tables end to end: structural defects first, then (when the
/// tables are structurally sound) the groupoid axioms.
pub fn validate_data(data: &GroupoidData) -> ValidationReport {
    match FiniteGroupoid::from_data(data) {
        Ok(groupoid) => groupoid.validate(),
        Err(structural) => ValidationReport {
            structural,
            violations: Vec::new(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::pair_groupoid;

    #[test]
    fn structural_issues_are_distinct_from_axioms() {
        let mut data = pair_groupoid(2).to_data();
        data.compose.push((0, 1, 99));
        let report = validate_data(&data);
        assert_eq!(
            report.structural,
            vec![StructuralIssue::ComposeRefOutOfRange { entry: (0, 1, 99) }]
        );
        assert!(report.violations.is_empty());
    }

    #[test]
    fn redirected_inverse_is_reported_with_witness() {
        // pair groupoid over 3 objects with one inverse entry redirected
        let g = pair_groupoid(3);
        let mut data = g.to_data();
        // arrow 1 = (0,1) has inverse 3 = (1,0); redirect it to arrow 2.
        let victim = data.inverse.iter_mut().find(|(a, _)| *a == 1).unwrap();
        victim.1 = 2;
        let report = validate_data(&data);
        assert!(report.structural.is_empty());
        assert!(report.violations.contains(&AxiomViolation::InverseLaw {
            arrow: ArrowId(1),
            left_side: true,
        }));
    }

    #[test]
    fn fibers_partition_arrows() {
        let g = pair_groupoid(3);
        let total_by_range: usize = g.objects().map(|x| g.range_fiber(x).len()).sum();
        let total_by_source: usize = g.objects().map(|x| g.source_fiber(x).len()).sum();
        assert_eq!(total_by_range, g.arrow_count());
        assert_eq!(total_by_source, g.arrow_count());
    }

    #[test]
    fn fiber_contents() {
        // G^1 in the pair groupoid over 3 objects: the arrows (1, y), whose
        // ids are 1·3 + y
        let g = pair_groupoid(3);
        assert_eq!(
            g.range_fiber(ObjectId(1)),
            &[ArrowId(3), ArrowId(4), ArrowId(5)]
        );
        // the identity arrow lies in G_x^x for every object
        for x in g.objects() {
            assert!(g.fiber_between(x, x).contains(&g.identity(x)));
        }
    }
}
