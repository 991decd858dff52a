//! Right actions of a groupoid on a finite set.
//!
//! An action of `H` on `Z` anchors each point by `ρ: Z → X_H` and defines
//! `z·h` exactly when `ρ(z) = r(h)`, with `ρ(zh) = s(h)`, unit law, and
//! compatibility `z(hh') = (zh)h'`.

use crate::groupoid::{ArrowId, FiniteGroupoid, ObjectId};
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct GroupoidAction {
    pub actor: FiniteGroupoid,
    pub space_size: usize,
    pub anchor: Vec<ObjectId>,
    act: HashMap<(usize, u32), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionViolation {
    /// `z·h` defined although `ρ(z) != r(h)`, or missing although equal.
    DefinednessMismatch { point: usize, arrow: ArrowId },
    /// `ρ(z·h) != s(h)`.
    AnchorMismatch { point: usize, arrow: ArrowId },
    /// `z·identity(ρ(z)) != z`.
    UnitLaw { point: usize },
    /// `z(hh') != (zh)h'`.
    Compatibility { point: usize, first: ArrowId, second: ArrowId },
}

/// Freeness verdict plus finiteness statistics for the graph map
/// `(z, h) ↦ (z·h, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeProperReport {
    pub free: bool,
    pub freeness_witness: Option<(usize, ArrowId)>,
    /// Size of the action domain `Z*H`.
    pub graph_domain: usize,
    /// Number of distinct values of the graph map.
    pub graph_image: usize,
    /// Largest preimage cardinality of the graph map. Properness holds for
    /// every finite action; the statistics quantify the fibers anyway.
    pub max_graph_fiber: usize,
}

impl GroupoidAction {
    /// Builds the action table from a function, defining `z·h` on every
    /// admissible pair.
    pub fn from_fn(
        actor: FiniteGroupoid,
        anchor: Vec<ObjectId>,
        act: impl Fn(usize, ArrowId) -> usize,
    ) -> Self {
        let mut table = HashMap::new();
        for (z, &base) in anchor.iter().enumerate() {
            for &h in actor.range_fiber(base) {
                table.insert((z, h.0), act(z, h));
            }
        }
        Self {
            space_size: anchor.len(),
            actor,
            anchor,
            act: table,
        }
    }

    pub fn apply(&self, z: usize, h: ArrowId) -> Option<usize> {
        self.act.get(&(z, h.0)).copied()
    }

    /// Exhaustive action-axiom check.
    pub fn verify(&self) -> Vec<ActionViolation> {
        let mut violations = Vec::new();
        for z in 0..self.space_size {
            for h in self.actor.arrow_ids() {
                let admissible = self.anchor[z] == self.actor.range(h);
                match self.apply(z, h) {
                    Some(image) => {
                        if !admissible {
                            violations
                                .push(ActionViolation::DefinednessMismatch { point: z, arrow: h });
                        } else if self.anchor[image] != self.actor.source(h) {
                            violations.push(ActionViolation::AnchorMismatch { point: z, arrow: h });
                        }
                    }
                    None if admissible => {
                        violations.push(ActionViolation::DefinednessMismatch { point: z, arrow: h });
                    }
                    None => {}
                }
            }
        }
        for z in 0..self.space_size {
            if self.apply(z, self.actor.identity(self.anchor[z])) != Some(z) {
                violations.push(ActionViolation::UnitLaw { point: z });
            }
        }
        for z in 0..self.space_size {
            for &h in self.actor.range_fiber(self.anchor[z]) {
                let Some(zh) = self.apply(z, h) else { continue };
                for &h2 in self.actor.range_fiber(self.actor.source(h)) {
                    let Some(hh2) = self.actor.compose(h, h2) else { continue };
                    if self.apply(z, hh2) != self.apply(zh, h2) {
                        violations.push(ActionViolation::Compatibility {
                            point: z,
                            first: h,
                            second: h2,
                        });
                    }
                }
            }
        }
        violations
    }

    /// Checks freeness exhaustively and reports graph-map statistics; on a
    /// finite space the graph map is automatically proper.
    pub fn verify_free_proper(&self) -> FreeProperReport {
        let mut free = true;
        let mut witness = None;
        let mut graph: HashMap<(usize, usize), usize> = HashMap::new();
        for z in 0..self.space_size {
            for &h in self.actor.range_fiber(self.anchor[z]) {
                let Some(zh) = self.apply(z, h) else { continue };
                *graph.entry((zh, z)).or_insert(0) += 1;
                if zh == z && h != self.actor.identity(self.anchor[z]) && free {
                    free = false;
                    witness = Some((z, h));
                }
            }
        }
        FreeProperReport {
            free,
            freeness_witness: witness,
            graph_domain: graph.values().sum(),
            graph_image: graph.len(),
            max_graph_fiber: graph.values().copied().max().unwrap_or(0),
        }
    }

    /// Orbit partition of the space under the action.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = crate::unionfind::UnionFind::new(self.space_size);
        for (&(z, _), &zh) in &self.act {
            uf.union(z, zh);
        }
        let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for z in 0..self.space_size {
            classes.entry(uf.find(z)).or_default().push(z);
        }
        classes.into_values().collect()
    }
}
