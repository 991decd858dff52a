//! Step subgroup bundles over `[0, 1]`.
//!
//! A step bundle fixes a finite ambient group `F` and assigns a subgroup to
//! each open interval between consecutive rational breakpoints and to each
//! breakpoint itself. The total space `G = {(x, g) : g ∈ G_x}` sits inside
//! `[0, 1] × F` with `F` discrete, so a basic open set of `G` is
//! `((a, c) × {g}) ∩ G` and its projection is `{x : g ∈ G_x} ∩ (a, c)`.
//! The projection is therefore open exactly when every slice
//! `S_g = {x : g ∈ G_x}` is open in `[0, 1]`, which is the decidable
//! containment criterion implemented by [`is_open_projection`]: at every
//! breakpoint, the point group must be contained in the neighboring piece
//! groups.
//!
//! Compactly supported continuous functions on `G` are modeled per ambient
//! element as piecewise-linear sheet functions. Where a sheet's closure
//! leaves `G` (the element is in a piece group but not the adjacent point
//! group) the function must vanish identically on the terminal sub-interval;
//! where the sheet exists at a breakpoint, the one-sided limits along
//! existing sheets must match the value at the point.

use crate::group::{GroupTable, SubgroupViolation};
use crate::piecewise::{Discontinuity, Piecewise, Poly};
use crate::rat::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepSubgroupBundle {
    pub ambient: GroupTable,
    /// `0 = b_0 < b_1 < … < b_k = 1`.
    pub breakpoints: Vec<Rat>,
    /// Subgroup on the open interval `(b_i, b_{i+1})`, for `i in 0..k`.
    pub pieces: Vec<BTreeSet<usize>>,
    /// Subgroup at the breakpoint `b_j`, for `j in 0..=k`.
    pub points: Vec<BTreeSet<usize>>,
}

/// Where a subgroup violation occurred.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberSite {
    Piece(usize),
    Point(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BundleReport {
    pub shape_issues: Vec<String>,
    pub subgroup_issues: Vec<(FiberSite, SubgroupViolation)>,
}

impl BundleReport {
    pub fn is_valid(&self) -> bool {
        self.shape_issues.is_empty() && self.subgroup_issues.is_empty()
    }
}

/// Checks breakpoint monotonicity and that every piece and point fiber is a
/// subgroup of the ambient group.
pub fn validate_bundle(bundle: &StepSubgroupBundle) -> BundleReport {
    let mut report = BundleReport::default();
    let b = &bundle.breakpoints;
    if b.len() < 2 {
        report.shape_issues.push("need at least breakpoints 0 and 1".into());
    } else {
        if b[0] != Rat::zero() || *b.last().unwrap() != Rat::one() {
            report.shape_issues.push("breakpoints must span [0, 1]".into());
        }
        if b.windows(2).any(|w| w[0] >= w[1]) {
            report
                .shape_issues
                .push("breakpoints must be strictly increasing".into());
        }
    }
    if bundle.pieces.len() + 1 != b.len().max(1) {
        report.shape_issues.push(format!(
            "expected {} piece groups, got {}",
            b.len().saturating_sub(1),
            bundle.pieces.len()
        ));
    }
    if bundle.points.len() != b.len() {
        report.shape_issues.push(format!(
            "expected {} point groups, got {}",
            b.len(),
            bundle.points.len()
        ));
    }
    for (i, piece) in bundle.pieces.iter().enumerate() {
        if let Err(violation) = bundle.ambient.verify_subgroup(piece) {
            report.subgroup_issues.push((FiberSite::Piece(i), violation));
        }
    }
    for (j, point) in bundle.points.iter().enumerate() {
        if let Err(violation) = bundle.ambient.verify_subgroup(point) {
            report.subgroup_issues.push((FiberSite::Point(j), violation));
        }
    }
    report
}

impl StepSubgroupBundle {
    /// Piece count `k`.
    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// The fiber over an arbitrary base point.
    pub fn fiber_at(&self, x: &Rat) -> &BTreeSet<usize> {
        match self.breakpoints.binary_search(x) {
            Ok(j) => &self.points[j],
            Err(pos) => &self.pieces[pos - 1],
        }
    }

    fn element_in_piece(&self, piece: usize, g: usize) -> bool {
        self.pieces[piece].contains(&g)
    }
}

/// A failure of openness: an element of a point group missing from an
/// adjacent piece group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpennessWitness {
    pub breakpoint_index: usize,
    pub element: usize,
    /// The element is absent from the piece left of the breakpoint.
    pub missing_left: bool,
    /// The element is absent from the piece right of the breakpoint.
    pub missing_right: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpennessVerdict {
    pub open: bool,
    pub witnesses: Vec<OpennessWitness>,
}

/// Decides openness of the bundle projection.
///
/// The projection is open iff each slice `{x : g ∈ G_x}` is open in `[0,1]`,
/// i.e. every point-group element also belongs to the neighboring piece
/// groups (one-sided at the endpoints 0 and 1).
pub fn is_open_projection(bundle: &StepSubgroupBundle) -> OpennessVerdict {
    let k = bundle.piece_count();
    let mut witnesses = Vec::new();
    for (j, point) in bundle.points.iter().enumerate() {
        for &g in point {
            let missing_left = j > 0 && !bundle.element_in_piece(j - 1, g);
            let missing_right = j < k && !bundle.element_in_piece(j, g);
            if missing_left || missing_right {
                witnesses.push(OpennessWitness {
                    breakpoint_index: j,
                    element: g,
                    missing_left,
                    missing_right,
                });
            }
        }
    }
    OpennessVerdict {
        open: witnesses.is_empty(),
        witnesses,
    }
}

/// One sheet function per ambient element; values off a sheet's domain are
/// ignored by evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheetFunction {
    pub sheets: Vec<Piecewise>,
}

impl SheetFunction {
    pub fn zero(order: usize) -> Self {
        Self {
            sheets: (0..order).map(|_| Piecewise::zero()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibilityViolation {
    /// Wrong number of sheets for the ambient group.
    SheetCount { got: usize, expected: usize },
    /// A sheet polynomial of degree above 1.
    NotPiecewiseLinear { element: usize },
    /// Jump or defect strictly inside an interval where the sheet exists.
    InteriorDiscontinuity { element: usize, x: Rat },
    /// Sheet exists at the breakpoint and on this side, but the one-sided
    /// limit along the sheet differs from the value at the point.
    LimitMismatch {
        element: usize,
        breakpoint_index: usize,
        from_right: bool,
    },
    /// The sheet's closure leaves the bundle at this breakpoint, but the
    /// function is not identically zero on the terminal sub-interval.
    DyingSheetNotVanishing {
        element: usize,
        breakpoint_index: usize,
        from_right: bool,
    },
}

/// Checks the two sheet-function invariants: continuity on the bundle's
/// total space and identical vanishing where a sheet's closure leaves it.
pub fn check_admissible(
    bundle: &StepSubgroupBundle,
    phi: &SheetFunction,
) -> Vec<AdmissibilityViolation> {
    let order = bundle.ambient.order();
    if phi.sheets.len() != order {
        return vec![AdmissibilityViolation::SheetCount {
            got: phi.sheets.len(),
            expected: order,
        }];
    }
    let mut violations = Vec::new();
    let k = bundle.piece_count();
    for (g, sheet) in phi.sheets.iter().enumerate() {
        if sheet.max_degree() > 1 {
            violations.push(AdmissibilityViolation::NotPiecewiseLinear { element: g });
            continue;
        }
        // continuity strictly inside intervals where the sheet exists
        for defect in sheet.discontinuities() {
            match bundle.breakpoints.binary_search(&defect.x) {
                Ok(_) => {} // handled at bundle breakpoints below
                Err(pos) => {
                    if bundle.element_in_piece(pos - 1, g) {
                        violations.push(AdmissibilityViolation::InteriorDiscontinuity {
                            element: g,
                            x: defect.x.clone(),
                        });
                    }
                }
            }
        }
        // behavior at bundle breakpoints
        for (j, b) in bundle.breakpoints.iter().enumerate() {
            let exists_left = j > 0 && bundle.element_in_piece(j - 1, g);
            let exists_right = j < k && bundle.element_in_piece(j, g);
            let exists_at = bundle.points[j].contains(&g);
            if exists_at {
                let value = sheet.value_at(b);
                if exists_left && sheet.left_limit_at(b) != value {
                    violations.push(AdmissibilityViolation::LimitMismatch {
                        element: g,
                        breakpoint_index: j,
                        from_right: false,
                    });
                }
                if exists_right && sheet.right_limit_at(b) != value {
                    violations.push(AdmissibilityViolation::LimitMismatch {
                        element: g,
                        breakpoint_index: j,
                        from_right: true,
                    });
                }
            } else {
                if exists_left && !sheet.poly_left_of(b).is_zero() {
                    violations.push(AdmissibilityViolation::DyingSheetNotVanishing {
                        element: g,
                        breakpoint_index: j,
                        from_right: false,
                    });
                }
                if exists_right && !sheet.poly_right_of(b).is_zero() {
                    violations.push(AdmissibilityViolation::DyingSheetNotVanishing {
                        element: g,
                        breakpoint_index: j,
                        from_right: true,
                    });
                }
            }
        }
    }
    violations
}

/// A coherent family candidate: uniform Haar weight on each fiber times a
/// positive scale profile. The scale is the only degree of freedom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFamily {
    pub scale: Piecewise,
}

impl StepFamily {
    /// No openness or positivity checks; used to probe non-open bundles.
    pub fn new_unchecked(scale: Piecewise) -> Self {
        Self { scale }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("the bundle projection is not open; no coherent system exists")]
    NotOpen(Vec<OpennessWitness>),
    #[error("scale must be piecewise linear")]
    ScaleNotLinear,
    #[error("scale must be continuous")]
    ScaleDiscontinuous(Vec<Discontinuity>),
    #[error("scale must be strictly positive on [0, 1]")]
    ScaleNotPositive,
}

/// Validates a scale profile (piecewise linear, continuous, strictly
/// positive) and wraps it as a fiberwise-positive family, without deciding
/// openness. Against a non-open bundle such a family cannot be coherent; it
/// is exactly what exhibits the jump.
pub fn positive_family(scale: &Piecewise) -> Result<StepFamily, BuildError> {
    if scale.max_degree() > 1 {
        return Err(BuildError::ScaleNotLinear);
    }
    let defects = scale.discontinuities();
    if !defects.is_empty() {
        return Err(BuildError::ScaleDiscontinuous(defects));
    }
    // a continuous piecewise-linear function is positive iff positive at
    // every breakpoint
    if scale.values().iter().any(|v| *v <= Rat::zero()) {
        return Err(BuildError::ScaleNotPositive);
    }
    Ok(StepFamily {
        scale: scale.clone(),
    })
}

/// Builds the coherent family `μ_x = scale(x)·(unit weight on G_x)` after
/// checking that the bundle is open and the scale is a positive continuous
/// piecewise-linear profile.
pub fn build_coherent(
    bundle: &StepSubgroupBundle,
    scale: &Piecewise,
) -> Result<StepFamily, BuildError> {
    let verdict = is_open_projection(bundle);
    if !verdict.open {
        return Err(BuildError::NotOpen(verdict.witnesses));
    }
    positive_family(scale)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("sheet function is not admissible")]
    Inadmissible(Vec<AdmissibilityViolation>),
}

/// Exact evaluation of `x ↦ Σ_{g ∈ G_x} scale(x)·φ_g(x)` as a piecewise
/// function with explicit one-sided limits at every breakpoint of the bundle,
/// the scale, and the sheets.
pub fn evaluate_family(
    bundle: &StepSubgroupBundle,
    family: &StepFamily,
    phi: &SheetFunction,
) -> Result<Piecewise, EvalError> {
    let violations = check_admissible(bundle, phi);
    if !violations.is_empty() {
        return Err(EvalError::Inadmissible(violations));
    }

    // collect every breakpoint in play
    let mut cuts: BTreeSet<Rat> = bundle.breakpoints.iter().cloned().collect();
    cuts.extend(family.scale.breakpoints().iter().cloned());
    for sheet in &phi.sheets {
        cuts.extend(sheet.breakpoints().iter().cloned());
    }
    let breakpoints: Vec<Rat> = cuts.into_iter().collect();
    let interior: Vec<Rat> = breakpoints[1..breakpoints.len() - 1].to_vec();

    let scale = family.scale.refine(&interior);
    let sheets: Vec<Piecewise> = phi.sheets.iter().map(|s| s.refine(&interior)).collect();

    let mut pieces = Vec::with_capacity(breakpoints.len() - 1);
    let mut values = Vec::with_capacity(breakpoints.len());
    for (i, b) in breakpoints.iter().enumerate() {
        // fiber at the breakpoint itself
        let value = bundle
            .fiber_at(b)
            .iter()
            .fold(Rat::zero(), |acc, &g| acc + sheets[g].value_at(b))
            * scale.value_at(b);
        values.push(value);
        if i + 1 < breakpoints.len() {
            // the open interval (b_i, b_{i+1}) lies inside one bundle piece
            let piece_index = match bundle.breakpoints.binary_search(b) {
                Ok(j) => j,
                Err(pos) => pos - 1,
            };
            let total = bundle.pieces[piece_index]
                .iter()
                .fold(Poly::zero(), |acc, &g| acc.add(&sheets[g].pieces()[i]));
            pieces.push(total.mul(&scale.pieces()[i]));
        }
    }
    Ok(Piecewise::new(breakpoints, pieces, values).expect("refined grid is well formed"))
}

/// Continuity report for an evaluated family: the breakpoints where value
/// and one-sided limits disagree, with exact data.
pub fn verify_continuity(value: &Piecewise) -> Vec<Discontinuity> {
    value.discontinuities()
}

/// Openness verdict re-expressed through coherent systems, with a witness
/// sheet function when none exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceVerdict {
    pub exists: bool,
    pub witnesses: Vec<OpennessWitness>,
    /// For a non-open bundle: an admissible function whose integral against
    /// any fiberwise-positive family jumps at the failing breakpoint.
    pub witness_function: Option<SheetFunction>,
}

/// A coherent system of Haar measures exists iff the projection is open.
/// When it does not, the constructed witness is supported on the
/// disappearing sheet near the bad breakpoint: its integral has value
/// `scale(b_j) > 0` at the breakpoint but tends to 0 from the missing side.
pub fn coherent_exists(bundle: &StepSubgroupBundle) -> CoherenceVerdict {
    let verdict = is_open_projection(bundle);
    if verdict.open {
        return CoherenceVerdict {
            exists: true,
            witnesses: Vec::new(),
            witness_function: None,
        };
    }
    let witness = &verdict.witnesses[0];
    let function = jump_witness(bundle, witness);
    debug_assert!(check_admissible(bundle, &function).is_empty());
    CoherenceVerdict {
        exists: false,
        witnesses: verdict.witnesses.clone(),
        witness_function: Some(function),
    }
}

/// Builds the admissible sheet function witnessing a specific openness
/// failure: value 1 at the bad point, a ramp on each side where the sheet
/// exists (vanishing identically beyond the half of the adjacent piece),
/// zero everywhere else.
fn jump_witness(bundle: &StepSubgroupBundle, witness: &OpennessWitness) -> SheetFunction {
    let j = witness.breakpoint_index;
    let g = witness.element;
    let k = bundle.piece_count();
    let b = &bundle.breakpoints;
    let exists_left = j > 0 && bundle.element_in_piece(j - 1, g);
    let exists_right = j < k && bundle.element_in_piece(j, g);
    let half = Rat::new(1.into(), 2.into());

    let mut grid: Vec<Rat> = vec![Rat::zero()];
    let mut values: Vec<Rat> = vec![Rat::zero()];
    let mut pieces: Vec<Poly> = Vec::new();

    // left of the bad breakpoint
    if exists_left {
        let mid = (&b[j - 1] + &b[j]) * &half;
        grid.push(mid.clone());
        values.push(Rat::zero());
        pieces.push(Poly::zero());
        let slope = Rat::one() / (&b[j] - &mid);
        let ramp = Poly::linear(-(&mid * &slope), slope);
        grid.push(b[j].clone());
        values.push(Rat::one());
        pieces.push(ramp);
    } else if b[j].is_zero() {
        values[0] = Rat::one();
    } else {
        grid.push(b[j].clone());
        values.push(Rat::one());
        pieces.push(Poly::zero());
    }

    // right of the bad breakpoint
    if b[j] < Rat::one() {
        if exists_right {
            let mid = (&b[j] + &b[j + 1]) * &half;
            let slope = -(Rat::one() / (&mid - &b[j]));
            let ramp = Poly::linear(Rat::one() - &b[j] * &slope, slope);
            grid.push(mid);
            values.push(Rat::zero());
            pieces.push(ramp);
        }
        grid.push(Rat::one());
        values.push(Rat::zero());
        pieces.push(Poly::zero());
    }

    let sheet = Piecewise::new(grid, pieces, values).expect("witness grid is well formed");
    let mut sheets = SheetFunction::zero(bundle.ambient.order());
    sheets.sheets[g] = sheet;
    sheets
}
