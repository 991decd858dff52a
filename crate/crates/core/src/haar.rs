//! Haar systems on finite groupoids.
//!
//! A Haar system assigns to each object `x` a measure on the range fiber
//! `G^x` such that (a) every arrow of `G^x` carries strictly positive weight,
//! (b) left translation by any arrow `α: y → x` maps the weights on `G^y` to
//! those on `G^x`, and (c) integration against the system is continuous in
//! `x` — vacuous here since the object set is discrete.
//!
//! Condition (b) is checked pointwise on arrow weights: over a finite
//! discrete fiber this is equivalent to the integral formulation and yields
//! minimal witnesses.

use crate::decompose::{principal_quotient, stability_groupoid, PrincipalQuotient};
use crate::groupoid::{ArrowId, FiniteGroupoid, ObjectId};
use crate::linalg::{self, RatMatrix};
use crate::measures::{CoherenceReport, CoherentSystem, FiberMeasure, verify_coherent};
use crate::rat::Rat;
use num_traits::Zero;
use std::collections::BTreeSet;
use thiserror::Error;

/// A candidate Haar system: one measure per object, intended to live on `G^x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaarSystem {
    pub fibers: Vec<FiberMeasure>,
}

impl HaarSystem {
    /// Counting measures: weight 1 on every arrow.
    pub fn counting(g: &FiniteGroupoid) -> Self {
        Self::from_weight_fn(g, |_| Rat::from_integer(1.into()))
    }

    /// Builds a system from a weight per arrow, split across range fibers.
    pub fn from_weight_fn(g: &FiniteGroupoid, weight: impl Fn(ArrowId) -> Rat) -> Self {
        let fibers = g
            .objects()
            .map(|x| {
                FiberMeasure::from_entries(
                    g.range_fiber(x).iter().map(|&a| (a, weight(a))),
                )
            })
            .collect();
        Self { fibers }
    }

    pub fn fiber(&self, x: ObjectId) -> &FiberMeasure {
        &self.fibers[x.index()]
    }

    /// Flat weight vector indexed by arrow id (missing entries are zero).
    pub fn weight_vector(&self, g: &FiniteGroupoid) -> Vec<Rat> {
        g.arrow_ids()
            .map(|a| self.fibers[g.range(a).index()].value(a))
            .collect()
    }
}

/// Outcome of the Haar axioms check.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HaarReport {
    /// Objects with no measure at all.
    pub missing_fibers: Vec<ObjectId>,
    /// Weights assigned to arrows outside `G^x`: a structural defect,
    /// distinct from the axiom violations below.
    pub domain_errors: Vec<(ObjectId, ArrowId)>,
    /// Condition (a): arrows of `G^x` with zero or missing weight.
    pub support: Vec<(ObjectId, ArrowId)>,
    /// Negative weights (not a measure at all).
    pub negative: Vec<(ObjectId, ArrowId)>,
    /// Condition (b) witnesses `(α, k)` with `w(α∘k) != w(k)`.
    pub invariance: Vec<(ArrowId, ArrowId)>,
    /// Condition (c) holds vacuously over a discrete object set.
    pub continuity_vacuous: bool,
}

impl HaarReport {
    pub fn is_valid(&self) -> bool {
        self.missing_fibers.is_empty()
            && self.domain_errors.is_empty()
            && self.support.is_empty()
            && self.negative.is_empty()
            && self.invariance.is_empty()
    }
}

/// Checks the Haar axioms exhaustively.
pub fn verify_haar(g: &FiniteGroupoid, system: &HaarSystem) -> HaarReport {
    let mut report = HaarReport {
        continuity_vacuous: true,
        ..Default::default()
    };
    for x in g.objects() {
        let Some(measure) = system.fibers.get(x.index()) else {
            report.missing_fibers.push(x);
            continue;
        };
        for &a in measure.weights.keys() {
            if a.index() >= g.arrow_count() || g.range(a) != x {
                report.domain_errors.push((x, a));
            }
        }
        for &a in g.range_fiber(x) {
            match measure.weights.get(&a) {
                None => report.support.push((x, a)),
                Some(w) if w.is_zero() => report.support.push((x, a)),
                Some(w) if *w < Rat::zero() => report.negative.push((x, a)),
                Some(_) => {}
            }
        }
    }
    if !report.missing_fibers.is_empty() {
        return report;
    }
    for alpha in g.arrow_ids() {
        let target = g.range(alpha).index();
        let base = g.source(alpha);
        for &k in g.range_fiber(base) {
            let translated = g.compose(alpha, k).expect("alpha composes with G^{s(alpha)}");
            if system.fibers[target].value(translated) != system.fibers[base.index()].value(k) {
                report.invariance.push((alpha, k));
            }
        }
    }
    report
}

/// Condition (a) detector: all `(x, arrow)` pairs where the arrow lies in
/// `G^x` but the candidate weight vanishes (or is absent).
pub fn support_check(g: &FiniteGroupoid, candidate: &HaarSystem) -> Vec<(ObjectId, ArrowId)> {
    let mut zeros = Vec::new();
    for x in g.objects() {
        for &a in g.range_fiber(x) {
            let vanishes = match candidate.fibers.get(x.index()) {
                Some(measure) => measure.value(a).is_zero(),
                None => true,
            };
            if vanishes {
                zeros.push((x, a));
            }
        }
    }
    zeros
}

/// A Haar system on a principal quotient, remembering which quotient it was
/// built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalHaar {
    pub quotient: PrincipalQuotient,
    pub system: HaarSystem,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HaarError {
    #[error("lambda must assign a positive weight to every object")]
    NonpositiveLambda { object: ObjectId },
    #[error("expected one lambda per object ({expected}), got {got}")]
    LambdaCount { expected: usize, got: usize },
}

/// On a principal groupoid the Haar condition forces the weight of an arrow
/// to depend only on its source; `lambda` is exactly that free choice. The
/// unique arrow `y → x` in each orbit gets weight `lambda(y)`.
pub fn principal_haar_from_lambda(
    quotient: &PrincipalQuotient,
    lambda: &[Rat],
) -> Result<PrincipalHaar, HaarError> {
    let q = &quotient.groupoid;
    if lambda.len() != q.object_count() {
        return Err(HaarError::LambdaCount {
            expected: q.object_count(),
            got: lambda.len(),
        });
    }
    for (x, value) in lambda.iter().enumerate() {
        if *value <= Rat::zero() {
            return Err(HaarError::NonpositiveLambda {
                object: ObjectId(x as u32),
            });
        }
    }
    let system = HaarSystem::from_weight_fn(q, |a| lambda[q.source(a).index()].clone());
    Ok(PrincipalHaar {
        quotient: quotient.clone(),
        system,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("coherent system fails verification")]
    IncoherentSystem(CoherenceReport),
    #[error("principal system is not given on the computed quotient")]
    QuotientMismatch,
    #[error("principal system fails the Haar axioms on the quotient")]
    InvalidPrincipalHaar(HaarReport),
}

/// Builds a Haar system on `G` from a coherent system on the stability
/// groupoid and a Haar system on the principal quotient:
/// `μ^x(φ) = Σ_{c ∈ Ḡ^x} m^x(c) · (class integral of φ at c)`, i.e. the
/// arrow `k` gets weight `m(class(k)) · ν_{s(k)}(rep(class(k))⁻¹ ∘ k)`.
pub fn synthesize_haar(
    g: &FiniteGroupoid,
    nu: &CoherentSystem,
    principal: &PrincipalHaar,
) -> Result<HaarSystem, SynthesisError> {
    let bundle = stability_groupoid(g);
    let coherence = verify_coherent(g, nu, &bundle);
    if !coherence.is_valid() {
        return Err(SynthesisError::IncoherentSystem(coherence));
    }
    let quotient = principal_quotient(g);
    if quotient.groupoid != principal.quotient.groupoid
        || quotient.class_of != principal.quotient.class_of
    {
        return Err(SynthesisError::QuotientMismatch);
    }
    let haar = verify_haar(&principal.quotient.groupoid, &principal.system);
    if !haar.is_valid() {
        return Err(SynthesisError::InvalidPrincipalHaar(haar));
    }
    Ok(synthesize_weights(g, nu, &principal.quotient, &principal.system))
}

/// The weight computation behind [`synthesize_haar`], without the
/// precondition checks. The representative choice recorded in `quotient` is
/// used verbatim; for a genuinely coherent `nu` the result does not depend
/// on it.
pub fn synthesize_weights(
    g: &FiniteGroupoid,
    nu: &CoherentSystem,
    quotient: &PrincipalQuotient,
    principal_system: &HaarSystem,
) -> HaarSystem {
    HaarSystem::from_weight_fn(g, |k| {
        let class = quotient.class(k);
        let rep = quotient.representative(class);
        let translator = g
            .compose(g.inverse(rep), k)
            .expect("rep⁻¹∘k lands in the isotropy group at the source");
        let class_weight = principal_system.fibers[g.range(k).index()].value(class);
        class_weight * nu.fiber(g.source(k)).value(translator)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("exact enumeration is limited to 200 arrows, got {0}")]
    TooLarge(usize),
}

/// Linear span of the translation-invariant weight families on `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSystems {
    /// Dimension of the solution space of condition (b).
    pub dimension: usize,
    /// Basis vectors indexed by arrow id.
    pub basis: Vec<Vec<Rat>>,
    /// Whether each basis vector is strictly positive everywhere (i.e. is
    /// itself a Haar system).
    pub strictly_positive: Vec<bool>,
}

/// Brute-force oracle: sets up the full linear system of condition (b) over
/// all `(α, k)` pairs and solves it by exact row reduction. The strictly
/// positive solutions are precisely the Haar systems.
pub fn enumerate_invariant_systems(
    g: &FiniteGroupoid,
) -> Result<InvariantSystems, EnumerationError> {
    let n = g.arrow_count();
    if n > 200 {
        return Err(EnumerationError::TooLarge(n));
    }
    if n == 0 {
        return Ok(InvariantSystems {
            dimension: 0,
            basis: Vec::new(),
            strictly_positive: Vec::new(),
        });
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for alpha in g.arrow_ids() {
        for &k in g.range_fiber(g.source(alpha)) {
            let translated = g.compose(alpha, k).expect("composable by construction");
            let (i, j) = (translated.index(), k.index());
            if i != j {
                pairs.insert((i.min(j), i.max(j)));
            }
        }
    }
    let basis = if pairs.is_empty() {
        (0..n)
            .map(|i| {
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::from_integer(1.into());
                v
            })
            .collect()
    } else {
        let rows: Vec<Vec<Rat>> = pairs
            .into_iter()
            .map(|(i, j)| {
                let mut row = vec![Rat::zero(); n];
                row[i] = Rat::from_integer(1.into());
                row[j] = Rat::from_integer((-1).into());
                row
            })
            .collect();
        linalg::nullspace(&RatMatrix::from_rows(rows))
    };
    let strictly_positive = basis
        .iter()
        .map(|v| v.iter().all(|w| *w > Rat::zero()))
        .collect();
    Ok(InvariantSystems {
        dimension: basis.len(),
        basis,
        strictly_positive,
    })
}

/// Residual check: does a weight vector solve the invariance constraints?
pub fn weights_are_invariant(g: &FiniteGroupoid, weights: &[Rat]) -> bool {
    g.arrow_ids().all(|alpha| {
        g.range_fiber(g.source(alpha)).iter().all(|&k| {
            let translated = g.compose(alpha, k).expect("composable by construction");
            weights[translated.index()] == weights[k.index()]
        })
    })
}
