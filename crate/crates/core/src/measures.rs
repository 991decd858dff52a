//! Weight-based measures on finite fibers.
//!
//! A measure on a finite discrete fiber is a nonnegative rational weight per
//! arrow; integration is an exact finite sum. Haar measures on the isotropy
//! groups are uniform up to a per-fiber scale, and transporting them along a
//! representative gives the invariant measure on each class, unique up to
//! scale. All equalities here are exact.

use crate::decompose::{IsotropyBundle, PrincipalQuotient};
use crate::groupoid::{ArrowId, FiniteGroupoid, ObjectId};
use crate::linalg::{self, RatMatrix};
use crate::rat::Rat;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

/// Finitely supported weights on arrows; the domain is explicit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FiberMeasure {
    pub weights: BTreeMap<ArrowId, Rat>,
}

impl FiberMeasure {
    pub fn from_entries(entries: impl IntoIterator<Item = (ArrowId, Rat)>) -> Self {
        Self {
            weights: entries.into_iter().collect(),
        }
    }

    /// Weight of an arrow, zero when outside the domain.
    pub fn value(&self, arrow: ArrowId) -> Rat {
        self.weights.get(&arrow).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_mass(&self) -> Rat {
        self.weights.values().fold(Rat::zero(), |acc, w| acc + w)
    }

    /// Exact integral of a function against this measure.
    pub fn integrate(&self, f: impl Fn(ArrowId) -> Rat) -> Rat {
        self.weights
            .iter()
            .fold(Rat::zero(), |acc, (&a, w)| acc + f(a) * w)
    }
}

/// A rational-valued test function on arrows, sparse with default zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TestFunction {
    pub values: BTreeMap<ArrowId, Rat>,
}

impl TestFunction {
    pub fn from_entries(entries: impl IntoIterator<Item = (ArrowId, Rat)>) -> Self {
        Self {
            values: entries.into_iter().collect(),
        }
    }

    pub fn indicator(arrow: ArrowId) -> Self {
        Self::from_entries([(arrow, Rat::from_integer(1.into()))])
    }

    pub fn constant_one(g: &FiniteGroupoid) -> Self {
        Self::from_entries(g.arrow_ids().map(|a| (a, Rat::from_integer(1.into()))))
    }

    pub fn value(&self, arrow: ArrowId) -> Rat {
        self.values.get(&arrow).cloned().unwrap_or_else(Rat::zero)
    }
}

/// One Haar measure per isotropy group, indexed by object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherentSystem {
    pub fibers: Vec<FiberMeasure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("scale must be strictly positive")]
    NonpositiveScale,
    #[error("expected one scale per object ({expected}), got {got}")]
    ScaleCount { expected: usize, got: usize },
}

/// The Haar measure of a finite group fiber: uniform weights equal to
/// `scale` on every element.
pub fn haar_on_group(
    fiber_arrows: &[ArrowId],
    scale: &Rat,
) -> Result<FiberMeasure, MeasureError> {
    if *scale <= Rat::zero() {
        return Err(MeasureError::NonpositiveScale);
    }
    Ok(FiberMeasure::from_entries(
        fiber_arrows.iter().map(|&a| (a, scale.clone())),
    ))
}

impl CoherentSystem {
    /// Uniform Haar weights with a common scale on every fiber.
    pub fn uniform(bundle: &IsotropyBundle, scale: &Rat) -> Result<Self, MeasureError> {
        Self::from_scales(bundle, &vec![scale.clone(); bundle.fibers.len()])
    }

    /// Uniform Haar weights with one positive scale per object.
    pub fn from_scales(bundle: &IsotropyBundle, scales: &[Rat]) -> Result<Self, MeasureError> {
        if scales.len() != bundle.fibers.len() {
            return Err(MeasureError::ScaleCount {
                expected: bundle.fibers.len(),
                got: scales.len(),
            });
        }
        let fibers = bundle
            .fibers
            .iter()
            .zip(scales)
            .map(|(fiber, scale)| haar_on_group(&fiber.arrows, scale))
            .collect::<Result<_, _>>()?;
        Ok(Self { fibers })
    }

    pub fn fiber(&self, x: ObjectId) -> &FiberMeasure {
        &self.fibers[x.index()]
    }
}

/// Per-fiber verification of a coherent system: exact domain, strict
/// positivity, and two-sided translation invariance. Continuity is vacuous
/// over a discrete object set and recorded as such.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoherenceReport {
    pub missing_fibers: Vec<ObjectId>,
    /// Weights on arrows outside the fiber, or fiber arrows with no weight.
    pub domain_mismatches: Vec<(ObjectId, ArrowId)>,
    /// Arrows with weight <= 0.
    pub positivity: Vec<(ObjectId, ArrowId)>,
    /// `(object, translator, arrow)` with `w(t·a) != w(a)` or `w(a·t) != w(a)`.
    pub invariance: Vec<(ObjectId, ArrowId, ArrowId)>,
    /// Always true here: continuity over a finite discrete base is vacuous.
    pub continuity_vacuous: bool,
}

impl CoherenceReport {
    pub fn is_valid(&self) -> bool {
        self.missing_fibers.is_empty()
            && self.domain_mismatches.is_empty()
            && self.positivity.is_empty()
            && self.invariance.is_empty()
    }
}

pub fn verify_coherent(
    g: &FiniteGroupoid,
    system: &CoherentSystem,
    bundle: &IsotropyBundle,
) -> CoherenceReport {
    let mut report = CoherenceReport {
        continuity_vacuous: true,
        ..Default::default()
    };
    for fiber in &bundle.fibers {
        let x = fiber.object;
        let Some(measure) = system.fibers.get(x.index()) else {
            report.missing_fibers.push(x);
            continue;
        };
        for &a in measure.weights.keys() {
            if fiber.position(a).is_none() {
                report.domain_mismatches.push((x, a));
            }
        }
        for &a in &fiber.arrows {
            match measure.weights.get(&a) {
                None => report.domain_mismatches.push((x, a)),
                Some(w) if *w <= Rat::zero() => report.positivity.push((x, a)),
                Some(_) => {}
            }
        }
        for &t in &fiber.arrows {
            for &a in &fiber.arrows {
                let left = g.compose(t, a).expect("isotropy arrows compose");
                let right = g.compose(a, t).expect("isotropy arrows compose");
                if measure.value(left) != measure.value(a)
                    || measure.value(right) != measure.value(a)
                {
                    report.invariance.push((x, t, a));
                }
            }
        }
    }
    report
}

/// The invariant measure on a class, obtained by pushing the isotropy Haar
/// measure at the source forward along a representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMeasure {
    pub class: Vec<ArrowId>,
    pub weights: FiberMeasure,
}

/// `weights(g∘h) = ν_{s(g)}(h)` over the isotropy group at `s(g)`.
/// Requires a coherent system; the result does not depend on which member of
/// the class is passed in.
pub fn class_measure(
    g: &FiniteGroupoid,
    system: &CoherentSystem,
    arrow: ArrowId,
) -> ClassMeasure {
    let source = g.source(arrow);
    let weights = FiberMeasure::from_entries(system.fiber(source).weights.iter().map(|(&h, w)| {
        let target = g.compose(arrow, h).expect("isotropy translation composes");
        (target, w.clone())
    }));
    ClassMeasure {
        class: crate::decompose::class_of(g, arrow),
        weights,
    }
}

/// The induced class function: for each quotient arrow `c`, the integral of
/// `phi` against the class measure of `c`, i.e.
/// `Σ_h ν_{s}(h)·phi(rep(c)∘h)`. Constant on classes by construction and
/// indexed by quotient arrows.
pub fn class_integral(
    g: &FiniteGroupoid,
    quotient: &PrincipalQuotient,
    system: &CoherentSystem,
    phi: &TestFunction,
) -> Vec<Rat> {
    quotient
        .groupoid
        .arrow_ids()
        .map(|c| {
            let rep = quotient.representative(c);
            system
                .fiber(g.source(rep))
                .integrate(|h| phi.value(g.compose(rep, h).expect("isotropy translation composes")))
        })
        .collect()
}

/// Solution-space analysis for invariance on one class: the weights on `[g]`
/// invariant under right translation by the isotropy group at the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    pub class: Vec<ArrowId>,
    /// Dimension of the space of right-invariant weight families on the class.
    pub dimension: usize,
    /// Whether the transported class measure lies in that space.
    pub class_measure_in_space: bool,
}

/// Solves `w(k∘h) = w(k)` for all members `k` and isotropy elements `h`
/// exactly, reporting the solution-space dimension (always 1: the class is a
/// torsor) and membership of [`class_measure`]'s weights.
pub fn verify_unique_up_to_scale(
    g: &FiniteGroupoid,
    system: &CoherentSystem,
    arrow: ArrowId,
) -> UniquenessReport {
    let class = crate::decompose::class_of(g, arrow);
    let isotropy = g.fiber_between(g.source(arrow), g.source(arrow));
    let index: BTreeMap<ArrowId, usize> = class.iter().copied().zip(0..).collect();
    let mut rows = Vec::new();
    for &k in &class {
        for &h in &isotropy {
            let kh = g.compose(k, h).expect("class member composes with isotropy");
            let (i, j) = (index[&kh], index[&k]);
            if i != j {
                let mut row = vec![Rat::zero(); class.len()];
                row[i] = Rat::from_integer(1.into());
                row[j] = Rat::from_integer((-1).into());
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        // no constraints: the whole space is invariant
        (0..class.len())
            .map(|i| {
                let mut v = vec![Rat::zero(); class.len()];
                v[i] = Rat::from_integer(1.into());
                v
            })
            .collect()
    } else {
        linalg::nullspace(&RatMatrix::from_rows(rows))
    };
    let measure = class_measure(g, system, arrow);
    let vector: Vec<Rat> = class.iter().map(|&k| measure.weights.value(k)).collect();
    UniquenessReport {
        dimension: basis.len(),
        class_measure_in_space: linalg::in_span(&basis, &vector),
        class,
    }
}
