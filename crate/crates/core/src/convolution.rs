//! Convolution algebra of a groupoid with a Haar system.
//!
//! With `μ` a Haar system, functions on arrows form an associative algebra
//! under `(f*h)(γ) = Σ_{η ∈ G^{s(γ)}} f(γ∘η)·h(η⁻¹)·μ^{s(γ)}(η)`; the
//! left-invariance of `μ` is exactly what the change of variables in the
//! associativity computation uses. Scalars are rational, so the involution
//! `f*(γ) = f(γ⁻¹)` involves no conjugation. This is an algebraic check of
//! Haar invariance, not a C*-algebra: no norms, no completion.

use crate::groupoid::{ArrowId, FiniteGroupoid};
use crate::haar::{verify_haar, HaarReport, HaarSystem};
use crate::rat::Rat;
use num_traits::Zero;

/// A rational-valued function, total on arrows (dense by arrow id).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidFunction {
    pub values: Vec<Rat>,
}

impl GroupoidFunction {
    pub fn zero(g: &FiniteGroupoid) -> Self {
        Self {
            values: vec![Rat::zero(); g.arrow_count()],
        }
    }

    pub fn from_fn(g: &FiniteGroupoid, f: impl FnMut(ArrowId) -> Rat) -> Self {
        Self {
            values: g.arrow_ids().map(f).collect(),
        }
    }

    pub fn value(&self, a: ArrowId) -> &Rat {
        &self.values[a.index()]
    }
}

/// The involution `f*(γ) = f(γ⁻¹)`.
pub fn involution(g: &FiniteGroupoid, f: &GroupoidFunction) -> GroupoidFunction {
    GroupoidFunction::from_fn(g, |a| f.value(g.inverse(a)).clone())
}

/// Convolution context over a fixed groupoid and Haar system.
///
/// [`Convolution::new`] verifies the Haar axioms once up front; without a
/// genuine Haar system associativity is not guaranteed.
pub struct Convolution<'a> {
    g: &'a FiniteGroupoid,
    system: &'a HaarSystem,
}

impl<'a> Convolution<'a> {
    pub fn new(g: &'a FiniteGroupoid, system: &'a HaarSystem) -> Result<Self, HaarReport> {
        let report = verify_haar(g, system);
        if report.is_valid() {
            Ok(Self { g, system })
        } else {
            Err(report)
        }
    }

    /// Skips the Haar verification; used to demonstrate associativity
    /// failures for non-invariant weight families.
    pub fn unchecked(g: &'a FiniteGroupoid, system: &'a HaarSystem) -> Self {
        Self { g, system }
    }

    pub fn convolve(&self, f: &GroupoidFunction, h: &GroupoidFunction) -> GroupoidFunction {
        GroupoidFunction::from_fn(self.g, |gamma| {
            let source = self.g.source(gamma);
            let mut acc = Rat::zero();
            for &eta in self.g.range_fiber(source) {
                let h_val = h.value(self.g.inverse(eta));
                if h_val.is_zero() {
                    continue;
                }
                let composed = self.g.compose(gamma, eta).expect("eta ranges over G^{s(gamma)}");
                let f_val = f.value(composed);
                if f_val.is_zero() {
                    continue;
                }
                acc += f_val * h_val * self.system.fiber(source).value(eta);
            }
            acc
        })
    }

    /// The unit: `1/μ^x(ε(x))` on identity arrows, zero elsewhere.
    pub fn unit(&self) -> GroupoidFunction {
        GroupoidFunction::from_fn(self.g, |a| {
            if self.g.is_identity(a) {
                let x = self.g.range(a);
                let mass = self.system.fiber(x).value(a);
                Rat::from_integer(1.into()) / mass
            } else {
                Rat::zero()
            }
        })
    }

    /// Exact comparison of `(f*g)*h` and `f*(g*h)`; the report lists the
    /// arrows where they differ (empty iff associative on this triple).
    pub fn check_associativity(
        &self,
        f: &GroupoidFunction,
        g2: &GroupoidFunction,
        h: &GroupoidFunction,
    ) -> Vec<ArrowId> {
        let left = self.convolve(&self.convolve(f, g2), h);
        let right = self.convolve(f, &self.convolve(g2, h));
        self.g
            .arrow_ids()
            .filter(|&a| left.value(a) != right.value(a))
            .collect()
    }
}
