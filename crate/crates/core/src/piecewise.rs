//! Exact piecewise polynomial functions on `[0, 1]`.
//!
//! A [`Piecewise`] stores rational breakpoints `0 = b_0 < … < b_m = 1`, one
//! polynomial per open interval, and an explicit value at every breakpoint.
//! One-sided limits at a breakpoint are polynomial evaluations, so jumps and
//! removable defects are represented exactly and continuity is decidable.
//! Sheet functions and scale functions are piecewise-linear; products are
//! piecewise-quadratic, still closed under the operations here.

use crate::rat::Rat;
use num_traits::Zero;
use thiserror::Error;

/// Dense polynomial `coeffs[0] + coeffs[1]·x + …` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { coeffs: vec![c] }
        }
    }

    pub fn linear(c0: Rat, c1: Rat) -> Self {
        let mut p = Self {
            coeffs: vec![c0, c1],
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Rat::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Rat::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].clone() + c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].clone() + c;
        }
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b;
            }
        }
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn scale(&self, factor: &Rat) -> Poly {
        if factor.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PiecewiseError {
    #[error("breakpoints must start at 0 and end at 1")]
    BadEndpoints,
    #[error("breakpoints must be strictly increasing")]
    NotIncreasing,
    #[error("expected {expected} pieces and {expected_values} values, got {pieces}/{values}")]
    LengthMismatch {
        expected: usize,
        expected_values: usize,
        pieces: usize,
        values: usize,
    },
    #[error("polyline needs at least two points")]
    TooShort,
}

/// A breakpoint where the value and the one-sided limits disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discontinuity {
    pub x: Rat,
    pub value: Rat,
    /// Limit from the left; absent at x = 0.
    pub left: Option<Rat>,
    /// Limit from the right; absent at x = 1.
    pub right: Option<Rat>,
}

impl Discontinuity {
    /// Largest absolute gap between the value and a one-sided limit.
    pub fn discrepancy(&self) -> Rat {
        let gap = |limit: &Option<Rat>| -> Rat {
            limit
                .as_ref()
                .map(|l| {
                    let d = l - &self.value;
                    if d < Rat::zero() {
                        -d
                    } else {
                        d
                    }
                })
                .unwrap_or_else(Rat::zero)
        };
        gap(&self.left).max(gap(&self.right))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piecewise {
    breakpoints: Vec<Rat>,
    pieces: Vec<Poly>,
    values: Vec<Rat>,
}

impl Piecewise {
    pub fn new(
        breakpoints: Vec<Rat>,
        pieces: Vec<Poly>,
        values: Vec<Rat>,
    ) -> Result<Self, PiecewiseError> {
        if breakpoints.len() < 2
            || breakpoints.first() != Some(&Rat::zero())
            || breakpoints.last() != Some(&Rat::from_integer(1.into()))
        {
            return Err(PiecewiseError::BadEndpoints);
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PiecewiseError::NotIncreasing);
        }
        if pieces.len() != breakpoints.len() - 1 || values.len() != breakpoints.len() {
            return Err(PiecewiseError::LengthMismatch {
                expected: breakpoints.len() - 1,
                expected_values: breakpoints.len(),
                pieces: pieces.len(),
                values: values.len(),
            });
        }
        Ok(Self {
            breakpoints,
            pieces,
            values,
        })
    }

    pub fn constant(c: Rat) -> Self {
        Self {
            breakpoints: vec![Rat::zero(), Rat::from_integer(1.into())],
            pieces: vec![Poly::constant(c.clone())],
            values: vec![c.clone(), c],
        }
    }

    pub fn zero() -> Self {
        Self::constant(Rat::zero())
    }

    /// Continuous piecewise-linear interpolation through the given points.
    /// The points must be strictly increasing in `x` and span `[0, 1]`.
    pub fn from_polyline(points: &[(Rat, Rat)]) -> Result<Self, PiecewiseError> {
        if points.len() < 2 {
            return Err(PiecewiseError::TooShort);
        }
        let breakpoints: Vec<Rat> = points.iter().map(|(x, _)| x.clone()).collect();
        let values: Vec<Rat> = points.iter().map(|(_, v)| v.clone()).collect();
        let pieces = points
            .windows(2)
            .map(|w| {
                let (x0, v0) = &w[0];
                let (x1, v1) = &w[1];
                let slope = (v1 - v0) / (x1 - x0);
                Poly::linear(v0 - &(slope.clone() * x0), slope)
            })
            .collect();
        Self::new(breakpoints, pieces, values)
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.iter().map(Poly::degree).max().unwrap_or(0)
    }

    fn breakpoint_index(&self, x: &Rat) -> Option<usize> {
        self.breakpoints.binary_search(x).ok()
    }

    /// Index of the open interval containing `x` (not a breakpoint).
    fn piece_index(&self, x: &Rat) -> usize {
        match self.breakpoints.binary_search(x) {
            Ok(_) => panic!("piece_index called on a breakpoint"),
            Err(pos) => pos - 1,
        }
    }

    /// Function value at `x`: the stored value at breakpoints, otherwise the
    /// polynomial of the containing piece.
    pub fn value_at(&self, x: &Rat) -> Rat {
        match self.breakpoint_index(x) {
            Some(j) => self.values[j].clone(),
            None => self.pieces[self.piece_index(x)].eval(x),
        }
    }

    /// Limit from the left at `x > 0`.
    pub fn left_limit_at(&self, x: &Rat) -> Rat {
        match self.breakpoint_index(x) {
            Some(j) => {
                assert!(j > 0, "no left limit at 0");
                self.pieces[j - 1].eval(x)
            }
            None => self.pieces[self.piece_index(x)].eval(x),
        }
    }

    /// Limit from the right at `x < 1`.
    pub fn right_limit_at(&self, x: &Rat) -> Rat {
        match self.breakpoint_index(x) {
            Some(j) => {
                assert!(j + 1 < self.breakpoints.len(), "no right limit at 1");
                self.pieces[j].eval(x)
            }
            None => self.pieces[self.piece_index(x)].eval(x),
        }
    }

    /// The polynomial governing points immediately left of `x > 0`.
    pub fn poly_left_of(&self, x: &Rat) -> &Poly {
        match self.breakpoint_index(x) {
            Some(j) => {
                assert!(j > 0);
                &self.pieces[j - 1]
            }
            None => &self.pieces[self.piece_index(x)],
        }
    }

    /// The polynomial governing points immediately right of `x < 1`.
    pub fn poly_right_of(&self, x: &Rat) -> &Poly {
        match self.breakpoint_index(x) {
            Some(j) => {
                assert!(j + 1 < self.breakpoints.len());
                &self.pieces[j]
            }
            None => &self.pieces[self.piece_index(x)],
        }
    }

    /// Inserts extra breakpoints without changing the function: values at new
    /// breakpoints are the polynomial values there.
    pub fn refine(&self, cuts: &[Rat]) -> Piecewise {
        let mut breakpoints = self.breakpoints.clone();
        for cut in cuts {
            if let Err(pos) = breakpoints.binary_search(cut) {
                assert!(
                    *cut > Rat::zero() && *cut < Rat::from_integer(1.into()),
                    "cuts must be interior"
                );
                breakpoints.insert(pos, cut.clone());
            }
        }
        let mut pieces = Vec::with_capacity(breakpoints.len() - 1);
        let mut values = Vec::with_capacity(breakpoints.len());
        for (i, b) in breakpoints.iter().enumerate() {
            values.push(match self.breakpoint_index(b) {
                Some(j) => self.values[j].clone(),
                None => self.pieces[self.piece_index(b)].eval(b),
            });
            if i + 1 < breakpoints.len() {
                // the open interval (b_i, b_{i+1}) lies inside one old piece
                let old = match self.breakpoint_index(b) {
                    Some(j) => j,
                    None => self.piece_index(b),
                };
                pieces.push(self.pieces[old].clone());
            }
        }
        Piecewise {
            breakpoints,
            pieces,
            values,
        }
    }

    fn zip_with(
        &self,
        other: &Piecewise,
        poly_op: impl Fn(&Poly, &Poly) -> Poly,
        value_op: impl Fn(&Rat, &Rat) -> Rat,
    ) -> Piecewise {
        let cuts: Vec<Rat> = other.breakpoints[1..other.breakpoints.len() - 1].to_vec();
        let a = self.refine(&cuts);
        let cuts: Vec<Rat> = self.breakpoints[1..self.breakpoints.len() - 1].to_vec();
        let b = other.refine(&cuts);
        debug_assert_eq!(a.breakpoints, b.breakpoints);
        Piecewise {
            breakpoints: a.breakpoints.clone(),
            pieces: a
                .pieces
                .iter()
                .zip(&b.pieces)
                .map(|(p, q)| poly_op(p, q))
                .collect(),
            values: a
                .values
                .iter()
                .zip(&b.values)
                .map(|(v, w)| value_op(v, w))
                .collect(),
        }
    }

    pub fn add(&self, other: &Piecewise) -> Piecewise {
        self.zip_with(other, Poly::add, |v, w| v + w)
    }

    pub fn mul(&self, other: &Piecewise) -> Piecewise {
        self.zip_with(other, Poly::mul, |v, w| v * w)
    }

    pub fn scale(&self, factor: &Rat) -> Piecewise {
        Piecewise {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(factor)).collect(),
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// Breakpoints where the value disagrees with an existing one-sided
    /// limit. Empty exactly when the function is continuous on `[0, 1]`.
    pub fn discontinuities(&self) -> Vec<Discontinuity> {
        let mut found = Vec::new();
        for (j, b) in self.breakpoints.iter().enumerate() {
            let left = (j > 0).then(|| self.pieces[j - 1].eval(b));
            let right = (j + 1 < self.breakpoints.len()).then(|| self.pieces[j].eval(b));
            let value = &self.values[j];
            let left_ok = left.as_ref().is_none_or(|l| l == value);
            let right_ok = right.as_ref().is_none_or(|r| r == value);
            if !left_ok || !right_ok {
                found.push(Discontinuity {
                    x: b.clone(),
                    value: value.clone(),
                    left,
                    right,
                });
            }
        }
        found
    }

    pub fn is_continuous(&self) -> bool {
        self.discontinuities().is_empty()
    }

    /// Whether two representations describe the same function on `[0, 1]`.
    pub fn equivalent(&self, other: &Piecewise) -> bool {
        let cuts: Vec<Rat> = other.breakpoints[1..other.breakpoints.len() - 1].to_vec();
        let a = self.refine(&cuts);
        let cuts: Vec<Rat> = self.breakpoints[1..self.breakpoints.len() - 1].to_vec();
        let b = other.refine(&cuts);
        a == b
    }
}
