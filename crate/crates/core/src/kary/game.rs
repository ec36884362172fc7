use std::ops::Deref;

use serde::Serialize;

use super::grid::{advance, GridPoint, GridShape};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A k-choice game: an exact value for every point of `{0..k}^n`, zero at the
/// origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KaryGame {
    shape: GridShape,
    values: Vec<Rational>,
}

impl KaryGame {
    /// Builds a game from a dense table in lexicographic order.
    pub fn new(n: usize, k: u32, values: Vec<Rational>) -> Result<Self> {
        let shape = GridShape::uniform(n, k)?;
        Self::from_table(shape, values)
    }

    pub(crate) fn from_table(shape: GridShape, values: Vec<Rational>) -> Result<Self> {
        if values.len() != shape.len() {
            return Err(Error::LengthMismatch {
                expected: shape.len(),
                actual: values.len(),
            });
        }
        if !values[0].is_zero() {
            return Err(Error::NonzeroOrigin(values[0].to_string()));
        }
        Ok(KaryGame { shape, values })
    }

    pub fn zero(n: usize, k: u32) -> Result<Self> {
        let shape = GridShape::uniform(n, k)?;
        let values = vec![Rational::ZERO; shape.len()];
        Ok(KaryGame { shape, values })
    }

    pub fn from_fn(n: usize, k: u32, mut f: impl FnMut(&[u32]) -> Rational) -> Result<Self> {
        let shape = GridShape::uniform(n, k)?;
        let mut values = Vec::with_capacity(shape.len());
        let mut coords = vec![0u32; n];
        loop {
            values.push(f(&coords));
            if !advance(&mut coords, shape.bounds()) {
                break;
            }
        }
        Self::from_table(shape, values)
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn k(&self) -> u32 {
        self.shape.bound(0)
    }

    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    /// Value at `coords`; panics when the point is off the grid.
    pub fn value_at(&self, coords: &[u32]) -> &Rational {
        assert!(self.shape.contains(coords), "point {coords:?} off the grid");
        &self.values[self.shape.index(coords)]
    }

    pub fn value(&self, point: &GridPoint) -> Result<&Rational> {
        self.shape.check(point.coords())?;
        Ok(&self.values[self.shape.index(point.coords())])
    }

    pub fn is_zero_one(&self) -> bool {
        self.values.iter().all(|v| v.is_zero() || v.is_one())
    }

    pub fn is_identically_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// `self + weight * other`, pointwise.
    pub fn add_scaled(&mut self, other: &KaryGame, weight: &Rational) {
        assert_eq!(self.shape, other.shape, "games on different grids");
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            if !b.is_zero() {
                *a += b * weight;
            }
        }
    }
}

/// A monotone, normalized k-ary game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KaryCapacity(KaryGame);

impl KaryCapacity {
    pub fn try_new(game: KaryGame) -> Result<Self> {
        let report = check_capacity(&game);
        if report.is_capacity() {
            Ok(KaryCapacity(game))
        } else {
            Err(Error::NotACapacity(Box::new(report)))
        }
    }

    pub(crate) fn new_unchecked(game: KaryGame) -> Self {
        debug_assert!(check_capacity(&game).is_capacity());
        KaryCapacity(game)
    }

    pub fn as_game(&self) -> &KaryGame {
        &self.0
    }

    pub fn into_game(self) -> KaryGame {
        self.0
    }
}

impl Deref for KaryCapacity {
    type Target = KaryGame;

    fn deref(&self) -> &KaryGame {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonzeroOrigin {
        #[serde(with = "rational::serde_string")]
        value: Rational,
    },
    NotNormalized {
        point: GridPoint,
        #[serde(with = "rational::serde_string")]
        value: Rational,
    },
    /// `lower` is covered by `upper` but has a larger value.
    Decrease {
        lower: GridPoint,
        upper: GridPoint,
        #[serde(with = "rational::serde_string")]
        lower_value: Rational,
        #[serde(with = "rational::serde_string")]
        upper_value: Rational,
    },
}

impl Violation {
    pub fn description(&self) -> String {
        match self {
            Violation::NonzeroOrigin { value } => format!("value {value} at the origin"),
            Violation::NotNormalized { point, value } => {
                format!("value {value} at the top {point}, expected 1")
            }
            Violation::Decrease {
                lower,
                upper,
                lower_value,
                upper_value,
            } => format!("v({lower}) = {lower_value} > v({upper}) = {upper_value}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapacityReport {
    pub zero_grounded: bool,
    pub monotone: bool,
    pub normalized: bool,
    pub violations: Vec<Violation>,
}

impl CapacityReport {
    pub fn is_capacity(&self) -> bool {
        self.zero_grounded && self.monotone && self.normalized
    }

    pub fn summary(&self) -> String {
        match self.violations.first() {
            None => "no violations".to_string(),
            Some(first) if self.violations.len() == 1 => first.description(),
            Some(first) => format!(
                "{} (and {} more violations)",
                first.description(),
                self.violations.len() - 1
            ),
        }
    }
}

/// Checks zero-groundedness, monotonicity over every covering pair
/// `(z, z + 1_i)`, and normalization.
pub fn check_capacity(v: &KaryGame) -> CapacityReport {
    check_table(&v.shape, &v.values)
}

/// Same as [`check_capacity`] for a raw table, which may have a nonzero origin
/// value.
pub fn check_table(shape: &GridShape, values: &[Rational]) -> CapacityReport {
    assert_eq!(shape.len(), values.len(), "table length does not match grid");
    let mut violations = Vec::new();
    let zero_grounded = values[0].is_zero();
    if !zero_grounded {
        violations.push(Violation::NonzeroOrigin {
            value: values[0].clone(),
        });
    }

    let mut monotone = true;
    let bounds = shape.bounds();
    let mut coords = vec![0u32; shape.n()];
    let mut idx = 0usize;
    loop {
        for axis in 0..coords.len() {
            if coords[axis] < bounds[axis] {
                let up = idx + shape.stride(axis);
                if values[idx] > values[up] {
                    monotone = false;
                    let mut upper = coords.clone();
                    upper[axis] += 1;
                    violations.push(Violation::Decrease {
                        lower: GridPoint::new(coords.clone()),
                        upper: GridPoint::new(upper),
                        lower_value: values[idx].clone(),
                        upper_value: values[up].clone(),
                    });
                }
            }
        }
        idx += 1;
        if !advance(&mut coords, bounds) {
            break;
        }
    }

    let top = values.last().expect("nonempty grid");
    let normalized = top.is_one();
    if !normalized {
        violations.push(Violation::NotNormalized {
            point: GridPoint::new(shape.top()),
            value: top.clone(),
        });
    }

    CapacityReport {
        zero_grounded,
        monotone,
        normalized,
        violations,
    }
}
