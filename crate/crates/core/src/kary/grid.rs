use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A point of a product of chains, e.g. an element of `{0..k}^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPoint(Vec<u32>);

impl GridPoint {
    pub fn new(coords: Vec<u32>) -> Self {
        GridPoint(coords)
    }

    pub fn origin(n: usize) -> Self {
        GridPoint(vec![0; n])
    }

    pub fn top(n: usize, k: u32) -> Self {
        GridPoint(vec![k; n])
    }

    /// The point with `level` on `axis` and zero elsewhere.
    pub fn axis(n: usize, axis: usize, level: u32) -> Self {
        let mut coords = vec![0; n];
        coords[axis] = level;
        GridPoint(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Indices of the positive coordinates.
    pub fn support(&self) -> Vec<usize> {
        support_of(&self.0)
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&c| c > 0).count()
    }

    /// Componentwise order.
    pub fn le(&self, other: &GridPoint) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &GridPoint) -> GridPoint {
        GridPoint(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &GridPoint) -> GridPoint {
        GridPoint(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }
}

pub(crate) fn support_of(coords: &[u32]) -> Vec<usize> {
    coords
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, _)| i)
        .collect()
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_coords(&self.0))
    }
}

pub(crate) fn format_coords(coords: &[u32]) -> String {
    let mut out = String::with_capacity(coords.len() * 2);
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&c.to_string());
    }
    out
}

impl FromStr for GridPoint {
    type Err = Error;

    /// Parses comma-joined decimal coordinates such as `"2,0,1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(Error::Parse(format!("empty coordinate key {s:?}")));
        }
        s.split(',')
            .map(|part| {
                if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Parse(format!("malformed coordinate key {s:?}")));
                }
                part.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("malformed coordinate key {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(GridPoint)
    }
}

impl serde::Serialize for GridPoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for GridPoint {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Largest dense table this crate will allocate.
pub const MAX_GRID_LEN: usize = 1 << 28;

/// Mixed-radix box `{0..b_1} x ... x {0..b_n}`, stored in lexicographic order
/// with the first coordinate most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridShape {
    bounds: Vec<u32>,
    strides: Vec<usize>,
    len: usize,
}

impl GridShape {
    pub fn new(bounds: Vec<u32>) -> Result<Self, Error> {
        if bounds.is_empty() {
            return Err(Error::InvalidShape("at least one axis is required".into()));
        }
        let mut strides = vec![0usize; bounds.len()];
        let mut len: usize = 1;
        for i in (0..bounds.len()).rev() {
            strides[i] = len;
            len = (bounds[i] as usize + 1)
                .checked_mul(len)
                .filter(|&l| l <= MAX_GRID_LEN)
                .ok_or_else(|| Error::InvalidShape(format!("grid {bounds:?} is too large")))?;
        }
        Ok(GridShape {
            bounds,
            strides,
            len,
        })
    }

    pub fn uniform(n: usize, k: u32) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::InvalidShape("level bound k must be at least 1".into()));
        }
        GridShape::new(vec![k; n])
    }

    pub fn n(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn bound(&self, axis: usize) -> u32 {
        self.bounds[axis]
    }

    /// Largest bound across axes.
    pub fn max_bound(&self) -> u32 {
        self.bounds.iter().copied().max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn stride(&self, axis: usize) -> usize {
        self.strides[axis]
    }

    pub fn contains(&self, coords: &[u32]) -> bool {
        coords.len() == self.bounds.len() && coords.iter().zip(&self.bounds).all(|(c, b)| c <= b)
    }

    pub fn check(&self, coords: &[u32]) -> Result<(), Error> {
        if self.contains(coords) {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                point: format_coords(coords),
                bounds: format_coords(&self.bounds),
            })
        }
    }

    pub fn index(&self, coords: &[u32]) -> usize {
        debug_assert!(self.contains(coords));
        coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    pub fn coord(&self, index: usize, axis: usize) -> u32 {
        ((index / self.strides[axis]) % (self.bounds[axis] as usize + 1)) as u32
    }

    pub fn coords(&self, index: usize) -> Vec<u32> {
        (0..self.n()).map(|axis| self.coord(index, axis)).collect()
    }

    pub fn point(&self, index: usize) -> GridPoint {
        GridPoint(self.coords(index))
    }

    pub fn top(&self) -> Vec<u32> {
        self.bounds.clone()
    }

    /// Iterates all points in storage order.
    pub fn points(&self) -> Points<'_> {
        Points {
            shape: self,
            next: Some(vec![0; self.n()]),
        }
    }
}

/// Odometer over a [`GridShape`], last coordinate fastest.
pub struct Points<'a> {
    shape: &'a GridShape,
    next: Option<Vec<u32>>,
}

impl Iterator for Points<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for axis in (0..succ.len()).rev() {
            if succ[axis] < self.shape.bounds[axis] {
                succ[axis] += 1;
                self.next = Some(succ);
                return Some(current);
            }
            succ[axis] = 0;
        }
        Some(current)
    }
}

/// Advances `coords` to its lexicographic successor inside `bounds`; returns
/// false after the last point.
pub(crate) fn advance(coords: &mut [u32], bounds: &[u32]) -> bool {
    for axis in (0..coords.len()).rev() {
        if coords[axis] < bounds[axis] {
            coords[axis] += 1;
            return true;
        }
        coords[axis] = 0;
    }
    false
}
