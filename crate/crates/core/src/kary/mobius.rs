use std::collections::{BTreeMap, BTreeSet};

use super::game::{KaryCapacity, KaryGame};
use super::grid::{advance, GridPoint, GridShape};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Sparse Möbius coefficients of a k-ary game; zero entries are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusMap {
    shape: GridShape,
    coefficients: BTreeMap<GridPoint, Rational>,
}

impl MobiusMap {
    /// Collects coefficients, summing repeated points and dropping zeros. The
    /// origin coefficient must vanish, since the game it generates does.
    pub fn new(
        n: usize,
        k: u32,
        entries: impl IntoIterator<Item = (GridPoint, Rational)>,
    ) -> Result<Self> {
        let shape = GridShape::uniform(n, k)?;
        let mut coefficients: BTreeMap<GridPoint, Rational> = BTreeMap::new();
        for (point, value) in entries {
            shape.check(point.coords())?;
            *coefficients.entry(point).or_insert(Rational::ZERO) += value;
        }
        coefficients.retain(|_, v| !v.is_zero());
        if let Some(value) = coefficients.get(&GridPoint::origin(n)) {
            return Err(Error::NonzeroOrigin(value.to_string()));
        }
        Ok(MobiusMap {
            shape,
            coefficients,
        })
    }

    pub fn zero(n: usize, k: u32) -> Result<Self> {
        Self::new(n, k, [])
    }

    /// The Möbius map of the unanimity game centered on `point`.
    pub fn indicator(n: usize, k: u32, point: GridPoint) -> Result<Self> {
        Self::new(n, k, [(point, Rational::ONE)])
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

    pub fn coefficients(&self) -> &BTreeMap<GridPoint, Rational> {
        &self.coefficients
    }

    pub fn get(&self, point: &GridPoint) -> Rational {
        self.coefficients
            .get(point)
            .cloned()
            .unwrap_or(Rational::ZERO)
    }

    /// Number of nonzero atoms.
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Largest support size among nonzero atoms, 0 for the zero map.
    pub fn degree(&self) -> usize {
        self.coefficients
            .keys()
            .map(GridPoint::support_size)
            .max()
            .unwrap_or(0)
    }

    /// Union of the supports of the nonzero atoms.
    pub fn support(&self) -> BTreeSet<usize> {
        self.coefficients
            .keys()
            .flat_map(|p| p.support())
            .collect()
    }

    /// True when every coefficient lies in {-1, 0, 1}.
    pub fn is_unit_valued(&self) -> bool {
        self.coefficients
            .values()
            .all(|v| v.is_one() || *v == Rational::NEG_ONE)
    }

    /// First atom (in grid order) whose support exceeds `p`.
    pub fn first_atom_beyond(&self, p: usize) -> Option<(&GridPoint, &Rational)> {
        self.coefficients
            .iter()
            .find(|(point, _)| point.support_size() > p)
    }

    pub fn scaled(&self, weight: &Rational) -> MobiusMap {
        let coefficients = if weight.is_zero() {
            BTreeMap::new()
        } else {
            self.coefficients
                .iter()
                .map(|(p, v)| (p.clone(), v * weight))
                .collect()
        };
        MobiusMap {
            shape: self.shape.clone(),
            coefficients,
        }
    }

    /// `self + weight * other`.
    pub fn add_scaled(&mut self, other: &MobiusMap, weight: &Rational) {
        assert_eq!(self.shape, other.shape, "maps on different grids");
        for (p, v) in &other.coefficients {
            *self
                .coefficients
                .entry(p.clone())
                .or_insert(Rational::ZERO) += v * weight;
        }
        self.coefficients.retain(|_, v| !v.is_zero());
    }
}

/// Calls `f(lower_index, upper_index)` for every pair `(z - 1_axis, z)` along
/// `axis`, in ascending order of `upper_index` when `ascending`.
fn for_each_axis_pair(
    shape: &GridShape,
    axis: usize,
    ascending: bool,
    mut f: impl FnMut(usize, usize),
) {
    let stride = shape.stride(axis);
    let levels = shape.bound(axis) as usize + 1;
    let block = stride * levels;
    let blocks = shape.len() / block;
    if ascending {
        for b in 0..blocks {
            for level in 1..levels {
                let base = b * block + level * stride;
                for inner in 0..stride {
                    f(base + inner - stride, base + inner);
                }
            }
        }
    } else {
        for b in (0..blocks).rev() {
            for level in (1..levels).rev() {
                let base = b * block + level * stride;
                for inner in (0..stride).rev() {
                    f(base + inner - stride, base + inner);
                }
            }
        }
    }
}

/// In-place Möbius inversion over a product of chains: the composition of
/// one-dimensional backward differences along every axis.
pub(crate) fn difference_in_place(shape: &GridShape, values: &mut [Rational]) {
    for axis in 0..shape.n() {
        for_each_axis_pair(shape, axis, false, |lo, hi| {
            let (head, tail) = values.split_at_mut(hi);
            if !head[lo].is_zero() {
                tail[0] -= &head[lo];
            }
        });
    }
}

/// In-place zeta transform: prefix sums along every axis.
pub(crate) fn prefix_sum_in_place(shape: &GridShape, values: &mut [Rational]) {
    for axis in 0..shape.n() {
        for_each_axis_pair(shape, axis, true, |lo, hi| {
            let (head, tail) = values.split_at_mut(hi);
            if !head[lo].is_zero() {
                tail[0] += &head[lo];
            }
        });
    }
}

/// `v(z) = sum over y <= z of m(y)`.
pub fn zeta(m: &MobiusMap) -> KaryGame {
    let shape = m.shape.clone();
    let mut values = vec![Rational::ZERO; shape.len()];
    for (point, value) in &m.coefficients {
        values[shape.index(point.coords())] = value.clone();
    }
    prefix_sum_in_place(&shape, &mut values);
    KaryGame::from_table(shape, values).expect("origin coefficient is zero")
}

/// Möbius transform of a game: the alternating sum over the unit box below
/// each point.
pub fn mobius(v: &KaryGame) -> MobiusMap {
    let shape = v.shape().clone();
    let mut values = v.values().to_vec();
    difference_in_place(&shape, &mut values);
    let coefficients = values
        .into_iter()
        .enumerate()
        .filter(|(_, value)| !value.is_zero())
        .map(|(idx, value)| (shape.point(idx), value))
        .collect();
    MobiusMap {
        shape,
        coefficients,
    }
}

/// Möbius function of the chain `0 < 1 < ... < k`, from its recursive
/// definition.
fn chain_mobius_function(k: u32) -> Vec<Vec<i64>> {
    let size = k as usize + 1;
    let mut mu = vec![vec![0i64; size]; size];
    for x in 0..size {
        mu[x][x] = 1;
        for y in x + 1..size {
            mu[x][y] = -(x..y).map(|t| mu[x][t]).sum::<i64>();
        }
    }
    mu
}

/// Generic poset inversion `m(x) = sum_{y <= x} mu(y, x) v(y)`, with `mu`
/// the product of chain Möbius functions. Quadratic in the grid size; meant
/// as an oracle on small grids.
pub fn mobius_bruteforce(v: &KaryGame) -> MobiusMap {
    let shape = v.shape().clone();
    let mu = chain_mobius_function(v.k());
    let mut coefficients = BTreeMap::new();
    for x in shape.points() {
        let mut acc = Rational::ZERO;
        let mut y = vec![0u32; x.len()];
        loop {
            let weight: i64 = y
                .iter()
                .zip(&x)
                .map(|(&a, &b)| mu[a as usize][b as usize])
                .product();
            if weight != 0 {
                acc += v.value_at(&y) * Rational::from(weight);
            }
            if !advance(&mut y, &x) {
                break;
            }
        }
        if !acc.is_zero() {
            coefficients.insert(GridPoint::new(x), acc);
        }
    }
    MobiusMap {
        shape,
        coefficients,
    }
}

/// The unanimity game `u_x`: 1 on `{z : z >= x}`, 0 elsewhere.
pub fn unanimity(n: usize, k: u32, x: &GridPoint) -> Result<KaryCapacity> {
    let shape = GridShape::uniform(n, k)?;
    shape.check(x.coords())?;
    if x.is_origin() {
        return Err(Error::OriginUnanimity);
    }
    let game = KaryGame::from_fn(n, k, |z| {
        if z.iter().zip(x.coords()).all(|(a, b)| a >= b) {
            Rational::ONE
        } else {
            Rational::ZERO
        }
    })?;
    Ok(KaryCapacity::new_unchecked(game))
}

/// Smallest `p` such that the Möbius map vanishes beyond support size `p`.
/// The identically-zero game has no meaningful degree and reports 0.
pub fn p_additivity_degree(v: &KaryGame) -> usize {
    mobius(v).degree()
}

/// Union of the supports of the atoms carrying nonzero Möbius mass.
pub fn support(v: &KaryGame) -> BTreeSet<usize> {
    mobius(v).support()
}

/// Recomputes the Möbius map and fails with a witness atom unless the game is
/// at most 2-additive.
pub fn ensure_two_additive(v: &KaryGame) -> Result<MobiusMap> {
    let m = mobius(v);
    if let Some((point, value)) = m.first_atom_beyond(2) {
        return Err(Error::NotTwoAdditive {
            point: point.to_string(),
            coefficient: value.to_string(),
            support_size: point.support_size(),
        });
    }
    Ok(m)
}
