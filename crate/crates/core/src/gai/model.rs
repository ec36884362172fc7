use crate::error::{Error, Result};
use crate::kary::{advance, GridPoint, GridShape};
use crate::rational::Rational;

/// An alternative: one level index per attribute.
pub type Alternative = GridPoint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attribute {
    pub name: String,
    /// Worst level first.
    pub levels: Vec<String>,
}

/// Ordered attributes with ordered levels; level `0` is the worst.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttributeSpace {
    attributes: Vec<Attribute>,
    shape: GridShape,
}

impl AttributeSpace {
    pub fn new(attributes: Vec<Attribute>) -> Result<Self> {
        if attributes.is_empty() {
            return Err(Error::InvalidArgument("at least one attribute is required".into()));
        }
        let mut bounds = Vec::with_capacity(attributes.len());
        for attr in &attributes {
            if attr.levels.is_empty() {
                return Err(Error::InvalidArgument(format!(
                    "attribute {:?} has no levels",
                    attr.name
                )));
            }
            bounds.push((attr.levels.len() - 1) as u32);
        }
        let shape = GridShape::new(bounds)?;
        Ok(AttributeSpace { attributes, shape })
    }

    /// Attributes named `x0, x1, ...` with levels `"0".."m_i"`.
    pub fn from_bounds(bounds: &[u32]) -> Result<Self> {
        let attributes = bounds
            .iter()
            .enumerate()
            .map(|(i, &m)| Attribute {
                name: format!("x{i}"),
                levels: (0..=m).map(|l| l.to_string()).collect(),
            })
            .collect();
        Self::new(attributes)
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    pub fn n(&self) -> usize {
        self.attributes.len()
    }

    /// Per-attribute level bounds `m_i`.
    pub fn bounds(&self) -> &[u32] {
        self.shape.bounds()
    }

    pub fn m(&self, attribute: usize) -> u32 {
        self.shape.bound(attribute)
    }

    /// `max_i m_i`.
    pub fn k(&self) -> u32 {
        self.shape.max_bound()
    }

    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    pub fn check(&self, x: &[u32]) -> Result<()> {
        self.shape.check(x)
    }

    /// Sub-grid of the attributes in `scope`.
    pub(crate) fn scope_shape(&self, scope: &[usize]) -> Result<GridShape> {
        GridShape::new(scope.iter().map(|&i| self.m(i)).collect())
    }

    pub(crate) fn check_scope(&self, scope: &[usize]) -> Result<()> {
        if scope.is_empty() {
            return Err(Error::InvalidArgument("empty scope".into()));
        }
        if scope.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "scope {scope:?} must be strictly increasing"
            )));
        }
        if let Some(&last) = scope.last() {
            if last >= self.n() {
                return Err(Error::InvalidArgument(format!(
                    "scope {scope:?} names an attribute beyond {}",
                    self.n() - 1
                )));
            }
        }
        Ok(())
    }
}

/// A term `u_S`: a dense table over the level grid of its scope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaiTerm {
    scope: Vec<usize>,
    shape: GridShape,
    values: Vec<Rational>,
}

impl GaiTerm {
    pub fn new(space: &AttributeSpace, scope: Vec<usize>, values: Vec<Rational>) -> Result<Self> {
        space.check_scope(&scope)?;
        let shape = space.scope_shape(&scope)?;
        if values.len() != shape.len() {
            return Err(Error::LengthMismatch {
                expected: shape.len(),
                actual: values.len(),
            });
        }
        Ok(GaiTerm {
            scope,
            shape,
            values,
        })
    }

    /// Tabulates `f` over the scope's levels; `f` receives local coordinates.
    pub fn from_fn(
        space: &AttributeSpace,
        scope: Vec<usize>,
        mut f: impl FnMut(&[u32]) -> Rational,
    ) -> Result<Self> {
        space.check_scope(&scope)?;
        let shape = space.scope_shape(&scope)?;
        let values = shape.points().map(|p| f(&p)).collect();
        Ok(GaiTerm {
            scope,
            shape,
            values,
        })
    }

    pub fn scope(&self) -> &[usize] {
        &self.scope
    }

    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Value at local coordinates within the scope.
    pub fn value_at(&self, local: &[u32]) -> &Rational {
        &self.values[self.shape.index(local)]
    }

    /// Value at the projection `x_S` of a full alternative.
    pub fn lookup(&self, x: &[u32]) -> &Rational {
        let idx: usize = self
            .scope
            .iter()
            .enumerate()
            .map(|(pos, &attr)| x[attr] as usize * self.shape.stride(pos))
            .sum();
        &self.values[idx]
    }
}

/// `U(x) = sum_S u_S(x_S)` over distinct scopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaiModel {
    space: AttributeSpace,
    terms: Vec<GaiTerm>,
}

impl GaiModel {
    pub fn new(space: AttributeSpace, terms: Vec<GaiTerm>) -> Result<Self> {
        for (i, term) in terms.iter().enumerate() {
            space.check_scope(&term.scope)?;
            if term.shape.bounds() != space.scope_shape(&term.scope)?.bounds() {
                return Err(Error::InvalidArgument(format!(
                    "term over {:?} does not match the attribute levels",
                    term.scope
                )));
            }
            if terms[..i].iter().any(|t| t.scope == term.scope) {
                return Err(Error::InvalidArgument(format!(
                    "scope {:?} appears twice",
                    term.scope
                )));
            }
        }
        Ok(GaiModel { space, terms })
    }

    pub fn space(&self) -> &AttributeSpace {
        &self.space
    }

    pub fn terms(&self) -> &[GaiTerm] {
        &self.terms
    }

    /// Exact sum of the term tables at the projections of `x`.
    pub fn evaluate(&self, x: &Alternative) -> Result<Rational> {
        self.space.check(x.coords())?;
        Ok(self.evaluate_at(x.coords()))
    }

    pub(crate) fn evaluate_at(&self, x: &[u32]) -> Rational {
        let mut acc = Rational::ZERO;
        for term in &self.terms {
            acc += term.lookup(x);
        }
        acc
    }

    pub fn tabulate(&self) -> TabulatedFunction {
        let values = self
            .space
            .shape()
            .points()
            .map(|x| self.evaluate_at(&x))
            .collect();
        TabulatedFunction {
            space: self.space.clone(),
            values,
        }
    }
}

/// A utility given pointwise on every alternative, in grid order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabulatedFunction {
    space: AttributeSpace,
    values: Vec<Rational>,
}

impl TabulatedFunction {
    pub fn new(space: AttributeSpace, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space.shape().len() {
            return Err(Error::LengthMismatch {
                expected: space.shape().len(),
                actual: values.len(),
            });
        }
        Ok(TabulatedFunction { space, values })
    }

    pub fn from_fn(space: AttributeSpace, mut f: impl FnMut(&[u32]) -> Rational) -> Self {
        let mut values = Vec::with_capacity(space.shape().len());
        let mut x = vec![0u32; space.n()];
        loop {
            values.push(f(&x));
            if !advance(&mut x, space.bounds()) {
                break;
            }
        }
        TabulatedFunction { space, values }
    }

    pub fn space(&self) -> &AttributeSpace {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, x: &Alternative) -> Result<&Rational> {
        self.space.check(x.coords())?;
        Ok(self.value_at(x.coords()))
    }

    /// Panics when `x` lies off the grid.
    pub fn value_at(&self, x: &[u32]) -> &Rational {
        assert!(self.space.shape().contains(x), "alternative {x:?} off the grid");
        &self.values[self.space.shape().index(x)]
    }
}
