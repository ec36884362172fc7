use crate::error::{Error, Result};
use crate::gai::{Alternative, AttributeSpace};

/// Comparisons and category assignments over an attribute space.
/// Categories are ordered: `0` is the worst.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceDataset {
    space: AttributeSpace,
    strict: Vec<(Alternative, Alternative)>,
    weak: Vec<(Alternative, Alternative)>,
    assignments: Vec<(Alternative, usize)>,
}

impl PreferenceDataset {
    /// Pairs are `(better, worse)`. Every alternative must lie in the space
    /// and every attribute needs at least two levels.
    pub fn new(
        space: AttributeSpace,
        strict: Vec<(Alternative, Alternative)>,
        weak: Vec<(Alternative, Alternative)>,
        assignments: Vec<(Alternative, usize)>,
    ) -> Result<Self> {
        if space.bounds().contains(&0) {
            return Err(Error::InvalidArgument(
                "every attribute needs at least two levels".into(),
            ));
        }
        for x in strict
            .iter()
            .chain(&weak)
            .flat_map(|(a, b)| [a, b])
            .chain(assignments.iter().map(|(x, _)| x))
        {
            space.check(x.coords())?;
        }
        Ok(PreferenceDataset {
            space,
            strict,
            weak,
            assignments,
        })
    }

    pub fn space(&self) -> &AttributeSpace {
        &self.space
    }

    pub fn strict(&self) -> &[(Alternative, Alternative)] {
        &self.strict
    }

    pub fn weak(&self) -> &[(Alternative, Alternative)] {
        &self.weak
    }

    pub fn assignments(&self) -> &[(Alternative, usize)] {
        &self.assignments
    }

    pub fn is_empty(&self) -> bool {
        self.strict.is_empty() && self.weak.is_empty() && self.assignments.is_empty()
    }

    /// One more than the highest assigned category, or zero.
    pub fn categories(&self) -> usize {
        self.assignments.iter().map(|(_, c)| c + 1).max().unwrap_or(0)
    }

    /// Whether any row asks for a positive separation.
    pub fn has_separations(&self) -> bool {
        !self.strict.is_empty() || self.assignments.iter().any(|(_, c)| *c > 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kary::GridPoint;

    fn p(c: &[u32]) -> GridPoint {
        GridPoint::new(c.to_vec())
    }

    #[test]
    fn validates_alternatives() {
        let space = AttributeSpace::from_bounds(&[1, 2]).unwrap();
        assert!(PreferenceDataset::new(space.clone(), vec![(p(&[1, 2]), p(&[0, 0]))], vec![], vec![]).is_ok());
        assert!(PreferenceDataset::new(space.clone(), vec![(p(&[2, 0]), p(&[0, 0]))], vec![], vec![]).is_err());
        assert!(PreferenceDataset::new(space, vec![], vec![], vec![(p(&[1]), 0)]).is_err());
        let flat = AttributeSpace::from_bounds(&[0, 2]).unwrap();
        assert!(PreferenceDataset::new(flat, vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn category_count() {
        let space = AttributeSpace::from_bounds(&[1, 1]).unwrap();
        let d = PreferenceDataset::new(space, vec![], vec![], vec![(p(&[0, 0]), 0), (p(&[1, 1]), 2)]).unwrap();
        assert_eq!(d.categories(), 3);
        assert!(d.has_separations());
    }
}
