use super::model::{GaiModel, TabulatedFunction};
use crate::error::{Error, Result};
use crate::kary::{check_table, KaryCapacity, KaryGame};

/// How points with some `z_i > m_i` are filled when the level counts differ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Fill {
    /// `U` at the componentwise-clamped point; keeps 2-additivity.
    #[default]
    Clamp,
    /// The top value `U(m_1, ..., m_n) = 1`.
    Constant,
}

/// Embeds a monotone normalized utility into a k-ary capacity on
/// `{0..k}^n`, `k = max m_i`, with `v(x) = U(x)` on the alternatives.
pub fn embed(u: &TabulatedFunction, fill: Fill) -> Result<KaryCapacity> {
    let space = u.space();
    let report = check_table(space.shape(), u.values());
    if !report.is_capacity() {
        return Err(Error::NotACapacity(Box::new(report)));
    }
    let bounds = space.bounds();
    let top = u.values().last().expect("nonempty grid").clone();
    let mut clamped = vec![0u32; space.n()];
    let game = KaryGame::from_fn(space.n(), space.k(), |z| {
        let inside = z.iter().zip(bounds).all(|(a, b)| a <= b);
        if !inside && fill == Fill::Constant {
            return top.clone();
        }
        for ((c, &a), &b) in clamped.iter_mut().zip(z).zip(bounds) {
            *c = a.min(b);
        }
        u.value_at(&clamped).clone()
    })?;
    Ok(KaryCapacity::new_unchecked(game))
}

pub fn embed_model(model: &GaiModel, fill: Fill) -> Result<KaryCapacity> {
    embed(&model.tabulate(), fill)
}
