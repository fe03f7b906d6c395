use super::coeff::Coefficient;
use super::truncated::Series;

/// `F(z,u) = Σ_ℓ f_ℓ(z) u^ℓ` with every `f_ℓ` truncated at the same order.
/// Trailing zero terms are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPolySeries<T> {
    order: usize,
    terms: Vec<Series<T>>,
}

impl<T: Coefficient> UPolySeries<T> {
    pub fn new(order: usize, terms: Vec<Series<T>>) -> Self {
        let mut terms: Vec<Series<T>> = terms.into_iter().map(|t| t.truncate(order)).collect();
        while terms.last().is_some_and(Series::is_zero) {
            terms.pop();
        }
        UPolySeries { order, terms }
    }

    /// The constant `1`.
    pub fn one(order: usize) -> Self {
        UPolySeries::new(order, vec![Series::one(order)])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &[Series<T>] {
        &self.terms
    }

    /// `None` for the zero polynomial.
    pub fn u_degree(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    /// `f_ℓ`, zero beyond the degree.
    pub fn term(&self, l: usize) -> Series<T> {
        self.terms.get(l).cloned().unwrap_or_else(|| Series::zero(self.order))
    }

    /// `F(z, s(z))` by Horner in `u`. Exact to the z-order when `s(0) = 0`.
    pub fn evaluate_at(&self, s: &Series<T>) -> Series<T> {
        let mut acc = Series::zero(self.order.min(s.order()));
        for t in self.terms.iter().rev() {
            acc = acc.mul(s).add(t);
        }
        acc
    }

    pub fn map_terms(&self, f: impl Fn(&Series<T>) -> Series<T>) -> Self {
        UPolySeries::new(self.order, self.terms.iter().map(f).collect())
    }
}
