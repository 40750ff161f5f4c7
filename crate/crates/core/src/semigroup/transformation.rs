use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SemigroupError;

/// A total map on the point set `{0, .., n-1}`, stored as its image array.
///
/// Products follow the composition convention `f * g = f ∘ g`: `g` is
/// applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transformation {
    images: Vec<usize>,
}

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self, SemigroupError> {
        let n = images.len();
        if n == 0 {
            return Err(SemigroupError::ZeroDegree);
        }
        if let Some((point, &image)) = images.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(SemigroupError::ImageOutOfRange {
                point,
                image,
                degree: n,
            });
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    pub fn constant(degree: usize, value: usize) -> Self {
        assert!(value < degree);
        Self {
            images: vec![value; degree],
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation, SemigroupError> {
        if self.degree() != other.degree() {
            return Err(SemigroupError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Transformation) -> Transformation {
        Transformation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.images.iter().copied().collect()
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.degree()
    }

    pub fn is_idempotent(&self) -> bool {
        self.images.iter().all(|&v| self.images[v] == v)
    }

    /// The common value if the map is constant.
    pub fn constant_value(&self) -> Option<usize> {
        let first = self.images[0];
        self.images.iter().all(|&v| v == first).then_some(first)
    }

    /// Whether the restriction of the map to its own image is a bijection of
    /// that image.
    pub fn is_bijective_on_image(&self) -> bool {
        let image = self.image();
        let restricted: BTreeSet<usize> = image.iter().map(|&x| self.images[x]).collect();
        restricted.len() == image.len()
    }

    /// Finite-set criterion: `im f = im f²`.
    pub fn image_is_stable(&self) -> bool {
        self.image() == self.compose_unchecked(self).image()
    }

    /// Normal inverse `g = f̃⁻² ∘ f`, where `f̃` is the restriction of `f` to
    /// its image; `None` when that restriction is not bijective.
    pub fn normal_inverse(&self) -> Option<Transformation> {
        if !self.is_bijective_on_image() {
            return None;
        }
        let n = self.degree();
        let mut inverse_on_image = vec![usize::MAX; n];
        for x in self.image() {
            inverse_on_image[self.images[x]] = x;
        }
        let images = self
            .images
            .iter()
            .map(|&y| inverse_on_image[inverse_on_image[y]])
            .collect();
        Some(Transformation { images })
    }

    /// Idempotent power `f^k` with `k` the smallest positive exponent for
    /// which it is idempotent.
    pub fn idempotent_power(&self) -> Transformation {
        let mut power = self.clone();
        loop {
            if power.is_idempotent() {
                return power;
            }
            power = power.compose_unchecked(self);
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[usize]) -> Transformation {
        Transformation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_out_of_range_and_empty() {
        assert!(matches!(
            Transformation::new(vec![0, 2]),
            Err(SemigroupError::ImageOutOfRange {
                point: 1,
                image: 2,
                degree: 2
            })
        ));
        assert!(matches!(
            Transformation::new(vec![]),
            Err(SemigroupError::ZeroDegree)
        ));
    }

    #[test]
    fn composition_applies_right_factor_first() {
        // phi = (a->a, b->a, c->b)
        let phi = t(&[0, 0, 1]);
        let pi_a = t(&[0, 0, 0]);
        let pi_b = t(&[1, 1, 1]);
        assert_eq!(phi.compose(&phi).unwrap(), pi_a);
        assert_eq!(pi_b.compose(&phi).unwrap(), pi_b);
        assert_eq!(phi.compose(&pi_b).unwrap(), pi_a);
        let id = Transformation::identity(3);
        assert_eq!(id.compose(&phi).unwrap(), phi);
    }

    #[test]
    fn degree_mismatch() {
        assert!(t(&[0]).compose(&t(&[0, 1])).is_err());
    }

    #[test]
    fn normal_inverse_of_cycle_is_group_inverse() {
        let c = t(&[1, 2, 0]);
        let inv = c.normal_inverse().unwrap();
        assert_eq!(inv, t(&[2, 0, 1]));
        assert!(c.compose(&inv).unwrap().is_identity());
    }

    #[test]
    fn phi_is_not_bijective_on_image() {
        let phi = t(&[0, 0, 1]);
        assert!(!phi.is_bijective_on_image());
        assert!(!phi.image_is_stable());
        assert_eq!(phi.image(), [0, 1].into_iter().collect());
        assert_eq!(
            phi.compose(&phi).unwrap().image(),
            [0].into_iter().collect()
        );
        assert!(phi.normal_inverse().is_none());
    }

    #[test]
    fn idempotent_power_of_non_regular_map() {
        let phi = t(&[0, 0, 1]);
        assert_eq!(phi.idempotent_power(), t(&[0, 0, 0]));
        let swap = t(&[1, 0]);
        assert_eq!(swap.idempotent_power(), Transformation::identity(2));
    }
}
