use std::fmt;

use serde::Serialize;

/// A point of the base-`ℓ` odometer truncated to `K` digits, least
/// significant digit first. Arithmetic is modulo `ℓ^K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OdometerElement {
    base: u32,
    digits: Vec<u32>,
}

impl OdometerElement {
    pub fn new(base: u32, digits: Vec<u32>) -> Option<Self> {
        (base >= 2 && digits.iter().all(|&d| d < base)).then_some(Self { base, digits })
    }

    /// `0̄`.
    pub fn zero(base: u32, depth: usize) -> Self {
        Self {
            base,
            digits: vec![0; depth],
        }
    }

    /// `1̄ = …111`, the odometer coordinate of the `σ∘θ`-fixed points.
    pub fn ones(base: u32, depth: usize) -> Self {
        Self {
            base,
            digits: vec![1; depth],
        }
    }

    pub fn from_integer(base: u32, depth: usize, n: i64) -> Self {
        Self::zero(base, depth).add(n)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Adds an integer, digit by digit with carry.
    pub fn add(&self, n: i64) -> Self {
        let b = self.base as i128;
        let mut carry = n as i128;
        let digits = self
            .digits
            .iter()
            .map(|&d| {
                let t = d as i128 + carry;
                carry = t.div_euclid(b);
                t.rem_euclid(b) as u32
            })
            .collect();
        Self {
            base: self.base,
            digits,
        }
    }

    /// Group operation of `ℤ/ℓ^K`.
    pub fn add_element(&self, other: &Self) -> Self {
        assert_eq!((self.base, self.depth()), (other.base, other.depth()));
        let mut carry = 0;
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .map(|(&a, &b)| {
                let t = a + b + carry;
                carry = t / self.base;
                t % self.base
            })
            .collect();
        Self {
            base: self.base,
            digits,
        }
    }

    pub fn negate(&self) -> Self {
        // -z = (ℓ^K - 1 - z) + 1 digit-wise
        let flipped = Self {
            base: self.base,
            digits: self.digits.iter().map(|&d| self.base - 1 - d).collect(),
        };
        flipped.add(1)
    }

    /// Value in `[0, ℓ^K)`, if it fits.
    pub fn to_integer(&self) -> Option<u64> {
        self.digits.iter().rev().try_fold(0u64, |acc, &d| {
            acc.checked_mul(self.base as u64)?.checked_add(d as u64)
        })
    }
}

impl fmt::Display for OdometerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(OdometerElement::ones(5, 4).add(1).digits(), &[2, 1, 1, 1]);
        let minus_one = OdometerElement::new(5, vec![4, 4, 4, 4]).unwrap();
        assert_eq!(minus_one.add(1).digits(), &[0, 0, 0, 0]);
        assert_eq!(OdometerElement::zero(5, 4).add(7).digits(), &[2, 1, 0, 0]);
        assert_eq!(OdometerElement::zero(5, 4).add(-1), minus_one);
        assert!(OdometerElement::new(5, vec![5]).is_none());
    }

    proptest! {
        #[test]
        fn integer_addition_is_modular(base in 2u32..7, depth in 1usize..6, a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let z = OdometerElement::from_integer(base, depth, a);
            let modulus = (base as i64).pow(depth as u32);
            prop_assert_eq!(z.add(b).to_integer().unwrap() as i64, (a + b).rem_euclid(modulus));
            let w = OdometerElement::from_integer(base, depth, b);
            prop_assert_eq!(z.add_element(&w), z.add(b));
            prop_assert_eq!(z.add_element(&z.negate()), OdometerElement::zero(base, depth));
        }
    }
}
