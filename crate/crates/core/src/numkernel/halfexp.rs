use crate::error::{Error, Result};

/// An exponent carried as twice its value, so `n/2` stays exact until it
/// has to become an integer power of `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct HalfExponent {
    twice_value: i64,
}

impl HalfExponent {
    pub fn from_twice(twice_value: i64) -> Self {
        HalfExponent { twice_value }
    }

    pub fn from_int(n: i64) -> Self {
        HalfExponent { twice_value: 2 * n }
    }

    /// `-(n/2)`, the shape every exponent in the DT generating function takes.
    pub fn neg_half(n: i64) -> Self {
        HalfExponent { twice_value: -n }
    }

    pub fn twice_value(&self) -> i64 {
        self.twice_value
    }

    pub fn finalize(self) -> Result<i64> {
        if self.twice_value % 2 != 0 {
            return Err(Error::OddHalfExponent {
                twice: self.twice_value,
            });
        }
        Ok(self.twice_value / 2)
    }
}

impl std::ops::Add for HalfExponent {
    type Output = HalfExponent;
    fn add(self, rhs: HalfExponent) -> HalfExponent {
        HalfExponent {
            twice_value: self.twice_value + rhs.twice_value,
        }
    }
}
