//! The infinite semigroup of matrices `[[1, a], [0, b]]` with positive
//! integer entries, represented by the pair `(a, b)`.
//!
//! Closed-form product: `(a, b) * (c, d) = (c + a*d, b*d)`. Entries grow
//! geometrically under powers, so everything is arbitrary precision.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// One matrix `[[1, a], [0, b]]` with `a, b >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriElement {
    a: BigUint,
    b: BigUint,
}

impl TriElement {
    pub fn new(a: BigUint, b: BigUint) -> Result<Self> {
        use num_bigint::BigUint as B;
        if a < B::from(1u8) || b < B::from(1u8) {
            return Err(Error::input("matrix entries must be positive"));
        }
        Ok(TriElement { a, b })
    }

    pub fn from_u64(a: u64, b: u64) -> Result<Self> {
        TriElement::new(BigUint::from(a), BigUint::from(b))
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }
}

impl fmt::Display for TriElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Matrix product in pair form.
pub fn tri_mul(x: &TriElement, y: &TriElement) -> TriElement {
    TriElement {
        a: &y.a + &x.a * &y.b,
        b: &x.b * &y.b,
    }
}

/// `x^k` for `k >= 1`.
pub fn tri_power(x: &TriElement, k: u32) -> Result<TriElement> {
    if k == 0 {
        return Err(Error::input("power exponent must be at least 1"));
    }
    let mut acc = x.clone();
    for _ in 1..k {
        acc = tri_mul(&acc, x);
    }
    Ok(acc)
}
