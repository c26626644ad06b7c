//! Exact scalar arithmetic in GF(2^k) for 1 <= k <= 8.
//!
//! Field elements are k-bit values. Each degree uses one fixed irreducible
//! reduction polynomial so that coordinates are reproducible across runs:
//!
//! | k | polynomial              | bits        |
//! |---|-------------------------|-------------|
//! | 1 | x                       | `0b10`      |
//! | 2 | x^2 + x + 1             | `0b111`     |
//! | 3 | x^3 + x + 1             | `0b1011`    |
//! | 4 | x^4 + x + 1             | `0b10011`   |
//! | 5 | x^5 + x^2 + 1           | `0b100101`  |
//! | 6 | x^6 + x + 1             | `0b1000011` |
//! | 7 | x^7 + x + 1             | `0b10000011`|
//! | 8 | x^8 + x^4 + x^3 + x + 1 | `0b100011011`|

use serde::Serialize;

use crate::error::{Error, Result};

const REDUCTION: [u16; 9] = [
    0, // unused (degree 0)
    0b10,
    0b111,
    0b1011,
    0b10011,
    0b100101,
    0b1000011,
    0b10000011,
    0b100011011,
];

/// A field GF(2^k), identified by its degree `k` and the fixed reduction
/// polynomial above.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    k: u8,
}

impl FieldSpec {
    pub fn new(k: u8) -> Result<Self> {
        if (1..=8).contains(&k) {
            Ok(FieldSpec { k })
        } else {
            Err(Error::FieldDegree(k))
        }
    }

    /// GF(2) — the prime field.
    pub fn gf2() -> Self {
        FieldSpec { k: 1 }
    }

    pub fn degree(&self) -> u8 {
        self.k
    }

    /// Number of field elements, 2^k.
    pub fn order(&self) -> u16 {
        1 << self.k
    }

    pub fn reduction_poly(&self) -> u16 {
        REDUCTION[self.k as usize]
    }

    fn mask(&self) -> u16 {
        (1u16 << self.k) - 1
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        a ^ b
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        // Carry-less product then reduction; intermediate fits in 16 bits.
        let mut prod: u16 = 0;
        let (a, b) = (a as u16, b as u16);
        for i in 0..self.k as u32 {
            if (b >> i) & 1 == 1 {
                prod ^= a << i;
            }
        }
        let poly = REDUCTION[self.k as usize];
        for i in (self.k as u32..16).rev() {
            if (prod >> i) & 1 == 1 {
                prod ^= poly << (i - self.k as u32);
            }
        }
        debug_assert_eq!(prod & !self.mask(), 0);
        prod as u8
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via a^(2^k - 2); errors on zero.
    pub fn inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            return Err(Error::ZeroInverse(self.k));
        }
        Ok(self.pow(a, (1u64 << self.k) - 2))
    }

    /// The Frobenius automorphism e -> e^2.
    pub fn frobenius(&self, a: u8) -> u8 {
        self.mul(a, a)
    }

    /// Iterate over all field elements.
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..=(self.mask() as u8)
    }
}
