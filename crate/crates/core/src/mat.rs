//! 2×2 integer matrices encoding continued fractions, and the generator set
//! for even-length products.
//!
//! A finite continued fraction [a₁, …, aₖ] with partial quotients in
//! {1, …, A} is the product of the generators [[0,1],[1,aᵢ]]. Restricting to
//! even k keeps every product inside SL₂(ℤ), so the semigroup is generated by
//! the A² ordered two-letter products, each of the form [[1, j], [i, i·j+1]].
//! The bottom-right entry of a product is the denominator of the encoded
//! rational and strictly grows under right multiplication, which is what
//! makes bounded enumeration finite.

use crate::error::{Error, Result};

/// A 2×2 nonnegative integer matrix, row-major: [[a, b], [c, d]].
///
/// Semigroup elements built from [`Alphabet`] generators satisfy
/// det = 1, d ≥ 2, and the entry ordering a ≤ b ≤ d, a ≤ c ≤ d; the
/// identity is used only as the enumeration root.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };

    pub const fn new(a: u64, b: u64, c: u64, d: u64) -> Self {
        Mat2 { a, b, c, d }
    }

    /// Determinant a·d − b·c, computed in 128 bits so it is exact for any
    /// 64-bit entries.
    pub fn det(&self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// The bottom-right entry d: the denominator of the continued fraction
    /// this matrix encodes. For semigroup elements d is also the largest
    /// entry, so it doubles as the norm.
    #[inline]
    pub fn denominator(&self) -> u64 {
        self.d
    }

    pub fn max_entry(&self) -> u64 {
        self.a.max(self.b).max(self.c).max(self.d)
    }

    /// Matrix product self·rhs with overflow detection on every entry.
    pub fn mul(&self, rhs: &Mat2) -> Result<Mat2> {
        Ok(Mat2 {
            a: mul_add(self.a, rhs.a, self.b, rhs.c)?,
            b: mul_add(self.a, rhs.b, self.b, rhs.d)?,
            c: mul_add(self.c, rhs.a, self.d, rhs.c)?,
            d: mul_add(self.c, rhs.b, self.d, rhs.d)?,
        })
    }
}

/// x·y + z·w, erroring instead of wrapping.
#[inline]
pub(crate) fn mul_add(x: u64, y: u64, z: u64, w: u64) -> Result<u64> {
    let p = x.checked_mul(y).ok_or(Error::Overflow)?;
    let q = z.checked_mul(w).ok_or(Error::Overflow)?;
    p.checked_add(q).ok_or(Error::Overflow)
}

/// The partial-quotient alphabet {1, …, A} together with the A² two-letter
/// generator products of the even-length semigroup.
#[derive(Clone, Debug)]
pub struct Alphabet {
    bound: u32,
    gen_pairs: Vec<Mat2>,
}

impl Alphabet {
    /// Builds the alphabet with bound A ≥ 1 and materializes all A² ordered
    /// pair products [[1, j], [i, i·j+1]].
    pub fn new(bound: u32) -> Result<Self> {
        if bound < 1 {
            return Err(Error::Argument("alphabet bound must be at least 1".into()));
        }
        let mut gen_pairs = Vec::with_capacity(bound as usize * bound as usize);
        for i in 1..=bound as u64 {
            for j in 1..=bound as u64 {
                gen_pairs.push(Mat2::new(1, j, i, i * j + 1));
            }
        }
        Ok(Alphabet { bound, gen_pairs })
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// The single-letter generator [[0,1],[1,i]] for 1 ≤ i ≤ A.
    pub fn generator(&self, i: u32) -> Result<Mat2> {
        self.check_index(i)?;
        Ok(Mat2::new(0, 1, 1, i as u64))
    }

    /// generator(i)·generator(j) = [[1, j], [i, i·j+1]]; always unimodular.
    pub fn compose_pair(&self, i: u32, j: u32) -> Result<Mat2> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.generator(i)?.mul(&self.generator(j)?)
    }

    /// All A² pair products, ordered by (i, j).
    pub fn gen_pairs(&self) -> &[Mat2] {
        &self.gen_pairs
    }

    fn check_index(&self, i: u32) -> Result<()> {
        if i < 1 || i > self.bound {
            return Err(Error::Argument(format!(
                "partial quotient {i} outside alphabet 1..={}",
                self.bound
            )));
        }
        Ok(())
    }
}
