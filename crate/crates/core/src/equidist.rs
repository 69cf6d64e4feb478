//! Residue statistics of enumerated denominators: per-modulus histograms and
//! their deviation from uniform, both raw and normalized by the truncation
//! size.

use crate::error::{Error, Result};
use crate::real::{from_u64, Real};

/// Counts of d mod m over an enumerated truncation, for every modulus
/// 1 ≤ m ≤ max_modulus.
#[derive(Clone, Debug)]
pub struct ResidueHistogram {
    total: u64,
    /// counts[m] has m slots; counts[0] stays empty.
    counts: Vec<Vec<u64>>,
}

impl ResidueHistogram {
    pub(crate) fn new(max_modulus: u32) -> Self {
        let counts = (0..=max_modulus as u64)
            .map(|m| vec![0u64; m as usize])
            .collect();
        ResidueHistogram { total: 0, counts }
    }

    #[inline]
    pub(crate) fn record(&mut self, value: u64) {
        self.total += 1;
        for (m, row) in self.counts.iter_mut().enumerate().skip(1) {
            row[(value % m as u64) as usize] += 1;
        }
    }

    pub(crate) fn merge(&mut self, other: &ResidueHistogram) {
        debug_assert_eq!(self.counts.len(), other.counts.len());
        self.total += other.total;
        for (mine, theirs) in self.counts.iter_mut().zip(&other.counts) {
            for (x, y) in mine.iter_mut().zip(theirs) {
                *x += *y;
            }
        }
    }

    pub fn max_modulus(&self) -> u32 {
        (self.counts.len() - 1) as u32
    }

    /// Number of matrices in the truncation.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, m: u32, r: u64) -> Result<u64> {
        self.check(m, r)?;
        Ok(self.counts[m as usize][r as usize])
    }

    /// |#{residue r mod m} − total/m|, with total/m as a real quotient.
    pub fn absolute_error<F: Real>(&self, r: u64, m: u32) -> Result<F> {
        self.check(m, r)?;
        let observed = from_u64::<F>(self.counts[m as usize][r as usize]);
        let expected = from_u64::<F>(self.total) / from_u64::<F>(m as u64);
        Ok((observed - expected).abs())
    }

    /// max over residues r of the absolute error at modulus m.
    pub fn largest_error<F: Real>(&self, m: u32) -> Result<F> {
        self.check(m, 0)?;
        let mut worst = F::zero();
        for r in 0..m as u64 {
            worst = worst.max(self.absolute_error(r, m)?);
        }
        Ok(worst)
    }

    /// Largest error divided by the truncation size; always within
    /// [0, 1 − 1/m].
    pub fn normalized_largest_error<F: Real>(&self, m: u32) -> Result<F> {
        if self.total == 0 {
            return Err(Error::Data("empty truncation has no error profile".into()));
        }
        Ok(self.largest_error::<F>(m)? / from_u64::<F>(self.total))
    }

    fn check(&self, m: u32, r: u64) -> Result<()> {
        if m < 1 || m > self.max_modulus() {
            return Err(Error::Argument(format!(
                "modulus {m} outside histogram range 1..={}",
                self.max_modulus()
            )));
        }
        if r >= m as u64 {
            return Err(Error::Argument(format!("residue {r} not below modulus {m}")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The five denominators of the alphabet-2 truncation d ≤ 5.
    fn fixture() -> ResidueHistogram {
        let mut h = ResidueHistogram::new(5);
        for d in [2u64, 3, 3, 5, 5] {
            h.record(d);
        }
        h
    }

    #[test]
    fn absolute_errors_match_hand_counts() {
        let h = fixture();
        assert_eq!(h.total(), 5);
        assert_eq!(h.absolute_error::<f64>(0, 1).unwrap(), 0.0);
        assert!((h.absolute_error::<f64>(0, 2).unwrap() - 1.5).abs() < 1e-15);
        assert!((h.absolute_error::<f64>(1, 2).unwrap() - 1.5).abs() < 1e-15);
        assert!(h.absolute_error::<f64>(2, 2).is_err());
        assert!(h.absolute_error::<f64>(0, 6).is_err());
        assert!(h.absolute_error::<f64>(0, 0).is_err());
    }

    #[test]
    fn largest_errors_match_hand_counts() {
        let h = fixture();
        assert_eq!(h.largest_error::<f64>(1).unwrap(), 0.0);
        assert!((h.largest_error::<f64>(2).unwrap() - 1.5).abs() < 1e-15);
        // residues mod 5 of {2,3,3,5,5}: r=0 twice, r=2 once, r=3 twice
        assert!((h.largest_error::<f64>(5).unwrap() - 1.0).abs() < 1e-15);
        assert!(h.largest_error::<f64>(6).is_err());
    }

    #[test]
    fn normalized_errors_match_hand_counts() {
        let h = fixture();
        assert_eq!(h.normalized_largest_error::<f64>(1).unwrap(), 0.0);
        assert!((h.normalized_largest_error::<f64>(2).unwrap() - 0.3).abs() < 1e-15);
        assert!((h.normalized_largest_error::<f64>(5).unwrap() - 0.2).abs() < 1e-15);

        let empty = ResidueHistogram::new(3);
        assert!(matches!(
            empty.normalized_largest_error::<f64>(2),
            Err(Error::Data(_))
        ));
    }

    #[test]
    fn rows_conserve_the_total_and_refine_consistently() {
        let mut h = ResidueHistogram::new(12);
        for d in [2u64, 3, 3, 5, 5, 8, 13, 21, 34, 55] {
            h.record(d);
        }
        for m in 1..=12u32 {
            let sum: u64 = (0..m as u64).map(|r| h.count(m, r).unwrap()).sum();
            assert_eq!(sum, h.total(), "m={m}");
            let bound = 1.0 - 1.0 / m as f64;
            assert!(h.normalized_largest_error::<f64>(m).unwrap() <= bound + 1e-15);
        }
        // counts mod m are the fold of counts mod k·m
        for (m, km) in [(2u32, 4u32), (2, 8), (3, 6), (3, 12), (4, 12), (6, 12)] {
            for r in 0..m as u64 {
                let folded: u64 = (0..km as u64)
                    .filter(|rp| rp % m as u64 == r)
                    .map(|rp| h.count(km, rp).unwrap())
                    .sum();
                assert_eq!(h.count(m, r).unwrap(), folded, "m={m} km={km} r={r}");
            }
        }
    }

    #[test]
    fn merge_adds_counts() {
        let mut h1 = fixture();
        let mut h2 = ResidueHistogram::new(5);
        h2.record(7);
        h2.record(11);
        h1.merge(&h2);
        assert_eq!(h1.total(), 7);
        assert_eq!(h1.count(5, 2).unwrap(), 2); // 2, 7
        assert_eq!(h1.count(5, 1).unwrap(), 1); // 11
    }
}
