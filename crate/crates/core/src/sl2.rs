//! Brute-force SL₂(ℤ/qℤ) tables and the group-averaged Ramanujan sums
//! C̄_q(n) they induce, next to the closed-form prime-power values the
//! rest of the crate relies on.
//!
//! The closed form says C̄_{p^t}(n) is −1/(p+1) when t = 1 and p | n,
//! 1/(p²−1) when t = 1 and p ∤ n, and 0 for t ≥ 2. [`cbar_bruteforce`]
//! recomputes the same quantity by literal summation over the finite group,
//! in exact rational arithmetic, so the two routes can be compared for
//! exact equality. Only the closed form runs in production paths.

use crate::error::{Error, Result};
use crate::number_theory::ramanujan_c;
use crate::Rational;

/// Largest modulus accepted for exhaustive enumeration; the group order
/// grows like q³.
pub const MAX_MODULUS: u64 = 128;

/// The full solution set of a·d − b·c ≡ 1 (mod q), stored entrywise.
pub struct Sl2ModQ {
    modulus: u32,
    elements: Vec<[u32; 4]>,
}

impl Sl2ModQ {
    /// Enumerates SL₂(ℤ/qℤ) for 2 ≤ q ≤ 128.
    ///
    /// Iterates (a, b, c) and solves for d when a is invertible; scans d
    /// otherwise. The element count always equals q³·∏_{p|q}(1 − p⁻²).
    pub fn enumerate(q: u64) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&q) {
            return Err(Error::Argument(format!(
                "modulus {q} outside brute-force range 2..={MAX_MODULUS}"
            )));
        }
        let m = q as u32;
        let inverse: Vec<Option<u32>> = (0..m)
            .map(|a| (0..m).find(|x| (a as u64 * *x as u64) % q == 1))
            .collect();
        let mut elements = Vec::with_capacity(order_formula(q) as usize);
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let rhs = ((1 + b as u64 * c as u64) % q) as u32;
                    match inverse[a as usize] {
                        Some(ai) => {
                            let d = ((ai as u64 * rhs as u64) % q) as u32;
                            elements.push([a, b, c, d]);
                        }
                        None => {
                            for d in 0..m {
                                if (a as u64 * d as u64) % q == rhs as u64 {
                                    elements.push([a, b, c, d]);
                                }
                            }
                        }
                    }
                }
            }
        }
        debug_assert_eq!(elements.len() as u64, order_formula(q));
        Ok(Sl2ModQ { modulus: m, elements })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus as u64
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// All group elements as (a, b, c, d) residues.
    pub fn elements(&self) -> &[[u32; 4]] {
        &self.elements
    }

    /// For a prime modulus p, the split of elements by their d entry:
    /// (#{gcd(d, p) = 1}, #{d ≡ 0}) = (p³ − p², p² − p).
    pub fn count_d_classes(&self) -> Result<(u64, u64)> {
        if !is_prime(self.modulus as u64) {
            return Err(Error::Argument(format!(
                "d-class counts require a prime modulus, got {}",
                self.modulus
            )));
        }
        let zero = self.elements.iter().filter(|w| w[3] == 0).count() as u64;
        Ok((self.order() - zero, zero))
    }
}

/// |SL₂(ℤ/qℤ)| = q³·∏_{p|q}(1 − p⁻²), evaluated exactly.
pub fn order_formula(q: u64) -> u64 {
    let mut order = q * q * q;
    let mut rem = q;
    let mut p = 2;
    while p * p <= rem {
        if rem.is_multiple_of(p) {
            while rem.is_multiple_of(p) {
                rem /= p;
            }
            order = order / (p * p) * (p * p - 1);
        }
        p += 1;
    }
    if rem > 1 {
        order = order / (rem * rem) * (rem * rem - 1);
    }
    order
}

/// Group-averaged Ramanujan sum (1/|SL₂(ℤ/qℤ)|)·Σ_w c_q(d(w) − n), exact.
pub fn cbar_bruteforce(q: u64, n: i64) -> Result<Rational> {
    let group = Sl2ModQ::enumerate(q)?;
    // c_q(d − n) depends on d mod q only, so tally d residues first.
    let mut d_counts = vec![0i64; q as usize];
    for w in group.elements() {
        d_counts[w[3] as usize] += 1;
    }
    let mut sum: i64 = 0;
    for (d, count) in d_counts.iter().enumerate() {
        sum += count * ramanujan_c(q, d as i64 - n);
    }
    Ok(Rational::new(sum as i128, group.order() as i128))
}

/// Closed-form local factor C̄_{p^t}(n).
pub fn cbar_closed(p: u64, t: u32, n: i64) -> Result<Rational> {
    if !is_prime(p) {
        return Err(Error::Argument(format!("{p} is not prime")));
    }
    if t < 1 {
        return Err(Error::Argument("prime-power exponent must be at least 1".into()));
    }
    if t >= 2 {
        return Ok(Rational::from_integer(0));
    }
    if n.rem_euclid(p as i64) == 0 {
        Ok(Rational::new(-1, (p + 1) as i128))
    } else {
        Ok(Rational::new(1, (p * p - 1) as i128))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(Sl2ModQ::enumerate(2).unwrap().order(), 6);
        assert_eq!(Sl2ModQ::enumerate(3).unwrap().order(), 24);
        assert_eq!(Sl2ModQ::enumerate(4).unwrap().order(), 48);
        for q in 2..=30u64 {
            let group = Sl2ModQ::enumerate(q).unwrap();
            assert_eq!(group.order(), order_formula(q), "q={q}");
            for w in group.elements() {
                let det = w[0] as i64 * w[3] as i64 - w[1] as i64 * w[2] as i64;
                assert_eq!(det.rem_euclid(q as i64), 1, "q={q} w={w:?}");
            }
        }
    }

    #[test]
    fn modulus_range_is_enforced() {
        assert!(Sl2ModQ::enumerate(0).is_err());
        assert!(Sl2ModQ::enumerate(1).is_err());
        assert!(Sl2ModQ::enumerate(129).is_err());
    }

    #[test]
    fn d_class_counts_at_primes() {
        for p in [2u64, 3, 5] {
            let group = Sl2ModQ::enumerate(p).unwrap();
            let (coprime, zero) = group.count_d_classes().unwrap();
            assert_eq!(coprime, p * p * p - p * p);
            assert_eq!(zero, p * p - p);
            assert_eq!(coprime + zero, group.order());
        }
        assert!(Sl2ModQ::enumerate(4).unwrap().count_d_classes().is_err());
    }

    #[test]
    fn cbar_bruteforce_examples() {
        assert_eq!(cbar_bruteforce(2, 4).unwrap(), Rational::new(-1, 3));
        assert_eq!(cbar_bruteforce(3, 4).unwrap(), Rational::new(1, 8));
        assert_eq!(cbar_bruteforce(4, 1).unwrap(), Rational::from_integer(0));
    }

    #[test]
    fn cbar_closed_cases() {
        assert_eq!(cbar_closed(2, 1, 4).unwrap(), Rational::new(-1, 3));
        assert_eq!(cbar_closed(3, 1, 4).unwrap(), Rational::new(1, 8));
        assert_eq!(cbar_closed(2, 2, 7).unwrap(), Rational::from_integer(0));
        assert!(cbar_closed(4, 1, 0).is_err());
        assert!(cbar_closed(2, 0, 0).is_err());
    }

    #[test]
    fn closed_form_equals_bruteforce_on_prime_powers() {
        // every p^t <= 27 with p in {2, 3, 5}
        for (p, t) in [
            (2u64, 1u32),
            (2, 2),
            (2, 3),
            (2, 4),
            (3, 1),
            (3, 2),
            (3, 3),
            (5, 1),
            (5, 2),
        ] {
            let q = p.pow(t);
            for n in 0..=12i64 {
                assert_eq!(
                    cbar_bruteforce(q, n).unwrap(),
                    cbar_closed(p, t, n).unwrap(),
                    "p={p} t={t} n={n}"
                );
            }
        }
    }

    /// Lifts of a fixed element of SL₂(ℤ/pℤ) to SL₂(ℤ/p²ℤ): p³ in total.
    /// When the base has d ≡ n (mod p), they split as p² lifts with
    /// d ≡ n (mod p²) and (p−1)·p² with d ≢ n, so (p−1)·#eq = #neq.
    #[test]
    fn lift_fibers_split_as_claimed() {
        for p in [2u64, 3] {
            let q = p * p;
            let base_group = Sl2ModQ::enumerate(p).unwrap();
            let lifted = Sl2ModQ::enumerate(q).unwrap();
            for base in base_group.elements() {
                let lifts: Vec<&[u32; 4]> = lifted
                    .elements()
                    .iter()
                    .filter(|w| (0..4).all(|k| w[k] % p as u32 == base[k]))
                    .collect();
                assert_eq!(lifts.len() as u64, p * p * p, "p={p} base={base:?}");
                for n in 0..q as u32 {
                    if base[3] != n % p as u32 {
                        continue;
                    }
                    let eq = lifts.iter().filter(|w| w[3] == n).count() as u64;
                    let neq = lifts.len() as u64 - eq;
                    assert_eq!(eq, p * p, "p={p} n={n} base={base:?}");
                    assert_eq!((p - 1) * eq, neq, "p={p} n={n} base={base:?}");
                }
            }
        }
    }
}
