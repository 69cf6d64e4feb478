//! Smallest-prime-factor sieve, Möbius function, Ramanujan sums, and the
//! singular series 𝔊(n) = ζ(2)·∏_{p|n} (p−1)/p with its truncated Euler
//! product and running average.
//!
//! Ramanujan sums are evaluated in exact integer arithmetic through the
//! Möbius form c_q(n) = Σ_{s | gcd(q,n)} s·μ(q/s); the literal exponential
//! sum exists only as a floating-point cross-check.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::{from_u64, zeta2, Real};

/// Smallest-prime-factor table for 2..=limit, built with a linear sieve.
///
/// Immutable after construction; drives factorization, the Möbius function,
/// and every singular-series evaluation.
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 1 {
            return Err(Error::Argument("sieve limit must be at least 1".into()));
        }
        if limit > u32::MAX as u64 {
            return Err(Error::Argument(format!(
                "sieve limit {limit} exceeds the u32 table range"
            )));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for f in 2..=n {
            if spf[f] == 0 {
                spf[f] = f as u32;
                primes.push(f as u32);
            }
            let least = spf[f];
            for &p in &primes {
                if p > least {
                    break;
                }
                let m = p as usize * f;
                if m > n {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(SpfSieve { spf })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Least prime divisor of n, for 2 ≤ n ≤ limit.
    pub fn spf(&self, n: u64) -> Result<u64> {
        if n < 2 || n > self.limit() {
            return Err(Error::Argument(format!(
                "{n} outside sieve range 2..={}",
                self.limit()
            )));
        }
        Ok(self.spf[n as usize] as u64)
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        Ok(self.spf(n)? == n)
    }

    /// Iterator over the distinct prime divisors of n in increasing order.
    pub fn distinct_primes(&self, n: u64) -> Result<DistinctPrimes<'_>> {
        if n < 1 || n > self.limit() {
            return Err(Error::Argument(format!(
                "{n} outside sieve range 1..={}",
                self.limit()
            )));
        }
        Ok(DistinctPrimes { sieve: self, n })
    }

    /// Möbius function: 0 on non-squarefree m, otherwise (−1)^(prime count).
    pub fn mobius(&self, m: u64) -> Result<i32> {
        if m < 1 || m > self.limit() {
            return Err(Error::Argument(format!(
                "{m} outside sieve range 1..={}",
                self.limit()
            )));
        }
        let mut n = m;
        let mut sign = 1;
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        Ok(sign)
    }
}

pub struct DistinctPrimes<'a> {
    sieve: &'a SpfSieve,
    n: u64,
}

impl Iterator for DistinctPrimes<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.n < 2 {
            return None;
        }
        let p = self.sieve.spf[self.n as usize] as u64;
        while self.n.is_multiple_of(p) {
            self.n /= p;
        }
        Some(p)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Möbius by trial division; used where no sieve is in scope (divisor sums
/// over a single modulus).
fn mobius_td(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Ramanujan sum c_q(n) = Σ_{s | gcd(q,n)} s·μ(q/s), exactly.
///
/// Negative n is reduced mod q first, matching the periodicity of the
/// defining exponential sum.
pub fn ramanujan_c(q: u64, n: i64) -> i64 {
    assert!(q >= 1, "Ramanujan sum modulus must be positive");
    let r = n.rem_euclid(q as i64) as u64;
    let g = gcd(q, r);
    let mut sum = 0i64;
    let mut s = 1u64;
    while s * s <= g {
        if g.is_multiple_of(s) {
            sum += s as i64 * mobius_td(q / s) as i64;
            let t = g / s;
            if t != s {
                sum += t as i64 * mobius_td(q / t) as i64;
            }
        }
        s += 1;
    }
    sum
}

/// The literal exponential sum Σ_{(a,q)=1} e^{2πi·a·n/q}.
///
/// Floating-point oracle for [`ramanujan_c`]; the imaginary part cancels to
/// rounding noise. Intended for q up to ~10⁴.
pub fn ramanujan_c_direct<F: Real>(q: u64, n: i64) -> Complex<F> {
    assert!(q >= 1, "Ramanujan sum modulus must be positive");
    let r = n.rem_euclid(q as i64) as u64;
    let tau = crate::real::from_f64::<F>(std::f64::consts::TAU);
    let qf = from_u64::<F>(q);
    let mut sum = Complex::new(F::zero(), F::zero());
    for a in 1..=q {
        if gcd(a, q) == 1 {
            let phase = tau * from_u64::<F>(a * r % q) / qf;
            sum = sum + Complex::new(phase.cos(), phase.sin());
        }
    }
    sum
}

/// Singular series 𝔊(n) = ζ(2)·∏ over distinct primes p | n of (p−1)/p.
///
/// Strictly positive and at most ζ(2), with equality exactly at n = 1.
pub fn singular_series<F: Real>(n: u64, sieve: &SpfSieve) -> Result<F> {
    let mut g = zeta2::<F>();
    for p in sieve.distinct_primes(n)? {
        let pf = from_u64::<F>(p);
        g = g * (pf - F::one()) / pf;
    }
    Ok(g)
}

/// Euler product of the local factors over primes p ≤ prime_bound:
/// p/(p+1) where p | n, p²/(p²−1) otherwise. Converges to
/// [`singular_series`] as the bound grows.
pub fn singular_series_truncated<F: Real>(n: u64, prime_bound: u64) -> Result<F> {
    if n < 1 {
        return Err(Error::Argument("target must be at least 1".into()));
    }
    if prime_bound < 2 {
        return Err(Error::Argument("prime bound must be at least 2".into()));
    }
    let pb = prime_bound as usize;
    let mut composite = vec![false; pb + 1];
    let mut product = F::one();
    for p in 2..=pb {
        if composite[p] {
            continue;
        }
        let mut m = p * p;
        while m <= pb {
            composite[m] = true;
            m += p;
        }
        let pf = from_u64::<F>(p as u64);
        let factor = if n.is_multiple_of(p as u64) {
            pf / (pf + F::one())
        } else {
            pf * pf / (pf * pf - F::one())
        };
        product = product * factor;
    }
    Ok(product)
}

/// Mean of 𝔊(n) over 1 ≤ n ≤ n_max; tends to 1 as n_max grows.
pub fn average_singular<F: Real>(n_max: u64, sieve: &SpfSieve) -> Result<F> {
    if n_max < 1 || n_max > sieve.limit() {
        return Err(Error::Argument(format!(
            "average bound {n_max} outside sieve range 1..={}",
            sieve.limit()
        )));
    }
    let mut sum = F::zero();
    for n in 1..=n_max {
        sum += singular_series::<F>(n, sieve)?;
    }
    Ok(sum / from_u64(n_max))
}
