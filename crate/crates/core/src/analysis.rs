//! Ball-growth fitting and the heuristic multiplicity it feeds.
//!
//! Ball counts obey a power law |B_n| ≈ c·n^{2δ}, so a log-log least-squares
//! fit over the upper part of the range recovers 2δ. The heuristic for
//! mult(n) is then (2δ·|B_n|/n)·𝔊(n), using the enumerated ball count
//! directly — the fitted c never enters downstream results, only reports.

use crate::enumerator::TallyTable;
use crate::error::{Error, Result};
use crate::number_theory::{singular_series, SpfSieve};
use crate::real::{from_u64, Real};

/// Least-squares estimate of |B_n| ≈ c·n^{two_delta} on a log-log window.
#[derive(Clone, Copy, Debug)]
pub struct PowerLawFit<F> {
    pub c: F,
    pub two_delta: F,
    pub window_lo: u64,
    pub window_hi: u64,
    /// Root-mean-square residual of ln(ball) around the fitted line.
    pub rms_residual: F,
}

/// One row of the exact-vs-heuristic comparison.
#[derive(Clone, Copy, Debug)]
pub struct ComparisonRecord<F> {
    pub n: u64,
    pub exact_mult: u64,
    pub heuristic: F,
    /// 𝔊(n).
    pub singular: F,
    /// exact_mult / heuristic; zero exactly when exact_mult is zero.
    pub ratio: F,
}

/// Ordinary least squares of ln(ball[n]) against ln(n) over
/// n ∈ [⌈window_fraction·N⌉, N], geometrically subsampled to at most
/// 10⁴ points.
pub fn fit_growth<F: Real>(tally: &TallyTable, window_fraction: F) -> Result<PowerLawFit<F>> {
    if !(window_fraction > F::zero() && window_fraction < F::one()) {
        return Err(Error::Argument(
            "window fraction must lie strictly between 0 and 1".into(),
        ));
    }
    let hi = tally.bound();
    let lo = (window_fraction * from_u64::<F>(hi))
        .ceil()
        .to_u64()
        .unwrap_or(0)
        .max(2);
    if lo > hi || hi - lo + 1 < 10 {
        return Err(Error::Argument(format!(
            "fit window {lo}..={hi} holds fewer than 10 points"
        )));
    }

    let samples = geometric_samples(lo, hi, 10_000);
    let mut xs = Vec::with_capacity(samples.len());
    let mut ys = Vec::with_capacity(samples.len());
    for &n in &samples {
        let ball = tally.ball(n)?;
        if ball == 0 {
            return Err(Error::Data(format!("zero ball count at n={n} inside fit window")));
        }
        xs.push(from_u64::<F>(n).ln());
        ys.push(from_u64::<F>(ball).ln());
    }

    let count = from_u64::<F>(samples.len() as u64);
    let mean_x = xs.iter().fold(F::zero(), |s, &x| s + x) / count;
    let mean_y = ys.iter().fold(F::zero(), |s, &y| s + y) / count;
    let mut sxx = F::zero();
    let mut sxy = F::zero();
    for (&x, &y) in xs.iter().zip(&ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;

    let mut sq = F::zero();
    for (&x, &y) in xs.iter().zip(&ys) {
        let r = y - (intercept + slope * x);
        sq += r * r;
    }

    Ok(PowerLawFit {
        c: intercept.exp(),
        two_delta: slope,
        window_lo: lo,
        window_hi: hi,
        rms_residual: (sq / count).sqrt(),
    })
}

/// At most `max_points` geometrically spaced integers covering [lo, hi].
fn geometric_samples(lo: u64, hi: u64, max_points: usize) -> Vec<u64> {
    let span = (hi - lo) as usize + 1;
    if span <= max_points {
        return (lo..=hi).collect();
    }
    let ratio = (hi as f64 / lo as f64).powf(1.0 / (max_points as f64 - 1.0));
    let mut out = Vec::with_capacity(max_points);
    let mut x = lo as f64;
    for _ in 0..max_points - 1 {
        let n = (x.round() as u64).clamp(lo, hi);
        if out.last() != Some(&n) {
            out.push(n);
        }
        x *= ratio;
    }
    if out.last() != Some(&hi) {
        out.push(hi);
    }
    out
}

/// Sphere size estimate 2δ·|B_n|/n from the fitted exponent and the exact
/// enumerated ball count.
pub fn sphere_estimate<F: Real>(fit: &PowerLawFit<F>, ball_n: u64, n: u64) -> F {
    fit.two_delta * from_u64::<F>(ball_n) / from_u64::<F>(n)
}

/// The heuristic multiplicity (2δ·|B_n|/n)·𝔊(n) for 2 ≤ n ≤ N.
pub fn heuristic_mult<F: Real>(
    fit: &PowerLawFit<F>,
    tally: &TallyTable,
    n: u64,
    sieve: &SpfSieve,
) -> Result<F> {
    let ball = tally.ball(n)?;
    Ok(sphere_estimate(fit, ball, n) * singular_series::<F>(n, sieve)?)
}

/// Exact and heuristic multiplicities side by side for every n in 2..=N.
pub fn compare<F: Real>(
    tally: &TallyTable,
    fit: &PowerLawFit<F>,
    sieve: &SpfSieve,
) -> Result<Vec<ComparisonRecord<F>>> {
    let bound = tally.bound();
    if sieve.limit() < bound {
        return Err(Error::Argument(format!(
            "sieve limit {} below tally bound {bound}",
            sieve.limit()
        )));
    }
    let mut records = Vec::with_capacity(bound as usize);
    for n in 2..=bound {
        let singular = singular_series::<F>(n, sieve)?;
        let heuristic = sphere_estimate(fit, tally.ball(n)?, n) * singular;
        let exact = tally.sphere_count(n)?;
        records.push(ComparisonRecord {
            n,
            exact_mult: exact,
            heuristic,
            singular,
            ratio: from_u64::<F>(exact) / heuristic,
        });
    }
    Ok(records)
}

/// (Σ_{n=2}^{upto} heuristic_mult(n)) / |B_upto|; tends to 1 when the
/// heuristic tracks the exact counts.
pub fn partial_sum_check<F: Real>(
    tally: &TallyTable,
    fit: &PowerLawFit<F>,
    sieve: &SpfSieve,
    upto: u64,
) -> Result<F> {
    let ball = tally.ball(upto)?;
    if ball == 0 {
        return Err(Error::Data(format!("ball count at {upto} is zero")));
    }
    let mut sum = F::zero();
    for n in 2..=upto {
        sum += heuristic_mult(fit, tally, n, sieve)?;
    }
    Ok(sum / from_u64(ball))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::{enumerate, EnumConfig};

    const Z2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

    /// ball[n] = n² exactly.
    fn square_table(bound: u64) -> TallyTable {
        let mut mult = vec![0u64; bound as usize + 1];
        mult[2] = 4;
        for n in 3..=bound {
            mult[n as usize] = 2 * n - 1;
        }
        TallyTable::from_mult(mult).unwrap()
    }

    /// ball[n] = round(k·n^e); consecutive values differ by more than one,
    /// so the rounded sequence is still increasing.
    fn power_table(bound: u64, k: f64, e: f64) -> TallyTable {
        let ball = |n: u64| (k * (n as f64).powf(e)).round() as u64;
        let mut mult = vec![0u64; bound as usize + 1];
        mult[2] = ball(2);
        for n in 3..=bound {
            mult[n as usize] = ball(n) - ball(n - 1);
        }
        TallyTable::from_mult(mult).unwrap()
    }

    #[test]
    fn exact_square_law_is_recovered() {
        let table = square_table(2000);
        for wf in [0.25f64, 0.5] {
            let fit = fit_growth(&table, wf).unwrap();
            assert!((fit.two_delta - 2.0).abs() < 1e-9, "wf={wf} {fit:?}");
            assert!((fit.c - 1.0).abs() < 1e-9, "wf={wf} {fit:?}");
            assert!(fit.rms_residual < 1e-9);
            assert_eq!(fit.window_hi, 2000);
        }
    }

    #[test]
    fn three_halves_law_is_recovered() {
        let table = power_table(100_000, 3.0, 1.5);
        let fit = fit_growth(&table, 0.5f64).unwrap();
        assert!((fit.two_delta - 1.5).abs() < 1e-6, "{fit:?}");
        assert!((fit.c - 3.0).abs() < 1e-4, "{fit:?}");
    }

    #[test]
    fn fit_is_scale_equivariant() {
        let base = square_table(3000);
        let mut scaled_mult = vec![0u64; 3001];
        for (n, mult, _) in base.rows() {
            scaled_mult[n as usize] = 7 * mult;
        }
        let scaled = TallyTable::from_mult(scaled_mult).unwrap();
        let f0 = fit_growth::<f64>(&base, 0.5).unwrap();
        let f1 = fit_growth::<f64>(&scaled, 0.5).unwrap();
        assert!((f0.two_delta - f1.two_delta).abs() < 1e-9);
        assert!((f1.c - 7.0 * f0.c).abs() / f0.c < 1e-9);
    }

    #[test]
    fn fit_window_validation() {
        let table = square_table(2000);
        assert!(fit_growth(&table, 0.0f64).is_err());
        assert!(fit_growth(&table, 1.0f64).is_err());
        assert!(fit_growth(&table, -0.5f64).is_err());

        let tiny = square_table(20);
        assert!(matches!(
            fit_growth(&tiny, 0.9f64),
            Err(Error::Argument(_))
        ));

        // ball identically zero until the window's far end
        let mut mult = vec![0u64; 21];
        mult[17] = 1;
        let sparse = TallyTable::from_mult(mult).unwrap();
        assert!(matches!(fit_growth(&sparse, 0.5f64), Err(Error::Data(_))));
    }

    #[test]
    fn geometric_samples_cover_and_respect_the_cap() {
        let s = geometric_samples(1000, 100_000, 10_000);
        assert!(s.len() <= 10_000);
        assert_eq!(*s.first().unwrap(), 1000);
        assert_eq!(*s.last().unwrap(), 100_000);
        assert!(s.windows(2).all(|w| w[0] < w[1]));

        let small = geometric_samples(10, 50, 10_000);
        assert_eq!(small.len(), 41);
    }

    #[test]
    fn sphere_estimate_arithmetic() {
        let fit = PowerLawFit { c: 1.0f64, two_delta: 2.0, window_lo: 2, window_hi: 10, rms_residual: 0.0 };
        assert_eq!(sphere_estimate(&fit, 100, 10), 20.0);
        let fit = PowerLawFit { two_delta: 1.0, ..fit };
        assert_eq!(sphere_estimate(&fit, 37, 37), 1.0);
        let fit = PowerLawFit { two_delta: 1.6, ..fit };
        assert!((sphere_estimate(&fit, 1000, 100) - 16.0).abs() < 1e-12);
    }

    #[test]
    fn heuristic_mult_values() {
        let sieve = SpfSieve::new(100).unwrap();
        // table with ball[10] = 100
        let mut mult = vec![0u64; 13];
        mult[2] = 100;
        let table = TallyTable::from_mult(mult).unwrap();
        let fit = PowerLawFit { c: 1.0f64, two_delta: 2.0, window_lo: 2, window_hi: 12, rms_residual: 0.0 };

        let h = heuristic_mult(&fit, &table, 10, &sieve).unwrap();
        assert!((h - 20.0 * 0.4 * Z2).abs() < 1e-9);
        assert!(heuristic_mult(&fit, &table, 1, &sieve).is_err());
        assert!(heuristic_mult(&fit, &table, 13, &sieve).is_err());

        // prime target: (2δ·B/p)·((p−1)/p)·ζ(2)
        let h7 = heuristic_mult(&fit, &table, 7, &sieve).unwrap();
        let expected = 2.0 * 100.0 / 7.0 * (6.0 / 7.0) * Z2;
        assert!((h7 - expected).abs() < 1e-9);
    }

    #[test]
    fn comparison_records_are_consistent() {
        let (table, _) = enumerate(&EnumConfig::new(2, 300)).unwrap();
        let sieve = SpfSieve::new(300).unwrap();
        let fit = fit_growth::<f64>(&table, 0.5).unwrap();
        let records = compare(&table, &fit, &sieve).unwrap();
        assert_eq!(records.len(), 299);
        for r in &records {
            assert!(r.heuristic > 0.0, "n={}", r.n);
            assert!(r.singular > 0.0 && r.singular <= Z2 + 1e-12);
            assert_eq!(r.exact_mult, table.sphere_count(r.n).unwrap());
            if r.exact_mult == 0 {
                assert_eq!(r.ratio, 0.0, "n={}", r.n);
            } else {
                assert!((r.ratio - r.exact_mult as f64 / r.heuristic).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ratios_ignore_the_fitted_constant() {
        let (table, _) = enumerate(&EnumConfig::new(2, 200)).unwrap();
        let sieve = SpfSieve::new(200).unwrap();
        let fit = fit_growth::<f64>(&table, 0.5).unwrap();
        let rescaled = PowerLawFit { c: fit.c * 123.0, ..fit };
        let a = compare(&table, &fit, &sieve).unwrap();
        let b = compare(&table, &rescaled, &sieve).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.ratio, y.ratio);
            assert_eq!(x.heuristic, y.heuristic);
        }
    }

    #[test]
    fn partial_sum_matches_its_definition() {
        let (table, _) = enumerate(&EnumConfig::new(2, 500)).unwrap();
        let sieve = SpfSieve::new(500).unwrap();
        let fit = fit_growth::<f64>(&table, 0.5).unwrap();
        let value = partial_sum_check(&table, &fit, &sieve, 500).unwrap();
        let mut sum = 0.0;
        for n in 2..=500 {
            sum += heuristic_mult(&fit, &table, n, &sieve).unwrap();
        }
        assert!((value - sum / table.ball(500).unwrap() as f64).abs() < 1e-12);
        assert!(value.is_finite() && value > 0.0);
        assert!(partial_sum_check(&table, &fit, &sieve, 1).is_err());

        // were every heuristic term replaced by the exact count, the
        // quotient would be exactly 1 by conservation
        let exact_quotient: f64 = (2..=500u64)
            .map(|n| table.sphere_count(n).unwrap() as f64)
            .sum::<f64>()
            / table.ball(500).unwrap() as f64;
        assert_eq!(exact_quotient, 1.0);
    }
}
