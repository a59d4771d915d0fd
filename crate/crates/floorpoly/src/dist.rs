//! Residue-class statistics of `floor(P(k)) mod m`.
//!
//! Two independent routes produce histograms. The *exact* route clears
//! denominators and scans one full period of the induced integer sequence
//! with machine-word modular arithmetic; its counts are exact densities.
//! The *empirical* route evaluates `floor(P(k))` term by term with exact
//! field arithmetic and no structural shortcuts, so it also serves as the
//! independent re-check when certificates are verified.

use num::{BigInt, Integer, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{clear_denominators, horner_mod, Poly};

/// Hard cap on term-by-term evaluations in one empirical scan.
pub const SAMPLE_CAP: u64 = 10_000_000;

/// Occurrence counts of each residue class of `floor(P(k)) mod m` over a
/// scanned range of `k`. When `exact` is set the range was one full period
/// of the sequence, so the counts are exact per-period densities; otherwise
/// they are sample counts for `k = 1..=scanned`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueHistogram {
    pub m: u64,
    pub counts: Vec<u64>,
    pub scanned: u64,
    pub exact: bool,
}

impl ResidueHistogram {
    /// True when every class occurs equally often.
    pub fn is_uniform(&self) -> bool {
        self.counts.iter().all(|&c| c == self.counts[0])
    }

    /// Classes that never occur.
    pub fn missing_classes(&self) -> Vec<u64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(i, _)| i as u64)
            .collect()
    }

    /// The most frequent class and its count; ties break to the smallest
    /// class.
    pub fn heaviest_class(&self) -> (u64, u64) {
        let max = *self.counts.iter().max().expect("m >= 2 classes");
        let class = self.counts.iter().position(|&c| c == max).unwrap() as u64;
        (class, max)
    }

    /// Two-column CSV rendering, one `class,count` row per residue class.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("class,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{i},{c}\n"));
        }
        out
    }
}

fn check_modulus(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::ModulusTooSmall { min: 2, got: m });
    }
    Ok(())
}

/// Exact per-period histogram of `floor(P(k)) mod m` for `P` with rational
/// non-constant coefficients (the constant term may be irrational).
///
/// Clearing denominators gives `n*floor(P(k)) = a[k mod n] + q(k)`, and the
/// right side taken mod `n*m` determines `floor(P(k)) mod m`; the sequence
/// is therefore periodic in `k` with period `t = n*m`, which is the range
/// scanned (`k = 1..=t`). Errors with [`Error::ScanBudget`] when `t`
/// exceeds `max_period`.
pub fn exact_histogram(p: &Poly, m: u64, max_period: u64) -> Result<ResidueHistogram> {
    check_modulus(m)?;
    let cf = clear_denominators(p)?;
    let t = cf
        .n
        .checked_mul(m)
        .ok_or_else(|| Error::Overflow("period n*m".into()))?;
    if t > max_period {
        return Err(Error::ScanBudget { needed: t, budget: max_period });
    }
    let q_mod = cf.q.reduce_mod(t);
    let tb = BigInt::from(t);
    let a_mod: Vec<u64> = cf
        .a
        .iter()
        .map(|a| a.mod_floor(&tb).to_u64().expect("residue fits u64"))
        .collect();
    let mut counts = vec![0u64; m as usize];
    for k in 1..=t {
        let v = (a_mod[(k % cf.n) as usize] + horner_mod(&q_mod, k % t, t)) % t;
        debug_assert_eq!(v % cf.n, 0, "cleared-form value must be divisible by n");
        counts[(v / cf.n) as usize] += 1;
    }
    Ok(ResidueHistogram { m, counts, scanned: t, exact: true })
}

/// True when `floor(P(k)) mod m` is uniformly distributed, decided by an
/// exact full-period scan.
pub fn is_ud_mod_m(p: &Poly, m: u64, max_period: u64) -> Result<bool> {
    Ok(exact_histogram(p, m, max_period)?.is_uniform())
}

/// Whether every residue class mod `m` is attained, and the classes that
/// are not, decided by an exact full-period scan.
pub fn is_complete_mod_m(p: &Poly, m: u64, max_period: u64) -> Result<(bool, Vec<u64>)> {
    let missing = exact_histogram(p, m, max_period)?.missing_classes();
    Ok((missing.is_empty(), missing))
}

/// The floors `floor(P(k))` for `k = 1..=nsamples`, computed term by term
/// with exact field arithmetic.
pub fn floor_sequence(p: &Poly, nsamples: u64) -> Result<Vec<BigInt>> {
    if nsamples == 0 {
        return Err(Error::ZeroInput);
    }
    if nsamples > SAMPLE_CAP {
        return Err(Error::ScanBudget { needed: nsamples, budget: SAMPLE_CAP });
    }
    let n = i64::try_from(nsamples).expect("within cap");
    Ok((1..=n).map(|k| p.eval(k).floor()).collect())
}

/// Sample histogram of `floor(P(k)) mod m` for `k = 1..=nsamples`, computed
/// term by term with no periodicity shortcut. Works for any coefficients,
/// including irrational ones. Requires at least `m` samples.
pub fn empirical_histogram(p: &Poly, m: u64, nsamples: u64) -> Result<ResidueHistogram> {
    check_modulus(m)?;
    if nsamples < m {
        return Err(Error::TooFewSamples { got: nsamples, m });
    }
    let floors = floor_sequence(p, nsamples)?;
    let mut counts = vec![0u64; m as usize];
    let mb = BigInt::from(m);
    for f in floors {
        let class = f.mod_floor(&mb).to_u64().expect("residue fits u64");
        counts[class as usize] += 1;
    }
    Ok(ResidueHistogram { m, counts, scanned: nsamples, exact: false })
}

/// One normalized exponential-sum statistic: the magnitude of
/// `(1/n) * sum_{k=1}^{n} e(h * floor(P(k)) / m)`.
///
/// Magnitudes near 0 are consistent with uniform distribution mod `m`;
/// a magnitude bounded away from 0 as `n` grows witnesses a bias.
#[derive(Clone, Debug, Serialize)]
pub struct WeylStat {
    pub m: u64,
    pub h: u64,
    pub nsamples: u64,
    pub magnitude: f64,
}

/// Exponential-sum magnitude computed from precomputed floors, with
/// compensated summation. Requires `1 <= h < m`.
pub fn weyl_sum_of_floors(floors: &[BigInt], m: u64, h: u64) -> Result<WeylStat> {
    check_modulus(m)?;
    if h == 0 || h >= m {
        return Err(Error::BadFrequency { h, m });
    }
    if floors.is_empty() {
        return Err(Error::ZeroInput);
    }
    let mb = BigInt::from(m);
    let hb = BigInt::from(h);
    let (mut re, mut im) = (0.0f64, 0.0f64);
    let (mut re_c, mut im_c) = (0.0f64, 0.0f64);
    for f in floors {
        let cls = (f * &hb).mod_floor(&mb).to_u64().expect("residue fits u64");
        let angle = 2.0 * std::f64::consts::PI * cls as f64 / m as f64;
        let (s, c) = angle.sin_cos();
        // Kahan compensation keeps the error flat across long scans
        let y = c - re_c;
        let t = re + y;
        re_c = (t - re) - y;
        re = t;
        let y = s - im_c;
        let t = im + y;
        im_c = (t - im) - y;
        im = t;
    }
    let n = floors.len() as f64;
    Ok(WeylStat {
        m,
        h,
        nsamples: floors.len() as u64,
        magnitude: (re / n).hypot(im / n),
    })
}

/// Exponential-sum magnitude for `floor(P(k))`, `k = 1..=nsamples`.
pub fn weyl_sum(p: &Poly, m: u64, h: u64, nsamples: u64) -> Result<WeylStat> {
    check_modulus(m)?;
    if h == 0 || h >= m {
        return Err(Error::BadFrequency { h, m });
    }
    let floors = floor_sequence(p, nsamples)?;
    weyl_sum_of_floors(&floors, m, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactReal;
    use num::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rational_poly(coeffs: &[(i64, i64)]) -> Poly {
        Poly::from_rationals(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn sqrt2_x() -> Poly {
        Poly::new(vec![
            ExactReal::zero(),
            ExactReal::new(rat(0, 1), rat(1, 1), 2).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn exact_histogram_examples() {
        // floor(k/2) mod 2 over k = 1..=4: 0,1,1,2 -> [2,2]
        let h = exact_histogram(&rational_poly(&[(0, 1), (1, 2)]), 2, 1 << 20).unwrap();
        assert_eq!(h.counts, vec![2, 2]);
        assert_eq!(h.scanned, 4);
        assert!(h.exact && h.is_uniform());

        // floor(2k/3) mod 2 over k = 1..=6: 0,1,2,2,3,4 -> [4,2]
        let h = exact_histogram(&rational_poly(&[(0, 1), (2, 3)]), 2, 1 << 20).unwrap();
        assert_eq!(h.counts, vec![4, 2]);
        assert_eq!(h.scanned, 6);
        assert!(!h.is_uniform());
        assert_eq!(h.heaviest_class(), (0, 4));

        // k^2 mod 4 over k = 1..=4: 1,0,1,0 -> [2,2,0,0]
        let h = exact_histogram(&rational_poly(&[(0, 1), (0, 1), (1, 1)]), 4, 1 << 20).unwrap();
        assert_eq!(h.counts, vec![2, 2, 0, 0]);
        assert_eq!(h.missing_classes(), vec![2, 3]);

        // identity is uniform and complete mod anything
        let x = rational_poly(&[(0, 1), (1, 1)]);
        assert!(is_ud_mod_m(&x, 5, 1 << 20).unwrap());
        assert_eq!(is_complete_mod_m(&x, 5, 1 << 20).unwrap(), (true, vec![]));
    }

    #[test]
    fn exact_histogram_respects_budget_and_modulus_checks() {
        let p = rational_poly(&[(0, 1), (1, 2)]);
        assert_eq!(
            exact_histogram(&p, 2, 3),
            Err(Error::ScanBudget { needed: 4, budget: 3 })
        );
        assert_eq!(
            exact_histogram(&p, 1, 100),
            Err(Error::ModulusTooSmall { min: 2, got: 1 })
        );
        assert!(matches!(
            exact_histogram(&sqrt2_x(), 2, 100),
            Err(Error::IrrationalCoefficient(1))
        ));
    }

    #[test]
    fn exact_histogram_handles_irrational_constants() {
        // floor(k + sqrt(2)) = k + 1: classes mod 3 uniform
        let p = Poly::new(vec![
            ExactReal::new(rat(0, 1), rat(1, 1), 2).unwrap(),
            ExactReal::from_int(1),
        ])
        .unwrap();
        let h = exact_histogram(&p, 3, 1 << 20).unwrap();
        assert_eq!(h.counts, vec![1, 1, 1]);
    }

    /// The two routes must agree exactly when the empirical scan covers a
    /// whole number of periods.
    #[test]
    fn exact_and_empirical_routes_agree_over_full_periods() {
        let polys = [
            rational_poly(&[(0, 1), (1, 2)]),
            rational_poly(&[(0, 1), (2, 3)]),
            rational_poly(&[(1, 2), (0, 1), (1, 2)]),
            rational_poly(&[(3, 4), (-5, 6), (7, 2), (1, 3)]),
        ];
        for p in &polys {
            for m in [2u64, 3, 5] {
                let ex = exact_histogram(p, m, 1 << 24).unwrap();
                for periods in [1u64, 2] {
                    let em = empirical_histogram(p, m, ex.scanned * periods).unwrap();
                    let expected: Vec<u64> = ex.counts.iter().map(|c| c * periods).collect();
                    assert_eq!(em.counts, expected, "P = {p}, m = {m}");
                    assert!(!em.exact);
                }
            }
        }
    }

    #[test]
    fn empirical_histogram_validates_inputs() {
        let p = rational_poly(&[(0, 1), (1, 1)]);
        assert_eq!(
            empirical_histogram(&p, 5, 3),
            Err(Error::TooFewSamples { got: 3, m: 5 })
        );
        assert_eq!(
            floor_sequence(&p, SAMPLE_CAP + 1),
            Err(Error::ScanBudget { needed: SAMPLE_CAP + 1, budget: SAMPLE_CAP })
        );
    }

    #[test]
    fn empirical_histogram_covers_irrational_slopes() {
        let h = empirical_histogram(&sqrt2_x(), 2, 1000).unwrap();
        assert_eq!(h.counts.iter().sum::<u64>(), 1000);
        // equidistribution makes both classes appear often
        assert!(h.counts.iter().all(|&c| c > 400), "{:?}", h.counts);
    }

    #[test]
    fn csv_rendering() {
        let h = ResidueHistogram { m: 3, counts: vec![4, 0, 2], scanned: 6, exact: true };
        assert_eq!(h.to_csv(), "class,count\n0,4\n1,0\n2,2\n");
    }

    #[test]
    fn weyl_magnitude_on_exact_cases() {
        // floor(2k/3) mod 2 over one period has e-sum 1-1+1+1-1+1 = 2, so
        // magnitude 2/6
        let p = rational_poly(&[(0, 1), (2, 3)]);
        let w = weyl_sum(&p, 2, 1, 6).unwrap();
        assert!((w.magnitude - 1.0 / 3.0).abs() < 1e-12, "{}", w.magnitude);
        // a uniform sequence sums to zero over full periods
        let w = weyl_sum(&rational_poly(&[(0, 1), (1, 1)]), 4, 1, 400).unwrap();
        assert!(w.magnitude < 1e-12, "{}", w.magnitude);
        let w = weyl_sum(&rational_poly(&[(0, 1), (1, 2)]), 2, 1, 4).unwrap();
        assert!(w.magnitude < 1e-12, "{}", w.magnitude);
    }

    #[test]
    fn weyl_validates_frequency() {
        let p = rational_poly(&[(0, 1), (1, 1)]);
        assert!(matches!(weyl_sum(&p, 4, 0, 10), Err(Error::BadFrequency { h: 0, m: 4 })));
        assert!(matches!(weyl_sum(&p, 4, 4, 10), Err(Error::BadFrequency { h: 4, m: 4 })));
        assert!(matches!(weyl_sum(&p, 1, 0, 10), Err(Error::ModulusTooSmall { .. })));
    }

    /// The shift map behind the linear reduction: replacing k by k + t*b
    /// shifts floor(a*k/b + beta) by t*a, so over a full period every class
    /// count is invariant under adding a to the class index (mod m, when
    /// gcd(a, m) = 1 this forces uniformity).
    #[test]
    fn histogram_is_invariant_under_the_slope_shift() {
        for (a, b) in [(1i64, 2i64), (2, 3), (3, 4), (5, 3)] {
            for m in [2u64, 3, 4] {
                let p = rational_poly(&[(1, 7), (a, b)]);
                let h = exact_histogram(&p, m, 1 << 24).unwrap();
                let shifted: Vec<u64> = (0..m)
                    .map(|c| h.counts[((c + a.rem_euclid(m as i64) as u64) % m) as usize])
                    .collect();
                assert_eq!(h.counts, shifted, "a={a} b={b} m={m}");
            }
        }
    }
}
