//! Exact big-integer and rational evaluation of the counting formulas of
//! the meander link model: Catalan and Narayana numbers, marked/exact
//! pierced-circle counts, the Zeilberger recurrence for circle-free graph
//! counts, and the twist/volume expectation formulas.
//!
//! Everything counting-related is exact; floating point appears only in
//! the volume bounds and the characteristic roots, which are geometric
//! constants rather than counts.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Volume of the regular ideal hyperbolic tetrahedron, the constant in
/// the twist-number volume bounds.
pub const IDEAL_TETRAHEDRON_VOLUME: f64 = 1.0149416064096536;

/// Binomial coefficient with the zero-outside convention: `binomial(n, k)`
/// is 0 whenever `k < 0`, `n < 0` or `k > n`. The convention makes the
/// boundary cases of the marked-circle count vanish without special cases.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let (n, mut k) = (n as u64, k as u64);
    if k > n - k {
        k = n - k;
    }
    let mut result = BigUint::one();
    for i in 1..=k {
        result = result * BigUint::from(n - k + i) / BigUint::from(i);
    }
    result
}

/// Catalan number `C_n`, the number of balanced strings of `n` pairs.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n as i64, n as i64) / BigUint::from(n + 1)
}

/// Narayana number `N(n, k)`, the number of balanced strings of `n` pairs
/// with exactly `k` nestings; zero unless `1 <= k <= n`.
pub fn narayana(n: u64, k: u64) -> BigUint {
    assert!(n >= 1, "narayana is defined for n >= 1");
    if k < 1 || k > n {
        return BigUint::zero();
    }
    binomial(n as i64, k as i64) * binomial(n as i64, k as i64 - 1) / BigUint::from(n)
}

/// Number of ways to attach `k` vertex-disjoint pierced circles to a path
/// of `v` vertices: `binomial(v - k, k)`.
pub fn count_pierced_placements(v: u64, k: u64) -> BigUint {
    assert!(v >= 1, "the path graph needs at least one vertex");
    binomial(v as i64 - k as i64, k as i64)
}

/// Number of configurations of `k` marked pierced circles on the
/// `2s - 1`-vertex skeleton together with a free pair of strings filling
/// the rest: `binomial(2s - k - 1, k) * C_{s-k}^2`.
///
/// Each graph with `j >= k` pierced circles is counted `binomial(j, k)`
/// times, which is what makes the inclusion-exclusion below work.
pub fn count_marked(s: u64, k: u64) -> BigUint {
    assert!(s >= 1, "count_marked is defined for s >= 1");
    assert!(k <= s, "k = {k} exceeds s = {s}");
    let c = catalan(s - k);
    count_pierced_placements(2 * s - 1, k) * &c * &c
}

/// Number of meander graphs on `2s - 1` vertices with exactly `k` pierced
/// circles, by inclusion-exclusion over the marked counts.
///
/// Panics if the signed sum goes negative, which would indicate an
/// implementation fault rather than a caller error.
pub fn count_exact(s: u64, k: u64) -> BigUint {
    assert!(s >= 1, "count_exact is defined for s >= 1");
    assert!(k <= s, "k = {k} exceeds s = {s}");
    let mut acc = BigInt::zero();
    for m in k..=s {
        let term = BigInt::from(binomial(m as i64, k as i64) * count_marked(s, m));
        if (m - k).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    assert!(
        !acc.is_negative(),
        "inclusion-exclusion for (s, k) = ({s}, {k}) went negative: {acc}"
    );
    acc.to_biguint().unwrap()
}

/// Exact table of marked and exact pierced-circle counts for one `s`.
pub struct CountTable {
    s: u64,
    entries: Vec<(BigUint, BigUint)>,
}

impl CountTable {
    pub fn new(s: u64) -> Self {
        let entries = (0..=s)
            .map(|k| (count_marked(s, k), count_exact(s, k)))
            .collect();
        CountTable { s, entries }
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    /// Marked-configuration count for `k` circles.
    pub fn marked(&self, k: u64) -> &BigUint {
        &self.entries[k as usize].0
    }

    /// Exact-circle-count value for `k` circles.
    pub fn exact(&self, k: u64) -> &BigUint {
        &self.entries[k as usize].1
    }

    /// Sum of the exact counts, which must equal `C_s^2`.
    pub fn total_exact(&self) -> BigUint {
        self.entries.iter().map(|(_, e)| e).sum()
    }
}

/// Expected number of pierced circles in a random `2s - 1`-vertex meander
/// graph, as an exact rational `count_marked(s, 1) / C_s^2`.
pub fn expected_pierced_circles(s: u64) -> BigRational {
    assert!(s >= 1);
    let c = catalan(s);
    BigRational::new(count_marked(s, 1).into(), BigInt::from(&c * &c))
}

/// Closed form `(s^3 + s^2 - s - 1) / (8s^2 - 8s + 2)` for the expected
/// pierced-circle count, valid for `s >= 2`.
pub fn pierced_circles_closed_form(s: u64) -> BigRational {
    let s = BigInt::from(s);
    let numer = &s * &s * &s + &s * &s - &s - 1;
    let denom = 8 * &s * &s - 8 * &s + 2;
    BigRational::new(numer, denom)
}

/// Expected number of nestings in a random string of `n` pairs: `(n + 1) / 2`.
pub fn expected_nestings(n: u64) -> BigRational {
    assert!(n >= 1);
    BigRational::new(BigInt::from(n + 1), BigInt::from(2))
}

/// Expected number of nesting bigons in a diagram built from two strings
/// of `s` pairs: `s + 1` (top and bottom are independent).
pub fn expected_bigons(s: u64) -> BigRational {
    assert!(s >= 1);
    BigRational::from_integer(BigInt::from(s + 1))
}

/// Expected number of twist regions of an `(r, 2s-1)` diagram:
/// `(2s - 1) r^2 - s - 1`. Negative values (the vacuous small-`s` regime)
/// are reported verbatim.
pub fn expected_twists(s: u64, r: u64) -> BigRational {
    assert!(s >= 1 && r >= 1);
    let value = (2 * s as i128 - 1) * (r as i128) * (r as i128) - s as i128 - 1;
    BigRational::from_integer(BigInt::from(value))
}

/// Coefficients of the degree-3 recurrence polynomials for the circle-free
/// counts, ascending powers of `s`.
pub const RECURRENCE_COEFFS: [[i64; 4]; 4] = [
    [5, -8, 1, 2],
    [-30, -82, -93, -26],
    [-81, -226, -141, -26],
    [16, 40, 17, 2],
];

/// `P_k(s)` for the circle-free recurrence, `k` in `0..=3`.
pub fn recurrence_polynomial(k: usize, s: u64) -> BigInt {
    let s = BigInt::from(s);
    let mut acc = BigInt::zero();
    let mut power = BigInt::one();
    for &c in &RECURRENCE_COEFFS[k] {
        acc += c * &power;
        power *= &s;
    }
    acc
}

/// Residual of the Zeilberger recurrence at `s`:
/// `sum_k P_k(s) * count_exact(s + k, 0)`. Exactly zero for every `s >= 1`.
pub fn zeilberger_residual(s: u64) -> BigInt {
    assert!(s >= 1);
    (0..4)
        .map(|k| recurrence_polynomial(k, s) * BigInt::from(count_exact(s + k as u64, 0)))
        .sum()
}

/// One point of the circle-free ratio sequence.
#[derive(Clone, Debug)]
pub struct RatioPoint {
    pub s: u64,
    /// Fraction of circle-free graphs among all `C_s^2` graphs.
    pub fraction: BigRational,
    /// Ratio of consecutive circle-free counts, absent if the count is zero.
    pub growth: Option<BigRational>,
}

/// Exact circle-free fractions and growth ratios for `s = 1..=max_s`.
pub fn ratio_sequence(max_s: u64) -> Vec<RatioPoint> {
    assert!(max_s >= 2);
    let circle_free: Vec<BigUint> = (1..=max_s + 1).map(|s| count_exact(s, 0)).collect();
    (1..=max_s)
        .map(|s| {
            let e = &circle_free[(s - 1) as usize];
            let c = catalan(s);
            let fraction = BigRational::new(e.clone().into(), BigInt::from(&c * &c));
            let growth = (!e.is_zero()).then(|| {
                BigRational::new(circle_free[s as usize].clone().into(), e.clone().into())
            });
            RatioPoint {
                s,
                fraction,
                growth,
            }
        })
        .collect()
}

/// Real roots of `t^3 - 13t^2 - 13t + 1 = 0` in ascending order; the cubic
/// factors as `(t + 1)(t^2 - 14t + 1)`, so the roots are closed forms.
pub fn characteristic_roots() -> [f64; 3] {
    let sqrt3 = 3.0f64.sqrt();
    [-1.0, 7.0 - 4.0 * sqrt3, 7.0 + 4.0 * sqrt3]
}

/// Twist-number volume bounds for the expected `(r, 2s-1)` diagram.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolumeBounds {
    /// Present only for alternating diagrams with `r != 1`.
    pub lower: Option<f64>,
    pub upper: f64,
    /// Set when a bound is non-positive and therefore uninformative.
    pub vacuous: bool,
}

/// Upper and (for alternating, `r != 1`) lower bounds on the expected
/// volume of the link complement. Non-positive bounds are reported
/// verbatim with the vacuous flag set rather than clamped.
pub fn volume_bounds(s: u64, r: u64, alternating: bool) -> VolumeBounds {
    assert!(s >= 1 && r >= 1);
    let crossings = (2 * s as i128 - 1) * (r as i128) * (r as i128);
    // The upper bound for r = 1 is the specialised form `10 v3 (s - 3)`.
    let upper_twists = if r == 1 {
        s as i128 - 3
    } else {
        crossings - s as i128 - 3
    };
    let upper = 10.0 * IDEAL_TETRAHEDRON_VOLUME * upper_twists as f64;
    let lower = (alternating && r != 1)
        .then(|| IDEAL_TETRAHEDRON_VOLUME * (crossings - s as i128 - 5) as f64 / 2.0);
    let vacuous = upper <= 0.0 || lower.is_some_and(|l| l <= 0.0);
    VolumeBounds {
        lower,
        upper,
        vacuous,
    }
}

/// Rounds an exact rational to `f64`, scaling first so that huge
/// numerators and denominators do not overflow to infinity.
pub fn ratio_to_f64(value: &BigRational) -> f64 {
    let numer = value.numer();
    let denom = value.denom();
    let shift = numer.bits().max(denom.bits()).saturating_sub(96);
    let n = numer >> shift;
    let d = denom >> shift;
    n.to_f64().unwrap() / d.to_f64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(4, 1), big(4));
        assert_eq!(binomial(2, 3), big(0));
        assert_eq!(binomial(-1, 0), big(0));
        assert_eq!(binomial(5, -1), big(0));
        assert_eq!(binomial(0, 0), big(1));
        // 2s - k - 1 choose k at s = 3, k = 2, the boundary case inside
        // the marked count.
        assert_eq!(binomial(3, 2), big(3));
        assert_eq!(binomial(50, 25), "126410606437752".parse().unwrap());
    }

    #[test]
    fn catalan_small_values() {
        let want = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for (n, &w) in want.iter().enumerate() {
            assert_eq!(catalan(n as u64), big(w), "n={n}");
        }
    }

    #[test]
    fn narayana_values_and_identities() {
        assert_eq!(narayana(4, 2), big(6));
        assert_eq!(narayana(5, 2), narayana(5, 4));
        assert_eq!(narayana(4, 0), big(0));
        assert_eq!(narayana(4, 5), big(0));
        for n in 1..=30u64 {
            let sum: BigUint = (1..=n).map(|k| narayana(n, k)).sum();
            assert_eq!(sum, catalan(n), "n={n}");
            for k in 1..=n {
                assert_eq!(narayana(n, k), narayana(n, n - k + 1));
            }
        }
    }

    #[test]
    #[should_panic(expected = "n >= 1")]
    fn narayana_rejects_zero() {
        narayana(0, 0);
    }

    #[test]
    fn pierced_placements() {
        assert_eq!(count_pierced_placements(7, 2), big(10));
        assert_eq!(count_pierced_placements(9, 0), big(1));
        assert_eq!(count_pierced_placements(3, 2), big(0));
    }

    #[test]
    fn marked_counts() {
        assert_eq!(count_marked(3, 1), big(16));
        assert_eq!(count_marked(5, 3), big(80));
        for s in 1..=8 {
            let c = catalan(s);
            assert_eq!(count_marked(s, 0), &c * &c, "s={s}");
        }
        // A single vertex cannot carry a circle.
        assert_eq!(count_marked(1, 1), big(0));
    }

    #[test]
    fn exact_counts() {
        assert_eq!(count_exact(3, 0), big(12));
        assert_eq!(count_exact(3, 1), big(10));
        assert_eq!(count_exact(3, 2), big(3));
        assert_eq!(count_exact(3, 3), big(0));
        assert_eq!(count_exact(1, 0), big(1));
        let first: Vec<u64> = vec![1, 2, 12, 82, 646];
        for (i, &want) in first.iter().enumerate() {
            assert_eq!(count_exact(i as u64 + 1, 0), big(want));
        }
    }

    #[test]
    fn count_table_identities() {
        for s in 1..=12u64 {
            let table = CountTable::new(s);
            let c = catalan(s);
            assert_eq!(table.total_exact(), &c * &c, "s={s}");
            for k in 0..=s {
                let recon: BigUint = (k..=s)
                    .map(|m| binomial(m as i64, k as i64) * table.exact(m))
                    .sum();
                assert_eq!(&recon, table.marked(k), "s={s} k={k}");
            }
            // Expectation identity: sum of m * exact(m) recovers marked(1).
            let weighted: BigUint = (1..=s).map(|m| big(m) * table.exact(m)).sum();
            assert_eq!(&weighted, table.marked(1), "s={s}");
        }
    }

    #[test]
    fn expected_pierced_circles_values() {
        assert_eq!(expected_pierced_circles(2), rational(1, 2));
        assert_eq!(expected_pierced_circles(3), rational(16, 25));
        assert_eq!(expected_pierced_circles(6), rational(245, 242));
        let err = expected_pierced_circles(6) - rational(1, 1);
        assert!(err.abs() < rational(13, 1000));
    }

    #[test]
    fn closed_form_matches_exact_ratio() {
        for s in 2..=200 {
            assert_eq!(
                expected_pierced_circles(s),
                pierced_circles_closed_form(s),
                "s={s}"
            );
        }
    }

    #[test]
    fn expectation_formulas() {
        assert_eq!(expected_nestings(5), rational(3, 1));
        assert_eq!(expected_nestings(1), rational(1, 1));
        assert_eq!(expected_nestings(4), rational(5, 2));
        assert_eq!(expected_bigons(4), rational(5, 1));
        assert_eq!(expected_bigons(1), rational(2, 1));
        assert_eq!(expected_bigons(5), expected_nestings(5) * rational(2, 1));
        assert_eq!(expected_twists(5, 1), rational(3, 1));
        assert_eq!(expected_twists(3, 2), rational(16, 1));
        assert_eq!(expected_twists(1, 1), rational(-1, 1));
    }

    #[test]
    fn recurrence_polynomials_match_fixed_table() {
        let checks: [(u64, [i64; 4]); 2] = [(1, [0, -231, -474, 75]), (2, [9, -774, -1305, 180])];
        for (s, want) in checks {
            for (k, &w) in want.iter().enumerate() {
                assert_eq!(recurrence_polynomial(k, s), BigInt::from(w), "k={k} s={s}");
            }
        }
    }

    #[test]
    fn zeilberger_residual_vanishes() {
        for s in 1..=100 {
            assert_eq!(zeilberger_residual(s), BigInt::zero(), "s={s}");
        }
    }

    #[test]
    fn ratio_sequence_values() {
        let seq = ratio_sequence(4);
        let fractions: Vec<BigRational> = seq.iter().map(|p| p.fraction.clone()).collect();
        assert_eq!(
            fractions,
            vec![
                rational(1, 1),
                rational(1, 2),
                rational(12, 25),
                rational(82, 196)
            ]
        );
        assert_eq!(seq[3].growth, Some(rational(646, 82)));
    }

    #[test]
    fn ratio_sequence_decreases_and_growth_stays_below_16() {
        let seq = ratio_sequence(60);
        for w in seq.windows(2) {
            if w[0].s >= 2 {
                assert!(w[1].fraction < w[0].fraction, "s={}", w[0].s);
            }
        }
        for p in &seq {
            let growth = p.growth.as_ref().unwrap();
            assert!(growth < &rational(16, 1), "s={}", p.s);
        }
        // First s with fraction below 1/20, frozen from an exact run.
        let threshold = seq.iter().find(|p| p.fraction < rational(1, 20)).unwrap();
        assert_eq!(threshold.s, 20);
    }

    #[test]
    fn characteristic_roots_satisfy_cubic() {
        let roots = characteristic_roots();
        assert!((roots[2] - 13.928203230275509).abs() < 1e-12);
        assert!((roots[1] - 0.07179676972449123).abs() < 1e-12);
        assert_eq!(roots[0], -1.0);
        for t in roots {
            let residual = t * t * t - 13.0 * t * t - 13.0 * t + 1.0;
            assert!(residual.abs() < 1e-9, "t={t}: {residual}");
        }
    }

    #[test]
    fn volume_bound_values() {
        let v3 = IDEAL_TETRAHEDRON_VOLUME;

        let b = volume_bounds(10, 1, false);
        assert_eq!(b.lower, None);
        assert!((b.upper - 70.0 * v3).abs() < 1e-9);
        assert!(!b.vacuous);

        let b = volume_bounds(3, 2, true);
        assert!((b.lower.unwrap() - 6.0 * v3).abs() < 1e-9);
        assert!((b.upper - 140.0 * v3).abs() < 1e-9);
        assert!(!b.vacuous);

        let b = volume_bounds(2, 1, false);
        assert!(b.upper < 0.0);
        assert!(b.vacuous);

        // No lower bound without the alternating restriction, or at r = 1.
        assert_eq!(volume_bounds(3, 2, false).lower, None);
        assert_eq!(volume_bounds(10, 1, true).lower, None);
    }

    #[test]
    fn ratio_to_f64_handles_huge_values() {
        let c = catalan(400);
        let r = BigRational::new(BigInt::from(&c * 3u32), BigInt::from(&c * 4u32));
        assert!((ratio_to_f64(&r) - 0.75).abs() < 1e-12);
        assert!((ratio_to_f64(&rational(1, 2)) - 0.5).abs() < 1e-15);
    }
}
