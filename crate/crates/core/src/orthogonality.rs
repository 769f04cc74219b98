//! Row inner products ("orthogonal numbers"), their closed forms, and the
//! exact determinant of a sign matrix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrixgen::{GeneratorRule, SignConvention, SignMatrix};

pub fn inner_product(a: &[i8], b: &[i8]) -> Result<i64> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "rows of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter().zip(b).map(|(&x, &y)| i64::from(x * y)).sum())
}

/// Number of positions where both rows hold +1.
pub fn coincident_unities(a: &[i8], b: &[i8]) -> usize {
    a.iter().zip(b).filter(|&(&x, &y)| x == 1 && y == 1).count()
}

/// Every pairwise row inner product of a sign matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalProfile {
    pub order: usize,
    /// Keyed by row labels `(i, j)`, `1 ≤ i < j ≤ n`.
    pub pair_values: BTreeMap<(usize, usize), i64>,
    /// Ascending distinct values over distinct-row pairs.
    pub distinct_values: Vec<i64>,
    /// Parallel to `distinct_values`.
    pub multiplicities: Vec<usize>,
    /// The self inner product, always `n`.
    pub trivial_value: i64,
}

impl OrthogonalProfile {
    pub fn multiplicity(&self, g: i64) -> usize {
        self.distinct_values
            .iter()
            .position(|&v| v == g)
            .map_or(0, |p| self.multiplicities[p])
    }

    pub fn value(&self, i: usize, j: usize) -> Option<i64> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.pair_values.get(&key).copied()
    }

    /// Distinct pairwise values together with the trivial value, ascending.
    pub fn values_with_trivial(&self) -> Vec<i64> {
        let mut all = self.distinct_values.clone();
        if !all.contains(&self.trivial_value) {
            all.push(self.trivial_value);
            all.sort_unstable();
        }
        all
    }
}

pub fn profile(m: &SignMatrix) -> OrthogonalProfile {
    let n = m.order();
    let mut pair_values = BTreeMap::new();
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let g = m
                .row(i)
                .iter()
                .zip(m.row(j))
                .map(|(&x, &y)| i64::from(x * y))
                .sum();
            pair_values.insert((i + 1, j + 1), g);
            *counts.entry(g).or_default() += 1;
        }
    }
    OrthogonalProfile {
        order: n,
        pair_values,
        distinct_values: counts.keys().copied().collect(),
        multiplicities: counts.values().copied().collect(),
        trivial_value: n as i64,
    }
}

fn require_odd(n: i64) -> Result<()> {
    if n < 1 || n % 2 == 0 {
        return Err(Error::Domain {
            what: "n",
            value: n,
            range: "the odd positive integers".into(),
        });
    }
    Ok(())
}

/// `4k − 2 − n` for odd `n`, with `k` the count of coincident +1s.
pub fn predicted_g_odd(n: i64, k: i64) -> Result<i64> {
    require_odd(n)?;
    let max = (n + 1) / 2;
    if !(1..=max).contains(&k) {
        return Err(Error::Domain {
            what: "k",
            value: k,
            range: format!("1..={max}"),
        });
    }
    Ok(4 * k - 2 - n)
}

/// `4k − n` for even `n`.
pub fn predicted_g_even(n: i64, k: i64) -> Result<i64> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::Domain {
            what: "n",
            value: n,
            range: "the even positive integers".into(),
        });
    }
    let max = n / 2;
    if !(0..=max).contains(&k) {
        return Err(Error::Domain {
            what: "k",
            value: k,
            range: format!("0..={max}"),
        });
    }
    Ok(4 * k - n)
}

/// Inverse of [`predicted_g_odd`].
pub fn unity_count_from_g(n: i64, g: i64) -> Result<i64> {
    require_odd(n)?;
    let shifted = g + 2 + n;
    if shifted % 4 != 0 {
        return Err(Error::FormulaMismatch { n, g });
    }
    let k = shifted / 4;
    if !(1..=(n + 1) / 2).contains(&k) {
        return Err(Error::FormulaMismatch { n, g });
    }
    Ok(k)
}

/// Sums `4k − 2 − n` over `k = 1..=(n+1)/2`.
///
/// The series is arithmetic, so the sum always collapses to `(n+1)/2`;
/// the loop is kept so the closed form is checked rather than assumed.
pub fn orthogonal_number_sum(n: i64) -> Result<i64> {
    require_odd(n)?;
    let half = (n + 1) / 2;
    let mut sum = 0;
    for k in 1..=half {
        sum += predicted_g_odd(n, k)?;
    }
    debug_assert_eq!(sum, half);
    Ok(sum)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminantResult {
    pub value: BigInt,
    /// Closed form, when the matrix's provenance has one.
    pub predicted: Option<BigInt>,
    pub matches: Option<bool>,
}

/// Closed-form determinant for Type III sign matrices.
///
/// Odd `n` under odd-plus: `(−1)^((n−1)/2) · 2^(n−1)`; even-plus negates
/// every entry, which multiplies the determinant by `(−1)^n`. For even `n`
/// the matrix has only two distinct (mutually negated) rows, so it is
/// singular.
pub fn predicted_determinant(rule: GeneratorRule, n: usize, convention: SignConvention) -> Option<BigInt> {
    if rule != GeneratorRule::Type3CyclicSum || convention == SignConvention::Type1Retain {
        return None;
    }
    if n.is_multiple_of(2) {
        return Some(BigInt::zero());
    }
    let mut value = BigInt::one() << (n - 1);
    if (n - 1) / 2 % 2 == 1 {
        value = -value;
    }
    if convention == SignConvention::EvenPlus {
        value = -value;
    }
    Some(value)
}

pub fn exact_determinant(m: &SignMatrix) -> DeterminantResult {
    let rows: Vec<Vec<BigInt>> = m
        .rows()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let value = bareiss_determinant(rows);
    let predicted = m
        .provenance()
        .and_then(|p| predicted_determinant(p.rule, p.order, p.convention));
    let matches = predicted.as_ref().map(|p| *p == value);
    DeterminantResult {
        value,
        predicted,
        matches,
    }
}

/// Fraction-free Gaussian elimination. Every division is exact.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            for j in k + 1..n {
                let t = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = t / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixgen::sign_matrix;

    fn type3(n: usize) -> SignMatrix {
        sign_matrix(GeneratorRule::Type3CyclicSum, n, SignConvention::OddPlus).unwrap()
    }

    /// Permutation-expansion determinant, independent of elimination.
    fn leibniz(rows: &[Vec<i8>]) -> i64 {
        fn go(rows: &[Vec<i8>], r: usize, used: &mut Vec<bool>, perm: &mut Vec<usize>) -> i64 {
            let n = rows.len();
            if r == n {
                let mut inversions = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if perm[i] > perm[j] {
                            inversions += 1;
                        }
                    }
                }
                let prod: i64 = (0..n).map(|i| i64::from(rows[i][perm[i]])).product();
                return if inversions % 2 == 0 { prod } else { -prod };
            }
            let mut total = 0;
            for c in 0..n {
                if !used[c] {
                    used[c] = true;
                    perm.push(c);
                    total += go(rows, r + 1, used, perm);
                    perm.pop();
                    used[c] = false;
                }
            }
            total
        }
        go(rows, 0, &mut vec![false; rows.len()], &mut Vec::new())
    }

    #[test]
    fn inner_product_examples() {
        let m = type3(5);
        assert_eq!(inner_product(m.row(0), m.row(1)), Ok(-3));
        for i in 0..5 {
            assert_eq!(inner_product(m.row(i), m.row(i)), Ok(5));
        }
        assert_eq!(inner_product(&[1, 1, -1, -1], &[1, -1, 1, -1]), Ok(0));
        assert!(matches!(inner_product(&[1], &[1, 1]), Err(Error::Dimension(_))));
    }

    #[test]
    fn profile_examples() {
        assert_eq!(profile(&type3(3)).distinct_values, vec![-1]);
        assert_eq!(profile(&type3(9)).distinct_values, vec![-7, -3, 1, 5]);

        let p5 = profile(&type3(5));
        assert_eq!(p5.pair_values.len(), 10);
        assert_eq!(p5.distinct_values, vec![-3, 1]);
        // Brute-force count: each row is a cyclic shift, so g depends only on
        // the cyclic distance between rows, and both distances occur 5 times.
        assert_eq!(p5.multiplicities, vec![5, 5]);
        assert_eq!(p5.value(1, 5), Some(-3));
        assert_eq!(p5.value(5, 1), Some(-3));
    }

    #[test]
    fn odd_formula_examples() {
        for n in [3, 5, 9, 21] {
            assert_eq!(predicted_g_odd(n, 1), Ok(2 - n));
            assert_eq!(predicted_g_odd(n, (n + 1) / 2), Ok(n));
        }
        assert_eq!(predicted_g_odd(9, 2), Ok(-3));
        assert!(predicted_g_odd(9, 0).is_err());
        assert!(predicted_g_odd(9, 6).is_err());
        assert!(predicted_g_odd(8, 1).is_err());
    }

    #[test]
    fn even_formula_examples() {
        for n in [2, 4, 10] {
            assert_eq!(predicted_g_even(n, n / 2), Ok(n));
            assert_eq!(predicted_g_even(n, 0), Ok(-n));
        }
        assert_eq!(predicted_g_even(4, 1), Ok(0));
        assert!(predicted_g_even(4, 3).is_err());
        assert!(predicted_g_even(5, 1).is_err());
    }

    #[test]
    fn unity_count_examples() {
        // k counted directly on rows 1 and 2 at n = 5 (g = -3).
        let m = type3(5);
        assert_eq!(coincident_unities(m.row(0), m.row(1)), 1);
        assert_eq!(unity_count_from_g(5, -3), Ok(1));
        assert_eq!(unity_count_from_g(9, 5), Ok(4));
        assert_eq!(unity_count_from_g(9, 9), Ok(5));
        assert_eq!(
            unity_count_from_g(9, 0),
            Err(Error::FormulaMismatch { n: 9, g: 0 })
        );
        assert!(unity_count_from_g(9, -11).is_err());
    }

    #[test]
    fn unity_count_matches_direct_counting() {
        for n in [5usize, 9] {
            let m = type3(n);
            let p = profile(&m);
            for (&(i, j), &g) in &p.pair_values {
                let k = coincident_unities(m.row(i - 1), m.row(j - 1)) as i64;
                assert_eq!(unity_count_from_g(n as i64, g), Ok(k));
            }
        }
    }

    #[test]
    fn sum_examples() {
        assert_eq!(orthogonal_number_sum(5), Ok(3));
        assert_eq!(orthogonal_number_sum(3), Ok(2));
        assert_eq!(orthogonal_number_sum(9), Ok(5));
        assert!(orthogonal_number_sum(4).is_err());
    }

    #[test]
    fn determinant_against_leibniz() {
        for n in 2..=7 {
            for conv in [SignConvention::OddPlus, SignConvention::EvenPlus] {
                let m = sign_matrix(GeneratorRule::Type3CyclicSum, n, conv).unwrap();
                let d = exact_determinant(&m);
                assert_eq!(d.value, BigInt::from(leibniz(&m.to_rows())), "n={n}");
                assert_eq!(d.matches, Some(true), "n={n} {conv}");
            }
        }
        let a = SignMatrix::from_rows(&[vec![1, 1, 1], vec![1, -1, 1], vec![-1, 1, 1]]).unwrap();
        let d = exact_determinant(&a);
        assert_eq!(d.value, BigInt::from(leibniz(&a.to_rows())));
        assert_eq!(d.predicted, None);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(exact_determinant(&type3(3)).value, BigInt::from(-4));
        assert_eq!(exact_determinant(&type3(5)).value, BigInt::from(16));
        assert_eq!(exact_determinant(&type3(4)).value, BigInt::zero());
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let rows = vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(3), BigInt::from(0), BigInt::from(0)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(5)],
        ];
        // 0·0 - 2·(15 - 0) + 1·(3 - 0)
        assert_eq!(bareiss_determinant(rows), BigInt::from(-27));
        assert_eq!(bareiss_determinant(vec![]), BigInt::one());
    }
}
