//! Modular base tables and their ±1 sign matrices.
//!
//! Rows and columns are labelled `1..=n` in every formula. Storage is a
//! row-major `Vec`, so the `get`/`row` accessors take zero-based positions:
//! position `p` holds the row (or column) labelled `p + 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order accepted by [`build_base`]. Primality is decided by trial
/// division, which is exact and instant below this bound.
pub const MAX_ORDER: usize = 10_000;

/// Which modular rule produces the base table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GeneratorRule {
    /// `1 + ((i-1)(j-1) mod n)`, n prime.
    Type1Affine,
    /// `(i·j) mod (n+1)`, n+1 prime.
    Type2Product,
    /// `(i+j) mod n`, any n ≥ 2.
    Type3CyclicSum,
}

impl GeneratorRule {
    /// Numeric type label used on the command line (1, 2 or 3).
    pub fn number(self) -> u8 {
        match self {
            GeneratorRule::Type1Affine => 1,
            GeneratorRule::Type2Product => 2,
            GeneratorRule::Type3CyclicSum => 3,
        }
    }

    pub fn from_number(t: u8) -> Option<Self> {
        match t {
            1 => Some(GeneratorRule::Type1Affine),
            2 => Some(GeneratorRule::Type2Product),
            3 => Some(GeneratorRule::Type3CyclicSum),
            _ => None,
        }
    }

    /// Whether `n` satisfies this rule's order precondition.
    pub fn admits(self, n: usize) -> bool {
        n >= 2
            && match self {
                GeneratorRule::Type1Affine => is_prime(n as u64),
                GeneratorRule::Type2Product => is_prime(n as u64 + 1),
                GeneratorRule::Type3CyclicSum => true,
            }
    }
}

impl fmt::Display for GeneratorRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// How odd/even table values map to ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignConvention {
    /// Odd values (including 1) become +1, even values −1.
    #[default]
    OddPlus,
    /// Even values become +1, odd values (including 1) −1.
    EvenPlus,
    /// 1 stays +1, other odd values become −1, even values +1.
    Type1Retain,
}

impl SignConvention {
    pub fn sign_of(self, value: u32) -> i8 {
        let odd = value % 2 == 1;
        match self {
            SignConvention::OddPlus => {
                if odd {
                    1
                } else {
                    -1
                }
            }
            SignConvention::EvenPlus => {
                if odd {
                    -1
                } else {
                    1
                }
            }
            SignConvention::Type1Retain => {
                if value == 1 || !odd {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SignConvention::OddPlus => "odd-plus",
            SignConvention::EvenPlus => "even-plus",
            SignConvention::Type1Retain => "type1-retain",
        }
    }
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SignConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd-plus" => Ok(SignConvention::OddPlus),
            "even-plus" => Ok(SignConvention::EvenPlus),
            "type1-retain" => Ok(SignConvention::Type1Retain),
            other => Err(Error::Usage(format!(
                "unknown convention {other:?} (expected odd-plus, even-plus or type1-retain)"
            ))),
        }
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Representative of `x mod n` in `1..=n` (a zero residue prints as `n`).
pub fn residue_representative(x: i64, n: i64) -> Result<i64> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    Ok((x - 1).rem_euclid(n) + 1)
}

/// An n×n table of integers in `1..=n` produced by one of the modular rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularTable {
    order: usize,
    rule: GeneratorRule,
    entries: Vec<u32>,
}

impl ModularTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rule(&self) -> GeneratorRule {
        self.rule
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[u32] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.order)
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(<[u32]>::to_vec).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// Builds the base table for `rule` at order `n`.
pub fn build_base(rule: GeneratorRule, n: usize) -> Result<ModularTable> {
    if n < 2 {
        return Err(Error::InvalidOrder(n as i64));
    }
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge { n, max: MAX_ORDER });
    }
    if !rule.admits(n) {
        return Err(Error::Precondition { rule, n });
    }

    let modulus = n as u64;
    let mut entries = Vec::with_capacity(n * n);
    for i in 1..=modulus {
        for j in 1..=modulus {
            let value = match rule {
                GeneratorRule::Type1Affine => 1 + ((i - 1) * (j - 1)) % modulus,
                // n+1 prime and 1 ≤ i,j ≤ n, so i·j is never 0 mod n+1.
                GeneratorRule::Type2Product => (i * j) % (modulus + 1),
                GeneratorRule::Type3CyclicSum => (i + j - 1) % modulus + 1,
            };
            entries.push(value as u32);
        }
    }
    Ok(ModularTable {
        order: n,
        rule,
        entries,
    })
}

/// Where a sign matrix came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub rule: GeneratorRule,
    pub order: usize,
    pub convention: SignConvention,
}

/// Square matrix with entries in {+1, −1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    order: usize,
    entries: Vec<i8>,
    provenance: Option<Provenance>,
}

impl SignMatrix {
    /// Wraps arbitrary ±1 rows. The result has no provenance.
    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {order}",
                    r + 1,
                    row.len()
                )));
            }
            for (c, &value) in row.iter().enumerate() {
                if value != 1 && value != -1 {
                    return Err(Error::InvalidEntry {
                        row: r + 1,
                        col: c + 1,
                        value: value.into(),
                    });
                }
                entries.push(value);
            }
        }
        Ok(SignMatrix {
            order,
            entries,
            provenance: None,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[i8] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.order)
    }

    pub fn to_rows(&self) -> Vec<Vec<i8>> {
        self.rows().map(<[i8]>::to_vec).collect()
    }

    pub fn column(&self, col: usize) -> Vec<i8> {
        (0..self.order).map(|r| self.get(r, col)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Entrywise negation. Provenance swaps between the two parity
    /// conventions; a negated `Type1Retain` matrix has no named convention.
    pub fn negated(&self) -> SignMatrix {
        let provenance = self.provenance.and_then(|p| {
            let convention = match p.convention {
                SignConvention::OddPlus => SignConvention::EvenPlus,
                SignConvention::EvenPlus => SignConvention::OddPlus,
                SignConvention::Type1Retain => return None,
            };
            Some(Provenance { convention, ..p })
        });
        SignMatrix {
            order: self.order,
            entries: self.entries.iter().map(|&v| -v).collect(),
            provenance,
        }
    }

    /// Number of +1 entries in each row.
    pub fn row_plus_counts(&self) -> Vec<usize> {
        self.rows()
            .map(|r| r.iter().filter(|&&v| v == 1).count())
            .collect()
    }

    /// Number of +1 entries in each column.
    pub fn column_plus_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.order];
        for row in self.rows() {
            for (c, &v) in row.iter().enumerate() {
                if v == 1 {
                    counts[c] += 1;
                }
            }
        }
        counts
    }
}

pub fn apply_signs(table: &ModularTable, convention: SignConvention) -> SignMatrix {
    SignMatrix {
        order: table.order,
        entries: table.entries.iter().map(|&v| convention.sign_of(v)).collect(),
        provenance: Some(Provenance {
            rule: table.rule,
            order: table.order,
            convention,
        }),
    }
}

/// Convenience: base table followed by the sign substitution.
pub fn sign_matrix(rule: GeneratorRule, n: usize, convention: SignConvention) -> Result<SignMatrix> {
    Ok(apply_signs(&build_base(rule, n)?, convention))
}

pub fn principal_diagonal(table: &ModularTable) -> Vec<u32> {
    (0..table.order).map(|i| table.get(i, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_examples() {
        assert_eq!(residue_representative(6, 3), Ok(3));
        assert_eq!(residue_representative(5, 5), Ok(5));
        assert_eq!(residue_representative(14, 9), Ok(5));
        assert_eq!(residue_representative(-1, 4), Ok(3));
        assert_eq!(residue_representative(0, 7), Ok(7));
        assert_eq!(residue_representative(3, 1), Err(Error::InvalidOrder(1)));
    }

    #[test]
    fn type3_order_three() {
        let t = build_base(GeneratorRule::Type3CyclicSum, 3).unwrap();
        assert_eq!(t.to_rows(), vec![vec![2, 3, 1], vec![3, 1, 2], vec![1, 2, 3]]);
    }

    #[test]
    fn type3_order_five_first_row() {
        let t = build_base(GeneratorRule::Type3CyclicSum, 5).unwrap();
        assert_eq!(t.row(0), &[2, 3, 4, 5, 1]);
    }

    #[test]
    fn type1_order_three() {
        // 1 + ((i-1)(j-1) mod 3) evaluated by hand
        let t = build_base(GeneratorRule::Type1Affine, 3).unwrap();
        assert_eq!(t.to_rows(), vec![vec![1, 1, 1], vec![1, 2, 3], vec![1, 3, 2]]);
    }

    #[test]
    fn type2_rows_are_permutations() {
        for n in [2, 4, 6, 10, 12, 16] {
            let t = build_base(GeneratorRule::Type2Product, n).unwrap();
            assert!(t.is_symmetric());
            for row in t.rows() {
                let mut r = row.to_vec();
                r.sort_unstable();
                assert_eq!(r, (1..=n as u32).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn type1_first_row_and_column_are_ones() {
        let t = build_base(GeneratorRule::Type1Affine, 7).unwrap();
        assert!(t.is_symmetric());
        assert!(t.row(0).iter().all(|&v| v == 1));
        for row in t.rows().skip(1) {
            let mut r = row.to_vec();
            r.sort_unstable();
            assert_eq!(r, (1..=7).collect::<Vec<_>>());
        }
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            build_base(GeneratorRule::Type1Affine, 4),
            Err(Error::Precondition {
                rule: GeneratorRule::Type1Affine,
                n: 4
            })
        );
        assert_eq!(
            Error::Precondition {
                rule: GeneratorRule::Type1Affine,
                n: 4
            }
            .to_string(),
            "n must be prime for type 1 (got 4)"
        );
        assert!(build_base(GeneratorRule::Type2Product, 5).is_err());
        assert!(build_base(GeneratorRule::Type2Product, 4).is_ok());
        assert_eq!(
            build_base(GeneratorRule::Type3CyclicSum, 1),
            Err(Error::InvalidOrder(1))
        );
        assert!(build_base(GeneratorRule::Type3CyclicSum, 2).is_ok());
        assert!(matches!(
            build_base(GeneratorRule::Type3CyclicSum, MAX_ORDER + 1),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(9973));
        assert!(!is_prime(9999));
    }

    #[test]
    fn order_three_signs() {
        let m = sign_matrix(GeneratorRule::Type3CyclicSum, 3, SignConvention::OddPlus).unwrap();
        assert_eq!(m.to_rows(), vec![vec![-1, 1, 1], vec![1, 1, -1], vec![1, -1, 1]]);
    }

    #[test]
    fn even_plus_negates() {
        for rule in [
            GeneratorRule::Type1Affine,
            GeneratorRule::Type2Product,
            GeneratorRule::Type3CyclicSum,
        ] {
            let t = build_base(rule, 6 + (rule == GeneratorRule::Type1Affine) as usize).unwrap();
            let odd = apply_signs(&t, SignConvention::OddPlus);
            let even = apply_signs(&t, SignConvention::EvenPlus);
            assert_eq!(odd.negated(), even);
        }
    }

    #[test]
    fn retain_keeps_first_row() {
        let t = build_base(GeneratorRule::Type1Affine, 5).unwrap();
        let m = apply_signs(&t, SignConvention::Type1Retain);
        assert_eq!(m.row(0), &[1, 1, 1, 1, 1]);
        // 3 and 5 are the odd non-unit values
        assert_eq!(SignConvention::Type1Retain.sign_of(3), -1);
        assert_eq!(SignConvention::Type1Retain.sign_of(4), 1);
    }

    #[test]
    fn diagonals() {
        let d = |n| principal_diagonal(&build_base(GeneratorRule::Type3CyclicSum, n).unwrap());
        assert_eq!(d(4), vec![2, 4, 2, 4]);
        assert_eq!(d(6), vec![2, 4, 6, 2, 4, 6]);
        assert_eq!(d(5), vec![2, 4, 1, 3, 5]);
        let mut d9 = d(9);
        d9.sort_unstable();
        assert_eq!(d9, (1..=9).collect::<Vec<_>>());
    }

    #[test]
    fn from_rows_validates() {
        assert!(SignMatrix::from_rows(&[vec![1, -1], vec![1]]).is_err());
        assert!(matches!(
            SignMatrix::from_rows(&[vec![1, 0], vec![1, 1]]),
            Err(Error::InvalidEntry { row: 1, col: 2, .. })
        ));
        assert!(SignMatrix::from_rows(&[]).is_err());
    }

    #[test]
    fn convention_parse() {
        assert_eq!("even-plus".parse(), Ok(SignConvention::EvenPlus));
        assert!("odd".parse::<SignConvention>().is_err());
    }
}
