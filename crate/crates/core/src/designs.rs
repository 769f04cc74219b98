//! Block designs read off a sign matrix: incidence, concurrence, association
//! schemes and their intersection numbers.
//!
//! Rows of an incidence matrix are treatments, columns are blocks. Treatment
//! and block positions are zero-based; association classes are indexed in
//! ascending concurrence order, so class `c` carries `lambdas[c]`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrixgen::SignMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    v: usize,
    b: usize,
    entries: Vec<u8>,
}

impl IncidenceMatrix {
    pub fn new(rows: &[Vec<u8>]) -> Result<Self> {
        let v = rows.len();
        let b = rows.first().map_or(0, Vec::len);
        if v == 0 || b == 0 {
            return Err(Error::Dimension("incidence matrix must be non-empty".into()));
        }
        let mut entries = Vec::with_capacity(v * b);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != b {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {b}",
                    r + 1,
                    row.len()
                )));
            }
            for (c, &value) in row.iter().enumerate() {
                if value > 1 {
                    return Err(Error::InvalidEntry {
                        row: r + 1,
                        col: c + 1,
                        value: value.into(),
                    });
                }
                entries.push(value);
            }
        }
        Ok(IncidenceMatrix { v, b, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        IncidenceMatrix { v: n, b: n, entries }
    }

    /// Number of treatments (rows).
    pub fn v(&self) -> usize {
        self.v
    }

    /// Number of blocks (columns).
    pub fn b(&self) -> usize {
        self.b
    }

    pub fn get(&self, treatment: usize, block: usize) -> u8 {
        self.entries[treatment * self.b + block]
    }

    pub fn row(&self, treatment: usize) -> &[u8] {
        &self.entries[treatment * self.b..(treatment + 1) * self.b]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.entries.chunks(self.b)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.rows().map(<[u8]>::to_vec).collect()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.rows()
            .map(|r| r.iter().map(|&x| usize::from(x)).sum())
            .collect()
    }

    pub fn column_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.b];
        for row in self.rows() {
            for (c, &x) in row.iter().enumerate() {
                sums[c] += usize::from(x);
            }
        }
        sums
    }

    pub fn is_square(&self) -> bool {
        self.v == self.b
    }

    /// First `(row, col)` where a square matrix differs from its transpose.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        (0..self.v)
            .flat_map(|i| (i + 1..self.v).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }
}

/// +1 becomes 1, −1 becomes 0.
pub fn to_incidence(m: &SignMatrix) -> IncidenceMatrix {
    let n = m.order();
    IncidenceMatrix {
        v: n,
        b: n,
        entries: m.rows().flatten().map(|&s| u8::from(s == 1)).collect(),
    }
}

fn constant(values: &[usize]) -> Option<usize> {
    let first = *values.first()?;
    values.iter().all(|&x| x == first).then_some(first)
}

/// Common row sum `r` and common column sum `k`, each absent when not constant.
pub fn replication_blocksize(n: &IncidenceMatrix) -> (Option<usize>, Option<usize>) {
    (constant(&n.row_sums()), constant(&n.column_sums()))
}

/// `N·Nᵀ`: entry `(x, y)` counts the blocks containing both treatments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concurrence {
    v: usize,
    entries: Vec<u64>,
}

impl Concurrence {
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let v = rows.len();
        if rows.iter().any(|r| r.len() != v) {
            return Err(Error::Dimension("concurrence matrix must be square".into()));
        }
        Ok(Concurrence {
            v,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.v
    }

    pub fn get(&self, x: usize, y: usize) -> u64 {
        self.entries[x * self.v + y]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.v).map(<[u64]>::to_vec).collect()
    }

    /// Distinct off-diagonal values, ascending.
    pub fn off_diagonal_values(&self) -> Vec<u64> {
        let mut set = BTreeSet::new();
        for x in 0..self.v {
            for y in 0..self.v {
                if x != y {
                    set.insert(self.get(x, y));
                }
            }
        }
        set.into_iter().collect()
    }
}

pub fn concurrence(n: &IncidenceMatrix) -> Concurrence {
    let v = n.v();
    let mut entries = vec![0u64; v * v];
    for x in 0..v {
        for y in x..v {
            let c = n
                .row(x)
                .iter()
                .zip(n.row(y))
                .filter(|&(&a, &b)| a == 1 && b == 1)
                .count() as u64;
            entries[x * v + y] = c;
            entries[y * v + x] = c;
        }
    }
    Concurrence { v, entries }
}

/// Intersection numbers `p^i_{jk}`, stored sparsely per class `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionNumbers {
    classes: usize,
    // per class i: ascending ((j, k), count) with count > 0
    cells: Vec<Vec<((usize, usize), usize)>>,
}

impl IntersectionNumbers {
    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> usize {
        let cells = &self.cells[i];
        cells
            .binary_search_by_key(&(j, k), |&(key, _)| key)
            .map_or(0, |p| cells[p].1)
    }

    /// The dense `m×m` matrix `P_i`.
    pub fn matrix(&self, i: usize) -> Vec<Vec<usize>> {
        let mut p = vec![vec![0; self.classes]; self.classes];
        for &((j, k), count) in &self.cells[i] {
            p[j][k] = count;
        }
        p
    }

    pub fn nonzero(&self, i: usize) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.cells[i].iter().map(|&((j, k), c)| (j, k, c))
    }
}

/// Why a concurrence pattern fails to be an association scheme.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SchemeViolation {
    /// Treatment `treatment` has `found` associates in `class`, another has `expected`.
    ClassSizeVaries {
        class: usize,
        treatment: usize,
        expected: usize,
        found: usize,
    },
    /// Two pairs of the same class disagree on `p^class_{j k}`.
    IntersectionVaries {
        class: usize,
        j: usize,
        k: usize,
        reference_pair: (usize, usize),
        pair: (usize, usize),
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for SchemeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeViolation::ClassSizeVaries {
                class,
                treatment,
                expected,
                found,
            } => write!(
                f,
                "treatment {} has {found} associates in class {}, expected {expected}",
                treatment + 1,
                class + 1
            ),
            SchemeViolation::IntersectionVaries {
                class,
                j,
                k,
                reference_pair,
                pair,
                expected,
                found,
            } => write!(
                f,
                "p^{}_{{{}{}}} is {expected} for pair ({},{}) but {found} for pair ({},{})",
                class + 1,
                j + 1,
                k + 1,
                reference_pair.0 + 1,
                reference_pair.1 + 1,
                pair.0 + 1,
                pair.1 + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationScheme {
    v: usize,
    /// Concurrence value of each class, ascending.
    pub lambdas: Vec<u64>,
    class_of: Vec<usize>,
    /// `n_i`, present when every treatment has the same count in every class.
    pub class_sizes: Option<Vec<usize>>,
    /// Present when the scheme is valid.
    pub intersections: Option<IntersectionNumbers>,
    pub valid: bool,
    pub witness: Option<SchemeViolation>,
}

impl AssociationScheme {
    pub fn treatments(&self) -> usize {
        self.v
    }

    pub fn classes(&self) -> usize {
        self.lambdas.len()
    }

    /// Class of the unordered pair `{x, y}`; `None` when `x == y`.
    pub fn class_of(&self, x: usize, y: usize) -> Option<usize> {
        (x != y).then(|| self.class_of[x * self.v + y])
    }

    /// Checks the standard identities on the intersection numbers, returning
    /// one message per failure.
    pub fn identity_failures(&self) -> Vec<String> {
        let (Some(sizes), Some(p)) = (&self.class_sizes, &self.intersections) else {
            return vec!["scheme is not valid".into()];
        };
        let m = self.classes();
        let mut failures = Vec::new();
        if sizes.iter().sum::<usize>() != self.v.saturating_sub(1) {
            failures.push(format!(
                "class sizes sum to {}, expected v - 1 = {}",
                sizes.iter().sum::<usize>(),
                self.v.saturating_sub(1)
            ));
        }
        for i in 0..m {
            let mut row_sums = vec![0; m];
            for (j, k, c) in p.nonzero(i) {
                row_sums[j] += c;
                if p.get(i, k, j) != c {
                    failures.push(format!("p^{0}_{{{1}{2}}} != p^{0}_{{{2}{1}}}", i + 1, j + 1, k + 1));
                }
                if sizes[i] * c != sizes[j] * p.get(j, i, k) {
                    failures.push(format!(
                        "n_{0} p^{0}_{{{1}{2}}} != n_{1} p^{1}_{{{0}{2}}}",
                        i + 1,
                        j + 1,
                        k + 1
                    ));
                }
            }
            for j in 0..m {
                let expected = sizes[j] - usize::from(i == j);
                if row_sums[j] != expected {
                    failures.push(format!(
                        "sum_k p^{}_{{{}k}} = {}, expected {expected}",
                        i + 1,
                        j + 1,
                        row_sums[j]
                    ));
                }
            }
        }
        failures
    }
}

/// Run-length encoded `(class(x,z), class(y,z))` counts over `z ∉ {x, y}`.
fn triple_counts(class_of: &[usize], v: usize, x: usize, y: usize) -> Vec<((usize, usize), usize)> {
    let mut keys: Vec<(usize, usize)> = (0..v)
        .filter(|&z| z != x && z != y)
        .map(|z| (class_of[x * v + z], class_of[y * v + z]))
        .collect();
    keys.sort_unstable();
    let mut out: Vec<((usize, usize), usize)> = Vec::new();
    for key in keys {
        match out.last_mut() {
            Some((last, count)) if *last == key => *count += 1,
            _ => out.push((key, 1)),
        }
    }
    out
}

fn first_difference(
    a: &[((usize, usize), usize)],
    b: &[((usize, usize), usize)],
) -> ((usize, usize), usize, usize) {
    let lookup = |cells: &[((usize, usize), usize)], key| {
        cells
            .binary_search_by_key(&key, |&(k, _)| k)
            .map_or(0, |p| cells[p].1)
    };
    let keys: BTreeSet<(usize, usize)> = a.iter().chain(b).map(|&(k, _)| k).collect();
    keys.into_iter()
        .map(|key| (key, lookup(a, key), lookup(b, key)))
        .find(|&(_, x, y)| x != y)
        .expect("cell lists differ")
}

type Pair = (usize, usize);
/// A pair's triple counts, keyed by the classes of `(x, z)` and `(y, z)`.
type Cells = Vec<(Pair, usize)>;

/// Groups treatment pairs by concurrence value and checks the scheme axioms.
pub fn infer_scheme(c: &Concurrence) -> Result<AssociationScheme> {
    let v = c.order();
    for x in 0..v {
        for y in x + 1..v {
            if c.get(x, y) != c.get(y, x) {
                return Err(Error::NotSymmetric { row: x + 1, col: y + 1 });
            }
        }
        if x > 0 && c.get(x, x) != c.get(0, 0) {
            return Err(Error::NonConstantDiagonal { treatment: x + 1 });
        }
    }

    let lambdas = c.off_diagonal_values();
    let m = lambdas.len();
    let mut class_of = vec![0usize; v * v];
    for x in 0..v {
        for y in 0..v {
            if x != y {
                class_of[x * v + y] = lambdas.binary_search(&c.get(x, y)).expect("value listed");
            }
        }
    }

    let invalid = |witness, class_sizes| AssociationScheme {
        v,
        lambdas: lambdas.clone(),
        class_of: class_of.clone(),
        class_sizes,
        intersections: None,
        valid: false,
        witness: Some(witness),
    };

    let mut sizes: Option<Vec<usize>> = None;
    for x in 0..v {
        let mut counts = vec![0; m];
        for y in (0..v).filter(|&y| y != x) {
            counts[class_of[x * v + y]] += 1;
        }
        match &sizes {
            None => sizes = Some(counts),
            Some(expected) => {
                if let Some(class) = (0..m).find(|&i| counts[i] != expected[i]) {
                    return Ok(invalid(
                        SchemeViolation::ClassSizeVaries {
                            class,
                            treatment: x,
                            expected: expected[class],
                            found: counts[class],
                        },
                        None,
                    ));
                }
            }
        }
    }
    let sizes = sizes.unwrap_or_default();

    // first pair seen in each class, with its triple counts
    let mut reference: Vec<Option<(Pair, Cells)>> = vec![None; m];
    for x in 0..v {
        for y in (0..v).filter(|&y| y != x) {
            let class = class_of[x * v + y];
            let cells = triple_counts(&class_of, v, x, y);
            match &reference[class] {
                None => reference[class] = Some(((x, y), cells)),
                Some((pair, expected)) if *expected != cells => {
                    let ((j, k), want, got) = first_difference(expected, &cells);
                    return Ok(invalid(
                        SchemeViolation::IntersectionVaries {
                            class,
                            j,
                            k,
                            reference_pair: *pair,
                            pair: (x, y),
                            expected: want,
                            found: got,
                        },
                        Some(sizes),
                    ));
                }
                Some(_) => {}
            }
        }
    }

    let cells = reference
        .into_iter()
        .map(|r| r.map(|(_, cells)| cells).unwrap_or_default())
        .collect();
    Ok(AssociationScheme {
        v,
        lambdas,
        class_of,
        class_sizes: Some(sizes),
        intersections: Some(IntersectionNumbers { classes: m, cells }),
        valid: true,
        witness: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DesignKind {
    #[serde(rename = "SBIB")]
    Sbib,
    #[serde(rename = "SPBIB_M_CLASS")]
    SpbibMClass,
    #[serde(rename = "IRREGULAR")]
    Irregular,
}

impl fmt::Display for DesignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DesignKind::Sbib => "SBIB",
            DesignKind::SpbibMClass => "SPBIB_M_CLASS",
            DesignKind::Irregular => "IRREGULAR",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignSummary {
    pub v: usize,
    pub b: usize,
    pub r: Option<usize>,
    pub k: Option<usize>,
    pub lambdas: Vec<u64>,
    pub class_sizes: Option<Vec<usize>>,
    pub kind: DesignKind,
    /// Inferred whenever the replication is constant.
    pub scheme: Option<AssociationScheme>,
}

impl DesignSummary {
    /// `Σ n_i λ_i = r(k − 1)`; `None` when r, k or the class sizes are undefined.
    pub fn concurrence_identity_holds(&self) -> Option<bool> {
        let (r, k, sizes) = (self.r?, self.k?, self.class_sizes.as_ref()?);
        let lhs: u64 = sizes.iter().zip(&self.lambdas).map(|(&n, &l)| n as u64 * l).sum();
        Some(lhs == (r as u64) * (k as u64).saturating_sub(1))
    }
}

pub fn classify_design(n: &IncidenceMatrix) -> DesignSummary {
    let (r, k) = replication_blocksize(n);
    let c = concurrence(n);
    let lambdas = c.off_diagonal_values();
    // Constant replication means a constant concurrence diagonal.
    let scheme = r.map(|_| infer_scheme(&c).expect("N·Nᵀ is symmetric with constant diagonal"));
    let valid = scheme.as_ref().is_some_and(|s| s.valid);
    let kind = match (r, k, lambdas.len()) {
        (Some(_), Some(_), 1) => DesignKind::Sbib,
        (Some(_), Some(_), m) if m >= 2 && valid => DesignKind::SpbibMClass,
        _ => DesignKind::Irregular,
    };
    DesignSummary {
        v: n.v(),
        b: n.b(),
        r,
        k,
        lambdas,
        class_sizes: scheme.as_ref().and_then(|s| s.class_sizes.clone()),
        kind,
        scheme,
    }
}

/// Concurrence of two treatments predicted from their rows' inner product:
/// `r − (n − g)/4`.
pub fn lambda_from_g(n: i64, r: i64, g: i64) -> Result<i64> {
    let gap = n - g;
    if gap % 4 != 0 {
        return Err(Error::NonIntegralLambda { n, r, g });
    }
    Ok(r - gap / 4)
}
