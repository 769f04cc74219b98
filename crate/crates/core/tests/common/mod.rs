//! Golden matrices and independent brute-force oracles shared by the
//! integration suites. Nothing here calls into the library's algorithms.

#![allow(dead_code, clippy::needless_range_loop, clippy::type_complexity)]

pub const TABLE_3: [[u32; 3]; 3] = [[2, 3, 1], [3, 1, 2], [1, 2, 3]];
pub const SIGNS_3: [[i8; 3]; 3] = [[-1, 1, 1], [1, 1, -1], [1, -1, 1]];
pub const INCIDENCE_3: [[u8; 3]; 3] = [[0, 1, 1], [1, 1, 0], [1, 0, 1]];

pub const TABLE_5: [[u32; 5]; 5] = [
    [2, 3, 4, 5, 1],
    [3, 4, 5, 1, 2],
    [4, 5, 1, 2, 3],
    [5, 1, 2, 3, 4],
    [1, 2, 3, 4, 5],
];
pub const SIGNS_5: [[i8; 5]; 5] = [
    [-1, 1, -1, 1, 1],
    [1, -1, 1, 1, -1],
    [-1, 1, 1, -1, 1],
    [1, 1, -1, 1, -1],
    [1, -1, 1, -1, 1],
];
pub const INCIDENCE_5: [[u8; 5]; 5] = [
    [0, 1, 0, 1, 1],
    [1, 0, 1, 1, 0],
    [0, 1, 1, 0, 1],
    [1, 1, 0, 1, 0],
    [1, 0, 1, 0, 1],
];
pub const P_5: [[[usize; 2]; 2]; 2] = [[[0, 1], [1, 1]], [[1, 1], [1, 0]]];

pub const TABLE_9: [[u32; 9]; 9] = [
    [2, 3, 4, 5, 6, 7, 8, 9, 1],
    [3, 4, 5, 6, 7, 8, 9, 1, 2],
    [4, 5, 6, 7, 8, 9, 1, 2, 3],
    [5, 6, 7, 8, 9, 1, 2, 3, 4],
    [6, 7, 8, 9, 1, 2, 3, 4, 5],
    [7, 8, 9, 1, 2, 3, 4, 5, 6],
    [8, 9, 1, 2, 3, 4, 5, 6, 7],
    [9, 1, 2, 3, 4, 5, 6, 7, 8],
    [1, 2, 3, 4, 5, 6, 7, 8, 9],
];
pub const SIGNS_9: [[i8; 9]; 9] = [
    [-1, 1, -1, 1, -1, 1, -1, 1, 1],
    [1, -1, 1, -1, 1, -1, 1, 1, -1],
    [-1, 1, -1, 1, -1, 1, 1, -1, 1],
    [1, -1, 1, -1, 1, 1, -1, 1, -1],
    [-1, 1, -1, 1, 1, -1, 1, -1, 1],
    [1, -1, 1, 1, -1, 1, -1, 1, -1],
    [-1, 1, 1, -1, 1, -1, 1, -1, 1],
    [1, 1, -1, 1, -1, 1, -1, 1, -1],
    [1, -1, 1, -1, 1, -1, 1, -1, 1],
];
pub const INCIDENCE_9: [[u8; 9]; 9] = [
    [0, 1, 0, 1, 0, 1, 0, 1, 1],
    [1, 0, 1, 0, 1, 0, 1, 1, 0],
    [0, 1, 0, 1, 0, 1, 1, 0, 1],
    [1, 0, 1, 0, 1, 1, 0, 1, 0],
    [0, 1, 0, 1, 1, 0, 1, 0, 1],
    [1, 0, 1, 1, 0, 1, 0, 1, 0],
    [0, 1, 1, 0, 1, 0, 1, 0, 1],
    [1, 1, 0, 1, 0, 1, 0, 1, 0],
    [1, 0, 1, 0, 1, 0, 1, 0, 1],
];
pub const P_9: [[[usize; 4]; 4]; 4] = [
    [[0, 0, 0, 1], [0, 0, 1, 1], [0, 1, 1, 0], [1, 1, 0, 0]],
    [[0, 0, 1, 1], [0, 1, 0, 0], [1, 0, 0, 1], [1, 0, 1, 0]],
    [[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 1]],
    [[1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0]],
];

pub fn rows<T: Copy, const N: usize>(m: &[[T; N]; N]) -> Vec<Vec<T>> {
    m.iter().map(|r| r.to_vec()).collect()
}

/// Type III sign matrix straight from the parity of `(i + j) mod n`.
pub fn type3_signs(n: usize) -> Vec<Vec<i8>> {
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let v = (i + j) % n;
                    let v = if v == 0 { n } else { v };
                    if v % 2 == 1 {
                        1
                    } else {
                        -1
                    }
                })
                .collect()
        })
        .collect()
}

/// Determinant modulo a prime by plain Gaussian elimination over Z_p.
pub fn det_mod_p(rows: &[Vec<i8>], p: u64) -> u64 {
    let n = rows.len();
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| (x as i64).rem_euclid(p as i64) as u64).collect())
        .collect();
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = (r as u128 * b as u128 % p as u128) as u64;
            }
            b = (b as u128 * b as u128 % p as u128) as u64;
            e >>= 1;
        }
        r
    };
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(piv, c);
            det = (p - det) % p;
        }
        det = (det as u128 * a[c][c] as u128 % p as u128) as u64;
        let inv = pow(a[c][c], p - 2);
        for r in c + 1..n {
            let f = (a[r][c] as u128 * inv as u128 % p as u128) as u64;
            for k in c..n {
                let sub = (f as u128 * a[c][k] as u128 % p as u128) as u64;
                a[r][k] = (a[r][k] + p - sub) % p;
            }
        }
    }
    det
}

/// `p^i_{jk}` by direct counting over ordered pairs, with the classes given
/// by concurrence values in ascending order. Returns `None` if a class size
/// or any count varies within a class.
pub fn brute_force_p(incidence: &[Vec<u8>]) -> Option<(Vec<u64>, Vec<Vec<Vec<usize>>>)> {
    let v = incidence.len();
    let conc = |x: usize, y: usize| -> u64 {
        incidence[x]
            .iter()
            .zip(&incidence[y])
            .filter(|&(&a, &b)| a == 1 && b == 1)
            .count() as u64
    };
    let mut lambdas: Vec<u64> = (0..v)
        .flat_map(|x| (0..v).filter(move |&y| y != x).map(move |y| (x, y)))
        .map(|(x, y)| conc(x, y))
        .collect();
    lambdas.sort_unstable();
    lambdas.dedup();
    let m = lambdas.len();
    let class = |x: usize, y: usize| lambdas.iter().position(|&l| l == conc(x, y)).unwrap();
    let sizes = |x: usize| -> Vec<usize> {
        (0..m)
            .map(|c| (0..v).filter(|&y| y != x && class(x, y) == c).count())
            .collect()
    };
    if (1..v).any(|x| sizes(x) != sizes(0)) {
        return None;
    }
    let mut p: Vec<Vec<Vec<Option<usize>>>> = vec![vec![vec![None; m]; m]; m];
    for x in 0..v {
        for y in 0..v {
            if x == y {
                continue;
            }
            let i = class(x, y);
            for j in 0..m {
                for k in 0..m {
                    let count = (0..v)
                        .filter(|&z| z != x && z != y && class(x, z) == j && class(y, z) == k)
                        .count();
                    match p[i][j][k] {
                        None => p[i][j][k] = Some(count),
                        Some(c) if c != count => return None,
                        Some(_) => {}
                    }
                }
            }
        }
    }
    let dense = p
        .into_iter()
        .map(|pi| pi.into_iter().map(|r| r.into_iter().map(|c| c.unwrap_or(0)).collect()).collect())
        .collect();
    Some((lambdas, dense))
}
