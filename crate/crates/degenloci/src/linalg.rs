//! Exact integer linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_traits::Zero;

/// Rank of an integer matrix, computed by fraction-free (Bareiss) elimination.
///
/// Runs in `i128` and falls back to big integers if an intermediate value
/// would overflow.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    match rank_i128(m) {
        Some(r) => r,
        None => rank_big(rows),
    }
}

/// Dimension of the kernel of a square (or rectangular) integer matrix.
pub fn kernel_dim(rows: &[Vec<i64>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    cols - rank(rows)
}

fn rank_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    let mut prev: i128 = 1;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let a = m[r][c].checked_mul(m[i][j])?;
                let b = m[i][c].checked_mul(m[r][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
    }
    Some(r)
}

fn rank_big(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    let mut prev = BigInt::from(1);
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant of a square integer matrix (Bareiss).
pub fn determinant(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if p != k {
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

/// Adjugate of a square integer matrix, so that `m * adj = det * I`.
pub fn adjugate(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = rows.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = rows
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = (sign * determinant(&minor)) as i64;
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]), 3);
        assert_eq!(kernel_dim(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]), 1);
    }

    #[test]
    fn rank_falls_back_on_overflow() {
        let big = 1i64 << 62;
        let m = vec![vec![big, big - 1, 3], vec![big - 1, big, 5], vec![1, 1, 1]];
        assert_eq!(rank(&m), rank_big(&m));
    }

    #[test]
    fn determinant_and_adjugate() {
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(determinant(&m), 4);
        let adj = adjugate(&m);
        for i in 0..3 {
            for j in 0..3 {
                let s: i64 = (0..3).map(|k| m[i][k] * adj[k][j]).sum();
                assert_eq!(s, if i == j { 4 } else { 0 });
            }
        }
    }
}
