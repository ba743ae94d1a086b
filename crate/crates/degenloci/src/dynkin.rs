//! Standard Cartan data per type letter and classification of indecomposable
//! Cartan matrices.

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

/// Type letter of a simple root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
            Letter::D => 'D',
            Letter::E => 'E',
            Letter::F => 'F',
            Letter::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl Letter {
    pub fn from_char(c: char) -> Option<Letter> {
        Some(match c.to_ascii_uppercase() {
            'A' => Letter::A,
            'B' => Letter::B,
            'C' => Letter::C,
            'D' => Letter::D,
            'E' => Letter::E,
            'F' => Letter::F,
            'G' => Letter::G,
            _ => return None,
        })
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            Letter::A => rank >= 1,
            Letter::B | Letter::C => rank >= 2,
            Letter::D => rank >= 4,
            Letter::E => (6..=8).contains(&rank),
            Letter::F => rank == 4,
            Letter::G => rank == 2,
        }
    }
}

/// Gram matrix `(α_i, α_j)` of a simple type in Bourbaki labeling, scaled so
/// the symmetrizers `(α_i, α_i)/2` are coprime.
pub fn standard_form(letter: Letter, rank: usize) -> Result<Vec<Vec<i64>>> {
    if !letter.valid_rank(rank) {
        return Err(Error::InvalidType(format!("{letter}{rank}")));
    }
    let n = rank;
    let mut b = vec![vec![0i64; n]; n];
    let link = |b: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        b[i][j] = v;
        b[j][i] = v;
    };
    match letter {
        Letter::A => {
            for i in 0..n {
                b[i][i] = 2;
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut b, i, i + 1, -1);
            }
        }
        Letter::B => {
            for i in 0..n {
                b[i][i] = if i + 1 < n { 4 } else { 2 };
            }
            for i in 0..n - 1 {
                link(&mut b, i, i + 1, -2);
            }
        }
        Letter::C => {
            for i in 0..n {
                b[i][i] = if i + 1 < n { 2 } else { 4 };
            }
            for i in 0..n - 2 {
                link(&mut b, i, i + 1, -1);
            }
            link(&mut b, n - 2, n - 1, -2);
        }
        Letter::D => {
            for i in 0..n {
                b[i][i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut b, i, i + 1, -1);
            }
            link(&mut b, n - 3, n - 1, -1);
        }
        Letter::E => {
            for i in 0..n {
                b[i][i] = 2;
            }
            link(&mut b, 0, 2, -1);
            link(&mut b, 1, 3, -1);
            for i in 2..n - 1 {
                link(&mut b, i, i + 1, -1);
            }
        }
        Letter::F => {
            b[0][0] = 4;
            b[1][1] = 4;
            b[2][2] = 2;
            b[3][3] = 2;
            link(&mut b, 0, 1, -2);
            link(&mut b, 1, 2, -2);
            link(&mut b, 2, 3, -1);
        }
        Letter::G => {
            b[0][0] = 2;
            b[1][1] = 6;
            link(&mut b, 0, 1, -3);
        }
    }
    Ok(b)
}

/// Cartan matrix `c_ij = 2(α_i,α_j)/(α_i,α_i)` of a Gram matrix.
pub fn cartan_from_form(form: &[Vec<i64>]) -> Vec<Vec<i64>> {
    form.iter()
        .enumerate()
        .map(|(i, row)| row.iter().map(|&x| 2 * x / form[i][i]).collect())
        .collect()
}

pub fn standard_cartan(letter: Letter, rank: usize) -> Result<Vec<Vec<i64>>> {
    Ok(cartan_from_form(&standard_form(letter, rank)?))
}

/// Dual Coxeter number.
pub fn dual_coxeter(letter: Letter, rank: usize) -> u32 {
    let n = rank as u32;
    match letter {
        Letter::A => n + 1,
        Letter::B => 2 * n - 1,
        Letter::C => n + 1,
        Letter::D => 2 * n - 2,
        Letter::E => match n {
            6 => 12,
            7 => 18,
            _ => 30,
        },
        Letter::F => 9,
        Letter::G => 4,
    }
}

/// Order of the Weyl group of a simple type.
pub fn weyl_order(letter: Letter, rank: usize) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    match letter {
        Letter::A => fact(rank + 1),
        Letter::B | Letter::C => (1u128 << rank) * fact(rank),
        Letter::D => (1u128 << (rank - 1)) * fact(rank),
        Letter::E => match rank {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Letter::F => 1152,
        Letter::G => 12,
    }
}

/// Result of matching an indecomposable Cartan matrix against the standard list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub letter: Letter,
    pub rank: usize,
    /// `to_standard[k]` is the Bourbaki index (0-based) of local simple root `k`.
    pub to_standard: Vec<usize>,
}

/// Identify an indecomposable Cartan matrix up to relabeling.
///
/// Rank-2 type `C` is reported as `B2`, and `D3` as `A3`.
pub fn classify(cartan: &[Vec<i64>]) -> Result<Classification> {
    let k = cartan.len();
    let mut candidates = vec![(Letter::A, k)];
    if k >= 2 {
        candidates.push((Letter::B, k));
    }
    if k >= 3 {
        candidates.push((Letter::C, k));
    }
    if k >= 4 {
        candidates.push((Letter::D, k));
    }
    if (6..=8).contains(&k) {
        candidates.push((Letter::E, k));
    }
    if k == 4 {
        candidates.push((Letter::F, 4));
    }
    if k == 2 {
        candidates.push((Letter::G, 2));
    }
    for (letter, rank) in candidates {
        let std = standard_cartan(letter, rank)?;
        let mut map = vec![usize::MAX; k];
        let mut used = vec![false; k];
        if match_from(0, cartan, &std, &mut map, &mut used) {
            return Ok(Classification {
                letter,
                rank,
                to_standard: map,
            });
        }
    }
    Err(Error::InvalidType(format!(
        "unrecognized Cartan matrix {cartan:?}"
    )))
}

fn match_from(
    a: usize,
    c: &[Vec<i64>],
    s: &[Vec<i64>],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if a == c.len() {
        return true;
    }
    for t in 0..c.len() {
        if used[t] {
            continue;
        }
        let ok = (0..a).all(|b| c[a][b] == s[t][map[b]] && c[b][a] == s[map[b]][t]);
        if !ok {
            continue;
        }
        map[a] = t;
        used[t] = true;
        if match_from(a + 1, c, s, map, used) {
            return true;
        }
        used[t] = false;
    }
    map[a] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_types_classify_as_themselves() {
        for (l, r) in [
            (Letter::A, 1),
            (Letter::A, 5),
            (Letter::B, 2),
            (Letter::B, 4),
            (Letter::C, 3),
            (Letter::D, 5),
            (Letter::E, 6),
            (Letter::E, 7),
            (Letter::E, 8),
            (Letter::F, 4),
            (Letter::G, 2),
        ] {
            let c = standard_cartan(l, r).unwrap();
            let got = classify(&c).unwrap();
            assert_eq!((got.letter, got.rank), (l, r));
        }
    }

    #[test]
    fn relabeled_b3_is_found() {
        // B3 with the short root first.
        let c = vec![vec![2, -2, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        let got = classify(&c).unwrap();
        assert_eq!((got.letter, got.rank), (Letter::B, 3));
        assert_eq!(got.to_standard, vec![2, 1, 0]);
    }

    #[test]
    fn c2_reads_as_b2() {
        let c = vec![vec![2, -2], vec![-1, 2]];
        let got = classify(&c).unwrap();
        assert_eq!(got.letter, Letter::B);
        assert_eq!(got.to_standard, vec![1, 0]);
    }

    #[test]
    fn g2_cartan_entries() {
        assert_eq!(standard_cartan(Letter::G, 2).unwrap(), vec![vec![2, -3], vec![-1, 2]]);
    }
}
