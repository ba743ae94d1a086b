//! Distinguished subwords and R-polynomials.

use crate::bruhat::{bruhat_leq, SubwordPositions};
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::weyl::{WeylElement, Word};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;

/// A distinguished subword with its σ-trace and statistics.
#[derive(Clone, Debug)]
pub struct DistinguishedSubword {
    pub host: Word,
    pub removed: SubwordPositions,
    /// `σ_0 = e, σ_1, …, σ_l`; `σ_l` is the value.
    pub sigma_trace: Vec<WeylElement>,
    /// steps with `σ_{j−1} = σ_j`
    pub n: usize,
    /// steps with `σ_{j−1} > σ_j`
    pub m: usize,
}

/// Distinguished subwords of a reduced word with value `v`, in
/// lexicographic order of removed positions.
///
/// `σ_j` is the product of the kept letters among the first `j`; removing
/// letter `j` is allowed only when `σ_{j−1} s_{i_j} > σ_{j−1}`.
pub fn distinguished_subwords(
    rs: &RootSystem,
    word: &Word,
    v: &WeylElement,
) -> Result<Vec<DistinguishedSubword>> {
    if !rs.is_reduced(word) {
        return Err(Error::NotReduced(word.0.clone()));
    }
    let search = Search {
        rs,
        word,
        v,
        lv: rs.length(v),
    };
    let mut out = Vec::new();
    let mut trace = vec![rs.identity()];
    let mut removed = Vec::new();
    search.dfs(0, 0, 0, 0, &mut trace, &mut removed, &mut out);
    out.sort_by(|a, b| a.removed.cmp(&b.removed));
    Ok(out)
}

struct Search<'a> {
    rs: &'a RootSystem,
    word: &'a Word,
    v: &'a WeylElement,
    lv: usize,
}

impl Search<'_> {
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        pos: usize,
        len: usize,
        n: usize,
        m: usize,
        trace: &mut Vec<WeylElement>,
        removed: &mut Vec<usize>,
        out: &mut Vec<DistinguishedSubword>,
    ) {
        let letters = self.word.letters();
        if pos == letters.len() {
            if trace.last() == Some(self.v) {
                out.push(DistinguishedSubword {
                    host: self.word.clone(),
                    removed: SubwordPositions {
                        removed: removed.clone(),
                    },
                    sigma_trace: trace.clone(),
                    n,
                    m,
                });
            }
            return;
        }
        if len.abs_diff(self.lv) > letters.len() - pos {
            return;
        }
        let sigma = trace.last().expect("nonempty").clone();
        let j = letters[pos] - 1;
        let next = sigma.times_simple(self.rs, j);
        if sigma.has_right_descent(j) {
            trace.push(next);
            self.dfs(pos + 1, len - 1, n, m + 1, trace, removed, out);
            trace.pop();
        } else {
            removed.push(pos + 1);
            trace.push(sigma);
            self.dfs(pos + 1, len, n + 1, m, trace, removed, out);
            trace.pop();
            removed.pop();
            trace.push(next);
            self.dfs(pos + 1, len + 1, n, m, trace, removed, out);
            trace.pop();
        }
    }
}

/// The unique distinguished subword with `m = 0`.
pub fn positive_subword(
    rs: &RootSystem,
    word: &Word,
    v: &WeylElement,
) -> Result<DistinguishedSubword> {
    let mut pos: Vec<_> = distinguished_subwords(rs, word, v)?
        .into_iter()
        .filter(|d| d.m == 0)
        .collect();
    if pos.len() != 1 {
        return Err(Error::Verification(format!(
            "expected one positive subword, found {}",
            pos.len()
        )));
    }
    Ok(pos.remove(0))
}

/// A polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct QPoly {
    coeffs: Vec<i64>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<i64>) -> QPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> QPoly {
        QPoly::default()
    }

    pub fn one() -> QPoly {
        QPoly::new(vec![1])
    }

    pub fn q() -> QPoly {
        QPoly::new(vec![0, 1])
    }

    pub fn q_minus_one_pow(k: usize) -> QPoly {
        (0..k).fold(QPoly::one(), |acc, _| acc.mul(&QPoly::new(vec![-1, 1])))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&0) + o.coeffs.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }

    /// `k` when the polynomial equals `(q − 1)^k`.
    pub fn as_q_minus_one_power(&self) -> Option<usize> {
        let k = self.coeffs.len().checked_sub(1)?;
        (*self == QPoly::q_minus_one_pow(k)).then_some(k)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.as_q_minus_one_power() {
            return match k {
                0 => write!(f, "1"),
                1 => write!(f, "q - 1"),
                _ => write!(f, "(q - 1)^{k}"),
            };
        }
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            let sign = if c < 0 { "-" } else { "+" };
            if s.is_empty() {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            let mono = match i {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{i}"),
            };
            if mag != 1 || i == 0 {
                s.push_str(&mag.to_string());
            }
            s.push_str(&mono);
        }
        write!(f, "{s}")
    }
}

/// `Σ (q − 1)^{n} q^{m}` over the distinguished subwords of `reduced_word(w)`.
pub fn r_polynomial_deodhar(rs: &RootSystem, v: &WeylElement, w: &WeylElement) -> Result<QPoly> {
    r_polynomial_deodhar_with_word(rs, v, &rs.reduced_word(w))
}

pub fn r_polynomial_deodhar_with_word(rs: &RootSystem, v: &WeylElement, word: &Word) -> Result<QPoly> {
    let mut total = QPoly::zero();
    for d in distinguished_subwords(rs, word, v)? {
        let mut term = QPoly::q_minus_one_pow(d.n);
        for _ in 0..d.m {
            term = term.mul(&QPoly::q());
        }
        total = total.add(&term);
    }
    Ok(total)
}

/// Memoized R-polynomials by the left-descent recurrence.
pub struct RPolyOracle<'a> {
    rs: &'a RootSystem,
    simples: Vec<WeylElement>,
    memo: HashMap<(WeylElement, WeylElement), QPoly>,
}

impl<'a> RPolyOracle<'a> {
    pub fn new(rs: &'a RootSystem) -> RPolyOracle<'a> {
        let simples = (1..=rs.rank())
            .map(|i| rs.simple_reflection(i).expect("valid index"))
            .collect();
        RPolyOracle {
            rs,
            simples,
            memo: HashMap::new(),
        }
    }

    /// `R_{v,w}`: with `s` a left descent of `w`, `R_{v,w} = R_{sv,sw}` if
    /// `sv < v`, else `(q − 1) R_{v,sw} + q R_{sv,sw}`.
    pub fn r(&mut self, v: &WeylElement, w: &WeylElement) -> QPoly {
        if v == w {
            return QPoly::one();
        }
        if !bruhat_leq(self.rs, v, w) {
            return QPoly::zero();
        }
        let key = (v.clone(), w.clone());
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let s = self.rs.left_descents(w)[0];
        let sw = self.simples[s].multiply(w);
        let sv = self.simples[s].multiply(v);
        let out = if self.rs.inverse(v).has_right_descent(s) {
            self.r(&sv, &sw)
        } else {
            let a = self.r(v, &sw);
            let b = self.r(&sv, &sw);
            QPoly::new(vec![-1, 1]).mul(&a).add(&QPoly::q().mul(&b))
        };
        self.memo.insert(key, out.clone());
        out
    }
}

pub fn r_polynomial_recurrence(rs: &RootSystem, v: &WeylElement, w: &WeylElement) -> QPoly {
    RPolyOracle::new(rs).r(v, w)
}
