//! Weyl group elements as integer matrices, reduced words and full-group
//! enumeration.

use crate::error::{Error, Result};
use crate::rootsys::{Root, RootSystem};
use serde::Serialize;
use std::collections::{HashMap, VecDeque};
use std::fmt;

/// Default cap on `|W|` for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 60_000;

pub use crate::linalg::kernel_dim;

/// An element of `W`, stored as the matrix of its action on the root lattice.
/// Column `j` holds `w(α_j)` in the simple-root basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    n: usize,
    m: Vec<i32>,
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[i32]> = self.m.chunks(self.n.max(1)).collect();
        write!(f, "WeylElement{rows:?}")
    }
}

impl WeylElement {
    pub fn identity(n: usize) -> WeylElement {
        let mut m = vec![0; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        WeylElement { n, m }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, r: usize, c: usize) -> i32 {
        self.m[r * self.n + c]
    }

    /// `w(α_j)` as a coordinate vector.
    pub fn column(&self, j: usize) -> Vec<i32> {
        (0..self.n).map(|r| self.entry(r, j)).collect()
    }

    /// True when `w(α_j)` is a negative root, i.e. `j` is a right descent.
    pub fn has_right_descent(&self, j: usize) -> bool {
        (0..self.n).map(|r| self.entry(r, j)).sum::<i32>() < 0
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.has_right_descent(j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.n)
    }

    pub fn multiply(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.n, other.n, "rank mismatch");
        let n = self.n;
        let mut m = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.m[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    m[i * n + j] += a * other.m[k * n + j];
                }
            }
        }
        WeylElement { n, m }
    }

    pub fn apply(&self, x: &[i32]) -> Vec<i32> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.m[r * self.n + c] * x[c]).sum())
            .collect()
    }

    pub fn act(&self, root: &Root) -> Root {
        Root::new(self.apply(&root.coords))
    }

    /// Matrix rows as `i64`, optionally shifted by `shift · I`.
    pub fn rows_shifted(&self, shift: i64) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|r| {
                (0..self.n)
                    .map(|c| self.entry(r, c) as i64 + if r == c { shift } else { 0 })
                    .collect()
            })
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.rows_shifted(0)
    }

    pub(crate) fn times_simple(&self, rs: &RootSystem, j: usize) -> WeylElement {
        // (w s_j)(α_k) = w(α_k) − c_jk w(α_j)
        let n = self.n;
        let c = rs.cartan();
        let mut m = self.m.clone();
        for k in 0..n {
            let cjk = c[j][k] as i32;
            if k == j {
                for r in 0..n {
                    m[r * n + k] = -self.m[r * n + j];
                }
            } else if cjk != 0 {
                for r in 0..n {
                    m[r * n + k] -= cjk * self.m[r * n + j];
                }
            }
        }
        WeylElement { n, m }
    }
}

/// A word in the simple reflections, with 1-based letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join(""))
    }
}

impl RootSystem {
    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.rank())
    }

    /// `s_i` for a 1-based index.
    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        if i == 0 || i > self.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(self.identity().times_simple(self, i - 1))
    }

    /// `s_β` as a matrix.
    pub fn reflection(&self, beta: &Root) -> Result<WeylElement> {
        if !self.is_root(&beta.coords) {
            return Err(Error::NotARoot(beta.coords.clone()));
        }
        let n = self.rank();
        let mut m = vec![0; n * n];
        for j in 0..n {
            let img = self.reflect_root(beta, &self.simple_root(j));
            for r in 0..n {
                m[r * n + j] = img.coords[r];
            }
        }
        Ok(WeylElement { n, m })
    }

    /// Value of a word.
    pub fn word_element(&self, word: &Word) -> Result<WeylElement> {
        let mut w = self.identity();
        for &i in word.letters() {
            if i == 0 || i > self.rank() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    rank: self.rank(),
                });
            }
            w = w.times_simple(self, i - 1);
        }
        Ok(w)
    }

    /// `w⁻¹ = G⁻¹ wᵀ G`, where `G` is the Gram matrix preserved by `w`.
    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let n = self.rank();
        let g = self.form();
        let (adj, det) = self.form_adjugate();
        // t = wᵀ G
        let mut t = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                t[i][j] = (0..n).map(|k| w.entry(k, i) as i64 * g[k][j]).sum();
            }
        }
        let mut m = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: i64 = (0..n).map(|k| adj[i][k] * t[k][j]).sum();
                m[i * n + j] = (s / det) as i32;
            }
        }
        WeylElement { n, m }
    }

    /// `l(w) = #{β > 0 : w(β) < 0}`.
    pub fn length(&self, w: &WeylElement) -> usize {
        self.positive_roots()
            .iter()
            .filter(|b| w.apply(&b.coords).iter().sum::<i32>() < 0)
            .count()
    }

    /// `Δ₊^w = Δ₊ ∩ w(−Δ₊)`, in root order.
    pub fn inversion_set(&self, w: &WeylElement) -> Vec<Root> {
        let winv = self.inverse(w);
        self.positive_roots()
            .iter()
            .filter(|b| winv.apply(&b.coords).iter().sum::<i32>() < 0)
            .cloned()
            .collect()
    }

    /// Left descents (0-based): `i` with `w⁻¹(α_i) < 0`.
    pub fn left_descents(&self, w: &WeylElement) -> Vec<usize> {
        self.inverse(w).right_descents()
    }

    /// Reduced word built by repeatedly stripping the smallest left descent.
    pub fn reduced_word(&self, w: &WeylElement) -> Word {
        let mut winv = self.inverse(w);
        let mut letters = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| winv.has_right_descent(i)) {
            letters.push(i + 1);
            winv = winv.times_simple(self, i);
        }
        Word(letters)
    }

    pub fn is_reduced(&self, word: &Word) -> bool {
        let mut p = self.identity();
        for &i in word.letters() {
            if i == 0 || i > self.rank() || p.has_right_descent(i - 1) {
                return false;
            }
            p = p.times_simple(self, i - 1);
        }
        true
    }

    /// `β_k = w_{≤k−1}(α_{i_k})` for a reduced word.
    pub fn roots_of_word(&self, word: &Word) -> Result<Vec<Root>> {
        if !self.is_reduced(word) {
            return Err(Error::NotReduced(word.0.clone()));
        }
        let mut p = self.identity();
        let mut out = Vec::with_capacity(word.len());
        for &i in word.letters() {
            out.push(Root::new(p.column(i - 1)));
            p = p.times_simple(self, i - 1);
        }
        Ok(out)
    }

    /// `l_Δ(w) = n − dim Ker(w − 1)`.
    pub fn reflection_length(&self, w: &WeylElement) -> usize {
        self.rank() - kernel_dim(&w.rows_shifted(-1))
    }

    /// `w₀`, found by right-multiplying by simple reflections while that
    /// increases length.
    pub fn longest_element(&self) -> WeylElement {
        let mut w = self.identity();
        while let Some(j) = (0..self.rank()).find(|&j| !w.has_right_descent(j)) {
            w = w.times_simple(self, j);
        }
        w
    }

    pub fn is_involution(&self, w: &WeylElement) -> bool {
        w.multiply(w).is_identity()
    }

    /// Parse an element: `e`, a word such as `s1s2s1`, `1,2,1` or `1 2 1`,
    /// or in type A a one-line permutation such as `2143`.
    pub fn parse_element(&self, s: &str) -> Result<WeylElement> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(self.identity());
        }
        let digits_only = s.chars().all(|c| c.is_ascii_digit());
        if digits_only && s.len() == self.rank() + 1 {
            if let Ok(w) = oneline::parse(self, s) {
                return Ok(w);
            }
        }
        let letters: Vec<usize> = if digits_only && self.rank() < 10 {
            s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
        } else {
            s.split(|c: char| c == 's' || c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad element {s:?}"))))
                .collect::<Result<_>>()?
        };
        self.word_element(&Word(letters))
    }
}

/// An enumerated Weyl group with multiplication tables by simple generators.
///
/// Elements are indexed by `u32` ids ordered by length, then by matrix.
pub struct WeylGroup {
    rs: RootSystem,
    elements: Vec<WeylElement>,
    index: HashMap<WeylElement, u32>,
    lengths: Vec<u32>,
    right: Vec<u32>,
    left: Vec<u32>,
    inverse: Vec<u32>,
    descents: Vec<u32>,
    lower: Option<Vec<Vec<u64>>>,
}

/// Build the full group by breadth-first search, refusing groups larger than `cap`.
pub fn enumerate_group(rs: &RootSystem, cap: usize) -> Result<WeylGroup> {
    WeylGroup::new(rs, cap)
}

/// Groups up to this size also get a precomputed Bruhat table.
const BRUHAT_TABLE_LIMIT: usize = 5000;

impl WeylGroup {
    pub fn new(rs: &RootSystem, cap: usize) -> Result<WeylGroup> {
        let order = rs.cartan_type().weyl_order();
        if order > cap as u128 {
            return Err(Error::CapExceeded { order, cap });
        }
        let n = rs.rank();
        let mut seen: HashMap<WeylElement, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut found = Vec::new();
        let e = rs.identity();
        seen.insert(e.clone(), ());
        queue.push_back((e, 0u32));
        while let Some((w, l)) = queue.pop_front() {
            for j in 0..n {
                if w.has_right_descent(j) {
                    continue;
                }
                let ws = w.times_simple(rs, j);
                if seen.insert(ws.clone(), ()).is_none() {
                    queue.push_back((ws, l + 1));
                }
            }
            found.push((l, w));
        }
        found.sort();
        let lengths: Vec<u32> = found.iter().map(|(l, _)| *l).collect();
        let elements: Vec<WeylElement> = found.into_iter().map(|(_, w)| w).collect();
        let index: HashMap<WeylElement, u32> = elements
            .iter()
            .enumerate()
            .map(|(k, w)| (w.clone(), k as u32))
            .collect();
        let mut right = vec![0u32; elements.len() * n];
        let mut left = vec![0u32; elements.len() * n];
        let mut descents = vec![0u32; elements.len()];
        let simples: Vec<WeylElement> = (0..n).map(|i| rs.identity().times_simple(rs, i)).collect();
        for (k, w) in elements.iter().enumerate() {
            for j in 0..n {
                right[k * n + j] = index[&w.times_simple(rs, j)];
                left[k * n + j] = index[&simples[j].multiply(w)];
                if w.has_right_descent(j) {
                    descents[k] |= 1 << j;
                }
            }
        }
        let inverse = elements.iter().map(|w| index[&rs.inverse(w)]).collect();
        let mut g = WeylGroup {
            rs: rs.clone(),
            elements,
            index,
            lengths,
            right,
            left,
            inverse,
            descents,
            lower: None,
        };
        if g.len() <= BRUHAT_TABLE_LIMIT {
            g.lower = Some(g.build_lower_sets());
        }
        Ok(g)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeylElement> {
        self.elements.iter()
    }

    pub fn element(&self, id: u32) -> &WeylElement {
        &self.elements[id as usize]
    }

    pub fn id(&self, w: &WeylElement) -> Option<u32> {
        self.index.get(w).copied()
    }

    pub fn length(&self, id: u32) -> usize {
        self.lengths[id as usize] as usize
    }

    /// `w s_j` for a 0-based generator.
    pub fn right_mul(&self, id: u32, j: usize) -> u32 {
        self.right[id as usize * self.rs.rank() + j]
    }

    /// `s_j w` for a 0-based generator.
    pub fn left_mul(&self, id: u32, j: usize) -> u32 {
        self.left[id as usize * self.rs.rank() + j]
    }

    pub fn inverse(&self, id: u32) -> u32 {
        self.inverse[id as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.index[&self.element(a).multiply(self.element(b))]
    }

    pub fn right_descent_mask(&self, id: u32) -> u32 {
        self.descents[id as usize]
    }

    pub fn identity_id(&self) -> u32 {
        0
    }

    pub fn longest_id(&self) -> u32 {
        (self.len() - 1) as u32
    }

    /// Bruhat comparison `v ≤ w`.
    pub fn leq(&self, v: u32, w: u32) -> bool {
        if let Some(lower) = &self.lower {
            return lower[w as usize][v as usize / 64] >> (v % 64) & 1 == 1;
        }
        self.leq_recursive(v, w)
    }

    /// Right-descent form of the descent recursion: if `ws < w` then
    /// `v ≤ w ⇔ min(v, vs) ≤ ws`.
    pub fn leq_recursive(&self, mut v: u32, mut w: u32) -> bool {
        loop {
            let (lv, lw) = (self.length(v), self.length(w));
            if lv > lw {
                return false;
            }
            if lv == lw {
                return v == w;
            }
            let dw = self.descents[w as usize];
            let j = dw.trailing_zeros() as usize;
            if self.descents[v as usize] >> j & 1 == 1 {
                v = self.right_mul(v, j);
            }
            w = self.right_mul(w, j);
        }
    }

    // lower(w) = lower(ws) ∪ lower(ws)·s for any right descent s of w
    fn build_lower_sets(&self) -> Vec<Vec<u64>> {
        let words = self.len().div_ceil(64);
        let mut lower: Vec<Vec<u64>> = Vec::with_capacity(self.len());
        for w in 0..self.len() as u32 {
            let mut row = vec![0u64; words];
            if w == 0 {
                row[0] = 1;
            } else {
                let j = self.descents[w as usize].trailing_zeros() as usize;
                let ws = self.right_mul(w, j) as usize;
                row.clone_from(&lower[ws]);
                for x in 0..self.len() as u32 {
                    if lower[ws][x as usize / 64] >> (x % 64) & 1 == 1 {
                        let xs = self.right_mul(x, j);
                        row[xs as usize / 64] |= 1 << (xs % 64);
                    }
                }
            }
            lower.push(row);
        }
        lower
    }
}

/// One-line notation for type `A_n`: `w(α_i) = ε_{w(i)} − ε_{w(i+1)}`.
pub mod oneline {
    use super::WeylElement;
    use crate::dynkin::Letter;
    use crate::error::{Error, Result};
    use crate::rootsys::RootSystem;

    fn check_type_a(rs: &RootSystem) -> Result<usize> {
        let t = rs.cartan_type();
        if t.is_simple() && t.components()[0].letter == Letter::A {
            Ok(rs.rank())
        } else {
            Err(Error::InvalidType(format!(
                "one-line notation needs a type A system, got {t}"
            )))
        }
    }

    /// Permutation values (1-based) of a type-A element.
    pub fn to_permutation(rs: &RootSystem, w: &WeylElement) -> Result<Vec<usize>> {
        let n = check_type_a(rs)?;
        let mut perm = vec![0usize; n + 1];
        for i in 0..n {
            let (p, q) = endpoints(&w.column(i));
            perm[i] = p;
            perm[i + 1] = q;
        }
        Ok(perm)
    }

    // Vector ε_p − ε_q in simple coordinates, returned as (p, q), 1-based.
    fn endpoints(v: &[i32]) -> (usize, usize) {
        let first = v.iter().position(|&x| x != 0).unwrap_or(0);
        let last = v.iter().rposition(|&x| x != 0).unwrap_or(0);
        let (a, b) = (first + 1, last + 2);
        if v[first] > 0 {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Element with the given one-line values.
    pub fn from_permutation(rs: &RootSystem, perm: &[usize]) -> Result<WeylElement> {
        let n = check_type_a(rs)?;
        let mut seen = vec![false; n + 2];
        if perm.len() != n + 1
            || perm.iter().any(|&p| p == 0 || p > n + 1 || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Parse(format!("{perm:?} is not a permutation of 1..={}", n + 1)));
        }
        let mut m = vec![0; n * n];
        for i in 0..n {
            let (p, q) = (perm[i], perm[i + 1]);
            let (lo, hi, sign) = if p < q { (p, q, 1) } else { (q, p, -1) };
            for r in lo - 1..hi - 1 {
                m[r * n + i] = sign;
            }
        }
        Ok(WeylElement { n, m })
    }

    /// Parse a string such as `2143`.
    pub fn parse(rs: &RootSystem, s: &str) -> Result<WeylElement> {
        let perm: Vec<usize> = s
            .trim()
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Parse(format!("bad one-line string {s:?}")))?;
        from_permutation(rs, &perm)
    }

    pub fn format(rs: &RootSystem, w: &WeylElement) -> Result<String> {
        let perm = to_permutation(rs, w)?;
        Ok(perm.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(
            if perm.len() > 9 { "," } else { "" },
        ))
    }
}
