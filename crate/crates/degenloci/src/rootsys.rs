//! Finite root systems in the simple-root basis.

use crate::dynkin::{self, Letter};
use crate::error::{Error, Result};
use crate::linalg;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// One simple factor of a Cartan type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Component {
    pub letter: Letter,
    pub rank: usize,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

/// A (semisimple) Cartan type such as `A3` or `B2xG2`.
///
/// Components are kept sorted; simple roots of later components follow those
/// of earlier ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    components: Vec<Component>,
}

impl CartanType {
    pub fn new(mut components: Vec<Component>) -> Result<CartanType> {
        if components.is_empty() {
            return Err(Error::InvalidType("empty type".into()));
        }
        for c in &components {
            if !c.letter.valid_rank(c.rank) {
                return Err(Error::InvalidType(c.to_string()));
            }
        }
        components.sort();
        Ok(CartanType { components })
    }

    pub fn simple(letter: Letter, rank: usize) -> Result<CartanType> {
        CartanType::new(vec![Component { letter, rank }])
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.components.len() == 1
    }

    /// Classical order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        self.components
            .iter()
            .map(|c| dynkin::weyl_order(c.letter, c.rank))
            .product()
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<CartanType> {
        let mut comps = Vec::new();
        for part in s.trim().split(['x', 'X']) {
            let mut chars = part.trim().chars();
            let letter = chars
                .next()
                .and_then(Letter::from_char)
                .ok_or_else(|| Error::InvalidType(s.to_string()))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::InvalidType(s.to_string()))?;
            comps.push(Component { letter, rank });
        }
        CartanType::new(comps)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// A root written in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Root {
    pub coords: Vec<i32>,
}

impl Root {
    pub fn new(coords: Vec<i32>) -> Root {
        Root { coords }
    }

    pub fn simple(n: usize, i: usize) -> Root {
        let mut coords = vec![0; n];
        coords[i] = 1;
        Root { coords }
    }

    pub fn height(&self) -> i32 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }

    pub fn neg(&self) -> Root {
        Root::new(self.coords.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    /// Indices of simple roots with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&i| self.coords[i] != 0).collect()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coords.iter().enumerate() {
            match c {
                0 => {}
                1 => terms.push(format!("a{}", i + 1)),
                -1 => terms.push(format!("-a{}", i + 1)),
                _ => terms.push(format!("{c}a{}", i + 1)),
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join("+").replace("+-", "-"))
    }
}

/// A finite root system with its enumerated positive roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    ctype: CartanType,
    n: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizers: Vec<i64>,
    form: Vec<Vec<i64>>,
    form_adj: Vec<Vec<i64>>,
    form_det: i64,
    positive: Vec<Root>,
    index: HashMap<Vec<i32>, usize>,
    /// component id of each simple root
    comp_of: Vec<usize>,
    /// first simple index of each component
    offsets: Vec<usize>,
}

impl RootSystem {
    pub fn new(ctype: CartanType) -> Result<RootSystem> {
        let n = ctype.rank();
        let mut form = vec![vec![0i64; n]; n];
        let mut comp_of = Vec::with_capacity(n);
        let mut offsets = Vec::new();
        let mut off = 0;
        for (ci, c) in ctype.components().iter().enumerate() {
            let b = dynkin::standard_form(c.letter, c.rank)?;
            for i in 0..c.rank {
                for j in 0..c.rank {
                    form[off + i][off + j] = b[i][j];
                }
                comp_of.push(ci);
            }
            offsets.push(off);
            off += c.rank;
        }
        let cartan = dynkin::cartan_from_form(&form);
        let symmetrizers = (0..n).map(|i| form[i][i] / 2).collect();
        let form_adj = linalg::adjugate(&form);
        let form_det = linalg::determinant(&form) as i64;
        let positive = enumerate_positive(&cartan);
        let index = positive
            .iter()
            .enumerate()
            .map(|(k, r)| (r.coords.clone(), k))
            .collect();
        Ok(RootSystem {
            ctype,
            n,
            cartan,
            symmetrizers,
            form,
            form_adj,
            form_det,
            positive,
            index,
            comp_of,
            offsets,
        })
    }

    /// Parse and build in one step, e.g. `RootSystem::parse("B3")`.
    pub fn parse(s: &str) -> Result<RootSystem> {
        RootSystem::new(s.parse()?)
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.ctype
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.symmetrizers
    }

    /// Gram matrix `(α_i, α_j) = d_i c_ij`.
    pub fn form(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub(crate) fn form_adjugate(&self) -> (&[Vec<i64>], i64) {
        (&self.form_adj, self.form_det)
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Position of a positive root in `positive_roots`.
    pub fn root_id(&self, coords: &[i32]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn simple_root(&self, i: usize) -> Root {
        Root::simple(self.n, i)
    }

    /// Component index of each simple root.
    pub fn component_of(&self, i: usize) -> usize {
        self.comp_of[i]
    }

    /// Simple indices (0-based) belonging to component `c`.
    pub fn component_indices(&self, c: usize) -> std::ops::Range<usize> {
        let start = self.offsets[c];
        start..start + self.ctype.components()[c].rank
    }

    /// Exact value of `(x, y)` for rational vectors.
    pub fn pairing(&self, x: &[BigRational], y: &[BigRational]) -> Result<BigRational> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        let mut acc = BigRational::zero();
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if self.form[i][j] != 0 {
                    acc += &x[i] * &y[j] * BigRational::from_integer(BigInt::from(self.form[i][j]));
                }
            }
        }
        Ok(acc)
    }

    /// `(x, y)` for integer vectors.
    pub fn pairing_int(&self, x: &[i32], y: &[i32]) -> i64 {
        let mut acc = 0i64;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                acc += x[i] as i64 * self.form[i][j] * y[j] as i64;
            }
        }
        acc
    }

    pub fn norm2(&self, x: &[i32]) -> i64 {
        self.pairing_int(x, x)
    }

    /// `⟨x, β^∨⟩ = 2(x,β)/(β,β)`, an integer when `x` is in the root lattice.
    pub fn coroot_pairing(&self, x: &[i32], beta: &Root) -> i64 {
        2 * self.pairing_int(x, &beta.coords) / self.norm2(&beta.coords)
    }

    /// `s_β(x) = x − 2(x,β)/(β,β) β` on rational vectors.
    pub fn reflect(&self, beta: &Root, x: &[BigRational]) -> Result<Vec<BigRational>> {
        if !self.is_root(&beta.coords) {
            return Err(Error::NotARoot(beta.coords.clone()));
        }
        let b: Vec<BigRational> = beta
            .coords
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let two = BigRational::from_integer(BigInt::from(2));
        let k = two * self.pairing(x, &b)? / self.pairing(&b, &b)?;
        Ok(x.iter().zip(&b).map(|(xi, bi)| xi - &k * bi).collect())
    }

    /// Reflection of a lattice vector.
    pub fn reflect_root(&self, beta: &Root, x: &Root) -> Root {
        let k = self.coroot_pairing(&x.coords, beta) as i32;
        Root::new(
            x.coords
                .iter()
                .zip(&beta.coords)
                .map(|(a, b)| a - k * b)
                .collect(),
        )
    }

    pub fn is_root(&self, v: &[i32]) -> bool {
        if v.len() != self.n {
            return false;
        }
        if self.index.contains_key(v) {
            return true;
        }
        let neg: Vec<i32> = v.iter().map(|x| -x).collect();
        self.index.contains_key(&neg)
    }

    pub fn add_roots(&self, beta: &Root, gamma: &Root) -> Option<Root> {
        let s = beta.add(gamma);
        self.is_root(&s.coords).then_some(s)
    }

    /// Highest root of each simple component, in component order.
    pub fn highest_roots(&self) -> Vec<Root> {
        (0..self.ctype.components().len())
            .map(|c| {
                let range = self.component_indices(c);
                self.positive
                    .iter()
                    .filter(|r| r.support().iter().all(|i| range.contains(i)))
                    .max_by_key(|r| r.height())
                    .expect("component has roots")
                    .clone()
            })
            .collect()
    }

    pub fn orthogonal(&self, beta: &Root, gamma: &Root) -> bool {
        self.pairing_int(&beta.coords, &gamma.coords) == 0
    }

    /// `β ⊥ γ` and neither `β + γ` nor `β − γ` is a root.
    pub fn strongly_orthogonal(&self, beta: &Root, gamma: &Root) -> bool {
        self.orthogonal(beta, gamma)
            && !self.is_root(&beta.add(gamma).coords)
            && !self.is_root(&beta.sub(gamma).coords)
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got,
            });
        }
        Ok(())
    }
}

/// Closure of the simple roots under root strings, sorted by height and then
/// by coordinates in decreasing lexicographic order (so `α_1` comes first).
fn enumerate_positive(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let mut roots: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    let mut seen: std::collections::HashSet<Vec<i32>> =
        roots.iter().map(|r| r.coords.clone()).collect();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        k += 1;
        for i in 0..n {
            // p: how far the α_i-string extends downward from β
            let mut p = 0;
            let mut down = beta.coords.clone();
            loop {
                down[i] -= 1;
                if seen.contains(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            let pair: i64 = (0..n).map(|j| beta.coords[j] as i64 * cartan[i][j]).sum();
            if p - pair > 0 {
                let mut up = beta.coords.clone();
                up[i] += 1;
                if seen.insert(up.clone()) {
                    roots.push(Root::new(up));
                }
            }
        }
    }
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coords.cmp(&a.coords)));
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn parse_and_display() {
        let t: CartanType = "g2xb2".parse().unwrap();
        assert_eq!(t.to_string(), "B2xG2");
        assert_eq!(t.rank(), 4);
        assert!("D3".parse::<CartanType>().is_err());
        assert!("E9".parse::<CartanType>().is_err());
        assert!("Q2".parse::<CartanType>().is_err());
        assert!("A".parse::<CartanType>().is_err());
    }

    #[test]
    fn a2_roots() {
        let rs = RootSystem::parse("A2").unwrap();
        let coords: Vec<_> = rs.positive_roots().iter().map(|r| r.coords.clone()).collect();
        assert_eq!(coords, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        let a1 = rs.simple_root(0);
        let a2 = rs.simple_root(1);
        assert_eq!(rs.pairing_int(&a1.coords, &a1.coords), 2);
        assert_eq!(rs.pairing_int(&a1.coords, &a2.coords), -1);
        assert_eq!(rs.reflect_root(&a1, &a2).coords, vec![1, 1]);
        assert_eq!(rs.reflect_root(&a1, &a1).coords, vec![-1, 0]);
        assert_eq!(rs.add_roots(&a1, &a2).unwrap().coords, vec![1, 1]);
        assert!(rs.add_roots(&a1, &a1).is_none());
    }

    #[test]
    fn classical_counts() {
        for (t, count) in [
            ("A1", 1),
            ("A4", 10),
            ("B3", 9),
            ("C4", 16),
            ("D4", 12),
            ("D5", 20),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("A2xG2", 9),
        ] {
            assert_eq!(RootSystem::parse(t).unwrap().num_positive(), count, "{t}");
        }
    }

    #[test]
    fn a3_examples() {
        let rs = RootSystem::parse("A3").unwrap();
        let theta = Root::new(vec![1, 1, 1]);
        assert_eq!(rs.norm2(&theta.coords), 2);
        assert!(rs.orthogonal(&rs.simple_root(0), &rs.simple_root(2)));
        assert!(rs.strongly_orthogonal(&rs.simple_root(1), &theta));
        assert_eq!(rs.highest_roots(), vec![theta]);
    }

    #[test]
    fn highest_roots_of_exceptional_types() {
        let g2 = RootSystem::parse("G2").unwrap();
        assert_eq!(g2.highest_roots()[0].coords, vec![3, 2]);
        let f4 = RootSystem::parse("F4").unwrap();
        assert_eq!(f4.highest_roots()[0].coords, vec![2, 3, 4, 2]);
        let e8 = RootSystem::parse("E8").unwrap();
        assert_eq!(e8.highest_roots()[0].coords, vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn rational_reflection() {
        let rs = RootSystem::parse("B2").unwrap();
        let beta = Root::new(vec![1, 1]);
        let x = q(&[3, -7]);
        let y = rs.reflect(&beta, &x).unwrap();
        assert_eq!(rs.reflect(&beta, &y).unwrap(), x);
        assert!(rs.reflect(&Root::new(vec![2, 2]), &x).is_err());
        assert!(rs.pairing(&x, &q(&[1])).is_err());
    }
}
