//! Parabolic quotients, the P-Bruhat order and classes of pairs.

use crate::bruhat;
use crate::error::{Error, Result};
use crate::gcr::{self, GcrPair, GcrPoset};
use crate::rootsys::{Root, RootSystem};
use crate::weyl::{WeylElement, WeylGroup};
use serde::Serialize;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

/// A set `J` of simple indices (1-based) generating `W_P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct ParabolicSubset(Vec<usize>);

impl ParabolicSubset {
    pub fn new(rs: &RootSystem, mut idx: Vec<usize>) -> Result<ParabolicSubset> {
        idx.sort();
        idx.dedup();
        if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > rs.rank()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                rank: rs.rank(),
            });
        }
        Ok(ParabolicSubset(idx))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// All `2^n` subsets of `[1, n]`.
    pub fn all(rs: &RootSystem) -> Vec<ParabolicSubset> {
        gcr::subsets(rs.rank()).into_iter().map(ParabolicSubset).collect()
    }

    fn contains0(&self, j: usize) -> bool {
        self.0.contains(&(j + 1))
    }

    /// `Δ^L`: is the root supported on `J`?
    pub fn in_levi(&self, r: &Root) -> bool {
        r.support().iter().all(|&i| self.contains0(i))
    }
}

impl FromStr for ParabolicSubset {
    type Err = Error;

    /// Parses `1,3`; range checks happen in [`ParabolicSubset::new`].
    fn from_str(s: &str) -> Result<ParabolicSubset> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(ParabolicSubset::default());
        }
        let mut v = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index list {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        v.sort();
        v.dedup();
        Ok(ParabolicSubset(v))
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `w = w^P · w_P` with `w^P` free of right descents in `J`.
pub fn min_coset_rep(rs: &RootSystem, w: &WeylElement, j: &ParabolicSubset) -> (WeylElement, WeylElement) {
    let mut cur = w.clone();
    let mut acc = rs.identity();
    while let Some(s) = (0..rs.rank()).find(|&s| j.contains0(s) && cur.has_right_descent(s)) {
        cur = cur.times_simple(rs, s);
        acc = rs.simple_reflection(s + 1).expect("valid").multiply(&acc);
    }
    (cur, acc)
}

/// P-Bruhat order on an enumerated group: transitive closure of the
/// coverings `v ⋖ w` with `v W_P ≠ w W_P`.
pub struct PBruhat<'g> {
    g: &'g WeylGroup,
    j: ParabolicSubset,
    coset_rep: Vec<u32>,
    down_covers: Vec<Vec<u32>>,
    downsets: Vec<OnceLock<Vec<u64>>>,
}

impl<'g> PBruhat<'g> {
    pub fn new(g: &'g WeylGroup, j: ParabolicSubset) -> PBruhat<'g> {
        let coset_rep: Vec<u32> = (0..g.len() as u32)
            .map(|w| {
                let mut cur = w;
                while let Some(s) = (0..g.root_system().rank())
                    .find(|&s| j.contains0(s) && g.right_descent_mask(cur) >> s & 1 == 1)
                {
                    cur = g.right_mul(cur, s);
                }
                cur
            })
            .collect();
        let down_covers = (0..g.len() as u32)
            .map(|w| {
                bruhat::lower_covers(g, w)
                    .into_iter()
                    .filter(|&v| coset_rep[v as usize] != coset_rep[w as usize])
                    .collect()
            })
            .collect();
        let downsets = (0..g.len()).map(|_| OnceLock::new()).collect();
        PBruhat {
            g,
            j,
            coset_rep,
            down_covers,
            downsets,
        }
    }

    pub fn group(&self) -> &WeylGroup {
        self.g
    }

    pub fn subset(&self) -> &ParabolicSubset {
        &self.j
    }

    /// Id of `w^P`.
    pub fn coset_rep(&self, w: u32) -> u32 {
        self.coset_rep[w as usize]
    }

    pub fn in_quotient(&self, w: u32) -> bool {
        self.coset_rep[w as usize] == w
    }

    fn downset(&self, w: u32) -> &Vec<u64> {
        self.downsets[w as usize].get_or_init(|| {
            let mut bits = vec![0u64; self.g.len().div_ceil(64)];
            let mut stack = vec![w];
            bits[w as usize / 64] |= 1 << (w % 64);
            while let Some(x) = stack.pop() {
                for &y in &self.down_covers[x as usize] {
                    if bits[y as usize / 64] >> (y % 64) & 1 == 0 {
                        bits[y as usize / 64] |= 1 << (y % 64);
                        stack.push(y);
                    }
                }
            }
            bits
        })
    }

    /// `v ≤_P w`.
    pub fn leq(&self, v: u32, w: u32) -> bool {
        self.downset(w)[v as usize / 64] >> (v % 64) & 1 == 1
    }

    /// Canonical representative `(v w_P⁻¹, w^P)` of the class of `(v, w)`.
    pub fn canonicalize_pair(&self, v: u32, w: u32) -> Result<PairClass> {
        if !self.leq(v, w) {
            return Err(Error::NotComparable(format!("{v} is not P-below {w}")));
        }
        Ok(self.canonical_unchecked(v, w))
    }

    fn canonical_unchecked(&self, v: u32, w: u32) -> PairClass {
        let wp = self.coset_rep(w);
        // w_P = (w^P)⁻¹ w, so v w_P⁻¹ = v w⁻¹ w^P
        let g = self.g;
        let vw = g.mul(v, g.mul(g.inverse(w), wp));
        PairClass { v: vw, w: wp }
    }
}

/// Free-standing P-Bruhat comparison; builds the closure each call.
pub fn p_bruhat_leq(g: &WeylGroup, v: u32, w: u32, j: &ParabolicSubset) -> bool {
    PBruhat::new(g, j.clone()).leq(v, w)
}

/// Canonical token of a `~`-class of pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PairClass {
    pub v: u32,
    pub w: u32,
}

/// Indices of GCR pairs with `w ∈ W^P`.
pub fn gcr_p(poset: &GcrPoset, pb: &PBruhat) -> Vec<usize> {
    (0..poset.len())
        .filter(|&k| pb.in_quotient(poset.ids[k].1))
        .collect()
}

/// `[v, w]_P = [v, w]` as sets, and the P-order agrees with the Bruhat order
/// on it.
pub fn verify_p_interval(pb: &PBruhat, p: &GcrPair) -> bool {
    let g = pb.group();
    let (Some(v), Some(w)) = (g.id(&p.v), g.id(&p.w)) else {
        return false;
    };
    let bru: Vec<u32> = (0..g.len() as u32)
        .filter(|&x| g.leq(v, x) && g.leq(x, w))
        .collect();
    let pin: Vec<u32> = (0..g.len() as u32)
        .filter(|&x| pb.leq(v, x) && pb.leq(x, w))
        .collect();
    if bru != pin {
        return false;
    }
    bru.iter()
        .all(|&a| bru.iter().all(|&b| pb.leq(a, b) == g.leq(a, b)))
        && gcr::verify_powerset_interval(g, p)
}

/// All `(v_A, w_B)` over disjoint `A, B` are P-comparable and lie in
/// pairwise distinct classes.
pub fn verify_classes_distinct(pb: &PBruhat, p: &GcrPair) -> bool {
    let g = pb.group();
    let rs = g.root_system();
    let mut seen = HashSet::new();
    for sp in gcr::sub_pairs(rs, p) {
        let (Some(a), Some(b)) = (g.id(&sp.v_j), g.id(&sp.w_k)) else {
            return false;
        };
        match pb.canonicalize_pair(a, b) {
            Ok(c) => {
                if !seen.insert(c) {
                    return false;
                }
            }
            Err(_) => return false,
        }
    }
    true
}

/// Witness roots avoid the Levi: `w⁻¹(β_{p_k}) ∉ Δ^L`.
pub fn witness_avoids_levi(rs: &RootSystem, p: &GcrPair, j: &ParabolicSubset) -> bool {
    let winv = rs.inverse(&p.w);
    p.witness_roots.iter().all(|b| !j.in_levi(&winv.act(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{enumerate_group, oneline, Word, DEFAULT_CAP};

    #[test]
    fn coset_reps() {
        let rs = RootSystem::parse("A2").unwrap();
        let w0 = rs.longest_element();
        let j1 = ParabolicSubset::new(&rs, vec![1]).unwrap();
        let (wp, wl) = min_coset_rep(&rs, &w0, &j1);
        assert_eq!(wp.multiply(&wl), w0);
        assert_eq!(rs.length(&wp) + rs.length(&wl), 3);
        assert_eq!(wp, rs.word_element(&Word(vec![1, 2])).unwrap());
        let (a, b) = min_coset_rep(&rs, &w0, &ParabolicSubset::default());
        assert_eq!((a, b.is_identity()), (w0.clone(), true));
        let all = ParabolicSubset::new(&rs, vec![1, 2]).unwrap();
        let (a, b) = min_coset_rep(&rs, &w0, &all);
        assert!(a.is_identity());
        assert_eq!(b, w0);
    }

    #[test]
    fn p_order_basics() {
        let rs = RootSystem::parse("A2").unwrap();
        let g = enumerate_group(&rs, DEFAULT_CAP).unwrap();
        let pb0 = PBruhat::new(&g, ParabolicSubset::default());
        for v in 0..6 {
            for w in 0..6 {
                assert_eq!(pb0.leq(v, w), g.leq(v, w));
            }
        }
        let j = ParabolicSubset::new(&rs, vec![1]).unwrap();
        let pb = PBruhat::new(&g, j.clone());
        let s1 = g.id(&rs.simple_reflection(1).unwrap()).unwrap();
        let s1s2 = g.id(&rs.word_element(&Word(vec![1, 2])).unwrap()).unwrap();
        // brute force: s1 ⋖ s1s2 and the cosets differ
        assert_ne!(pb.coset_rep(s1), pb.coset_rep(s1s2));
        assert!(pb.leq(s1, s1s2));
        assert!(p_bruhat_leq(&g, s1, s1s2, &j));
        // e and s1 share a coset: not P-comparable
        assert!(!pb.leq(0, s1));
    }

    #[test]
    fn quotient_elements_dominate() {
        let rs = RootSystem::parse("A3").unwrap();
        let g = enumerate_group(&rs, DEFAULT_CAP).unwrap();
        for j in ParabolicSubset::all(&rs) {
            let pb = PBruhat::new(&g, j.clone());
            for w in 0..g.len() as u32 {
                let (wp, wl) = min_coset_rep(&rs, g.element(w), &j);
                assert_eq!(g.id(&wp).unwrap(), pb.coset_rep(w));
                assert_eq!(wp.multiply(&wl), *g.element(w));
                for v in 0..g.len() as u32 {
                    if pb.leq(v, w) {
                        assert!(g.leq(v, w));
                    }
                    if pb.in_quotient(w) && g.leq(v, w) {
                        assert!(pb.leq(v, w));
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_classes() {
        let rs = RootSystem::parse("A3").unwrap();
        let g = enumerate_group(&rs, DEFAULT_CAP).unwrap();
        let j = ParabolicSubset::new(&rs, vec![2]).unwrap();
        let pb = PBruhat::new(&g, j);
        // (v z, w z) with z ∈ W_P and additive lengths is equivalent to (v, w)
        let w = g.id(&oneline::parse(&rs, "3142").unwrap()).unwrap();
        let v = g.id(&oneline::parse(&rs, "1234").unwrap()).unwrap();
        assert!(pb.in_quotient(w));
        assert!(pb.leq(v, w));
        let z = 2; // s2 on the right
        let (vz, wz) = (g.right_mul(v, z - 1), g.right_mul(w, z - 1));
        assert_eq!(g.length(wz), g.length(w) + 1);
        let c1 = pb.canonicalize_pair(v, w).unwrap();
        let c2 = pb.canonicalize_pair(vz, wz).unwrap();
        assert_eq!(c1, c2);
        assert_eq!(pb.canonicalize_pair(c1.v, c1.w).unwrap(), c1);
    }

    #[test]
    fn full_levi_leaves_only_identity() {
        let rs = RootSystem::parse("A3").unwrap();
        let g = enumerate_group(&rs, DEFAULT_CAP).unwrap();
        let poset = gcr::enumerate_gcr(&g).unwrap();
        let pb = PBruhat::new(&g, ParabolicSubset::new(&rs, vec![1, 2, 3]).unwrap());
        assert_eq!(gcr_p(&poset, &pb).len(), 1);
        let pb0 = PBruhat::new(&g, ParabolicSubset::default());
        assert_eq!(gcr_p(&poset, &pb0).len(), poset.len());
    }

    #[test]
    fn parse_subsets() {
        let j: ParabolicSubset = "3, 1".parse().unwrap();
        assert_eq!(j.indices(), &[1, 3]);
        assert!("1,x".parse::<ParabolicSubset>().is_err());
        let rs = RootSystem::parse("A2").unwrap();
        assert!(ParabolicSubset::new(&rs, vec![3]).is_err());
    }
}
