//! Pairs `(v, w)` satisfying the equivalent conditions of the GCR theorem,
//! their witnesses, the containment poset and its maximal elements.

use crate::bruhat::{self, element_label};
use crate::error::{Error, Result};
use crate::rootsys::{Root, RootSystem};
use crate::weyl::{kernel_dim, WeylElement, WeylGroup, Word};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{HashMap, HashSet};

/// A GCR pair with its orthogonal-root witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcrPair {
    pub v: WeylElement,
    pub w: WeylElement,
    pub d: usize,
    /// Pairwise orthogonal `γ_1, …, γ_d` with `v = s_{γ_1} ⋯ s_{γ_d} w`.
    pub witness_roots: Vec<Root>,
    /// Removed positions (1-based) inside `host_word`.
    pub witness_positions: Vec<usize>,
    /// The reduced word of `w` the positions refer to.
    pub host_word: Word,
}

/// Serializable view of a [`GcrPair`].
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GcrPairRecord {
    pub v: String,
    pub w: String,
    pub d: usize,
    pub witness_roots: Vec<Vec<i32>>,
    pub positions: Vec<usize>,
}

impl GcrPair {
    pub fn to_record(&self, rs: &RootSystem) -> GcrPairRecord {
        GcrPairRecord {
            v: element_label(rs, &self.v),
            w: element_label(rs, &self.w),
            d: self.d,
            witness_roots: self.witness_roots.iter().map(|r| r.coords.clone()).collect(),
            positions: self.witness_positions.clone(),
        }
    }
}

fn check_leq(rs: &RootSystem, v: &WeylElement, w: &WeylElement) -> Result<()> {
    if bruhat::bruhat_leq(rs, v, w) {
        Ok(())
    } else {
        Err(Error::NotComparable(format!(
            "{} is not below {}",
            element_label(rs, v),
            element_label(rs, w)
        )))
    }
}

/// `dim Ker(v w⁻¹ + 1) = l(w) − l(v)`.
pub fn is_gcr_cond3(rs: &RootSystem, v: &WeylElement, w: &WeylElement) -> Result<bool> {
    check_leq(rs, v, w)?;
    Ok(cond3_unchecked(rs, v, w, rs.length(w) - rs.length(v)))
}

fn cond3_unchecked(rs: &RootSystem, v: &WeylElement, w: &WeylElement, d: usize) -> bool {
    let u = v.multiply(&rs.inverse(w));
    kernel_dim(&u.rows_shifted(1)) == d
}

/// `(v w⁻¹)² = 1` and `l_Δ(v w⁻¹) = l(w) − l(v)`.
pub fn is_gcr_cond4(rs: &RootSystem, v: &WeylElement, w: &WeylElement) -> bool {
    let (lv, lw) = (rs.length(v), rs.length(w));
    if lv > lw {
        return false;
    }
    let u = v.multiply(&rs.inverse(w));
    rs.is_involution(&u) && rs.reflection_length(&u) == lw - lv
}

/// Search the reduced subwords of `reduced_word(w)` with value `v` for one
/// whose removed roots are pairwise orthogonal.
pub fn is_gcr_cond6(rs: &RootSystem, v: &WeylElement, w: &WeylElement) -> Result<Option<GcrPair>> {
    is_gcr_cond6_with_word(rs, v, w, &rs.reduced_word(w))
}

/// As [`is_gcr_cond6`] with a caller-chosen reduced word of `w`.
pub fn is_gcr_cond6_with_word(
    rs: &RootSystem,
    v: &WeylElement,
    w: &WeylElement,
    word: &Word,
) -> Result<Option<GcrPair>> {
    check_leq(rs, v, w)?;
    if rs.word_element(word)? != *w {
        return Err(Error::Verification(format!("word {word} does not spell w")));
    }
    let betas = rs.roots_of_word(word)?;
    let d = word.len() - rs.length(v);
    let search = OrthSearch {
        rs,
        word: word.letters(),
        betas: &betas,
        v,
        d,
    };
    let mut removed = Vec::new();
    if !search.dfs(0, rs.identity(), &mut removed) {
        return Ok(None);
    }
    Ok(Some(GcrPair {
        v: v.clone(),
        w: w.clone(),
        d,
        witness_roots: removed.iter().map(|&p| betas[p - 1].clone()).collect(),
        witness_positions: removed,
        host_word: word.clone(),
    }))
}

struct OrthSearch<'a> {
    rs: &'a RootSystem,
    word: &'a [usize],
    betas: &'a [Root],
    v: &'a WeylElement,
    d: usize,
}

impl OrthSearch<'_> {
    // Removal is tried before keeping, so the first hit has lexicographically
    // smallest positions among removal sets of size d.
    fn dfs(&self, pos: usize, prefix: WeylElement, removed: &mut Vec<usize>) -> bool {
        if pos == self.word.len() {
            return removed.len() == self.d && prefix == *self.v;
        }
        let left = self.word.len() - pos;
        if removed.len() + left < self.d {
            return false;
        }
        if removed.len() < self.d {
            let beta = &self.betas[pos];
            let orth = removed
                .iter()
                .all(|&p| self.rs.orthogonal(&self.betas[p - 1], beta));
            if orth {
                removed.push(pos + 1);
                if self.dfs(pos + 1, prefix.clone(), removed) {
                    return true;
                }
                removed.pop();
            }
        }
        let j = self.word[pos] - 1;
        if prefix.has_right_descent(j) {
            return false;
        }
        self.dfs(pos + 1, prefix.times_simple(self.rs, j), removed)
    }
}

/// All GCR pairs of an enumerated group, ordered by `(v, w)` ids.
#[derive(Clone, Debug)]
pub struct GcrPoset {
    pub pairs: Vec<GcrPair>,
    pub ids: Vec<(u32, u32)>,
}

impl GcrPoset {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn count_by_d(&self) -> Vec<usize> {
        let top = self.pairs.iter().map(|p| p.d).max().unwrap_or(0);
        let mut c = vec![0; top + 1];
        for p in &self.pairs {
            c[p.d] += 1;
        }
        c
    }
}

/// Enumerate `GCR(W)`: every `v ≤ w` passing the kernel condition, each
/// with an orthogonal-subword witness attached.
///
/// Only `v` with `l(v) ≥ l(w) − l_Δ(w₀)` are tested.
pub fn enumerate_gcr(g: &WeylGroup) -> Result<GcrPoset> {
    let rs = g.root_system();
    let m = rs.reflection_length(&rs.longest_element());
    let found: Vec<Result<Vec<((u32, u32), GcrPair)>>> = (0..g.len() as u32)
        .into_par_iter()
        .map(|w| {
            let lw = g.length(w);
            let we = g.element(w);
            let winv = g.element(g.inverse(w));
            let word = rs.reduced_word(we);
            let mut out = Vec::new();
            for v in 0..g.len() as u32 {
                let lv = g.length(v);
                if lv > lw || lv + m < lw || !g.leq(v, w) {
                    continue;
                }
                let ve = g.element(v);
                let u = ve.multiply(winv);
                if kernel_dim(&u.rows_shifted(1)) != lw - lv {
                    continue;
                }
                let pair = is_gcr_cond6_with_word(rs, ve, we, &word)?.ok_or_else(|| {
                    Error::Verification(format!(
                        "({}, {}) passes the kernel condition but has no orthogonal subword",
                        element_label(rs, ve),
                        element_label(rs, we)
                    ))
                })?;
                out.push(((v, w), pair));
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for r in found {
        all.extend(r?);
    }
    all.sort_by_key(|(k, _)| *k);
    let (ids, pairs) = all.into_iter().unzip();
    Ok(GcrPoset { pairs, ids })
}

/// Pairs not strictly contained in another GCR pair, where `(v', w')` is
/// contained in `(v, w)` when `v ≤ v' ≤ w' ≤ w`.
///
/// Because GCR is closed under shrinking intervals, a pair is non-maximal
/// exactly when one end can be moved by a single covering step.
pub fn maximal_pairs(poset: &GcrPoset, g: &WeylGroup) -> Vec<usize> {
    let set: HashSet<(u32, u32)> = poset.ids.iter().copied().collect();
    let mut up: HashMap<u32, Vec<u32>> = HashMap::new();
    for (v, w) in bruhat::covering_pairs(g) {
        up.entry(v).or_default().push(w);
    }
    poset
        .ids
        .iter()
        .enumerate()
        .filter(|(_, &(v, w))| {
            let grow_down = bruhat::lower_covers(g, v)
                .into_iter()
                .any(|x| set.contains(&(x, w)));
            let grow_up = up
                .get(&w)
                .is_some_and(|ws| ws.iter().any(|&x| set.contains(&(v, x))));
            !grow_down && !grow_up
        })
        .map(|(k, _)| k)
        .collect()
}

/// Maximal pairs by the definition, comparing every pair with every other.
/// Quadratic; meant for small groups and tests.
pub fn maximal_pairs_brute(poset: &GcrPoset, g: &WeylGroup) -> Vec<usize> {
    (0..poset.len())
        .filter(|&a| {
            let (v, w) = poset.ids[a];
            !poset.ids.iter().any(|&(v2, w2)| {
                (v2, w2) != (v, w) && g.leq(v2, v) && g.leq(w, w2)
            })
        })
        .collect()
}

/// One entry of [`sub_pairs`]: `v_J` and `w_K` for disjoint `J, K ⊆ [1, d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubPair {
    pub j: Vec<usize>,
    pub k: Vec<usize>,
    pub v_j: WeylElement,
    pub w_k: WeylElement,
}

fn product_of(rs: &RootSystem, roots: &[Root], idx: &[usize], x: &WeylElement) -> WeylElement {
    let mut y = x.clone();
    for &i in idx.iter().rev() {
        y = rs.reflection(&roots[i - 1]).expect("witness root").multiply(&y);
    }
    y
}

/// `w_K = (∏_{j∈K} s_{γ_j}) w`.
pub fn w_k(rs: &RootSystem, p: &GcrPair, k: &[usize]) -> WeylElement {
    product_of(rs, &p.witness_roots, k, &p.w)
}

/// `v_J = (∏_{j∈J} s_{γ_j}) v`.
pub fn v_j(rs: &RootSystem, p: &GcrPair, j: &[usize]) -> WeylElement {
    product_of(rs, &p.witness_roots, j, &p.v)
}

/// Subsets of `[1, d]` as sorted index lists, in binary counting order.
pub fn subsets(d: usize) -> Vec<Vec<usize>> {
    (0..1u32 << d)
        .map(|mask| (0..d).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect())
        .collect()
}

/// All `(J, K, v_J, w_K)` with `J ∩ K = ∅`.
pub fn sub_pairs(rs: &RootSystem, p: &GcrPair) -> Vec<SubPair> {
    let subs = subsets(p.d);
    let mut out = Vec::new();
    for j in &subs {
        for k in &subs {
            if j.iter().any(|x| k.contains(x)) {
                continue;
            }
            out.push(SubPair {
                j: j.clone(),
                k: k.clone(),
                v_j: v_j(rs, p, j),
                w_k: w_k(rs, p, k),
            });
        }
    }
    out
}

/// Check that `[v, w]` is the boolean lattice on `{w_K}`: `2^d` distinct
/// elements, `w_K ≤ w_J ⇔ K ⊇ J`, and Hasse edges exactly `w_{K∪{x}} ⋖ w_K`.
pub fn verify_powerset_interval(g: &WeylGroup, p: &GcrPair) -> bool {
    let rs = g.root_system();
    let (Some(v), Some(w)) = (g.id(&p.v), g.id(&p.w)) else {
        return false;
    };
    let Ok(iv) = bruhat::interval(g, v, w) else {
        return false;
    };
    let subs = subsets(p.d);
    let ids: Vec<u32> = subs
        .iter()
        .map(|k| g.id(&w_k(rs, p, k)).expect("group element"))
        .collect();
    let distinct: HashSet<u32> = ids.iter().copied().collect();
    if distinct.len() != 1 << p.d {
        return false;
    }
    let mut elems = iv.elements.clone();
    elems.sort();
    let mut want: Vec<u32> = distinct.into_iter().collect();
    want.sort();
    if elems != want {
        return false;
    }
    let mut edges = Vec::new();
    for (a, ka) in subs.iter().enumerate() {
        for (b, kb) in subs.iter().enumerate() {
            let superset = kb.iter().all(|x| ka.contains(x));
            if g.leq(ids[a], ids[b]) != superset {
                return false;
            }
            if superset && ka.len() == kb.len() + 1 {
                edges.push((ids[a], ids[b]));
            }
        }
    }
    edges.sort();
    edges == iv.edges
}

/// Outcome of checking all three conditions on every comparable pair.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub comparable_pairs: usize,
    pub gcr_pairs: usize,
    pub discrepancies: Vec<(u32, u32)>,
}

/// Evaluate all three conditions on every `v ≤ w` of the group.
pub fn equivalence_sweep(g: &WeylGroup) -> Result<SweepReport> {
    let rs = g.root_system();
    let per_w: Vec<Result<SweepReport>> = (0..g.len() as u32)
        .into_par_iter()
        .map(|w| {
            let we = g.element(w);
            let word = rs.reduced_word(we);
            let mut rep = SweepReport::default();
            for v in 0..g.len() as u32 {
                if !g.leq(v, w) {
                    continue;
                }
                let ve = g.element(v);
                rep.comparable_pairs += 1;
                let c3 = cond3_unchecked(rs, ve, we, g.length(w) - g.length(v));
                let c4 = is_gcr_cond4(rs, ve, we);
                let c6 = is_gcr_cond6_with_word(rs, ve, we, &word)?.is_some();
                if c3 {
                    rep.gcr_pairs += 1;
                }
                if c3 != c4 || c3 != c6 {
                    rep.discrepancies.push((v, w));
                }
            }
            Ok(rep)
        })
        .collect();
    let mut total = SweepReport::default();
    for r in per_w {
        let r = r?;
        total.comparable_pairs += r.comparable_pairs;
        total.gcr_pairs += r.gcr_pairs;
        total.discrepancies.extend(r.discrepancies);
    }
    total.discrepancies.sort();
    Ok(total)
}
