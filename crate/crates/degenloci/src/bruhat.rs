//! Bruhat order, coverings, intervals, subwords and DOT export.

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::weyl::{WeylElement, WeylGroup, Word};
use serde::Serialize;
use std::collections::HashSet;
use std::fmt::Write;

/// Removed positions `p_1 < … < p_d` (1-based) inside a host word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SubwordPositions {
    pub removed: Vec<usize>,
}

impl SubwordPositions {
    pub fn d(&self) -> usize {
        self.removed.len()
    }

    /// The subword left after deleting the removed positions.
    pub fn kept_word(&self, host: &Word) -> Word {
        Word(
            host.letters()
                .iter()
                .enumerate()
                .filter(|(k, _)| !self.removed.contains(&(k + 1)))
                .map(|(_, &i)| i)
                .collect(),
        )
    }
}

/// `v ≤ w`, by the left-descent recursion: if `s w < w` then
/// `v ≤ w ⇔ min(v, s v) ≤ s w`.
///
/// The recursion never branches, so it runs in `l(w)` steps without a memo.
pub fn bruhat_leq(rs: &RootSystem, v: &WeylElement, w: &WeylElement) -> bool {
    // Left descents of w are right descents of w⁻¹; work with inverses.
    let mut v = rs.inverse(v);
    let mut w = rs.inverse(w);
    while let Some(j) = (0..rs.rank()).find(|&j| w.has_right_descent(j)) {
        if v.has_right_descent(j) {
            v = v.times_simple(rs, j);
        }
        w = w.times_simple(rs, j);
    }
    v.is_identity()
}

/// `v ⋖ w`.
pub fn covers(rs: &RootSystem, v: &WeylElement, w: &WeylElement) -> bool {
    rs.length(v) + 1 == rs.length(w) && bruhat_leq(rs, v, w)
}

/// All covering pairs `(v, w)` with `v ⋖ w`, sorted by ids.
///
/// Uses the fact that the elements covered by `w` are exactly the `s_β w`
/// one step shorter.
pub fn covering_pairs(g: &WeylGroup) -> Vec<(u32, u32)> {
    let rs = g.root_system();
    let refl: Vec<WeylElement> = rs
        .positive_roots()
        .iter()
        .map(|b| rs.reflection(b).expect("positive root"))
        .collect();
    let mut out = Vec::new();
    for w in 0..g.len() as u32 {
        let lw = g.length(w);
        for t in &refl {
            let v = g.id(&t.multiply(g.element(w))).expect("closed");
            if g.length(v) + 1 == lw {
                out.push((v, w));
            }
        }
    }
    out.sort();
    out
}

/// Elements of `[v, w]` that `w` covers, as ids.
pub fn lower_covers(g: &WeylGroup, w: u32) -> Vec<u32> {
    let rs = g.root_system();
    let lw = g.length(w);
    let mut out: Vec<u32> = rs
        .positive_roots()
        .iter()
        .map(|b| {
            let t = rs.reflection(b).expect("positive root");
            g.id(&t.multiply(g.element(w))).expect("closed")
        })
        .filter(|&v| g.length(v) + 1 == lw)
        .collect();
    out.sort();
    out
}

/// A Bruhat interval with its Hasse diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub elements: Vec<u32>,
    /// covering pairs `(lower, upper)` inside the interval
    pub edges: Vec<(u32, u32)>,
}

/// `[v, w]` as element ids and covering edges.
pub fn interval(g: &WeylGroup, v: u32, w: u32) -> Result<Interval> {
    if !g.leq(v, w) {
        return Err(Error::NotComparable(format!("{v} is not below {w}")));
    }
    let elements: Vec<u32> = (0..g.len() as u32)
        .filter(|&x| g.leq(v, x) && g.leq(x, w))
        .collect();
    let set: HashSet<u32> = elements.iter().copied().collect();
    let mut edges = Vec::new();
    for &x in &elements {
        for y in lower_covers(g, x) {
            if set.contains(&y) {
                edges.push((y, x));
            }
        }
    }
    edges.sort();
    Ok(Interval { elements, edges })
}

/// Removal sets of a reduced word whose complementary subword has value `target`.
///
/// With `reduced_only`, only subwords that are themselves reduced (of length
/// `l(target)`) are returned. Results are in lexicographic order of positions.
pub fn subwords_with_value(
    rs: &RootSystem,
    word: &Word,
    target: &WeylElement,
    reduced_only: bool,
) -> Result<Vec<SubwordPositions>> {
    if !rs.is_reduced(word) {
        return Err(Error::NotReduced(word.0.clone()));
    }
    let mut out = Vec::new();
    let mut removed = Vec::new();
    let keep_len = rs.length(target);
    let ctx = Search {
        rs,
        word: word.letters(),
        target,
        reduced_only,
        keep_len,
    };
    ctx.dfs(0, &rs.identity(), 0, &mut removed, &mut out);
    out.sort();
    Ok(out)
}

struct Search<'a> {
    rs: &'a RootSystem,
    word: &'a [usize],
    target: &'a WeylElement,
    reduced_only: bool,
    keep_len: usize,
}

impl Search<'_> {
    fn dfs(
        &self,
        pos: usize,
        prefix: &WeylElement,
        kept: usize,
        removed: &mut Vec<usize>,
        out: &mut Vec<SubwordPositions>,
    ) {
        if pos == self.word.len() {
            if prefix == self.target {
                out.push(SubwordPositions {
                    removed: removed.clone(),
                });
            }
            return;
        }
        let left = self.word.len() - pos;
        if self.reduced_only && (kept > self.keep_len || kept + left < self.keep_len) {
            return;
        }
        removed.push(pos + 1);
        self.dfs(pos + 1, prefix, kept, removed, out);
        removed.pop();
        let j = self.word[pos] - 1;
        if self.reduced_only && prefix.has_right_descent(j) {
            return;
        }
        self.dfs(pos + 1, &prefix.times_simple(self.rs, j), kept + 1, removed, out);
    }
}

/// Vertex label: one-line notation in type A, a reduced word otherwise.
pub fn element_label(rs: &RootSystem, w: &WeylElement) -> String {
    crate::weyl::oneline::format(rs, w).unwrap_or_else(|_| rs.reduced_word(w).to_string())
}

/// Hasse diagram of the whole group in DOT, with chosen edges flagged.
pub fn export_bruhat_graph(g: &WeylGroup, highlight: &HashSet<(u32, u32)>) -> String {
    let rs = g.root_system();
    let mut s = String::new();
    writeln!(s, "digraph bruhat {{").unwrap();
    writeln!(s, "  rankdir=BT;").unwrap();
    for id in 0..g.len() as u32 {
        writeln!(
            s,
            "  n{id} [label=\"{}\", rank={}];",
            element_label(rs, g.element(id)),
            g.length(id)
        )
        .unwrap();
    }
    for (v, w) in covering_pairs(g) {
        if highlight.contains(&(v, w)) {
            writeln!(s, "  n{v} -> n{w} [highlight=true, color=red];").unwrap();
        } else {
            writeln!(s, "  n{v} -> n{w};").unwrap();
        }
    }
    writeln!(s, "}}").unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{enumerate_group, oneline, DEFAULT_CAP};

    fn setup(t: &str) -> (RootSystem, WeylGroup) {
        let rs = RootSystem::parse(t).unwrap();
        let g = enumerate_group(&rs, DEFAULT_CAP).unwrap();
        (rs, g)
    }

    #[test]
    fn small_comparisons() {
        let (rs, _) = setup("A2");
        let s1 = rs.simple_reflection(1).unwrap();
        let s2 = rs.simple_reflection(2).unwrap();
        assert!(bruhat_leq(&rs, &s1, &s1.multiply(&s2)));
        assert!(bruhat_leq(&rs, &s1, &s2.multiply(&s1)));
        assert!(!bruhat_leq(&rs, &s1, &s2));
        let a3 = RootSystem::parse("A3").unwrap();
        let e = a3.identity();
        let w = oneline::parse(&a3, "2143").unwrap();
        assert!(bruhat_leq(&a3, &e, &w));
        let x = oneline::parse(&a3, "2134").unwrap();
        assert!(covers(&a3, &e, &x));
        assert!(!covers(&a3, &x, &x));
    }

    #[test]
    fn descent_recursion_matches_subword_definition() {
        for t in ["A2", "A3", "B2", "B3", "G2"] {
            let (rs, g) = setup(t);
            for w in g.iter() {
                let word = rs.reduced_word(w);
                for v in g.iter() {
                    let by_subword = !subwords_with_value(&rs, &word, v, false).unwrap().is_empty();
                    assert_eq!(bruhat_leq(&rs, v, w), by_subword, "{t}");
                    let (iv, iw) = (g.id(v).unwrap(), g.id(w).unwrap());
                    assert_eq!(g.leq(iv, iw), by_subword);
                }
            }
        }
    }

    #[test]
    fn covering_counts() {
        let (_, g) = setup("A2");
        assert_eq!(covering_pairs(&g).len(), 8);
        let dot = export_bruhat_graph(&g, &HashSet::new());
        assert_eq!(dot.matches("->").count(), 8);
        assert!(!dot.contains("highlight"));
        let (_, g4) = setup("A3");
        let dot = export_bruhat_graph(&g4, &HashSet::new());
        assert_eq!(dot.matches("[label=").count(), 24);
    }

    #[test]
    fn intervals() {
        let (rs, g) = setup("A3");
        let v = g.id(&oneline::parse(&rs, "1234").unwrap()).unwrap();
        let w = g.id(&oneline::parse(&rs, "2143").unwrap()).unwrap();
        let iv = interval(&g, v, w).unwrap();
        assert_eq!(iv.elements.len(), 4);
        assert_eq!(iv.edges.len(), 4);
        assert_eq!(interval(&g, w, w).unwrap().elements, vec![w]);
        assert!(interval(&g, w, v).is_err());
        let (_, g2) = setup("A2");
        assert_eq!(interval(&g2, 0, g2.longest_id()).unwrap().elements.len(), 6);
    }

    #[test]
    fn subword_non_reduced_case() {
        let (rs, _) = setup("A2");
        let word = Word(vec![1, 2, 1]);
        let s1 = rs.simple_reflection(1).unwrap();
        let red = subwords_with_value(&rs, &word, &s1, true).unwrap();
        assert_eq!(red.len(), 2);
        let e = rs.identity();
        // (1,–,1) multiplies to e but is not reduced
        let all = subwords_with_value(&rs, &word, &e, false).unwrap();
        assert!(all.contains(&SubwordPositions { removed: vec![2] }));
        let red_e = subwords_with_value(&rs, &word, &e, true).unwrap();
        assert!(!red_e.contains(&SubwordPositions { removed: vec![2] }));
        let full = rs.word_element(&word).unwrap();
        assert_eq!(
            subwords_with_value(&rs, &word, &full, true).unwrap(),
            vec![SubwordPositions { removed: vec![] }]
        );
        // removing positions p_1 < … < p_d gives s_{β_{p_1}} … s_{β_{p_d}} w
        let betas = rs.roots_of_word(&word).unwrap();
        for sp in red {
            let mut x = full.clone();
            for &p in sp.removed.iter().rev() {
                x = rs.reflection(&betas[p - 1]).unwrap().multiply(&x);
            }
            assert_eq!(x, s1);
        }
    }
}
