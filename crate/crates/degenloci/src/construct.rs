//! Construction of a top-dimensional GCR pair `(v, w₀ v)` from the cascade.

use crate::bruhat::bruhat_leq;
use crate::cascade::{self, build_cascade};
use crate::dynkin::{self, Letter};
use crate::error::{Error, Result};
use crate::gcr;
use crate::rootsys::{CartanType, Component, Root, RootSystem};
use crate::weyl::{WeylElement, Word};
use serde::Serialize;
use std::collections::HashSet;

fn simple_component(rs: &RootSystem) -> Result<Component> {
    if !rs.cartan_type().is_simple() {
        return Err(Error::InvalidType(format!(
            "{} is not simple",
            rs.cartan_type()
        )));
    }
    Ok(rs.cartan_type().components()[0])
}

/// `E(θ) ∖ {θ}` for the highest root.
fn e_theta(rs: &RootSystem, theta: &Root) -> Vec<Root> {
    rs.positive_roots()
        .iter()
        .filter(|r| *r != theta && rs.pairing_int(&r.coords, &theta.coords) > 0)
        .cloned()
        .collect()
}

/// A reduced word `u` of length `h∨ − 2` with `Δ₊^u ⊆ E(θ) ∖ {θ}`.
///
/// Simply-laced types use the greedy height descent with smallest index;
/// the other types use fixed words in Bourbaki labeling.
pub fn build_u_for_theta(rs: &RootSystem) -> Result<Word> {
    let comp = simple_component(rs)?;
    let n = comp.rank;
    let theta = rs.highest_roots().remove(0);
    let word = match comp.letter {
        Letter::A | Letter::D | Letter::E => {
            let mut cur = theta.clone();
            let mut letters = Vec::new();
            while cur.height() > 1 {
                let i = (0..n)
                    .find(|&i| cur.coords[i] != 0 && rs.pairing_int(&rs.simple_root(i).coords, &cur.coords) > 0)
                    .ok_or_else(|| Error::Verification("greedy descent is stuck".into()))?;
                cur = rs.reflect_root(&rs.simple_root(i), &cur);
                letters.push(i + 1);
            }
            Word(letters)
        }
        Letter::B => Word((2..=n).chain(1..=n - 2).collect()),
        Letter::C => Word((1..n).collect()),
        Letter::F => Word(vec![1, 2, 3, 4, 2, 3, 1]),
        // α_1 short, α_2 long
        Letter::G => Word(vec![2, 1]),
    };
    let hv = dynkin::dual_coxeter(comp.letter, comp.rank) as usize;
    if !rs.is_reduced(&word) || word.len() != hv - 2 {
        return Err(Error::Verification(format!(
            "u = {word} for {comp} is not reduced of length {}",
            hv - 2
        )));
    }
    let e: HashSet<Root> = e_theta(rs, &theta).into_iter().collect();
    let inv = rs.roots_of_word(&word)?;
    if let Some(bad) = inv.iter().find(|r| !e.contains(*r)) {
        return Err(Error::Verification(format!(
            "u = {word} for {comp} inverts {bad} outside E(θ)"
        )));
    }
    Ok(word)
}

/// One irreducible piece of a subsystem, identified with a standard system.
#[derive(Clone, Debug)]
pub struct SubComponent {
    pub standard: RootSystem,
    /// `embed[k]` is the ambient root playing the role of standard `α_{k+1}`.
    pub embed: Vec<Root>,
}

impl SubComponent {
    /// Ambient image of a root given in standard coordinates.
    pub fn lift(&self, r: &Root) -> Root {
        let n = self.embed[0].coords.len();
        let mut out = vec![0; n];
        for (c, e) in r.coords.iter().zip(&self.embed) {
            for (o, x) in out.iter_mut().zip(&e.coords) {
                *o += c * x;
            }
        }
        Root::new(out)
    }
}

/// `Δ' = {β ∈ Δ : β ⊥ u⁻¹(θ)}` with its simple system and components.
#[derive(Clone, Debug)]
pub struct Subsystem {
    pub positive: Vec<Root>,
    pub simple: Vec<Root>,
    pub parts: Vec<SubComponent>,
}

/// Identify the pieces of a closed positive subsystem with standard types.
pub fn identify(rs: &RootSystem, positive: &[Root]) -> Result<Vec<SubComponent>> {
    let mut parts = Vec::new();
    for comp in cascade::components(rs, positive) {
        let simple = cascade::simple_system(&comp);
        let cartan: Vec<Vec<i64>> = simple
            .iter()
            .map(|a| {
                simple
                    .iter()
                    .map(|b| 2 * rs.pairing_int(&a.coords, &b.coords) / rs.norm2(&a.coords))
                    .collect()
            })
            .collect();
        let cl = dynkin::classify(&cartan)?;
        let standard = RootSystem::new(CartanType::simple(cl.letter, cl.rank)?)?;
        let mut embed = vec![Root::new(vec![]); cl.rank];
        for (k, &s) in cl.to_standard.iter().enumerate() {
            embed[s] = simple[k].clone();
        }
        parts.push(SubComponent { standard, embed });
    }
    Ok(parts)
}

pub fn orthogonal_subsystem(rs: &RootSystem, u: &Word, theta: &Root) -> Result<Subsystem> {
    let ue = rs.word_element(u)?;
    let uinv = rs.inverse(&ue);
    let x = uinv.act(theta);
    let positive: Vec<Root> = rs
        .positive_roots()
        .iter()
        .filter(|r| rs.orthogonal(r, &x))
        .cloned()
        .collect();
    let simple = cascade::simple_system(&positive);
    if let Some(bad) = positive.iter().find(|r| !ue.act(r).is_positive()) {
        return Err(Error::Verification(format!("u maps {bad} to a negative root")));
    }
    let parts = identify(rs, &positive)?;
    // cascade of Δ' against u⁻¹(B ∖ {θ})
    let mut sub_cascade: Vec<Root> = Vec::new();
    for p in &parts {
        for g in build_cascade(&p.standard)?.roots {
            sub_cascade.push(p.lift(&g));
        }
    }
    let mut expect: Vec<Root> = build_cascade(rs)?
        .roots
        .iter()
        .filter(|g| *g != theta)
        .map(|g| uinv.act(g))
        .collect();
    sub_cascade.sort();
    expect.sort();
    if sub_cascade != expect {
        return Err(Error::Verification(
            "cascade of the orthogonal subsystem is not u⁻¹(B ∖ {θ})".into(),
        ));
    }
    Ok(Subsystem {
        positive,
        simple,
        parts,
    })
}

/// Roots whose reflections multiply (in order) to `v` on a simple system:
/// the letters of `u`, then the lifted roots for `v'`.
fn v_roots_simple(rs: &RootSystem) -> Result<Vec<Root>> {
    let u = build_u_for_theta(rs)?;
    let theta = rs.highest_roots().remove(0);
    let mut out: Vec<Root> = u.letters().iter().map(|&i| rs.simple_root(i - 1)).collect();
    let sub = orthogonal_subsystem(rs, &u, &theta)?;
    for part in &sub.parts {
        for r in v_roots(&part.standard)? {
            out.push(part.lift(&r));
        }
    }
    Ok(out)
}

fn v_roots(rs: &RootSystem) -> Result<Vec<Root>> {
    let mut out = Vec::new();
    for (c, comp) in rs.cartan_type().components().iter().enumerate() {
        let standard = RootSystem::new(CartanType::simple(comp.letter, comp.rank)?)?;
        let part = SubComponent {
            embed: rs.component_indices(c).map(|i| rs.simple_root(i)).collect(),
            standard,
        };
        for r in v_roots_simple(&part.standard)? {
            out.push(part.lift(&r));
        }
    }
    Ok(out)
}

fn product(rs: &RootSystem, roots: &[Root]) -> Result<WeylElement> {
    roots
        .iter()
        .try_fold(rs.identity(), |acc, r| Ok(acc.multiply(&rs.reflection(r)?)))
}

/// `v` whose inversion set holds one twin of every Heisenberg pair.
pub fn build_v(rs: &RootSystem) -> Result<WeylElement> {
    product(rs, &v_roots(rs)?)
}

/// The pieces `u` and `v'` of `v = u v'` on a simple system.
pub fn build_v_parts(rs: &RootSystem) -> Result<(WeylElement, WeylElement)> {
    let u = build_u_for_theta(rs)?;
    let all = v_roots_simple(rs)?;
    let ue = rs.word_element(&u)?;
    let vp = product(rs, &all[u.len()..])?;
    Ok((ue, vp))
}

/// Which twin of a Heisenberg pair lies in `Δ₊^v`.
#[derive(Clone, Debug, Serialize)]
pub struct HeisenbergChoice {
    pub gamma: Root,
    pub pair: (Root, Root),
    pub chosen: Root,
}

/// The constructed pair `(v, w₀ v)` with its certificate.
#[derive(Clone, Debug)]
pub struct TopPair {
    pub v: WeylElement,
    pub w: WeylElement,
    pub d: usize,
    pub cascade_size: usize,
    pub certificate: Vec<HeisenbergChoice>,
}

/// Serializable view of a [`TopPair`].
#[derive(Clone, Debug, Serialize)]
pub struct TopPairRecord {
    pub cartan_type: String,
    pub v_word: Word,
    pub w_word: Word,
    pub d: usize,
    pub cascade_size: usize,
    pub certificate: Vec<HeisenbergChoice>,
}

impl TopPair {
    pub fn to_record(&self, rs: &RootSystem) -> TopPairRecord {
        TopPairRecord {
            cartan_type: rs.cartan_type().to_string(),
            v_word: rs.reduced_word(&self.v),
            w_word: rs.reduced_word(&self.w),
            d: self.d,
            cascade_size: self.cascade_size,
            certificate: self.certificate.clone(),
        }
    }
}

/// Build `v`, certify it, and check that `(v, w₀ v)` is GCR of dimension `|B|`.
pub fn build_top_pair(rs: &RootSystem) -> Result<TopPair> {
    let v = build_v(rs)?;
    let c = build_cascade(rs)?;
    let m = c.len();
    let big_n = rs.num_positive();
    let fail = |msg: String| Err(Error::Verification(format!("{}: {msg}", rs.cartan_type())));
    if rs.length(&v) * 2 + m != big_n {
        return fail(format!("l(v) = {} but (N − m)/2 = {}", rs.length(&v), (big_n - m) / 2));
    }
    let inv: HashSet<Root> = rs.inversion_set(&v).into_iter().collect();
    if let Some(g) = c.roots.iter().find(|g| inv.contains(*g)) {
        return fail(format!("cascade root {g} is inverted by v"));
    }
    let mut certificate = Vec::new();
    for node in c.nodes() {
        for (a, b) in &node.heisenberg_pairs {
            let chosen = match (inv.contains(a), inv.contains(b)) {
                (true, false) => a.clone(),
                (false, true) => b.clone(),
                _ => return fail(format!("pair ({a}, {b}) is not split by v")),
            };
            certificate.push(HeisenbergChoice {
                gamma: node.gamma.clone(),
                pair: (a.clone(), b.clone()),
                chosen,
            });
        }
    }
    let w0 = rs.longest_element();
    let w = w0.multiply(&v);
    if !bruhat_leq(rs, &v, &w) || !gcr::is_gcr_cond3(rs, &v, &w)? {
        return fail("(v, w₀v) fails the kernel condition".into());
    }
    let d = rs.length(&w) - rs.length(&v);
    if d != m || rs.reflection_length(&w0) != m {
        return fail(format!("d = {d}, |B| = {m}"));
    }
    Ok(TopPair {
        v,
        w,
        d,
        cascade_size: m,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u_words() {
        let a1 = RootSystem::parse("A1").unwrap();
        assert!(build_u_for_theta(&a1).unwrap().is_empty());
        let a3 = RootSystem::parse("A3").unwrap();
        assert_eq!(build_u_for_theta(&a3).unwrap(), Word(vec![1, 2]));
        let f4 = RootSystem::parse("F4").unwrap();
        assert_eq!(build_u_for_theta(&f4).unwrap().len(), 7);
        for t in ["B2", "B3", "B5", "C3", "C5", "G2", "D4", "D6", "E6", "E7", "E8"] {
            build_u_for_theta(&RootSystem::parse(t).unwrap()).unwrap();
        }
        assert!(build_u_for_theta(&RootSystem::parse("A1xA1").unwrap()).is_err());
    }

    #[test]
    fn g2_word_12_leaves_e_theta() {
        let g2 = RootSystem::parse("G2").unwrap();
        let theta = g2.highest_roots().remove(0);
        let e: HashSet<Root> = e_theta(&g2, &theta).into_iter().collect();
        let inv = g2.roots_of_word(&Word(vec![1, 2])).unwrap();
        assert!(inv.iter().any(|r| !e.contains(r)));
    }

    #[test]
    fn subsystems() {
        let a3 = RootSystem::parse("A3").unwrap();
        let u = build_u_for_theta(&a3).unwrap();
        let theta = a3.highest_roots().remove(0);
        let sub = orthogonal_subsystem(&a3, &u, &theta).unwrap();
        assert_eq!(sub.positive, vec![Root::new(vec![1, 0, 0])]);
        assert_eq!(sub.parts.len(), 1);
        let b3 = RootSystem::parse("B3").unwrap();
        let u = build_u_for_theta(&b3).unwrap();
        let theta = b3.highest_roots().remove(0);
        let sub = orthogonal_subsystem(&b3, &u, &theta).unwrap();
        let size: usize = sub
            .parts
            .iter()
            .map(|p| build_cascade(&p.standard).unwrap().len())
            .sum();
        assert_eq!(size, 2);
        // D4: Δ' is of type 3A1 and needs three simple roots
        let d4 = RootSystem::parse("D4").unwrap();
        let u = build_u_for_theta(&d4).unwrap();
        let theta = d4.highest_roots().remove(0);
        let sub = orthogonal_subsystem(&d4, &u, &theta).unwrap();
        assert_eq!(sub.simple.len(), 3);
        assert_eq!(sub.parts.len(), 3);
        let a1 = RootSystem::parse("A1").unwrap();
        let sub = orthogonal_subsystem(&a1, &Word(vec![]), &Root::new(vec![1])).unwrap();
        assert!(sub.positive.is_empty());
    }

    #[test]
    fn small_top_pairs() {
        let a1 = RootSystem::parse("A1").unwrap();
        let t = build_top_pair(&a1).unwrap();
        assert!(t.v.is_identity());
        assert_eq!(t.d, 1);
        let a2 = RootSystem::parse("A2").unwrap();
        assert_eq!(a2.length(&build_v(&a2).unwrap()), 1);
        let a3 = RootSystem::parse("A3").unwrap();
        let t = build_top_pair(&a3).unwrap();
        assert_eq!(t.d, 2);
        assert_eq!(a3.length(&t.v), 2);
        let t = build_top_pair(&RootSystem::parse("B2xA3").unwrap()).unwrap();
        assert_eq!(t.d, 4);
    }

    #[test]
    fn heisenberg_induction_shadow() {
        // u(Δ₊^{v'}) splits every Heisenberg pair outside E(θ)
        for t in ["A5", "B4", "C4", "D5", "F4", "G2", "E6"] {
            let rs = RootSystem::parse(t).unwrap();
            let (u, vp) = build_v_parts(&rs).unwrap();
            let image: HashSet<Root> = rs.inversion_set(&vp).iter().map(|r| u.act(r)).collect();
            let c = build_cascade(&rs).unwrap();
            for node in &c.nodes()[1..] {
                for (a, b) in &node.heisenberg_pairs {
                    assert!(image.contains(a) != image.contains(b), "{t}");
                }
            }
        }
    }

    #[test]
    fn e8_top_pair() {
        let e8 = RootSystem::parse("E8").unwrap();
        let t = build_top_pair(&e8).unwrap();
        assert_eq!(t.d, 8);
        assert_eq!(e8.length(&t.v), 56);
    }
}
