//! Kostant's cascade of strongly orthogonal roots, `E(γ)` sets and
//! Heisenberg pairs.

use crate::dynkin::{self, Letter};
use crate::error::{Error, Result};
use crate::rootsys::{Component, Root, RootSystem};
use crate::weyl::WeylElement;
use serde::Serialize;

/// A node of the cascade forest.
#[derive(Clone, Debug, Serialize)]
pub struct CascadeNode {
    pub gamma: Root,
    /// Simple indices (0-based) spanning `Δ(γ)`.
    pub support: Vec<usize>,
    /// Type of `Δ(γ)`.
    pub subsystem: Component,
    pub dual_coxeter: u32,
    /// `{μ ∈ Δ(γ) : (μ, γ) > 0}`, in root order.
    pub e_set: Vec<Root>,
    pub heisenberg_pairs: Vec<(Root, Root)>,
    pub children: Vec<CascadeNode>,
}

/// The cascade `B` and its forest.
#[derive(Clone, Debug, Serialize)]
pub struct Cascade {
    /// Preorder traversal of the forest.
    pub roots: Vec<Root>,
    pub forest: Vec<CascadeNode>,
}

impl Cascade {
    /// All nodes in preorder.
    pub fn nodes(&self) -> Vec<&CascadeNode> {
        fn walk<'a>(n: &'a CascadeNode, out: &mut Vec<&'a CascadeNode>) {
            out.push(n);
            for c in &n.children {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        for n in &self.forest {
            walk(n, &mut out);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// Simple indices in the support of `β` and the positive roots of `Δ(β)`.
pub fn support_subsystem(rs: &RootSystem, beta: &Root) -> (Vec<usize>, Vec<Root>) {
    let support = beta.support();
    let roots = rs
        .positive_roots()
        .iter()
        .filter(|r| r.support().iter().all(|i| support.contains(i)))
        .cloned()
        .collect();
    (support, roots)
}

/// Indecomposable elements of a positive system: its simple roots.
pub fn simple_system(positive: &[Root]) -> Vec<Root> {
    let set: std::collections::HashSet<&Root> = positive.iter().collect();
    positive
        .iter()
        .filter(|r| {
            !positive
                .iter()
                .any(|a| a != *r && set.contains(&r.sub(a)))
        })
        .cloned()
        .collect()
}

/// Split a closed set of positive roots into irreducible components; roots in
/// different components are orthogonal, and inside one component the
/// non-orthogonality graph is connected.
pub fn components(rs: &RootSystem, positive: &[Root]) -> Vec<Vec<Root>> {
    let n = positive.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for a in 0..n {
        for b in a + 1..n {
            if !rs.orthogonal(&positive[a], &positive[b]) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<Vec<Root>> = Vec::new();
    let mut label: Vec<Option<usize>> = vec![None; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        let g = match label[r] {
            Some(g) => g,
            None => {
                groups.push(Vec::new());
                label[r] = Some(groups.len() - 1);
                groups.len() - 1
            }
        };
        groups[g].push(positive[x].clone());
    }
    groups
}

/// Highest root (by height) of a component.
fn highest(roots: &[Root]) -> Root {
    roots
        .iter()
        .max_by_key(|r| r.height())
        .expect("nonempty component")
        .clone()
}

fn is_locally_high(rs: &RootSystem, gamma: &Root) -> bool {
    let (_, roots) = support_subsystem(rs, gamma);
    roots.iter().all(|r| r == gamma || r.height() < gamma.height())
}

/// Highest roots of the components of `Δ(γ)°₊`, ordered by root id.
pub fn descendants(rs: &RootSystem, gamma: &Root) -> Result<Vec<Root>> {
    if !is_locally_high(rs, gamma) {
        return Err(Error::Verification(format!("{gamma} is not locally high")));
    }
    let (_, roots) = support_subsystem(rs, gamma);
    let orth: Vec<Root> = roots
        .into_iter()
        .filter(|r| rs.orthogonal(r, gamma))
        .collect();
    let mut out: Vec<Root> = components(rs, &orth).iter().map(|c| highest(c)).collect();
    out.sort_by_key(|r| rs.root_id(&r.coords));
    Ok(out)
}

/// Type of the subsystem spanned by a set of simple indices (must be connected).
pub fn classify_support(rs: &RootSystem, support: &[usize]) -> Result<Component> {
    let c = rs.cartan();
    let sub: Vec<Vec<i64>> = support
        .iter()
        .map(|&i| support.iter().map(|&j| c[i][j]).collect())
        .collect();
    let cl = dynkin::classify(&sub)?;
    Ok(Component {
        letter: cl.letter,
        rank: cl.rank,
    })
}

fn build_node(rs: &RootSystem, gamma: Root) -> Result<CascadeNode> {
    let (support, roots) = support_subsystem(rs, &gamma);
    let subsystem = classify_support(rs, &support)?;
    let dual_coxeter = dynkin::dual_coxeter(subsystem.letter, subsystem.rank);
    let mut e_set = Vec::new();
    for r in &roots {
        for x in [r.clone(), r.neg()] {
            if rs.pairing_int(&x.coords, &gamma.coords) > 0 {
                e_set.push(x);
            }
        }
    }
    e_set.sort_by_key(|r| (!r.is_positive(), rs.root_id(&r.coords)));
    let heisenberg_pairs = heisenberg_matching(&gamma, &e_set)?;
    let children = descendants(rs, &gamma)?
        .into_iter()
        .map(|c| build_node(rs, c))
        .collect::<Result<_>>()?;
    Ok(CascadeNode {
        gamma,
        support,
        subsystem,
        dual_coxeter,
        e_set,
        heisenberg_pairs,
        children,
    })
}

/// Match `E(γ) ∖ {γ}` by `μ ↦ γ − μ`.
fn heisenberg_matching(gamma: &Root, e_set: &[Root]) -> Result<Vec<(Root, Root)>> {
    let rest: Vec<&Root> = e_set.iter().filter(|r| *r != gamma).collect();
    let mut pairs = Vec::new();
    let mut used = vec![false; rest.len()];
    for a in 0..rest.len() {
        if used[a] {
            continue;
        }
        let twin = gamma.sub(rest[a]);
        let b = (0..rest.len())
            .find(|&b| !used[b] && b != a && *rest[b] == twin)
            .ok_or_else(|| {
                Error::Verification(format!("{} has no Heisenberg twin in E({gamma})", rest[a]))
            })?;
        used[a] = true;
        used[b] = true;
        pairs.push((rest[a].clone(), rest[b].clone()));
    }
    Ok(pairs)
}

/// Heisenberg pairs of a node.
pub fn heisenberg_pairs(node: &CascadeNode) -> &[(Root, Root)] {
    &node.heisenberg_pairs
}

/// Build the cascade forest from the highest roots of the simple components.
pub fn build_cascade(rs: &RootSystem) -> Result<Cascade> {
    let forest: Vec<CascadeNode> = rs
        .highest_roots()
        .into_iter()
        .map(|t| build_node(rs, t))
        .collect::<Result<_>>()?;
    let mut c = Cascade {
        roots: Vec::new(),
        forest,
    };
    c.roots = c.nodes().iter().map(|n| n.gamma.clone()).collect();
    Ok(c)
}

/// Product of reflections over the cascade, in `B` order.
pub fn cascade_product(rs: &RootSystem, c: &Cascade) -> WeylElement {
    c.roots.iter().fold(rs.identity(), |acc, g| {
        acc.multiply(&rs.reflection(g).expect("cascade root"))
    })
}

/// Results of the Kostant identity checks.
#[derive(Clone, Debug, Serialize)]
pub struct KostantReport {
    pub cascade_size: usize,
    pub reflection_length_w0: usize,
    pub product_is_w0: bool,
    pub factors_commute: bool,
    pub partition_of_positive_roots: bool,
    pub strongly_orthogonal: bool,
    pub e_sizes_match_dual_coxeter: bool,
    pub coroot_pairings_are_one: bool,
}

impl KostantReport {
    pub fn all_pass(&self) -> bool {
        self.product_is_w0
            && self.factors_commute
            && self.partition_of_positive_roots
            && self.strongly_orthogonal
            && self.e_sizes_match_dual_coxeter
            && self.coroot_pairings_are_one
            && self.cascade_size == self.reflection_length_w0
    }
}

/// Check the cascade identities; any failure is returned as an error.
pub fn verify_kostant(rs: &RootSystem, c: &Cascade) -> Result<KostantReport> {
    let w0 = rs.longest_element();
    let refl: Vec<WeylElement> = c
        .roots
        .iter()
        .map(|g| rs.reflection(g))
        .collect::<Result<_>>()?;
    let factors_commute = refl.iter().enumerate().all(|(a, x)| {
        refl[a + 1..]
            .iter()
            .all(|y| x.multiply(y) == y.multiply(x))
    });
    let product_is_w0 = cascade_product(rs, c) == w0;
    let nodes = c.nodes();
    let mut count = vec![0usize; rs.num_positive()];
    let mut all_positive = true;
    for n in &nodes {
        for r in &n.e_set {
            match rs.root_id(&r.coords) {
                Some(id) => count[id] += 1,
                None => all_positive = false,
            }
        }
    }
    let partition_of_positive_roots = all_positive && count.iter().all(|&k| k == 1);
    let strongly_orthogonal = c.roots.iter().enumerate().all(|(a, x)| {
        c.roots[a + 1..]
            .iter()
            .all(|y| rs.strongly_orthogonal(x, y))
    });
    let e_sizes_match_dual_coxeter = nodes
        .iter()
        .all(|n| n.e_set.len() as u32 == 2 * n.dual_coxeter - 3);
    let coroot_pairings_are_one = nodes.iter().all(|n| {
        n.e_set
            .iter()
            .filter(|m| **m != n.gamma)
            .all(|m| rs.coroot_pairing(&m.coords, &n.gamma) == 1)
    });
    let report = KostantReport {
        cascade_size: c.len(),
        reflection_length_w0: rs.reflection_length(&w0),
        product_is_w0,
        factors_commute,
        partition_of_positive_roots,
        strongly_orthogonal,
        e_sizes_match_dual_coxeter,
        coroot_pairings_are_one,
    };
    if !report.all_pass() {
        return Err(Error::Verification(format!(
            "Kostant identities fail for {}: {report:?}",
            rs.cartan_type()
        )));
    }
    Ok(report)
}

/// Expected `|B|` for a simple type.
pub fn expected_cascade_size(letter: Letter, rank: usize) -> usize {
    match letter {
        Letter::A => rank.div_ceil(2),
        Letter::B | Letter::C => rank,
        Letter::D => rank - rank % 2,
        Letter::E => match rank {
            6 => 4,
            7 => 7,
            _ => 8,
        },
        Letter::F => 4,
        Letter::G => 2,
    }
}
