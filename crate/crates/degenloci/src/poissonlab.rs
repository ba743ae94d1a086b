//! The standard Poisson structure on translated big cells of `SL_{n+1}/B₊`.
//!
//! A chart at `v` is `u ↦ v̇ u B₊` with `u` lower unitriangular, entries
//! `x_ij` (`i > j`). Brackets are reported as `{x_a, x_b}` with `a` after
//! `b` in row-major order, which is the coefficient of `∂_a ∧ ∂_b`.

use crate::error::{Error, Result};
use crate::polyalg::{
    ideal_equal, intersect, GbOptions, Ideal, MonomialOrder, Polynomial, Ring, RingRef,
};
use crate::rootsys::RootSystem;
use crate::weyl::oneline;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

type PMat = Vec<Vec<Polynomial>>;

#[derive(Clone, Debug)]
pub struct Chart {
    n: usize,
    perm: Vec<usize>,
    word: Vec<usize>,
    vdot: Vec<Vec<i64>>,
    vars: Vec<(usize, usize)>,
    ring: RingRef,
}

/// Chart variables `(i, j)`, 1-based, in row-major order.
pub fn chart_variables(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 2..=n + 1 {
        for j in 1..i {
            out.push((i, j));
        }
    }
    out
}

pub fn var_name(i: usize, j: usize) -> String {
    format!("x{i}{j}")
}

impl Chart {
    /// Chart at the permutation `perm` of `1..=n+1`.
    pub fn new(n: usize, perm: &[usize]) -> Result<Chart> {
        if n == 0 {
            return Err(Error::InvalidType("SL1 has no flag variety".into()));
        }
        let rs = RootSystem::parse(&format!("A{n}"))?;
        let w = oneline::from_permutation(&rs, perm)?;
        let word = rs.reduced_word(&w).0;
        let size = n + 1;
        let mut vdot = identity(size);
        for &i in &word {
            let mut s = identity(size);
            s[i - 1][i - 1] = 0;
            s[i][i] = 0;
            s[i - 1][i] = 1;
            s[i][i - 1] = -1;
            vdot = int_mul(&vdot, &s);
        }
        let vars = chart_variables(n);
        let ring = Ring::new(
            vars.iter().map(|&(i, j)| var_name(i, j)).collect(),
            MonomialOrder::Grevlex,
        );
        Ok(Chart {
            n,
            perm: perm.to_vec(),
            word,
            vdot,
            vars,
            ring,
        })
    }

    /// Chart from one-line notation such as `2143`.
    pub fn parse(n: usize, s: &str) -> Result<Chart> {
        let perm: Vec<usize> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Parse(format!("bad one-line string {s:?}")))?;
        Chart::new(n, &perm)
    }

    pub fn big_cell(n: usize) -> Chart {
        Chart::new(n, &(1..=n + 1).collect::<Vec<_>>()).expect("identity permutation")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn label(&self) -> String {
        self.perm.iter().map(|d| d.to_string()).collect()
    }

    /// Reduced word used to build the representative.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn representative(&self) -> &[Vec<i64>] {
        &self.vdot
    }

    pub fn variables(&self) -> &[(usize, usize)] {
        &self.vars
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    fn u(&self) -> PMat {
        let size = self.n + 1;
        let mut m = const_mat(&self.ring, &identity_rat(size));
        for (k, &(i, j)) in self.vars.iter().enumerate() {
            m[i - 1][j - 1] = Polynomial::var(&self.ring, k);
        }
        m
    }

    fn u_inverse(&self) -> PMat {
        // u = 1 + N with N nilpotent
        let size = self.n + 1;
        let mut neg_n = self.u();
        for (r, row) in neg_n.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e = if r == c { Polynomial::zero(&self.ring) } else { e.neg() };
            }
        }
        let mut acc = const_mat(&self.ring, &identity_rat(size));
        let mut pow = acc.clone();
        for _ in 0..size {
            pow = pmat_mul(&pow, &neg_n);
            acc = pmat_add(&acc, &pow);
        }
        acc
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

fn identity_rat(n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

fn int_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn const_mat(ring: &RingRef, m: &[Vec<BigRational>]) -> PMat {
    m.iter()
        .map(|row| row.iter().map(|c| Polynomial::constant(ring, c.clone())).collect())
        .collect()
}

fn pmat_mul(a: &PMat, b: &PMat) -> PMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Polynomial::zero(a[0][0].ring());
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc = acc.add(&a[i][k].mul(&b[k][j]).unwrap()).unwrap();
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn pmat_add(a: &PMat, b: &PMat) -> PMat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.add(y).unwrap()).collect())
        .collect()
}

fn to_rat(x: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    x.iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect()
}

/// The fundamental vector field of `X`, one component per chart variable.
pub fn vector_field(chart: &Chart, x: &[Vec<i64>]) -> Result<Vec<Polynomial>> {
    let size = chart.n + 1;
    if x.len() != size || x.iter().any(|r| r.len() != size) {
        return Err(Error::Dimension {
            expected: size,
            got: x.len(),
        });
    }
    if (0..size).map(|i| x[i][i]).sum::<i64>() != 0 {
        return Err(Error::NotTraceless);
    }
    Ok(vector_field_rat(chart, &to_rat(x)))
}

fn vector_field_rat(chart: &Chart, x: &[Vec<BigRational>]) -> Vec<Polynomial> {
    let size = chart.n + 1;
    // v̇ is a signed permutation matrix, so v̇⁻¹ = v̇ᵀ
    let vd = to_rat(&chart.vdot);
    let y: Vec<Vec<BigRational>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let mut s = BigRational::zero();
                    for a in 0..size {
                        for b in 0..size {
                            if !vd[a][i].is_zero() && !vd[b][j].is_zero() {
                                s += &vd[a][i] * &x[a][b] * &vd[b][j];
                            }
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    let u = chart.u();
    let z = pmat_mul(&pmat_mul(&chart.u_inverse(), &const_mat(&chart.ring, &y)), &u);
    let mut lower = z;
    for (r, row) in lower.iter_mut().enumerate() {
        for e in row.iter_mut().skip(r) {
            *e = Polynomial::zero(&chart.ring);
        }
    }
    let du = pmat_mul(&u, &lower);
    chart.vars.iter().map(|&(i, j)| du[i - 1][j - 1].clone()).collect()
}

fn elementary(size: usize, i: usize, j: usize, c: &BigRational) -> Vec<Vec<BigRational>> {
    let mut m = vec![vec![BigRational::zero(); size]; size];
    m[i][j] = c.clone();
    m
}

/// Antisymmetric matrix of brackets of chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonMatrix {
    names: Vec<String>,
    entries: PMat,
}

impl PoissonMatrix {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `{x_a, x_b}` by variable index.
    pub fn entry(&self, a: usize, b: usize) -> &Polynomial {
        &self.entries[a][b]
    }

    /// `{x_a, x_b}` by variable name.
    pub fn bracket(&self, a: &str, b: &str) -> Option<&Polynomial> {
        let ia = self.names.iter().position(|n| n == a)?;
        let ib = self.names.iter().position(|n| n == b)?;
        Some(&self.entries[ia][ib])
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| {
            self.entries[a][a].is_zero()
                && (0..n).all(|b| self.entries[a][b] == self.entries[b][a].neg())
        })
    }

    /// `Σ_cyc {x_a, {x_b, x_c}} = 0` for every triple.
    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.dim();
        let ham = |a: usize, f: &Polynomial| -> Polynomial {
            let mut acc = Polynomial::zero(f.ring());
            for q in 0..n {
                let d = f.derivative(q);
                if !d.is_zero() && !self.entries[a][q].is_zero() {
                    acc = acc.add(&self.entries[a][q].mul(&d).unwrap()).unwrap();
                }
            }
            acc
        };
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let s = ham(a, &self.entries[b][c])
                        .add(&ham(b, &self.entries[c][a]))
                        .unwrap()
                        .add(&ham(c, &self.entries[a][b]))
                        .unwrap();
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Entries `(a, b)` with `a > b`, ordered by `b` then `a`.
    pub fn lower_entries(&self) -> Vec<(usize, usize, &Polynomial)> {
        let n = self.dim();
        let mut out = Vec::new();
        for b in 0..n {
            for a in b + 1..n {
                out.push((a, b, &self.entries[a][b]));
            }
        }
        out
    }
}

impl fmt::Display for PoissonMatrix {
    /// Bivector form, e.g. `(-x21*x31) ∂31∧∂21 + …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .lower_entries()
            .into_iter()
            .filter(|(_, _, p)| !p.is_zero())
            .map(|(a, b, p)| {
                format!(
                    "({p}) ∂{}∧∂{}",
                    &self.names[a][1..],
                    &self.names[b][1..]
                )
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `π = Σ_β χ(e_β) ∧ χ(f_β)` on the chart.
pub fn poisson_matrix(chart: &Chart) -> PoissonMatrix {
    poisson_matrix_scaled(chart, &BigRational::one())
}

/// Same with `(e_β, f_β)` replaced by `(λ e_β, λ⁻¹ f_β)`.
pub fn poisson_matrix_scaled(chart: &Chart, lambda: &BigRational) -> PoissonMatrix {
    let size = chart.n + 1;
    let inv = BigRational::one() / lambda;
    let dim = chart.vars.len();
    let zero = Polynomial::zero(&chart.ring);
    let mut entries = vec![vec![zero; dim]; dim];
    for i in 0..size {
        for j in i + 1..size {
            let e = vector_field_rat(chart, &elementary(size, i, j, lambda));
            let f = vector_field_rat(chart, &elementary(size, j, i, &inv));
            for a in 0..dim {
                for b in 0..dim {
                    if a == b {
                        continue;
                    }
                    let t = e[a].mul(&f[b]).unwrap().sub(&e[b].mul(&f[a]).unwrap()).unwrap();
                    entries[a][b] = entries[a][b].add(&t).unwrap();
                }
            }
        }
    }
    PoissonMatrix {
        names: chart.ring.vars().to_vec(),
        entries,
    }
}

/// Torus weight of `x_ij`: `ε_j - ε_i`.
pub fn torus_weights(n: usize) -> Vec<Vec<i64>> {
    chart_variables(n)
        .into_iter()
        .map(|(i, j)| {
            let mut w = vec![0; n + 1];
            w[j - 1] += 1;
            w[i - 1] -= 1;
            w
        })
        .collect()
}

/// On a big cell, every bracket is homogeneous of weight `wt(x_a) + wt(x_b)`.
pub fn brackets_torus_homogeneous(pm: &PoissonMatrix, n: usize) -> bool {
    let wts = torus_weights(n);
    let dim = pm.dim();
    (0..dim).all(|a| {
        (0..dim).all(|b| {
            let p = &pm.entries[a][b];
            let want: Vec<i64> = wts[a].iter().zip(&wts[b]).map(|(x, y)| x + y).collect();
            p.terms().iter().all(|(m, _)| {
                let mut d = vec![0i64; n + 1];
                for (k, &e) in m.0.iter().enumerate() {
                    for (x, w) in d.iter_mut().zip(&wts[k]) {
                        *x += e as i64 * w;
                    }
                }
                d == want
            })
        })
    })
}

/// Ideal generated by the nonzero brackets, deduplicated up to sign.
pub fn degeneracy_ideal(chart: &Chart) -> Ideal {
    degeneracy_ideal_of(chart, &poisson_matrix(chart))
}

fn degeneracy_ideal_of(chart: &Chart, pm: &PoissonMatrix) -> Ideal {
    let mut gens: Vec<Polynomial> = Vec::new();
    for (_, _, p) in pm.lower_entries() {
        if p.is_zero() {
            continue;
        }
        let neg = p.neg();
        if !gens.iter().any(|g| g == p || *g == neg) {
            gens.push(p.clone());
        }
    }
    Ideal::new(&chart.ring, gens).expect("entries live in the chart ring")
}

/// First chart variable `f` with `f² ∈ I` and `f ∉ I`.
pub fn nonreduced_witness(chart: &Chart, opts: &GbOptions) -> Result<Option<String>> {
    witness_in(chart, &degeneracy_ideal(chart), opts)
}

fn witness_in(chart: &Chart, ideal: &Ideal, opts: &GbOptions) -> Result<Option<String>> {
    let gb = ideal.groebner(opts)?;
    for k in 0..chart.vars.len() {
        let x = Polynomial::var(&chart.ring, k);
        if gb.contains(&x.pow(2))? && !gb.contains(&x)? {
            return Ok(Some(chart.ring.vars()[k].clone()));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartReport {
    pub chart: String,
    pub generators: usize,
    pub witness: Option<String>,
    pub timed_out: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub n: usize,
    pub charts: Vec<ChartReport>,
}

impl ScanReport {
    pub fn witness_charts(&self) -> Vec<String> {
        self.charts
            .iter()
            .filter(|c| c.witness.is_some())
            .map(|c| c.chart.clone())
            .collect()
    }

    pub fn timeouts(&self) -> usize {
        self.charts.iter().filter(|c| c.timed_out).count()
    }

    /// Orbits of the witness set under `v ↦ w₀v` and `v ↦ w₀vw₀`, or `None`
    /// if the set is not closed under them.
    pub fn witness_orbits(&self) -> Option<Vec<Vec<String>>> {
        let set: Vec<Vec<usize>> = self
            .witness_charts()
            .iter()
            .map(|s| s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect())
            .collect();
        let m = self.n + 2;
        let flip = |p: &Vec<usize>| -> Vec<usize> { p.iter().map(|&x| m - x).collect() };
        let diag = |p: &Vec<usize>| -> Vec<usize> { p.iter().rev().map(|&x| m - x).collect() };
        let mut seen = vec![false; set.len()];
        let mut orbits = Vec::new();
        for i in 0..set.len() {
            if seen[i] {
                continue;
            }
            let mut orbit = vec![set[i].clone()];
            let mut k = 0;
            while k < orbit.len() {
                for img in [flip(&orbit[k]), diag(&orbit[k])] {
                    let j = set.iter().position(|q| *q == img)?;
                    if !orbit.contains(&img) {
                        orbit.push(img);
                    }
                    seen[j] = true;
                }
                k += 1;
            }
            seen[i] = true;
            let mut names: Vec<String> = orbit
                .iter()
                .map(|p| p.iter().map(|d| d.to_string()).collect())
                .collect();
            names.sort();
            orbits.push(names);
        }
        Some(orbits)
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Witness scan over every chart `v ∈ S_{n+1}`, in parallel.
pub fn scan_cells(n: usize, opts: &GbOptions) -> Result<ScanReport> {
    if !(1..=3).contains(&n) {
        return Err(Error::InvalidType(format!(
            "cell scans are limited to SL2, SL3 and SL4, got n = {n}"
        )));
    }
    let perms = permutations(n + 1);
    let charts = perms
        .par_iter()
        .map(|p| {
            let chart = Chart::new(n, p)?;
            let ideal = degeneracy_ideal(&chart);
            let generators = ideal.generators().len();
            Ok(match witness_in(&chart, &ideal, opts) {
                Ok(witness) => ChartReport {
                    chart: chart.label(),
                    generators,
                    witness,
                    timed_out: false,
                },
                Err(Error::Timeout(_)) => ChartReport {
                    chart: chart.label(),
                    generators,
                    witness: None,
                    timed_out: true,
                },
                Err(e) => return Err(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport { n, charts })
}

/// Displayed primary components of the big-cell ideal for SL3.
pub const SL3_COMPONENTS: [&[&str]; 3] = [
    &["x32", "x31"],
    &["x31", "x21"],
    &["x32^2", "x31*x32", "x21*x32 - 2*x31", "x21*x31", "x21^2"],
];

/// Displayed primary components of the big-cell ideal for SL4.
pub const SL4_COMPONENTS: [&[&str]; 3] = [
    &["x42", "x41", "x32", "x31"],
    &["x43", "x42", "x41", "x31", "x21"],
    &[
        "x43^2",
        "x42*x43",
        "x41*x43",
        "x32*x43 - 2*x42",
        "x31*x43 - 2*x41",
        "x41*x42",
        "x32*x42",
        "x21*x42 - 2*x41",
        "x32*x41",
        "x31*x41",
        "x21*x41",
        "x32^2",
        "x31*x32",
        "x21*x32 - 2*x31",
        "x21*x31",
        "x21^2",
    ],
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    /// `I ⊆ Q_k` for each listed component.
    pub contained: Vec<bool>,
    /// `I = Q_1 ∩ Q_2 ∩ Q_3`; `None` if not attempted or timed out.
    pub equal: Option<bool>,
}

impl DecompositionReport {
    pub fn all_pass(&self) -> bool {
        self.contained.iter().all(|&b| b) && self.equal == Some(true)
    }
}

/// Check a listed decomposition of the big-cell ideal. With `full = false`
/// only containments are checked. A timeout in the intersection is
/// reported as `equal: None`.
pub fn verify_decomposition(
    n: usize,
    components: &[&[&str]],
    full: bool,
    opts: &GbOptions,
) -> Result<DecompositionReport> {
    let chart = Chart::big_cell(n);
    let ideal = degeneracy_ideal(&chart);
    let comps = components
        .iter()
        .map(|g| Ideal::parse(chart.ring(), g))
        .collect::<Result<Vec<_>>>()?;
    let mut contained = Vec::new();
    for q in &comps {
        let mut ok = true;
        for g in ideal.generators() {
            ok &= q.contains(g, opts)?;
        }
        contained.push(ok);
    }
    let equal = if full {
        let run = || -> Result<bool> {
            let mut acc = comps[0].clone();
            for q in &comps[1..] {
                acc = intersect(&acc, q, opts)?;
            }
            ideal_equal(&acc, &ideal, opts)
        };
        match run() {
            Ok(b) => Some(b),
            Err(Error::Timeout(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(DecompositionReport { contained, equal })
}

/// The SL3 big-cell decomposition, including the full equality.
pub fn verify_sl3_decomposition(opts: &GbOptions) -> Result<DecompositionReport> {
    verify_decomposition(2, &SL3_COMPONENTS, true, opts)
}
