//! Buchberger's algorithm and the ideal operations built on it.

use super::{Monomial, MonomialOrder, Polynomial, Ring, RingRef};
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::One;
use std::collections::HashSet;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbOptions {
    pub timeout: Duration,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            timeout: Duration::from_secs(60),
        }
    }
}

struct Clock {
    start: Instant,
    limit: Duration,
}

impl Clock {
    fn new(opts: &GbOptions) -> Clock {
        Clock {
            start: Instant::now(),
            limit: opts.timeout,
        }
    }

    fn check(&self) -> Result<()> {
        if self.start.elapsed() > self.limit {
            Err(Error::Timeout(self.limit))
        } else {
            Ok(())
        }
    }
}

fn same_ring(a: &RingRef, b: &RingRef) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

fn reduce(f: &Polynomial, g: &[Polynomial], clock: Option<&Clock>) -> Result<Polynomial> {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, BigRational)> = Vec::new();
    let mut steps = 0u64;
    while let Some((lm, lc)) = p.terms.first().cloned() {
        steps += 1;
        if steps % 256 == 0 {
            if let Some(c) = clock {
                c.check()?;
            }
        }
        let div = g
            .iter()
            .find(|h| h.leading_monomial().is_some_and(|m| m.divides(&lm)));
        match div {
            Some(h) => {
                let hm = h.leading_monomial().unwrap();
                let c = -(&lc / h.leading_coefficient().unwrap());
                p = p.add_scaled(&c, &hm.quotient(&lm), h);
            }
            None => {
                rem.push((lm, lc));
                p.terms.remove(0);
            }
        }
    }
    // remainder terms were produced in decreasing order
    Ok(Polynomial { ring, terms: rem })
}

/// Full multivariate division remainder of `f` by `g`.
pub fn normal_form(f: &Polynomial, g: &[Polynomial]) -> Result<Polynomial> {
    for h in g {
        same_ring(f.ring(), h.ring())?;
    }
    reduce(f, g, None)
}

fn s_polynomial(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (am, bm) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
    let l = am.lcm(bm);
    let ca = BigRational::one() / a.leading_coefficient().unwrap();
    let cb = -(BigRational::one() / b.leading_coefficient().unwrap());
    Polynomial::zero(a.ring())
        .add_scaled(&ca, &am.quotient(&l), a)
        .add_scaled(&cb, &bm.quotient(&l), b)
}

/// A reduced Gröbner basis, sorted by decreasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: RingRef,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_one()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, &self.polys)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Every S-polynomial of a basis pair reduces to zero.
    pub fn s_pairs_reduce(&self) -> bool {
        let g = &self.polys;
        (0..g.len()).all(|i| {
            (i + 1..g.len()).all(|j| reduce(&s_polynomial(&g[i], &g[j]), g, None).unwrap().is_zero())
        })
    }
}

/// Generators over a common ring, with a lazily computed basis.
#[derive(Debug)]
pub struct Ideal {
    ring: RingRef,
    generators: Vec<Polynomial>,
    basis: OnceLock<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            basis: self.basis.clone(),
        }
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, generators: Vec<Polynomial>) -> Result<Ideal> {
        for g in &generators {
            same_ring(ring, g.ring())?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators,
            basis: OnceLock::new(),
        })
    }

    /// Parse each generator with the text grammar.
    pub fn parse(ring: &RingRef, gens: &[&str]) -> Result<Ideal> {
        let polys = gens
            .iter()
            .map(|s| super::parse_polynomial(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner(&self, opts: &GbOptions) -> Result<&GroebnerBasis> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = buchberger(self, opts)?;
        Ok(self.basis.get_or_init(|| b))
    }

    pub fn contains(&self, f: &Polynomial, opts: &GbOptions) -> Result<bool> {
        same_ring(&self.ring, f.ring())?;
        self.groebner(opts)?.contains(f)
    }
}

/// Reduced Gröbner basis by Buchberger with the normal selection strategy
/// and both classical pair criteria.
pub fn buchberger(ideal: &Ideal, opts: &GbOptions) -> Result<GroebnerBasis> {
    let clock = Clock::new(opts);
    let ring = ideal.ring.clone();
    let mut g: Vec<Polynomial> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for f in &ideal.generators {
        let h = reduce(f, &g, Some(&clock))?;
        if !h.is_zero() {
            push(&mut g, &mut pending, h.monic());
        }
    }
    while !pending.is_empty() {
        clock.check()?;
        let &(i, j) = pending
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let l1 = lcm_of(&g, a, b);
                let l2 = lcm_of(&g, c, d);
                l1.degree()
                    .cmp(&l2.degree())
                    .then_with(|| ring.cmp(&l1, &l2))
                    .then_with(|| (a, b).cmp(&(c, d)))
            })
            .unwrap();
        pending.remove(&(i, j));
        let (mi, mj) = (g[i].leading_monomial().unwrap(), g[j].leading_monomial().unwrap());
        if mi.coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].leading_monomial().unwrap().divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let h = reduce(&s_polynomial(&g[i], &g[j]), &g, Some(&clock))?;
        if !h.is_zero() {
            push(&mut g, &mut pending, h.monic());
        }
    }
    Ok(GroebnerBasis {
        polys: interreduce(&ring, g, &clock)?,
        ring,
    })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn lcm_of(g: &[Polynomial], a: usize, b: usize) -> Monomial {
    g[a].leading_monomial()
        .unwrap()
        .lcm(g[b].leading_monomial().unwrap())
}

fn push(g: &mut Vec<Polynomial>, pending: &mut HashSet<(usize, usize)>, h: Polynomial) {
    let n = g.len();
    for k in 0..n {
        pending.insert((k, n));
    }
    g.push(h);
}

fn interreduce(ring: &RingRef, mut g: Vec<Polynomial>, clock: &Clock) -> Result<Vec<Polynomial>> {
    g.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut min: Vec<Polynomial> = Vec::new();
    for p in g {
        let m = p.leading_monomial().unwrap();
        if !min.iter().any(|q| q.leading_monomial().unwrap().divides(m)) {
            min.push(p);
        }
    }
    let mut out = Vec::with_capacity(min.len());
    for i in 0..min.len() {
        let others: Vec<Polynomial> = min
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        // only tails can reduce: no other leading monomial divides this one
        let (lm, _) = min[i].terms[0].clone();
        let tail = Polynomial {
            ring: ring.clone(),
            terms: min[i].terms[1..].to_vec(),
        };
        let mut r = reduce(&tail, &others, Some(clock))?;
        r.terms.insert(0, (lm, BigRational::one()));
        out.push(r.monic());
    }
    out.sort_by(|a, b| ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    Ok(out)
}

/// `f ∈ I`.
pub fn membership(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.contains(f, &GbOptions::default())
}

fn fresh_name(ring: &Ring, base: &str) -> String {
    let mut name = base.to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// `f ∈ √I` via `1 ∈ I + (1 - y f)` with a fresh variable `y`.
pub fn radical_membership(f: &Polynomial, ideal: &Ideal, opts: &GbOptions) -> Result<bool> {
    same_ring(&ideal.ring, f.ring())?;
    let mut vars = ideal.ring.vars().to_vec();
    vars.push(fresh_name(&ideal.ring, "y"));
    let ext = Ring::new(vars, MonomialOrder::Grevlex);
    let mut gens = ideal
        .generators
        .iter()
        .map(|g| g.map_to(&ext))
        .collect::<Result<Vec<_>>>()?;
    let y = Polynomial::var(&ext, ext.nvars() - 1);
    let yf = y.mul(&f.map_to(&ext)?)?;
    gens.push(Polynomial::one(&ext).sub(&yf)?);
    Ok(buchberger(&Ideal::new(&ext, gens)?, opts)?.is_unit())
}

/// `I ∩ J` by eliminating `t` from `t I + (1 - t) J`.
pub fn intersect(a: &Ideal, b: &Ideal, opts: &GbOptions) -> Result<Ideal> {
    same_ring(&a.ring, &b.ring)?;
    let mut vars = vec![fresh_name(&a.ring, "t")];
    vars.extend(a.ring.vars().iter().cloned());
    let ext = Ring::new(vars, MonomialOrder::Block(1));
    let t = Polynomial::var(&ext, 0);
    let one_minus_t = Polynomial::one(&ext).sub(&t)?;
    let mut gens = Vec::new();
    for f in &a.generators {
        gens.push(t.mul(&f.map_to(&ext)?)?);
    }
    for f in &b.generators {
        gens.push(one_minus_t.mul(&f.map_to(&ext)?)?);
    }
    let gb = buchberger(&Ideal::new(&ext, gens)?, opts)?;
    let kept = gb
        .polys
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.0[0] == 0))
        .map(|p| p.map_to(&a.ring))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&a.ring, kept)
}

/// Equality by mutual membership of generators.
pub fn ideal_equal(a: &Ideal, b: &Ideal, opts: &GbOptions) -> Result<bool> {
    same_ring(&a.ring, &b.ring)?;
    for f in &b.generators {
        if !a.contains(f, opts)? {
            return Ok(false);
        }
    }
    for f in &a.generators {
        if !b.contains(f, opts)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::super::parse_polynomial;
    use super::*;

    fn sl3() -> RingRef {
        Ring::new(
            vec!["x21".into(), "x31".into(), "x32".into()],
            MonomialOrder::Grevlex,
        )
    }

    fn xy() -> RingRef {
        Ring::new(vec!["x".into(), "y".into()], MonomialOrder::Grevlex)
    }

    #[test]
    fn sl3_membership() {
        let r = sl3();
        let i = Ideal::parse(&r, &["x21*x31", "x21*x32 - 2*x31", "x31*x32"]).unwrap();
        let p = |s| parse_polynomial(&r, s).unwrap();
        assert!(membership(&p("x31^2"), &i).unwrap());
        assert!(!membership(&p("x31"), &i).unwrap());
        let gb = i.groebner(&GbOptions::default()).unwrap();
        assert!(gb.s_pairs_reduce());
        let o = GbOptions::default();
        assert!(radical_membership(&p("x31"), &i, &o).unwrap());
    }

    #[test]
    fn trivial_cases() {
        let r = xy();
        let p = |s| parse_polynomial(&r, s).unwrap();
        let o = GbOptions::default();
        let x = Ideal::parse(&r, &["x"]).unwrap();
        assert!(membership(&p("x"), &x).unwrap());
        let x2 = Ideal::parse(&r, &["x^2"]).unwrap();
        assert!(radical_membership(&p("x"), &x2, &o).unwrap());
        assert!(!radical_membership(&p("1 + x"), &x2, &o).unwrap());
        let y = Ideal::parse(&r, &["y"]).unwrap();
        let xy = intersect(&x, &y, &o).unwrap();
        assert!(ideal_equal(&xy, &Ideal::parse(&r, &["x*y"]).unwrap(), &o).unwrap());
        let ii = intersect(&x2, &x2, &o).unwrap();
        assert!(ideal_equal(&ii, &x2, &o).unwrap());
        let unit = Ideal::parse(&r, &["x", "x + 1"]).unwrap();
        assert!(unit.groebner(&o).unwrap().is_unit());
        let zero = Ideal::new(&r, vec![]).unwrap();
        assert!(zero.groebner(&o).unwrap().polys().is_empty());
    }

    #[test]
    fn deterministic_and_reduced() {
        let r = sl3();
        let gens = ["x21^2*x32 - x31", "x21*x31*x32 + x32^2", "x31^3 - x21"];
        let o = GbOptions::default();
        let a = buchberger(&Ideal::parse(&r, &gens).unwrap(), &o).unwrap();
        let b = buchberger(&Ideal::parse(&r, &gens).unwrap(), &o).unwrap();
        let show = |g: &GroebnerBasis| g.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>();
        assert_eq!(show(&a), show(&b));
        assert!(a.s_pairs_reduce());
        for (k, p) in a.polys().iter().enumerate() {
            assert!(p.leading_coefficient().unwrap().is_one());
            let others: Vec<_> = a.polys().iter().enumerate().filter(|&(j, _)| j != k).map(|(_, q)| q).collect();
            for (m, _) in p.terms() {
                assert!(!others.iter().any(|q| q.leading_monomial().unwrap().divides(m)));
            }
        }
    }

    #[test]
    fn mismatch_and_timeout() {
        let r = sl3();
        let f = parse_polynomial(&xy(), "x").unwrap();
        let i = Ideal::parse(&r, &["x21"]).unwrap();
        assert!(matches!(membership(&f, &i), Err(Error::RingMismatch)));
        let hard = Ideal::parse(&r, &["x21^5*x32 - x31^3", "x31^4*x21 - x32^5", "x32^3*x31 - x21^4 + 1"]).unwrap();
        let zero = GbOptions { timeout: Duration::ZERO };
        assert!(matches!(buchberger(&hard, &zero), Err(Error::Timeout(_))));
    }
}
