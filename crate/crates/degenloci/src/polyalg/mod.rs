//! Multivariate polynomials over exact rationals.

mod groebner;
mod parse;

pub use groebner::{
    buchberger, intersect, ideal_equal, membership, normal_form, radical_membership, GbOptions,
    GroebnerBasis, Ideal,
};
pub use parse::parse_polynomial;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Monomial orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    Grevlex,
    Lex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest.
    Block(usize),
}

/// Variable names plus a monomial order; the first variable is the largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(vars: Vec<String>, order: MonomialOrder) -> RingRef {
        Arc::new(Ring { vars, order })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Grevlex => grevlex(&a.0, &b.0),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Block(k) => {
                grevlex(&a.0[..k], &b.0[..k]).then_with(|| grevlex(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(n);
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient(&self, o: &Monomial) -> Monomial {
        Monomial(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

pub type Term = (Monomial, BigRational);

/// A polynomial with terms sorted in decreasing monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<Term>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: BigRational) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.push((Monomial::one(ring.nvars()), c));
        }
        p
    }

    pub fn one(ring: &RingRef) -> Polynomial {
        Polynomial::constant(ring, BigRational::one())
    }

    pub fn var(ring: &RingRef, i: usize) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i), BigRational::one())],
        }
    }

    /// Variable by name.
    pub fn var_named(ring: &RingRef, name: &str) -> Result<Polynomial> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
        Ok(Polynomial::var(ring, i))
    }

    /// Build from arbitrary terms; combines like terms and drops zeros.
    pub fn from_terms(ring: &RingRef, terms: Vec<Term>) -> Polynomial {
        let mut terms = terms;
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.degree() == 0 && self.terms[0].1.is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    fn check_ring(&self, o: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &o.ring) || *self.ring == *o.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// `self + c · m · o`, merging sorted term lists.
    pub(crate) fn add_scaled(&self, c: &BigRational, m: &Monomial, o: &Polynomial) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = o.terms.iter().map(|(bm, bc)| (bm.mul(m), bc * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match ring.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m1, c1) = a.next().unwrap();
                        let (_, c2) = b.next().unwrap();
                        let s = c1 + c2;
                        if !s.is_zero() {
                            out.push((m1.clone(), s));
                        }
                    }
                },
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_ring(o)?;
        Ok(self.add_scaled(&BigRational::one(), &Monomial::one(self.ring.nvars()), o))
    }

    pub fn sub(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_ring(o)?;
        Ok(self.add_scaled(&-BigRational::one(), &Monomial::one(self.ring.nvars()), o))
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_ring(o)?;
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            acc = acc.add_scaled(c, m, o);
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) => self.scale(&(BigRational::one() / c)),
            None => self.clone(),
        }
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let mut e = m.clone();
                e.0[i] -= 1;
                (e, c * rat(m.0[i] as i64))
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Set the listed variables to zero.
    pub fn set_zero(&self, vars: &[usize]) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&i| m.0[i] == 0))
                .cloned()
                .collect(),
        }
    }

    /// Re-express in another ring whose variables include all used ones.
    pub fn map_to(&self, target: &RingRef) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = self.ring.vars.iter().map(|v| target.var_index(v)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| {
                    Error::Parse(format!("variable {} missing in target ring", self.ring.vars[i]))
                })?;
                e[j] = x;
            }
            terms.push((Monomial(e), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Multi-degree homogeneity for a grading that assigns each variable a
    /// weight vector.
    pub fn is_homogeneous(&self, weights: &[Vec<i64>]) -> bool {
        let deg = |m: &Monomial| -> Vec<i64> {
            let k = weights.first().map_or(0, |w| w.len());
            let mut d = vec![0; k];
            for (i, &e) in m.0.iter().enumerate() {
                for (x, w) in d.iter_mut().zip(&weights[i]) {
                    *x += e as i64 * w;
                }
            }
            d
        };
        let mut it = self.terms.iter().map(|(m, _)| deg(m));
        match it.next() {
            None => true,
            Some(first) => it.all(|d| d == first),
        }
    }
}

/// Format a rational as `p` or `p/q`.
pub fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{e}", self.ring.vars[i])),
                }
            }
            let coef = format_rational(&mag);
            if factors.is_empty() {
                write!(f, "{coef}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{coef}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
