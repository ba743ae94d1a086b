use degenloci::bruhat::bruhat_leq;
use degenloci::cascade::build_cascade;
use degenloci::deodhar::distinguished_subwords;
use degenloci::gcr::{is_gcr_cond3, is_gcr_cond4, is_gcr_cond6};
use degenloci::parabolic::{min_coset_rep, ParabolicSubset};
use degenloci::poissonlab::{poisson_matrix, Chart};
use degenloci::polyalg::{
    buchberger, ideal_equal, normal_form, GbOptions, Ideal, Monomial, MonomialOrder, Polynomial,
    Ring, RingRef,
};
use degenloci::{Root, RootSystem, WeylElement, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use std::collections::HashSet;
use std::sync::OnceLock;
use std::time::Duration;

const TYPES: [&str; 10] = ["A3", "A5", "B3", "B4", "C4", "D4", "D5", "F4", "G2", "E6"];

fn systems() -> &'static Vec<RootSystem> {
    static S: OnceLock<Vec<RootSystem>> = OnceLock::new();
    S.get_or_init(|| TYPES.iter().map(|t| RootSystem::parse(t).unwrap()).collect())
}

fn element(rs: &RootSystem, letters: &[usize]) -> WeylElement {
    let word = Word(letters.iter().map(|&i| i % rs.rank() + 1).collect());
    rs.word_element(&word).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn root(rs: &RootSystem, k: usize) -> Root {
    rs.positive_roots()[k % rs.num_positive()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_are_isometric_involutions(
        t in 0..TYPES.len(),
        b in 0usize..200,
        c in 0usize..200,
        xs in prop::collection::vec((-20i64..20, 1i64..9), 8),
        ys in prop::collection::vec((-20i64..20, 1i64..9), 8),
    ) {
        let rs = &systems()[t];
        let n = rs.rank();
        let beta = root(rs, b);
        let gamma = root(rs, c).neg();
        prop_assert_eq!(rs.reflect_root(&beta, &rs.reflect_root(&beta, &gamma)), gamma);
        let x: Vec<_> = xs[..n].iter().map(|&(p, q)| rat(p, q)).collect();
        let y: Vec<_> = ys[..n].iter().map(|&(p, q)| rat(p, q)).collect();
        let (rx, ry) = (rs.reflect(&beta, &x).unwrap(), rs.reflect(&beta, &y).unwrap());
        prop_assert_eq!(rs.pairing(&rx, &ry).unwrap(), rs.pairing(&x, &y).unwrap());
        prop_assert_eq!(rs.reflect(&beta, &rx).unwrap(), x);
    }

    #[test]
    fn positive_roots_are_closed(t in 0..TYPES.len(), b in 0usize..200, c in 0usize..200) {
        let rs = &systems()[t];
        if let Some(s) = rs.add_roots(&root(rs, b), &root(rs, c)) {
            prop_assert!(s.is_positive());
        }
    }

    #[test]
    fn lengths_agree(t in 0..TYPES.len(), letters in prop::collection::vec(0usize..8, 0..30)) {
        let rs = &systems()[t];
        let w = element(rs, &letters);
        let l = rs.length(&w);
        prop_assert!(l <= letters.len() && (letters.len() - l) % 2 == 0);
        prop_assert_eq!(rs.reduced_word(&w).len(), l);
        prop_assert_eq!(rs.inversion_set(&w).len(), l);
        let ld = rs.reflection_length(&w);
        prop_assert!(ld <= l && (l - ld) % 2 == 0);
        prop_assert_eq!(rs.length(&rs.inverse(&w)), l);
    }

    #[test]
    fn bruhat_respects_length(
        t in 0..TYPES.len(),
        a in prop::collection::vec(0usize..8, 0..20),
        b in prop::collection::vec(0usize..8, 0..20),
    ) {
        let rs = &systems()[t];
        let (v, w) = (element(rs, &a), element(rs, &b));
        if bruhat_leq(rs, &v, &w) {
            let (lv, lw) = (rs.length(&v), rs.length(&w));
            prop_assert!(lv <= lw);
            prop_assert_eq!(lv == lw, v == w);
        }
        prop_assert!(bruhat_leq(rs, &v, &v));
    }

    /// The three GCR conditions agree on sampled pairs beyond the exhaustive sweep.
    #[test]
    fn gcr_conditions_agree(
        t in 0..TYPES.len(),
        word in prop::collection::vec(0usize..8, 0..24),
        mask in any::<u32>(),
    ) {
        let rs = &systems()[t];
        let w = element(rs, &word);
        let red = rs.reduced_word(&w);
        // v from a subword, so v ≤ w
        let kept: Vec<usize> = red.0.iter().enumerate()
            .filter(|(k, _)| mask >> (k % 32) & 1 == 1)
            .map(|(_, &i)| i - 1)
            .collect();
        let v = element(rs, &kept);
        let c3 = is_gcr_cond3(rs, &v, &w).unwrap();
        prop_assert_eq!(c3, is_gcr_cond4(rs, &v, &w));
        let c6 = is_gcr_cond6(rs, &v, &w).unwrap();
        prop_assert_eq!(c3, c6.is_some());
        if let Some(p) = c6 {
            for (i, a) in p.witness_roots.iter().enumerate() {
                for b in &p.witness_roots[i + 1..] {
                    prop_assert!(rs.orthogonal(a, b));
                }
            }
        }
    }

    #[test]
    fn distinguished_statistics(
        t in 0..4usize,
        word in prop::collection::vec(0usize..8, 0..12),
        mask in any::<u16>(),
    ) {
        let rs = &systems()[[0, 2, 5, 8][t]];
        let w = element(rs, &word);
        let red = rs.reduced_word(&w);
        let kept: Vec<usize> = red.0.iter().enumerate()
            .filter(|(k, _)| mask >> (k % 16) & 1 == 1)
            .map(|(_, &i)| i - 1)
            .collect();
        let v = element(rs, &kept);
        let gap = rs.length(&w) - rs.length(&v);
        let bound = rs.reflection_length(&v.multiply(&rs.inverse(&w)));
        let ds = distinguished_subwords(rs, &red, &v).unwrap();
        prop_assert_eq!(ds.iter().filter(|d| d.m == 0).count(), 1);
        for d in ds {
            prop_assert_eq!(d.n + 2 * d.m, gap);
            prop_assert!(d.n >= bound);
        }
    }

    #[test]
    fn coset_factorization(
        t in 0..TYPES.len(),
        word in prop::collection::vec(0usize..8, 0..30),
        jmask in any::<u8>(),
    ) {
        let rs = &systems()[t];
        let w = element(rs, &word);
        let idx: Vec<usize> = (1..=rs.rank()).filter(|i| jmask >> (i - 1) & 1 == 1).collect();
        let j = ParabolicSubset::new(rs, idx).unwrap();
        let (wp, wl) = min_coset_rep(rs, &w, &j);
        prop_assert_eq!(wp.multiply(&wl), w.clone());
        prop_assert_eq!(rs.length(&wp) + rs.length(&wl), rs.length(&w));
    }

    /// An inversion set avoiding γ holds at most one twin of each Heisenberg pair of E(γ).
    #[test]
    fn inversion_sets_split_heisenberg_pairs(
        t in 0..TYPES.len(),
        word in prop::collection::vec(0usize..8, 0..30),
    ) {
        let rs = &systems()[t];
        let u = element(rs, &word);
        let inv: HashSet<Root> = rs.inversion_set(&u).into_iter().collect();
        let c = build_cascade(rs).unwrap();
        for node in c.nodes() {
            if inv.contains(&node.gamma) {
                continue;
            }
            for (a, b) in &node.heisenberg_pairs {
                prop_assert!(a != b && a.is_positive() && b.is_positive());
                prop_assert!(!(inv.contains(a) && inv.contains(b)));
            }
        }
    }

    #[test]
    fn poisson_matrices_are_poisson(n in 1usize..=3, seed in any::<u64>()) {
        let mut perm: Vec<usize> = (1..=n + 1).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            perm.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        let pm = poisson_matrix(&Chart::new(n, &perm).unwrap());
        prop_assert!(pm.is_antisymmetric());
        prop_assert!(pm.satisfies_jacobi());
    }
}

fn ring() -> RingRef {
    static R: OnceLock<RingRef> = OnceLock::new();
    R.get_or_init(|| {
        Ring::new(
            vec!["x".into(), "y".into(), "z".into()],
            MonomialOrder::Grevlex,
        )
    })
    .clone()
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..5), 1..4).prop_map(|ts| {
        let r = ring();
        let terms = ts
            .into_iter()
            .map(|((a, b, c), k)| (Monomial(vec![a, b, c]), rat(k, 1)))
            .collect();
        Polynomial::from_terms(&r, terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn groebner_properties(gens in prop::collection::vec(poly(), 1..4), f in poly()) {
        let r = ring();
        let opts = GbOptions { timeout: Duration::from_secs(20) };
        let ideal = Ideal::new(&r, gens.clone()).unwrap();
        let gb = buchberger(&ideal, &opts);
        prop_assume!(gb.is_ok());
        let gb = gb.unwrap();
        prop_assert!(gb.s_pairs_reduce());
        let again = buchberger(&Ideal::new(&r, gens.clone()).unwrap(), &opts).unwrap();
        let show = |g: &degenloci::polyalg::GroebnerBasis| {
            g.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>()
        };
        prop_assert_eq!(show(&gb), show(&again));
        let nf = normal_form(&f, gb.polys()).unwrap();
        prop_assert_eq!(normal_form(&nf, gb.polys()).unwrap(), nf.clone());
        prop_assert!(gb.contains(&f.sub(&nf).unwrap()).unwrap());
        for g in &gens {
            prop_assert!(gb.contains(g).unwrap());
        }
        // same ideal from a different generating set
        let mut shuffled = gens.clone();
        shuffled.reverse();
        shuffled.push(gens[0].mul(&f).unwrap());
        let other = Ideal::new(&r, shuffled).unwrap();
        prop_assert!(ideal_equal(&ideal, &other, &opts).unwrap());
        prop_assert!(ideal_equal(&other, &ideal, &opts).unwrap());
    }
}
