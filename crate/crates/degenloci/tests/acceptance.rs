//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `EXPECTED_FAIL` are known to be false as stated; they
//! still print FAIL with the reason, and the run only aborts if one of them
//! starts passing or any other criterion fails.

use degenloci::bruhat::bruhat_leq;
use degenloci::cascade::{build_cascade, verify_kostant};
use degenloci::construct::build_top_pair;
use degenloci::deodhar::{distinguished_subwords, r_polynomial_deodhar, QPoly, RPolyOracle};
use degenloci::gcr::{
    enumerate_gcr, equivalence_sweep, maximal_pairs, verify_powerset_interval, GcrPoset,
};
use degenloci::parabolic::{gcr_p, verify_classes_distinct, verify_p_interval, witness_avoids_levi};
use degenloci::parabolic::{PBruhat, ParabolicSubset};
use degenloci::poissonlab::{
    degeneracy_ideal, nonreduced_witness, poisson_matrix, scan_cells, verify_decomposition,
    verify_sl3_decomposition, Chart, SL4_COMPONENTS,
};
use degenloci::polyalg::{parse_polynomial, GbOptions, Polynomial};
use degenloci::weyl::oneline;
use degenloci::{RootSystem, WeylGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

// time budgets
const SWEEP_BUDGET: Duration = Duration::from_secs(300);
const CASCADE_BUDGET: Duration = Duration::from_secs(60);
const E8_BUDGET: Duration = Duration::from_secs(10);
const SL3_BUDGET: Duration = Duration::from_secs(60);
const SL4_BUDGET: Duration = Duration::from_secs(300);
const SL4_STRETCH_BUDGET: Duration = Duration::from_secs(600);

const GROUP_CAP: usize = 60_000;
/// Largest group on which GCR(W) is enumerated outright.
const DIRECT_GCR_LIMIT: u128 = 10_000;
const B3_RANDOM_PAIRS: usize = 500;
const SEED: u64 = 0;

const SWEEP_TYPES: [&str; 9] = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"];

/// (type, |B|)
const CASCADE_TYPES: [(&str, usize); 17] = [
    ("A1", 1),
    ("A2", 1),
    ("A3", 2),
    ("A4", 2),
    ("A5", 3),
    ("B2", 2),
    ("B3", 3),
    ("B4", 4),
    ("C3", 3),
    ("C4", 4),
    ("D4", 4),
    ("D5", 4),
    ("E6", 4),
    ("E7", 7),
    ("E8", 8),
    ("F4", 4),
    ("G2", 2),
];

const TOP_PAIR_TYPES: [&str; 23] = [
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B2", "B3", "B4", "B5", "C3", "C4", "C5",
    "D4", "D5", "D6", "E6", "E7", "E8", "F4", "G2",
];

/// The eleven d = 2 pairs of S4, grouped by orthogonal root pair.
const S4_D2_TABLE: [(&str, &str); 11] = [
    ("1234", "2143"),
    ("1324", "2413"),
    ("1342", "2431"),
    ("3124", "4213"),
    ("3142", "4231"),
    ("3412", "4321"),
    ("1324", "3142"),
    ("2413", "4231"),
    ("1423", "4132"),
    ("2143", "3412"),
    ("2314", "3241"),
];

const SL3_BIG_CELL: [(&str, &str, &str); 3] = [
    ("x31", "x21", "-x21*x31"),
    ("x32", "x21", "x21*x32 - 2*x31"),
    ("x32", "x31", "-x31*x32"),
];

const SL4_BIG_CELL: [(&str, &str, &str); 13] = [
    ("x31", "x21", "-x31*x21"),
    ("x32", "x21", "x21*x32 - 2*x31"),
    ("x41", "x21", "-x41*x21"),
    ("x42", "x21", "x21*x42 - 2*x41"),
    ("x32", "x31", "-x32*x31"),
    ("x41", "x31", "-x41*x31"),
    ("x42", "x31", "-2*x32*x41"),
    ("x43", "x31", "x31*x43 - 2*x41"),
    ("x42", "x32", "-x32*x42"),
    ("x43", "x32", "x32*x43 - 2*x42"),
    ("x42", "x41", "-x42*x41"),
    ("x43", "x41", "-x43*x41"),
    ("x43", "x42", "-x43*x42"),
];

const EXPECTED_FAIL: [usize; 1] = [12];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Check = Result<Outcome, String>;

/// Groups and GCR posets shared between criteria.
#[derive(Default)]
struct Cache {
    groups: HashMap<String, WeylGroup>,
    posets: HashMap<String, GcrPoset>,
    involution_max: HashMap<String, (usize, usize, usize)>,
}

impl Cache {
    fn group(&mut self, t: &str) -> Result<&WeylGroup, String> {
        if !self.groups.contains_key(t) {
            let rs = RootSystem::parse(t).map_err(|e| e.to_string())?;
            let g = WeylGroup::new(&rs, GROUP_CAP).map_err(|e| e.to_string())?;
            self.groups.insert(t.to_string(), g);
        }
        Ok(&self.groups[t])
    }

    fn poset(&mut self, t: &str) -> Result<&GcrPoset, String> {
        if !self.posets.contains_key(t) {
            let p = enumerate_gcr(self.group(t)?).map_err(|e| e.to_string())?;
            self.posets.insert(t.to_string(), p);
        }
        Ok(&self.posets[t])
    }

    /// (involution count, max reflection length over involutions, l_Δ(w₀))
    fn involutions(&mut self, t: &str) -> Result<(usize, usize, usize), String> {
        if let Some(r) = self.involution_max.get(t) {
            return Ok(*r);
        }
        let g = self.group(t)?;
        let rs = g.root_system();
        let mut count = 0;
        let mut max = 0;
        for w in g.iter() {
            if rs.is_involution(w) {
                count += 1;
                max = max.max(rs.reflection_length(w));
            }
        }
        let top = rs.reflection_length(&rs.longest_element());
        self.involution_max.insert(t.to_string(), (count, max, top));
        Ok((count, max, top))
    }
}

fn c1_equivalence_sweep(cache: &mut Cache) -> Check {
    let t0 = Instant::now();
    let mut parts = Vec::new();
    let mut bad = 0;
    for t in SWEEP_TYPES {
        let rep = equivalence_sweep(cache.group(t)?).map_err(|e| e.to_string())?;
        bad += rep.discrepancies.len();
        parts.push(format!("{t}:{}/{}", rep.gcr_pairs, rep.comparable_pairs));
    }
    let el = t0.elapsed();
    Ok(outcome(
        bad == 0 && el < SWEEP_BUDGET,
        format!("{bad} discrepancies; gcr/comparable {}; {el:.1?}", parts.join(" ")),
    ))
}

fn c2_s3(cache: &mut Cache) -> Check {
    let p = cache.poset("A2")?;
    let by_d = p.count_by_d();
    Ok(outcome(
        p.len() == 14 && by_d == vec![6, 8],
        format!("{} pairs, by d {:?}", p.len(), by_d),
    ))
}

fn c3_s4(cache: &mut Cache) -> Check {
    let rs = RootSystem::parse("A3").unwrap();
    cache.poset("A3")?;
    let g = &cache.groups["A3"];
    let p = &cache.posets["A3"];
    let label = |id: u32| oneline::format(&rs, g.element(id)).unwrap();
    let d2: BTreeSet<(String, String)> = p
        .ids
        .iter()
        .zip(&p.pairs)
        .filter(|(_, q)| q.d == 2)
        .map(|(&(v, w), _)| (label(v), label(w)))
        .collect();
    let want: BTreeSet<(String, String)> = S4_D2_TABLE
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let max = maximal_pairs(p, g);
    let max_d1 = max.iter().filter(|&&k| p.pairs[k].d == 1).count();
    let top = p.pairs.iter().map(|q| q.d).max().unwrap_or(0);
    let cascade = build_cascade(&rs).map_err(|e| e.to_string())?.len();
    Ok(outcome(
        d2 == want && max_d1 == 14 && max.len() == 25 && top == 2 && cascade == 2,
        format!(
            "d=2 pairs {} (table match {}), maximal d=1 {max_d1}, maximal {}, top d {top}, |B| {cascade}",
            d2.len(),
            d2 == want,
            max.len()
        ),
    ))
}

fn c4_powerset(cache: &mut Cache) -> Check {
    let mut checked = 0;
    let mut bad = Vec::new();
    for t in SWEEP_TYPES {
        cache.poset(t)?;
        let g = &cache.groups[t];
        for pair in &cache.posets[t].pairs {
            checked += 1;
            if !verify_powerset_interval(g, pair) {
                bad.push(format!("{t}:{}", pair.d));
            }
        }
    }
    Ok(outcome(
        bad.is_empty(),
        format!("{checked} pairs checked, {} failures {:?}", bad.len(), bad),
    ))
}

fn c5_cascade() -> Check {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    for (t, want) in CASCADE_TYPES {
        let rs = RootSystem::parse(t).map_err(|e| e.to_string())?;
        let c = build_cascade(&rs).map_err(|e| format!("{t}: {e}"))?;
        let ok = match verify_kostant(&rs, &c) {
            Ok(r) => r.all_pass() && r.cascade_size == want && r.reflection_length_w0 == want,
            Err(_) => false,
        };
        let matched = c.nodes().iter().all(|n| {
            let mut covered: Vec<_> = n
                .heisenberg_pairs
                .iter()
                .flat_map(|(a, b)| [a.clone(), b.clone()])
                .collect();
            let sums = n.heisenberg_pairs.iter().all(|(a, b)| a.add(b) == n.gamma);
            let mut rest: Vec<_> = n.e_set.iter().filter(|r| **r != n.gamma).cloned().collect();
            covered.sort_by(|a, b| a.coords.cmp(&b.coords));
            rest.sort_by(|a, b| a.coords.cmp(&b.coords));
            sums && covered == rest
        });
        if !ok || !matched {
            bad.push(t);
        }
    }
    let el = t0.elapsed();
    Ok(outcome(
        bad.is_empty() && el < CASCADE_BUDGET,
        format!("{} types, failures {bad:?}, {el:.1?}", CASCADE_TYPES.len()),
    ))
}

fn c6_r_polynomials(cache: &mut Cache) -> Check {
    let mut gcr_checked = 0;
    let mut bad = 0;
    for t in SWEEP_TYPES {
        cache.poset(t)?;
        let rs = cache.groups[t].root_system().clone();
        for p in &cache.posets[t].pairs {
            gcr_checked += 1;
            let r = r_polynomial_deodhar(&rs, &p.v, &p.w).map_err(|e| e.to_string())?;
            if r != QPoly::q_minus_one_pow(p.d) {
                bad += 1;
            }
        }
    }
    let mut oracle_checked = 0;
    for t in ["A2", "A3", "B2", "G2"] {
        let g = cache.group(t)?;
        let rs = g.root_system();
        let mut oracle = RPolyOracle::new(rs);
        for v in g.iter() {
            for w in g.iter() {
                oracle_checked += 1;
                let a = r_polynomial_deodhar(rs, v, w).map_err(|e| e.to_string())?;
                if a != oracle.r(v, w) {
                    bad += 1;
                }
            }
        }
    }
    let g = cache.group("B3")?;
    let rs = g.root_system();
    let mut oracle = RPolyOracle::new(rs);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..B3_RANDOM_PAIRS {
        let w = rng.gen_range(0..g.len() as u32);
        let below: Vec<u32> = (0..g.len() as u32).filter(|&v| g.leq(v, w)).collect();
        let v = below[rng.gen_range(0..below.len())];
        let (v, w) = (g.element(v), g.element(w));
        oracle_checked += 1;
        if r_polynomial_deodhar(rs, v, w).map_err(|e| e.to_string())? != oracle.r(v, w) {
            bad += 1;
        }
    }
    Ok(outcome(
        bad == 0,
        format!("{gcr_checked} GCR pairs, {oracle_checked} oracle pairs, {bad} mismatches"),
    ))
}

fn c7_deodhar(cache: &mut Cache) -> Check {
    let mut bad = 0;
    let mut gcr = 0;
    let mut subwords = 0;
    for t in SWEEP_TYPES {
        cache.poset(t)?;
        let g = &cache.groups[t];
        let rs = g.root_system();
        for p in &cache.posets[t].pairs {
            gcr += 1;
            let ds = distinguished_subwords(rs, &rs.reduced_word(&p.w), &p.v)
                .map_err(|e| e.to_string())?;
            if ds.len() != 1 || ds[0].m != 0 {
                bad += 1;
            }
        }
        for w in g.iter() {
            let word = rs.reduced_word(w);
            for v in g.iter() {
                if !bruhat_leq(rs, v, w) {
                    continue;
                }
                let gap = rs.length(w) - rs.length(v);
                let bound = rs.reflection_length(&v.multiply(&rs.inverse(w)));
                for d in distinguished_subwords(rs, &word, v).map_err(|e| e.to_string())? {
                    subwords += 1;
                    if d.n + 2 * d.m != gap || d.n < bound {
                        bad += 1;
                    }
                }
            }
        }
    }
    Ok(outcome(
        bad == 0,
        format!("{gcr} GCR pairs, {subwords} distinguished subwords, {bad} violations"),
    ))
}

fn c8_parabolic(cache: &mut Cache) -> Check {
    cache.poset("A3")?;
    let g = &cache.groups["A3"];
    let p = &cache.posets["A3"];
    let rs = g.root_system();
    let mut checked = 0;
    let mut bad = Vec::new();
    for j in ParabolicSubset::all(rs) {
        let pb = PBruhat::new(g, j.clone());
        for k in gcr_p(p, &pb) {
            checked += 1;
            let pair = &p.pairs[k];
            if !verify_p_interval(&pb, pair)
                || !verify_classes_distinct(&pb, pair)
                || !witness_avoids_levi(rs, pair, &j)
            {
                bad.push(format!("{j}:{:?}", p.ids[k]));
            }
        }
    }
    Ok(outcome(
        bad.is_empty() && checked > 0,
        format!("8 subsets, {checked} GCR_P pairs, failures {bad:?}"),
    ))
}

fn c9_construct(cache: &mut Cache) -> Check {
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    let mut e8_time = Duration::ZERO;
    for t in TOP_PAIR_TYPES {
        let rs = RootSystem::parse(t).map_err(|e| e.to_string())?;
        let t0 = Instant::now();
        let top = match build_top_pair(&rs) {
            Ok(x) => x,
            Err(e) => {
                bad.push(format!("{t}: {e}"));
                continue;
            }
        };
        if t == "E8" {
            e8_time = t0.elapsed();
        }
        let order = rs.cartan_type().weyl_order();
        if order <= DIRECT_GCR_LIMIT {
            cache.poset(t)?;
            let g = &cache.groups[t];
            let p = &cache.posets[t];
            let max = maximal_pairs(p, g);
            let best = max.iter().map(|&k| p.pairs[k].d).max().unwrap_or(0);
            if best != top.d {
                bad.push(format!("{t}: top d {} vs max over maximal pairs {best}", top.d));
            }
            let key = (g.id(&top.v).unwrap(), g.id(&top.w).unwrap());
            let is_max = max.iter().any(|&k| p.ids[k] == key);
            notes.push(format!("{t}{}", if is_max { "" } else { "(not maximal)" }));
        } else if order <= GROUP_CAP as u128 {
            // every GCR pair has d = l_Δ(v w⁻¹) with v w⁻¹ an involution
            let (_, max, _) = cache.involutions(t)?;
            if max != top.d {
                bad.push(format!("{t}: top d {} vs involution bound {max}", top.d));
            }
            notes.push(format!("{t}(bound)"));
        } else {
            notes.push(format!("{t}(kernel condition only)"));
        }
    }
    Ok(outcome(
        bad.is_empty() && e8_time < E8_BUDGET,
        format!(
            "E8 in {e8_time:.2?}; {}; failures {bad:?}",
            notes.join(" ")
        ),
    ))
}

fn c10_involution_bound(cache: &mut Cache) -> Check {
    let mut bad = Vec::new();
    let mut parts = Vec::new();
    for t in TOP_PAIR_TYPES {
        let rs = RootSystem::parse(t).map_err(|e| e.to_string())?;
        if rs.cartan_type().weyl_order() > GROUP_CAP as u128 {
            continue;
        }
        let (count, max, top) = cache.involutions(t)?;
        if max > top {
            bad.push(t);
        }
        parts.push(format!("{t}:{count}"));
    }
    Ok(outcome(
        bad.is_empty(),
        format!("involutions {}; violations {bad:?}", parts.join(" ")),
    ))
}

fn matrix_matches(chart: &Chart, shown: &[(&str, &str, &str)]) -> bool {
    let pm = poisson_matrix(chart);
    let names = pm.names().to_vec();
    pm.lower_entries().into_iter().all(|(a, b, q)| {
        let want = shown
            .iter()
            .find(|(x, y, _)| *x == names[a] && *y == names[b])
            .map_or(Polynomial::zero(chart.ring()), |(_, _, s)| {
                parse_polynomial(chart.ring(), s).unwrap()
            });
        *q == want
    })
}

fn c11_sl3() -> Check {
    let t0 = Instant::now();
    let o = GbOptions::default();
    let c = Chart::big_cell(2);
    let display = matrix_matches(&c, &SL3_BIG_CELL);
    let i = degeneracy_ideal(&c);
    let p = |s: &str| parse_polynomial(c.ring(), s).unwrap();
    let sq = i.contains(&p("x31^2"), &o).map_err(|e| e.to_string())?;
    let lin = i.contains(&p("x31"), &o).map_err(|e| e.to_string())?;
    let dec = verify_sl3_decomposition(&o).map_err(|e| e.to_string())?;
    let scan = scan_cells(2, &o).map_err(|e| e.to_string())?;
    let charts = scan.witness_charts();
    let el = t0.elapsed();
    Ok(outcome(
        display && sq && !lin && dec.all_pass() && charts == ["123", "321"] && el < SL3_BUDGET,
        format!(
            "display {display}, x31^2 in I {sq}, x31 in I {lin}, decomposition {}, witness charts {charts:?}, {el:.2?}",
            dec.all_pass()
        ),
    ))
}

fn c12_sl4() -> Check {
    let t0 = Instant::now();
    let o = GbOptions::default();
    let c = Chart::big_cell(3);
    let display = matrix_matches(&c, &SL4_BIG_CELL);
    let pm = poisson_matrix(&c);
    let terms = pm.lower_entries().iter().filter(|e| !e.2.is_zero()).count();
    let jacobi = pm.satisfies_jacobi();
    let dec = verify_decomposition(3, &SL4_COMPONENTS, false, &o).map_err(|e| e.to_string())?;
    let contained = dec.contained.iter().all(|&b| b);
    let i = degeneracy_ideal(&c);
    let p = |s: &str| parse_polynomial(c.ring(), s).unwrap();
    let x21_sq = i.contains(&p("x21^2"), &o).map_err(|e| e.to_string())?;
    let x21 = i.contains(&p("x21"), &o).map_err(|e| e.to_string())?;
    let witness = nonreduced_witness(&c, &o).map_err(|e| e.to_string())?;
    let el = t0.elapsed();
    let pass = display
        && terms == 13
        && contained
        && x21_sq
        && !x21
        && witness.as_deref() == Some("x21")
        && jacobi
        && el < SL4_BUDGET;
    Ok(outcome(
        pass,
        format!(
            "display {display} ({terms} terms), I in each component {contained}, x21^2 in I {x21_sq}, \
             x21 in I {x21}, first witness {witness:?}, jacobi {jacobi}, {el:.2?}"
        ),
    ))
}

fn sl4_stretch() -> String {
    let t0 = Instant::now();
    let o = GbOptions {
        timeout: SL4_STRETCH_BUDGET,
    };
    match verify_decomposition(3, &SL4_COMPONENTS, true, &o) {
        Ok(r) => match r.equal {
            Some(true) => format!("PASS  full intersection equality in {:.2?}", t0.elapsed()),
            Some(false) => "FAIL  intersection differs from the ideal".into(),
            None => format!("SKIP  timed out after {SL4_STRETCH_BUDGET:?}"),
        },
        Err(e) => format!("FAIL  {e}"),
    }
}

fn c13_reporting() -> Check {
    let scan = scan_cells(3, &GbOptions::default()).map_err(|e| e.to_string())?;
    let charts = scan.witness_charts();
    let orbits = scan.witness_orbits();
    let closed = orbits.is_some();
    let big = charts.iter().any(|c| c == "1234");
    Ok(outcome(
        scan.timeouts() == 0 && closed && big,
        format!(
            "SL4 witness charts {} in {} orbits (reported, not compared with 20/7); \
             closed under w0 and diagram flips {closed}",
            charts.len(),
            orbits.map_or(0, |o| o.len())
        ),
    ))
}

fn main() {
    let mut cache = Cache::default();
    let mut results: Vec<(usize, &str, Check)> = Vec::new();
    results.push((1, "equivalence of the three GCR conditions", c1_equivalence_sweep(&mut cache)));
    results.push((2, "S3 GCR count", c2_s3(&mut cache)));
    results.push((3, "S4 GCR tables and maximal pairs", c3_s4(&mut cache)));
    results.push((4, "power-set intervals", c4_powerset(&mut cache)));
    results.push((5, "cascade identities", c5_cascade()));
    results.push((6, "R-polynomials", c6_r_polynomials(&mut cache)));
    results.push((7, "distinguished subword statistics", c7_deodhar(&mut cache)));
    results.push((8, "parabolic intervals", c8_parabolic(&mut cache)));
    results.push((10, "involution bound", c10_involution_bound(&mut cache)));
    results.push((9, "top-dimensional construction", c9_construct(&mut cache)));
    results.push((11, "SL3 Poisson lab", c11_sl3()));
    results.push((12, "SL4 Poisson lab", c12_sl4()));
    results.push((13, "SL4 witness reporting", c13_reporting()));
    results.sort_by_key(|r| r.0);

    let mut abort = false;
    for (id, name, r) in &results {
        let (pass, detail) = match r {
            Ok(o) => (o.pass, o.detail.clone()),
            Err(e) => (false, format!("error: {e}")),
        };
        let expected_fail = EXPECTED_FAIL.contains(id);
        let tag = match (pass, expected_fail) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (expected)",
            (true, true) => "PASS (unexpected)",
        };
        abort |= pass == expected_fail;
        println!("criterion {id:>2} {tag}  {name}: {detail}");
    }
    println!("criterion 12 stretch {}", sl4_stretch());
    if abort {
        std::process::exit(1);
    }
}
