mod output;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use degenloci::bruhat::{element_label, export_bruhat_graph};
use degenloci::cascade::{build_cascade, verify_kostant};
use degenloci::construct::build_top_pair;
use degenloci::deodhar::{r_polynomial_deodhar, QPoly, RPolyOracle};
use degenloci::gcr::{
    enumerate_gcr, equivalence_sweep, is_gcr_cond3, is_gcr_cond4, is_gcr_cond6, maximal_pairs,
    verify_powerset_interval, GcrPair, GcrPoset,
};
use degenloci::parabolic::{
    gcr_p, verify_classes_distinct, verify_p_interval, witness_avoids_levi, PBruhat,
    ParabolicSubset,
};
use degenloci::poissonlab::{
    degeneracy_ideal, poisson_matrix, scan_cells, verify_decomposition, Chart, SL3_COMPONENTS,
    SL4_COMPONENTS,
};
use degenloci::polyalg::GbOptions;
use degenloci::weyl::DEFAULT_CAP;
use degenloci::{dynkin::Letter, Error, RootSystem, WeylGroup};
use output::{csv_field, Format, Report, Trace, VerificationFailed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::collections::HashSet;
use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Duration;

/// Combinatorics of Poisson degeneracy loci of flag varieties.
#[derive(Parser)]
#[command(name = "degenloci", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Opts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest Weyl group that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Time limit per Gröbner basis computation.
    #[arg(long, global = true, default_value_t = 60)]
    timeout_secs: u64,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Parabolic subset J as simple indices, e.g. `1,3`.
    #[arg(long, global = true)]
    parabolic: Option<String>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// GCR pairs of an enumerable Weyl group.
    Gcr {
        #[command(subcommand)]
        cmd: GcrCmd,
    },
    /// Kostant cascade and its identities.
    Cascade { cartan: String },
    /// R-polynomials by distinguished subwords and by recurrence.
    Rpoly {
        cartan: String,
        v: Option<String>,
        w: Option<String>,
        /// Compare on this many seeded random pairs instead.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// GCR_P pairs and their interval checks, for `--parabolic J` or every J.
    Parabolic { cartan: String },
    /// Constructions that avoid enumerating the group.
    Construct {
        #[command(subcommand)]
        cmd: ConstructCmd,
    },
    /// Type-A Poisson brackets on translated big cells.
    Poisson {
        #[command(subcommand)]
        cmd: PoissonCmd,
    },
    /// Bruhat graph in DOT, maximal one-dimensional GCR edges highlighted.
    Graph { cartan: String },
}

#[derive(Subcommand)]
enum GcrCmd {
    /// All GCR pairs with witnesses.
    Enumerate { cartan: String },
    /// Maximal pairs under containment.
    Components { cartan: String },
    /// Test the kernel, involution and orthogonal-subword conditions on one pair.
    Check { cartan: String, v: String, w: String },
    /// Check that every GCR interval is a boolean lattice.
    Powerset { cartan: String },
    /// Compare all three conditions on every comparable pair.
    Sweep { cartan: String },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// The pair (v, w₀v) of top dimension.
    TopPair { cartan: String },
}

#[derive(Subcommand)]
enum PoissonCmd {
    /// Bivector on one chart.
    Matrix {
        cartan: String,
        /// Chart centre in one-line notation (default: identity).
        #[arg(long)]
        cell: Option<String>,
    },
    /// Degeneracy ideal, reduced basis and square witness.
    Ideal {
        cartan: String,
        #[arg(long)]
        cell: Option<String>,
    },
    /// Witness scan over all charts.
    Scan { cartan: String },
    /// Check the listed big-cell decomposition (A2 and A3).
    Decompose { cartan: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<VerificationFailed>() {
            return 3;
        }
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::CapExceeded { .. } | Error::Timeout(_) => 2,
                Error::Verification(_) => 3,
                _ => 1,
            };
        }
    }
    1
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.opts.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring worker threads")?;
    }
    let o = &cli.opts;
    let report = match &cli.cmd {
        Command::Gcr { cmd } => match cmd {
            GcrCmd::Enumerate { cartan } => gcr_enumerate(o, cartan)?,
            GcrCmd::Components { cartan } => gcr_components(o, cartan)?,
            GcrCmd::Check { cartan, v, w } => gcr_check(cartan, v, w)?,
            GcrCmd::Powerset { cartan } => gcr_powerset(o, cartan)?,
            GcrCmd::Sweep { cartan } => gcr_sweep(o, cartan)?,
        },
        Command::Cascade { cartan } => cascade(cartan)?,
        Command::Rpoly {
            cartan,
            v,
            w,
            sample,
        } => rpoly(o, cartan, v.as_deref(), w.as_deref(), *sample)?,
        Command::Parabolic { cartan } => parabolic(o, cartan)?,
        Command::Construct {
            cmd: ConstructCmd::TopPair { cartan },
        } => top_pair(cartan)?,
        Command::Poisson { cmd } => match cmd {
            PoissonCmd::Matrix { cartan, cell } => poisson_matrix_cmd(cartan, cell.as_deref())?,
            PoissonCmd::Ideal { cartan, cell } => poisson_ideal(o, cartan, cell.as_deref())?,
            PoissonCmd::Scan { cartan } => poisson_scan(o, cartan)?,
            PoissonCmd::Decompose { cartan } => poisson_decompose(o, cartan)?,
        },
        Command::Graph { cartan } => graph(o, cartan)?,
    };
    report.emit(o.format)
}

fn system(cartan: &str) -> Result<RootSystem> {
    Ok(RootSystem::parse(cartan)?)
}

fn group(o: &Opts, cartan: &str) -> Result<WeylGroup> {
    Ok(WeylGroup::new(&system(cartan)?, o.cap)?)
}

fn gb_options(o: &Opts) -> GbOptions {
    GbOptions {
        timeout: Duration::from_secs(o.timeout_secs),
    }
}

fn parabolic_subset(o: &Opts, rs: &RootSystem) -> Result<Option<ParabolicSubset>> {
    match &o.parabolic {
        None => Ok(None),
        Some(s) => {
            let idx: Vec<usize> = s
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .with_context(|| format!("bad parabolic subset {s:?}"))?;
            Ok(Some(ParabolicSubset::new(rs, idx)?))
        }
    }
}

fn pair_rows(rs: &RootSystem, pairs: &[&GcrPair]) -> (serde_json::Value, String, String) {
    let records: Vec<_> = pairs.iter().map(|p| p.to_record(rs)).collect();
    let mut text = String::new();
    let mut csv = String::from("v,w,d,witness_roots,positions\n");
    for (p, r) in pairs.iter().zip(&records) {
        let roots: Vec<String> = p.witness_roots.iter().map(|b| b.to_string()).collect();
        let pos: Vec<String> = r.positions.iter().map(|k| k.to_string()).collect();
        writeln!(text, "{:<12} {:<12} d={} [{}]", r.v, r.w, r.d, roots.join(", ")).unwrap();
        writeln!(
            csv,
            "{},{},{},{},{}",
            csv_field(&r.v),
            csv_field(&r.w),
            r.d,
            csv_field(&roots.join(";")),
            csv_field(&pos.join(";"))
        )
        .unwrap();
    }
    (json!(records), text, csv)
}

fn count_line(counts: &[usize]) -> String {
    counts
        .iter()
        .enumerate()
        .map(|(d, c)| format!("d={d}: {c}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn counts_by_d(pairs: &[&GcrPair]) -> Vec<usize> {
    let top = pairs.iter().map(|p| p.d).max().unwrap_or(0);
    let mut c = vec![0; top + 1];
    for p in pairs {
        c[p.d] += 1;
    }
    c
}

fn selected<'a>(o: &Opts, g: &WeylGroup, poset: &'a GcrPoset) -> Result<Vec<&'a GcrPair>> {
    Ok(match parabolic_subset(o, g.root_system())? {
        None => poset.pairs.iter().collect(),
        Some(j) => {
            let pb = PBruhat::new(g, j);
            gcr_p(poset, &pb).into_iter().map(|k| &poset.pairs[k]).collect()
        }
    })
}

fn gcr_enumerate(o: &Opts, cartan: &str) -> Result<Report> {
    let g = group(o, cartan)?;
    let rs = g.root_system();
    let poset = enumerate_gcr(&g)?;
    let pairs = selected(o, &g, &poset)?;
    let counts = counts_by_d(&pairs);
    let (rows, body, csv) = pair_rows(rs, &pairs);
    let text = format!("{} GCR pairs ({})\n{body}", pairs.len(), count_line(&counts));
    let j = json!({
        "cartan_type": rs.cartan_type().to_string(),
        "parabolic": o.parabolic,
        "count": pairs.len(),
        "count_by_d": counts,
        "pairs": rows,
    });
    Ok(Report::new(j, text).with_csv(csv))
}

fn gcr_components(o: &Opts, cartan: &str) -> Result<Report> {
    let g = group(o, cartan)?;
    let rs = g.root_system();
    let poset = enumerate_gcr(&g)?;
    let pairs: Vec<&GcrPair> = maximal_pairs(&poset, &g)
        .into_iter()
        .map(|k| &poset.pairs[k])
        .collect();
    let counts = counts_by_d(&pairs);
    let (rows, body, csv) = pair_rows(rs, &pairs);
    let text = format!("{} maximal pairs ({})\n{body}", pairs.len(), count_line(&counts));
    let j = json!({
        "cartan_type": rs.cartan_type().to_string(),
        "count": pairs.len(),
        "count_by_d": counts,
        "pairs": rows,
    });
    Ok(Report::new(j, text).with_csv(csv))
}

fn gcr_check(cartan: &str, v: &str, w: &str) -> Result<Report> {
    let rs = system(cartan)?;
    let v = rs.parse_element(v)?;
    let w = rs.parse_element(w)?;
    let c3 = is_gcr_cond3(&rs, &v, &w)?;
    let c4 = is_gcr_cond4(&rs, &v, &w);
    let c6 = is_gcr_cond6(&rs, &v, &w)?;
    let mut trace = Trace::default();
    trace.record("gcr-condition-equivalence", c3 == c4 && c3 == c6.is_some());
    let d = rs.length(&w) - rs.length(&v);
    let (vl, wl) = (element_label(&rs, &v), element_label(&rs, &w));
    let mut text = format!("v = {vl}, w = {wl}, l(w) - l(v) = {d}\n");
    writeln!(text, "kernel condition: {c3}\ninvolution condition: {c4}").unwrap();
    match &c6 {
        Some(p) => {
            let roots: Vec<String> = p.witness_roots.iter().map(|b| b.to_string()).collect();
            writeln!(text, "orthogonal subword: [{}]", roots.join(", ")).unwrap();
        }
        None => writeln!(text, "orthogonal subword: none").unwrap(),
    }
    let j = json!({
        "cartan_type": rs.cartan_type().to_string(),
        "v": vl,
        "w": wl,
        "d": d,
        "cond3": c3,
        "cond4": c4,
        "cond6": c6.as_ref().map(|p| p.to_record(&rs)),
    });
    Ok(Report::new(j, text).with_trace(trace))
}

fn gcr_powerset(o: &Opts, cartan: &str) -> Result<Report> {
    let g = group(o, cartan)?;
    let rs = g.root_system();
    let poset = enumerate_gcr(&g)?;
    let pairs = selected(o, &g, &poset)?;
    let bad: Vec<_> = pairs
        .iter()
        .filter(|p| !verify_powerset_interval(&g, p))
        .map(|p| p.to_record(rs))
        .collect();
    let mut trace = Trace::default();
    trace.record("powerset-interval", bad.is_empty());
    let text = format!("{} GCR intervals checked, {} not boolean\n", pairs.len(), bad.len());
    let j = json!({
        "cartan_type": rs.cartan_type().to_string(),
        "checked": pairs.len(),
        "failures": bad,
    });
    Ok(Report::new(j, text).with_trace(trace))
}

fn gcr_sweep(o: &Opts, cartan: &str) -> Result<Report> {
    let g = group(o, cartan)?;
    let rs = g.root_system();
    let rep = equivalence_sweep(&g)?;
    let mut trace = Trace::default();
    trace.record("gcr-condition-equivalence", rep.discrepancies.is_empty());
    let disc: Vec<_> = rep
        .discrepancies
        .iter()
        .map(|&(v, w)| {
            json!([element_label(rs, g.element(v)), element_label(rs, g.element(w))])
        })
        .collect();
    let text = format!(
        "{} comparable pairs, {} GCR, {} discrepancies\n",
        rep.comparable_pairs,
        rep.gcr_pairs,
        rep.discrepancies.len()
    );
    let j = json!({
        "cartan_type": rs.cartan_type().to_string(),
        "comparable_pairs": rep.comparable_pairs,
        "gcr_pairs": rep.gcr_pairs,
        "discrepancies": disc,
    });
    Ok(Report::new(j, text).with_trace(trace))
}

fn cascade(cartan: &str) -> Result<Report> {
    let rs = system(cartan)?;
    let c = build_cascade(&rs)?;
    let rep = verify_kostant(&rs, &c)?;
    let mut trace = Trace::default();
    trace.record("kostant-cascade", rep.all_pass());
    trace.record("cascade-size", rep.cascade_size == rep.reflection_length_w0);
    let mut text = format!("|B| = {}\n", c.len());
    let mut csv = String::from("gamma,subsystem,dual_coxeter,e_size,heisenberg_pairs\n");
    for n in c.nodes() {
        writeln!(
            text,
            "{:<24} {:<4} h∨={:<3} |E|={:<3} pairs={}",
            n.gamma.to_string(),
            n.subsystem.to_string(),
            n.dual_coxeter,
            n.e_set.len(),
            n.heisenberg_pairs.len()
        )
        .unwrap();
        writeln!(
            csv,
            "{},{},{},{},{}",
            csv_field(&n.gamma.to_string()),
            n.subsystem,
            n.dual_coxeter,
            n.e_set.len(),
            n.heisenberg_pairs.len()
        )
        .unwrap();
    }
    let j = json!({
        "cartan_type": rs.cartan_type().to_string(),
        "cascade": c,
        "report": rep,
    });
    Ok(Report::new(j, text).with_csv(csv).with_trace(trace))
}

fn rpoly(
    o: &Opts,
    cartan: &str,
    v: Option<&str>,
    w: Option<&str>,
    sample: Option<usize>,
) -> Result<Report> {
    let rs = system(cartan)?;
    let mut trace = Trace::default();
    match (v, w, sample) {
        (Some(v), Some(w), None) => {
            let v = rs.parse_element(v)?;
            let w = rs.parse_element(w)?;
            let a = r_polynomial_deodhar(&rs, &v, &w)?;
            let b = RPolyOracle::new(&rs).r(&v, &w);
            trace.record("deodhar-recurrence-agreement", a == b);
            let gcr = degenloci::bruhat::bruhat_leq(&rs, &v, &w) && is_gcr_cond3(&rs, &v, &w)?;
            if gcr {
                let d = rs.length(&w) - rs.length(&v);
                trace.record("gcr-r-polynomial", a == QPoly::q_minus_one_pow(d));
            }
            let text = format!("deodhar:    {a}\nrecurrence: {b}\n");
            let j = json!({
                "cartan_type": rs.cartan_type().to_string(),
                "v": element_label(&rs, &v),
                "w": element_label(&rs, &w),
                "deodhar": a.coeffs(),
                "recurrence": b.coeffs(),
                "agree": a == b,
                "gcr": gcr,
            });
            Ok(Report::new(j, text).with_trace(trace))
        }
        (None, None, Some(k)) => {
            let g = WeylGroup::new(&rs, o.cap)?;
            let mut oracle = RPolyOracle::new(&rs);
            let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
            let mut mismatches = Vec::new();
            for _ in 0..k {
                let w = rng.gen_range(0..g.len() as u32);
                let below: Vec<u32> = (0..g.len() as u32).filter(|&x| g.leq(x, w)).collect();
                let v = below[rng.gen_range(0..below.len())];
                let (ve, we) = (g.element(v), g.element(w));
                if r_polynomial_deodhar(&rs, ve, we)? != oracle.r(ve, we) {
                    mismatches.push(json!([element_label(&rs, ve), element_label(&rs, we)]));
                }
            }
            trace.record("deodhar-recurrence-agreement", mismatches.is_empty());
            let text = format!("{k} sampled pairs, {} mismatches\n", mismatches.len());
            let j = json!({
                "cartan_type": rs.cartan_type().to_string(),
                "seed": o.seed,
                "sampled": k,
                "mismatches": mismatches,
            });
            Ok(Report::new(j, text).with_trace(trace))
        }
        _ => bail!("give either two elements v w or --sample N"),
    }
}

fn parabolic(o: &Opts, cartan: &str) -> Result<Report> {
    let g = group(o, cartan)?;
    let rs = g.root_system();
    let subsets = match parabolic_subset(o, rs)? {
        Some(j) => vec![j],
        None => ParabolicSubset::all(rs),
    };
    let poset = enumerate_gcr(&g)?;
    let mut trace = Trace::default();
    let mut text = String::new();
    let mut csv = String::from("J,gcr_p_pairs,interval,classes,levi\n");
    let mut rows = Vec::new();
    for j in subsets {
        let pb = PBruhat::new(&g, j.clone());
        let ks = gcr_p(&poset, &pb);
        let pairs: Vec<&GcrPair> = ks.iter().map(|&k| &poset.pairs[k]).collect();
        let interval = pairs.iter().all(|p| verify_p_interval(&pb, p));
        let classes = pairs.iter().all(|p| verify_classes_distinct(&pb, p));
        let levi = pairs.iter().all(|p| witness_avoids_levi(rs, p, &j));
        trace.record("p-bruhat-interval", interval);
        trace.record("p-classes-distinct", classes);
        trace.record("witness-avoids-levi", levi);
        writeln!(
            text,
            "J={:<10} {:>5} pairs  interval {interval}  classes {classes}  levi {levi}",
            j.to_string(),
            pairs.len()
        )
        .unwrap();
        writeln!(csv, "{},{},{interval},{classes},{levi}", csv_field(&j.to_string()), pairs.len())
            .unwrap();
        let (records, _, _) = pair_rows(rs, &pairs);
        rows.push(json!({
            "subset": j.indices(),
            "pairs": records,
            "interval": interval,
            "classes_distinct": classes,
            "witness_avoids_levi": levi,
        }));
    }
    let j = json!({
        "cartan_type": rs.cartan_type().to_string(),
        "subsets": rows,
    });
    Ok(Report::new(j, text).with_csv(csv).with_trace(trace))
}

fn top_pair(cartan: &str) -> Result<Report> {
    let rs = system(cartan)?;
    let top = build_top_pair(&rs)?;
    let rec = top.to_record(&rs);
    let mut trace = Trace::default();
    trace.record("top-dimension", top.d == top.cascade_size);
    let text = format!(
        "v = {}\nw = {}\nd = {}, |B| = {}, Heisenberg choices = {}\n",
        rec.v_word,
        rec.w_word,
        rec.d,
        rec.cascade_size,
        rec.certificate.len()
    );
    Ok(Report::new(serde_json::to_value(&rec)?, text).with_trace(trace))
}

fn type_a_rank(cartan: &str) -> Result<usize> {
    let rs = system(cartan)?;
    let t = rs.cartan_type();
    if !t.is_simple() || t.components()[0].letter != Letter::A {
        bail!("the Poisson lab handles type A only, got {t}");
    }
    Ok(rs.rank())
}

fn chart(cartan: &str, cell: Option<&str>) -> Result<Chart> {
    let n = type_a_rank(cartan)?;
    Ok(match cell {
        None => Chart::big_cell(n),
        Some(c) => Chart::parse(n, c)?,
    })
}

fn poisson_matrix_cmd(cartan: &str, cell: Option<&str>) -> Result<Report> {
    let c = chart(cartan, cell)?;
    let pm = poisson_matrix(&c);
    let mut csv = String::from("a,b,bracket\n");
    let mut entries = Vec::new();
    for (a, b, p) in pm.lower_entries() {
        let (na, nb) = (&pm.names()[a], &pm.names()[b]);
        writeln!(csv, "{na},{nb},{}", csv_field(&p.to_string())).unwrap();
        entries.push(json!({"a": na, "b": nb, "bracket": p.to_string()}));
    }
    let j = json!({
        "chart": c.label(),
        "variables": pm.names(),
        "entries": entries,
    });
    Ok(Report::new(j, format!("{pm}\n")).with_csv(csv))
}

fn poisson_ideal(o: &Opts, cartan: &str, cell: Option<&str>) -> Result<Report> {
    let c = chart(cartan, cell)?;
    let ideal = degeneracy_ideal(&c);
    let opts = gb_options(o);
    let gb = ideal.groebner(&opts)?;
    let witness = degenloci::poissonlab::nonreduced_witness(&c, &opts)?;
    let gens: Vec<String> = ideal.generators().iter().map(|p| p.to_string()).collect();
    let basis: Vec<String> = gb.polys().iter().map(|p| p.to_string()).collect();
    let mut text = format!("chart {}\ngenerators:\n", c.label());
    for g in &gens {
        writeln!(text, "  {g}").unwrap();
    }
    text.push_str("reduced basis:\n");
    for g in &basis {
        writeln!(text, "  {g}").unwrap();
    }
    writeln!(text, "square witness: {}", witness.as_deref().unwrap_or("none")).unwrap();
    let j = json!({
        "chart": c.label(),
        "variables": c.ring().vars(),
        "generators": gens,
        "groebner_basis": basis,
        "witness": witness,
    });
    Ok(Report::new(j, text))
}

fn poisson_scan(o: &Opts, cartan: &str) -> Result<Report> {
    let n = type_a_rank(cartan)?;
    let rep = scan_cells(n, &gb_options(o))?;
    let mut text = String::new();
    let mut csv = String::from("chart,generators,witness,timed_out\n");
    for c in &rep.charts {
        let w = c.witness.as_deref().unwrap_or("-");
        let flag = if c.timed_out { "  (timed out)" } else { "" };
        writeln!(text, "{}  {:>2} generators  witness {w}{flag}", c.chart, c.generators).unwrap();
        writeln!(csv, "{},{},{},{}", c.chart, c.generators, c.witness.as_deref().unwrap_or(""), c.timed_out)
            .unwrap();
    }
    let orbits = rep.witness_orbits();
    writeln!(
        text,
        "{} witness charts, {}",
        rep.witness_charts().len(),
        match &orbits {
            Some(o) => format!("{} orbits under the w0 and diagram flips", o.len()),
            None => "not closed under the w0 and diagram flips".into(),
        }
    )
    .unwrap();
    let j = json!({
        "n": rep.n,
        "charts": rep.charts,
        "witness_charts": rep.witness_charts(),
        "orbits": orbits,
        "timeouts": rep.timeouts(),
    });
    let r = Report::new(j, text).with_csv(csv);
    if rep.timeouts() > 0 {
        r.emit(o.format)?;
        return Err(Error::Timeout(Duration::from_secs(o.timeout_secs)).into());
    }
    Ok(r)
}

fn poisson_decompose(o: &Opts, cartan: &str) -> Result<Report> {
    let n = type_a_rank(cartan)?;
    let comps: &[&[&str]] = match n {
        2 => &SL3_COMPONENTS,
        3 => &SL4_COMPONENTS,
        _ => bail!("decompositions are listed for A2 and A3 only"),
    };
    let rep = verify_decomposition(n, comps, true, &gb_options(o))?;
    let Some(equal) = rep.equal else {
        return Err(Error::Timeout(Duration::from_secs(o.timeout_secs)).into());
    };
    let mut trace = Trace::default();
    trace.record("ideal-in-components", rep.contained.iter().all(|&b| b));
    trace.record("decomposition-equality", equal);
    let text = format!("contained in components: {:?}\nequal to intersection: {equal}\n", rep.contained);
    Ok(Report::new(serde_json::to_value(&rep)?, text).with_trace(trace))
}

fn graph(o: &Opts, cartan: &str) -> Result<Report> {
    let g = group(o, cartan)?;
    let poset = enumerate_gcr(&g)?;
    let hl: HashSet<(u32, u32)> = maximal_pairs(&poset, &g)
        .into_iter()
        .filter(|&k| poset.pairs[k].d == 1)
        .map(|k| poset.ids[k])
        .collect();
    let dot = export_bruhat_graph(&g, &hl);
    let j = json!({
        "cartan_type": g.root_system().cartan_type().to_string(),
        "dot": dot,
        "highlighted": hl.len(),
    });
    Ok(Report::new(j, dot.clone()).with_dot(dot))
}
