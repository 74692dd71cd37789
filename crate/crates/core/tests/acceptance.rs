//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use foliate::algebra::ReductivePair;
use foliate::catalog;
use foliate::ce::{self, CochainComplex, CoefficientModule};
use foliate::cli;
use foliate::format;
use foliate::group;
use foliate::relative::{self, GkModule};
use foliate::scalar::{frac, int};
use foliate::tischler::{self, FoliationProfile, VerdictKind};

type Q = BigRational;
type Entry<'a> = (usize, usize, &'a [(usize, i64)]);
type Criterion = (&'static str, fn(&mut Check), Duration);

// ---------------------------------------------------------------------------
// Independent oracle for criterion 1: trivial-coefficient CE cohomology from
// structure constants typed in here, cochains indexed by bitmasks, and a
// plain rational Gaussian elimination.

struct Table {
    n: usize,
    /// (i, j) with i < j  ->  [e_i, e_j] as (k, coefficient) terms
    brackets: BTreeMap<(usize, usize), Vec<(usize, i64)>>,
}

impl Table {
    fn new(n: usize, entries: &[Entry]) -> Self {
        let brackets = entries.iter().map(|(i, j, t)| ((*i, *j), t.to_vec())).collect();
        Table { n, brackets }
    }

    fn bracket(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else if i > j {
            self.bracket(j, i).into_iter().map(|(k, c)| (k, -c)).collect()
        } else {
            Vec::new()
        }
    }
}

fn subsets(n: usize, r: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == r).collect()
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask & (1 << b) != 0).collect()
}

/// Sign of sorting the sequence `k, rest...` where `rest` is ascending.
fn insertion_sign(k: usize, rest: u32) -> Option<i64> {
    if rest & (1 << k) != 0 {
        return None;
    }
    let below = (rest & ((1u32 << k) - 1)).count_ones();
    Some(if below.is_multiple_of(2) { 1 } else { -1 })
}

/// `(dω)(X_0..X_r) = Σ_{a<b} (−1)^{a+b} ω([X_a, X_b], X_0..X̂_a..X̂_b..)`.
fn oracle_differential(t: &Table, r: usize) -> Vec<Vec<Q>> {
    let src = subsets(t.n, r);
    let dst = subsets(t.n, r + 1);
    let col: BTreeMap<u32, usize> = src.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut d = vec![vec![Q::zero(); src.len()]; dst.len()];
    for (row, &mask) in dst.iter().enumerate() {
        let xs = members(mask);
        for a in 0..xs.len() {
            for b in a + 1..xs.len() {
                let rest = mask & !(1 << xs[a]) & !(1 << xs[b]);
                let sign_ab = if (a + b) % 2 == 0 { 1 } else { -1 };
                for (k, c) in t.bracket(xs[a], xs[b]) {
                    if let Some(s) = insertion_sign(k, rest) {
                        let target = col[&(rest | (1 << k))];
                        d[row][target] += Q::from_integer(BigInt::from(sign_ab * s * c));
                    }
                }
            }
        }
    }
    d
}

fn oracle_rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(p, rank);
        let pivot = m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                let pivot_row = m[rank].clone();
                for (x, y) in m[r][c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn binom(n: usize, r: usize) -> usize {
    subsets(n, r).len()
}

fn oracle_betti(t: &Table) -> Vec<usize> {
    let ranks: Vec<usize> = (0..t.n).map(|r| oracle_rank(oracle_differential(t, r))).collect();
    (0..=t.n)
        .map(|r| {
            let out = if r < t.n { ranks[r] } else { 0 };
            let inc = if r > 0 { ranks[r - 1] } else { 0 };
            binom(t.n, r) - out - inc
        })
        .collect()
}

// ---------------------------------------------------------------------------

struct Check {
    failures: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { failures: Vec::new() }
    }

    fn that(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, left: T, right: T, what: &str) {
        if left != right {
            self.failures.push(format!("{what}: {left:?} != {right:?}"));
        }
    }
}

fn criterion_1(c: &mut Check) {
    for n in 1..=4 {
        let g = foliate::LieAlgebra::abelian(n);
        let expected: Vec<usize> = (0..=n).map(|r| binom(n, r)).collect();
        c.eq(ce::betti(&g, &CoefficientModule::trivial(&g)).numbers().to_vec(), expected, &format!("abelian{n}"));
    }
    let sl2 = Table::new(3, &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])]);
    let heis = Table::new(3, &[(0, 1, &[(2, 1)])]);
    let ga = Table::new(2, &[(0, 1, &[(1, 1)])]);
    let cases = [
        ("sl2", sl2, catalog::sl2(), vec![1, 0, 0, 1]),
        ("heisenberg3", heis, catalog::heisenberg3(), vec![1, 2, 2, 1]),
        ("ga1", ga, catalog::ga1(), vec![1, 1, 0]),
    ];
    for (name, table, g, expected) in cases {
        let oracle = oracle_betti(&table);
        c.eq(oracle.clone(), expected, &format!("{name} oracle"));
        let engine = ce::betti(&g, &CoefficientModule::trivial(&g)).numbers().to_vec();
        c.eq(engine, oracle, &format!("{name} engine vs oracle"));
    }
    let ga = catalog::ga1();
    c.that(!ga.is_unimodular(), "ga1 must be non-unimodular");
    c.eq(*ce::betti(&ga, &CoefficientModule::trivial(&ga)).numbers().last().unwrap(), 0, "ga1 top Betti");
}

fn criterion_2(c: &mut Check) {
    let pair = catalog::sl2_so2_pair();
    let b = relative::relative_betti(&pair, &GkModule::trivial(&pair)).unwrap();
    c.eq(b.numbers().to_vec(), vec![1, 0, 1], "relative Betti of (sl2, so2)");
    c.eq(pair.q(), 2, "q");
    c.eq(b.numbers()[pair.q()], 1, "H^q");
    let v = tischler::unimodularity_verdict(&catalog::sl2_example_profile());
    c.eq(v.kind, VerdictKind::FoliationUnimodular, "example verdict");
}

fn modules(pair: &ReductivePair) -> Vec<(&'static str, GkModule)> {
    let mut out = vec![
        ("trivial", GkModule::trivial(pair)),
        ("adjoint", GkModule::adjoint(pair)),
        ("coadjoint", GkModule::adjoint(pair).dual()),
    ];
    if let Ok(m) = GkModule::modular(pair) {
        out.push(("modular", m));
    }
    if let Ok(tw) = relative::hazewinkel_twist(pair, &GkModule::trivial(pair)) {
        out.push(("dual-twisted", tw.module().dual()));
        out.push(("twisted", tw.into_module()));
    }
    out
}

fn criterion_3(c: &mut Check) {
    let mut checked = 0;
    for pair in catalog::pairs().iter().filter(|p| p.k_is_unimodular()) {
        for (label, v) in modules(pair) {
            let report = relative::duality_check(pair, &v).unwrap();
            c.that(
                report.holds(),
                format!("duality on {} with {label}: {report:?}", pair.algebra().name()),
            );
            checked += 1;
        }
    }
    c.that(checked >= 30, format!("only {checked} pair/module combinations checked"));
}

fn criterion_4(c: &mut Check) {
    for pair in catalog::pairs().iter().filter(|p| p.k_is_unimodular()) {
        let dual_tw = relative::hazewinkel_twist(pair, &GkModule::trivial(pair)).unwrap().into_module().dual();
        let h0 = relative::h0_fixed_points(pair, &dual_tw).dim;
        let chi = pair.algebra().modular_character();
        let trace_vanishes = pair.p_basis().iter().all(|x| chi.eval(x).is_zero());
        let dets_one = pair.generators().iter().all(|g| pair.blocks(g).1.det().is_one());
        c.eq(h0 == 1, trace_vanishes && dets_one, &format!("H0 criterion on {}", pair.algebra().name()));
        for (label, v) in modules(pair) {
            let b0 = relative::relative_betti(pair, &v).unwrap().numbers()[0];
            let fixed = relative::h0_fixed_points(pair, &v).dim;
            c.eq(b0, fixed, &format!("degree 0 vs fixed points on {} with {label}", pair.algebra().name()));
        }
    }
    let pos = catalog::sl2_so2_pair();
    let dual = relative::hazewinkel_twist(&pos, &GkModule::trivial(&pos)).unwrap().into_module().dual();
    c.eq(relative::h0_fixed_points(&pos, &dual).dim, 1, "sl2/so2 positive case");
    let neg = catalog::ga1_trivial_pair();
    let dual = relative::hazewinkel_twist(&neg, &GkModule::trivial(&neg)).unwrap().into_module().dual();
    c.eq(relative::h0_fixed_points(&neg, &dual).dim, 0, "ga1 negative case");
}

fn criterion_5(c: &mut Check) {
    let data = tischler::carriere_profile(&catalog::carriere_matrix()).unwrap();
    let chi = catalog::ga1().modular_character();
    c.eq(chi.values().to_vec(), vec![int(1), int(0)], "ga1 character");
    c.eq(data.profile.g0_unimodular, false, "g0_unimodular");
    c.eq(data.log_modular_coefficient.clone(), int(1), "log m(s,t) = t log lambda");
    // m(s, t) = λᵗ: det Ad(s, t) is exactly the supplied λᵗ, independent of s
    for (s, a) in [(int(0), int(3)), (frac(5, 2), frac(2, 7)), (int(-4), frac(9, 4))] {
        c.eq(group::det_ad(&catalog::ga1_element(&s, &a)).det, a, "det Ad(s,t)");
    }
    c.eq(data.minimal_polynomial_string(), "x^2 - 3x + 1".to_string(), "minimal polynomial");
    let periods = data.profile.periods.clone().unwrap();
    c.eq(tischler::q_rank(&periods), 1, "q_rank");
    let d = tischler::is_discrete(&periods);
    c.that(d.discrete, "periods discrete");
    c.eq(d.generator.map(|g| periods.render(&g)), Some("log_lambda".to_string()), "cyclic generator");
    let v = tischler::unimodularity_verdict(&data.profile);
    c.eq(v.kind, VerdictKind::ManifoldFibers, "verdict");
    c.eq(v.period_generator, Some("log_lambda".to_string()), "verdict period generator");
}

fn criterion_6(c: &mut Check) {
    // Standing hypotheses: compact manifold, compact K0#, strongly unimodular
    // (K0)#, developing-map fibers with finitely many components.
    for bits in 0..8u8 {
        let [g0, gc, ge] = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0];
        let p = FoliationProfile::from_flags([g0, gc, ge, true, true, true, true]);
        let kind = tischler::unimodularity_verdict(&p).kind;
        let expected = if !g0 {
            VerdictKind::ManifoldFibers
        } else if gc {
            VerdictKind::FoliationUnimodular
        } else if !ge {
            VerdictKind::LeafClosuresFiber
        } else {
            VerdictKind::BlumenthalBundleFibers
        };
        c.eq(kind, expected, &format!("flags g0={g0} gc={gc} ge={ge}"));
        let fired = [
            g0 && gc,
            !g0,
            g0 && !gc && !ge,
            g0 && !gc && ge,
        ];
        c.eq(fired.iter().filter(|&&f| f).count(), 1, "exactly one branch condition");
    }
    // All 2⁷ profiles: a single kind each, HypothesesNotMet iff a standing
    // hypothesis fails.
    for bits in 0..128u8 {
        let flags: [bool; 7] = std::array::from_fn(|i| bits & (1 << i) != 0);
        let p = FoliationProfile::from_flags(flags);
        let a = tischler::unimodularity_verdict(&p).kind;
        c.eq(tischler::unimodularity_verdict(&p).kind, a, "deterministic");
        let standing = p.manifold_compact && p.k_compact && p.fibers_finite_components;
        // strong unimodularity only gates the unimodular conclusion
        let stuck = p.g0_unimodular && p.gamma_closure_unimodular && !p.k_strongly_unimodular;
        c.eq(a == VerdictKind::HypothesesNotMet, !standing || stuck, &format!("flags {flags:?}"));
        if standing && !(p.g0_unimodular && p.gamma_closure_unimodular) {
            c.eq(tischler::trichotomy_verdict(&p).kind, a, "trichotomy agrees");
        }
    }
}

fn complexes() -> Vec<(String, CochainComplex)> {
    let mut out = Vec::new();
    for g in catalog::algebras().into_iter().chain([catalog::e2()]) {
        let mods = [
            ("trivial", CoefficientModule::trivial(&g)),
            ("adjoint", CoefficientModule::adjoint(&g)),
            ("coadjoint", CoefficientModule::adjoint(&g).dual()),
            ("modular", CoefficientModule::modular(&g)),
        ];
        for (label, v) in mods {
            out.push((format!("{} {label} cochain", g.name()), ce::ce_complex(&g, &v)));
            out.push((format!("{} {label} chain", g.name()), ce::ce_chain_complex(&g, &v)));
        }
    }
    for pair in catalog::pairs() {
        for (label, v) in modules(&pair) {
            let name = pair.algebra().name().to_string();
            out.push((format!("{name} {label} relative"), relative::relative_complex(&pair, &v).unwrap()));
            out.push((
                format!("{name} {label} relative chain"),
                relative::relative_chain_complex(&pair, &v).unwrap(),
            ));
        }
    }
    out
}

fn criterion_7(c: &mut Check) {
    for (name, complex) in complexes() {
        c.that(complex.squares_to_zero(), format!("square of the differential on {name}"));
    }
    for g in catalog::finite_actions() {
        let p = group::average_projector(&g).unwrap();
        c.eq(p.mul(&p), p.clone(), &format!("P^2 = P on {}", g.name()));
        for v in group::invariant_vectors(&g).unwrap() {
            c.eq(p.mul_vec(&v), v, &format!("r∘i = id on {}", g.name()));
        }
    }
    let s4 = catalog::s4_table();
    let core = group::normal_core(&s4, &catalog::s4_dihedral_subgroup()).unwrap();
    c.eq(core.len(), 4, "S4 dihedral core order");
    for (pair, e) in catalog::elements() {
        let d = group::det_ad_decomposition(&pair, &e).unwrap();
        c.that(d.product_holds && &d.det_k * &d.det_p == d.det, format!("det product on {}", e.label()));
    }
    for entry in catalog::entries() {
        let text = format::serialize(&entry.payload);
        match format::parse(&text) {
            Ok(doc) => c.eq(doc.get(&entry.name), Some(&entry.payload), &format!("round trip {}", entry.name)),
            Err(e) => c.that(false, format!("round trip {}: {e}", entry.name)),
        }
    }
    let runs = [
        vec!["foliate", "betti", "catalog:sl2"],
        vec!["foliate", "relative-betti", "catalog:sl2_so2_pair"],
        vec!["foliate", "verdict", "catalog:carriere_default"],
        vec!["foliate", "duality", "catalog:e2_o2_pair", "--json"],
        vec!["foliate", "core", "catalog:s4_table"],
    ];
    for args in runs {
        let a = cli::run(args.clone());
        let b = cli::run(args.clone());
        c.that(a.code == 0 && a == b, format!("deterministic report for {args:?}"));
    }
    c.eq(cli::run(["foliate", "betti", "catalog:sl2"]).stdout, "1 0 0 1\n".to_string(), "golden betti");
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("Chevalley-Eilenberg oracle table", criterion_1, Duration::from_secs(1)),
        ("relative Betti of (sl2, so2) is (1, 0, 1)", criterion_2, Duration::from_secs(1)),
        ("Poincare duality on catalog pairs", criterion_3, Duration::from_secs(5)),
        ("H0 characterization and degree-0 fixed points", criterion_4, Duration::from_secs(5)),
        ("Carriere pipeline", criterion_5, Duration::from_secs(1)),
        ("verdict table exhaustiveness", criterion_6, Duration::from_secs(1)),
        ("structural property suites", criterion_7, Duration::from_secs(10)),
    ];
    let mut all_ok = true;
    for (i, (title, run, budget)) in criteria.iter().enumerate() {
        let mut check = Check::new();
        let start = Instant::now();
        run(&mut check);
        let elapsed = start.elapsed();
        if elapsed > *budget {
            check.failures.push(format!("took {elapsed:?}, budget {budget:?}"));
        }
        let ok = check.failures.is_empty();
        all_ok &= ok;
        println!(
            "criterion {}: {} - {title} ({:.3}s)",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        for f in &check.failures {
            println!("    {f}");
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
