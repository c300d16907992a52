//! Exhaustive checks over every simplicial complex on a small vertex set, plus
//! the seeded random suites for Taylor resolutions and polarization.
//!
//! A census instance is a complex whose facets cover `[n]` exactly (no unused
//! vertices); complexes on fewer vertices are covered by smaller `n`. Every
//! instance is checked independently, and failures are collected rather than
//! raised so one run reports all of them.

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::{self, Mask};
use crate::complex::{LeafOrderMode, SimplicialComplex};
use crate::duality::{alexander_dual, dual_facets, dual_generators, sr_complex, sr_ideal};
use crate::error::{Error, Result};
use crate::homology::{betti, is_exact_frame, is_resolution, pd_quotient, reduced_homology_dims};
use crate::monomial::{polarize, restrict, MonomialIdeal, Restriction, VariableSet};
use crate::random;
use crate::resolution::{enumerate_trees, floystad_tree, frame, frame_to_graph, homogenize, taylor};
use crate::verify::verify;

/// Largest vertex count the census enumerates.
pub const CENSUS_GUARD: usize = 6;

/// Every complex whose facets cover exactly `0..n`, facets in increasing mask order.
pub fn complexes_on(n: usize) -> Result<Vec<SimplicialComplex>> {
    if n == 0 || n > CENSUS_GUARD {
        return Err(Error::Guard { what: "census vertex count", got: n, limit: CENSUS_GUARD });
    }
    let vars = VariableSet::numbered("x", n)?;
    let full = bits::full(n);
    let mut found = Vec::new();
    let mut chosen = Vec::new();
    antichains(1, full, &mut chosen, &mut found);
    found.into_iter().map(|f| SimplicialComplex::new(vars.clone(), f)).collect()
}

fn antichains(next: Mask, full: Mask, chosen: &mut Vec<Mask>, out: &mut Vec<Vec<Mask>>) {
    if chosen.iter().fold(0, |a, &f| a | f) == full {
        out.push(chosen.clone());
    }
    for c in next..=full {
        if chosen.iter().all(|&f| f & c != f && f & c != c) {
            chosen.push(c);
            antichains(c + 1, full, chosen, out);
            chosen.pop();
        }
    }
}

/// Lexicographically least sorted facet encoding over all vertex relabelings.
pub fn canonical_form(d: &SimplicialComplex) -> Vec<Mask> {
    let n = d.vertices().len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<Mask>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut enc: Vec<Mask> =
            d.facets().iter().map(|&f| bits::ones(f).fold(0, |a, v| a | 1 << p[v])).collect();
        enc.sort_unstable();
        if !matches!(&best, Some(b) if *b <= enc) {
            best = Some(enc);
        }
    });
    best.unwrap_or_default()
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub facets: String,
    pub check: String,
    pub detail: String,
}

/// Outcome of every check on one complex.
#[derive(Debug, Clone, Default, Serialize)]
pub struct InstanceReport {
    pub vertices: usize,
    pub quasi_forest: bool,
    pub connected: bool,
    pub simplicial_forest: bool,
    pub three_way_checked: bool,
    pub pd_at_most_one: bool,
    pub trees_checked: usize,
    pub four_cycle_pd: Option<usize>,
    pub failures: Vec<Failure>,
}

struct Checker<'a> {
    d: &'a SimplicialComplex,
    report: InstanceReport,
}

impl Checker<'_> {
    fn expect(&mut self, check: &str, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.report.failures.push(Failure { facets: self.d.to_string(), check: check.into(), detail: detail() });
        }
    }

    fn run<T>(&mut self, check: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.expect(check, false, || format!("error: {e}"));
                None
            }
        }
    }
}

/// Run every per-complex check on `d`; the three-way and resolution checks
/// only when `three_way` is set.
pub fn check_complex(d: &SimplicialComplex, three_way: bool) -> InstanceReport {
    let mut c = Checker { d, report: InstanceReport { vertices: d.vertices().len(), ..Default::default() } };
    recognizers(&mut c);
    local_structure(&mut c);
    duality(&mut c);
    if three_way && !d.is_full_simplex() {
        c.report.three_way_checked = true;
        resolutions(&mut c);
    }
    c.report
}

fn recognizers(c: &mut Checker) {
    let d = c.d;
    let Some(exhaustive) = c.run("leaf order (exhaustive)", d.leaf_order(LeafOrderMode::Exhaustive)) else { return };
    let Some(greedy) = c.run("leaf order (greedy)", d.leaf_order(LeafOrderMode::Greedy)) else { return };
    let Some(induced) = c.run("induced recognizer", d.is_quasi_forest_by_induced()) else { return };
    let Some(forest) = c.run("simplicial forest", d.is_simplicial_forest()) else { return };
    let qf = exhaustive.is_some();
    c.expect("greedy agrees with exhaustive", greedy.is_some() == qf, || format!("greedy {greedy:?}, exhaustive {exhaustive:?}"));
    c.expect("leaf order exists iff every induced subcomplex has a leaf", induced == qf, || {
        format!("leaf order {qf}, induced recognizer {induced}")
    });
    for order in exhaustive.iter().chain(greedy.iter()) {
        c.expect("returned order is a leaf order", d.is_leaf_order(order), || format!("{order:?}"));
    }
    c.expect("forest implies quasi-forest", !forest || qf, String::new);
    c.report.quasi_forest = qf;
    c.report.simplicial_forest = forest;
    c.report.connected = d.is_connected();
}

fn local_structure(c: &mut Checker) {
    let d = c.d;
    for (i, &f) in d.facets().iter().enumerate() {
        let Some(leaf) = c.run("is_leaf", d.is_leaf(f)) else { continue };
        let Some(free) = c.run("free_vertices", d.free_vertices(f)) else { continue };
        c.expect("a leaf has a free vertex", !leaf || free != 0, || format!("facet {i}"));
        let Some(joints) = c.run("joints", d.joints(f)) else { continue };
        for g in joints {
            let g = d.facets()[g];
            let covers = d.facets().iter().enumerate().all(|(j, &h)| j == i || bits::is_subset(f & h, g));
            c.expect("a joint contains every intersection", covers, || format!("facet {i}"));
        }
    }
    if let (Some(f), Some(h)) = (c.run("f-vector", d.f_vector()), c.run("homology", reduced_homology_dims(d))) {
        let chi = -1 + f.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>();
        c.expect("Euler characteristic", chi == h.euler_characteristic(), || {
            format!("f-vector gives {chi}, homology gives {}", h.euler_characteristic())
        });
    }
}

fn duality(c: &mut Checker) {
    let d = c.d;
    let Some(sr) = c.run("sr_ideal", sr_ideal(d)) else { return };
    let Some(adual) = c.run("alexander_dual", alexander_dual(d)) else { return };
    let Some(sr) = sr else {
        c.expect("only the full simplex has no non-faces", d.is_full_simplex() && adual.is_none(), String::new);
        return;
    };
    if let Some(back) = c.run("sr_complex", sr_complex(&sr)) {
        c.expect("N(N(D)) = D", back == *d, || back.to_string());
        if let Some(again) = c.run("sr_ideal", sr_ideal(&back)) {
            c.expect("N(N(I)) = I", again.is_some_and(|i| i.same_ideal(&sr)), String::new);
        }
    }
    let Some(adual) = adual else {
        c.expect("alexander_dual exists", false, String::new);
        return;
    };
    if let Some(back) = c.run("alexander_dual", alexander_dual(&adual)) {
        c.expect("dual of dual", back.as_ref() == Some(d), || format!("{back:?}"));
    }
    let Some(ideal) = c.run("dual_generators", dual_generators(d)) else { return };
    if let Some(via) = c.run("sr_ideal of dual", sr_ideal(&adual)) {
        c.expect("dual_generators = N(dual)", via.is_some_and(|v| v.same_ideal(&ideal)), String::new);
    }
    if let Some(back) = c.run("dual_facets", dual_facets(&ideal)) {
        c.expect("dual_facets inverts dual_generators", back.facets() == d.facets(), || back.to_string());
        if let Some(again) = c.run("dual_generators", dual_generators(&back)) {
            c.expect("dual_generators(dual_facets(I)) = I", again == ideal, || again.to_string());
        }
    }
    for w in 1..=d.vertices().full_mask() {
        let (Some(r), Some(sub)) = (c.run("restrict", restrict(&ideal, w)), c.run("induced", d.induced(w))) else {
            continue;
        };
        match r {
            Restriction::Unit => c.expect("unit restriction iff induced simplex", sub.is_full_simplex(), || {
                format!("W = {}", d.vertices().format_set(w))
            }),
            Restriction::Ideal(j) => {
                let ok = !sub.is_full_simplex() && dual_facets(&j).is_ok_and(|e| e == sub);
                c.expect("restriction is dual to the induced subcomplex", ok, || {
                    format!("W = {}", d.vertices().format_set(w))
                });
            }
        }
    }
}

fn is_four_cycle(ideal: &MonomialIdeal) -> bool {
    let mut supports = ideal.supports();
    supports.sort_unstable();
    ideal.vars().len() == 4 && supports == vec![0b0011, 0b0110, 0b1001, 0b1100]
}

fn resolutions(c: &mut Checker) {
    let d = c.d;
    let Some(ideal) = c.run("dual_generators", dual_generators(d)) else { return };
    let Some(v) = c.run("verify", verify(&ideal)) else { return };
    c.expect("three statements agree", v.consistent(), || v.report());
    c.expect("verify sees the same quasi-forest answer", v.is_quasi_forest() == c.report.quasi_forest, || v.report());
    c.report.pd_at_most_one = v.pd_at_most_one();
    if is_four_cycle(&ideal) {
        c.report.four_cycle_pd = Some(v.pd);
    }
    if let Some(t) = c.run("taylor", taylor(&ideal)) {
        let exact = is_exact_frame(&frame(&t));
        c.expect("Taylor frame is exact", exact == Ok(true), || format!("{exact:?}"));
    }
    if !v.pd_at_most_one() {
        return;
    }
    let Some(table) = c.run("betti", betti(&ideal)) else { return };
    let totals = table.totals();
    let Some(trees) = c.run("enumerate_trees", enumerate_trees(d)) else { return };
    let lattice = trees.first().map(|t| t.lcm_lattice());
    let Some(lattice) = c.run("lcm lattice", lattice.unwrap_or(Ok(Vec::new()))) else { return };
    for t in &trees {
        c.report.trees_checked += 1;
        let q = t.labels().len();
        let expected = if q == 1 { vec![1, 1] } else { vec![1, q, q - 1] };
        c.expect("Betti totals equal (1, f0, f1)", totals == expected, || format!("{totals:?} vs {expected:?}"));
        let supports = c.run("supports_resolution", t.supports_resolution());
        c.expect("tree supports a resolution", supports == Some(true), || format!("{:?}", t.edges()));
        let minimal = c.run("is_minimal_support", t.is_minimal_support());
        c.expect("tree support is minimal", minimal == Some(true), || format!("{:?}", t.edges()));
        c.expect("degree filtration", t.has_degree_filtration(), || format!("{:?}", t.edges()));
        c.expect("pairwise lcms suffice", !t.connected_over_pairs() || t.connected_over(&lattice), || {
            format!("{:?}", t.edges())
        });
        let oracle = c.run("is_resolution", is_resolution(t));
        c.expect("homology agrees with connectivity", oracle == Some(true), || format!("{:?}", t.edges()));
        let Some(fc) = c.run("homogenize", homogenize(t)) else { continue };
        c.expect("differential entries are non-units", fc.is_minimal(), || format!("{:?}", t.edges()));
        c.expect("d^2 = 0", fc.check_square_zero().is_ok(), || format!("{:?}", t.edges()));
        let fr = frame(&fc);
        c.expect("tree frame is exact", is_exact_frame(&fr) == Ok(true), || format!("{:?}", t.edges()));
        let graph = c.run("frame_to_graph", frame_to_graph(&fr));
        c.expect("frame graph is a tree", graph.is_some_and(|g| g.is_tree()), || format!("{:?}", t.edges()));
    }
    if let Some(t) = c.run("floystad_tree", floystad_tree(&ideal)) {
        let ok = t.supports_resolution() == Ok(true) && t.is_minimal_support() == Ok(true);
        c.expect("Fløystad tree supports a minimal resolution", ok, || format!("{:?}", t.edges()));
    }
}

/// A quasi-tree that is not a simplicial forest: a triangle with a facet
/// hanging off each edge. Every quasi-forest on at most five vertices is a
/// forest, so the census proper cannot find one below six vertices.
pub fn quasi_forest_not_forest() -> SimplicialComplex {
    let v = VariableSet::numbered("x", 6).expect("valid names");
    SimplicialComplex::new(v, vec![0b000111, 0b001011, 0b010101, 0b100110]).expect("valid complex")
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LevelCounts {
    pub vertices: usize,
    pub complexes: usize,
    pub isomorphism_classes: usize,
    pub quasi_forests: usize,
    pub quasi_trees: usize,
    pub simplicial_forests: usize,
    pub three_way_checked: usize,
    pub pd_at_most_one: usize,
    pub trees_checked: usize,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CensusReport {
    pub levels: Vec<LevelCounts>,
    pub failures: Vec<Failure>,
    /// A quasi-forest that is not a simplicial forest, if one was seen.
    pub quasi_not_forest: Option<String>,
    /// Projective dimension of the 4-cycle edge ideal, when it was reached.
    pub four_cycle_pd: Option<usize>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut out = String::from("n  complexes  classes  quasi-forests  quasi-trees  forests  three-way  pd<=1  trees\n");
        for l in &self.levels {
            out.push_str(&format!(
                "{}  {:>9}  {:>7}  {:>13}  {:>11}  {:>7}  {:>9}  {:>5}  {:>5}\n",
                l.vertices,
                l.complexes,
                l.isomorphism_classes,
                l.quasi_forests,
                l.quasi_trees,
                l.simplicial_forests,
                l.three_way_checked,
                l.pd_at_most_one,
                l.trees_checked
            ));
        }
        if let Some(w) = &self.quasi_not_forest {
            out.push_str(&format!("quasi-forest that is not a forest: {w}\n"));
        }
        if let Some(pd) = self.four_cycle_pd {
            out.push_str(&format!("4-cycle edge ideal: pd(I)={pd}\n"));
        }
        out.push_str(&format!("failures: {}\n", self.failures.len()));
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CensusOptions {
    pub max_vertices: usize,
    /// Complexes on at most this many vertices also get the resolution checks.
    pub three_way_max_vertices: usize,
    pub workers: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self { max_vertices: 4, three_way_max_vertices: 4, workers: 4 }
    }
}

pub fn run(options: CensusOptions) -> Result<CensusReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.max(1))
        .build()
        .map_err(|e| Error::Format(e.to_string()))?;
    let mut report = CensusReport::default();
    for n in 1..=options.max_vertices {
        let all = complexes_on(n)?;
        let three_way = n <= options.three_way_max_vertices;
        let results: Vec<(InstanceReport, Vec<Mask>)> =
            pool.install(|| all.par_iter().map(|d| (check_complex(d, three_way), canonical_form(d))).collect());
        let mut level = LevelCounts { vertices: n, complexes: all.len(), ..Default::default() };
        let mut classes = std::collections::HashSet::new();
        for (d, (r, canon)) in all.iter().zip(results) {
            classes.insert(canon);
            level.quasi_forests += r.quasi_forest as usize;
            level.quasi_trees += (r.quasi_forest && r.connected) as usize;
            level.simplicial_forests += r.simplicial_forest as usize;
            level.three_way_checked += r.three_way_checked as usize;
            level.pd_at_most_one += r.pd_at_most_one as usize;
            level.trees_checked += r.trees_checked;
            if r.quasi_forest && !r.simplicial_forest && report.quasi_not_forest.is_none() {
                report.quasi_not_forest = Some(d.to_string());
            }
            report.four_cycle_pd = report.four_cycle_pd.or(r.four_cycle_pd);
            report.failures.extend(r.failures);
        }
        level.isomorphism_classes = classes.len();
        report.levels.push(level);
    }
    if report.quasi_not_forest.is_none() {
        let w = quasi_forest_not_forest();
        let r = check_complex(&w, false);
        if r.quasi_forest && !r.simplicial_forest {
            report.quasi_not_forest = Some(w.to_string());
        } else {
            report.failures.push(Failure {
                facets: w.to_string(),
                check: "fixed witness is a quasi-forest but not a forest".into(),
                detail: format!("quasi-forest {}, forest {}", r.quasi_forest, r.simplicial_forest),
            });
        }
        report.failures.extend(r.failures);
    }
    Ok(report)
}

/// Outcome of a seeded random suite.
#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteReport {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Random squarefree ideals (at most 5 generators, at most 6 variables): the
/// Taylor frame is exact and `β_i <= C(q, i)`.
pub fn taylor_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut rng = random::rng(seed);
    let mut report = SuiteReport { cases, ..Default::default() };
    for _ in 0..cases {
        let ideal = random::squarefree_ideal(&mut rng, 6, 5)?;
        let exact = is_exact_frame(&frame(&taylor(&ideal)?))?;
        let q = ideal.len();
        let totals = betti(&ideal)?.totals();
        let bounded = totals.iter().enumerate().all(|(i, &b)| i <= q && b <= binomial(q, i));
        if !exact || !bounded {
            report.failures.push(format!("{ideal}: exact={exact}, betti={totals:?}"));
        }
    }
    Ok(report)
}

/// Random non-squarefree ideals (at most 3 variables, exponents at most 2, at
/// most 4 generators): polarization preserves `pd(S/I)`.
pub fn polarization_suite(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut rng = random::rng(seed);
    let mut report = SuiteReport { cases, ..Default::default() };
    for _ in 0..cases {
        let ideal = random::non_squarefree_ideal(&mut rng, 3, 2, 4)?;
        let (pol, _) = polarize(&ideal)?;
        let (a, b) = (pd_quotient(&ideal)?, pd_quotient(&pol)?);
        if !pol.is_squarefree() || a != b {
            report.failures.push(format!("{ideal} -> {pol}: pd {a} vs {b}"));
        }
    }
    Ok(report)
}
