//! The acceptance criteria A1-A10, each checked against an independent oracle.
//! Shared by the `acceptance` test target and the `selfcheck` subcommand.

use crate::corpus::{connected_multigraphs, random_3connected, random_connected, shuffled, simple_graphs};
use crate::decompose::{biconnected_components, excised_surgery, recompose, triconnected_decompose, NodeKind};
use crate::error::Result;
use crate::field::PrimeField;
use crate::gi::{graph_isomorphism, validates_vertex_map, ColoredGraph};
use crate::gmi::{gmi_test, gmi_test_with, GmiOptions, GmiStats};
use crate::graph::named::*;
use crate::graph::{
    color_gadget_graphic_with_base, gen_modk_gadget, is_matroid_automorphism, is_matroid_automorphism_system,
    is_matroid_isomorphism, modk_shift, random_2iso_pair, Multigraph,
};
use crate::linear::{
    color_gadget_linear, gi_to_lmib, linear_circuits, lmib_to_gi, stk_construct, stk_min_field, uniform_representation,
    ColumnColoring, PrimeFieldMatrix,
};
use crate::matroid::subset::next_permutation;
use crate::matroid::{
    brute_force_automorphisms, brute_force_iso, brute_force_iso_colored, circuits, closure, family_iso, hyperplanes,
    is_uniform, CircuitFamily, IsoWitness, ListMatroid, MatroidOracle,
};
use crate::reductions::{gma_generators, gmi_via_auto, group_order_by_closure, mib_to_gmi, red_blue_verdict};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

/// Deliberate defects for checking that the suite notices them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// The graphic path gadget ignores colours when choosing path lengths.
    GadgetLength,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    pub fault: Option<Fault>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{} {verdict} ({:.1}s) {}", self.id, self.seconds, self.detail)
    }
}

type Check = (bool, String);

pub const CRITERIA: [&str; 10] = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10"];

pub fn run(id: &str, opts: Options) -> Option<Outcome> {
    let (id, f): (&'static str, fn(Options) -> Result<Check>) = match id {
        "A1" => ("A1", a1),
        "A2" => ("A2", a2),
        "A3" => ("A3", a3),
        "A4" => ("A4", a4),
        "A5" => ("A5", a5),
        "A6" => ("A6", a6),
        "A7" => ("A7", a7),
        "A8" => ("A8", a8),
        "A9" => ("A9", a9),
        "A10" => ("A10", a10),
        _ => return None,
    };
    let start = Instant::now();
    let (passed, detail) = f(opts).unwrap_or_else(|e| (false, format!("error: {e}")));
    Some(Outcome { id, passed, detail, seconds: start.elapsed().as_secs_f64() })
}

/// Runs every criterion, calling `report` as each one finishes.
pub fn run_all(opts: Options, mut report: impl FnMut(&Outcome)) -> Vec<Outcome> {
    CRITERIA
        .iter()
        .map(|id| {
            let out = run(id, opts).expect("known criterion");
            report(&out);
            out
        })
        .collect()
}

struct Tally {
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failures: 0, first: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn finish(self, label: &str) -> Check {
        let mut detail = format!("{} {label}, {} mismatches", self.cases, self.failures);
        if let Some(first) = self.first {
            detail.push_str(&format!("; first: {first}"));
        }
        (self.failures == 0, detail)
    }
}

fn one_line(g: &Multigraph) -> String {
    g.to_string().trim_end().replace('\n', "; ")
}

/// Whitney-equivalent copy of `g` under fresh labels.
fn two_isomorphic_copy(rng: &mut ChaCha8Rng, g: &Multigraph) -> Multigraph {
    let ops = rng.gen_range(0..=g.vertex_count().saturating_sub(2).max(1));
    let (h, _) = random_2iso_pair(g, ops, rng.gen());
    shuffled(rng, &h)
}

/// `g` with one edge moved to a random other vertex pair.
fn moved_edge(rng: &mut ChaCha8Rng, g: &Multigraph) -> Multigraph {
    let n = g.vertex_count();
    let mut edges = g.edges().to_vec();
    let e = rng.gen_range(0..edges.len());
    let u = rng.gen_range(0..n);
    edges[e] = (u, (u + rng.gen_range(1..n)) % n);
    Multigraph::new(n, edges).expect("endpoints in range")
}

fn a1(_: Options) -> Result<Check> {
    let corpus = connected_multigraphs(7);
    let mut tally = Tally::new();
    let mut stats = GmiStats::default();
    let compare = |g: &Multigraph, h: &Multigraph, stats: &mut GmiStats, tally: &mut Tally| -> Result<()> {
        let fast = gmi_test_with(g, h, GmiOptions::default(), stats)?.is_some();
        let slow = brute_force_iso(g, h)?.is_some();
        tally.check(fast == slow, || format!("gmi={fast} brute={slow} on [{}] vs [{}]", one_line(g), one_line(h)));
        Ok(())
    };
    for graphs in &corpus {
        for (i, g) in graphs.iter().enumerate() {
            for h in &graphs[i..] {
                compare(g, h, &mut stats, &mut tally)?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xA1);
    for k in 0..1000 {
        let m = rng.gen_range(1..=8);
        let n = rng.gen_range(2..=(m + 1).min(7));
        let g = random_connected(&mut rng, n, m);
        let h = match k % 3 {
            0 => two_isomorphic_copy(&mut rng, &g),
            1 => moved_edge(&mut rng, &g),
            _ => {
                let n2 = rng.gen_range(2..=(m + 1).min(7));
                random_connected(&mut rng, n2, m)
            }
        };
        compare(&g, &h, &mut stats, &mut tally)?;
    }
    if !stats.monotone() {
        return Ok((false, "refinement class counts decreased or ran past 2n rounds".into()));
    }
    Ok(tally.finish("pairs"))
}

fn a2(_: Options) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA2);
    let mut tally = Tally::new();
    for _ in 0..500 {
        let n = rng.gen_range(4..=12);
        let m = rng.gen_range(n..=16);
        let g = random_connected(&mut rng, n, m);
        let ops = rng.gen_range(1..=n - 2);
        let (h, _) = random_2iso_pair(&g, ops, rng.gen());
        let h = shuffled(&mut rng, &h);
        let ok = match gmi_test(&g, &h)? {
            Some(w) => w.validates(&circuits(&g)?, &circuits(&h)?),
            None => false,
        };
        tally.check(ok, || format!("rejected or bad witness on [{}] vs [{}]", one_line(&g), one_line(&h)));
    }
    Ok(tally.finish("Whitney pairs"))
}

fn a3(_: Options) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA3);
    let mut tally = Tally::new();
    for k in 0..200 {
        let n = rng.gen_range(4..=10);
        let g = random_3connected(&mut rng, n);
        let h = if k % 2 == 0 {
            shuffled(&mut rng, &g)
        } else {
            loop {
                let h = moved_edge(&mut rng, &g);
                if h.is_3connected() {
                    break h;
                }
            }
        };
        let fast = gmi_test(&g, &h)?.is_some();
        let gi = graph_isomorphism(&ColoredGraph::plain(g.clone()), &ColoredGraph::plain(h.clone())).is_some();
        tally.check(fast == gi, || format!("gmi={fast} gi={gi} on [{}] vs [{}]", one_line(&g), one_line(&h)));
    }
    Ok(tally.finish("3-connected pairs"))
}

fn colorings(m: usize, palette: &[u32], max_distinct: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut digits = vec![0usize; m];
    loop {
        let c: Vec<u32> = digits.iter().map(|&d| palette[d]).collect();
        if c.iter().collect::<BTreeSet<_>>().len() <= max_distinct {
            out.push(c);
        }
        let mut i = 0;
        while i < m && digits[i] + 1 == palette.len() {
            digits[i] = 0;
            i += 1;
        }
        if i == m {
            return out;
        }
        digits[i] += 1;
    }
}

/// An item with its gadget image and invariants of both relations: items whose left keys
/// differ are never related on the left, and likewise on the right.
struct Entry<T, G> {
    item: T,
    gadget: G,
    left_key: Vec<usize>,
    right_key: Vec<usize>,
}

type BucketKey<'a> = (&'a [usize], &'a [usize]);

type GraphicEntry = Entry<(Multigraph, Vec<u32>), Multigraph>;
type LinearEntry = Entry<(PrimeFieldMatrix, Vec<u32>), CircuitFamily>;

/// Checks that two equivalence relations coincide on `items`. Each item is compared with
/// every class representative of its bucket under both relations. Buckets sharing one key
/// are compared through their representatives under the other relation, which must reject.
fn same_partition<T, G>(
    entries: &[Entry<T, G>],
    left: impl Fn(&T, &T) -> Result<bool>,
    right: impl Fn(&G, &G) -> Result<bool>,
    tally: &mut Tally,
    show: impl Fn(&T) -> String,
) -> Result<()> {
    let mut buckets: BTreeMap<BucketKey, Vec<usize>> = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        buckets.entry((&e.left_key, &e.right_key)).or_default().push(i);
    }
    let mut reps: Vec<(BucketKey, Vec<usize>)> = Vec::new();
    for (key, members) in buckets {
        let mut classes: Vec<usize> = Vec::new();
        for i in members {
            let mut placed = false;
            for &r in &classes {
                let a = left(&entries[r].item, &entries[i].item)?;
                let b = right(&entries[r].gadget, &entries[i].gadget)?;
                tally
                    .check(a == b, || format!("{a} vs {b} on {} / {}", show(&entries[r].item), show(&entries[i].item)));
                placed |= a;
            }
            if !placed {
                classes.push(i);
            }
        }
        reps.push((key, classes));
    }
    for (x, (kx, rx)) in reps.iter().enumerate() {
        for (ky, ry) in &reps[x + 1..] {
            let (same_left, same_right) = (kx.0 == ky.0, kx.1 == ky.1);
            if !same_left && !same_right {
                continue;
            }
            for &i in rx {
                for &j in ry {
                    let related = if same_left {
                        left(&entries[i].item, &entries[j].item)?
                    } else {
                        right(&entries[i].gadget, &entries[j].gadget)?
                    };
                    tally.check(!related, || {
                        format!("related across buckets: {} / {}", show(&entries[i].item), show(&entries[j].item))
                    });
                }
            }
        }
    }
    Ok(())
}

fn graphic_gadget(g: &Multigraph, colors: &[u32], base: usize, fault: Option<Fault>) -> Result<Multigraph> {
    let colors = match fault {
        Some(Fault::GadgetLength) => vec![1; colors.len()],
        None => colors.to_vec(),
    };
    color_gadget_graphic_with_base(&g.uncolored().with_colors(colors)?, base)
}

fn sorted(labels: &[u32]) -> Vec<usize> {
    let mut v: Vec<usize> = labels.iter().map(|&c| c as usize).collect();
    v.sort_unstable();
    v
}

fn graphic_entries(opts: Options) -> Result<Vec<GraphicEntry>> {
    let base = 7;
    let mut out = Vec::new();
    for (m, graphs) in connected_multigraphs(6).iter().enumerate().skip(1) {
        for g in graphs {
            for c in colorings(m, &[1, 2], 2) {
                let gadget = graphic_gadget(g, &c, base, opts.fault)?;
                let mut left_key = vec![m, crate::matroid::matroid_rank(g)];
                left_key.extend(sorted(&c));
                let right_key = vec![gadget.edge_count(), crate::matroid::matroid_rank(&gadget)];
                out.push(Entry { item: (g.clone(), c), gadget, left_key, right_key });
            }
        }
    }
    Ok(out)
}

/// Matrices with up to three columns drawn with repetition from the zero vector and a point set;
/// every matroid on at most three elements arises. Only simple ones carry colours.
fn linear_entries() -> Result<Vec<LinearEntry>> {
    let f = PrimeField::new(5)?;
    let plane: Vec<Vec<i64>> = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3], vec![1, 4]];
    let cube: Vec<Vec<i64>> = (0..8).map(|b| vec![b & 1, b >> 1 & 1, b >> 2 & 1]).collect();
    let mut out = Vec::new();
    for points in [&plane, &cube] {
        for k in 1..=3 {
            for combo in itertools::Itertools::combinations_with_replacement(0..points.len(), k) {
                let rows = points[0].len();
                let data: Vec<Vec<i64>> = (0..rows).map(|r| combo.iter().map(|&i| points[i][r]).collect()).collect();
                let a = PrimeFieldMatrix::from_rows(f, k, &data)?;
                let simple = (0..k).all(|c| !a.is_zero_column(c)) && a.parallel_pair().is_none();
                let labelings = if simple { colorings(k, &[0, 1, 2], 2) } else { vec![vec![0; k]] };
                for c in labelings {
                    let (g, _) = color_gadget_linear(&a, &ColumnColoring::new(c.clone()))?;
                    let mut left_key = vec![k, a.rank()];
                    left_key.extend(sorted(&c));
                    let right_key = vec![g.cols(), g.rank()];
                    let gadget = linear_circuits(&g, 1 << 22)?;
                    out.push(Entry { item: (a.clone(), c), gadget, left_key, right_key });
                }
            }
        }
    }
    Ok(out)
}

fn a4(opts: Options) -> Result<Check> {
    let mut tally = Tally::new();
    let graphic = graphic_entries(opts)?;
    same_partition(
        &graphic,
        |a, b| Ok(brute_force_iso_colored(&a.0, Some(&a.1), &b.0, Some(&b.1))?.is_some()),
        |a, b| Ok(gmi_test(a, b)?.is_some()),
        &mut tally,
        |x| format!("[{}] colours {:?}", one_line(&x.0), x.1),
    )?;
    let graphic_cases = tally.cases;
    let linear = linear_entries()?;
    same_partition(
        &linear,
        |a, b| Ok(brute_force_iso_colored(&a.0, Some(&a.1), &b.0, Some(&b.1))?.is_some()),
        |a, b| Ok(family_iso(a, b)?.is_some()),
        &mut tally,
        |x| format!("{} colours {:?}", x.0.to_string().trim_end().replace('\n', "; "), x.1),
    )?;
    let linear_cases = tally.cases - graphic_cases;
    let (ok, detail) = tally.finish("comparisons");
    Ok((
        ok,
        format!(
            "{detail} ({} graphic items, {graphic_cases} comparisons; {} linear items, {linear_cases} comparisons)",
            graphic.len(),
            linear.len()
        ),
    ))
}

fn a5(_: Options) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA5);
    let mut tally = Tally::new();
    for _ in 0..50 {
        let m = rng.gen_range(3..=8);
        let n = rng.gen_range(2..=(m + 1).min(6));
        let g = random_connected(&mut rng, n, m);
        let family = circuits(&g)?;
        let autos = brute_force_automorphisms(&g)?;
        for k in 0..200 {
            let perm = if k % 2 == 0 {
                let mut p: Vec<usize> = (0..m).collect();
                p.shuffle(&mut rng);
                IsoWitness::new(p)?
            } else {
                autos.choose(&mut rng).expect("identity is an automorphism").clone()
            };
            let brute = perm.validates(&family, &family);
            let fast = is_matroid_automorphism(&g, &perm)?;
            let system = is_matroid_automorphism_system(&g, &perm)?;
            tally.check(fast == brute && system == brute, || {
                format!(
                    "cycle-space={fast} system={system} brute={brute} for {:?} on [{}]",
                    perm.as_slice(),
                    one_line(&g)
                )
            });
        }
    }
    let c4 = brute_force_automorphisms(&cycle(4))?.len();
    tally.check(c4 == 24, || format!("|Aut(M(C4))| = {c4}"));
    let x3 = gen_modk_gadget(3)?;
    for a in 0..3 {
        for b in 0..3 {
            let ok = is_matroid_automorphism(&x3, &modk_shift(3, a, b))?;
            tally.check(ok, || format!("X(3) shift ({a},{b}) rejected"));
        }
    }
    Ok(tally.finish("membership checks"))
}

fn stars(g: &Multigraph) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|v| {
            (0..g.edge_count())
                .filter(|&e| {
                    let (a, b) = g.endpoints(e);
                    a == v || b == v
                })
                .collect()
        })
        .collect();
    out.sort();
    out
}

fn graph_automorphism_count(g: &Multigraph) -> usize {
    let c = ColoredGraph::plain(g.clone());
    let mut p: Vec<usize> = (0..g.vertex_count()).collect();
    let mut count = 0;
    loop {
        count += usize::from(validates_vertex_map(&c, &c, &p));
        if !next_permutation(&mut p) {
            return count;
        }
    }
}

fn a6(_: Options) -> Result<Check> {
    let mut tally = Tally::new();
    let graphs: Vec<Multigraph> = (4..=6).flat_map(simple_graphs).filter(|g| g.min_degree() >= 3).collect();
    for g in &graphs {
        let a = stk_construct(g, 3, stk_min_field(g.vertex_count(), 3)?)?;
        let mut dependent: Vec<Vec<usize>> = hyperplanes(&a)?.into_iter().filter(|h| !a.is_independent(h)).collect();
        dependent.sort();
        let expected = stars(g);
        tally.check(dependent == expected, || {
            format!("hyperplanes {dependent:?} vs stars {expected:?} on [{}]", one_line(g))
        });
    }
    let k4 = complete(4);
    let st = stk_construct(&k4, 3, stk_min_field(4, 3)?)?;
    let aut_st = brute_force_automorphisms(&st)?.len();
    let aut_k4 = graph_automorphism_count(&k4);
    tally.check(aut_st == aut_k4 && aut_k4 == 24, || format!("|Aut(St_3(K4))| = {aut_st}, |Aut(K4)| = {aut_k4}"));
    let (ok, detail) = tally.finish("checks");
    Ok((ok, format!("{detail} over {} graphs", graphs.len())))
}

fn a7(_: Options) -> Result<Check> {
    let mut tally = Tally::new();
    for p in [11, 13] {
        let f = PrimeField::new(p)?;
        for m in 1..=7 {
            for k in 1..=m {
                let ok = is_uniform(&uniform_representation(k, m, f)?, k)?;
                tally.check(ok, || format!("U({k},{m}) over GF({p}) not uniform"));
            }
        }
    }
    Ok(tally.finish("representations"))
}

/// Every matroid of rank at most 2 on `m` elements, one per isomorphism class.
fn rank2_matroids(m: usize) -> Result<Vec<ListMatroid>> {
    let mut reps: Vec<ListMatroid> = Vec::new();
    for r in 0..=2.min(m) {
        let sets: Vec<Vec<usize>> = itertools::Itertools::combinations(0..m, r).collect();
        for mask in 1u32..(1 << sets.len()) {
            let bases: Vec<Vec<usize>> =
                (0..sets.len()).filter(|i| mask >> i & 1 == 1).map(|i| sets[i].clone()).collect();
            let Ok(cand) = ListMatroid::new(m, bases) else {
                continue;
            };
            if crate::matroid::check_axioms(&cand)?.is_err() {
                continue;
            }
            let mut fresh = true;
            for r in &reps {
                if brute_force_iso(r, &cand)?.is_some() {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                reps.push(cand);
            }
        }
    }
    Ok(reps)
}

fn relabeled_list(rng: &mut ChaCha8Rng, a: &ListMatroid) -> Result<ListMatroid> {
    let mut p: Vec<usize> = (0..a.ground_size()).collect();
    p.shuffle(rng);
    let bases = a.bases().iter().map(|b| b.iter().map(|&e| p[e]).collect()).collect();
    ListMatroid::new(a.ground_size(), bases)
}

/// Long lines (rank-2 flats with at least three points) of a simple rank-3 matroid.
fn long_lines<M: MatroidOracle>(a: &M) -> Result<CircuitFamily> {
    let m = a.ground_size();
    let mut lines = BTreeSet::new();
    for i in 0..m {
        for j in i + 1..m {
            let l = closure(a, &[i, j])?;
            if l.len() >= 3 {
                lines.insert(l);
            }
        }
    }
    Ok(CircuitFamily::new(m, lines.into_iter().collect()))
}

fn is_simple_rank3<M: MatroidOracle>(a: &M) -> bool {
    let m = a.ground_size();
    crate::matroid::matroid_rank(a) == 3 && (0..m).all(|i| (i + 1..m).all(|j| a.is_independent(&[i, j])))
}

fn a8(_: Options) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA8);
    let mut tally = Tally::new();
    for m in 1..=5 {
        let reps = rank2_matroids(m)?;
        for (i, a) in reps.iter().enumerate() {
            let copy = relabeled_list(&mut rng, a)?;
            for b in reps[i..].iter().chain(std::iter::once(&copy)) {
                let (x1, x2) = mib_to_gmi(a, b, 2)?;
                let fast = red_blue_verdict(&x1, &x2)?;
                let slow = brute_force_iso(a, b)?.is_some();
                tally.check(fast == slow, || {
                    format!("mib_to_gmi {fast} vs {slow} on {:?} / {:?}", a.bases(), b.bases())
                });
            }
        }
    }
    let mib = tally.cases;
    let mut graphs: Vec<Multigraph> = simple_graphs(4);
    graphs.extend(simple_graphs(5).into_iter().filter(|g| g.min_degree() >= 3));
    let mut pairs: Vec<(Multigraph, Multigraph)> = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        pairs.push((g.clone(), shuffled(&mut rng, g)));
        for h in &graphs[i + 1..] {
            if g.vertex_count() == h.vertex_count() && g.edge_count() == h.edge_count() {
                pairs.push((g.clone(), h.clone()));
            }
        }
    }
    for (g, h) in &pairs {
        let (a, b) = gi_to_lmib(g, h, None)?;
        let lmi =
            is_simple_rank3(&a) && is_simple_rank3(&b) && family_iso(&long_lines(&a)?, &long_lines(&b)?)?.is_some();
        let gi = graph_isomorphism(&ColoredGraph::plain(g.clone()), &ColoredGraph::plain(h.clone())).is_some();
        tally.check(lmi == gi, || format!("gi_to_lmib {lmi} vs {gi} on [{}] / [{}]", one_line(g), one_line(h)));
    }
    let gil = tally.cases - mib;
    let f = PrimeField::new(5)?;
    let points: Vec<[i64; 2]> = vec![[0, 0], [0, 1], [1, 0], [1, 1], [1, 2], [1, 3], [1, 4]];
    for k in 1..=4 {
        let mats: Vec<PrimeFieldMatrix> = itertools::Itertools::combinations_with_replacement(0..points.len(), k)
            .map(|cols| {
                let rows: Vec<Vec<i64>> = (0..2).map(|r| cols.iter().map(|&c| points[c][r]).collect()).collect();
                PrimeFieldMatrix::from_rows(f, k, &rows)
            })
            .collect::<Result<_>>()?;
        for (i, a) in mats.iter().enumerate() {
            for b in &mats[i..] {
                let (g1, g2) = lmib_to_gi(a, b, 2)?;
                let gi = a.rank() == b.rank() && graph_isomorphism(&g1, &g2).is_some();
                let slow = brute_force_iso(a, b)?.is_some();
                tally.check(gi == slow, || format!("lmib_to_gi {gi} vs {slow} on {a} / {b}"));
            }
        }
    }
    let lg = tally.cases - mib - gil;
    let (ok, detail) = tally.finish("pairs");
    Ok((ok, format!("{detail} ({mib} mib_to_gmi, {gil} gi_to_lmib, {lg} lmib_to_gi)")))
}

fn a9_corpus(rng: &mut ChaCha8Rng) -> Vec<Multigraph> {
    let bowtie = Multigraph::new(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).expect("bowtie");
    let theta = Multigraph::new(5, vec![(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).expect("theta");
    let k4e = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).expect("K4 minus an edge");
    let mut out = vec![
        cycle(3),
        cycle(4),
        cycle(5),
        cycle(8),
        complete(4),
        wheel(4),
        path(3),
        star(4),
        parallel(3),
        parallel(5),
        bowtie,
        theta,
        k4e,
    ];
    while out.len() < 30 {
        let m = rng.gen_range(3..=8);
        let n = rng.gen_range(2..=(m + 1).min(6));
        out.push(random_connected(rng, n, m));
    }
    out
}

fn a9(_: Options) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA9);
    let mut tally = Tally::new();
    for g in a9_corpus(&mut rng) {
        let gens = gma_generators(&g)?;
        let brute = brute_force_automorphisms(&g)?.len();
        let order = gens.order().map(|o| o as usize);
        let closed = group_order_by_closure(g.edge_count(), &gens.generators, 50_000);
        tally.check(order == Some(brute) && closed == Some(brute), || {
            format!("order {order:?}, closure {closed:?}, brute {brute} on [{}]", one_line(&g))
        });
    }
    let orders = tally.cases;
    for k in 0..100 {
        let m = rng.gen_range(1..=8);
        let n = rng.gen_range(2..=(m + 1).min(6));
        let g = random_connected(&mut rng, n, m);
        let h = if k % 2 == 0 { two_isomorphic_copy(&mut rng, &g) } else { moved_edge(&mut rng, &g) };
        let via = gmi_via_auto(&g, &h)?;
        let direct = gmi_test(&g, &h)?.is_some();
        let valid = match &via {
            Some(w) => is_matroid_isomorphism(&g, &h, w)?,
            None => true,
        };
        tally.check(via.is_some() == direct && valid, || {
            format!("iso_from_auto {} vs gmi {direct} on [{}] / [{}]", via.is_some(), one_line(&g), one_line(&h))
        });
    }
    let (ok, detail) = tally.finish("checks");
    Ok((ok, format!("{detail} ({orders} group orders, {} iso_from_auto pairs)", 100)))
}

fn is_planar(g: &Multigraph) -> bool {
    use rustworkx_core::petgraph::graph::UnGraph;
    let mut pg = UnGraph::<(), ()>::with_capacity(g.vertex_count(), g.edge_count());
    let nodes: Vec<_> = (0..g.vertex_count()).map(|_| pg.add_node(())).collect();
    let simple: BTreeSet<(usize, usize)> =
        g.edges().iter().filter(|(u, v)| u != v).map(|&(u, v)| (u.min(v), u.max(v))).collect();
    for (u, v) in simple {
        pg.add_edge(nodes[u], nodes[v], ());
    }
    rustworkx_core::planar::is_planar(&pg)
}

fn a10(_: Options) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA10);
    let mut tally = Tally::new();
    let mut graphs: Vec<Multigraph> = connected_multigraphs(6).into_iter().flatten().collect();
    graphs.extend((3..9).map(wheel));
    graphs.extend([complete(4), complete(5), petersen(), gen_modk_gadget(3)?, gen_modk_gadget(4)?]);
    while graphs.len() < 260 {
        let n = rng.gen_range(4..=10);
        let m = rng.gen_range(n..=2 * n + 2);
        graphs.push(random_connected(&mut rng, n, m));
    }
    let mut stats = GmiStats::default();
    let mut planar_checked = 0;
    for g in &graphs {
        let planar = is_planar(g);
        for block in biconnected_components(g).blocks.into_iter().filter(|b| b.len() > 1) {
            let x = g.edge_subgraph(&block);
            let d = triconnected_decompose(&x)?;
            let valid = d.validate().is_ok() && recompose(&d)? == x;
            let (xp, t) = excised_surgery(&x, &d)?;
            let valid = valid && t.validate().is_ok() && recompose(&t)? == xp;
            tally.check(valid, || format!("decomposition invalid on [{}]", one_line(&x)));
            if planar {
                planar_checked += 1;
                let mut pieces = vec![xp.clone()];
                for c in &t.nodes {
                    let (local, _) = c.local_graph();
                    let colors: Vec<u32> = (1..=local.edge_count() as u32).collect();
                    if c.kind == NodeKind::Triconnected {
                        pieces.push(color_gadget_graphic_with_base(
                            &local.uncolored().with_colors(colors)?,
                            local.vertex_count(),
                        )?);
                    }
                    pieces.push(local);
                }
                let colors: Vec<u32> = (0..x.edge_count()).map(|e| 1 + (e % 2) as u32).collect();
                pieces.push(color_gadget_graphic_with_base(&x.uncolored().with_colors(colors)?, x.vertex_count())?);
                let ok = pieces.iter().all(is_planar);
                tally.check(ok, || format!("planarity lost on [{}]", one_line(&x)));
            }
        }
        let h = two_isomorphic_copy(&mut rng, g);
        let accepted = gmi_test_with(g, &h, GmiOptions::default(), &mut stats)?.is_some();
        tally.check(accepted, || format!("2-isomorphic copy rejected on [{}]", one_line(g)));
    }
    let monotone = stats.monotone();
    tally.check(monotone, || "class counts decreased or exceeded 2n rounds".into());
    let (ok, detail) = tally.finish("structural checks");
    Ok((
        ok,
        format!(
            "{detail} ({} graphs, {planar_checked} planar blocks, {} refinement runs)",
            graphs.len(),
            stats.q_history.len()
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gadget_fault_is_caught() {
        let out = run("A4", Options { fault: Some(Fault::GadgetLength) }).unwrap();
        assert!(!out.passed, "{out}");
    }

    #[test]
    fn unknown_criterion() {
        assert!(run("A11", Options::default()).is_none());
    }
}
