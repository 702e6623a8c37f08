//! Whitney's operations: identification, cleaving and twisting. Each keeps edge
//! ids, and the identity on edge ids is a 2-isomorphism.

use super::{Multigraph, UnionFind};
use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

/// Merges vertex `w` into `v`; `w` is deleted and later vertices shift down by one.
pub fn whitney_identify(x: &Multigraph, v: usize, w: usize) -> Result<Multigraph> {
    let n = x.vertex_count();
    if v >= n || w >= n || v == w {
        return Err(Error::input(format!("cannot identify vertices {v} and {w}")));
    }
    let (label, _) = x.components();
    if label[v] == label[w] {
        return Err(Error::precondition(format!("vertices {v} and {w} lie in the same component")));
    }
    let rename = |a: usize| {
        let a = if a == w { v } else { a };
        if a > w {
            a - 1
        } else {
            a
        }
    };
    let edges = x.edges().iter().map(|&(a, b)| (rename(a), rename(b))).collect();
    let g = Multigraph::new(n - 1, edges)?;
    match x.colors() {
        Some(c) => g.with_colors(c.to_vec()),
        None => Ok(g),
    }
}

/// Splits cut vertex `v`: the listed incident edges move to a new vertex `n`.
/// They must be exactly the edges at `v` of some blocks, leaving at least one block behind.
pub fn whitney_cleave(x: &Multigraph, v: usize, moved: &[usize]) -> Result<Multigraph> {
    if v >= x.vertex_count() {
        return Err(Error::input(format!("vertex {v} out of range")));
    }
    let incident: Vec<usize> = (0..x.edge_count())
        .filter(|&e| {
            let (a, b) = x.endpoints(e);
            a == v || b == v
        })
        .collect();
    if let Some(&e) = moved.iter().find(|e| !incident.contains(e)) {
        return Err(Error::input(format!("edge {e} is not incident to {v}")));
    }
    let (blocks, _) = x.edge_blocks();
    let moved_blocks: Vec<usize> = moved.iter().map(|&e| blocks[e]).collect();
    let whole = incident.iter().all(|e| moved.contains(e) == moved_blocks.contains(&blocks[*e]));
    if moved.is_empty() || moved.len() == incident.len() || !whole {
        return Err(Error::precondition(format!("edges {moved:?} are not a proper union of blocks at cut vertex {v}")));
    }
    let mut g = x.clone();
    let nv = g.add_vertex();
    for &e in moved {
        let (a, b) = g.edges[e];
        g.edges[e] = if a == v { (nv, b) } else { (a, nv) };
    }
    Ok(g)
}

/// Twists about `{u, v}`: every edge touching a vertex of `side` has its `u` and `v`
/// ends exchanged. `side` must be a union of components of `X - {u, v}`, and both
/// `side` and the rest must carry edges.
pub fn whitney_twist(x: &Multigraph, u: usize, v: usize, side: &[usize]) -> Result<Multigraph> {
    let n = x.vertex_count();
    if u >= n || v >= n || u == v || side.iter().any(|&s| s >= n || s == u || s == v) {
        return Err(Error::input(format!("bad twist parameters {u} {v} {side:?}")));
    }
    let mut in_side = vec![false; n];
    for &s in side {
        in_side[s] = true;
    }
    let mut side_edges = 0;
    for &(a, b) in x.edges() {
        let touches = in_side[a] || in_side[b];
        if touches {
            side_edges += 1;
            let ok = |c: usize| in_side[c] || c == u || c == v;
            if !ok(a) || !ok(b) {
                return Err(Error::precondition(format!("{side:?} is not a union of components of X - {{{u}, {v}}}")));
            }
        }
    }
    if side_edges == 0 || side_edges == x.edge_count() {
        return Err(Error::precondition(format!("{{{u}, {v}}} does not split off {side:?}")));
    }
    let swap = |c: usize| {
        if c == u {
            v
        } else if c == v {
            u
        } else {
            c
        }
    };
    let mut g = x.clone();
    for e in 0..g.edge_count() {
        let (a, b) = g.edges[e];
        if in_side[a] || in_side[b] {
            g.edges[e] = (swap(a), swap(b));
        }
    }
    Ok(g)
}

/// One line of a Whitney operation log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WhitneyOp {
    Twist { u: usize, v: usize, side: Vec<usize> },
    Cleave { v: usize, edges: Vec<usize> },
    Identify { v: usize, w: usize },
    Skip(String),
}

impl WhitneyOp {
    pub fn apply(&self, x: &Multigraph) -> Result<Multigraph> {
        match self {
            WhitneyOp::Twist { u, v, side } => whitney_twist(x, *u, *v, side),
            WhitneyOp::Cleave { v, edges } => whitney_cleave(x, *v, edges),
            WhitneyOp::Identify { v, w } => whitney_identify(x, *v, *w),
            WhitneyOp::Skip(_) => Ok(x.clone()),
        }
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for WhitneyOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhitneyOp::Twist { u, v, side } => write!(f, "twist {u} {v} {}", join(side)),
            WhitneyOp::Cleave { v, edges } => write!(f, "cleave {v} {}", join(edges)),
            WhitneyOp::Identify { v, w } => write!(f, "identify {v} {w}"),
            WhitneyOp::Skip(reason) => write!(f, "skip {reason}"),
        }
    }
}

impl FromStr for WhitneyOp {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut words = s.split_whitespace();
        let kind = words.next().ok_or("empty operation")?;
        if kind == "skip" {
            return Ok(WhitneyOp::Skip(words.collect::<Vec<_>>().join(" ")));
        }
        let nums: Vec<usize> =
            words.map(|w| w.parse().map_err(|_| format!("bad number `{w}`"))).collect::<std::result::Result<_, _>>()?;
        match (kind, nums.len()) {
            ("twist", k) if k >= 3 => Ok(WhitneyOp::Twist { u: nums[0], v: nums[1], side: nums[2..].to_vec() }),
            ("cleave", k) if k >= 2 => Ok(WhitneyOp::Cleave { v: nums[0], edges: nums[1..].to_vec() }),
            ("identify", 2) => Ok(WhitneyOp::Identify { v: nums[0], w: nums[1] }),
            _ => Err(format!("unrecognised operation `{s}`")),
        }
    }
}

/// Re-applies a log to `x`.
pub fn replay(x: &Multigraph, log: &[WhitneyOp]) -> Result<Multigraph> {
    log.iter().try_fold(x.clone(), |g, op| op.apply(&g))
}

/// Applies `ops` randomly chosen Whitney operations. Operations with no valid
/// parameters are logged as skips.
pub fn random_2iso_pair(x: &Multigraph, ops: usize, seed: u64) -> (Multigraph, Vec<WhitneyOp>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = x.clone();
    let mut log = Vec::with_capacity(ops);
    for _ in 0..ops {
        let op = match rng.gen_range(0..3) {
            0 => random_twist(&g, &mut rng),
            1 => random_cleave(&g, &mut rng),
            _ => random_identify(&g, &mut rng),
        };
        g = op.apply(&g).expect("generated operations satisfy their preconditions");
        log.push(op);
    }
    (g, log)
}

fn random_twist(g: &Multigraph, rng: &mut ChaCha8Rng) -> WhitneyOp {
    let n = g.vertex_count();
    let active = g.active_vertices();
    let mut options = Vec::new();
    for (i, &u) in active.iter().enumerate() {
        for &v in &active[i + 1..] {
            let mut uf = UnionFind::new(n);
            for &(a, b) in g.edges() {
                if a != u && a != v && b != u && b != v {
                    uf.union(a, b);
                }
            }
            let mut parts: Vec<Vec<usize>> = Vec::new();
            let mut root_part = vec![usize::MAX; n];
            for &w in active.iter().filter(|&&w| w != u && w != v) {
                let r = uf.find(w);
                if root_part[r] == usize::MAX {
                    root_part[r] = parts.len();
                    parts.push(Vec::new());
                }
                parts[root_part[r]].push(w);
            }
            let between_uv = g.edges().iter().any(|&(a, b)| (a == u && b == v) || (a == v && b == u));
            if parts.len() >= 2 || (parts.len() == 1 && between_uv) {
                for p in parts {
                    options.push((u, v, p));
                }
            }
        }
    }
    match options.choose(rng) {
        Some((u, v, side)) => WhitneyOp::Twist { u: *u, v: *v, side: side.clone() },
        None => WhitneyOp::Skip("twist: no separating pair".into()),
    }
}

fn random_cleave(g: &Multigraph, rng: &mut ChaCha8Rng) -> WhitneyOp {
    let cuts = g.articulation_points(None);
    let Some(&v) = cuts.choose(rng) else {
        return WhitneyOp::Skip("cleave: no cut vertex".into());
    };
    let (blocks, _) = g.edge_blocks();
    let incident: Vec<usize> = (0..g.edge_count())
        .filter(|&e| {
            let (a, b) = g.endpoints(e);
            a == v || b == v
        })
        .collect();
    let mut at_v: Vec<usize> = incident.iter().map(|&e| blocks[e]).collect();
    at_v.sort_unstable();
    at_v.dedup();
    // A random nonempty proper subset of the blocks at v.
    let chosen: Vec<usize> = loop {
        let pick: Vec<usize> = at_v.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if !pick.is_empty() && pick.len() < at_v.len() {
            break pick;
        }
    };
    let edges = incident.into_iter().filter(|e| chosen.contains(&blocks[*e])).collect();
    WhitneyOp::Cleave { v, edges }
}

fn random_identify(g: &Multigraph, rng: &mut ChaCha8Rng) -> WhitneyOp {
    let (label, count) = g.components();
    if count < 2 {
        return WhitneyOp::Skip("identify: graph is connected".into());
    }
    let n = g.vertex_count();
    let v = rng.gen_range(0..n);
    let others: Vec<usize> = (0..n).filter(|&w| label[w] != label[v]).collect();
    let w = *others.choose(rng).expect("another component exists");
    WhitneyOp::Identify { v, w }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::matroid::{brute_force_iso, circuits};

    fn two_triangles() -> Multigraph {
        Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap()
    }

    #[test]
    fn triangle_twist_gives_a_triangle() {
        let t = cycle(3);
        let twisted = whitney_twist(&t, 0, 1, &[2]).unwrap();
        assert_eq!(circuits(&twisted).unwrap(), circuits(&t).unwrap());
        assert!(brute_force_iso(&t, &twisted).unwrap().is_some());
    }

    #[test]
    fn identify_then_cleave_round_trip() {
        let g = two_triangles();
        let bowtie = whitney_identify(&g, 0, 3).unwrap();
        assert_eq!(bowtie.vertex_count(), 5);
        assert_eq!(circuits(&bowtie).unwrap(), circuits(&g).unwrap());
        assert_eq!(bowtie.articulation_points(None), vec![0]);
        let back = whitney_cleave(&bowtie, 0, &[3, 5]).unwrap();
        assert_eq!(back.components().1, 2);
        assert_eq!(circuits(&back).unwrap(), circuits(&g).unwrap());
        assert!(whitney_cleave(&bowtie, 0, &[3]).is_err());
        assert!(whitney_identify(&bowtie, 0, 1).is_err());
    }

    #[test]
    fn twist_rejects_non_separating_side() {
        assert!(whitney_twist(&complete(4), 0, 1, &[2]).is_err());
        let c4 = cycle(4);
        let t = whitney_twist(&c4, 0, 2, &[1]).unwrap();
        assert_eq!(circuits(&t).unwrap(), circuits(&c4).unwrap());
    }

    #[test]
    fn log_replays_and_parses() {
        let g = two_triangles();
        let (out, log) = random_2iso_pair(&g, 6, 9);
        assert_eq!(replay(&g, &log).unwrap(), out);
        for op in &log {
            assert_eq!(op.to_string().parse::<WhitneyOp>().unwrap(), *op);
        }
        assert_eq!(circuits(&out).unwrap(), circuits(&g).unwrap());
        assert_eq!(random_2iso_pair(&g, 0, 1).0, g);
    }

    #[test]
    fn biconnected_inputs_only_twist() {
        let g = wheel(4);
        for seed in 0..20 {
            let (out, log) = random_2iso_pair(&g, 4, seed);
            for op in &log {
                assert!(matches!(op, WhitneyOp::Twist { .. } | WhitneyOp::Skip(_)), "{op}");
            }
            assert_eq!(circuits(&out).unwrap(), circuits(&g).unwrap());
        }
    }
}
