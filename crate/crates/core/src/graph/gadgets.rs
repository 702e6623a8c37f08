//! Graph gadgets: the edge-colouring path gadget and X(k).

use super::Multigraph;
use crate::error::{Error, Result};
use crate::matroid::IsoWitness;

/// Removes edge colours by adding, for each coloured edge `e = (u, v)`, a fresh
/// path of length `n + colour(e)` from `u` to `v`. Original edge ids are kept;
/// path edges follow in order of `e`.
pub fn color_gadget_graphic(x: &Multigraph) -> Result<Multigraph> {
    color_gadget_graphic_with_base(x, x.vertex_count())
}

/// As [`color_gadget_graphic`] with path lengths `base + colour(e)`. Comparing two graphs
/// needs a common `base` that is at least the larger vertex count.
pub fn color_gadget_graphic_with_base(x: &Multigraph, base: usize) -> Result<Multigraph> {
    let Some(colors) = x.colors() else {
        return Ok(x.clone());
    };
    if let Some(e) = colors.iter().position(|&c| c == 0) {
        return Err(Error::precondition(format!("edge {e} has colour 0; colours must be positive")));
    }
    if base < x.vertex_count() {
        return Err(Error::precondition(format!("path base {base} is below the vertex count {}", x.vertex_count())));
    }
    let mut out = x.uncolored();
    for (e, &c) in colors.iter().enumerate() {
        let (u, v) = x.endpoints(e);
        let len = base + c as usize;
        let mut prev = u;
        for _ in 1..len {
            let w = out.add_vertex();
            out.add_edge(prev, w, 0);
            prev = w;
        }
        out.add_edge(prev, v, 0);
    }
    Ok(out)
}

/// X(k): vertices `x_i = i`, `y_j = k + j`, `z_t = 2k + t`, `u_{i,j} = 3k + ik + j`;
/// edges `(x_i, u_{i,j})`, then `(y_j, u_{i,j})`, then `(u_{i,j}, z_{i+j mod k})`,
/// each block in row-major `(i, j)` order.
pub fn gen_modk_gadget(k: usize) -> Result<Multigraph> {
    if k < 3 {
        return Err(Error::input(format!("X(k) needs k >= 3, got {k}")));
    }
    let u = |i: usize, j: usize| 3 * k + i * k + j;
    let mut edges = Vec::with_capacity(3 * k * k);
    for i in 0..k {
        for j in 0..k {
            edges.push((i, u(i, j)));
        }
    }
    for i in 0..k {
        for j in 0..k {
            edges.push((k + j, u(i, j)));
        }
    }
    for i in 0..k {
        for j in 0..k {
            edges.push((u(i, j), 2 * k + (i + j) % k));
        }
    }
    Multigraph::new(3 * k + k * k, edges)
}

/// Edge map of X(k) induced by `x_i -> x_{i+a}`, `y_j -> y_{j+b}`, `z_t -> z_{t+a+b}`.
pub fn modk_shift(k: usize, a: usize, b: usize) -> IsoWitness {
    let mut map = vec![0; 3 * k * k];
    for block in 0..3 {
        for i in 0..k {
            for j in 0..k {
                let src = block * k * k + i * k + j;
                map[src] = block * k * k + ((i + a) % k) * k + (j + b) % k;
            }
        }
    }
    IsoWitness::new(map).expect("shift is a bijection")
}
