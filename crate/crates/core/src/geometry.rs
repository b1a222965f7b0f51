//! Exact planar Voronoi diagrams and meridian loop systems.
//!
//! Cells are convex polygons obtained by clipping a bounding box with one
//! bisector half-plane per other site, so every vertex is rational. The
//! union of all cell boundaries is a plane graph onto which the punctured
//! box retracts; loops are walks in that graph.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::numeric::{gauss_norm, GaussianRational, Rational};

pub type Point = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("no sites given")]
    NoSites,
    #[error("site {0} appears twice")]
    DuplicateSite(Point),
    #[error("site {0} is not strictly inside the box")]
    SiteOutsideBox(Point),
    #[error("point {0} lies on the loop")]
    OnLoop(Point),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("loop construction failed: {0}")]
    Internal(String),
}

/// Axis-parallel rectangle `[lo.re, hi.re] x [lo.im, hi.im]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundingBox {
    pub lo: Point,
    pub hi: Point,
}

impl BoundingBox {
    /// Bounding rectangle of `sites` inflated on every side by
    /// `max(d, 1)`, where `d` is a rational upper bound on the diameter.
    pub fn around(sites: &[Point]) -> Self {
        let mut d = Rational::one();
        for (i, a) in sites.iter().enumerate() {
            for b in &sites[i + 1..] {
                let m = (a - b).modulus_upper_bound();
                if m > d {
                    d = m;
                }
            }
        }
        let min =
            |f: fn(&Point) -> &Rational| sites.iter().map(f).min().cloned().unwrap_or_default();
        let max =
            |f: fn(&Point) -> &Rational| sites.iter().map(f).max().cloned().unwrap_or_default();
        BoundingBox {
            lo: Point::new(min(|p| &p.re) - &d, min(|p| &p.im) - &d),
            hi: Point::new(max(|p| &p.re) + &d, max(|p| &p.im) + &d),
        }
    }

    /// Corners counterclockwise from the lower left.
    pub fn corners(&self) -> [Point; 4] {
        [
            self.lo.clone(),
            Point::new(self.hi.re.clone(), self.lo.im.clone()),
            self.hi.clone(),
            Point::new(self.lo.re.clone(), self.hi.im.clone()),
        ]
    }

    fn strictly_contains(&self, p: &Point) -> bool {
        self.lo.re < p.re && p.re < self.hi.re && self.lo.im < p.im && p.im < self.hi.im
    }
}

/// Plane graph of a clipped Voronoi diagram.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarGraph {
    vertices: Vec<Point>,
    edges: Vec<(usize, usize)>,
    cells: Vec<Vec<usize>>,
    outer: Vec<usize>,
    bbox: BoundingBox,
}

impl PlanarGraph {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Counterclockwise vertex cycle bounding the cell of site `i` (first
    /// vertex not repeated).
    pub fn cell(&self, i: usize) -> &[usize] {
        &self.cells[i]
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// Counterclockwise cycle around the box boundary.
    pub fn outer_cycle(&self) -> &[usize] {
        &self.outer
    }

    pub fn bbox(&self) -> &BoundingBox {
        &self.bbox
    }

    fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }
}

fn key(p: &Point) -> (Rational, Rational) {
    (p.re.clone(), p.im.clone())
}

/// Signed value whose sign says on which side of the bisector of `p` and
/// `q` the point `z` lies; nonnegative on `p`'s side.
fn bisector_value(p: &Point, q: &Point, z: &Point) -> Rational {
    let d = q - p;
    gauss_norm(q)
        - gauss_norm(p)
        - Rational::from_integer(2.into()) * (&z.re * &d.re + &z.im * &d.im)
}

fn clip(poly: &[Point], p: &Point, q: &Point) -> Vec<Point> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for k in 0..poly.len() {
        let a = &poly[k];
        let b = &poly[(k + 1) % poly.len()];
        let (fa, fb) = (bisector_value(p, q, a), bisector_value(p, q, b));
        if !fa.is_negative() {
            out.push(a.clone());
        }
        if (fa.is_positive() && fb.is_negative()) || (fa.is_negative() && fb.is_positive()) {
            let t = &fa / (&fa - &fb);
            out.push(a + &(b - a).scale(&t));
        }
    }
    out.dedup();
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Whether `p` lies strictly between `a` and `b` on the segment.
fn strictly_inside_segment(p: &Point, a: &Point, b: &Point) -> bool {
    let cross = (&b.re - &a.re) * (&p.im - &a.im) - (&p.re - &a.re) * (&b.im - &a.im);
    if !cross.is_zero() {
        return false;
    }
    let dot = (&p.re - &a.re) * (&b.re - &a.re) + (&p.im - &a.im) * (&b.im - &a.im);
    dot.is_positive() && dot < gauss_norm(&(b - a))
}

fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    p == a || p == b || strictly_inside_segment(p, a, b)
}

/// Voronoi diagram of `sites` clipped to `bbox`.
pub fn voronoi(sites: &[Point], bbox: &BoundingBox) -> Result<PlanarGraph, GeometryError> {
    if sites.is_empty() {
        return Err(GeometryError::NoSites);
    }
    let mut seen = HashSet::new();
    for s in sites {
        if !seen.insert(key(s)) {
            return Err(GeometryError::DuplicateSite(s.clone()));
        }
        if !bbox.strictly_contains(s) {
            return Err(GeometryError::SiteOutsideBox(s.clone()));
        }
    }
    let polygons: Vec<Vec<Point>> = sites
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut poly = bbox.corners().to_vec();
            for (j, q) in sites.iter().enumerate() {
                if i != j {
                    poly = clip(&poly, p, q);
                }
            }
            poly
        })
        .collect();

    // vertices are numbered in lexicographic order
    let keys: BTreeSet<(Rational, Rational)> = polygons.iter().flatten().map(key).collect();
    let vertices: Vec<Point> = keys
        .iter()
        .map(|(re, im)| Point::new(re.clone(), im.clone()))
        .collect();
    let id: BTreeMap<(Rational, Rational), usize> =
        keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();

    let mut cells = Vec::with_capacity(polygons.len());
    for poly in &polygons {
        let mut cyc = Vec::new();
        for k in 0..poly.len() {
            let (a, b) = (&poly[k], &poly[(k + 1) % poly.len()]);
            cyc.push(id[&key(a)]);
            let mut between: Vec<(Rational, usize)> = vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| strictly_inside_segment(v, a, b))
                .map(|(i, v)| (gauss_norm(&(v - a)), i))
                .collect();
            between.sort();
            cyc.extend(between.into_iter().map(|(_, i)| i));
        }
        cells.push(cyc);
    }

    let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edges = HashSet::new();
    for (c, cyc) in cells.iter().enumerate() {
        for k in 0..cyc.len() {
            let (u, v) = (cyc[k], cyc[(k + 1) % cyc.len()]);
            directed.insert((u, v), c);
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
    edges.sort();

    // boundary edges are used by one cell only, in the counterclockwise sense
    let mut next: HashMap<usize, usize> = HashMap::new();
    for &(u, v) in directed.keys() {
        if !directed.contains_key(&(v, u)) {
            next.insert(u, v);
        }
    }
    let start = id[&key(&bbox.lo)];
    let mut outer = vec![start];
    let mut cur = start;
    loop {
        cur = *next
            .get(&cur)
            .ok_or_else(|| GeometryError::Internal("open boundary".into()))?;
        if cur == start {
            break;
        }
        outer.push(cur);
        if outer.len() > vertices.len() {
            return Err(GeometryError::Internal("boundary does not close".into()));
        }
    }

    Ok(PlanarGraph {
        vertices,
        edges,
        cells,
        outer,
        bbox: bbox.clone(),
    })
}

/// Winding number of the closed polyline `points` (first = last) around
/// `p`, by signed upward/downward crossings of the horizontal ray.
pub fn winding_number(points: &[Point], p: &Point) -> Result<i64, GeometryError> {
    let mut wn = 0;
    for w in points.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if on_segment(p, a, b) {
            return Err(GeometryError::OnLoop(p.clone()));
        }
        let left = (&b.re - &a.re) * (&p.im - &a.im) - (&p.re - &a.re) * (&b.im - &a.im);
        if a.im <= p.im {
            if b.im > p.im && left.is_positive() {
                wn += 1;
            }
        } else if b.im <= p.im && left.is_negative() {
            wn -= 1;
        }
    }
    Ok(wn)
}

/// Closed walk in a [`PlanarGraph`], as vertex indices with first = last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop {
    pub vertices: Vec<usize>,
}

impl Loop {
    pub fn points(&self, graph: &PlanarGraph) -> Vec<Point> {
        self.vertices
            .iter()
            .map(|&v| graph.vertices[v].clone())
            .collect()
    }

    /// Consecutive vertex pairs.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Meridians `loops[k]` around site `site_order[k]`, all based at
/// `basepoint`, whose product is the counterclockwise box boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopSystem {
    pub basepoint: usize,
    pub loops: Vec<Loop>,
    pub site_order: Vec<usize>,
}

impl LoopSystem {
    /// Concatenation of all loops, in order.
    pub fn product_walk(&self) -> Vec<usize> {
        let mut w = vec![self.basepoint];
        for l in &self.loops {
            w.extend_from_slice(&l.vertices[1..]);
        }
        w
    }

    /// `m[k][j]` is the winding number of loop `k` around site `j`.
    pub fn winding_matrix(
        &self,
        graph: &PlanarGraph,
        sites: &[Point],
    ) -> Result<Vec<Vec<i64>>, GeometryError> {
        self.loops
            .iter()
            .map(|l| {
                let pts = l.points(graph);
                sites.iter().map(|s| winding_number(&pts, s)).collect()
            })
            .collect()
    }
}

/// Cancels immediate backtracks `u v u -> u` in a walk.
pub fn reduce_walk(walk: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(walk.len());
    for &v in walk {
        if out.len() >= 2 && out[out.len() - 2] == v {
            out.pop();
        } else if out.last() != Some(&v) {
            out.push(v);
        }
    }
    out
}

/// Builds meridian loops by peeling cells off the boundary walk.
///
/// The walk `W` starts as the counterclockwise box boundary from the
/// basepoint. The first cell met along `W` shares a run `A` with it; if the
/// cell boundary is `A B`, then `W = P A S = (P A B P^-1)(P B^-1 S)`, which
/// gives the next loop `P A B P^-1` and the new walk. When all cells are
/// gone the walk must reduce to the trivial one, so the loops multiply to
/// the boundary. The basepoint is the boundary vertex nearest `hint`
/// (default: the lower-left corner), ties broken by `(re, im)`.
pub fn loop_system(
    graph: &PlanarGraph,
    sites: &[Point],
    hint: Option<&Point>,
) -> Result<LoopSystem, GeometryError> {
    if sites.len() != graph.num_cells() {
        return Err(GeometryError::Internal(
            "site count differs from cell count".into(),
        ));
    }
    connected(graph)?;
    let hint = hint.cloned().unwrap_or_else(|| graph.bbox.lo.clone());
    let outer = graph.outer_cycle();
    let bpos = (0..outer.len())
        .min_by(|&a, &b| {
            let (pa, pb) = (&graph.vertices[outer[a]], &graph.vertices[outer[b]]);
            gauss_norm(&(pa - &hint))
                .cmp(&gauss_norm(&(pb - &hint)))
                .then_with(|| pa.lex_cmp(pb))
        })
        .unwrap();
    let base = outer[bpos];
    let mut walk: Vec<usize> = outer[bpos..]
        .iter()
        .chain(&outer[..bpos])
        .copied()
        .collect();
    walk.push(base);

    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    for c in 0..graph.num_cells() {
        let cyc = graph.cell(c);
        for k in 0..cyc.len() {
            owner.insert((cyc[k], cyc[(k + 1) % cyc.len()]), c);
        }
    }
    let mut remaining: HashSet<usize> = (0..graph.num_cells()).collect();
    let mut loops = Vec::new();
    let mut order = Vec::new();
    while !remaining.is_empty() {
        let (k, c) = (0..walk.len() - 1)
            .find_map(|k| {
                owner
                    .get(&(walk[k], walk[k + 1]))
                    .filter(|c| remaining.contains(c))
                    .map(|&c| (k, c))
            })
            .ok_or_else(|| GeometryError::Internal("no cell on the boundary walk".into()))?;
        let cyc = graph.cell(c);
        let m = cyc.len();
        let pos_u = cyc.iter().position(|&x| x == walk[k]).unwrap();
        // run A: walk edges k..k+len that follow the cell cycle
        let mut len = 0;
        while len < m && k + len + 1 < walk.len() && walk[k + len + 1] == cyc[(pos_u + len + 1) % m]
        {
            len += 1;
        }
        let prefix = &walk[..=k];
        let mut lp: Vec<usize> = prefix.to_vec();
        lp.extend((1..=m).map(|s| cyc[(pos_u + s) % m]));
        lp.extend(prefix.iter().rev().skip(1));
        loops.push(Loop { vertices: lp });
        order.push(c);

        // B^-1: from u backwards around the cell to v
        let back: Vec<usize> = (0..=(m - len) % m)
            .map(|s| cyc[(pos_u + m - s) % m])
            .collect();
        let mut next: Vec<usize> = walk[..k].to_vec();
        next.extend(back);
        next.extend_from_slice(&walk[k + len + 1..]);
        walk = reduce_walk(&next);
        remaining.remove(&c);
    }
    if walk != [base] {
        return Err(GeometryError::Internal(
            "loop product is not the boundary".into(),
        ));
    }
    let system = LoopSystem {
        basepoint: base,
        loops,
        site_order: order,
    };
    let wm = system.winding_matrix(graph, sites)?;
    for (k, row) in wm.iter().enumerate() {
        for (j, &w) in row.iter().enumerate() {
            let expect = i64::from(system.site_order[k] == j);
            if w != expect {
                return Err(GeometryError::Internal(format!(
                    "loop {} winds {} times around site {}",
                    k, w, j
                )));
            }
        }
    }
    Ok(system)
}

fn connected(graph: &PlanarGraph) -> Result<(), GeometryError> {
    let adj = graph.neighbors();
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    if seen.iter().all(|&s| s) {
        Ok(())
    } else {
        Err(GeometryError::Disconnected)
    }
}

/// Line-oriented dump for plotting:
///
/// ```text
/// vertex <index> <re> <im>
/// edge <u> <v>
/// site <index> <re> <im>
/// basepoint <vertex>
/// loop <k> <site> <v0> <v1> ... <v0>
/// ```
pub fn dump_text(graph: &PlanarGraph, sites: &[Point], system: Option<&LoopSystem>) -> String {
    let mut s = String::new();
    for (i, v) in graph.vertices.iter().enumerate() {
        writeln!(s, "vertex {} {} {}", i, v.re, v.im).unwrap();
    }
    for (u, v) in &graph.edges {
        writeln!(s, "edge {} {}", u, v).unwrap();
    }
    for (i, p) in sites.iter().enumerate() {
        writeln!(s, "site {} {} {}", i, p.re, p.im).unwrap();
    }
    if let Some(sys) = system {
        writeln!(s, "basepoint {}", sys.basepoint).unwrap();
        for (k, (l, site)) in sys.loops.iter().zip(&sys.site_order).enumerate() {
            let vs: Vec<String> = l.vertices.iter().map(|v| v.to_string()).collect();
            writeln!(s, "loop {} {} {}", k, site, vs.join(" ")).unwrap();
        }
    }
    s
}
