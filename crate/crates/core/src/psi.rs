//! Partitioned subgraph isomorphism to left-aligned pattern matching.
//!
//! Both sides of the gadget are drawn on the same kind of grid. A grid of
//! size `s` has two anchors, `(1, 2s+2)` and `(2s+2, 1)`. Every slot with rank
//! `a` and reverse rank `b` (both 1-based) gets a row pair
//! `{(2b, 3a+2s), (2b+1, 3a+2s+2)}` between the anchors horizontally and the
//! mirrored column pair `{(3a+2s, 2b), (3a+2s+2, 2b+1)}` between them
//! vertically. A cell point `(3a+2s+1, 3a'+2s+1)` marks the crossing of the
//! column of slot `a` with the row of slot `a'`.
//!
//! The pattern uses the grid of size `k = |V_G|` with one slot per vertex
//! `i` (`a = b = i`), a diagonal cell per vertex and two cells per edge. The
//! text uses the grid of size `n = |V_H|`, with slots ranked by color class
//! and cells for the diagonal and for every edge of `H` joining two
//! differently colored vertices. Points sharing a row or column are ordered
//! by [`PointSet::reduce`].

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching;
use crate::perm::{Permutation, Point, PointSet, Role};

/// Largest gadget text accepted by [`verify_reduction`].
pub const MAX_ORACLE_TEXT_LEN: usize = 40;

/// Simple loopless graph on vertices `1..=vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > vertex_count || v > vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u}, {v}}} leaves 1..={vertex_count}"
                )));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{u}, {v}}}")));
            }
        }
        Ok(Graph {
            vertex_count,
            edges: set,
        })
    }

    pub fn empty(vertex_count: usize) -> Result<Self> {
        Graph::new(vertex_count, [])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(smaller, larger)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }
}

/// Graphs `G` and `H` with a coloring of `H`'s vertices by `G`'s vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceFile", into = "InstanceFile")]
pub struct PsiInstance {
    g: Graph,
    h: Graph,
    chi: Vec<usize>,
}

impl PsiInstance {
    pub fn new(g: Graph, h: Graph, chi: Vec<usize>) -> Result<Self> {
        if chi.len() != h.vertex_count() {
            return Err(Error::InvalidColoring(format!(
                "{} colors for {} vertices",
                chi.len(),
                h.vertex_count()
            )));
        }
        if let Some(v) = chi.iter().position(|&c| c == 0 || c > g.vertex_count()) {
            return Err(Error::InvalidColoring(format!(
                "vertex {} has color {} outside 1..={}",
                v + 1,
                chi[v],
                g.vertex_count()
            )));
        }
        Ok(PsiInstance { g, h, chi })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serializes")
    }

    pub fn g(&self) -> &Graph {
        &self.g
    }

    pub fn h(&self) -> &Graph {
        &self.h
    }

    /// Color of `H`-vertex `v` (1-based).
    pub fn color(&self, v: usize) -> usize {
        self.chi[v - 1]
    }

    pub fn coloring(&self) -> &[usize] {
        &self.chi
    }

    /// `|V_G|`.
    pub fn k(&self) -> usize {
        self.g.vertex_count()
    }

    /// `|V_H|`.
    pub fn n(&self) -> usize {
        self.h.vertex_count()
    }

    /// Vertices of each color class in ascending id order; entry `i - 1` is `V_i`.
    pub fn color_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.k()];
        for (v, &c) in self.chi.iter().enumerate() {
            classes[c - 1].push(v + 1);
        }
        classes
    }

    /// Edges of `H` whose endpoints have different colors.
    pub fn bichromatic_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.h
            .edges()
            .filter(|&(u, v)| self.color(u) != self.color(v))
    }

    /// Whether `G` has as many edges as vertices.
    pub fn is_balanced(&self) -> bool {
        self.g.vertex_count() == self.g.edge_count()
    }
}

#[derive(Serialize, Deserialize)]
struct PatternGraphFile {
    k: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct TextGraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    #[serde(rename = "G")]
    g: PatternGraphFile,
    #[serde(rename = "H")]
    h: TextGraphFile,
    chi: Vec<usize>,
}

impl TryFrom<InstanceFile> for PsiInstance {
    type Error = Error;

    fn try_from(file: InstanceFile) -> Result<Self> {
        let g = Graph::new(file.g.k, file.g.edges.iter().map(|e| (e[0], e[1])))?;
        let h = Graph::new(file.h.n, file.h.edges.iter().map(|e| (e[0], e[1])))?;
        PsiInstance::new(g, h, file.chi)
    }
}

impl From<PsiInstance> for InstanceFile {
    fn from(inst: PsiInstance) -> Self {
        InstanceFile {
            g: PatternGraphFile {
                k: inst.g.vertex_count,
                edges: inst.g.edges().map(|(a, b)| [a, b]).collect(),
            },
            h: TextGraphFile {
                n: inst.h.vertex_count,
                edges: inst.h.edges().map(|(a, b)| [a, b]).collect(),
            },
            chi: inst.chi,
        }
    }
}

/// Position of one `H`-vertex in the rank order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VertexRank {
    pub vertex: usize,
    pub color: usize,
    /// 1-based index of the vertex inside its color class.
    pub index: usize,
    /// Number of vertices before it in `(color, index)` order.
    pub rank: usize,
    /// Number of vertices before it in `(color, reversed index)` order.
    pub reverse_rank: usize,
}

/// Ranks of every `H`-vertex; entry `v - 1` belongs to vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RankTable {
    entries: Vec<VertexRank>,
}

impl RankTable {
    pub fn get(&self, vertex: usize) -> &VertexRank {
        &self.entries[vertex - 1]
    }

    pub fn entries(&self) -> &[VertexRank] {
        &self.entries
    }

    /// Ranks indexed by vertex.
    pub fn ranks(&self) -> Vec<usize> {
        self.entries.iter().map(|r| r.rank).collect()
    }

    pub fn reverse_ranks(&self) -> Vec<usize> {
        self.entries.iter().map(|r| r.reverse_rank).collect()
    }
}

pub fn ranks(instance: &PsiInstance) -> RankTable {
    let mut entries = vec![
        VertexRank {
            vertex: 0,
            color: 0,
            index: 0,
            rank: 0,
            reverse_rank: 0
        };
        instance.n()
    ];
    let mut before = 0;
    for (ci, class) in instance.color_classes().iter().enumerate() {
        let size = class.len();
        for (j0, &v) in class.iter().enumerate() {
            let j = j0 + 1;
            entries[v - 1] = VertexRank {
                vertex: v,
                color: ci + 1,
                index: j,
                rank: before + j - 1,
                reverse_rank: before + size - j,
            };
        }
        before += size;
    }
    RankTable { entries }
}

struct Grid {
    size: i64,
    row_role: Role,
    column_role: Role,
    points: PointSet,
}

impl Grid {
    fn new(size: usize, row_role: Role, column_role: Role) -> Self {
        let s = size as i64;
        let points = PointSet::from_points([
            Point::with_role(1, 2 * s + 2, Role::Anchor),
            Point::with_role(2 * s + 2, 1, Role::Anchor),
        ]);
        Grid {
            size: s,
            row_role,
            column_role,
            points,
        }
    }

    /// Row and column pairs of a slot with 1-based rank `a`, reverse rank `b`.
    fn slot(&mut self, a: usize, b: usize) {
        let (a, b, s) = (a as i64, b as i64, self.size);
        let (rr, cr) = (self.row_role, self.column_role);
        self.points.push(Point::with_role(2 * b, 3 * a + 2 * s, rr));
        self.points.push(Point::with_role(2 * b + 1, 3 * a + 2 * s + 2, rr));
        self.points.push(Point::with_role(3 * a + 2 * s, 2 * b, cr));
        self.points.push(Point::with_role(3 * a + 2 * s + 2, 2 * b + 1, cr));
    }

    /// Cell in the column of rank `column` and the row of rank `row`.
    fn cell(&mut self, column: usize, row: usize, role: Role) {
        let mid = |a: usize| 3 * a as i64 + 2 * self.size + 1;
        let p = Point::with_role(mid(column), mid(row), role);
        self.points.push(p);
    }
}

/// Labeled pattern points for `G`: `2 + 5k + 2|E_G|` of them.
pub fn build_pattern_points(g: &Graph) -> PointSet {
    let k = g.vertex_count();
    let mut grid = Grid::new(k, Role::APair, Role::BPair);
    for i in 1..=k {
        grid.slot(i, i);
    }
    for i in 1..=k {
        grid.cell(i, i, Role::Diagonal);
    }
    for (i, j) in g.edges() {
        grid.cell(i, j, Role::Cell);
        grid.cell(j, i, Role::Cell);
    }
    grid.points
}

/// Labeled text points for the instance: `2 + 5n + 2 m_bi` of them, where
/// `m_bi` counts bichromatic edges of `H`.
pub fn build_text_points(instance: &PsiInstance) -> PointSet {
    let table = ranks(instance);
    let mut grid = Grid::new(instance.n(), Role::CPair, Role::DPair);
    for r in table.entries() {
        grid.slot(r.rank + 1, r.reverse_rank + 1);
    }
    for r in table.entries() {
        grid.cell(r.rank + 1, r.rank + 1, Role::Diagonal);
    }
    for (u, v) in instance.bichromatic_edges() {
        let (ru, rv) = (table.get(u).rank + 1, table.get(v).rank + 1);
        grid.cell(ru, rv, Role::Cell);
        grid.cell(rv, ru, Role::Cell);
    }
    grid.points
}

/// Both labeled point sets and their reductions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiGadget {
    pub k: usize,
    pub n: usize,
    pub pattern_edges: usize,
    pub bichromatic_edges: usize,
    /// `|V_G| == |E_G|`; informational only.
    pub balanced: bool,
    pub pattern_points: PointSet,
    pub text_points: PointSet,
    pub pattern: Permutation,
    pub text: Permutation,
}

pub fn reduce_psi(instance: &PsiInstance) -> Result<PsiGadget> {
    let pattern_points = build_pattern_points(instance.g());
    let text_points = build_text_points(instance);
    Ok(PsiGadget {
        k: instance.k(),
        n: instance.n(),
        pattern_edges: instance.g().edge_count(),
        bichromatic_edges: instance.bichromatic_edges().count(),
        balanced: instance.is_balanced(),
        pattern: pattern_points.reduce()?,
        text: text_points.reduce()?,
        pattern_points,
        text_points,
    })
}

/// Exhaustive search for a color-respecting image of `G` in `H`.
///
/// Returns, for each `G`-vertex `i`, the `H`-vertex it maps to.
pub fn solve_psi_bruteforce(instance: &PsiInstance) -> Option<Vec<usize>> {
    let classes = instance.color_classes();
    if classes.iter().any(Vec::is_empty) {
        return None;
    }
    let k = instance.k();
    let g_edges: Vec<(usize, usize)> = instance.g().edges().collect();
    let mut choice = vec![0usize; k];
    loop {
        let phi: Vec<usize> = (0..k).map(|i| classes[i][choice[i]]).collect();
        if g_edges
            .iter()
            .all(|&(a, b)| instance.h().has_edge(phi[a - 1], phi[b - 1]))
        {
            return Some(phi);
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            choice[i] += 1;
            if choice[i] < classes[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Outcome of running both oracles on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub psi_answer: bool,
    pub ppm_answer: bool,
    pub agreement: bool,
    pub witness: Option<Vec<usize>>,
    pub pattern_len: usize,
    pub text_len: usize,
}

/// Solves the instance directly and through the gadget, and compares.
pub fn verify_reduction(instance: &PsiInstance) -> Result<ReductionReport> {
    let gadget = reduce_psi(instance)?;
    if gadget.text.len() > MAX_ORACLE_TEXT_LEN {
        return Err(Error::TooLargeForOracle(format!(
            "gadget text has length {} (limit {MAX_ORACLE_TEXT_LEN})",
            gadget.text.len()
        )));
    }
    let (witness, ppm) = rayon::join(
        || solve_psi_bruteforce(instance),
        || matching::contains_left_aligned(&gadget.pattern, &gadget.text),
    );
    let ppm_answer = ppm?;
    let psi_answer = witness.is_some();
    Ok(ReductionReport {
        psi_answer,
        ppm_answer,
        agreement: psi_answer == ppm_answer,
        witness,
        pattern_len: gadget.pattern.len(),
        text_len: gadget.text.len(),
    })
}

/// Every instance with `|V_G| = k`, at most `max_pattern_edges` edges in `G`,
/// `1 <= |V_H| <= max_n`, and every coloring, in a fixed order.
pub fn exhaustive_family(k: usize, max_pattern_edges: usize, max_n: usize) -> Vec<PsiInstance> {
    let gs: Vec<Graph> = all_graphs(k)
        .into_iter()
        .filter(|g| g.edge_count() <= max_pattern_edges)
        .collect();
    let mut out = Vec::new();
    for g in &gs {
        for n in 1..=max_n {
            for h in all_graphs(n) {
                for chi in all_colorings(n, k) {
                    out.push(PsiInstance::new(g.clone(), h.clone(), chi).expect("valid by construction"));
                }
            }
        }
    }
    out
}

/// All simple graphs on `1..=n`, by edge-subset bitmask.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            Graph::new(
                n,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| mask >> bit & 1 == 1)
                    .map(|(_, &e)| e),
            )
            .expect("valid by construction")
        })
        .collect()
}

fn all_colorings(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (1..=k).map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_instance(h_edges: &[(usize, usize)]) -> PsiInstance {
        PsiInstance::new(
            Graph::new(2, [(1, 2)]).unwrap(),
            Graph::new(2, h_edges.iter().copied()).unwrap(),
            vec![1, 2],
        )
        .unwrap()
    }

    fn triangle() -> Graph {
        Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    fn coords(points: impl IntoIterator<Item = Point>) -> Vec<(i64, i64)> {
        points.into_iter().map(|p| (p.x, p.y)).collect()
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(0, []).is_err());
        assert!(Graph::new(2, [(1, 1)]).is_err());
        assert!(Graph::new(2, [(1, 3)]).is_err());
        assert!(Graph::new(2, [(1, 2), (2, 1)]).is_err());
        let g = Graph::new(3, [(3, 1)]).unwrap();
        assert!(g.has_edge(1, 3) && g.has_edge(3, 1) && !g.has_edge(1, 2));
    }

    #[test]
    fn coloring_validation() {
        let g = Graph::empty(2).unwrap();
        let h = Graph::empty(3).unwrap();
        assert!(PsiInstance::new(g.clone(), h.clone(), vec![1, 2]).is_err());
        assert!(PsiInstance::new(g.clone(), h.clone(), vec![1, 2, 3]).is_err());
        assert!(PsiInstance::new(g.clone(), h.clone(), vec![0, 1, 2]).is_err());
        // empty classes are allowed
        assert!(PsiInstance::new(g, h, vec![1, 1, 1]).is_ok());
    }

    #[test]
    fn json_format() {
        let text = r#"{"G": {"k": 2, "edges": [[1, 2]]}, "H": {"n": 2, "edges": [[2, 1]]}, "chi": [1, 2]}"#;
        let inst = PsiInstance::from_json(text).unwrap();
        assert_eq!(inst, edge_instance(&[(1, 2)]));
        assert_eq!(PsiInstance::from_json(&inst.to_json()).unwrap(), inst);
        let bad = r#"{"G": {"k": 2, "edges": [[1, 1]]}, "H": {"n": 1, "edges": []}, "chi": [1]}"#;
        assert!(PsiInstance::from_json(bad).is_err());
    }

    #[test]
    fn rank_examples() {
        // V_1 = {1, 2}, V_2 = {3}
        let inst = PsiInstance::new(Graph::empty(2).unwrap(), Graph::empty(3).unwrap(), vec![1, 1, 2]).unwrap();
        let t = ranks(&inst);
        assert_eq!(t.ranks(), vec![0, 1, 2]);
        assert_eq!(t.reverse_ranks(), vec![1, 0, 2]);

        let inst = PsiInstance::new(Graph::empty(3).unwrap(), Graph::empty(3).unwrap(), vec![1, 2, 3]).unwrap();
        let t = ranks(&inst);
        assert_eq!(t.ranks(), vec![0, 1, 2]);
        assert_eq!(t.reverse_ranks(), vec![0, 1, 2]);

        let inst = PsiInstance::new(Graph::empty(1).unwrap(), Graph::empty(3).unwrap(), vec![1, 1, 1]).unwrap();
        let t = ranks(&inst);
        assert_eq!(t.ranks(), vec![0, 1, 2]);
        assert_eq!(t.reverse_ranks(), vec![2, 1, 0]);
    }

    #[test]
    fn rank_follows_class_order_not_vertex_order() {
        let inst = PsiInstance::new(Graph::empty(2).unwrap(), Graph::empty(4).unwrap(), vec![2, 1, 2, 1]).unwrap();
        let t = ranks(&inst);
        // V_1 = {2, 4}, V_2 = {1, 3}
        assert_eq!(t.ranks(), vec![2, 0, 3, 1]);
        assert_eq!(t.reverse_ranks(), vec![3, 1, 2, 0]);
        assert_eq!(t.get(4).index, 2);
    }

    #[test]
    fn triangle_pattern_points() {
        let pts = build_pattern_points(&triangle());
        assert_eq!(pts.len(), 23);
        assert_eq!(coords(pts.with_role(Role::Anchor).copied()), vec![(1, 8), (8, 1)]);
        let a: Vec<_> = coords(pts.with_role(Role::APair).copied());
        assert_eq!(&a[..2], &[(2, 9), (3, 11)]);
        assert_eq!(pts.with_role(Role::Diagonal).count(), 3);
        assert_eq!(pts.with_role(Role::Cell).count(), 6);
    }

    #[test]
    fn pattern_point_counts() {
        assert_eq!(build_pattern_points(&Graph::empty(1).unwrap()).len(), 7);
        let g = Graph::new(4, [(1, 2)]).unwrap();
        let g2 = Graph::new(4, [(1, 2), (3, 4)]).unwrap();
        assert_eq!(build_pattern_points(&g2).len(), build_pattern_points(&g).len() + 2);
    }

    #[test]
    fn single_vertex_pattern() {
        let pts = build_pattern_points(&Graph::empty(1).unwrap());
        // anchors (1,4),(4,1); A (2,5),(3,7); B (5,2),(7,3); diagonal (6,6)
        assert_eq!(
            coords(pts.points().iter().copied()),
            vec![(1, 4), (4, 1), (2, 5), (3, 7), (5, 2), (7, 3), (6, 6)]
        );
        let gadget = reduce_psi(
            &PsiInstance::new(Graph::empty(1).unwrap(), Graph::empty(1).unwrap(), vec![1]).unwrap(),
        )
        .unwrap();
        assert_eq!(gadget.pattern, "4 5 7 1 2 6 3".parse().unwrap());
        assert_eq!(gadget.pattern, pts.reduce().unwrap());
    }

    #[test]
    fn text_point_counts() {
        let inst = edge_instance(&[(1, 2)]);
        assert_eq!(build_text_points(&inst).len(), 14);
        // monochromatic edge gives no cell
        let mono = PsiInstance::new(Graph::empty(2).unwrap(), Graph::new(2, [(1, 2)]).unwrap(), vec![1, 1]).unwrap();
        let pts = build_text_points(&mono);
        assert_eq!(pts.len(), 12);
        assert_eq!(pts.with_role(Role::Cell).count(), 0);
    }

    #[test]
    fn text_pairs_of_one_color_are_colayered() {
        let inst = PsiInstance::new(Graph::empty(2).unwrap(), Graph::empty(4).unwrap(), vec![1, 2, 1, 1]).unwrap();
        let text = build_text_points(&inst);
        let table = ranks(&inst);
        for role in [Role::CPair, Role::DPair] {
            let pairs: Vec<Point> = text.with_role(role).copied().collect();
            // points are emitted two per vertex, vertices in id order
            let class: Vec<Point> = [1usize, 3, 4]
                .iter()
                .flat_map(|&v| pairs[2 * (v - 1)..2 * v].to_vec())
                .collect();
            let shape = PointSet::from_points(class).reduce().unwrap();
            assert_eq!(shape, crate::perm::colayered(&[2, 2, 2]).unwrap(), "{role:?}");
            assert_eq!(table.get(1).index, 1);
        }
    }

    #[test]
    fn solver_examples() {
        assert_eq!(solve_psi_bruteforce(&edge_instance(&[(1, 2)])), Some(vec![1, 2]));
        assert_eq!(solve_psi_bruteforce(&edge_instance(&[])), None);
        let six_cycle = Graph::new(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]).unwrap();
        let inst = PsiInstance::new(triangle(), six_cycle, vec![1, 2, 1, 2, 1, 2]).unwrap();
        assert_eq!(solve_psi_bruteforce(&inst), None);
    }

    #[test]
    fn verify_examples() {
        let yes = verify_reduction(&edge_instance(&[(1, 2)])).unwrap();
        assert!(yes.agreement && yes.psi_answer && yes.ppm_answer);
        let no = verify_reduction(&edge_instance(&[])).unwrap();
        assert!(no.agreement && !no.psi_answer && !no.ppm_answer);
        let empty_class = PsiInstance::new(triangle(), Graph::empty(2).unwrap(), vec![1, 3]).unwrap();
        let r = verify_reduction(&empty_class).unwrap();
        assert!(r.agreement && !r.psi_answer && !r.ppm_answer);
    }

    #[test]
    fn verify_rejects_large_instances() {
        let h = Graph::new(8, (1..=8).flat_map(|u| (u + 1..=8).map(move |v| (u, v)))).unwrap();
        let inst = PsiInstance::new(Graph::empty(2).unwrap(), h, vec![1, 2, 1, 2, 1, 2, 1, 2]).unwrap();
        assert!(matches!(verify_reduction(&inst), Err(Error::TooLargeForOracle(_))));
    }

    #[test]
    fn edgeless_instances_still_reduce() {
        let inst = PsiInstance::new(Graph::empty(3).unwrap(), Graph::empty(3).unwrap(), vec![1, 2, 3]).unwrap();
        let gadget = reduce_psi(&inst).unwrap();
        assert_eq!(gadget.pattern.len(), 17);
        assert_eq!(gadget.text.len(), 17);
        assert!(verify_reduction(&inst).unwrap().psi_answer);
    }

    #[test]
    fn family_sizes() {
        assert_eq!(all_graphs(4).len(), 64);
        assert_eq!(all_colorings(3, 2).len(), 8);
        // k = 2: G in {empty, edge}; sum over n of 2^C(n,2) * 2^n
        assert_eq!(exhaustive_family(2, 3, 4).len(), 2 * (2 + 8 + 64 + 1024));
    }
}
