//! Dual graph of the limit of the one-dimensional family of minimal-degree
//! unisecants (even case), and the transposition model for the monodromy of
//! the `2^g` minimal sections (odd case).

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::degeneration::{ComponentKind, Labeling};
use crate::error::{Error, Result};

/// Largest genus for which graphs and transposition sets are built.
pub const MAX_GRAPH_GENUS: u32 = 16;

/// Largest symbol count for explicit group generation.
pub const MAX_BRUTE_FORCE_SYMBOLS: usize = 8;

fn check_genus(g: u32) -> Result<()> {
    if !(1..=MAX_GRAPH_GENUS).contains(&g) {
        return Err(Error::Resource(format!("genus must be in 1..={MAX_GRAPH_GENUS}, got {g}")));
    }
    Ok(())
}

/// Vertex id of `Ξ_labeling`.
fn xi_id(labeling: Labeling) -> usize {
    labeling.index() as usize
}

/// Vertex id of `Ξ'_{l, partial}`; these follow all `2^g` `Ξ` vertices.
fn xi_prime_id(g: u32, l: u32, partial: Labeling) -> usize {
    (1usize << g) + ((l - 1) as usize) * (1usize << (g - 1)) + partial.index() as usize
}

/// A simple graph with one vertex per (rational) component and one edge per
/// node of the limit curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<ComponentKind>,
    edges: Vec<(usize, usize)>,
    component_genera: Vec<u32>,
}

impl DualGraph {
    /// Builds a graph from explicit data, normalizing edge order and checking
    /// simplicity.
    pub fn new(vertices: Vec<ComponentKind>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Parameter(format!("multi-edge {:?}", w[0])));
            }
        }
        if let Some(&(a, b)) = edges.iter().find(|(a, b)| a == b || *b >= n) {
            return Err(Error::Parameter(format!("invalid edge ({a}, {b}) on {n} vertices")));
        }
        Ok(Self { component_genera: vec![0; n], vertices, edges })
    }

    pub fn vertices(&self) -> &[ComponentKind] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn component_genera(&self) -> &[u32] {
        &self.component_genera
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// Graphviz rendering with nodes `xi_<bits>` / `xip_<l>_<bits>`.
    pub fn to_dot(&self, name: &str) -> String {
        let ids: Vec<String> = self.vertices.iter().map(ComponentKind::id).collect();
        let mut out = format!("graph {name} {{\n");
        for id in &ids {
            let _ = writeln!(out, "  {id};");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  {} -- {};", ids[a], ids[b]);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_export(&self) -> GraphExport {
        let ids: Vec<String> = self.vertices.iter().map(ComponentKind::id).collect();
        GraphExport {
            vertices: self
                .vertices
                .iter()
                .zip(&ids)
                .map(|(kind, id)| VertexExport { id: id.clone(), kind: *kind })
                .collect(),
            edges: self.edges.iter().map(|&(a, b)| (ids[a].clone(), ids[b].clone())).collect(),
        }
    }
}

/// JSON view of a [`DualGraph`] using the same ids as the DOT export.
#[derive(Debug, Clone, Serialize)]
pub struct GraphExport {
    pub vertices: Vec<VertexExport>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexExport {
    pub id: String,
    #[serde(flatten)]
    pub kind: ComponentKind,
}

/// The dual graph of the limit on `Y` of the family of degree-`(d+g)/2`
/// unisecants through `d_m - 1` general points.
///
/// Two `Ξ` components meet iff their labelings differ in one position. A
/// `Ξ'_{l, a}` meets exactly the two `Ξ` whose labeling restricts to `a`
/// away from `l`. The `Ξ'` are pairwise disjoint.
pub fn build_limit_graph(g: u32) -> Result<DualGraph> {
    check_genus(g)?;
    let xis = Labeling::all(g).map(|labeling| ComponentKind::PencilXi { labeling });
    let xips = (1..=g).flat_map(|l| {
        Labeling::all(g - 1).map(move |partial| ComponentKind::ConicXiPrime { l, partial })
    });
    let vertices: Vec<_> = xis.chain(xips).collect();

    let mut edges = Vec::with_capacity(3 * g as usize * (1 << (g - 1)));
    for lab in Labeling::all(g) {
        for p in 1..=g {
            let other = lab.flip(p);
            if lab < other {
                edges.push((xi_id(lab), xi_id(other)));
            }
        }
    }
    for l in 1..=g {
        for partial in Labeling::all(g - 1) {
            let v = xi_prime_id(g, l, partial);
            for choice in 1..=2 {
                edges.push((xi_id(partial.insert(l, choice)), v));
            }
        }
    }
    let graph = DualGraph::new(vertices, edges)?;
    debug_assert!(graph
        .vertices
        .iter()
        .enumerate()
        .all(|(i, k)| match *k {
            ComponentKind::PencilXi { labeling } => xi_id(labeling) == i,
            ComponentKind::ConicXiPrime { l, partial } => xi_prime_id(g, l, partial) == i,
        }));
    Ok(graph)
}

/// `v - e`.
pub fn euler_char(graph: &DualGraph) -> i64 {
    graph.vertex_count() as i64 - graph.edge_count() as i64
}

/// `1 - χ(G)`, the arithmetic genus of a connected nodal curve whose
/// components are all rational.
pub fn arithmetic_genus(graph: &DualGraph) -> Result<i64> {
    if graph.component_genera.iter().any(|&g| g != 0) {
        return Err(Error::Domain("genus formula assumes rational components".into()));
    }
    if !graph.is_connected() {
        return Err(Error::Domain("genus formula assumes a connected dual graph".into()));
    }
    Ok(1 - euler_char(graph))
}

/// `2^g (g - 1) + 1`.
pub fn genus_formula(g: u32) -> BigInt {
    (BigInt::from(1) << g) * (BigInt::from(g) - 1) + 1
}

/// Transpositions of the minimal sections: each `Ξ'` component links the two
/// labelings that extend its partial labeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranspositionSet {
    symbols: Vec<Labeling>,
    swaps: Vec<(usize, usize)>,
}

impl TranspositionSet {
    /// Checks that symbols are distinct labelings of one length and that
    /// every swap exchanges two labelings differing in exactly one position.
    pub fn new(symbols: Vec<Labeling>, swaps: Vec<(usize, usize)>) -> Result<Self> {
        let n = symbols.len();
        if let Some(first) = symbols.first() {
            if symbols.iter().any(|s| s.len() != first.len()) {
                return Err(Error::Parameter("symbols have different lengths".into()));
            }
        }
        let mut sorted = symbols.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::Parameter("repeated symbol".into()));
        }
        for &(a, b) in &swaps {
            if a >= n || b >= n || symbols[a].hamming(&symbols[b]) != 1 {
                return Err(Error::Parameter(format!("({a}, {b}) is not a single-position swap")));
            }
        }
        Ok(Self { symbols, swaps })
    }

    pub fn symbols(&self) -> &[Labeling] {
        &self.symbols
    }

    pub fn swaps(&self) -> &[(usize, usize)] {
        &self.swaps
    }
}

/// All single-position swaps among the `2^g` labelings, listed by `l` and
/// then by partial labeling, as the `Ξ'` components are.
pub fn monodromy_transpositions(g: u32) -> Result<TranspositionSet> {
    check_genus(g)?;
    let symbols: Vec<_> = Labeling::all(g).collect();
    let swaps = (1..=g)
        .flat_map(|l| {
            Labeling::all(g - 1).map(move |p| (xi_id(p.insert(l, 1)), xi_id(p.insert(l, 2))))
        })
        .collect();
    TranspositionSet::new(symbols, swaps)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Transpositions generate the full symmetric group on their symbols iff the
/// graph they span is connected.
pub fn is_full_symmetric(t: &TranspositionSet) -> bool {
    let n = t.symbols.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut classes = n;
    for &(a, b) in &t.swaps {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            classes -= 1;
        }
    }
    classes <= 1
}

/// Order of the group generated by the swaps, by explicit closure. Capped at
/// [`MAX_BRUTE_FORCE_SYMBOLS`] symbols.
pub fn brute_force_group_order(t: &TranspositionSet) -> Result<u64> {
    let n = t.symbols.len();
    if n > MAX_BRUTE_FORCE_SYMBOLS {
        return Err(Error::Resource(format!(
            "explicit group generation is capped at {MAX_BRUTE_FORCE_SYMBOLS} symbols, got {n}"
        )));
    }
    // permutations packed as 4-bit images
    let identity: u32 = (0..n).fold(0, |acc, i| acc | (i as u32) << (4 * i));
    let swap = |p: u32, a: usize, b: usize| -> u32 {
        let (pa, pb) = (p >> (4 * a) & 0xf, p >> (4 * b) & 0xf);
        let cleared = p & !(0xf << (4 * a)) & !(0xf << (4 * b));
        cleared | pb << (4 * a) | pa << (4 * b)
    };
    let mut seen = std::collections::HashSet::from([identity]);
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for &(a, b) in &t.swaps {
            let q = swap(p, a, b);
            if seen.insert(q) {
                frontier.push(q);
            }
        }
    }
    Ok(seen.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let g1 = build_limit_graph(1).unwrap();
        assert_eq!((g1.vertex_count(), g1.edge_count()), (3, 3));
        assert_eq!(g1.edges(), &[(0, 1), (0, 2), (1, 2)]);
        let g2 = build_limit_graph(2).unwrap();
        assert_eq!((g2.vertex_count(), g2.edge_count()), (8, 12));
        let g3 = build_limit_graph(3).unwrap();
        assert_eq!((g3.vertex_count(), g3.edge_count()), (20, 36));
        assert_eq!(g3.degrees().iter().sum::<usize>(), 2 * 36);
        assert!(build_limit_graph(0).is_err());
        assert!(matches!(build_limit_graph(17), Err(Error::Resource(_))));
    }

    #[test]
    fn xi_prime_neighbours() {
        let g = build_limit_graph(2).unwrap();
        let ids: Vec<_> = g.vertices().iter().map(ComponentKind::id).collect();
        let v = ids.iter().position(|s| s == "xip_1_2").unwrap();
        let nb: Vec<_> = g.neighbors(v).into_iter().map(|i| ids[i].as_str()).collect();
        assert_eq!(nb, ["xi_12", "xi_22"]);
        let v = ids.iter().position(|s| s == "xip_2_1").unwrap();
        let nb: Vec<_> = g.neighbors(v).into_iter().map(|i| ids[i].as_str()).collect();
        assert_eq!(nb, ["xi_11", "xi_12"]);
    }

    #[test]
    fn euler_and_genus() {
        let g2 = build_limit_graph(2).unwrap();
        assert_eq!(euler_char(&g2), -4);
        assert_eq!(arithmetic_genus(&g2).unwrap(), 5);
        let g1 = build_limit_graph(1).unwrap();
        assert_eq!(euler_char(&g1), 0);
        assert_eq!(arithmetic_genus(&g1).unwrap(), 1);
        assert_eq!(arithmetic_genus(&build_limit_graph(3).unwrap()).unwrap(), 17);

        let lone = DualGraph::new(vec![ComponentKind::PencilXi { labeling: Labeling::from_choices(&[]).unwrap() }], vec![]).unwrap();
        assert_eq!(euler_char(&lone), 1);
        assert_eq!(arithmetic_genus(&lone).unwrap(), 0);
    }

    #[test]
    fn disconnected_graph_rejected() {
        let v: Vec<_> = Labeling::all(1).map(|labeling| ComponentKind::PencilXi { labeling }).collect();
        let two = DualGraph::new(v, vec![]).unwrap();
        assert!(matches!(arithmetic_genus(&two), Err(Error::Domain(_))));
    }

    #[test]
    fn graph_validation() {
        let v: Vec<_> = Labeling::all(2).map(|labeling| ComponentKind::PencilXi { labeling }).collect();
        assert!(DualGraph::new(v.clone(), vec![(0, 1), (1, 0)]).is_err());
        assert!(DualGraph::new(v.clone(), vec![(2, 2)]).is_err());
        assert!(DualGraph::new(v.clone(), vec![(0, 4)]).is_err());
        let ok = DualGraph::new(v, vec![(3, 1), (0, 1)]).unwrap();
        assert_eq!(ok.edges(), &[(0, 1), (1, 3)]);
    }

    #[test]
    fn genus_formula_values() {
        assert_eq!(genus_formula(2), BigInt::from(5));
        assert_eq!(genus_formula(0), BigInt::from(0));
        assert_eq!(genus_formula(1), BigInt::from(1));
        assert_eq!(genus_formula(3), BigInt::from(17));
    }

    #[test]
    fn dot_export() {
        let dot = build_limit_graph(1).unwrap().to_dot("limit_g1");
        assert_eq!(
            dot,
            "graph limit_g1 {\n  xi_1;\n  xi_2;\n  xip_1_;\n  xi_1 -- xi_2;\n  xi_1 -- xip_1_;\n  xi_2 -- xip_1_;\n}\n"
        );
    }

    #[test]
    fn transpositions() {
        let t = monodromy_transpositions(1).unwrap();
        assert_eq!((t.symbols().len(), t.swaps().len()), (2, 1));
        let t = monodromy_transpositions(2).unwrap();
        assert_eq!((t.symbols().len(), t.swaps().len()), (4, 4));
        assert!(is_full_symmetric(&t));
        assert_eq!(brute_force_group_order(&t).unwrap(), 24);
        let t = monodromy_transpositions(3).unwrap();
        assert_eq!((t.symbols().len(), t.swaps().len()), (8, 12));
        assert_eq!(brute_force_group_order(&t).unwrap(), 40320);
        assert!(brute_force_group_order(&monodromy_transpositions(4).unwrap()).is_err());

        let empty = TranspositionSet::new(Labeling::all(2).collect(), vec![]).unwrap();
        assert!(!is_full_symmetric(&empty));
        assert_eq!(brute_force_group_order(&empty).unwrap(), 1);
        // a single pair of a 4-cycle does not reach everything
        let partial = TranspositionSet::new(Labeling::all(2).collect(), vec![(0, 1), (2, 3)]).unwrap();
        assert!(!is_full_symmetric(&partial));
        assert_eq!(brute_force_group_order(&partial).unwrap(), 4);
        assert!(TranspositionSet::new(Labeling::all(2).collect(), vec![(0, 3)]).is_err());
    }

    #[test]
    fn swaps_follow_xi_prime_neighbourhoods() {
        for g in 1..=6 {
            let graph = build_limit_graph(g).unwrap();
            let t = monodromy_transpositions(g).unwrap();
            let from_graph: Vec<(usize, usize)> = graph
                .vertices()
                .iter()
                .enumerate()
                .filter(|(_, k)| !k.is_xi())
                .map(|(v, _)| {
                    let nb = graph.neighbors(v);
                    (nb[0], nb[1])
                })
                .collect();
            assert_eq!(from_graph, t.swaps());
        }
    }
}
