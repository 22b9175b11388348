//! Two equivalent views of a unicellular hypermonopole, both derived
//! from its circular face rotation `pi` alone.
//!
//! *Cycle graph*: each point gets a negative and a positive copy; grey
//! edges run from `i-` to `(i+1 mod m)+` and black edges from `i+` to
//! `pi^-1(i)-`. The graph decomposes into alternating cycles, and
//! reading only the positive copies along each cycle recovers the
//! hyperedge rotation `alpha`.
//!
//! *Polygon gluing*: a `2m`-gon with `m` black sides (counterclockwise)
//! followed by `m` grey sides (clockwise), each black side glued to a
//! grey side respecting orientation. Writing the cycle of `pi` as the
//! word ending at `m-1` and gluing black side `i` to the grey side
//! named by the word's `i`-th letter encodes the map so that the two
//! extra "cut" sides `m-1` are glued to each other. The glued surface
//! is closed and oriented; counting corner classes gives its genus
//! through the Euler characteristic, and it always matches the
//! hypermap genus.

pub mod render;

use std::fmt;

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("the face rotation must be circular")]
    NotCircular,
    #[error("pairing is not a bijection: grey side {value} out of range or repeated")]
    NotBijective { value: usize },
    #[error("gluing does not encode a unicellular hypermonopole (the cut sides are not glued to each other)")]
    NotUnicellular,
    #[error("a pairing needs at least one side")]
    Empty,
}

/// One of the two copies of a point: `i-` or `i+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedVertex {
    pub point: usize,
    pub positive: bool,
}

impl SignedVertex {
    pub fn negative(point: usize) -> Self {
        SignedVertex {
            point,
            positive: false,
        }
    }

    pub fn positive(point: usize) -> Self {
        SignedVertex {
            point,
            positive: true,
        }
    }

    pub fn label(&self, base: usize) -> String {
        format!(
            "{}{}",
            self.point + base,
            if self.positive { '+' } else { '-' }
        )
    }
}

impl fmt::Display for SignedVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label(0))
    }
}

/// The two-colored digraph on signed point copies determined by a
/// circular face rotation, decomposed into its alternating cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleGraph {
    m: usize,
    pi: Permutation,
    cycles: Vec<Vec<SignedVertex>>,
}

/// Builds the cycle graph of a circular face rotation and extracts its
/// alternating cycles, each starting at its smallest negative vertex.
pub fn build_cycle_graph(pi: &Permutation) -> Result<CycleGraph, ModelError> {
    if !pi.is_circular() {
        return Err(ModelError::NotCircular);
    }
    let m = pi.point_count();
    let pi_inv = pi.inverse();
    let mut visited = vec![false; m];
    let mut cycles = Vec::new();
    for start in 0..m {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        loop {
            visited[x] = true;
            cycle.push(SignedVertex::negative(x));
            let y = (x + 1) % m;
            cycle.push(SignedVertex::positive(y));
            x = pi_inv.apply(y);
            if x == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    Ok(CycleGraph {
        m,
        pi: pi.clone(),
        cycles,
    })
}

impl CycleGraph {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn pi(&self) -> &Permutation {
        &self.pi
    }

    pub fn alternating_cycles(&self) -> &[Vec<SignedVertex>] {
        &self.cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Target of the grey edge leaving `i-`.
    pub fn grey_target(&self, i: usize) -> SignedVertex {
        SignedVertex::positive((i + 1) % self.m)
    }

    /// Target of the black edge leaving `i+`.
    pub fn black_target(&self, i: usize) -> SignedVertex {
        SignedVertex::negative(self.pi.inverse().apply(i))
    }
}

/// Reads the hyperedge rotation off a cycle graph: the positive copies
/// of each alternating cycle, in traversal order, are a cycle of alpha.
pub fn alpha_from_cycle_graph(graph: &CycleGraph) -> Permutation {
    let cycles: Vec<Vec<usize>> = graph
        .cycles
        .iter()
        .map(|cycle| {
            cycle
                .iter()
                .filter(|v| v.positive)
                .map(|v| v.point)
                .collect()
        })
        .collect();
    Permutation::from_cycles(&cycles, graph.m)
        .expect("alternating cycles partition the positive copies")
}

/// Positions whose image differs from their cyclic successor:
/// `{ i : pi(i) != i+1 mod m }`. The complement corresponds exactly to
/// the buds of the associated hypermonopole, so a map is reduced iff
/// every position is a breakpoint.
pub fn breakpoints(pi: &Permutation) -> Vec<usize> {
    assert!(
        pi.is_circular(),
        "breakpoints are defined for circular face rotations"
    );
    let m = pi.point_count();
    (0..m).filter(|&i| pi.apply(i) != (i + 1) % m).collect()
}

/// A `2m`-gon with corners `0..2m` counterclockwise. Polygon sides
/// `0..m` are the black sides, numbered by position and oriented
/// counterclockwise, so black side `i` runs from corner `i` to corner
/// `i + 1`. The remaining sides are grey and oriented clockwise, which
/// puts grey side `g` on polygon side `2m - 1 - g`, running from corner
/// `2m - g` to corner `2m - 1 - g`. Black side `i` is glued to grey
/// side `pairing[i]` and corners merge accordingly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingDiagram {
    m: usize,
    pairing: Vec<usize>,
    corner_classes: Vec<Vec<usize>>,
    genus: usize,
}

impl GluingDiagram {
    /// Builds from any bijective black-to-grey pairing. Corner classes
    /// come from identifying tail with tail and head with head of each
    /// glued pair of directed sides; since the two sides are traversed
    /// in opposite boundary directions, that is the orientation
    /// respecting way to match them.
    pub fn from_pairing(pairing: Vec<usize>) -> Result<Self, ModelError> {
        let m = pairing.len();
        if m == 0 {
            return Err(ModelError::Empty);
        }
        let mut seen = vec![false; m];
        for &g in &pairing {
            if g >= m || seen[g] {
                return Err(ModelError::NotBijective { value: g });
            }
            seen[g] = true;
        }
        let corners = 2 * m;
        let mut uf = UnionFind::new(corners);
        for (i, &g) in pairing.iter().enumerate() {
            let black_tail = i;
            let black_head = (i + 1) % corners;
            let grey_tail = (corners - g) % corners;
            let grey_head = corners - 1 - g;
            uf.union(black_tail, grey_tail);
            uf.union(black_head, grey_head);
        }
        let corner_classes = uf.classes();
        let v = corner_classes.len();
        let defect = m as i64 + 1 - v as i64;
        assert!(
            defect >= 0 && defect % 2 == 0,
            "gluing produced Euler defect {defect}; corner wiring is broken"
        );
        Ok(GluingDiagram {
            m,
            pairing,
            corner_classes,
            genus: (defect / 2) as usize,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Grey side glued to black side `i`.
    pub fn grey_of(&self, i: usize) -> usize {
        self.pairing[i]
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    /// Corner classes, each sorted, ordered by smallest member.
    pub fn corner_classes(&self) -> &[Vec<usize>] {
        &self.corner_classes
    }

    /// Number of vertices of the glued surface; always `z(alpha) + 1`
    /// for the diagram of a circular face rotation.
    pub fn vertex_class_count(&self) -> usize {
        self.corner_classes.len()
    }

    /// Genus of the glued surface: with `E = m` glued edge pairs and one
    /// face, `genus = (m + 1 - V) / 2`.
    pub fn genus(&self) -> usize {
        self.genus
    }
}

/// Builds the gluing diagram of a circular face rotation. The pairing
/// is the cycle of `pi` written as the word ending at `m - 1`, so the
/// two sides that stand for the cut across the face get glued to each
/// other: black side `m - 1` to grey side `m - 1`.
pub fn gluing_from_pi(pi: &Permutation) -> Result<GluingDiagram, ModelError> {
    if !pi.is_circular() {
        return Err(ModelError::NotCircular);
    }
    let m = pi.point_count();
    let mut word = Vec::with_capacity(m);
    let mut x = pi.apply(m - 1);
    for _ in 0..m {
        word.push(x);
        x = pi.apply(x);
    }
    GluingDiagram::from_pairing(word)
}

/// Recovers the face rotation from a diagram by reading the pairing as
/// a cycle word; inverse of [`gluing_from_pi`]. Errors when the cut
/// sides `m - 1` are not glued to each other, since such a diagram is
/// not the encoding of any unicellular map.
pub fn pi_from_gluing(diagram: &GluingDiagram) -> Result<Permutation, ModelError> {
    let m = diagram.m;
    if diagram.pairing[m - 1] != m - 1 {
        return Err(ModelError::NotUnicellular);
    }
    Ok(Permutation::from_circular_word(&diagram.pairing)
        .expect("a bijective pairing is a valid cycle word"))
}

/// Union-find with the minimum element of each class as its root, so
/// class representatives are deterministic.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    /// The classes, each sorted ascending, ordered by representative.
    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypermap::Hypermap;

    fn pi_eight() -> Permutation {
        Permutation::from_circular_word(&[0, 4, 1, 6, 2, 5, 7, 3]).unwrap()
    }

    fn pi_five() -> Permutation {
        Permutation::from_circular_word(&[0, 2, 3, 1, 4]).unwrap()
    }

    fn positives(cycle: &[SignedVertex]) -> Vec<usize> {
        cycle
            .iter()
            .filter(|v| v.positive)
            .map(|v| v.point)
            .collect()
    }

    #[test]
    fn cycle_graph_of_eight_point_example() {
        let graph = build_cycle_graph(&pi_eight()).unwrap();
        assert_eq!(graph.cycle_count(), 2);
        assert_eq!(
            positives(&graph.alternating_cycles()[0]),
            vec![1, 5, 3, 0, 4]
        );
        assert_eq!(positives(&graph.alternating_cycles()[1]), vec![2, 7, 6]);
        let first = &graph.alternating_cycles()[0];
        assert_eq!(first[0], SignedVertex::negative(0));
        assert_eq!(first[1], SignedVertex::positive(1));
        assert_eq!(first[2], SignedVertex::negative(4));
        assert_eq!(first[3], SignedVertex::positive(5));
    }

    #[test]
    fn cycle_graph_of_standard_face_has_m_two_cycles() {
        for m in 1..=6 {
            let sigma = Permutation::standard_circular(m);
            let graph = build_cycle_graph(&sigma).unwrap();
            assert_eq!(graph.cycle_count(), m);
            for (i, cycle) in graph.alternating_cycles().iter().enumerate() {
                assert_eq!(cycle.len(), 2);
                assert_eq!(cycle[0], SignedVertex::negative(i));
                assert_eq!(cycle[1], SignedVertex::positive((i + 1) % m));
            }
        }
    }

    #[test]
    fn cycle_graph_rejects_non_circular() {
        assert_eq!(
            build_cycle_graph(&Permutation::identity(3)),
            Err(ModelError::NotCircular)
        );
    }

    #[test]
    fn alpha_projection_matches_hypermap() {
        for pi in [pi_eight(), pi_five()] {
            let graph = build_cycle_graph(&pi).unwrap();
            let h = Hypermap::from_standard_face(pi).unwrap();
            assert_eq!(&alpha_from_cycle_graph(&graph), h.alpha());
        }
        let sigma = Permutation::standard_circular(5);
        let graph = build_cycle_graph(&sigma).unwrap();
        assert!(alpha_from_cycle_graph(&graph).is_identity());
    }

    #[test]
    fn breakpoints_of_worked_example() {
        assert_eq!(breakpoints(&pi_five()), vec![0, 1, 3]);
        assert_eq!(
            breakpoints(&Permutation::standard_circular(6)),
            Vec::<usize>::new()
        );
        assert_eq!(breakpoints(&pi_eight()).len(), 8);
    }

    #[test]
    fn non_breakpoints_map_to_buds() {
        let pi = pi_five();
        let h = Hypermap::from_standard_face(pi.clone()).unwrap();
        let bps = breakpoints(&pi);
        let mut buds_from_complement: Vec<usize> = (0..5)
            .filter(|i| !bps.contains(i))
            .map(|i| (i + 1) % 5)
            .collect();
        buds_from_complement.sort_unstable();
        assert_eq!(buds_from_complement, h.buds());
    }

    #[test]
    fn gluing_of_five_point_example() {
        let d = gluing_from_pi(&pi_five()).unwrap();
        assert_eq!(d.pairing(), &[0, 2, 3, 1, 4]);
        assert_eq!(d.vertex_class_count(), 4);
        assert_eq!(d.genus(), 1);
        assert_eq!(
            d.corner_classes(),
            &[vec![0], vec![1, 3, 4, 6, 8, 9], vec![2, 7], vec![5]]
        );
    }

    #[test]
    fn gluing_of_eight_point_example() {
        let d = gluing_from_pi(&pi_eight()).unwrap();
        assert_eq!(d.vertex_class_count(), 3);
        assert_eq!(d.genus(), 3);
    }

    #[test]
    fn digon_glues_to_a_sphere() {
        let d = gluing_from_pi(&Permutation::identity(1)).unwrap();
        assert_eq!(d.vertex_class_count(), 2);
        assert_eq!(d.genus(), 0);
    }

    #[test]
    fn vertex_classes_exceed_hyperedges_by_one() {
        for pi in [pi_eight(), pi_five(), Permutation::standard_circular(4)] {
            let d = gluing_from_pi(&pi).unwrap();
            let h = Hypermap::from_standard_face(pi).unwrap();
            assert_eq!(d.vertex_class_count(), h.class().k + 1);
            assert_eq!(d.genus(), h.genus());
        }
    }

    #[test]
    fn pairing_round_trip_and_rejections() {
        let pi = pi_five();
        let d = gluing_from_pi(&pi).unwrap();
        assert_eq!(pi_from_gluing(&d).unwrap(), pi);

        let identity_pairing = GluingDiagram::from_pairing(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(
            pi_from_gluing(&identity_pairing).unwrap(),
            Permutation::standard_circular(4)
        );
        assert_eq!(identity_pairing.genus(), 0);

        let rotated = GluingDiagram::from_pairing(vec![1, 2, 3, 0]).unwrap();
        assert_eq!(rotated.genus(), 1);
        assert_eq!(pi_from_gluing(&rotated), Err(ModelError::NotUnicellular));

        assert_eq!(
            GluingDiagram::from_pairing(vec![0, 0, 1]),
            Err(ModelError::NotBijective { value: 0 })
        );
        assert_eq!(GluingDiagram::from_pairing(vec![]), Err(ModelError::Empty));
    }

    #[test]
    fn signed_vertex_labels() {
        assert_eq!(SignedVertex::negative(3).label(0), "3-");
        assert_eq!(SignedVertex::positive(3).label(1), "4+");
        assert_eq!(SignedVertex::positive(0).to_string(), "0+");
    }
}
