//! Simple digraphs: loop-free, at most one arc per ordered vertex pair.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DigraphError {
    #[error("digraph must have at least one vertex")]
    EmptyVertexSet,
    #[error("loop arc ({0}, {0}) is not allowed")]
    LoopArc(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("vertex index {0} out of range for order {1}")]
    VertexOutOfRange(usize, usize),
}

/// A labeled simple digraph stored as a dense boolean adjacency relation.
///
/// `arc(i, j)` is true iff the arc from vertex `i` to vertex `j` exists.
/// Loops are rejected at construction, so the diagonal is always false.
/// Values are immutable once built and cheap to clone at the orders this
/// crate works with.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: Vec<bool>,
}

impl Digraph {
    /// The discrete (arcless) digraph on `n` vertices.
    pub fn discrete(n: usize) -> Result<Self, DigraphError> {
        if n == 0 {
            return Err(DigraphError::EmptyVertexSet);
        }
        Ok(Self { n, arcs: vec![false; n * n] })
    }

    /// Builds a digraph from an explicit arc list, validating every arc.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self, DigraphError> {
        let mut g = Self::discrete(n)?;
        for &(u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_arc(&mut self, u: usize, v: usize) -> Result<(), DigraphError> {
        if u >= self.n {
            return Err(DigraphError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(DigraphError::VertexOutOfRange(v, self.n));
        }
        if u == v {
            return Err(DigraphError::LoopArc(u));
        }
        if self.arcs[u * self.n + v] {
            return Err(DigraphError::DuplicateArc(u, v));
        }
        self.arcs[u * self.n + v] = true;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn arc(&self, u: usize, v: usize) -> bool {
        self.arcs[u * self.n + v]
    }

    /// Number of arcs, written `a` throughout the bound formulas.
    pub fn arc_count(&self) -> usize {
        self.arcs.iter().filter(|&&b| b).count()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.arcs[u * self.n..(u + 1) * self.n].iter().filter(|&&b| b).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.arc(u, v)).count()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.out_degree(u)).collect()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.in_degree(v)).collect()
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.n).map(|u| self.out_degree(u)).max().unwrap_or(0)
    }

    /// Sum of squared outdegrees, used by every bound in this crate.
    pub fn sum_sq_out_degrees(&self) -> usize {
        (0..self.n).map(|u| self.out_degree(u).pow(2)).sum()
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.out_degree(v) == 0 && self.in_degree(v) == 0
    }

    /// Iterator over arcs in row-major order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |u| (0..n).filter(move |&v| self.arc(u, v)).map(move |v| (u, v)))
    }

    /// The converse digraph: arc (u, v) present iff (v, u) is present here.
    pub fn transpose(&self) -> Self {
        let mut arcs = vec![false; self.n * self.n];
        for u in 0..self.n {
            for v in 0..self.n {
                arcs[v * self.n + u] = self.arc(u, v);
            }
        }
        Self { n: self.n, arcs }
    }

    /// Disjoint union with block-diagonal adjacency, in list order.
    pub fn direct_sum(parts: &[Digraph]) -> Result<Self, DigraphError> {
        if parts.is_empty() {
            return Err(DigraphError::EmptyVertexSet);
        }
        let n: usize = parts.iter().map(|g| g.n).sum();
        let mut g = Self::discrete(n)?;
        let mut base = 0;
        for part in parts {
            for (u, v) in part.arcs() {
                g.arcs[(base + u) * n + (base + v)] = true;
            }
            base += part.n;
        }
        Ok(g)
    }

    /// Off-diagonal bit encoding, row-major, bit k = k-th off-diagonal cell.
    ///
    /// Only defined for orders with n(n-1) <= 64; the enumeration range
    /// (n <= 5) is far below that.
    pub fn encode(&self) -> u64 {
        assert!(self.n * (self.n - 1) <= 64, "encoding limited to n(n-1) <= 64 bits");
        let mut code = 0u64;
        let mut k = 0;
        for u in 0..self.n {
            for v in 0..self.n {
                if u == v {
                    continue;
                }
                if self.arc(u, v) {
                    code |= 1 << k;
                }
                k += 1;
            }
        }
        code
    }

    /// Inverse of [`Digraph::encode`].
    pub fn decode(n: usize, code: u64) -> Result<Self, DigraphError> {
        if n == 0 {
            return Err(DigraphError::EmptyVertexSet);
        }
        let bits = n * (n - 1);
        assert!(bits <= 64, "encoding limited to n(n-1) <= 64 bits");
        if bits < 64 {
            assert!(code < (1u64 << bits), "code out of range for order {n}");
        }
        let mut g = Self::discrete(n)?;
        let mut k = 0;
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                if (code >> k) & 1 == 1 {
                    g.arcs[u * n + v] = true;
                }
                k += 1;
            }
        }
        Ok(g)
    }

    /// The encoding rendered as a 0/1 string over the n(n-1) off-diagonal
    /// cells in row-major order. Stable across runs, round-trips via
    /// [`Digraph::decode`].
    pub fn encoding_bits(&self) -> String {
        let bits = self.n * (self.n - 1);
        let code = self.encode();
        (0..bits).map(|k| if (code >> k) & 1 == 1 { '1' } else { '0' }).collect()
    }
}

/// Structural predicates that drive the equality-case classifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureFlags {
    pub is_discrete: bool,
    /// `Some(k)` iff every vertex has outdegree and indegree exactly `k`.
    pub regular_degree: Option<usize>,
    pub is_symmetric: bool,
    /// Every vertex has outdegree and indegree 1, i.e. the digraph is a
    /// direct sum of directed cycles (2-cycles included).
    pub is_permutation_digraph: bool,
    /// `Some((r, s))` iff the non-isolated part is the oriented complete
    /// bipartite digraph with all arcs from an r-set to an s-set.
    pub ocb_plus_isolated: Option<(usize, usize)>,
    /// No symmetric arc pair and the underlying graph is a tree.
    pub is_oriented_tree: bool,
}

impl Digraph {
    pub fn classify_structure(&self) -> StructureFlags {
        let n = self.n;
        let outs = self.out_degrees();
        let ins = self.in_degrees();
        let a = self.arc_count();

        let is_discrete = a == 0;
        let regular_degree = if outs.iter().all(|&d| d == outs[0]) && ins.iter().all(|&d| d == outs[0]) {
            Some(outs[0])
        } else {
            None
        };
        let is_symmetric = (0..n).all(|u| (0..n).all(|v| self.arc(u, v) == self.arc(v, u)));
        let is_permutation_digraph = regular_degree == Some(1);

        StructureFlags {
            is_discrete,
            regular_degree,
            is_symmetric,
            is_permutation_digraph,
            ocb_plus_isolated: self.ocb_plus_isolated(),
            is_oriented_tree: self.is_oriented_tree(),
        }
    }

    /// Detects D = oriented complete bipartite plus isolated vertices:
    /// the non-isolated vertices split into X (sources) and Y (sinks)
    /// with arc set exactly X x Y.
    pub fn ocb_plus_isolated(&self) -> Option<(usize, usize)> {
        let n = self.n;
        let mut x = Vec::new();
        let mut y = Vec::new();
        for v in 0..n {
            let (dout, din) = (self.out_degree(v), self.in_degree(v));
            match (dout > 0, din > 0) {
                (true, false) => x.push(v),
                (false, true) => y.push(v),
                (false, false) => {}
                (true, true) => return None,
            }
        }
        if x.is_empty() || y.is_empty() {
            return None;
        }
        for &u in &x {
            for &v in &y {
                if !self.arc(u, v) {
                    return None;
                }
            }
        }
        // All arcs are accounted for iff a = |X||Y|.
        if self.arc_count() != x.len() * y.len() {
            return None;
        }
        Some((x.len(), y.len()))
    }

    /// Detects a single source with `s` private sinks plus isolated
    /// vertices, i.e. the r = 1 case of [`Digraph::ocb_plus_isolated`].
    pub fn out_star_plus_isolated(&self) -> Option<(usize, usize)> {
        match self.ocb_plus_isolated() {
            Some((1, s)) => Some((s, self.n - 1 - s)),
            _ => None,
        }
    }

    /// Detects a mutually complete core of m >= 2 vertices whose common
    /// out-neighbourhood is a set of t sinks, plus isolated vertices:
    /// every core row of the alpha matrix is the same multiple of the
    /// indicator of core-plus-sinks, so the matrix has rank one exactly
    /// when alpha = 1/(m + t).
    pub fn complete_core_with_sinks(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        let core: Vec<usize> = (0..n).filter(|&v| self.out_degree(v) > 0).collect();
        let m = core.len();
        if m < 2 {
            return None;
        }
        for &u in &core {
            for &w in &core {
                if u != w && !(self.arc(u, w) && self.arc(w, u)) {
                    return None;
                }
            }
        }
        let mut sinks = 0usize;
        for v in 0..n {
            if core.contains(&v) {
                continue;
            }
            let hits = core.iter().filter(|&&u| self.arc(u, v)).count();
            if hits == core.len() {
                sinks += 1;
            } else if hits > 0 {
                return None;
            }
        }
        if self.arc_count() != m * (m - 1) + m * sinks {
            return None;
        }
        Some((m, sinks, n - m - sinks))
    }

    /// Detects D = one symmetric arc pair plus isolated vertices.
    pub fn sym_k2_plus_isolated(&self) -> Option<usize> {
        let non_isolated: Vec<usize> = (0..self.n).filter(|&v| !self.is_isolated(v)).collect();
        if let [u, v] = non_isolated[..] {
            if self.arc(u, v) && self.arc(v, u) && self.arc_count() == 2 {
                return Some(self.n - 2);
            }
        }
        None
    }

    fn is_oriented_tree(&self) -> bool {
        let n = self.n;
        // No symmetric arc pair.
        for u in 0..n {
            for v in (u + 1)..n {
                if self.arc(u, v) && self.arc(v, u) {
                    return false;
                }
            }
        }
        if self.arc_count() != n - 1 {
            return false;
        }
        // Underlying graph connected: n-1 edges + connectivity = tree.
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in (0..n).filter(|&v| self.arc(u, v) || self.arc(v, u)) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{make_family, FamilySpec};

    #[test]
    fn from_arcs_validates() {
        assert_eq!(Digraph::from_arcs(0, &[]), Err(DigraphError::EmptyVertexSet));
        assert_eq!(Digraph::from_arcs(2, &[(0, 0)]), Err(DigraphError::LoopArc(0)));
        assert_eq!(
            Digraph::from_arcs(2, &[(0, 1), (0, 1)]),
            Err(DigraphError::DuplicateArc(0, 1))
        );
        assert_eq!(
            Digraph::from_arcs(2, &[(0, 2)]),
            Err(DigraphError::VertexOutOfRange(2, 2))
        );
    }

    #[test]
    fn degree_sums_match_arc_count() {
        let g = Digraph::from_arcs(4, &[(0, 1), (1, 2), (2, 0), (3, 0)]).unwrap();
        assert_eq!(g.arc_count(), 4);
        assert_eq!(g.out_degrees().iter().sum::<usize>(), 4);
        assert_eq!(g.in_degrees().iter().sum::<usize>(), 4);
    }

    #[test]
    fn transpose_is_involution() {
        for code in 0..64u64 {
            let g = Digraph::decode(3, code).unwrap();
            assert_eq!(g.transpose().transpose(), g);
        }
    }

    #[test]
    fn transpose_of_single_arc() {
        let g = Digraph::from_arcs(2, &[(0, 1)]).unwrap();
        let t = g.transpose();
        assert!(t.arc(1, 0));
        assert!(!t.arc(0, 1));
    }

    #[test]
    fn transpose_of_cycle_is_reversed_cycle() {
        let c3 = make_family(&FamilySpec::DirectedCycle(3)).unwrap();
        let t = c3.transpose();
        assert!(t.classify_structure().is_permutation_digraph);
    }

    #[test]
    fn transpose_of_ocb_swaps_sides() {
        let k23 = make_family(&FamilySpec::OrientedCompleteBipartite(2, 3)).unwrap();
        assert_eq!(k23.transpose().ocb_plus_isolated(), Some((3, 2)));
    }

    #[test]
    fn direct_sum_blocks() {
        let p2 = Digraph::from_arcs(2, &[(0, 1)]).unwrap();
        let g = Digraph::direct_sum(&[p2.clone(), p2.clone()]).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.arc(0, 1) && g.arc(2, 3));
        assert_eq!(g.arc_count(), 2);
        assert_eq!(Digraph::direct_sum(std::slice::from_ref(&p2)).unwrap(), p2);
    }

    #[test]
    fn direct_sum_of_cycles_is_permutation_digraph() {
        let c5 = make_family(&FamilySpec::DirectedCycle(5)).unwrap();
        let c2 = make_family(&FamilySpec::DirectedCycle(2)).unwrap();
        let g = Digraph::direct_sum(&[c5, c2]).unwrap();
        let flags = g.classify_structure();
        assert!(flags.is_permutation_digraph);
        assert_eq!(flags.regular_degree, Some(1));
    }

    #[test]
    fn classify_discrete() {
        let flags = Digraph::discrete(4).unwrap().classify_structure();
        assert!(flags.is_discrete);
        assert_eq!(flags.regular_degree, Some(0));
        assert!(flags.is_symmetric);
        assert_eq!(flags.ocb_plus_isolated, None);
    }

    #[test]
    fn classify_ocb_with_isolated_vertex() {
        let k23 = make_family(&FamilySpec::OrientedCompleteBipartite(2, 3)).unwrap();
        let iso = Digraph::discrete(1).unwrap();
        let g = Digraph::direct_sum(&[k23, iso]).unwrap();
        assert_eq!(g.classify_structure().ocb_plus_isolated, Some((2, 3)));
        assert_eq!(g.out_star_plus_isolated(), None);
    }

    #[test]
    fn out_star_detection() {
        let star = make_family(&FamilySpec::OrientedCompleteBipartite(1, 3)).unwrap();
        let g = Digraph::direct_sum(&[star, Digraph::discrete(2).unwrap()]).unwrap();
        assert_eq!(g.out_star_plus_isolated(), Some((3, 2)));
    }

    #[test]
    fn complete_core_detection() {
        // Mutual pair both pointing at two common sinks.
        let g = Digraph::from_arcs(
            4,
            &[(0, 1), (1, 0), (0, 2), (1, 2), (0, 3), (1, 3)],
        )
        .unwrap();
        assert_eq!(g.complete_core_with_sinks(), Some((2, 2, 0)));
        // A full symmetric complete digraph is a core with no sinks.
        let k4 = make_family(&FamilySpec::SymmetricComplete(4)).unwrap();
        assert_eq!(k4.complete_core_with_sinks(), Some((4, 0, 0)));
        // One sink missing an arc from the core is not of this shape.
        let h = Digraph::from_arcs(4, &[(0, 1), (1, 0), (0, 2), (1, 2), (0, 3)]).unwrap();
        assert_eq!(h.complete_core_with_sinks(), None);
    }

    #[test]
    fn sym_k2_detection() {
        let g = Digraph::from_arcs(4, &[(1, 3), (3, 1)]).unwrap();
        assert_eq!(g.sym_k2_plus_isolated(), Some(2));
        let h = Digraph::from_arcs(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(h.sym_k2_plus_isolated(), Some(0));
        assert_eq!(Digraph::discrete(2).unwrap().sym_k2_plus_isolated(), None);
    }

    #[test]
    fn oriented_tree_flag() {
        let path = Digraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(path.classify_structure().is_oriented_tree);
        let cycle = make_family(&FamilySpec::DirectedCycle(3)).unwrap();
        assert!(!cycle.classify_structure().is_oriented_tree);
        let sym = Digraph::from_arcs(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(!sym.classify_structure().is_oriented_tree);
        let forest = Digraph::from_arcs(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!forest.classify_structure().is_oriented_tree);
    }

    #[test]
    fn encode_decode_roundtrip() {
        for code in 0..4096u64 {
            let g = Digraph::decode(4, code).unwrap();
            assert_eq!(g.encode(), code);
        }
        let g = Digraph::decode(4, 0).unwrap();
        assert!(g.classify_structure().is_discrete);
        let full = Digraph::decode(4, 4095).unwrap();
        assert_eq!(full.arc_count(), 12);
    }
}
