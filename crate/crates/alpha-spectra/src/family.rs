//! Generators for the named digraph families.

use crate::digraph::{Digraph, DigraphError};
use std::fmt;
use thiserror::Error;

/// A named digraph family together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// Arcs (0,1), (1,2), ..., (n-2, n-1).
    DirectedPath(usize),
    /// The path arcs plus (n-1, 0); requires n >= 2.
    DirectedCycle(usize),
    /// All arcs from each of the first r vertices to each of the last s.
    OrientedCompleteBipartite(usize, usize),
    /// Every ordered pair, i.e. the symmetric digraph of K_n.
    SymmetricComplete(usize),
    /// Symmetric digraph of an arbitrary undirected edge list on n vertices.
    SymmetricFromGraph(usize, Vec<(usize, usize)>),
    /// Cayley graph on Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)},
    /// as a symmetric digraph on 16 vertices.
    Shrikhande,
    /// No arcs.
    Discrete(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family requires n >= 1")]
    OrderTooSmall,
    #[error("directed cycle requires n >= 2")]
    CycleTooSmall,
    #[error("bipartite sides must satisfy r >= 1 and s >= 1")]
    EmptySide,
    #[error("invalid underlying edge list: {0}")]
    BadEdge(#[from] DigraphError),
    #[error("unsupported family spec: {0}")]
    Unparseable(String),
}

impl FamilySpec {
    /// Vertex count of the generated digraph.
    pub fn order(&self) -> usize {
        match self {
            FamilySpec::DirectedPath(n)
            | FamilySpec::DirectedCycle(n)
            | FamilySpec::SymmetricComplete(n)
            | FamilySpec::SymmetricFromGraph(n, _)
            | FamilySpec::Discrete(n) => *n,
            FamilySpec::OrientedCompleteBipartite(r, s) => r + s,
            FamilySpec::Shrikhande => 16,
        }
    }

    /// Parses the CLI grammar: `path:n`, `cycle:n`, `kbip:r,s`, `symk:n`,
    /// `shrikhande`, `discrete:n`.
    pub fn parse(text: &str) -> Result<Self, FamilyError> {
        let bad = || FamilyError::Unparseable(text.to_string());
        let (name, args) = match text.split_once(':') {
            Some((name, args)) => (name, Some(args)),
            None => (text, None),
        };
        let one = |args: Option<&str>| -> Result<usize, FamilyError> {
            args.and_then(|a| a.parse().ok()).ok_or_else(bad)
        };
        match name {
            "path" => Ok(FamilySpec::DirectedPath(one(args)?)),
            "cycle" => Ok(FamilySpec::DirectedCycle(one(args)?)),
            "symk" => Ok(FamilySpec::SymmetricComplete(one(args)?)),
            "discrete" => Ok(FamilySpec::Discrete(one(args)?)),
            "shrikhande" if args.is_none() => Ok(FamilySpec::Shrikhande),
            "kbip" => {
                let (r, s) = args.and_then(|a| a.split_once(',')).ok_or_else(bad)?;
                let r: usize = r.parse().map_err(|_| bad())?;
                let s: usize = s.parse().map_err(|_| bad())?;
                Ok(FamilySpec::OrientedCompleteBipartite(r, s))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::DirectedPath(n) => write!(f, "path:{n}"),
            FamilySpec::DirectedCycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::OrientedCompleteBipartite(r, s) => write!(f, "kbip:{r},{s}"),
            FamilySpec::SymmetricComplete(n) => write!(f, "symk:{n}"),
            FamilySpec::Shrikhande => write!(f, "shrikhande"),
            FamilySpec::Discrete(n) => write!(f, "discrete:{n}"),
            FamilySpec::SymmetricFromGraph(n, edges) => {
                write!(f, "symgraph:{n}:{}", edges.len())
            }
        }
    }
}

/// Builds the digraph a family spec describes.
pub fn make_family(spec: &FamilySpec) -> Result<Digraph, FamilyError> {
    match spec {
        FamilySpec::Discrete(n) => {
            Digraph::discrete(*n).map_err(|_| FamilyError::OrderTooSmall)
        }
        FamilySpec::DirectedPath(n) => {
            if *n == 0 {
                return Err(FamilyError::OrderTooSmall);
            }
            let arcs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            Ok(Digraph::from_arcs(*n, &arcs).expect("path arcs are valid"))
        }
        FamilySpec::DirectedCycle(n) => {
            if *n < 2 {
                return Err(FamilyError::CycleTooSmall);
            }
            let mut arcs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            arcs.push((n - 1, 0));
            Ok(Digraph::from_arcs(*n, &arcs).expect("cycle arcs are valid"))
        }
        FamilySpec::OrientedCompleteBipartite(r, s) => {
            if *r == 0 || *s == 0 {
                return Err(FamilyError::EmptySide);
            }
            let mut arcs = Vec::with_capacity(r * s);
            for u in 0..*r {
                for v in 0..*s {
                    arcs.push((u, r + v));
                }
            }
            Ok(Digraph::from_arcs(r + s, &arcs).expect("bipartite arcs are valid"))
        }
        FamilySpec::SymmetricComplete(n) => {
            if *n == 0 {
                return Err(FamilyError::OrderTooSmall);
            }
            let mut arcs = Vec::with_capacity(n * (n - 1));
            for u in 0..*n {
                for v in 0..*n {
                    if u != v {
                        arcs.push((u, v));
                    }
                }
            }
            Ok(Digraph::from_arcs(*n, &arcs).expect("complete arcs are valid"))
        }
        FamilySpec::SymmetricFromGraph(n, edges) => {
            if *n == 0 {
                return Err(FamilyError::OrderTooSmall);
            }
            let mut arcs = Vec::with_capacity(2 * edges.len());
            for &(u, v) in edges {
                arcs.push((u, v));
                arcs.push((v, u));
            }
            Ok(Digraph::from_arcs(*n, &arcs)?)
        }
        FamilySpec::Shrikhande => Ok(shrikhande()),
    }
}

/// Vertices are pairs over Z4 indexed as 4x + y; x and y are adjacent when
/// their difference lies in {+-(1,0), +-(0,1), +-(1,1)} mod 4.
fn shrikhande() -> Digraph {
    const CONN: [(i32, i32); 6] = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)];
    let mut arcs = Vec::new();
    for x1 in 0..4i32 {
        for y1 in 0..4i32 {
            for &(dx, dy) in &CONN {
                let x2 = (x1 + dx).rem_euclid(4);
                let y2 = (y1 + dy).rem_euclid(4);
                arcs.push(((4 * x1 + y1) as usize, (4 * x2 + y2) as usize));
            }
        }
    }
    Digraph::from_arcs(16, &arcs).expect("connection set is loop-free and symmetric")
}
