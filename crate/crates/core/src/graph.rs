//! Signed weighted undirected graphs, their matrix family, and the weighted
//! barbell.
//!
//! Weights may be negative or non-integer. An absent edge is weight zero, so
//! inserting an explicit zero-weight edge is rejected as a caller error.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::HermitianOperator;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SignedWeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    index: BTreeMap<(usize, usize), usize>,
}

impl SignedWeightedGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            index: BTreeMap::new(),
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut g = Self::new(n);
        for (i, j, w) in edges {
            g.add_edge(i, j, w)?;
        }
        Ok(g)
    }

    /// Adds the undirected edge `{i, j}`. Stored once, with `i < j`.
    pub fn add_edge(&mut self, i: usize, j: usize, weight: f64) -> Result<()> {
        if i == j {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
        }
        if i >= self.n || j >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge ({i}, {j}) out of range for {} vertices",
                self.n
            )));
        }
        if !weight.is_finite() {
            return Err(Error::InvalidGraph(format!("edge ({i}, {j}) has non-finite weight")));
        }
        if weight == 0.0 {
            return Err(Error::InvalidGraph(format!("edge ({i}, {j}) has zero weight")));
        }
        let key = (i.min(j), i.max(j));
        if self.index.contains_key(&key) {
            return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", key.0, key.1)));
        }
        self.index.insert(key, self.edges.len());
        self.edges.push(Edge {
            i: key.0,
            j: key.1,
            weight,
        });
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.index
            .get(&(i.min(j), i.max(j)))
            .map_or(0.0, |&k| self.edges[k].weight)
    }

    /// Weighted degree: sum of the weights of edges incident to `k`.
    pub fn degree(&self, k: usize) -> f64 {
        self.edges
            .iter()
            .filter(|e| e.i == k || e.j == k)
            .map(|e| e.weight)
            .sum()
    }

    /// `|E|`: the sum of all edge weights.
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn adjacency_matrix(&self) -> HermitianOperator {
        HermitianOperator::from_upper("A", self.n, |i, j| self.weight(i, j))
            .expect("adjacency of a validated graph is symmetric")
    }

    pub fn degree_matrix(&self) -> HermitianOperator {
        let degrees = self.degrees();
        HermitianOperator::diagonal("D", &degrees).expect("finite degrees")
    }

    fn degrees(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n];
        for e in &self.edges {
            d[e.i] += e.weight;
            d[e.j] += e.weight;
        }
        d
    }

    /// `L_alpha = L + alpha D = A + (alpha - 1) D`.
    ///
    /// `alpha = 0` is the Laplacian, `1` the adjacency matrix and `2` the
    /// signless Laplacian.
    pub fn generalized_laplacian(&self, alpha: f64) -> HermitianOperator {
        let degrees = self.degrees();
        HermitianOperator::from_upper(format!("L_{alpha}"), self.n, |i, j| {
            if i == j {
                (alpha - 1.0) * degrees[i]
            } else {
                self.weight(i, j)
            }
        })
        .expect("generalized Laplacian of a validated graph is symmetric")
    }

    /// Text form: `"n m"` then one `"i j weight"` line per edge, weights with
    /// 17 significant digits so that parsing returns the identical graph.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            writeln!(out, "{} {} {:.16e}", e.i, e.j, e.weight).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line, header) = lines.next().ok_or(Error::GraphFormat {
            line: 1,
            message: "missing header".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let parse_count = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::GraphFormat {
                line,
                message: format!("expected a count, found `{s}`"),
            })
        };
        if fields.len() != 2 {
            return Err(Error::GraphFormat {
                line,
                message: "header must be `n m`".into(),
            });
        }
        let n = parse_count(fields[0])?;
        let m = parse_count(fields[1])?;

        let mut g = Self::new(n);
        let mut seen = 0;
        for (line, body) in lines {
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::GraphFormat {
                    line,
                    message: "edge line must be `i j weight`".into(),
                });
            }
            let bad = |what: &str| Error::GraphFormat {
                line,
                message: format!("cannot parse {what}"),
            };
            let i = fields[0].parse::<usize>().map_err(|_| bad("vertex i"))?;
            let j = fields[1].parse::<usize>().map_err(|_| bad("vertex j"))?;
            let w = fields[2].parse::<f64>().map_err(|_| bad("weight"))?;
            g.add_edge(i, j, w).map_err(|e| Error::GraphFormat {
                line,
                message: e.to_string(),
            })?;
            seen += 1;
        }
        if seen != m {
            return Err(Error::GraphFormat {
                line: 1,
                message: format!("header declares {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }
}

/// The five vertex classes of the barbell that evolve identically from the
/// uniform state: the marked vertex `a`, the rest of its clique `b`, the
/// bridge endpoints `c` (marked side) and `d`, and the rest of the unmarked
/// clique `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexClass {
    A,
    B,
    C,
    D,
    E,
}

impl VertexClass {
    pub const ALL: [VertexClass; 5] = [
        VertexClass::A,
        VertexClass::B,
        VertexClass::C,
        VertexClass::D,
        VertexClass::E,
    ];

    pub fn label(self) -> &'static str {
        match self {
            VertexClass::A => "a",
            VertexClass::B => "b",
            VertexClass::C => "c",
            VertexClass::D => "d",
            VertexClass::E => "e",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Two `K_{n/2}` cliques of unit edges joined by a single bridge of weight
/// `weight`.
///
/// Vertex order is fixed as `[a, b.., c, d, e..]`: vertex 0 is the marked
/// vertex, `1..=n/2-2` the `b` class, `n/2-1` the marked-side bridge end `c`,
/// `n/2` the other bridge end `d`, and the rest the `e` class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarbellSpec {
    pub n: usize,
    pub weight: f64,
}

impl BarbellSpec {
    pub fn new(n: usize, weight: f64) -> Result<Self> {
        let spec = Self { n, weight };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n % 2 != 0 {
            return Err(Error::InvalidBarbell(format!("vertex count {} is odd", self.n)));
        }
        if self.n < 6 {
            return Err(Error::InvalidBarbell(format!(
                "vertex count {} is below 6 (the b class would be empty)",
                self.n
            )));
        }
        if !self.weight.is_finite() || self.weight == 0.0 {
            return Err(Error::InvalidBarbell(format!(
                "bridge weight {} must be finite and nonzero",
                self.weight
            )));
        }
        Ok(())
    }

    pub fn half(&self) -> usize {
        self.n / 2
    }

    pub fn marked(&self) -> usize {
        0
    }

    pub fn bridge(&self) -> (usize, usize) {
        (self.half() - 1, self.half())
    }

    pub fn class_of(&self, v: usize) -> VertexClass {
        let h = self.half();
        match v {
            0 => VertexClass::A,
            v if v < h - 1 => VertexClass::B,
            v if v == h - 1 => VertexClass::C,
            v if v == h => VertexClass::D,
            _ => VertexClass::E,
        }
    }

    /// Number of vertices in each class, in `a..e` order.
    pub fn multiplicities(&self) -> [usize; 5] {
        let h = self.half();
        [1, h - 2, 1, 1, h - 1]
    }
}

pub fn build_barbell(spec: &BarbellSpec) -> Result<SignedWeightedGraph> {
    spec.validate()?;
    let h = spec.half();
    let mut g = SignedWeightedGraph::new(spec.n);
    for offset in [0, h] {
        for i in 0..h {
            for j in i + 1..h {
                g.add_edge(offset + i, offset + j, 1.0)?;
            }
        }
    }
    let (c, d) = spec.bridge();
    g.add_edge(c, d, spec.weight)?;
    Ok(g)
}

/// The four-vertex example network with edges `{1,2}, {2,3}, {2,4}, {3,4}`
/// (zero-based here), weights given in that order.
pub fn four_vertex_example(weights: [f64; 4]) -> Result<SignedWeightedGraph> {
    SignedWeightedGraph::from_edges(
        4,
        [
            (0, 1, weights[0]),
            (1, 2, weights[1]),
            (1, 3, weights[2]),
            (2, 3, weights[3]),
        ],
    )
}
