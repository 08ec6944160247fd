//! The co-maximal graph Γ(Z_n), the proper-divisor graph `G_n`, and the
//! divisor-class blow-up that rebuilds Γ(Z_n) from them.
//!
//! [`build_comaximal`] works straight from the ring: `a ~ b` iff
//! `gcd(gcd(a, b), n) = 1`. The blow-up path never looks at ring elements'
//! pairwise gcds; [`verify_structure`] compares the two.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::numtheory::{factorize, gcd, FactoredInteger};
use crate::Result;

/// Undirected simple graph with bit-row adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    order: usize,
    words: usize,
    bits: Vec<u64>,
    labels: Option<Vec<u64>>,
}

impl SimpleGraph {
    pub fn new(order: usize) -> Self {
        let words = order.div_ceil(64);
        Self {
            order,
            words,
            bits: alloc::vec![0; order * words],
            labels: None,
        }
    }

    pub fn complete(order: usize) -> Self {
        let mut g = Self::new(order);
        for u in 0..order {
            for v in u + 1..order {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn with_labels(mut self, labels: Vec<u64>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    /// Adds `u ~ v`. Self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.order && v < self.order);
        if u == v {
            return;
        }
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&v| self.has_edge(u, v))
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| {
            (u + 1..self.order)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Closed neighborhoods `N[v]` as single-word masks; `None` past 64 vertices.
    pub fn closed_neighborhoods(&self) -> Option<Vec<u64>> {
        if self.order > 64 {
            return None;
        }
        Some(
            (0..self.order)
                .map(|u| self.bits[u * self.words] | 1 << u)
                .collect(),
        )
    }

    /// Disjoint union; `other`'s vertices are appended after `self`'s.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.order + other.order);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(self.order + u, self.order + v);
        }
        g
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.order {
            for v in 0..other.order {
                g.add_edge(u, self.order + v);
            }
        }
        g
    }

    /// Edge-list text: a `# <header>` line, then one `u v` pair per line.
    pub fn edge_list(&self, header: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {header}");
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Coprimality graph on the proper divisors of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorGraph {
    pub divisors: Vec<u64>,
    pub graph: SimpleGraph,
}

/// `G_n` together with the class sizes `m_i = φ(n/d_i)` of the blow-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupSpec {
    pub n: u64,
    pub base: DivisorGraph,
    pub class_sizes: Vec<u64>,
    pub unit_count: u64,
    /// The zero element is always a vertex of its own.
    pub zero_present: bool,
}

impl BlowupSpec {
    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    /// Order of `G_2`, the blow-up over all proper divisors.
    pub fn g2_order(&self) -> u64 {
        self.class_sizes.iter().sum()
    }

    /// `G_n` neighbor sets as bit masks over class indices.
    pub fn neighbor_masks(&self) -> Vec<u64> {
        let t = self.class_count();
        (0..t)
            .map(|i| self.base.graph.neighbors(i).fold(0u64, |m, j| m | 1 << j))
            .collect()
    }
}

pub fn build_comaximal(n: u64) -> Result<SimpleGraph> {
    factorize(n)?;
    let order = n as usize;
    let mut g = SimpleGraph::new(order);
    for a in 0..n {
        for b in a + 1..n {
            if gcd(gcd(a, b), n) == 1 {
                g.add_edge(a as usize, b as usize);
            }
        }
    }
    Ok(g.with_labels((0..n).collect()))
}

pub fn build_divisor_graph(n: u64) -> Result<DivisorGraph> {
    Ok(divisor_graph_of(&factorize(n)?))
}

fn divisor_graph_of(f: &FactoredInteger) -> DivisorGraph {
    let divisors = f.proper_divisors();
    let mut graph = SimpleGraph::new(divisors.len());
    for (i, &a) in divisors.iter().enumerate() {
        for (j, &b) in divisors.iter().enumerate().skip(i + 1) {
            if gcd(a, b) == 1 {
                graph.add_edge(i, j);
            }
        }
    }
    let graph = graph.with_labels(divisors.clone());
    DivisorGraph { divisors, graph }
}

pub fn build_blowup_spec(n: u64) -> Result<BlowupSpec> {
    let f = factorize(n)?;
    let base = divisor_graph_of(&f);
    let class_sizes = base
        .divisors
        .iter()
        .map(|&d| f.class_size(d))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlowupSpec {
        n,
        base,
        class_sizes,
        unit_count: f.euler_phi(),
        zero_present: true,
    })
}

/// Ring elements of each class `A_d`, ascending, aligned with `spec.base.divisors`.
fn class_members(spec: &BlowupSpec) -> Vec<Vec<u64>> {
    let mut members: Vec<Vec<u64>> = alloc::vec![Vec::new(); spec.class_count()];
    for x in 1..spec.n {
        let d = gcd(x, spec.n);
        if d > 1 {
            if let Ok(i) = spec.base.divisors.binary_search(&d) {
                members[i].push(x);
            }
        }
    }
    members
}

/// `G_2` alone: class `i` is an independent set of `m_i` vertices, fully
/// joined to class `j` whenever `d_i ~ d_j` in `G_n`. Vertices are ordered by
/// class, and labelled with the ring elements of that class.
pub fn expand_classes(spec: &BlowupSpec) -> SimpleGraph {
    let offsets: Vec<usize> = spec
        .class_sizes
        .iter()
        .scan(0usize, |acc, &m| {
            let start = *acc;
            *acc += m as usize;
            Some(start)
        })
        .collect();
    let order = spec.g2_order() as usize;
    let mut g = SimpleGraph::new(order);
    for (i, j) in spec.base.graph.edges() {
        for a in 0..spec.class_sizes[i] as usize {
            for b in 0..spec.class_sizes[j] as usize {
                g.add_edge(offsets[i] + a, offsets[j] + b);
            }
        }
    }
    g.with_labels(class_members(spec).into_iter().flatten().collect())
}

/// Full Γ(Z_n) from the blow-up description, in canonical order: units
/// ascending, then 0, then the classes by ascending divisor.
pub fn expand_blowup(spec: &BlowupSpec) -> SimpleGraph {
    let units = spec.unit_count as usize;
    let unit_labels: Vec<u64> = (1..spec.n).filter(|&x| gcd(x, spec.n) == 1).collect();
    let g2 = expand_classes(spec);
    let zero_and_g2 = SimpleGraph::new(1).disjoint_union(&g2);
    let g = SimpleGraph::complete(units).join(&zero_and_g2);
    let mut labels = unit_labels;
    labels.push(0);
    labels.extend_from_slice(g2.labels().unwrap_or_default());
    g.with_labels(labels)
}

/// Outcome of comparing the blow-up against the direct construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureCheck {
    pub n: u64,
    pub matches: bool,
    /// First pair of ring elements whose adjacency differs.
    pub first_mismatch: Option<(u64, u64)>,
}

pub fn verify_structure(n: u64) -> Result<StructureCheck> {
    let direct = build_comaximal(n)?;
    let expanded = expand_blowup(&build_blowup_spec(n)?);
    let labels = expanded.labels().unwrap_or_default();
    let mut first_mismatch = None;
    let mut seen = alloc::vec![false; n as usize];
    for &l in labels {
        seen[l as usize] = true;
    }
    if labels.len() != n as usize || seen.iter().any(|s| !s) {
        first_mismatch = Some((0, 0));
    } else {
        'outer: for u in 0..expanded.order() {
            for v in u + 1..expanded.order() {
                let (a, b) = (labels[u], labels[v]);
                if expanded.has_edge(u, v) != direct.has_edge(a as usize, b as usize) {
                    first_mismatch = Some((a.min(b), a.max(b)));
                    break 'outer;
                }
            }
        }
    }
    Ok(StructureCheck {
        n,
        matches: first_mismatch.is_none(),
        first_mismatch,
    })
}
