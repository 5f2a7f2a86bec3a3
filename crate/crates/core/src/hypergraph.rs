//! Hypergraphs and the Boolean sign function `g` of their states.
//!
//! Vertex `v` of an `n`-vertex hypergraph is the `v`-th most significant bit
//! of a basis label, so vertex 0 is the leftmost qubit of `|b_0 b_1 ... b_{n-1}>`.
//! `g(i)` is the parity of the number of hyperedges whose vertices are all 1
//! in `i`, which is exactly the sign pattern left by one multi-controlled Z
//! per hyperedge acting on `|+>^n`.
//!
//! Text format: the first significant line holds `n`, every further
//! non-empty line holds one hyperedge as space-separated vertex indices.
//! Lines starting with `#` are comments.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, HypergraphErrorKind as Kind, Result};
use crate::MAX_VERTICES;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    /// Sorted vertex lists, themselves sorted lexicographically.
    edges: Vec<Vec<usize>>,
    /// One bit mask per edge, aligned with `edges`.
    masks: Vec<usize>,
}

/// A computational basis label `i` in `[0, 2^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex(usize);

impl BasisIndex {
    pub fn new(i: usize, dim: usize) -> Result<Self> {
        if i < dim {
            Ok(Self(i))
        } else {
            Err(Error::IndexOutOfRange { index: i, dim })
        }
    }

    pub fn get(self) -> usize {
        self.0
    }
}

fn hg_err(line: Option<usize>, kind: Kind) -> Error {
    Error::Hypergraph { line, kind }
}

impl Hypergraph {
    /// Builds a hypergraph, checking every invariant. Edge order and vertex
    /// order within an edge are irrelevant.
    pub fn new<E, I>(n: usize, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let mut builder = Builder::new(n, None)?;
        for edge in edges {
            builder.push(edge.into_iter().collect(), None)?;
        }
        Ok(builder.finish())
    }

    /// Hypergraph with no edges; its state is `|+>^n`.
    pub fn edgeless(n: usize) -> Result<Self> {
        Self::new(n, core::iter::empty::<Vec<usize>>())
    }

    /// The four-vertex example with edges (0,3), (1,2), (0,2,3), (1,2,3).
    ///
    /// Sign vector `++++++-++-+++--+`. Swapping (1,2) for (1,3) changes it.
    pub fn example_four_vertex() -> Self {
        Self::new(4, [vec![0, 3], vec![1, 2], vec![0, 2, 3], vec![1, 2, 3]])
            .expect("fixed example is valid")
    }

    /// A hypergraph on `n` vertices whose edges (each of size >= 2) are
    /// kept with probability 1/2, driven by a ChaCha8 stream seeded with
    /// `seed`. Falls back to the full edge if nothing was kept.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Self::edgeless(n);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for subset in 1usize..(1 << n) {
            if subset.count_ones() < 2 {
                continue;
            }
            if rng.next_u32() & 1 == 1 {
                edges.push((0..n).filter(|v| subset >> v & 1 == 1).collect::<Vec<_>>());
            }
        }
        if edges.is_empty() {
            edges.push((0..n).collect());
        }
        Self::new(n, edges)
    }

    /// Vertex count `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// State dimension `N = 2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Canonical edge list.
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn basis_index(&self, i: usize) -> Result<BasisIndex> {
        BasisIndex::new(i, self.dim())
    }

    /// Bit mask of vertex `v` inside a basis label.
    pub fn vertex_mask(&self, v: usize) -> usize {
        1 << (self.n - 1 - v)
    }

    /// `g(i)`: parity of the number of edges fully contained in the 1-bits of `i`.
    pub fn boolean_g(&self, i: BasisIndex) -> u8 {
        self.g_raw(i.0)
    }

    #[inline]
    pub(crate) fn g_raw(&self, i: usize) -> u8 {
        let hits = self.masks.iter().filter(|&&m| i & m == m).count();
        (hits & 1) as u8
    }

    /// `(-1)^{g(i)}` for every basis label, as `+1`/`-1`.
    pub fn sign_vector(&self) -> Vec<i8> {
        (0..self.dim())
            .map(|i| if self.g_raw(i) == 0 { 1 } else { -1 })
            .collect()
    }

    /// Parses the text format described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        let mut builder: Option<Builder> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match builder.as_mut() {
                None => {
                    let n = line.parse::<usize>().map_err(|_| {
                        hg_err(
                            Some(line_no),
                            Kind::VertexCount(format!("expected a positive integer, got {line:?}")),
                        )
                    })?;
                    builder = Some(Builder::new(n, Some(line_no))?);
                }
                Some(b) => {
                    let edge = line
                        .split_whitespace()
                        .map(|tok| {
                            tok.parse::<usize>().map_err(|_| {
                                hg_err(
                                    Some(line_no),
                                    Kind::Malformed(format!("{tok:?} is not a vertex index")),
                                )
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    b.push(edge, Some(line_no))?;
                }
            }
        }
        builder
            .map(Builder::finish)
            .ok_or_else(|| hg_err(None, Kind::VertexCount("missing vertex count line".to_string())))
    }
}

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Serializes to the text format; `parse(to_string(h)) == h`.
impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for edge in &self.edges {
            let mut first = true;
            for v in edge {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct Builder {
    n: usize,
    edges: BTreeSet<Vec<usize>>,
}

impl Builder {
    fn new(n: usize, line: Option<usize>) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(hg_err(
                line,
                Kind::VertexCount(format!("n = {n} must lie in 1..={MAX_VERTICES}")),
            ));
        }
        Ok(Self {
            n,
            edges: BTreeSet::new(),
        })
    }

    fn push(&mut self, mut edge: Vec<usize>, line: Option<usize>) -> Result<()> {
        if edge.is_empty() {
            return Err(hg_err(line, Kind::EmptyEdge));
        }
        if let Some(&vertex) = edge.iter().find(|&&v| v >= self.n) {
            return Err(hg_err(line, Kind::VertexOutOfRange { vertex, n: self.n }));
        }
        edge.sort_unstable();
        if let Some(w) = edge.windows(2).find(|w| w[0] == w[1]) {
            return Err(hg_err(line, Kind::RepeatedVertex(w[0])));
        }
        if !self.edges.insert(edge) {
            return Err(hg_err(line, Kind::DuplicateEdge));
        }
        Ok(())
    }

    fn finish(self) -> Hypergraph {
        let n = self.n;
        let edges: Vec<Vec<usize>> = self.edges.into_iter().collect();
        let masks = edges
            .iter()
            .map(|e| e.iter().fold(0usize, |m, &v| m | 1 << (n - 1 - v)))
            .collect();
        Hypergraph { n, edges, masks }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    /// Applies one multi-controlled Z per edge to basis state `i` and reads
    /// back the accumulated sign, bit by bit, with no masks.
    fn gate_level_sign(h: &Hypergraph, i: usize) -> i8 {
        let bits: Vec<u8> = (0..h.n())
            .map(|v| ((i >> (h.n() - 1 - v)) & 1) as u8)
            .collect();
        let mut sign = 1i8;
        for edge in h.edges() {
            if edge.iter().all(|&v| bits[v] == 1) {
                sign = -sign;
            }
        }
        sign
    }

    #[test]
    fn parses_four_vertex_example() {
        let h: Hypergraph = "4\n0 3\n1 2\n0 2 3\n1 2 3".parse().unwrap();
        assert_eq!(h, Hypergraph::example_four_vertex());
        assert_eq!(h.edges(), &[vec![0, 2, 3], vec![0, 3], vec![1, 2], vec![1, 2, 3]]);
    }

    #[test]
    fn edge_order_is_irrelevant() {
        let a: Hypergraph = "4\n1 2 3\n3 0\n2 1\n0 2 3".parse().unwrap();
        assert_eq!(a, Hypergraph::example_four_vertex());
    }

    #[test]
    fn minimal_input() {
        let h: Hypergraph = "1\n0".parse().unwrap();
        assert_eq!(h.n(), 1);
        assert_eq!(h.edges(), &[vec![0]]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let h: Hypergraph = "# header\n\n2\n# edge\n0 1\n\n".parse().unwrap();
        assert_eq!(h.edges(), &[vec![0, 1]]);
    }

    #[test]
    fn duplicate_edge_reports_line() {
        let err = "3\n0 1\n0 1".parse::<Hypergraph>().unwrap_err();
        assert_eq!(
            err,
            Error::Hypergraph {
                line: Some(3),
                kind: Kind::DuplicateEdge
            }
        );
        assert_eq!(err.to_string(), "line 3: duplicate edge");
        assert!("3\n0 1\n1 0".parse::<Hypergraph>().is_err());
    }

    #[test]
    fn bad_inputs_report_lines() {
        let cases = [
            ("4\n0 4", 2),
            ("4\n0 x", 2),
            ("4\n0 1\n2 2", 3),
            ("0", 1),
            ("13", 1),
            ("four", 1),
            ("-3", 1),
        ];
        for (text, line) in cases {
            match text.parse::<Hypergraph>() {
                Err(Error::Hypergraph { line: Some(l), .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: unexpected {other:?}"),
            }
        }
        assert!("".parse::<Hypergraph>().is_err());
        assert!(Hypergraph::new(3, [Vec::<usize>::new()]).is_err());
    }

    #[test]
    fn out_of_range_message_names_line() {
        let err = "4\n0 3\n1 7".parse::<Hypergraph>().unwrap_err();
        assert_eq!(err.to_string(), "line 3: vertex 7 out of range for n = 4");
    }

    #[test]
    fn example_g_and_signs() {
        let h = Hypergraph::example_four_vertex();
        assert_eq!(h.boolean_g(h.basis_index(6).unwrap()), 1);
        let expected: [i8; 16] = [1, 1, 1, 1, 1, 1, -1, 1, 1, -1, 1, 1, 1, -1, -1, 1];
        assert_eq!(h.sign_vector(), expected);
    }

    #[test]
    fn swapped_pair_edge_changes_example_signs() {
        let swapped = Hypergraph::new(4, [vec![0, 3], vec![1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
        assert_ne!(swapped.sign_vector(), Hypergraph::example_four_vertex().sign_vector());
    }

    #[test]
    fn small_sign_vectors() {
        assert_eq!(Hypergraph::edgeless(2).unwrap().sign_vector(), [1, 1, 1, 1]);
        let cz = Hypergraph::new(2, [[0, 1]]).unwrap();
        assert_eq!(cz.sign_vector(), [1, 1, 1, -1]);
        // vertex 0 is the most significant bit
        let z0 = Hypergraph::new(2, [[0]]).unwrap();
        assert_eq!(z0.sign_vector(), [1, 1, -1, -1]);
    }

    #[test]
    fn basis_index_bounds() {
        let h = Hypergraph::edgeless(3).unwrap();
        assert!(h.basis_index(7).is_ok());
        assert!(h.basis_index(8).is_err());
    }

    #[test]
    fn random_is_seeded() {
        let a = Hypergraph::random(3, 42).unwrap();
        assert_eq!(a, Hypergraph::random(3, 42).unwrap());
        assert!(!a.edges().is_empty());
    }

    #[test]
    fn display_round_trips() {
        let h = Hypergraph::example_four_vertex();
        assert_eq!(h.to_string().parse::<Hypergraph>().unwrap(), h);
    }

    fn arb_hypergraph(max_n: usize) -> impl proptest::strategy::Strategy<Value = Hypergraph> {
        use proptest::prelude::*;
        (1..=max_n).prop_flat_map(|n| {
            let subsets = (1usize..(1 << n)).collect::<Vec<_>>();
            proptest::sample::subsequence(subsets.clone(), 0..=subsets.len()).prop_map(move |chosen| {
                let edges = chosen
                    .into_iter()
                    .map(|s| (0..n).filter(|v| s >> v & 1 == 1).collect::<Vec<_>>());
                Hypergraph::new(n, edges).unwrap()
            })
        })
    }

    proptest::proptest! {
        #[test]
        fn g_matches_gate_level_circuit(h in arb_hypergraph(3)) {
            for i in 0..h.dim() {
                let g = h.boolean_g(h.basis_index(i).unwrap());
                proptest::prop_assert!(g <= 1);
                let sign = if g == 0 { 1 } else { -1 };
                proptest::prop_assert_eq!(sign, gate_level_sign(&h, i));
            }
        }

        #[test]
        fn edge_permutation_keeps_signs(h in arb_hypergraph(5), seed in 0u64..1000) {
            let mut edges = h.edges().to_vec();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for k in (1..edges.len()).rev() {
                let j = (rng.next_u32() as usize) % (k + 1);
                edges.swap(k, j);
            }
            for e in edges.iter_mut() {
                e.reverse();
            }
            let permuted = Hypergraph::new(h.n(), edges).unwrap();
            proptest::prop_assert_eq!(permuted.sign_vector(), h.sign_vector());
        }
    }
}
