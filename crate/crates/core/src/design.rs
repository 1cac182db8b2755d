//! Core data model: transitive triples, directed triple systems, twofold
//! triple systems and sequencings.
//!
//! A directed triple system of order `v` (written DTS(v)) decomposes the
//! complete directed graph on `v` points into transitive triples: ordered
//! triples `(x, y, z)` carrying the directed edges `xy`, `xz` and `yz`.
//! One exists iff `v = 0, 1 (mod 3)`, and then it has exactly `v(v-1)/3`
//! triples.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Points are the integers `0..v`. Catalog designs with display labels such
/// as "∞" carry a label map on the side; all arithmetic is 0-based.
pub type Point = usize;

/// True iff a directed triple system of order `v` exists.
pub fn admissible(v: usize) -> bool {
    v >= 3 && v % 3 <= 1
}

/// A transitive triple `(first, mid, last)` with directed edges
/// `first->mid`, `first->last` and `mid->last`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub first: Point,
    pub mid: Point,
    pub last: Point,
}

impl Triple {
    pub fn new(first: Point, mid: Point, last: Point) -> Result<Self> {
        if first == mid || first == last || mid == last {
            return Err(Error::DegenerateTriple(first, mid, last));
        }
        Ok(Triple { first, mid, last })
    }

    pub fn points(&self) -> [Point; 3] {
        [self.first, self.mid, self.last]
    }

    /// The three directed edges the triple covers.
    pub fn edges(&self) -> [(Point, Point); 3] {
        [
            (self.first, self.mid),
            (self.first, self.last),
            (self.mid, self.last),
        ]
    }

    pub fn as_tuple(&self) -> (Point, Point, Point) {
        (self.first, self.mid, self.last)
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.first, self.mid, self.last)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.first, self.mid, self.last)
    }
}

impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.first, self.mid, self.last].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Triple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c] = <[usize; 3]>::deserialize(d)?;
        Triple::new(a, b, c).map_err(D::Error::custom)
    }
}

/// A directed triple system, possibly partial. Structural soundness (points
/// in range, non-degenerate triples) is enforced at construction; exact
/// cover of the directed edges is checked separately by [`Dts::validate`].
#[derive(Clone, PartialEq, Eq)]
pub struct Dts {
    v: usize,
    triples: Vec<Triple>,
    labels: Option<Vec<String>>,
}

impl Dts {
    pub fn new(v: usize, triples: Vec<Triple>) -> Result<Self> {
        for t in &triples {
            for p in t.points() {
                if p >= v {
                    return Err(Error::PointOutOfRange { v, point: p });
                }
            }
        }
        Ok(Dts { v, triples, labels: None })
    }

    pub fn with_labels(v: usize, triples: Vec<Triple>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != v {
            return Err(Error::Config(format!(
                "{} labels for order {v}",
                labels.len()
            )));
        }
        let mut d = Dts::new(v, triples)?;
        d.labels = Some(labels);
        Ok(d)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label of a point (its index when unlabeled).
    pub fn label(&self, p: Point) -> String {
        match &self.labels {
            Some(l) => l[p].clone(),
            None => p.to_string(),
        }
    }

    /// Number of triples a complete DTS(v) must have.
    pub fn expected_triples(v: usize) -> usize {
        v * (v - 1) / 3
    }

    pub fn is_complete(&self) -> bool {
        self.triples.len() == Self::expected_triples(self.v)
    }

    /// Exact-cover analysis of the directed edges.
    pub fn validate(&self) -> ValidationReport {
        let v = self.v;
        let mut cover: Vec<Vec<usize>> = vec![Vec::new(); v * v];
        for (i, t) in self.triples.iter().enumerate() {
            for (a, b) in t.edges() {
                cover[a * v + b].push(i);
            }
        }
        let mut missing = Vec::new();
        let mut duplicated = Vec::new();
        for a in 0..v {
            for b in 0..v {
                if a == b {
                    continue;
                }
                match cover[a * v + b].len() {
                    0 => missing.push((a, b)),
                    1 => {}
                    _ => duplicated.push(((a, b), cover[a * v + b].clone())),
                }
            }
        }
        ValidationReport {
            v,
            triple_count: self.triples.len(),
            missing_edges: missing,
            duplicated_edges: duplicated,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().valid()
    }

    /// Consume and return self only if it is a valid complete design.
    pub fn checked(self) -> Result<Self> {
        let report = self.validate();
        if report.valid() {
            Ok(self)
        } else {
            Err(Error::InvalidDesign(report.summary()))
        }
    }

    /// Apply a point permutation: triple `(a, b, c)` maps to
    /// `(perm[a], perm[b], perm[c])`.
    pub fn relabel(&self, perm: &[Point]) -> Result<Dts> {
        check_permutation(self.v, perm)?;
        let triples = self
            .triples
            .iter()
            .map(|t| Triple {
                first: perm[t.first],
                mid: perm[t.mid],
                last: perm[t.last],
            })
            .collect();
        let labels = self.labels.as_ref().map(|ls| {
            let mut out = vec![String::new(); self.v];
            for (p, l) in ls.iter().enumerate() {
                out[perm[p]] = l.clone();
            }
            out
        });
        Ok(Dts { v: self.v, triples, labels })
    }

    /// Forget the order of every triple, producing the underlying twofold
    /// triple system (each unordered pair covered exactly twice).
    pub fn underlying_tts(&self) -> Result<Tts> {
        let report = self.validate();
        if !report.valid() {
            return Err(Error::InvalidDesign(report.summary()));
        }
        let blocks = self
            .triples
            .iter()
            .map(|t| {
                let mut b = t.points();
                b.sort_unstable();
                b
            })
            .collect();
        Tts::new(self.v, blocks)
    }

    /// Triples as a set of tuples, for order-insensitive comparison.
    pub fn triple_set(&self) -> BTreeSet<(Point, Point, Point)> {
        self.triples.iter().map(|t| t.as_tuple()).collect()
    }

    pub fn contains_triple(&self, t: &Triple) -> bool {
        self.triples.contains(t)
    }
}

impl fmt::Debug for Dts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dts(v={}, {} triples)", self.v, self.triples.len())
    }
}

/// Free-function form of design validation.
pub fn validate_dts(v: usize, triples: &[Triple]) -> Result<ValidationReport> {
    Ok(Dts::new(v, triples.to_vec())?.validate())
}

/// All defects found by exact-cover validation, not just the first.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub v: usize,
    pub triple_count: usize,
    /// Directed pairs covered by no triple.
    pub missing_edges: Vec<(Point, Point)>,
    /// Directed pairs covered more than once, with the owning triple indices.
    pub duplicated_edges: Vec<((Point, Point), Vec<usize>)>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.missing_edges.is_empty()
            && self.duplicated_edges.is_empty()
            && self.triple_count == Dts::expected_triples(self.v)
    }

    pub fn summary(&self) -> String {
        if self.valid() {
            return format!("valid DTS({}) with {} triples", self.v, self.triple_count);
        }
        let mut parts = Vec::new();
        if self.triple_count != Dts::expected_triples(self.v) {
            parts.push(format!(
                "{} triples where a DTS({}) needs {}",
                self.triple_count,
                self.v,
                Dts::expected_triples(self.v)
            ));
        }
        if !self.missing_edges.is_empty() {
            let shown: Vec<String> = self
                .missing_edges
                .iter()
                .take(6)
                .map(|(a, b)| format!("({a},{b})"))
                .collect();
            parts.push(format!(
                "{} missing directed edges e.g. {}",
                self.missing_edges.len(),
                shown.join(" ")
            ));
        }
        if !self.duplicated_edges.is_empty() {
            let shown: Vec<String> = self
                .duplicated_edges
                .iter()
                .take(6)
                .map(|((a, b), owners)| format!("({a},{b}) in triples {owners:?}"))
                .collect();
            parts.push(format!(
                "{} duplicated directed edges: {}",
                self.duplicated_edges.len(),
                shown.join(", ")
            ));
        }
        parts.join("; ")
    }
}

/// A permutation of the points, read left to right as a total order.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sequencing {
    order: Vec<Point>,
}

impl Sequencing {
    pub fn new(order: Vec<Point>) -> Result<Self> {
        let v = order.len();
        check_permutation(v, &order)?;
        Ok(Sequencing { order })
    }

    pub fn identity(v: usize) -> Self {
        Sequencing { order: (0..v).collect() }
    }

    pub fn v(&self) -> usize {
        self.order.len()
    }

    /// The point at each position.
    pub fn order(&self) -> &[Point] {
        &self.order
    }

    /// Position of each point: `positions()[p]` is where `p` sits.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0usize; self.order.len()];
        for (i, &p) in self.order.iter().enumerate() {
            pos[p] = i;
        }
        pos
    }
}

impl fmt::Debug for Sequencing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

impl fmt::Display for Sequencing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.order.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn check_permutation(v: usize, perm: &[Point]) -> Result<()> {
    if perm.len() != v {
        return Err(Error::NotAPermutation { v, len: perm.len() });
    }
    let mut seen = vec![false; v];
    for &p in perm {
        if p >= v || seen[p] {
            return Err(Error::NotAPermutation { v, len: perm.len() });
        }
        seen[p] = true;
    }
    Ok(())
}

/// True iff no `l` consecutive positions of `seq` contain a triple of `dts`
/// in forward order.
///
/// A triple `(x, y, z)` is contained in `l` consecutive points when all
/// three fall inside some window of `l` positions and `x < y < z` in the
/// sequencing order. Positions are precomputed so each triple is checked in
/// constant time; the result matches the all-windows scan exactly.
pub fn is_l_good(dts: &Dts, seq: &Sequencing, l: usize) -> Result<bool> {
    if l < 3 || l > dts.v() {
        return Err(Error::WindowOutOfRange { v: dts.v(), l });
    }
    if seq.v() != dts.v() {
        return Err(Error::NotAPermutation { v: dts.v(), len: seq.v() });
    }
    Ok(triples_l_good(dts.triples(), seq, l))
}

/// Window check over a bare triple list (partial designs included).
pub fn triples_l_good(triples: &[Triple], seq: &Sequencing, l: usize) -> bool {
    let pos = seq.positions();
    triples.iter().all(|t| {
        let (pa, pb, pc) = (pos[t.first], pos[t.mid], pos[t.last]);
        !(pa < pb && pb < pc && pc - pa < l)
    })
}

/// A twofold triple system: unordered 3-subsets covering every unordered
/// pair exactly twice. Blocks are stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tts {
    v: usize,
    blocks: Vec<[Point; 3]>,
}

impl Tts {
    pub fn new(v: usize, blocks: Vec<[Point; 3]>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            b.sort_unstable();
            if b[0] == b[1] || b[1] == b[2] {
                return Err(Error::InvalidTts(format!("repeated point in block {b:?}")));
            }
            if b[2] >= v {
                return Err(Error::PointOutOfRange { v, point: b[2] });
            }
            sorted.push(b);
        }
        Ok(Tts { v, blocks: sorted })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[[Point; 3]] {
        &self.blocks
    }

    /// Check pair coverage: every unordered pair in exactly two blocks.
    pub fn validate(&self) -> Result<()> {
        let v = self.v;
        let mut count = vec![0u32; v * v];
        for b in &self.blocks {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                count[b[i] * v + b[j]] += 1;
            }
        }
        for a in 0..v {
            for b in a + 1..v {
                if count[a * v + b] != 2 {
                    return Err(Error::InvalidTts(format!(
                        "pair ({a},{b}) covered {} times, want 2",
                        count[a * v + b]
                    )));
                }
            }
        }
        if self.blocks.len() != v * (v - 1) / 3 {
            return Err(Error::InvalidTts(format!(
                "{} blocks where {} are required",
                self.blocks.len(),
                v * (v - 1) / 3
            )));
        }
        Ok(())
    }
}
