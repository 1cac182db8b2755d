//! Recursive constructions.
//!
//! Two sequencing-preserving doublings (`v -> 2v+1` via a constant-diagonal
//! latin square and `v -> 2v+4` via difference classes), composition along a
//! pairwise balanced design, and the drivers: a sequenceable DTS(v) for
//! every admissible order, and a DTS(v) with no v-good sequencing for every
//! admissible order >= 7. Both doublings keep the input triples verbatim,
//! so subdesigns (and with them non-sequenceability) survive doubling; the
//! bad driver just carries its embedding certificate through unchanged.
//!
//! Every constructed design is validated before it is returned.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::design::{admissible, is_l_good, Dts, Point, Sequencing, Triple};
use crate::error::{Error, Result};

/// An n x n latin square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<usize>,
}

impl LatinSquare {
    /// The cyclic square `L[i][j] = (j - i) mod n`: constant diagonal 0,
    /// and 0 appears nowhere off the diagonal.
    pub fn constant_diagonal(n: usize) -> Self {
        assert!(n >= 1);
        let cells = (0..n)
            .flat_map(|i| (0..n).map(move |j| (j + n - i) % n))
            .collect();
        LatinSquare { n, cells }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.n + j]
    }

    pub fn is_latin(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.fill(false);
            for j in 0..n {
                let s = self.get(i, j);
                if s >= n || seen[s] {
                    return false;
                }
                seen[s] = true;
            }
        }
        for j in 0..n {
            seen.fill(false);
            for i in 0..n {
                let s = self.get(i, j);
                if seen[s] {
                    return false;
                }
                seen[s] = true;
            }
        }
        true
    }

    pub fn has_constant_diagonal(&self) -> bool {
        (1..self.n).all(|i| self.get(i, i) == self.get(0, 0))
    }
}

fn verify_good(dts: &Dts, seq: &Sequencing, what: &str) -> Result<()> {
    let report = dts.validate();
    if !report.valid() {
        return Err(Error::Construction(format!("{what}: {}", report.summary())));
    }
    if !is_l_good(dts, seq, dts.v())? {
        return Err(Error::Construction(format!(
            "{what}: sequencing is not {}-good",
            dts.v()
        )));
    }
    Ok(())
}

/// The order-doubling `v -> 2v+1` common to both drivers: new points
/// `v..=2v` index a constant-diagonal latin square of order `v+1`, and cell
/// `(i, j)` (off-diagonal symbol `k` in `1..=v`) contributes the triple
/// `(y_i, order[k-1], y_j)`. Any bijection `order` of the old points gives
/// a valid design containing the input triples verbatim.
fn double_plus_one_raw(dts: &Dts, order: &[Point]) -> Dts {
    let v = dts.v();
    let square = LatinSquare::constant_diagonal(v + 1);
    let mut triples = dts.triples().to_vec();
    for i in 0..=v {
        for j in 0..=v {
            if i == j {
                continue;
            }
            let k = square.get(i, j);
            debug_assert!(k >= 1);
            let t = Triple { first: v + i, mid: order[k - 1], last: v + j };
            triples.push(t);
        }
    }
    Dts::new(2 * v + 1, triples).expect("doubling stays in range")
}

/// Double a sequenceable design: `DTS(v)` with a v-good sequencing gives a
/// `DTS(2v+1)` with a (2v+1)-good sequencing (the input sequencing followed
/// by the new points in ascending order). Each new triple has its middle
/// point among the old ones, so it can never appear in forward order.
pub fn double_plus_one(dts: &Dts, seq: &Sequencing) -> Result<(Dts, Sequencing)> {
    verify_good(dts, seq, "double_plus_one input")?;
    let v = dts.v();
    let out = double_plus_one_raw(dts, seq.order());
    let mut order = seq.order().to_vec();
    order.extend(v..=2 * v);
    let out_seq = Sequencing::new(order).expect("permutation by construction");
    verify_good(&out, &out_seq, "double_plus_one output")?;
    debug_assert_eq!(out.triples().len(), (v + 1) * v + v * (v - 1) / 3);
    Ok((out, out_seq))
}

/// The order-doubling `v -> 2v+4`: new points form `Z_{v+4}`; difference
/// class `i` (pairs `(a, b)` with `b - a = i mod v+4`, `1 <= i <= v`) gives
/// triples `(a, order[i-1], b)`, and the remaining differences are covered
/// by `(i, v+2+i, v+1+i) mod v+4`.
fn double_plus_four_raw(dts: &Dts, order: &[Point]) -> Dts {
    let v = dts.v();
    let m = v + 4;
    let y = |p: usize| v + p;
    let mut triples = dts.triples().to_vec();
    for i in 1..=v {
        for a in 0..m {
            let b = (a + i) % m;
            triples.push(Triple { first: y(a), mid: order[i - 1], last: y(b) });
        }
    }
    for i in 0..m {
        triples.push(Triple {
            first: y(i),
            mid: y((i + v + 2) % m),
            last: y((i + v + 1) % m),
        });
    }
    Dts::new(2 * v + 4, triples).expect("doubling stays in range")
}

/// Double a sequenceable design into a `DTS(2v+4)` with a (2v+4)-good
/// sequencing (input sequencing, then the new points in natural order).
pub fn double_plus_four(dts: &Dts, seq: &Sequencing) -> Result<(Dts, Sequencing)> {
    verify_good(dts, seq, "double_plus_four input")?;
    let v = dts.v();
    let out = double_plus_four_raw(dts, seq.order());
    let mut order = seq.order().to_vec();
    order.extend(v..2 * v + 4);
    let out_seq = Sequencing::new(order).expect("permutation by construction");
    verify_good(&out, &out_seq, "double_plus_four output")?;
    debug_assert_eq!(out.triples().len(), v * (v + 4) + (v + 4) + v * (v - 1) / 3);
    Ok((out, out_seq))
}

/// A pairwise balanced design: every unordered pair of points in exactly
/// one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pbd {
    v: usize,
    blocks: Vec<Vec<Point>>,
}

impl Pbd {
    pub fn new(v: usize, blocks: Vec<Vec<Point>>) -> Result<Self> {
        let mut pair = vec![false; v * v];
        for block in &blocks {
            if block.len() < 2 {
                return Err(Error::InvalidPbd(format!("block {block:?} too small")));
            }
            for (i, &a) in block.iter().enumerate() {
                if a >= v {
                    return Err(Error::PointOutOfRange { v, point: a });
                }
                for &b in &block[i + 1..] {
                    if a == b {
                        return Err(Error::InvalidPbd(format!(
                            "repeated point {a} in block {block:?}"
                        )));
                    }
                    let (x, y) = (a.min(b), a.max(b));
                    if pair[x * v + y] {
                        return Err(Error::InvalidPbd(format!(
                            "pair ({x},{y}) covered twice"
                        )));
                    }
                    pair[x * v + y] = true;
                }
            }
        }
        for x in 0..v {
            for y in x + 1..v {
                if !pair[x * v + y] {
                    return Err(Error::InvalidPbd(format!("pair ({x},{y}) uncovered")));
                }
            }
        }
        Ok(Pbd { v, blocks })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[Vec<Point>] {
        &self.blocks
    }

    /// The trivial single-block design.
    pub fn single_block(v: usize) -> Self {
        Pbd { v, blocks: vec![(0..v).collect()] }
    }

    /// The affine plane of order 3: 9 points, 12 blocks of size 3.
    /// Point `(x, y)` of `Z3 x Z3` is index `3x + y`.
    pub fn ag23() -> Self {
        let mut blocks = Vec::new();
        for c in 0..3 {
            blocks.push(vec![3 * c, 3 * c + 1, 3 * c + 2]);
        }
        for m in 0..3 {
            for c in 0..3 {
                blocks.push((0..3).map(|x| 3 * x + (m * x + c) % 3).collect());
            }
        }
        Pbd::new(9, blocks).expect("affine plane")
    }

    /// 15 points with one block of size 7 (`0..7`) and 28 blocks of size 3:
    /// the pairs of the 8 new points are split into 7 perfect matchings by
    /// the round-robin construction, and matching `m` pairs with old point
    /// `m`.
    pub fn fifteen_with_block_of_seven() -> Self {
        let mut blocks: Vec<Vec<Point>> = vec![(0..7).collect()];
        // round-robin one-factorization of K8 on points {0..7}, shifted by 7
        for m in 0..7 {
            blocks.push(vec![m, 7 + 7, 7 + m]);
            for k in 1..4 {
                let a = (m + k) % 7;
                let b = (m + 7 - k) % 7;
                blocks.push(vec![m, 7 + a, 7 + b]);
            }
        }
        Pbd::new(15, blocks).expect("one-factorization of K8")
    }
}

/// A filler: a design together with a verified good sequencing of it.
#[derive(Clone, Debug)]
pub struct Filler {
    pub dts: Dts,
    pub seq: Sequencing,
}

impl Filler {
    pub fn new(dts: Dts, seq: Sequencing) -> Result<Self> {
        let report = dts.validate();
        if !report.valid() {
            return Err(Error::InvalidDesign(report.summary()));
        }
        if !is_l_good(&dts, &seq, dts.v())? {
            return Err(Error::SequencingNotGood { l: dts.v() });
        }
        Ok(Filler { dts, seq })
    }

    /// Fillers for the given block sizes, built with [`build_sequenceable`].
    pub fn defaults(sizes: impl IntoIterator<Item = usize>) -> Result<BTreeMap<usize, Filler>> {
        let mut out = BTreeMap::new();
        for size in sizes {
            if let std::collections::btree_map::Entry::Vacant(e) = out.entry(size) {
                let (dts, seq) = build_sequenceable(size)?;
                e.insert(Filler { dts, seq });
            }
        }
        Ok(out)
    }
}

/// Relabel `filler` so its good sequencing lands on `block` in ascending
/// order; the filled block then contributes no forward-ordered triple to
/// the ascending order of the host.
fn fill_block(filler: &Filler, block: &[Point]) -> Vec<Triple> {
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    let mut perm = vec![0usize; filler.dts.v()];
    for (i, &p) in filler.seq.order().iter().enumerate() {
        perm[p] = sorted[i];
    }
    filler
        .dts
        .triples()
        .iter()
        .map(|t| Triple {
            first: perm[t.first],
            mid: perm[t.mid],
            last: perm[t.last],
        })
        .collect()
}

/// Compose a DTS(v) from a pairwise balanced design by filling every block
/// with a relabeled copy of a good-sequenced filler of matching size. The
/// identity order `[0 1 .. v-1]` is a v-good sequencing of the result.
pub fn compose_pbd(pbd: &Pbd, fillers: &BTreeMap<usize, Filler>) -> Result<(Dts, Sequencing)> {
    let mut triples = Vec::new();
    for block in pbd.blocks() {
        let filler = fillers.get(&block.len()).ok_or_else(|| Error::MissingFiller {
            size: block.len(),
            block: block.clone(),
        })?;
        triples.extend(fill_block(filler, block));
    }
    let dts = Dts::new(pbd.v(), triples)?.checked()?;
    let seq = Sequencing::identity(pbd.v());
    if !is_l_good(&dts, &seq, dts.v())? {
        return Err(Error::Construction(
            "composed design lost the identity sequencing".into(),
        ));
    }
    Ok((dts, seq))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    /// The embedded pattern is the twelve-triple gadget.
    Gadget,
    /// The embedded pattern is a whole unsequenceable seed design.
    SeedSubdesign,
}

/// Witness that `pattern` embeds in a host design: `injection` maps pattern
/// points to host points and every mapped triple appears verbatim.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    pub kind: CertificateKind,
    pub injection: Vec<Point>,
    pub pattern: Vec<Triple>,
}

impl EmbeddingCertificate {
    pub fn verify(&self, host: &Dts) -> bool {
        verify_embedding(host, &self.pattern, &self.injection)
    }
}

/// True iff `injection` is injective into the host points and every pattern
/// triple maps to a triple present verbatim in the host.
pub fn verify_embedding(host: &Dts, pattern: &[Triple], injection: &[Point]) -> bool {
    let mut seen = vec![false; host.v()];
    for &p in injection {
        if p >= host.v() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    let host_set = host.triple_set();
    pattern.iter().all(|t| {
        let image = match (
            injection.get(t.first),
            injection.get(t.mid),
            injection.get(t.last),
        ) {
            (Some(&a), Some(&b), Some(&c)) => (a, b, c),
            _ => return false,
        };
        host_set.contains(&image)
    })
}

/// Fill one block with a (non-sequenceable) design instead of a good
/// filler. The result is a valid DTS(v) containing `bad` as a subdesign,
/// recorded by the returned certificate; non-sequenceability lifts from the
/// subdesign to the host.
pub fn compose_pbd_with_bad_block(
    pbd: &Pbd,
    fillers: &BTreeMap<usize, Filler>,
    bad_block: usize,
    bad: &Dts,
) -> Result<(Dts, EmbeddingCertificate)> {
    let blocks = pbd.blocks();
    if bad_block >= blocks.len() {
        return Err(Error::BadBlockIndex { index: bad_block, count: blocks.len() });
    }
    let block = &blocks[bad_block];
    if block.len() != bad.v() {
        return Err(Error::BadBlockSize { block: block.len(), design: bad.v() });
    }
    let bad_report = bad.validate();
    if !bad_report.valid() {
        return Err(Error::InvalidDesign(bad_report.summary()));
    }

    let mut sorted = block.clone();
    sorted.sort_unstable();
    let mut triples: Vec<Triple> = bad
        .triples()
        .iter()
        .map(|t| Triple {
            first: sorted[t.first],
            mid: sorted[t.mid],
            last: sorted[t.last],
        })
        .collect();
    for (i, other) in blocks.iter().enumerate() {
        if i == bad_block {
            continue;
        }
        let filler = fillers.get(&other.len()).ok_or_else(|| Error::MissingFiller {
            size: other.len(),
            block: other.clone(),
        })?;
        triples.extend(fill_block(filler, other));
    }
    let dts = Dts::new(pbd.v(), triples)?.checked()?;
    let cert = EmbeddingCertificate {
        kind: CertificateKind::SeedSubdesign,
        injection: sorted,
        pattern: bad.triples().to_vec(),
    };
    debug_assert!(cert.verify(&dts));
    Ok((dts, cert))
}

/// A DTS(v) with a verified v-good sequencing, for every admissible order.
///
/// Orders 3, 4 and 6 come from the catalog; odd `v` recurses on
/// `k = (v-1)/2` and doubles with [`double_plus_one`], even `v` recurses on
/// `k = (v-4)/2` and doubles with [`double_plus_four`]. Both `k` are again
/// admissible, so the recursion terminates at a base case.
pub fn build_sequenceable(v: usize) -> Result<(Dts, Sequencing)> {
    if !admissible(v) {
        return Err(Error::InadmissibleOrder { v });
    }
    let base = match v {
        3 => Some("DTS3"),
        4 => Some("DTS4"),
        6 => Some("DTS6"),
        _ => None,
    };
    if let Some(name) = base {
        let entry = catalog::builtin(name)?;
        let dts = entry.dts.clone();
        let seq = entry.seq.clone().expect("base designs carry sequencings");
        verify_good(&dts, &seq, name)?;
        return Ok((dts, seq));
    }
    if v % 2 == 1 {
        let (d, s) = build_sequenceable((v - 1) / 2)?;
        double_plus_one(&d, &s)
    } else {
        let (d, s) = build_sequenceable((v - 4) / 2)?;
        double_plus_four(&d, &s)
    }
}

const BAD_SEEDS: [usize; 7] = [7, 9, 10, 12, 13, 16, 18];

/// A DTS(v) with no v-good sequencing, for every admissible `v >= 7`,
/// together with a certificate locating a known-bad subdesign.
///
/// Seed orders return catalog designs; other orders recurse exactly like
/// [`build_sequenceable`] and double with an arbitrary point order (the
/// identity), which keeps the embedded triples and hence the certificate
/// intact.
pub fn build_unsequenceable(v: usize) -> Result<(Dts, EmbeddingCertificate)> {
    if matches!(v, 3 | 4 | 6) {
        return Err(Error::AlwaysSequenceable { v });
    }
    if !admissible(v) || v < 7 {
        return Err(Error::InadmissibleOrder { v });
    }
    if BAD_SEEDS.contains(&v) {
        let (dts, cert) = if v == 7 {
            let dts = catalog::design("D7.4.926")?.clone();
            let cert = EmbeddingCertificate {
                kind: CertificateKind::SeedSubdesign,
                injection: (0..7).collect(),
                pattern: dts.triples().to_vec(),
            };
            (dts, cert)
        } else {
            let dts = catalog::design(&format!("EX-DTS{v}"))?.clone();
            let cert = EmbeddingCertificate {
                kind: CertificateKind::Gadget,
                injection: (0..9).collect(),
                pattern: catalog::gadget().to_vec(),
            };
            (dts, cert)
        };
        debug_assert!(cert.verify(&dts));
        return Ok((dts, cert));
    }
    let k = if v % 2 == 1 { (v - 1) / 2 } else { (v - 4) / 2 };
    let (inner, cert) = build_unsequenceable(k)?;
    let identity: Vec<Point> = (0..k).collect();
    let doubled = if v % 2 == 1 {
        double_plus_one_raw(&inner, &identity)
    } else {
        double_plus_four_raw(&inner, &identity)
    };
    let doubled = doubled.checked().map_err(|e| {
        Error::Construction(format!("doubling {k} -> {v}: {e}"))
    })?;
    if !cert.verify(&doubled) {
        return Err(Error::Construction(format!(
            "doubling {k} -> {v} lost the embedded subdesign"
        )));
    }
    Ok((doubled, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::prover::{decide_dts, ProverVerdict};

    #[test]
    fn latin_square_shapes() {
        let l4 = LatinSquare::constant_diagonal(4);
        assert!(l4.is_latin());
        assert!(l4.has_constant_diagonal());
        assert_eq!((0..4).map(|j| l4.get(0, j)).collect::<Vec<_>>(), [0, 1, 2, 3]);
        for i in 0..4 {
            assert_eq!(l4.get(i, i), 0);
        }

        let l1 = LatinSquare::constant_diagonal(1);
        assert_eq!(l1.get(0, 0), 0);

        let l6 = LatinSquare::constant_diagonal(6);
        assert!(l6.is_latin());
        assert!(l6.has_constant_diagonal());
    }

    #[test]
    fn doubling_dts3_both_ways() {
        let base = catalog::builtin("DTS3").unwrap();
        let seq = base.seq.clone().unwrap();

        let (d7, s7) = double_plus_one(&base.dts, &seq).unwrap();
        assert_eq!(d7.v(), 7);
        assert_eq!(d7.triples().len(), 14);
        assert!(d7.is_valid());
        assert!(is_l_good(&d7, &s7, 7).unwrap());

        let (d10, s10) = double_plus_four(&base.dts, &seq).unwrap();
        assert_eq!(d10.v(), 10);
        assert_eq!(d10.triples().len(), 30);
        assert!(is_l_good(&d10, &s10, 10).unwrap());
    }

    #[test]
    fn doubling_d4_1_and_dts6() {
        let e = catalog::builtin("D4.1").unwrap();
        let (d9, s9) = double_plus_one(&e.dts, e.seq.as_ref().unwrap()).unwrap();
        assert_eq!(d9.v(), 9);
        assert!(is_l_good(&d9, &s9, 9).unwrap());

        let e = catalog::builtin("DTS6").unwrap();
        let (d16, s16) = double_plus_four(&e.dts, e.seq.as_ref().unwrap()).unwrap();
        assert_eq!(d16.v(), 16);
        assert!(is_l_good(&d16, &s16, 16).unwrap());
    }

    #[test]
    fn doubling_rejects_a_bad_sequencing() {
        let d = catalog::design("DTS3").unwrap();
        let bad = Sequencing::new(vec![0, 1, 2]).unwrap(); // contains (0,1,2)
        assert!(matches!(
            double_plus_one(d, &bad),
            Err(Error::Construction(_))
        ));
    }

    #[test]
    fn doublings_preserve_marked_subsets() {
        let (d, s) = build_sequenceable(7).unwrap();
        let marked: Vec<Triple> = d.triples()[..5].to_vec();
        let (up1, _) = double_plus_one(&d, &s).unwrap();
        let (up4, _) = double_plus_four(&d, &s).unwrap();
        for t in &marked {
            assert!(up1.contains_triple(t));
            assert!(up4.contains_triple(t));
        }
    }

    #[test]
    fn compose_single_block_is_the_filler() {
        let fillers = Filler::defaults([3]).unwrap();
        let (d, seq) = compose_pbd(&Pbd::single_block(3), &fillers).unwrap();
        assert!(d.is_valid());
        assert_eq!(seq.order(), &[0, 1, 2]);
        assert_eq!(d.triples().len(), 2);
    }

    #[test]
    fn compose_affine_plane_gives_dts9() {
        let fillers = Filler::defaults([3]).unwrap();
        let pbd = Pbd::ag23();
        assert_eq!(pbd.blocks().len(), 12);
        let (d, seq) = compose_pbd(&pbd, &fillers).unwrap();
        assert_eq!(d.v(), 9);
        assert!(d.is_valid());
        assert!(is_l_good(&d, &seq, 9).unwrap());
    }

    #[test]
    fn compose_reports_missing_fillers() {
        let fillers = BTreeMap::new();
        assert!(matches!(
            compose_pbd(&Pbd::single_block(3), &fillers),
            Err(Error::MissingFiller { size: 3, .. })
        ));
    }

    #[test]
    fn bad_block_composition_single_block() {
        let bad = catalog::design("D7.4.926").unwrap();
        let (d, cert) =
            compose_pbd_with_bad_block(&Pbd::single_block(7), &BTreeMap::new(), 0, bad).unwrap();
        assert_eq!(d.triple_set(), bad.triple_set());
        assert_eq!(cert.injection, (0..7).collect::<Vec<_>>());
        assert!(cert.verify(&d));
    }

    #[test]
    fn bad_block_composition_on_fifteen_points() {
        let pbd = Pbd::fifteen_with_block_of_seven();
        assert_eq!(pbd.blocks()[0].len(), 7);
        let fillers = Filler::defaults([3]).unwrap();
        let bad = catalog::design("D7.4.926").unwrap();
        let (d, cert) = compose_pbd_with_bad_block(&pbd, &fillers, 0, bad).unwrap();
        assert_eq!(d.v(), 15);
        assert!(d.is_valid());
        assert!(cert.verify(&d));
        match decide_dts(&d, &Budget::nodes(1_000_000)) {
            ProverVerdict::Unsequenceable(_) => {}
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn builtin_pbds_are_valid() {
        Pbd::ag23();
        Pbd::fifteen_with_block_of_seven();
        Pbd::single_block(5);
    }

    #[test]
    fn build_sequenceable_bases_and_errors() {
        let (d6, _) = build_sequenceable(6).unwrap();
        assert_eq!(d6.triple_set(), catalog::design("DTS6").unwrap().triple_set());
        assert!(matches!(
            build_sequenceable(5),
            Err(Error::InadmissibleOrder { v: 5 })
        ));
    }

    #[test]
    fn build_sequenceable_small_sweep() {
        for v in 3..=60 {
            if !admissible(v) {
                continue;
            }
            let (d, s) = build_sequenceable(v).unwrap();
            assert!(d.is_valid(), "v={v}");
            assert!(is_l_good(&d, &s, v).unwrap(), "v={v}");
        }
    }

    #[test]
    fn build_sequenceable_100() {
        let (d, s) = build_sequenceable(100).unwrap();
        assert_eq!(d.triples().len(), 3300);
        assert!(is_l_good(&d, &s, 100).unwrap());
    }

    #[test]
    fn build_unsequenceable_seeds_and_recursion() {
        let (d7, c7) = build_unsequenceable(7).unwrap();
        assert_eq!(d7.triple_set(), catalog::design("D7.4.926").unwrap().triple_set());
        assert_eq!(c7.kind, CertificateKind::SeedSubdesign);
        assert!(c7.verify(&d7));

        let (d9, c9) = build_unsequenceable(9).unwrap();
        assert_eq!(d9.triple_set(), catalog::design("EX-DTS9").unwrap().triple_set());
        assert_eq!(c9.kind, CertificateKind::Gadget);
        assert_eq!(c9.pattern.len(), 12);
        assert!(c9.verify(&d9));

        // 34 = 2*15 + 4 and 15 = 2*7 + 1: the certificate still points at
        // the order-7 seed
        let (d34, c34) = build_unsequenceable(34).unwrap();
        assert_eq!(d34.v(), 34);
        assert!(d34.is_valid());
        assert_eq!(c34.pattern.len(), 14);
        assert!(c34.verify(&d34));
    }

    #[test]
    fn build_unsequenceable_rejects_small_orders() {
        for v in [3, 4, 6] {
            assert!(matches!(
                build_unsequenceable(v),
                Err(Error::AlwaysSequenceable { .. })
            ));
        }
        assert!(matches!(
            build_unsequenceable(8),
            Err(Error::InadmissibleOrder { v: 8 })
        ));
    }

    #[test]
    fn embedding_checks() {
        let host = catalog::design("EX-DTS9").unwrap();
        let g = catalog::gadget();
        let id: Vec<usize> = (0..9).collect();
        assert!(verify_embedding(host, g, &id));

        // nine points cannot inject into seven
        let d7 = catalog::design("D7.4.926").unwrap();
        let squashed: Vec<usize> = (0..9).map(|p| p % 7).collect();
        assert!(!verify_embedding(d7, g, &squashed));

        let one = [Triple::new(0, 4, 2).unwrap()];
        assert!(verify_embedding(d7, &one, &(0..7).collect::<Vec<_>>()));
    }

    #[test]
    fn doubling_triple_count_identities() {
        for v in [3usize, 4, 6, 7, 9, 10] {
            let (d, s) = build_sequenceable(v).unwrap();
            let (up1, _) = double_plus_one(&d, &s).unwrap();
            assert_eq!(up1.triples().len(), (2 * v + 1) * (2 * v) / 3, "2v+1 from {v}");
            let (up4, _) = double_plus_four(&d, &s).unwrap();
            assert_eq!(
                up4.triples().len(),
                (2 * v + 4) * (2 * v + 3) / 3,
                "2v+4 from {v}"
            );
        }
    }
}
