//! Directing enumeration, canonical forms and the sequenceability census.
//!
//! Every block of a twofold triple system can be ordered in six ways; a
//! directing is a choice of ordering per block whose directed edges form an
//! exact cover. The stream enumerates block-by-block with pruning on edge
//! clashes, so it is complete and duplicate-free. Isomorphs are rejected by
//! a canonical form: the minimum over all relabelings of the sorted triple
//! list, computed by brute force (the census only needs tiny orders).

use std::collections::BTreeMap;
use std::fmt;

use crate::budget::Budget;
use crate::design::{Dts, Triple, Tts};
use crate::error::{Error, Result};
use crate::prover::{decide_dts, ProverVerdict};
use crate::search::{max_good_l, MaxGoodL};

/// Canonical forms are computed by exhausting all `v!` relabelings.
pub const MAX_CANONICAL_ORDER: usize = 9;

/// Relabeling-invariant identifier of an isomorphism class: three bytes per
/// triple, triples sorted, minimized over all point relabelings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.hex())
    }
}

fn encode(triples: &[Triple], perm: &[usize], out: &mut Vec<u32>) {
    out.clear();
    out.extend(triples.iter().map(|t| {
        ((perm[t.first] as u32) << 16) | ((perm[t.mid] as u32) << 8) | perm[t.last] as u32
    }));
    out.sort_unstable();
}

pub fn canonical_form(dts: &Dts) -> Result<CanonicalForm> {
    canonical_form_of(dts.v(), dts.triples())
}

pub fn canonical_form_of(v: usize, triples: &[Triple]) -> Result<CanonicalForm> {
    if v > MAX_CANONICAL_ORDER {
        return Err(Error::UnsupportedOrder { v, max: MAX_CANONICAL_ORDER });
    }
    let mut perm: Vec<usize> = (0..v).collect();
    let mut best: Option<Vec<u32>> = None;
    let mut scratch = Vec::with_capacity(triples.len());
    permute(&mut perm, 0, &mut |perm| {
        encode(triples, perm, &mut scratch);
        match &best {
            Some(b) if *b <= scratch => {}
            _ => best = Some(scratch.clone()),
        }
    });
    let best = best.expect("at least the identity relabeling");
    let mut bytes = Vec::with_capacity(3 * best.len());
    for code in best {
        bytes.push((code >> 16) as u8);
        bytes.push((code >> 8) as u8);
        bytes.push(code as u8);
    }
    Ok(CanonicalForm(bytes))
}

fn permute(perm: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// The six orderings of a block, lexicographically.
fn orderings(block: [usize; 3]) -> [Triple; 6] {
    let [a, b, c] = block;
    [
        Triple { first: a, mid: b, last: c },
        Triple { first: a, mid: c, last: b },
        Triple { first: b, mid: a, last: c },
        Triple { first: b, mid: c, last: a },
        Triple { first: c, mid: a, last: b },
        Triple { first: c, mid: b, last: a },
    ]
}

fn visit_directings(tts: &Tts, f: &mut impl FnMut(&[Triple])) {
    let v = tts.v();
    let blocks = tts.blocks();
    let mut owned = vec![false; v * v];
    let mut chosen: Vec<Triple> = Vec::with_capacity(blocks.len());

    fn rec(
        blocks: &[[usize; 3]],
        i: usize,
        v: usize,
        owned: &mut [bool],
        chosen: &mut Vec<Triple>,
        f: &mut impl FnMut(&[Triple]),
    ) {
        if i == blocks.len() {
            f(chosen);
            return;
        }
        for t in orderings(blocks[i]) {
            let es = t.edges();
            if es.iter().any(|&(a, b)| owned[a * v + b]) {
                continue;
            }
            for &(a, b) in &es {
                owned[a * v + b] = true;
            }
            chosen.push(t);
            rec(blocks, i + 1, v, owned, chosen, f);
            chosen.pop();
            for &(a, b) in &es {
                owned[a * v + b] = false;
            }
        }
    }
    rec(blocks, 0, v, &mut owned, &mut chosen, f);
}

/// All directings of `tts` whose edges form an exact cover, block-by-block
/// in a fixed order. Every valid design over this system appears exactly
/// once.
pub fn all_directings(tts: &Tts) -> Result<Vec<Dts>> {
    tts.validate()?;
    let mut out = Vec::new();
    visit_directings(tts, &mut |triples| {
        let d = Dts::new(tts.v(), triples.to_vec()).expect("directings stay in range");
        debug_assert!(d.is_valid());
        out.push(d);
    });
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ExceptionalClass {
    pub canonical: CanonicalForm,
    pub max_good_l: usize,
    pub representative: Dts,
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub total_directings: u64,
    pub nonisomorphic: usize,
    pub with_v_good: usize,
    pub exceptional: Vec<ExceptionalClass>,
    /// False when the budget ran out; counts are then partial.
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Applied to each per-class sequenceability decision.
    pub budget: Budget,
    pub workers: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { budget: Budget::nodes(1_000_000), workers: 1 }
    }
}

/// Direct the blocks in all ways, reject isomorphs, and decide v-good
/// sequenceability per class; non-sequenceable classes report their largest
/// good window. The representative of each class is the directing with the
/// smallest triple encoding, so the report is independent of worker
/// scheduling.
pub fn classify_directings(tts: &Tts, options: &CensusOptions) -> Result<CensusReport> {
    tts.validate()?;
    let v = tts.v();
    let mut directings: Vec<Vec<Triple>> = Vec::new();
    visit_directings(tts, &mut |triples| directings.push(triples.to_vec()));
    let total_directings = directings.len() as u64;

    let canon_one = |triples: &Vec<Triple>| -> Result<(CanonicalForm, Vec<Triple>)> {
        Ok((canonical_form_of(v, triples)?, triples.clone()))
    };
    let canonized: Vec<(CanonicalForm, Vec<Triple>)> = if options.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.workers)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?;
        pool.install(|| {
            use rayon::prelude::*;
            directings.par_iter().map(canon_one).collect::<Result<Vec<_>>>()
        })?
    } else {
        directings.iter().map(canon_one).collect::<Result<Vec<_>>>()?
    };

    let mut classes: BTreeMap<CanonicalForm, Vec<Triple>> = BTreeMap::new();
    for (canon, triples) in canonized {
        classes
            .entry(canon)
            .and_modify(|best| {
                if triples < *best {
                    *best = triples.clone();
                }
            })
            .or_insert(triples);
    }
    let nonisomorphic = classes.len();

    let classes: Vec<(CanonicalForm, Dts)> = classes
        .into_iter()
        .map(|(c, triples)| (c, Dts::new(v, triples).expect("in range")))
        .collect();

    enum ClassOutcome {
        Sequenceable,
        Exceptional(ExceptionalClass),
        /// Budget ran out before the class was decided.
        Undecided,
    }

    let decide_one = |(canon, rep): &(CanonicalForm, Dts)| -> ClassOutcome {
        match decide_dts(rep, &options.budget) {
            ProverVerdict::Sequenceable(_) => ClassOutcome::Sequenceable,
            ProverVerdict::Unsequenceable(_) => {
                let max = match max_good_l(rep, &options.budget) {
                    Ok(MaxGoodL::Exact { l, .. }) | Ok(MaxGoodL::LowerBound { l, .. }) => l,
                    _ => 0,
                };
                ClassOutcome::Exceptional(ExceptionalClass {
                    canonical: canon.clone(),
                    max_good_l: max,
                    representative: rep.clone(),
                })
            }
            ProverVerdict::Unknown { .. } => ClassOutcome::Undecided,
        }
    };

    let decisions: Vec<ClassOutcome> = if options.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.workers)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?;
        pool.install(|| {
            use rayon::prelude::*;
            classes.par_iter().map(decide_one).collect()
        })
    } else {
        classes.iter().map(decide_one).collect()
    };

    let mut exceptional = Vec::new();
    let mut complete = true;
    let mut undecided = 0usize;
    for d in decisions {
        match d {
            ClassOutcome::Exceptional(e) => exceptional.push(e),
            ClassOutcome::Sequenceable => {}
            ClassOutcome::Undecided => {
                complete = false;
                undecided += 1;
            }
        }
    }
    exceptional.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    let with_v_good = nonisomorphic - exceptional.len() - undecided;
    Ok(CensusReport {
        total_directings,
        nonisomorphic,
        with_v_good,
        exceptional,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    /// Oracle: try all 6^b ordering combinations and keep the exact covers.
    fn naive_directings(tts: &Tts) -> Vec<Vec<Triple>> {
        let blocks = tts.blocks();
        let b = blocks.len();
        let mut out = Vec::new();
        let mut idx = vec![0usize; b];
        loop {
            let cand: Vec<Triple> = idx
                .iter()
                .zip(blocks)
                .map(|(&i, &blk)| orderings(blk)[i])
                .collect();
            if Dts::new(tts.v(), cand.clone()).unwrap().is_valid() {
                out.push(cand);
            }
            let mut k = 0;
            loop {
                if k == b {
                    return out;
                }
                idx[k] += 1;
                if idx[k] < 6 {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    fn tts3() -> Tts {
        Tts::new(3, vec![[0, 1, 2], [0, 1, 2]]).unwrap()
    }

    fn tts4() -> Tts {
        Tts::new(4, vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    #[test]
    fn tts3_has_six_directings_matching_the_oracle() {
        let got = all_directings(&tts3()).unwrap();
        assert_eq!(got.len(), 6);
        let want = naive_directings(&tts3());
        let got_sets: Vec<_> = got.iter().map(|d| d.triple_set()).collect();
        let want_sets: Vec<_> = want
            .iter()
            .map(|t| Dts::new(3, t.clone()).unwrap().triple_set())
            .collect();
        assert_eq!(got_sets, want_sets);
    }

    #[test]
    fn tts4_directings_match_the_oracle_and_three_classes() {
        let got = all_directings(&tts4()).unwrap();
        let want = naive_directings(&tts4());
        assert_eq!(got.len(), want.len());

        let mut classes: Vec<CanonicalForm> =
            got.iter().map(|d| canonical_form(d).unwrap()).collect();
        classes.sort();
        classes.dedup();
        assert_eq!(classes.len(), 3);

        // the three catalog DTS(4) from the listing are exactly those classes
        let mut listed: Vec<CanonicalForm> = ["D4.1", "D4.2", "D4.3"]
            .iter()
            .map(|n| canonical_form(catalog::design(n).unwrap()).unwrap())
            .collect();
        listed.sort();
        assert_eq!(classes, listed);
    }

    #[test]
    fn canonical_form_is_relabel_invariant_and_separating() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for name in ["DTS3", "D4.1", "D7.4.926"] {
            let d = catalog::design(name).unwrap();
            let base = canonical_form(d).unwrap();
            for _ in 0..10 {
                let mut perm: Vec<usize> = (0..d.v()).collect();
                perm.shuffle(&mut rng);
                let r = d.relabel(&perm).unwrap();
                assert_eq!(canonical_form(&r).unwrap(), base, "{name}");
            }
        }
        let c1 = canonical_form(catalog::design("D4.1").unwrap()).unwrap();
        let c2 = canonical_form(catalog::design("D4.2").unwrap()).unwrap();
        let c3 = canonical_form(catalog::design("D4.3").unwrap()).unwrap();
        assert_ne!(c1, c2);
        assert_ne!(c2, c3);
        assert_ne!(c1, c3);
    }

    #[test]
    fn canonical_form_refuses_large_orders() {
        let (d, _) = crate::construct::build_sequenceable(10).unwrap();
        assert!(matches!(
            canonical_form(&d),
            Err(Error::UnsupportedOrder { v: 10, .. })
        ));
    }

    #[test]
    fn directings_of_the_underlying_system_recover_the_design() {
        let d = catalog::design("D7.4.926").unwrap();
        let tts = d.underlying_tts().unwrap();
        let all = all_directings(&tts).unwrap();
        let want = d.triple_set();
        assert!(all.iter().any(|x| x.triple_set() == want));
    }

    #[test]
    fn classify_tts4() {
        let report = classify_directings(&tts4(), &CensusOptions::default()).unwrap();
        assert!(report.complete);
        assert_eq!(report.nonisomorphic, 3);
        assert_eq!(report.with_v_good, 3);
        assert!(report.exceptional.is_empty());
    }

    #[test]
    fn classify_tts3() {
        let report = classify_directings(&tts3(), &CensusOptions::default()).unwrap();
        assert_eq!(report.nonisomorphic, 1);
        assert_eq!(report.with_v_good, 1);
        assert_eq!(report.total_directings, 6);
    }
}
