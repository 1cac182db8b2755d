//! Backtracking search for l-good sequencings.
//!
//! The search extends a prefix one point at a time, in ascending point
//! order, and prunes as soon as a placed triple sits in forward order
//! within a span of `l` positions. Placed positions never move, so the
//! prune cuts exactly the prefixes no completion can repair; for small
//! orders the results coincide with a plain scan of all `v!` permutations.

use crate::budget::{Budget, Meter};
use crate::design::{is_l_good, Dts, Sequencing};
use crate::error::{Error, Result};

/// Orders above this refuse to search without a finite budget.
const UNBOUNDED_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Sequencing),
    /// The full permutation space was exhausted; no l-good sequencing exists.
    NoneExists,
    BudgetExhausted,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&Sequencing> {
        match self {
            SearchOutcome::Found(s) => Some(s),
            _ => None,
        }
    }
}

/// Result of [`max_good_l`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaxGoodL {
    /// Largest l with an l-good sequencing; `l+1` was refuted by complete
    /// search (or `l == v`).
    Exact { l: usize, witness: Sequencing },
    /// Budget ran out before refuting `l+1`; `l` is only a lower bound.
    LowerBound { l: usize, witness: Sequencing },
    /// Complete search found no 3-good sequencing.
    NoneGood,
    /// Budget ran out before even l=3 was decided.
    Unknown,
}

struct Searcher<'a> {
    v: usize,
    l: usize,
    /// For each point q: the (first, mid) pairs of triples whose last is q.
    ending_at: Vec<Vec<(usize, usize)>>,
    pos: Vec<usize>,
    placed: Vec<bool>,
    prefix: Vec<usize>,
    meter: &'a mut Meter,
}

impl<'a> Searcher<'a> {
    fn new(dts: &Dts, l: usize, meter: &'a mut Meter) -> Self {
        let v = dts.v();
        let mut ending_at = vec![Vec::new(); v];
        for t in dts.triples() {
            ending_at[t.last].push((t.first, t.mid));
        }
        Searcher {
            v,
            l,
            ending_at,
            pos: vec![0; v],
            placed: vec![false; v],
            prefix: Vec::with_capacity(v),
            meter,
        }
    }

    /// Can `q` extend the prefix without completing a violating triple?
    #[inline]
    fn admissible_next(&self, q: usize) -> bool {
        let k = self.prefix.len();
        for &(a, b) in &self.ending_at[q] {
            if self.placed[a] && self.placed[b] {
                let (pa, pb) = (self.pos[a], self.pos[b]);
                if pa < pb && k - pa < self.l {
                    return false;
                }
            }
        }
        true
    }

    fn place(&mut self, q: usize) {
        self.pos[q] = self.prefix.len();
        self.placed[q] = true;
        self.prefix.push(q);
    }

    fn unplace(&mut self, q: usize) {
        self.placed[q] = false;
        self.prefix.pop();
    }

    /// Find the lexicographically first completion, if any. `None` with an
    /// intact budget means the subtree is exhausted.
    fn find(&mut self) -> Option<Vec<usize>> {
        if self.prefix.len() == self.v {
            return Some(self.prefix.clone());
        }
        for q in 0..self.v {
            if self.placed[q] || !self.admissible_next(q) {
                continue;
            }
            if !self.meter.tick() {
                return None;
            }
            self.place(q);
            if let Some(found) = self.find() {
                return Some(found);
            }
            self.unplace(q);
            if self.meter.exhausted() {
                return None;
            }
        }
        None
    }

    fn count(&mut self, acc: &mut u64) {
        if self.prefix.len() == self.v {
            *acc += 1;
            return;
        }
        for q in 0..self.v {
            if self.placed[q] || !self.admissible_next(q) {
                continue;
            }
            if !self.meter.tick() {
                return;
            }
            self.place(q);
            self.count(acc);
            self.unplace(q);
            if self.meter.exhausted() {
                return;
            }
        }
    }
}

fn check_search_inputs(dts: &Dts, l: usize, budget: &Budget) -> Result<()> {
    if l < 3 || l > dts.v() {
        return Err(Error::WindowOutOfRange { v: dts.v(), l });
    }
    if dts.v() > UNBOUNDED_LIMIT && budget.is_unlimited() {
        return Err(Error::BudgetRequired { v: dts.v() });
    }
    Ok(())
}

/// Find an l-good sequencing by complete backtracking search.
///
/// `NoneExists` is returned only after the whole permutation space has been
/// exhausted; running out of budget is a distinct outcome. Single-threaded
/// and deterministic: the witness is the lexicographically first one.
pub fn find_l_good(dts: &Dts, l: usize, budget: &Budget) -> Result<SearchOutcome> {
    check_search_inputs(dts, l, budget)?;
    let mut meter = Meter::new(*budget);
    let mut s = Searcher::new(dts, l, &mut meter);
    match s.find() {
        Some(order) => {
            let seq = Sequencing::new(order).expect("search yields a permutation");
            debug_assert!(is_l_good(dts, &seq, l).unwrap());
            Ok(SearchOutcome::Found(seq))
        }
        None if meter.exhausted() => Ok(SearchOutcome::BudgetExhausted),
        None => Ok(SearchOutcome::NoneExists),
    }
}

/// Exact number of l-good sequencings (labeled permutations of the points).
///
/// Intended for small orders; errs with the partial tally if the budget
/// runs out first.
pub fn count_l_good(dts: &Dts, l: usize, budget: &Budget) -> Result<u64> {
    check_search_inputs(dts, l, budget)?;
    let mut meter = Meter::new(*budget);
    let mut s = Searcher::new(dts, l, &mut meter);
    let mut acc = 0;
    s.count(&mut acc);
    if meter.exhausted() {
        Err(Error::PartialCount { counted: acc })
    } else {
        Ok(acc)
    }
}

/// Parallel count: splits on the first placed point and sums the per-branch
/// counts, so the total is independent of scheduling. Node budgets are
/// shared across workers.
pub fn count_l_good_parallel(
    dts: &Dts,
    l: usize,
    budget: &Budget,
    workers: usize,
) -> Result<u64> {
    if workers <= 1 {
        return count_l_good(dts, l, budget);
    }
    check_search_inputs(dts, l, budget)?;

    use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
    let shared_nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let started = std::time::Instant::now();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let results: Vec<u64> = pool.install(|| {
        use rayon::prelude::*;
        (0..dts.v())
            .into_par_iter()
            .map(|first| {
                // Each branch runs with its own meter but reports into the
                // shared counters so the global budget is honored.
                let mut meter = Meter::new(Budget::UNLIMITED);
                let mut s = Searcher::new(dts, l, &mut meter);
                s.place(first);
                let mut acc = 0;
                count_shared(&mut s, &mut acc, budget, &shared_nodes, &exhausted, started);
                acc
            })
            .collect()
    });
    if exhausted.load(Ordering::Relaxed) {
        Err(Error::PartialCount { counted: results.iter().sum() })
    } else {
        Ok(results.iter().sum())
    }
}

fn count_shared(
    s: &mut Searcher<'_>,
    acc: &mut u64,
    budget: &Budget,
    shared_nodes: &std::sync::atomic::AtomicU64,
    exhausted: &std::sync::atomic::AtomicBool,
    started: std::time::Instant,
) {
    use std::sync::atomic::Ordering;
    if s.prefix.len() == s.v {
        *acc += 1;
        return;
    }
    for q in 0..s.v {
        if s.placed[q] || !s.admissible_next(q) {
            continue;
        }
        let n = shared_nodes.fetch_add(1, Ordering::Relaxed);
        if let Some(max) = budget.max_nodes {
            if n >= max {
                exhausted.store(true, Ordering::Relaxed);
                return;
            }
        }
        if n.is_multiple_of(4096) {
            if let Some(max) = budget.max_time {
                if started.elapsed() > max {
                    exhausted.store(true, Ordering::Relaxed);
                    return;
                }
            }
        }
        s.place(q);
        count_shared(s, acc, budget, shared_nodes, exhausted, started);
        s.unplace(q);
        if exhausted.load(Ordering::Relaxed) {
            return;
        }
    }
}

/// Largest l admitting an l-good sequencing, searched upward from 3 so a
/// budget cut still leaves a certified lower bound.
pub fn max_good_l(dts: &Dts, budget: &Budget) -> Result<MaxGoodL> {
    let mut best: Option<(usize, Sequencing)> = None;
    for l in 3..=dts.v() {
        match find_l_good(dts, l, budget)? {
            SearchOutcome::Found(w) => best = Some((l, w)),
            SearchOutcome::NoneExists => {
                return Ok(match best {
                    Some((l, witness)) => MaxGoodL::Exact { l, witness },
                    None => MaxGoodL::NoneGood,
                });
            }
            SearchOutcome::BudgetExhausted => {
                return Ok(match best {
                    Some((l, witness)) => MaxGoodL::LowerBound { l, witness },
                    None => MaxGoodL::Unknown,
                });
            }
        }
    }
    let (l, witness) = best.expect("v >= 3 loop ran");
    Ok(MaxGoodL::Exact { l, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::design::triples_l_good;

    /// Oracle: scan all v! permutations.
    fn scan_all(dts: &Dts, l: usize) -> (u64, Option<Vec<usize>>) {
        let v = dts.v();
        let mut count = 0;
        let mut first = None;
        let mut perm: Vec<usize> = (0..v).collect();
        loop {
            let seq = Sequencing::new(perm.clone()).unwrap();
            if triples_l_good(dts.triples(), &seq, l) {
                count += 1;
                if first.is_none() {
                    first = Some(perm.clone());
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        (count, first)
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn find_on_d4_3_returns_lexicographic_first() {
        let d = catalog::design("D4.3").unwrap();
        let got = find_l_good(d, 4, &Budget::UNLIMITED).unwrap();
        assert_eq!(got.found().unwrap().order(), &[0, 1, 2, 3]);
    }

    #[test]
    fn d7_4_926_has_no_7_good_sequencing() {
        let d = catalog::design("D7.4.926").unwrap();
        let got = find_l_good(d, 7, &Budget::UNLIMITED).unwrap();
        assert_eq!(got, SearchOutcome::NoneExists);
    }

    #[test]
    fn dts6_has_a_6_good_sequencing() {
        let d = catalog::design("DTS6").unwrap();
        let got = find_l_good(d, 6, &Budget::UNLIMITED).unwrap();
        assert!(got.found().is_some());
        // the listed one is good too
        let listed = catalog::builtin("DTS6").unwrap().seq.clone().unwrap();
        assert!(is_l_good(d, &listed, 6).unwrap());
    }

    #[test]
    fn counts_match_the_catalog_facts() {
        for (name, l, want) in [("D4.1", 4usize, 8u64), ("D7.4.1015", 6, 112)] {
            let d = catalog::design(name).unwrap();
            assert_eq!(count_l_good(d, l, &Budget::UNLIMITED).unwrap(), want, "{name}");
        }
    }

    #[test]
    fn dts3_count_matches_full_scan() {
        let d = catalog::design("DTS3").unwrap();
        let (want, _) = scan_all(d, 3);
        assert_eq!(want, 4);
        assert_eq!(count_l_good(d, 3, &Budget::UNLIMITED).unwrap(), 4);
    }

    #[test]
    fn backtracking_agrees_with_full_scan_up_to_order_7() {
        for name in ["DTS3", "D4.2", "DTS6", "D7.4.958"] {
            let d = catalog::design(name).unwrap();
            for l in 3..=d.v() {
                let (want_count, want_first) = scan_all(d, l);
                let got_count = count_l_good(d, l, &Budget::UNLIMITED).unwrap();
                assert_eq!(got_count, want_count, "{name} l={l}");
                match find_l_good(d, l, &Budget::UNLIMITED).unwrap() {
                    SearchOutcome::Found(s) => {
                        assert_eq!(Some(s.order().to_vec()), want_first, "{name} l={l}")
                    }
                    SearchOutcome::NoneExists => assert_eq!(want_first, None, "{name} l={l}"),
                    SearchOutcome::BudgetExhausted => unreachable!(),
                }
            }
        }
    }

    #[test]
    fn counts_are_non_increasing_in_l() {
        let d = catalog::design("D7.4.926").unwrap();
        let mut prev = u64::MAX;
        for l in 3..=7 {
            let c = count_l_good(d, l, &Budget::UNLIMITED).unwrap();
            assert!(c <= prev, "count rose from {prev} to {c} at l={l}");
            prev = c;
        }
    }

    #[test]
    fn max_good_l_results() {
        let d = catalog::design("D7.4.958").unwrap();
        match max_good_l(d, &Budget::UNLIMITED).unwrap() {
            MaxGoodL::Exact { l, witness } => {
                assert_eq!(l, 6);
                assert!(is_l_good(d, &witness, 6).unwrap());
            }
            other => panic!("expected exact result, got {other:?}"),
        }
        // the listed witness is 6-good as well
        let listed = Sequencing::new(vec![0, 2, 4, 5, 6, 1, 3]).unwrap();
        assert!(is_l_good(d, &listed, 6).unwrap());

        let d = catalog::design("D4.2").unwrap();
        assert!(matches!(
            max_good_l(d, &Budget::UNLIMITED).unwrap(),
            MaxGoodL::Exact { l: 4, .. }
        ));
        let d = catalog::design("DTS3").unwrap();
        assert!(matches!(
            max_good_l(d, &Budget::UNLIMITED).unwrap(),
            MaxGoodL::Exact { l: 3, .. }
        ));
    }

    #[test]
    fn tiny_budget_reports_exhaustion() {
        let d = catalog::design("D7.4.926").unwrap();
        let got = find_l_good(d, 7, &Budget::nodes(5)).unwrap();
        assert_eq!(got, SearchOutcome::BudgetExhausted);
        match count_l_good(d, 6, &Budget::nodes(5)) {
            Err(Error::PartialCount { .. }) => {}
            other => panic!("expected partial count, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_search_refused_above_limit() {
        let (d, _) = crate::construct::build_sequenceable(13).unwrap();
        assert!(matches!(
            find_l_good(&d, 13, &Budget::UNLIMITED),
            Err(Error::BudgetRequired { v: 13 })
        ));
        assert!(find_l_good(&d, 13, &Budget::nodes(1_000_000)).is_ok());
    }

    #[test]
    fn parallel_count_matches_sequential() {
        let d = catalog::design("D7.4.926").unwrap();
        let seq = count_l_good(d, 6, &Budget::UNLIMITED).unwrap();
        let par = count_l_good_parallel(d, 6, &Budget::UNLIMITED, 4).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq, 124);
    }
}
