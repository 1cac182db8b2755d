//! Randomized hill-climbing construction of directed triple systems.
//!
//! Three heuristics each add one triple covering two currently uncovered
//! directed edges through a point in first, middle or last position; if the
//! third edge of the new triple is already covered, its owning triple is
//! evicted. When a set of initial triples is protected, a step that would
//! evict one of them fails instead (the starred variants), so a completed
//! design always contains the initial triples verbatim.
//!
//! Runs are deterministic for a fixed seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::design::{admissible, Dts, Point, Triple};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ClimbConfig {
    pub seed: u64,
    pub max_iterations: u64,
    /// Clear the non-protected triples after this many iterations without a
    /// new covered-edge high-water mark. Counting covered-edge progress
    /// rather than consecutive no-ops matters: a trapped climb keeps
    /// trading triples (add + evict) without ever producing a long no-op
    /// streak, but its coverage stops improving immediately.
    pub restart_after_stall: u64,
    pub keep_transcript: bool,
}

impl Default for ClimbConfig {
    fn default() -> Self {
        ClimbConfig {
            seed: 0,
            max_iterations: 100_000,
            restart_after_stall: 2_000,
            keep_transcript: false,
        }
    }
}

/// Outcome of one heuristic application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Added { triple: Triple, evicted: Option<Triple> },
    /// Nothing eligible, or the step would evict a protected triple.
    NoOp,
}

/// Partial design under construction: edge ownership plus per-point tallies
/// of uncovered out- and in-edges.
pub struct ClimbState {
    v: usize,
    slots: Vec<Option<Triple>>,
    free: Vec<usize>,
    protected: usize,
    edge_owner: Vec<Option<u32>>,
    out_unc: Vec<u32>,
    in_unc: Vec<u32>,
    covered: usize,
}

impl ClimbState {
    pub fn new(v: usize, initial: &[Triple]) -> Result<Self> {
        if !admissible(v) {
            return Err(Error::InadmissibleOrder { v });
        }
        let mut state = ClimbState {
            v,
            slots: Vec::new(),
            free: Vec::new(),
            protected: initial.len(),
            edge_owner: vec![None; v * v],
            out_unc: vec![(v - 1) as u32; v],
            in_unc: vec![(v - 1) as u32; v],
            covered: 0,
        };
        for t in initial {
            for p in t.points() {
                if p >= v {
                    return Err(Error::PointOutOfRange { v, point: p });
                }
            }
            for (a, b) in t.edges() {
                if state.edge_owner[a * v + b].is_some() {
                    return Err(Error::DuplicateInitialEdge(a, b));
                }
                state.edge_owner[a * v + b] = Some(state.slots.len() as u32);
            }
            // ownership set above; fix tallies and coverage here
            for (a, b) in t.edges() {
                state.out_unc[a] -= 1;
                state.in_unc[b] -= 1;
            }
            state.covered += 3;
            state.slots.push(Some(*t));
        }
        Ok(state)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn triples(&self) -> Vec<Triple> {
        self.slots.iter().flatten().copied().collect()
    }

    pub fn triple_count(&self) -> usize {
        self.slots.len() - self.free.len()
    }

    pub fn complete(&self) -> bool {
        self.covered == self.v * (self.v - 1)
    }

    pub fn to_dts(&self) -> Dts {
        Dts::new(self.v, self.triples()).expect("state points are in range")
    }

    fn owner(&self, a: Point, b: Point) -> Option<u32> {
        self.edge_owner[a * self.v + b]
    }

    fn uncovered(&self, a: Point, b: Point) -> bool {
        a != b && self.owner(a, b).is_none()
    }

    fn add_triple(&mut self, t: Triple) {
        let id = match self.free.pop() {
            Some(id) => {
                self.slots[id] = Some(t);
                id
            }
            None => {
                self.slots.push(Some(t));
                self.slots.len() - 1
            }
        };
        for (a, b) in t.edges() {
            debug_assert!(self.edge_owner[a * self.v + b].is_none());
            self.edge_owner[a * self.v + b] = Some(id as u32);
            self.out_unc[a] -= 1;
            self.in_unc[b] -= 1;
        }
        self.covered += 3;
    }

    fn remove_slot(&mut self, id: usize) -> Triple {
        let t = self.slots[id].take().expect("slot occupied");
        debug_assert!(id >= self.protected);
        self.free.push(id);
        for (a, b) in t.edges() {
            self.edge_owner[a * self.v + b] = None;
            self.out_unc[a] += 1;
            self.in_unc[b] += 1;
        }
        self.covered -= 3;
        t
    }

    /// Add `t` whose first two covered edges are fresh; evict the owner of
    /// the third edge `(yz)` unless it is protected.
    fn install(&mut self, t: Triple, third: (Point, Point)) -> Step {
        let evicted = match self.owner(third.0, third.1) {
            Some(id) if (id as usize) < self.protected => return Step::NoOp,
            Some(id) => Some(self.remove_slot(id as usize)),
            None => None,
        };
        self.add_triple(t);
        Step::Added { triple: t, evicted }
    }

    fn uncovered_out_neighbors(&self, x: Point) -> Vec<Point> {
        (0..self.v).filter(|&y| self.uncovered(x, y)).collect()
    }

    fn uncovered_in_neighbors(&self, x: Point) -> Vec<Point> {
        (0..self.v).filter(|&y| self.uncovered(y, x)).collect()
    }
}

fn pick_two<R: Rng>(rng: &mut R, pool: &[Point]) -> (Point, Point) {
    let i = rng.gen_range(0..pool.len());
    let mut j = rng.gen_range(0..pool.len() - 1);
    if j >= i {
        j += 1;
    }
    (pool[i], pool[j])
}

/// H1: pick `x` with two uncovered out-edges `xy`, `xz`; add `(x, y, z)`,
/// evicting the owner of `yz` if there is one.
pub fn apply_h1<R: Rng>(state: &mut ClimbState, rng: &mut R) -> Step {
    let eligible: Vec<Point> = (0..state.v).filter(|&x| state.out_unc[x] >= 2).collect();
    let Some(&x) = eligible.as_slice().choose(rng) else {
        return Step::NoOp;
    };
    let pool = state.uncovered_out_neighbors(x);
    let (y, z) = pick_two(rng, &pool);
    state.install(Triple { first: x, mid: y, last: z }, (y, z))
}

/// H2: pick `x` with an uncovered in-edge `yx` and out-edge `xz` (`y != z`);
/// add `(y, x, z)`.
pub fn apply_h2<R: Rng>(state: &mut ClimbState, rng: &mut R) -> Step {
    let eligible: Vec<Point> = (0..state.v)
        .filter(|&x| {
            if state.in_unc[x] == 0 || state.out_unc[x] == 0 {
                return false;
            }
            if state.in_unc[x] == 1 && state.out_unc[x] == 1 {
                // the single candidate pair may be degenerate (y == z)
                let y = state.uncovered_in_neighbors(x)[0];
                let z = state.uncovered_out_neighbors(x)[0];
                return y != z;
            }
            true
        })
        .collect();
    let Some(&x) = eligible.as_slice().choose(rng) else {
        return Step::NoOp;
    };
    let ys = state.uncovered_in_neighbors(x);
    let zs = state.uncovered_out_neighbors(x);
    let (y, z) = loop {
        let y = *ys.as_slice().choose(rng).expect("nonempty");
        let z = *zs.as_slice().choose(rng).expect("nonempty");
        if y != z {
            break (y, z);
        }
    };
    state.install(Triple { first: y, mid: x, last: z }, (y, z))
}

/// H3: pick `x` with two uncovered in-edges `yx`, `zx`; add `(y, z, x)`.
pub fn apply_h3<R: Rng>(state: &mut ClimbState, rng: &mut R) -> Step {
    let eligible: Vec<Point> = (0..state.v).filter(|&x| state.in_unc[x] >= 2).collect();
    let Some(&x) = eligible.as_slice().choose(rng) else {
        return Step::NoOp;
    };
    let pool = state.uncovered_in_neighbors(x);
    let (y, z) = pick_two(rng, &pool);
    state.install(Triple { first: y, mid: z, last: x }, (y, z))
}

#[derive(Clone, Debug)]
pub enum ClimbOutcome {
    Complete(Dts),
    /// Gave up after `max_iterations`.
    Stalled { triples_reached: usize },
}

#[derive(Clone, Debug)]
pub struct ClimbReport {
    pub outcome: ClimbOutcome,
    pub iterations: u64,
    pub restarts: u64,
    pub transcript: Vec<String>,
}

impl ClimbReport {
    pub fn design(&self) -> Option<&Dts> {
        match &self.outcome {
            ClimbOutcome::Complete(d) => Some(d),
            ClimbOutcome::Stalled { .. } => None,
        }
    }
}

/// Climb until a complete DTS(v) containing `initial` verbatim is reached,
/// restarting the non-protected part after a stall. Identical inputs give
/// identical runs.
pub fn hill_climb(v: usize, initial: &[Triple], config: &ClimbConfig) -> Result<ClimbReport> {
    if config.max_iterations == 0 || config.restart_after_stall == 0 {
        return Err(Error::Config(
            "max_iterations and restart_after_stall must be positive".into(),
        ));
    }
    let mut state = ClimbState::new(v, initial)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut transcript = Vec::new();
    let mut high_water = state.covered;
    let mut stall = 0u64;
    let mut restarts = 0u64;
    let mut iterations = 0u64;

    while !state.complete() && iterations < config.max_iterations {
        iterations += 1;
        let h = rng.gen_range(0..3u8);
        let step = match h {
            0 => apply_h1(&mut state, &mut rng),
            1 => apply_h2(&mut state, &mut rng),
            _ => apply_h3(&mut state, &mut rng),
        };
        if config.keep_transcript {
            transcript.push(match &step {
                Step::Added { triple, evicted: Some(e) } => {
                    format!("{iterations}: H{} add {triple} evict {e}", h + 1)
                }
                Step::Added { triple, evicted: None } => {
                    format!("{iterations}: H{} add {triple}", h + 1)
                }
                Step::NoOp => format!("{iterations}: H{} no-op", h + 1),
            });
        }
        if state.covered > high_water {
            high_water = state.covered;
            stall = 0;
        } else {
            stall += 1;
            if stall >= config.restart_after_stall {
                for id in state.protected..state.slots.len() {
                    if state.slots[id].is_some() {
                        state.remove_slot(id);
                    }
                }
                high_water = state.covered;
                restarts += 1;
                stall = 0;
                if config.keep_transcript {
                    transcript.push(format!("{iterations}: restart"));
                }
            }
        }
    }

    let outcome = if state.complete() {
        let dts = state.to_dts();
        debug_assert!(dts.is_valid());
        ClimbOutcome::Complete(dts)
    } else {
        ClimbOutcome::Stalled { triples_reached: state.triple_count() }
    };
    Ok(ClimbReport { outcome, iterations, restarts, transcript })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::construct::verify_embedding;
    use crate::enumerate::canonical_form;
    use crate::format::serialize_design;

    #[test]
    fn climbs_the_unique_dts3() {
        let report = hill_climb(3, &[], &ClimbConfig::default()).unwrap();
        let d = report.design().expect("order 3 completes").clone();
        assert!(d.is_valid());
        assert_eq!(
            canonical_form(&d).unwrap(),
            canonical_form(catalog::design("DTS3").unwrap()).unwrap()
        );
    }

    #[test]
    fn inadmissible_orders_are_rejected() {
        assert!(matches!(
            hill_climb(8, &[], &ClimbConfig::default()),
            Err(Error::InadmissibleOrder { v: 8 })
        ));
    }

    #[test]
    fn duplicate_initial_edges_are_rejected() {
        let a = Triple::new(0, 1, 2).unwrap();
        let b = Triple::new(0, 1, 3).unwrap();
        assert!(matches!(
            hill_climb(9, &[a, b], &ClimbConfig::default()),
            Err(Error::DuplicateInitialEdge(0, 1))
        ));
    }

    #[test]
    fn protects_the_gadget_at_order_9() {
        let g = catalog::gadget();
        let report = hill_climb(9, g, &ClimbConfig { seed: 1, ..Default::default() }).unwrap();
        let d = report.design().expect("should complete").clone();
        assert!(d.is_valid());
        let id: Vec<usize> = (0..9).collect();
        assert!(verify_embedding(&d, g, &id));
        // protected triples first, verbatim
        assert_eq!(&d.triples()[..12], g);
    }

    #[test]
    fn identical_seeds_reproduce_identical_runs() {
        let g = catalog::gadget();
        let config = ClimbConfig { seed: 42, keep_transcript: true, ..Default::default() };
        let a = hill_climb(9, g, &config).unwrap();
        let b = hill_climb(9, g, &config).unwrap();
        assert_eq!(a.transcript, b.transcript);
        let da = serialize_design(a.design().unwrap(), None);
        let db = serialize_design(b.design().unwrap(), None);
        assert_eq!(da, db);

        let c = hill_climb(9, g, &ClimbConfig { seed: 43, ..config }).unwrap();
        // different seed, almost surely a different run
        assert_ne!(a.transcript, c.transcript);
    }

    #[test]
    fn eviction_of_protected_triples_is_refused() {
        // protected (0,1,2) owns (1,2); force H1 to try (3,1,2)
        let protected = [Triple::new(0, 1, 2).unwrap()];
        let mut state = ClimbState::new(4, &protected).unwrap();
        let step = state.install(Triple::new(3, 1, 2).unwrap(), (1, 2));
        assert_eq!(step, Step::NoOp);
        assert_eq!(state.triple_count(), 1);

        // unprotected owner is evicted
        let mut state = ClimbState::new(4, &[]).unwrap();
        state.add_triple(Triple::new(0, 1, 2).unwrap());
        let step = state.install(Triple::new(3, 1, 2).unwrap(), (1, 2));
        match step {
            Step::Added { evicted: Some(e), .. } => {
                assert_eq!(e, Triple::new(0, 1, 2).unwrap())
            }
            other => panic!("expected eviction, got {other:?}"),
        }
    }

    #[test]
    fn heuristics_no_op_on_a_complete_design() {
        let d = catalog::design("D4.1").unwrap();
        let mut state = ClimbState::new(4, d.triples()).unwrap();
        assert!(state.complete());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(apply_h1(&mut state, &mut rng), Step::NoOp);
        assert_eq!(apply_h2(&mut state, &mut rng), Step::NoOp);
        assert_eq!(apply_h3(&mut state, &mut rng), Step::NoOp);
    }

    #[test]
    fn tallies_stay_consistent_during_a_run() {
        let g = catalog::gadget();
        let mut state = ClimbState::new(9, g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            match rng.gen_range(0..3u8) {
                0 => apply_h1(&mut state, &mut rng),
                1 => apply_h2(&mut state, &mut rng),
                _ => apply_h3(&mut state, &mut rng),
            };
            if state.complete() {
                break;
            }
        }
        for x in 0..9 {
            let out = (0..9).filter(|&y| state.uncovered(x, y)).count();
            let inn = (0..9).filter(|&y| state.uncovered(y, x)).count();
            assert_eq!(state.out_unc[x] as usize, out);
            assert_eq!(state.in_unc[x] as usize, inn);
        }
    }
}
