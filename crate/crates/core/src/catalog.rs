//! Built-in library of reference designs.
//!
//! Every design ships as a data file in `data/` and is parsed once at first
//! use; nothing is constructed in code, so a transcription slip shows up as
//! a suite failure rather than silent drift. Known facts attached to an
//! entry are re-derived by the suite, never trusted.

use once_cell::sync::Lazy;

use crate::design::{Dts, Sequencing, Triple};
use crate::error::{Error, Result};
use crate::format;

#[derive(Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub dts: Dts,
    /// A known good sequencing (from the design listing), if any.
    pub seq: Option<Sequencing>,
    /// Window length the listed sequencing is good at.
    pub seq_l: Option<usize>,
    /// True for triple sets that are not a complete design.
    pub partial: bool,
    pub facts: Vec<KnownFact>,
}

/// Facts the suite re-derives for each entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnownFact {
    /// Exact number of l-good sequencings, counted over labeled permutations.
    GoodCount { l: usize, count: u64 },
    /// The design (or any design containing it) has no v-good sequencing.
    NotVGoodSequenceable,
    /// The first twelve triples are the GADGET12 configuration.
    GadgetPrefix,
}

struct EntryDef {
    name: &'static str,
    text: &'static str,
    labels: Option<&'static [&'static str]>,
    seq_l: Option<usize>,
    partial: bool,
    facts: &'static [KnownFact],
}

use KnownFact::*;

static DEFS: &[EntryDef] = &[
    EntryDef {
        name: "DTS3",
        text: include_str!("../data/dts3.dts"),
        labels: Some(&["1", "2", "3"]),
        seq_l: Some(3),
        partial: false,
        facts: &[GoodCount { l: 3, count: 4 }],
    },
    EntryDef {
        name: "DTS4",
        text: include_str!("../data/dts4.dts"),
        labels: Some(&["1", "2", "3", "4"]),
        seq_l: Some(4),
        partial: false,
        facts: &[],
    },
    EntryDef {
        name: "DTS6",
        text: include_str!("../data/dts6.dts"),
        labels: Some(&["∞", "0", "1", "2", "3", "4"]),
        seq_l: Some(6),
        partial: false,
        facts: &[],
    },
    EntryDef {
        name: "D4.1",
        text: include_str!("../data/d4_1.dts"),
        labels: None,
        seq_l: Some(4),
        partial: false,
        facts: &[GoodCount { l: 4, count: 8 }],
    },
    EntryDef {
        name: "D4.2",
        text: include_str!("../data/d4_2.dts"),
        labels: None,
        seq_l: Some(4),
        partial: false,
        facts: &[GoodCount { l: 4, count: 8 }],
    },
    EntryDef {
        name: "D4.3",
        text: include_str!("../data/d4_3.dts"),
        labels: None,
        seq_l: Some(4),
        partial: false,
        facts: &[GoodCount { l: 4, count: 8 }],
    },
    EntryDef {
        name: "D7.4.926",
        text: include_str!("../data/d7_4_926.dts"),
        labels: None,
        seq_l: Some(6),
        partial: false,
        facts: &[GoodCount { l: 6, count: 124 }, NotVGoodSequenceable],
    },
    EntryDef {
        name: "D7.4.958",
        text: include_str!("../data/d7_4_958.dts"),
        labels: None,
        seq_l: Some(6),
        partial: false,
        facts: &[GoodCount { l: 6, count: 124 }, NotVGoodSequenceable],
    },
    EntryDef {
        name: "D7.4.1015",
        text: include_str!("../data/d7_4_1015.dts"),
        labels: None,
        seq_l: Some(6),
        partial: false,
        facts: &[GoodCount { l: 6, count: 112 }, NotVGoodSequenceable],
    },
    EntryDef {
        name: "D7.4.1016",
        text: include_str!("../data/d7_4_1016.dts"),
        labels: None,
        seq_l: Some(6),
        partial: false,
        facts: &[GoodCount { l: 6, count: 112 }, NotVGoodSequenceable],
    },
    EntryDef {
        name: "GADGET12",
        text: include_str!("../data/gadget12.dts"),
        labels: None,
        seq_l: None,
        partial: true,
        facts: &[NotVGoodSequenceable],
    },
    EntryDef {
        name: "EX-DTS9",
        text: include_str!("../data/ex_dts9.dts"),
        labels: None,
        seq_l: None,
        partial: false,
        facts: &[GadgetPrefix, NotVGoodSequenceable],
    },
    EntryDef {
        name: "EX-DTS10",
        text: include_str!("../data/ex_dts10.dts"),
        labels: None,
        seq_l: None,
        partial: false,
        facts: &[GadgetPrefix, NotVGoodSequenceable],
    },
    EntryDef {
        name: "EX-DTS12",
        text: include_str!("../data/ex_dts12.dts"),
        labels: None,
        seq_l: None,
        partial: false,
        facts: &[GadgetPrefix, NotVGoodSequenceable],
    },
    EntryDef {
        name: "EX-DTS13",
        text: include_str!("../data/ex_dts13.dts"),
        labels: None,
        seq_l: None,
        partial: false,
        facts: &[GadgetPrefix, NotVGoodSequenceable],
    },
    EntryDef {
        name: "EX-DTS16",
        text: include_str!("../data/ex_dts16.dts"),
        labels: None,
        seq_l: None,
        partial: false,
        facts: &[GadgetPrefix, NotVGoodSequenceable],
    },
    EntryDef {
        name: "EX-DTS18",
        text: include_str!("../data/ex_dts18.dts"),
        labels: None,
        seq_l: None,
        partial: false,
        facts: &[GadgetPrefix, NotVGoodSequenceable],
    },
];

static CATALOG: Lazy<Vec<CatalogEntry>> = Lazy::new(|| {
    DEFS.iter()
        .map(|s| {
            let (mut dts, seq) = format::parse_design(s.text)
                .unwrap_or_else(|e| panic!("catalog entry {}: {e}", s.name));
            if let Some(labels) = s.labels {
                dts = Dts::with_labels(
                    dts.v(),
                    dts.triples().to_vec(),
                    labels.iter().map(|l| l.to_string()).collect(),
                )
                .expect("label count");
            }
            CatalogEntry {
                name: s.name,
                dts,
                seq,
                seq_l: s.seq_l,
                partial: s.partial,
                facts: s.facts.to_vec(),
            }
        })
        .collect()
});

pub fn entries() -> &'static [CatalogEntry] {
    &CATALOG
}

pub fn names() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.name).collect()
}

pub fn builtin(name: &str) -> Result<&'static CatalogEntry> {
    CATALOG
        .iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownCatalogEntry {
            name: name.to_string(),
            available: names().join(", "),
        })
}

pub fn design(name: &str) -> Result<&'static Dts> {
    Ok(&builtin(name)?.dts)
}

/// The twelve-triple configuration whose order constraints are
/// unsatisfiable in any host design.
pub fn gadget() -> &'static [Triple] {
    design("GADGET12").expect("builtin").triples()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::is_l_good;

    #[test]
    fn all_full_entries_validate_with_expected_counts() {
        for e in entries() {
            if e.partial {
                continue;
            }
            let report = e.dts.validate();
            assert!(report.valid(), "{}: {}", e.name, report.summary());
            assert_eq!(
                e.dts.triples().len(),
                Dts::expected_triples(e.dts.v()),
                "{}",
                e.name
            );
        }
    }

    #[test]
    fn gadget_is_a_partial_set_of_twelve() {
        let e = builtin("GADGET12").unwrap();
        assert!(e.partial);
        assert_eq!(e.dts.triples().len(), 12);
        assert_eq!(e.dts.v(), 9);
        assert!(!e.dts.is_valid());
    }

    #[test]
    fn listed_sequencings_are_good() {
        for e in entries() {
            if let (Some(seq), Some(l)) = (&e.seq, e.seq_l) {
                assert!(
                    is_l_good(&e.dts, seq, l).unwrap(),
                    "{}: listed sequencing not {l}-good",
                    e.name
                );
            }
        }
    }

    #[test]
    fn example_designs_start_with_the_gadget() {
        let g = gadget();
        for e in entries() {
            if e.facts.contains(&KnownFact::GadgetPrefix) {
                assert_eq!(&e.dts.triples()[..12], g, "{}", e.name);
            }
        }
    }

    #[test]
    fn unknown_name_lists_available() {
        let err = builtin("NOPE").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("D7.4.926"), "{msg}");
        assert!(msg.contains("GADGET12"), "{msg}");
    }

    #[test]
    fn lookup_is_case_insensitive() {
        assert_eq!(builtin("d7.4.926").unwrap().name, "D7.4.926");
    }

    /// Negative control: a transcription slip (one triple reversed) must be
    /// caught by the same checks the suite runs.
    #[test]
    fn tampered_design_fails_visibly() {
        let d = design("D4.1").unwrap();
        let mut triples = d.triples().to_vec();
        let t = triples[0];
        triples[0] = Triple::new(t.last, t.mid, t.first).unwrap();
        let tampered = Dts::new(4, triples).unwrap();
        let report = tampered.validate();
        assert!(!report.valid());
        assert!(!report.missing_edges.is_empty());
        assert!(!report.duplicated_edges.is_empty());
    }
}
