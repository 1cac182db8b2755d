//! Canonical text formats.
//!
//! Designs (one per file):
//! ```text
//! DTS v=7
//! 0 4 2
//! ...
//! SEQ 0 1 2 3 4 5 6     # optional trailing line
//! ```
//! Twofold systems use a `TTS v=<n>` header with one block `a b c` per line;
//! pairwise balanced designs use `PBD v=<n>` with one block of two or more
//! points per line. `#` starts a comment; blank lines are ignored.

use crate::construct::Pbd;
use crate::design::{Dts, Sequencing, Triple, Tts};
use crate::error::{Error, Result};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }
}

impl<'a> Iterator for Lines<'a> {
    /// (1-based line number, significant content)
    type Item = (usize, &'a str);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, raw) in self.inner.by_ref() {
            let line = match raw.find('#') {
                Some(at) => &raw[..at],
                None => raw,
            }
            .trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }
}

fn parse_header(line: &str, lineno: usize, kind: &str) -> Result<usize> {
    let err = |msg: String| Error::Parse { line: lineno, msg };
    let rest = line
        .strip_prefix(kind)
        .ok_or_else(|| err(format!("expected `{kind} v=<n>` header, got {line:?}")))?
        .trim();
    let v = rest
        .strip_prefix("v=")
        .and_then(|n| n.trim().parse::<usize>().ok())
        .ok_or_else(|| err(format!("expected `{kind} v=<n>` header, got {line:?}")))?;
    if v < 2 {
        return Err(err(format!("order {v} too small")));
    }
    Ok(v)
}

fn parse_points(line: &str, lineno: usize, v: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in line.split_whitespace() {
        let p: usize = tok.parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: format!("expected a point index, got {tok:?}"),
        })?;
        if p >= v {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("point {p} out of range for order {v}"),
            });
        }
        out.push(p);
    }
    Ok(out)
}

/// Parse the canonical design format, returning the design and the optional
/// trailing sequencing.
pub fn parse_design(text: &str) -> Result<(Dts, Option<Sequencing>)> {
    let mut lines = Lines::new(text);
    let (lineno, header) = lines
        .next()
        .ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let v = parse_header(header, lineno, "DTS")?;

    let mut triples = Vec::new();
    let mut seq = None;
    for (lineno, line) in lines {
        if seq.is_some() {
            return Err(Error::Parse {
                line: lineno,
                msg: "content after the SEQ line".into(),
            });
        }
        if let Some(rest) = line.strip_prefix("SEQ") {
            let order = parse_points(rest, lineno, v)?;
            if order.len() != v {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("SEQ lists {} points, the design has {v}", order.len()),
                });
            }
            seq = Some(Sequencing::new(order).map_err(|e| Error::Parse {
                line: lineno,
                msg: e.to_string(),
            })?);
            continue;
        }
        let pts = parse_points(line, lineno, v)?;
        if pts.len() != 3 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected three point indices, got {}", pts.len()),
            });
        }
        let t = Triple::new(pts[0], pts[1], pts[2]).map_err(|e| Error::Parse {
            line: lineno,
            msg: e.to_string(),
        })?;
        triples.push(t);
    }
    Ok((Dts::new(v, triples)?, seq))
}

/// Serialize a design. Triples are emitted in sorted order so equal designs
/// always produce identical bytes.
pub fn serialize_design(dts: &Dts, seq: Option<&Sequencing>) -> String {
    let mut out = format!("DTS v={}\n", dts.v());
    let mut triples = dts.triples().to_vec();
    triples.sort_unstable();
    for t in triples {
        out.push_str(&format!("{} {} {}\n", t.first, t.mid, t.last));
    }
    if let Some(s) = seq {
        out.push_str(&format!("SEQ {s}\n"));
    }
    out
}

pub fn parse_tts(text: &str) -> Result<Tts> {
    let mut lines = Lines::new(text);
    let (lineno, header) = lines
        .next()
        .ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let v = parse_header(header, lineno, "TTS")?;
    let mut blocks = Vec::new();
    for (lineno, line) in lines {
        let pts = parse_points(line, lineno, v)?;
        if pts.len() != 3 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected three point indices, got {}", pts.len()),
            });
        }
        blocks.push([pts[0], pts[1], pts[2]]);
    }
    Tts::new(v, blocks)
}

pub fn serialize_tts(tts: &Tts) -> String {
    let mut out = format!("TTS v={}\n", tts.v());
    let mut blocks = tts.blocks().to_vec();
    blocks.sort_unstable();
    for b in blocks {
        out.push_str(&format!("{} {} {}\n", b[0], b[1], b[2]));
    }
    out
}

pub fn parse_pbd(text: &str) -> Result<Pbd> {
    let mut lines = Lines::new(text);
    let (lineno, header) = lines
        .next()
        .ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let v = parse_header(header, lineno, "PBD")?;
    let mut blocks = Vec::new();
    for (lineno, line) in lines {
        let pts = parse_points(line, lineno, v)?;
        if pts.len() < 2 {
            return Err(Error::Parse {
                line: lineno,
                msg: "a block needs at least two points".into(),
            });
        }
        blocks.push(pts);
    }
    Pbd::new(v, blocks)
}

pub fn serialize_pbd(pbd: &Pbd) -> String {
    let mut out = format!("PBD v={}\n", pbd.v());
    for b in pbd.blocks() {
        let parts: Vec<String> = b.iter().map(|p| p.to_string()).collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip_d7_4_926() {
        let d = catalog::design("D7.4.926").unwrap();
        let seq = catalog::builtin("D7.4.926").unwrap().seq.clone();
        let text = serialize_design(d, seq.as_ref());
        let (back, back_seq) = parse_design(&text).unwrap();
        assert_eq!(back.triple_set(), d.triple_set());
        assert_eq!(back_seq, seq);
        // byte-stable
        assert_eq!(text, serialize_design(&back, back_seq.as_ref()));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_design("DTS v=4\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");

        let err = parse_design("TTS v=4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");

        let err = parse_design("DTS v=4\n0 1 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");

        let err = parse_design("DTS v=4\n0 1 2\nSEQ 0 1 2 3\n3 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");

        let err = parse_design("DTS v=3\n0 1 2\nSEQ 0 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");

        let err = parse_design("DTS v=4\n0 1 2\nSEQ 0 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn duplicate_edge_parses_but_fails_validation() {
        let (d, _) = parse_design("DTS v=4\n0 1 2\n3 1 2\n").unwrap();
        let report = d.validate();
        assert!(!report.valid());
        assert_eq!(report.duplicated_edges[0].0, (1, 2));
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let (d, seq) =
            parse_design("# a design\nDTS v=3\n\n0 1 2   # forward\n2 1 0\nSEQ 0 2 1\n").unwrap();
        assert!(d.is_valid());
        assert_eq!(seq.unwrap().order(), &[0, 2, 1]);
    }

    #[test]
    fn tts_round_trip() {
        let tts = catalog::design("D7.4.926").unwrap().underlying_tts().unwrap();
        let text = serialize_tts(&tts);
        let back = parse_tts(&text).unwrap();
        back.validate().unwrap();
        let mut a = tts.blocks().to_vec();
        let mut b = back.blocks().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
