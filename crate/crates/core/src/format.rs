//! Text formats `LRMESH v1` and `LRSET v1`.
//!
//! ```text
//! LRMESH v1
//! domain 0 1
//! degree 2 2
//! line H 0 0 1 3
//! line H 0.5 0 1 1
//! ...
//! ```
//!
//! ```text
//! LRSET v1
//! bspline x: 0 0 0 0.5 y: 0 0 0 1 w: 1
//! ```
//!
//! Coordinates are exact decimals; weights use the shortest representation
//! that reads back to the same `f64`, so write-read-write is byte-identical.

use std::fmt::Write as _;

use crate::bspline::LRBSpline;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::lrset::LRSet;
use crate::mesh::{Direction, Domain, LRMesh, Meshline};

pub const MESH_HEADER: &str = "LRMESH v1";
pub const SET_HEADER: &str = "LRSET v1";

pub fn write_mesh(mesh: &LRMesh) -> String {
    let dom = mesh.domain();
    let [p1, p2] = mesh.degree();
    let mut s = String::new();
    writeln!(s, "{MESH_HEADER}").unwrap();
    writeln!(s, "domain {} {}", dom.lo, dom.hi).unwrap();
    writeln!(s, "degree {p1} {p2}").unwrap();
    for l in mesh.lines() {
        writeln!(s, "line {} {} {} {} {}", l.direction.letter(), l.fixed, l.lo, l.hi, l.mult).unwrap();
    }
    s
}

pub fn write_set(set: &LRSet) -> String {
    let mut s = String::new();
    writeln!(s, "{SET_HEADER}").unwrap();
    for b in set.members() {
        s.push_str("bspline x:");
        for k in &b.knots[0] {
            write!(s, " {k}").unwrap();
        }
        s.push_str(" y:");
        for k in &b.knots[1] {
            write!(s, " {k}").unwrap();
        }
        writeln!(s, " w: {}", b.weight).unwrap();
    }
    s
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn expect_header<'a>(it: &mut impl Iterator<Item = (usize, &'a str)>, header: &str) -> Result<()> {
    match it.next() {
        Some((_, l)) if l == header => Ok(()),
        Some((n, l)) => Err(perr(n, format!("expected `{header}`, found `{l}`"))),
        None => Err(perr(1, format!("empty input, expected `{header}`"))),
    }
}

fn coord(n: usize, tok: &str) -> Result<Dyadic> {
    tok.parse().map_err(|e: Error| perr(n, e.to_string()))
}

pub fn parse_mesh(text: &str) -> Result<LRMesh> {
    let mut it = content_lines(text);
    expect_header(&mut it, MESH_HEADER)?;
    let mut domain = None;
    let mut degree = None;
    let mut lines = Vec::new();
    let mut last_line = 1;
    for (n, l) in it {
        last_line = n;
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.as_slice() {
            ["domain", a, b] => {
                let d = Domain::new(coord(n, a)?, coord(n, b)?).map_err(|e| perr(n, e.to_string()))?;
                domain = Some(d);
            }
            ["degree", p1, p2] => {
                let p = |t: &str| t.parse::<usize>().map_err(|_| perr(n, format!("bad degree `{t}`")));
                degree = Some([p(p1)?, p(p2)?]);
            }
            ["line", d, fixed, lo, hi, mult] => {
                if domain.is_none() || degree.is_none() {
                    return Err(perr(n, "`line` before `domain` and `degree`"));
                }
                let dir = Direction::from_letter(d).ok_or_else(|| perr(n, format!("bad direction `{d}`")))?;
                let mult: u32 = mult.parse().map_err(|_| perr(n, format!("bad multiplicity `{mult}`")))?;
                lines.push((n, Meshline::new(dir, coord(n, fixed)?, coord(n, lo)?, coord(n, hi)?, mult)));
            }
            _ => return Err(perr(n, format!("unrecognised record `{l}`"))),
        }
    }
    let domain = domain.ok_or_else(|| perr(last_line, "missing `domain`"))?;
    let degree = degree.ok_or_else(|| perr(last_line, "missing `degree`"))?;
    for w in lines.windows(2) {
        let (a, b) = (&w[0].1, &w[1].1);
        if (b.direction, b.fixed, b.lo) <= (a.direction, a.fixed, a.lo) {
            return Err(perr(w[1].0, "lines are not sorted by (direction, fixed, lo)"));
        }
    }
    let mesh = LRMesh::from_lines(domain, degree, lines.into_iter().map(|(_, l)| l))
        .map_err(|e| perr(last_line, e.to_string()))?;
    if let Some(v) = mesh.validate().first() {
        return Err(perr(last_line, format!("invalid mesh: {v:?}")));
    }
    Ok(mesh)
}

/// Parses the members of a set living on `mesh`; every member must have
/// minimal support there.
pub fn parse_set(text: &str, mesh: &LRMesh) -> Result<LRSet> {
    let mut it = content_lines(text);
    expect_header(&mut it, SET_HEADER)?;
    let mut members = Vec::new();
    let mut prev: Option<[Vec<Dyadic>; 2]> = None;
    for (n, l) in it {
        let rest = l.strip_prefix("bspline ").ok_or_else(|| perr(n, format!("unrecognised record `{l}`")))?;
        let (xs, rest) = rest
            .trim_start()
            .strip_prefix("x:")
            .and_then(|r| r.split_once("y:"))
            .ok_or_else(|| perr(n, "expected `x: ... y: ... w: ...`"))?;
        let (ys, w) = rest.split_once("w:").ok_or_else(|| perr(n, "missing `w:`"))?;
        let parse_knots = |s: &str| -> Result<Vec<Dyadic>> { s.split_whitespace().map(|t| coord(n, t)).collect() };
        let kx = parse_knots(xs)?;
        let ky = parse_knots(ys)?;
        let w: f64 = w.trim().parse().map_err(|_| perr(n, format!("bad weight `{}`", w.trim())))?;
        let b = LRBSpline::new(kx, ky, w).map_err(|e| perr(n, e.to_string()))?;
        if let Some(p) = &prev {
            if *p >= b.knots {
                return Err(perr(n, "records are not sorted"));
            }
        }
        prev = Some(b.knots.clone());
        members.push(b);
    }
    LRSet::from_members(mesh.clone(), members)
}
