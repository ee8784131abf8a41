//! Plain-text form of a tiled surface.
//!
//! ```text
//! VERTICES
//! <id> <+|-> <axis_rank>
//! SINGULARITIES
//! <id> <+|-> <theta_rank>
//! BRANCHES
//! <sing_id> <slot 0-3> -> V <vertex_id>@<vertex_slot>
//! <sing_id> <slot 0-3> -> B <cycle_id>@<pos>
//! BOUNDARY
//! <cycle_id>: <sing_id>.<slot> <sing_id>.<slot> ...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::braid::Sign;

use super::surface::{Endpoint, Singularity, TiledSurface, Vertex};
use super::FoliationError;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Vertices,
    Singularities,
    Branches,
    Boundary,
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T, FoliationError> {
    Err(FoliationError::Parse {
        line,
        msg: msg.into(),
    })
}

fn parse_sign(line: usize, s: &str) -> Result<Sign, FoliationError> {
    match s {
        "+" => Ok(Sign::Pos),
        "-" => Ok(Sign::Neg),
        _ => perr(line, format!("expected + or -, found {s:?}")),
    }
}

fn parse_num(line: usize, s: &str) -> Result<usize, FoliationError> {
    s.parse().or_else(|_| {
        perr(
            line,
            format!("expected a non-negative integer, found {s:?}"),
        )
    })
}

fn split_at_sign(line: usize, s: &str) -> Result<(String, usize), FoliationError> {
    let Some((a, b)) = s.rsplit_once('@') else {
        return perr(line, format!("expected <id>@<index>, found {s:?}"));
    };
    Ok((a.to_string(), parse_num(line, b)?))
}

pub fn parse_surface(text: &str) -> Result<TiledSurface, FoliationError> {
    let mut section = Section::None;
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut sing_heads: Vec<(String, Sign, usize)> = Vec::new();
    let mut branches: BTreeMap<(usize, usize), Endpoint> = BTreeMap::new();
    let mut pending_vertex_refs: Vec<(usize, usize, usize, String, usize)> = Vec::new();
    let mut boundary: BTreeMap<usize, Vec<(String, usize, usize)>> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        match l {
            "VERTICES" => {
                section = Section::Vertices;
                continue;
            }
            "SINGULARITIES" => {
                section = Section::Singularities;
                continue;
            }
            "BRANCHES" => {
                section = Section::Branches;
                continue;
            }
            "BOUNDARY" => {
                section = Section::Boundary;
                continue;
            }
            _ => {}
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        match section {
            Section::None => return perr(line, "content before the first section header"),
            Section::Vertices | Section::Singularities => {
                if toks.len() != 3 {
                    return perr(line, "expected <id> <sign> <rank>");
                }
                let sign = parse_sign(line, toks[1])?;
                let rank = parse_num(line, toks[2])?;
                if section == Section::Vertices {
                    vertices.push(Vertex {
                        name: toks[0].to_string(),
                        sign,
                        axis_rank: rank,
                    });
                } else {
                    sing_heads.push((toks[0].to_string(), sign, rank));
                }
            }
            Section::Branches => {
                if toks.len() != 5 || toks[2] != "->" {
                    return perr(line, "expected <sing> <slot> -> <V|B> <id>@<index>");
                }
                let Some(si) = sing_heads.iter().position(|(n, _, _)| n == toks[0]) else {
                    return perr(line, format!("unknown singularity {}", toks[0]));
                };
                let slot = parse_num(line, toks[1])?;
                if slot > 3 {
                    return perr(line, "slot must be 0..3");
                }
                let (id, index) = split_at_sign(line, toks[4])?;
                let ep = match toks[3] {
                    "V" => {
                        pending_vertex_refs.push((line, si, slot, id, index));
                        continue;
                    }
                    "B" => Endpoint::Boundary {
                        cycle: parse_num(line, &id)?,
                        pos: index,
                    },
                    other => return perr(line, format!("expected V or B, found {other}")),
                };
                if branches.insert((si, slot), ep).is_some() {
                    return perr(line, "branch given twice");
                }
            }
            Section::Boundary => {
                let Some((head, rest)) = l.split_once(':') else {
                    return perr(line, "expected <cycle>: <sing>.<slot> ...");
                };
                let c = parse_num(line, head.trim())?;
                let mut pts = Vec::new();
                for t in rest.split_whitespace() {
                    let Some((s, k)) = t.rsplit_once('.') else {
                        return perr(line, format!("expected <sing>.<slot>, found {t:?}"));
                    };
                    pts.push((s.to_string(), parse_num(line, k)?, line));
                }
                if boundary.insert(c, pts).is_some() {
                    return perr(line, "boundary cycle given twice");
                }
            }
        }
    }
    for (line, si, slot, id, vslot) in pending_vertex_refs {
        let Some(v) = vertices.iter().position(|v| v.name == id) else {
            return perr(line, format!("unknown vertex {id}"));
        };
        if branches
            .insert((si, slot), Endpoint::Vertex { vertex: v, vslot })
            .is_some()
        {
            return perr(line, "branch given twice");
        }
    }
    let mut sings = Vec::with_capacity(sing_heads.len());
    for (si, (name, sign, theta_rank)) in sing_heads.into_iter().enumerate() {
        let mut b = Vec::with_capacity(4);
        for k in 0..4 {
            match branches.get(&(si, k)) {
                Some(&e) => b.push(e),
                None => return perr(0, format!("singularity {name} lacks a branch at slot {k}")),
            }
        }
        sings.push(Singularity {
            name,
            sign,
            theta_rank,
            branches: [b[0], b[1], b[2], b[3]],
        });
    }
    let mut cycles = Vec::with_capacity(boundary.len());
    for (expect, (c, pts)) in boundary.into_iter().enumerate() {
        if c != expect {
            return perr(
                0,
                format!("boundary cycles must be numbered 0..; missing {expect}"),
            );
        }
        let mut cyc = Vec::with_capacity(pts.len());
        for (s, k, line) in pts {
            let Some(si) = sings.iter().position(|x| x.name == s) else {
                return perr(line, format!("unknown singularity {s}"));
            };
            cyc.push((si, k));
        }
        cycles.push(cyc);
    }
    Ok(TiledSurface {
        vertices,
        sings,
        boundary: cycles,
    })
}

fn sign_char(s: Sign) -> char {
    s.symbol()
}

/// Canonical text: vertices by axis rank, singularities by θ rank.
pub fn write_surface(fs: &TiledSurface) -> String {
    let mut out = String::new();
    let mut vs: Vec<&Vertex> = fs.vertices.iter().collect();
    vs.sort_by_key(|v| v.axis_rank);
    out.push_str("VERTICES\n");
    for v in vs {
        let _ = writeln!(out, "{} {} {}", v.name, sign_char(v.sign), v.axis_rank);
    }
    let mut order: Vec<usize> = (0..fs.sings.len()).collect();
    order.sort_by_key(|&i| fs.sings[i].theta_rank);
    out.push_str("SINGULARITIES\n");
    for &i in &order {
        let s = &fs.sings[i];
        let _ = writeln!(out, "{} {} {}", s.name, sign_char(s.sign), s.theta_rank);
    }
    out.push_str("BRANCHES\n");
    for &i in &order {
        let s = &fs.sings[i];
        for (k, b) in s.branches.iter().enumerate() {
            match b {
                Endpoint::Vertex { vertex, vslot } => {
                    let _ = writeln!(
                        out,
                        "{} {k} -> V {}@{vslot}",
                        s.name, fs.vertices[*vertex].name
                    );
                }
                Endpoint::Boundary { cycle, pos } => {
                    let _ = writeln!(out, "{} {k} -> B {cycle}@{pos}", s.name);
                }
            }
        }
    }
    out.push_str("BOUNDARY\n");
    for (c, cyc) in fs.boundary.iter().enumerate() {
        let pts: Vec<String> = cyc
            .iter()
            .map(|&(si, k)| format!("{}.{k}", fs.sings[si].name))
            .collect();
        if pts.is_empty() {
            let _ = writeln!(out, "{c}:");
        } else {
            let _ = writeln!(out, "{c}: {}", pts.join(" "));
        }
    }
    out
}
