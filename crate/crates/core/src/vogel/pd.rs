//! Planar diagram codes.
//!
//! `X[a,b,c,d]` lists the four edges at a crossing counterclockwise,
//! starting from the incoming under-strand, so the under-strand runs
//! `a → c`. The crossing is positive when the over-strand runs `d → b`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::braid::{BraidWord, Sign};

use super::VogelError;

/// A knot diagram as a list of crossings over arbitrary edge labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KnotDiagram {
    pub crossings: Vec<[usize; 4]>,
}

impl FromStr for KnotDiagram {
    type Err = VogelError;

    /// Accepts `X[..]` terms separated by whitespace or commas, optionally
    /// wrapped in `PD[...]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut t = s.trim();
        if let Some(inner) = t.strip_prefix("PD[").and_then(|x| x.strip_suffix(']')) {
            t = inner;
        }
        let mut crossings = Vec::new();
        let mut rest = t;
        loop {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
            if rest.is_empty() {
                break;
            }
            let Some(body) = rest.strip_prefix("X[") else {
                return Err(VogelError::Parse(format!(
                    "expected X[...] at {:?}",
                    truncate(rest)
                )));
            };
            let Some(close) = body.find(']') else {
                return Err(VogelError::Parse("unterminated X[".into()));
            };
            let nums: Vec<usize> = body[..close]
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| {
                    VogelError::Parse(format!("bad edge label in X[{}]: {e}", &body[..close]))
                })?;
            let arr: [usize; 4] = nums.try_into().map_err(|_| {
                VogelError::Parse(format!("X[{}] needs four labels", &body[..close]))
            })?;
            crossings.push(arr);
            rest = &body[close + 1..];
        }
        Ok(KnotDiagram { crossings })
    }
}

fn truncate(s: &str) -> String {
    s.chars().take(20).collect()
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3]))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A slot of a crossing.
pub type Dart = (usize, usize);

/// A knot diagram with its orientation resolved and edges renumbered
/// `0..2k` in the order the knot traverses them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oriented {
    pub crossings: Vec<[usize; 4]>,
    pub signs: Vec<Sign>,
    /// Slot where each edge starts and where it ends.
    pub tail: Vec<Dart>,
    pub head: Vec<Dart>,
}

impl KnotDiagram {
    /// Standard diagram of the closure of `w`: strands run upward, Artin
    /// generator `s<i>` crosses positions `i` and `i+1` (positive when the
    /// left strand passes over), and the closing arcs pass on one side.
    pub fn closure_of(w: &BraidWord) -> KnotDiagram {
        let artin = w.band_to_artin();
        let n = w.strands();
        let mut next = n;
        let mut at: Vec<usize> = (0..n).collect();
        let mut crossings = Vec::with_capacity(artin.len());
        for l in artin.letters() {
            let i = l.s - 1;
            let (bl, br) = (at[i], at[i + 1]);
            let (tl, tr) = (next, next + 1);
            next += 2;
            crossings.push(if l.sign.is_pos() {
                [br, tr, tl, bl]
            } else {
                [bl, br, tr, tl]
            });
            at[i] = tl;
            at[i + 1] = tr;
        }
        // glue the top of each position to its bottom
        let mut rename: Vec<usize> = (0..next).collect();
        for (j, &top) in at.iter().enumerate() {
            rename[top] = j;
        }
        let crossings: Vec<[usize; 4]> = crossings
            .into_iter()
            .map(|c| c.map(|e| rename[e] + 1))
            .collect();
        KnotDiagram { crossings }
    }

    /// Adds a Reidemeister-I kink on the edge `edge` (0-based, in
    /// traversal order from [`KnotDiagram::orient`]), with the loop on the
    /// left or right of the strand and the first pass under or over.
    pub fn with_kink(
        &self,
        edge: usize,
        left: bool,
        first_under: bool,
    ) -> Result<KnotDiagram, VogelError> {
        let o = self.orient()?;
        let m = o.edge_count();
        if edge >= m {
            return Err(VogelError::Orientation(format!("no edge {edge}")));
        }
        let (ea, l, eb) = (edge, m, m + 1);
        let mut crossings = o.crossings.clone();
        let h = o.head[edge];
        crossings[h.0][h.1] = eb;
        crossings.push(match (left, first_under) {
            (true, true) => [ea, eb, l, l],
            (true, false) => [l, ea, eb, l],
            (false, true) => [ea, l, l, eb],
            (false, false) => [l, l, eb, ea],
        });
        Ok(KnotDiagram { crossings }.orient()?.to_diagram())
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Resolves orientation by walking the knot from the outgoing
    /// under-strand of the first crossing.
    pub fn orient(&self) -> Result<Oriented, VogelError> {
        let k = self.crossings.len();
        if k == 0 {
            return Ok(Oriented {
                crossings: Vec::new(),
                signs: Vec::new(),
                tail: Vec::new(),
                head: Vec::new(),
            });
        }
        let mut slots: BTreeMap<usize, Vec<Dart>> = BTreeMap::new();
        for (x, c) in self.crossings.iter().enumerate() {
            for (j, &e) in c.iter().enumerate() {
                slots.entry(e).or_default().push((x, j));
            }
        }
        if let Some((e, v)) = slots.iter().find(|(_, v)| v.len() != 2) {
            return Err(VogelError::Orientation(format!(
                "edge {e} appears {} times",
                v.len()
            )));
        }
        let other = |d: Dart| -> Dart {
            let v = &slots[&self.crossings[d.0][d.1]];
            if v[0] == d {
                v[1]
            } else {
                v[0]
            }
        };
        // walk: leave through `out`, arrive at the other end, go straight on
        let mut is_out = vec![[None::<bool>; 4]; k];
        let mut order: Vec<(Dart, Dart)> = Vec::with_capacity(2 * k);
        let start: Dart = (0, 2);
        let mut out = start;
        loop {
            let inn = other(out);
            for (d, val) in [(out, true), (inn, false)] {
                match is_out[d.0][d.1] {
                    Some(prev) if prev != val => {
                        return Err(VogelError::Orientation(format!(
                            "crossing {} slot {} used both ways",
                            d.0, d.1
                        )))
                    }
                    _ => is_out[d.0][d.1] = Some(val),
                }
            }
            order.push((out, inn));
            out = (inn.0, (inn.1 + 2) % 4);
            if out == start {
                break;
            }
            if order.len() > 2 * k {
                return Err(VogelError::Orientation(
                    "traversal does not close up".into(),
                ));
            }
        }
        if order.len() != 2 * k {
            return Err(VogelError::NotAKnot);
        }
        let mut signs = Vec::with_capacity(k);
        for (x, o) in is_out.iter().enumerate() {
            if o[0] != Some(false) || o[2] != Some(true) {
                return Err(VogelError::Orientation(format!(
                    "under-strand of crossing {x} is not a -> c"
                )));
            }
            signs.push(if o[3] == Some(false) {
                Sign::Pos
            } else {
                Sign::Neg
            });
        }
        let mut crossings = vec![[0usize; 4]; k];
        let (mut tail, mut head) = (Vec::with_capacity(2 * k), Vec::with_capacity(2 * k));
        for (e, &(t, h)) in order.iter().enumerate() {
            crossings[t.0][t.1] = e;
            crossings[h.0][h.1] = e;
            tail.push(t);
            head.push(h);
        }
        Ok(Oriented {
            crossings,
            signs,
            tail,
            head,
        })
    }
}

impl Oriented {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.tail.len()
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|s| s.to_i64()).sum()
    }

    /// Slot through which an oriented strand leaves after entering at `d`.
    pub fn straight_out(d: Dart) -> Dart {
        (d.0, (d.1 + 2) % 4)
    }

    /// Slot through which the Seifert smoothing leaves after entering at `d`.
    pub fn smoothed_out(&self, d: Dart) -> Dart {
        let pos = self.signs[d.0].is_pos();
        let slot = match (d.1, pos) {
            (0, true) => 1,
            (0, false) => 3,
            _ => 2,
        };
        (d.0, slot)
    }

    /// The other end of the edge at `d`.
    pub fn across(&self, d: Dart) -> Dart {
        let e = self.crossings[d.0][d.1];
        if self.tail[e] == d {
            self.head[e]
        } else {
            self.tail[e]
        }
    }

    /// Diagram with edges labelled `1..=2k` along the orientation.
    pub fn to_diagram(&self) -> KnotDiagram {
        KnotDiagram {
            crossings: self.crossings.iter().map(|c| c.map(|e| e + 1)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_orient_trefoil() {
        let d: KnotDiagram = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".parse().unwrap();
        let o = d.orient().unwrap();
        assert_eq!(o.writhe(), -3);
        assert_eq!(o.to_diagram().orient().unwrap(), o);
        let wrapped: KnotDiagram = "PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]".parse().unwrap();
        assert_eq!(wrapped, d);
    }

    #[test]
    fn bad_input() {
        assert!("X[1,2,3]".parse::<KnotDiagram>().is_err());
        let twice: KnotDiagram = "X[1,1,1,2]".parse().unwrap();
        assert!(twice.orient().is_err());
    }
}
