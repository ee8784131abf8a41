//! Seifert circles, their coherence, and Vogel moves.

use std::collections::VecDeque;

use crate::braid::Sign;

use super::pd::{Dart, KnotDiagram, Oriented};
use super::VogelError;

/// One side of an edge on the boundary of a face: the edge, and whether the
/// face-boundary direction (face on the left) agrees with the orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceEdge {
    pub edge: usize,
    pub agrees: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tie {
    pub crossing: usize,
    pub circles: (usize, usize),
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertDiagram {
    pub diagram: Oriented,
    /// Edges of each circle in the order the circle runs through them.
    pub circles: Vec<Vec<usize>>,
    pub circle_of: Vec<usize>,
    pub ties: Vec<Tie>,
    /// Faces of the underlying planar graph, each traversed with the face
    /// on the left.
    pub faces: Vec<Vec<FaceEdge>>,
    pub left_face: Vec<usize>,
    pub right_face: Vec<usize>,
    /// `left_of[i][j]`: circle `j` lies on the left of circle `i`.
    pub left_of: Vec<Vec<bool>>,
}

/// A face together with two incoherent circle arcs on its boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct VogelSite {
    pub face: usize,
    pub e1: usize,
    pub e2: usize,
}

fn trace_faces(o: &Oriented) -> Vec<Vec<FaceEdge>> {
    let k = o.crossing_count();
    let mut used = vec![[false; 4]; k];
    let mut faces = Vec::new();
    for x in 0..k {
        for s in 0..4 {
            if used[x][s] {
                continue;
            }
            let mut face = Vec::new();
            let mut arrive: Dart = (x, s);
            while !used[arrive.0][arrive.1] {
                used[arrive.0][arrive.1] = true;
                let leave = (arrive.0, (arrive.1 + 3) % 4);
                let e = o.crossings[leave.0][leave.1];
                face.push(FaceEdge {
                    edge: e,
                    agrees: o.tail[e] == leave,
                });
                arrive = o.across(leave);
            }
            faces.push(face);
        }
    }
    faces
}

impl SeifertDiagram {
    pub fn n(&self) -> usize {
        self.circles.len()
    }

    pub fn coherent(&self, i: usize, j: usize) -> bool {
        i == j || self.left_of[i][j] != self.left_of[j][i]
    }

    pub fn incoherent_pairs(&self) -> usize {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.coherent(i, j))
            .count()
    }

    /// Every site, in order of face and then of position along the face.
    pub fn vogel_sites(&self) -> Vec<VogelSite> {
        let mut out = Vec::new();
        for (f, face) in self.faces.iter().enumerate() {
            for (a, fa) in face.iter().enumerate() {
                for fb in &face[a + 1..] {
                    let (ca, cb) = (self.circle_of[fa.edge], self.circle_of[fb.edge]);
                    if ca != cb && fa.agrees == fb.agrees && !self.coherent(ca, cb) {
                        out.push(VogelSite {
                            face: f,
                            e1: fa.edge,
                            e2: fb.edge,
                        });
                    }
                }
            }
        }
        out
    }
}

/// Smooths every crossing coherently with the orientation.
pub fn seifert_smooth(d: &KnotDiagram) -> Result<SeifertDiagram, VogelError> {
    smooth_oriented(d.orient()?)
}

pub fn smooth_oriented(o: Oriented) -> Result<SeifertDiagram, VogelError> {
    let k = o.crossing_count();
    if k == 0 {
        return Ok(SeifertDiagram {
            diagram: o,
            circles: vec![Vec::new()],
            circle_of: Vec::new(),
            ties: Vec::new(),
            faces: Vec::new(),
            left_face: Vec::new(),
            right_face: Vec::new(),
            left_of: vec![vec![false]],
        });
    }
    let m = o.edge_count();
    let faces = trace_faces(&o);
    if faces.len() != k + 2 {
        return Err(VogelError::NotPlanar {
            faces: faces.len(),
            crossings: k,
        });
    }
    let (mut left_face, mut right_face) = (vec![usize::MAX; m], vec![usize::MAX; m]);
    for (f, face) in faces.iter().enumerate() {
        for fe in face {
            if fe.agrees {
                left_face[fe.edge] = f;
            } else {
                right_face[fe.edge] = f;
            }
        }
    }
    let mut circle_of = vec![usize::MAX; m];
    let mut circles = Vec::new();
    for e0 in 0..m {
        if circle_of[e0] != usize::MAX {
            continue;
        }
        let c = circles.len();
        let mut cyc = Vec::new();
        let mut e = e0;
        while circle_of[e] == usize::MAX {
            circle_of[e] = c;
            cyc.push(e);
            let out = o.smoothed_out(o.head[e]);
            e = o.crossings[out.0][out.1];
        }
        circles.push(cyc);
    }
    let ties = (0..k)
        .map(|x| {
            let (a, b) = (circle_of[o.crossings[x][0]], circle_of[o.crossings[x][2]]);
            Tie {
                crossing: x,
                circles: (a.min(b), a.max(b)),
                sign: o.signs[x],
            }
        })
        .collect::<Vec<_>>();
    if let Some(t) = ties.iter().find(|t| t.circles.0 == t.circles.1) {
        return Err(VogelError::Orientation(format!(
            "crossing {} ties a circle to itself",
            t.crossing
        )));
    }
    // side of each circle for every face: crossing an edge of the circle
    // flips the side, crossing any other edge keeps it
    let n = circles.len();
    let mut left_of = vec![vec![false; n]; n];
    for (i, cyc) in circles.iter().enumerate() {
        let mut side = vec![None::<bool>; faces.len()];
        let start = left_face[cyc[0]];
        side[start] = Some(true);
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            let here = side[f].expect("visited");
            for fe in &faces[f] {
                let g = if fe.agrees {
                    right_face[fe.edge]
                } else {
                    left_face[fe.edge]
                };
                let want = if circle_of[fe.edge] == i { !here } else { here };
                match side[g] {
                    None => {
                        side[g] = Some(want);
                        queue.push_back(g);
                    }
                    Some(s) if s != want => {
                        return Err(VogelError::NotPlanar {
                            faces: faces.len(),
                            crossings: k,
                        });
                    }
                    _ => {}
                }
            }
        }
        for (j, cj) in circles.iter().enumerate() {
            if j != i {
                left_of[i][j] = side[left_face[cj[0]]].expect("connected");
            }
        }
    }
    Ok(SeifertDiagram {
        diagram: o,
        circles,
        circle_of,
        ties,
        faces,
        left_face,
        right_face,
        left_of,
    })
}

/// Seifert diagram of `d` and, if some pair of circles is incoherent, the
/// first site in face order.
pub fn find_vogel_site(sd: &SeifertDiagram) -> Option<VogelSite> {
    sd.vogel_sites().into_iter().next()
}

/// The Reidemeister-II move across `site.face` that pushes a finger of
/// edge `e1` over edge `e2`; the site must be incoherent.
pub fn vogel_move(sd: &SeifertDiagram, site: VogelSite) -> Result<KnotDiagram, VogelError> {
    let stale = || VogelError::StaleSite(site);
    let (c1, c2) = (
        sd.circle_of.get(site.e1).ok_or_else(stale)?,
        sd.circle_of.get(site.e2).ok_or_else(stale)?,
    );
    if c1 == c2 || sd.coherent(*c1, *c2) {
        return Err(stale());
    }
    finger_move(sd, site)
}

/// Pushes a finger of edge `e1` across face `face` and over edge `e2`,
/// adding two crossings. Works for any two distinct edges on the boundary
/// of the face; when their arcs are coherent the move creates a new
/// Seifert circle rather than preserving the count.
pub fn finger_move(sd: &SeifertDiagram, site: VogelSite) -> Result<KnotDiagram, VogelError> {
    let stale = || VogelError::StaleSite(site);
    let face = sd.faces.get(site.face).ok_or_else(stale)?;
    let fa = face.iter().find(|f| f.edge == site.e1).ok_or_else(stale)?;
    let fb = face.iter().find(|f| f.edge == site.e2).ok_or_else(stale)?;
    if site.e1 == site.e2 {
        return Err(stale());
    }
    let o = &sd.diagram;
    let mut crossings = o.crossings.clone();
    let m = o.edge_count();
    let (x1, m1, z1) = (site.e1, m, m + 1);
    let (x2, m2, z2) = (site.e2, m + 2, m + 3);
    let h1 = o.head[site.e1];
    let h2 = o.head[site.e2];
    crossings[h1.0][h1.1] = z1;
    crossings[h2.0][h2.1] = z2;
    // With the face on the left of both boundary arcs, e1 is drawn along
    // the bottom of the face and e2 along the top; the finger rises from
    // e1, crosses e2 twice and returns.
    let pair = match (fa.agrees, fb.agrees) {
        (true, true) => [[m2, m1, z2, x1], [x2, m1, m2, z1]],
        (false, false) => [[m2, x1, z2, m1], [x2, z1, m2, m1]],
        (true, false) => [[x2, x1, m2, m1], [m2, z1, z2, m1]],
        (false, true) => [[x2, m1, m2, x1], [m2, m1, z2, z1]],
    };
    crossings.extend(pair);
    // relabel along the orientation
    Ok(KnotDiagram { crossings }.orient()?.to_diagram())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(s: &str) -> KnotDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn trefoil_is_coherent() {
        let sd = seifert_smooth(&pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")).unwrap();
        assert_eq!(sd.n(), 2);
        assert_eq!(sd.ties.len(), 3);
        assert!(sd.ties.iter().all(|t| t.sign == Sign::Neg));
        assert_eq!(find_vogel_site(&sd), None);
    }

    #[test]
    fn standard_figure_eight_is_already_coherent() {
        let sd = seifert_smooth(&pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]")).unwrap();
        assert_eq!(sd.n(), 3);
        assert_eq!(sd.incoherent_pairs(), 0);
        assert_eq!(find_vogel_site(&sd), None);
    }

    #[test]
    fn kinked_trefoil_needs_a_move() {
        let d = pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
            .with_kink(0, true, true)
            .unwrap();
        let sd = seifert_smooth(&d).unwrap();
        assert_eq!(sd.n(), 3);
        let site = find_vogel_site(&sd).expect("the kink circle sits on the wrong side");
        let sd2 = seifert_smooth(&vogel_move(&sd, site).unwrap()).unwrap();
        assert_eq!(sd2.n(), 3);
        assert!(sd2.incoherent_pairs() < sd.incoherent_pairs());
        assert_eq!(sd2.diagram.writhe(), sd.diagram.writhe());
    }
}
