//! Named tiled surfaces with an explicit rotation system and boundary
//! cycles.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::braid::Sign;

use super::skeleton::{
    BoundaryExtraction, EmbedFailure, EmbedReport, FiberTable, FullFailure, InessentialArc,
    SingType, SkSing, Skeleton,
};
use super::FoliationError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub name: String,
    pub sign: Sign,
    pub axis_rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Endpoint {
    /// A vertex, and the position of this branch in the counterclockwise
    /// order of branch-ends around it.
    Vertex { vertex: usize, vslot: usize },
    /// A point of boundary cycle `cycle`, at `pos` along it.
    Boundary { cycle: usize, pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Singularity {
    pub name: String,
    pub sign: Sign,
    pub theta_rank: usize,
    pub branches: [Endpoint; 4],
}

/// A tiled surface: vertices on the braid axis, singularities in the fiber
/// order, the branch rotation system, and the boundary cycles as sequences
/// of `(singularity, slot)` boundary branch-ends in increasing θ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TiledSurface {
    pub vertices: Vec<Vertex>,
    pub sings: Vec<Singularity>,
    pub boundary: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Branch-ends around every vertex, counterclockwise, as `(sing, slot)`.
type Rotation = Vec<Vec<(usize, usize)>>;

/// Rotation in which θ increases counterclockwise around positive vertices
/// and clockwise around negative ones.
fn theta_rotation(sk: &Skeleton) -> Rotation {
    let mut rot = sk.incidences();
    for (v, ends) in rot.iter_mut().enumerate() {
        if !sk.vsign[v].is_pos() {
            ends.reverse();
        }
    }
    rot
}

/// Traces the complementary regions. Each region holds exactly one corner
/// of a positive vertex; it is either a quadrilateral through a negative
/// vertex or a tile with a boundary segment. Returns the boundary cycles.
fn trace_regions(sk: &Skeleton, rot: &Rotation) -> Result<Vec<Vec<(usize, usize)>>, String> {
    let mut next_point: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    let mut used_neg_corners: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let succ = |v: usize, end: (usize, usize)| -> Option<(usize, usize)> {
        let r = &rot[v];
        r.iter()
            .position(|&e| e == end)
            .map(|i| r[(i + 1) % r.len()])
    };
    for (x, ends) in rot.iter().enumerate() {
        if !sk.vsign[x].is_pos() || ends.is_empty() {
            continue;
        }
        for k in 0..ends.len() {
            let alpha = ends[k];
            let beta = ends[(k + 1) % ends.len()];
            let e1 = (beta.0, (beta.1 + 1) % 4);
            let e2 = (alpha.0, (alpha.1 + 3) % 4);
            match (sk.sings[e1.0].slots[e1.1], sk.sings[e2.0].slots[e2.1]) {
                (None, None) => {
                    if next_point.insert(e2, e1).is_some() {
                        return Err(format!("boundary point {e2:?} starts two segments"));
                    }
                }
                (Some(w1), Some(w2)) if w1 == w2 => {
                    let w = w1 as usize;
                    if succ(w, e1) != Some(e2) {
                        return Err(format!(
                            "quadrilateral at vertex {x} does not close at vertex {w}"
                        ));
                    }
                    if !used_neg_corners.insert((w, e1.0, e1.1)) {
                        return Err(format!("corner of vertex {w} lies in two regions"));
                    }
                }
                _ => {
                    return Err(format!(
                        "region at a corner of vertex {x} is neither a tile nor a quadrilateral"
                    ))
                }
            }
        }
    }
    let neg_corners: usize = rot
        .iter()
        .enumerate()
        .filter(|(v, _)| !sk.vsign[*v].is_pos())
        .map(|(_, e)| e.len())
        .sum();
    if used_neg_corners.len() != neg_corners {
        return Err("some corner of a negative vertex lies in no region".into());
    }
    let points: BTreeSet<(usize, usize)> = sk
        .sings
        .iter()
        .enumerate()
        .flat_map(|(i, s)| {
            (0..4)
                .filter(move |&k| s.slots[k].is_none())
                .map(move |k| (i, k))
        })
        .collect();
    let targets: BTreeSet<(usize, usize)> = next_point.values().copied().collect();
    if next_point.len() != points.len() || targets.len() != points.len() {
        return Err("boundary segments do not pair up the boundary points".into());
    }
    let mut cycles = Vec::new();
    let mut seen = BTreeSet::new();
    for &p in &points {
        if seen.contains(&p) {
            continue;
        }
        let mut cyc = Vec::new();
        let mut q = p;
        while seen.insert(q) {
            cyc.push(q);
            q = next_point[&q];
        }
        if q != p {
            return Err("boundary segments do not close into cycles".into());
        }
        cycles.push(cyc);
    }
    if cycles.is_empty() && sk.v() == 1 && sk.s() == 0 {
        cycles.push(Vec::new());
    }
    Ok(cycles)
}

impl TiledSurface {
    /// Builds the surface determined by a skeleton: rotations follow the θ
    /// order and the boundary cycles are traced from the regions.
    pub fn from_skeleton(sk: &Skeleton) -> Result<TiledSurface, FoliationError> {
        let ranks = sk.positive_ranks();
        let mut neg = 0;
        let names: Vec<String> = sk
            .vsign
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                Sign::Pos => format!("{}", ranks[i].expect("positive")),
                Sign::Neg => {
                    neg += 1;
                    format!("n{neg}")
                }
            })
            .collect();
        let snames: Vec<String> = (1..=sk.s()).map(|i| format!("s{i}")).collect();
        TiledSurface::from_skeleton_named(sk, &names, &snames)
    }

    pub fn from_skeleton_named(
        sk: &Skeleton,
        vnames: &[String],
        snames: &[String],
    ) -> Result<TiledSurface, FoliationError> {
        sk.check_slots()?;
        let rot = theta_rotation(sk);
        let cycles = trace_regions(sk, &rot).map_err(FoliationError::BadRegion)?;
        let mut where_on_boundary = BTreeMap::new();
        for (c, cyc) in cycles.iter().enumerate() {
            for (pos, &p) in cyc.iter().enumerate() {
                where_on_boundary.insert(p, (c, pos));
            }
        }
        let mut vslot = BTreeMap::new();
        for ends in &rot {
            for (i, &e) in ends.iter().enumerate() {
                vslot.insert(e, i);
            }
        }
        let vertices = sk
            .vsign
            .iter()
            .enumerate()
            .map(|(i, &sign)| Vertex {
                name: vnames[i].clone(),
                sign,
                axis_rank: i,
            })
            .collect();
        let sings = sk
            .sings
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let branches = std::array::from_fn(|k| match s.slots[k] {
                    Some(v) => Endpoint::Vertex {
                        vertex: v as usize,
                        vslot: vslot[&(i, k)],
                    },
                    None => {
                        let (cycle, pos) = where_on_boundary[&(i, k)];
                        Endpoint::Boundary { cycle, pos }
                    }
                });
                Singularity {
                    name: snames[i].clone(),
                    sign: s.sign,
                    theta_rank: i,
                    branches,
                }
            })
            .collect();
        Ok(TiledSurface {
            vertices,
            sings,
            boundary: cycles,
        })
    }

    pub fn p(&self) -> usize {
        self.vertices.iter().filter(|v| v.sign.is_pos()).count()
    }

    pub fn n_neg(&self) -> usize {
        self.vertices.len() - self.p()
    }

    pub fn s(&self) -> usize {
        self.sings.len()
    }

    pub fn mu(&self) -> usize {
        self.boundary.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.sings.len() as i64
    }

    pub fn is_disc(&self) -> bool {
        self.mu() == 1 && self.s() + 1 == self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn sing_index(&self, name: &str) -> Option<usize> {
        self.sings.iter().position(|s| s.name == name)
    }

    fn rank_permutation(ranks: impl Iterator<Item = usize>, len: usize) -> Option<Vec<usize>> {
        let mut inv = vec![usize::MAX; len];
        for (i, r) in ranks.enumerate() {
            if r >= len || inv[r] != usize::MAX {
                return None;
            }
            inv[r] = i;
        }
        Some(inv)
    }

    /// Index of the vertex at each axis rank.
    fn vertex_by_rank(&self) -> Option<Vec<usize>> {
        Self::rank_permutation(
            self.vertices.iter().map(|v| v.axis_rank),
            self.vertices.len(),
        )
    }

    /// Index of the singularity at each θ rank.
    fn sing_by_rank(&self) -> Option<Vec<usize>> {
        Self::rank_permutation(self.sings.iter().map(|s| s.theta_rank), self.sings.len())
    }

    /// The rank-indexed core; fails if ranks are not permutations.
    pub fn skeleton(&self) -> Result<Skeleton, FoliationError> {
        let vr = self.vertex_by_rank().ok_or_else(|| {
            FoliationError::Invalid(vec!["axis ranks are not a permutation".into()])
        })?;
        let sr = self.sing_by_rank().ok_or_else(|| {
            FoliationError::Invalid(vec!["theta ranks are not a permutation".into()])
        })?;
        let vsign = vr.iter().map(|&i| self.vertices[i].sign).collect();
        let mut sings = Vec::with_capacity(self.sings.len());
        for &i in &sr {
            let s = &self.sings[i];
            let mut slots = [None; 4];
            for (k, b) in s.branches.iter().enumerate() {
                if let Endpoint::Vertex { vertex, .. } = b {
                    let v = self.vertices.get(*vertex).ok_or_else(|| {
                        FoliationError::Invalid(vec![format!(
                            "singularity {} refers to a missing vertex",
                            s.name
                        )])
                    })?;
                    slots[k] = Some(v.axis_rank as u8);
                }
            }
            sings.push(SkSing {
                sign: s.sign,
                slots,
            });
        }
        Ok(Skeleton { vsign, sings })
    }

    /// Explicit rotation, in rank indices.
    fn rotation(&self, sr_inv: &[usize]) -> Result<Rotation, String> {
        let mut by_vertex: Vec<Vec<(usize, (usize, usize))>> =
            vec![Vec::new(); self.vertices.len()];
        for (i, s) in self.sings.iter().enumerate() {
            for (k, b) in s.branches.iter().enumerate() {
                if let Endpoint::Vertex { vertex, vslot } = b {
                    by_vertex[*vertex].push((*vslot, (sr_inv[i], k)));
                }
            }
        }
        let mut rot = vec![Vec::new(); self.vertices.len()];
        for (v, mut ends) in by_vertex.into_iter().enumerate() {
            ends.sort();
            if ends.iter().enumerate().any(|(i, (slot, _))| *slot != i) {
                return Err(format!(
                    "branch-end slots around vertex {} are not 0..{}",
                    self.vertices[v].name,
                    ends.len()
                ));
            }
            rot[self.vertices[v].axis_rank] = ends.into_iter().map(|(_, e)| e).collect();
        }
        Ok(rot)
    }

    /// Checks every structural rule and lists all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        let (Some(_), Some(sr)) = (self.vertex_by_rank(), self.sing_by_rank()) else {
            out.push("axis ranks or theta ranks are not permutations".into());
            return ValidationReport { violations: out };
        };
        let mut names = BTreeSet::new();
        for v in &self.vertices {
            if !names.insert(&v.name) {
                out.push(format!("duplicate vertex id {}", v.name));
            }
        }
        let mut snames = BTreeSet::new();
        for s in &self.sings {
            if !snames.insert(&s.name) {
                out.push(format!("duplicate singularity id {}", s.name));
            }
        }
        let sk = match self.skeleton() {
            Ok(sk) => sk,
            Err(e) => {
                out.push(e.to_string());
                return ValidationReport { violations: out };
            }
        };
        if let Err(e) = sk.check_slots() {
            out.push(self.describe_error(&e));
        }
        // boundary bookkeeping
        let mut listed = BTreeSet::new();
        for (c, cyc) in self.boundary.iter().enumerate() {
            for (pos, &(si, k)) in cyc.iter().enumerate() {
                match self.sings.get(si).map(|s| s.branches[k]) {
                    Some(Endpoint::Boundary { cycle, pos: p }) if cycle == c && p == pos => {}
                    _ => out.push(format!(
                        "boundary cycle {c} position {pos} does not match its branch"
                    )),
                }
                if !listed.insert((si, k)) {
                    out.push(format!(
                        "boundary point {}.{k} listed twice",
                        self.sings[si].name
                    ));
                }
            }
        }
        for (si, s) in self.sings.iter().enumerate() {
            for (k, b) in s.branches.iter().enumerate() {
                match b {
                    Endpoint::Boundary { .. } if !listed.contains(&(si, k)) => out.push(format!(
                        "boundary branch {}.{k} missing from the boundary cycles",
                        s.name
                    )),
                    Endpoint::Vertex { vertex, .. } if *vertex >= self.vertices.len() => {
                        out.push(format!("branch {}.{k} refers to a missing vertex", s.name))
                    }
                    _ => {}
                }
            }
        }
        if !out.is_empty() {
            return ValidationReport { violations: out };
        }
        let mut sr_inv = vec![0; sr.len()];
        for (rank, &i) in sr.iter().enumerate() {
            sr_inv[i] = rank;
        }
        match self.rotation(&sr_inv) {
            Err(e) => out.push(e),
            Ok(rot) => match trace_regions(&sk, &rot) {
                Err(e) => out.push(e),
                Ok(cycles) => {
                    let normalize =
                        |cycles: Vec<Vec<(usize, usize)>>| -> BTreeSet<Vec<(usize, usize)>> {
                            cycles
                                .into_iter()
                                .map(|mut c| {
                                    if let Some(m) = c
                                        .iter()
                                        .enumerate()
                                        .min_by_key(|(_, p)| **p)
                                        .map(|(i, _)| i)
                                    {
                                        c.rotate_left(m);
                                    }
                                    c
                                })
                                .collect()
                        };
                    let listed: Vec<Vec<(usize, usize)>> = self
                        .boundary
                        .iter()
                        .map(|c| {
                            c.iter()
                                .map(|&(si, k)| (self.sings[si].theta_rank, k))
                                .collect()
                        })
                        .collect();
                    if normalize(cycles) != normalize(listed) {
                        out.push(
                            "boundary cycles are inconsistent with the rotation system".into(),
                        );
                    }
                }
            },
        }
        if !sk.is_connected() {
            out.push("the graph of singular leaves is disconnected".into());
        }
        if self.boundary.is_empty() {
            out.push("a surface needs at least one boundary component".into());
        }
        let chi = self.euler_characteristic();
        let mu = self.mu() as i64;
        if chi > 2 - mu || (2 - mu - chi) % 2 != 0 {
            out.push(format!(
                "Euler characteristic {chi} is impossible with {mu} boundary components"
            ));
        }
        ValidationReport { violations: out }
    }

    pub fn validate_strict(&self) -> Result<Skeleton, FoliationError> {
        let r = self.validate();
        if !r.is_valid() {
            return Err(FoliationError::Invalid(r.violations));
        }
        self.skeleton()
    }

    /// Name of the vertex at an axis rank.
    pub fn vertex_name(&self, rank: usize) -> &str {
        self.vertices
            .iter()
            .find(|v| v.axis_rank == rank)
            .map(|v| v.name.as_str())
            .unwrap_or("?")
    }

    /// Name of the singularity at a θ rank.
    pub fn sing_name(&self, rank: usize) -> &str {
        self.sings
            .iter()
            .find(|s| s.theta_rank == rank)
            .map(|s| s.name.as_str())
            .unwrap_or("?")
    }

    pub fn describe_error(&self, e: &FoliationError) -> String {
        match e {
            FoliationError::BadSlot { sing, slot, reason } => {
                format!(
                    "singularity {}, slot {slot}: {reason}",
                    self.sing_name(*sing)
                )
            }
            FoliationError::IsolatedNegative { vertex } => {
                format!(
                    "negative vertex {} has no b-arc partner",
                    self.vertex_name(*vertex)
                )
            }
            FoliationError::NonPeriodic { vertex, sing } => format!(
                "partners of negative vertex {} do not close up at singularity {}",
                self.vertex_name(*vertex),
                self.sing_name(*sing)
            ),
            FoliationError::PartnerCollision { end, vertex } => format!(
                "positive vertex {} carries two b-arcs before singularity {}",
                self.vertex_name(*vertex),
                self.sing_name(*end)
            ),
            FoliationError::BusyCorner { sing, vertex } => format!(
                "corner vertex {} of singularity {} is not free just before it",
                self.vertex_name(*vertex),
                self.sing_name(*sing)
            ),
            other => other.to_string(),
        }
    }

    pub fn singularity_type(&self, name: &str) -> Option<SingType> {
        let i = self.sing_index(name)?;
        let s = &self.sings[i];
        let boundary = [1, 3]
            .iter()
            .filter(|&&k| matches!(s.branches[k], Endpoint::Boundary { .. }))
            .count();
        Some(match boundary {
            2 => SingType::AA,
            1 => SingType::AB,
            _ => SingType::BB,
        })
    }

    pub fn braid_index(&self) -> Result<usize, FoliationError> {
        let (p, n) = (self.p(), self.n_neg());
        if p <= n {
            return Err(FoliationError::NonPositiveBraidIndex { p, n });
        }
        Ok(p - n)
    }

    pub fn fiber_table(&self) -> Result<FiberTable, FoliationError> {
        self.skeleton()?.fiber_table()
    }

    /// Test (i): θ order around every vertex matches its rotation.
    pub fn rotation_failures(&self) -> Vec<usize> {
        let mut by_vertex: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.vertices.len()];
        for s in &self.sings {
            for b in &s.branches {
                if let Endpoint::Vertex { vertex, vslot } = b {
                    if let Some(list) = by_vertex.get_mut(*vertex) {
                        list.push((*vslot, s.theta_rank));
                    }
                }
            }
        }
        let mut out = Vec::new();
        for (v, mut list) in by_vertex.into_iter().enumerate() {
            list.sort();
            let thetas: Vec<usize> = list.into_iter().map(|(_, t)| t).collect();
            if thetas.len() < 3 {
                continue;
            }
            let asc = self.vertices[v].sign.is_pos();
            let descents = (0..thetas.len())
                .filter(|&i| thetas[i] > thetas[(i + 1) % thetas.len()])
                .count();
            let ok = if asc {
                descents == 1
            } else {
                thetas.len() - descents == 1
            };
            if !ok {
                out.push(self.vertices[v].axis_rank);
            }
        }
        out
    }

    /// Tests (i), (ii), (iii); reports every failing test with a witness.
    pub fn embeddability_test(&self) -> Result<EmbedReport<EmbedFailure>, FoliationError> {
        let sk = self.skeleton()?;
        let mut report = sk.embeddability()?;
        let mut failures: Vec<EmbedFailure> = self
            .rotation_failures()
            .into_iter()
            .map(|vertex| EmbedFailure::RotationOrder { vertex })
            .collect();
        failures.append(&mut report.failures);
        Ok(EmbedReport { failures })
    }

    /// Tests (1)–(6) of the long-form criterion.
    pub fn embeddability_test_full(&self) -> Result<EmbedReport<FullFailure>, FoliationError> {
        let sk = self.skeleton()?;
        let table = sk.fiber_table()?;
        let mut failures: Vec<FullFailure> = Vec::new();
        // (1), by a sort-and-compare formulation
        for (v, ends) in self.incident_thetas().into_iter().enumerate() {
            if ends.len() < 3 {
                continue;
            }
            let mut sorted = ends.clone();
            sorted.sort_unstable();
            if !self.vertices[v].sign.is_pos() {
                sorted.reverse();
            }
            let ok = (0..ends.len()).any(|r| {
                ends.iter()
                    .cycle()
                    .skip(r)
                    .take(ends.len())
                    .eq(sorted.iter())
            });
            if !ok {
                failures.push(FullFailure::RotationOrder {
                    vertex: self.vertices[v].axis_rank,
                });
            }
        }
        failures.extend(sk.full_failures(&table));
        Ok(EmbedReport { failures })
    }

    fn incident_thetas(&self) -> Vec<Vec<usize>> {
        let mut by_vertex: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); self.vertices.len()];
        for s in &self.sings {
            for b in &s.branches {
                if let Endpoint::Vertex { vertex, vslot } = b {
                    if let Some(m) = by_vertex.get_mut(*vertex) {
                        m.insert(*vslot, s.theta_rank);
                    }
                }
            }
        }
        by_vertex
            .into_iter()
            .map(|m| m.into_values().collect())
            .collect()
    }

    /// First b-arc whose endpoints are neighbours on the axis, as
    /// `(interval end, (positive, negative))` ranks.
    pub fn essentiality_test(&self) -> Result<Option<InessentialArc>, FoliationError> {
        let sk = self.skeleton()?;
        let table = sk.fiber_table()?;
        Ok(sk.essentiality_failure(&table))
    }

    pub fn extended_boundary_word(&self) -> Result<crate::braid::BraidWord, FoliationError> {
        Ok(self.skeleton()?.extended_boundary_word())
    }

    pub fn boundary_word(&self) -> Result<BoundaryExtraction, FoliationError> {
        self.skeleton()?.boundary_word()
    }

    pub fn ab_stabilize(&self, sing: &str) -> Result<TiledSurface, FoliationError> {
        let i = self
            .sing_index(sing)
            .ok_or_else(|| FoliationError::Precondition(format!("no singularity {sing}")))?;
        let old = self.skeleton()?;
        let t = self.sings[i].theta_rank;
        let sk = old.ab_stabilize(t)?;
        let slots = old.sings[t].slots;
        let w = slots[1].or(slots[3]).map(|w| w as usize);
        self.rebuild_named(&sk, Some(t), w)
    }

    pub fn aa_destabilize(&self, vertex: &str) -> Result<TiledSurface, FoliationError> {
        let v = self
            .vertex_index(vertex)
            .ok_or_else(|| FoliationError::Precondition(format!("no vertex {vertex}")))?;
        let old = self.skeleton()?;
        let rank = self.vertices[v].axis_rank;
        let sk = old.aa_destabilize(rank)?;
        let t = old.incidences()[rank][0].0;
        self.rebuild_named(&sk, Some(t), Some(rank))
    }

    /// Rebuilds from a skeleton obtained by deleting one singularity and one
    /// vertex (given by rank), keeping the surviving names.
    fn rebuild_named(
        &self,
        sk: &Skeleton,
        removed_sing: Option<usize>,
        removed_vertex: Option<usize>,
    ) -> Result<TiledSurface, FoliationError> {
        let vnames: Vec<String> = (0..self.vertices.len())
            .filter(|&r| Some(r) != removed_vertex)
            .map(|r| self.vertex_name(r).to_string())
            .collect();
        let snames: Vec<String> = (0..self.sings.len())
            .filter(|&t| Some(t) != removed_sing)
            .map(|t| self.sing_name(t).to_string())
            .collect();
        TiledSurface::from_skeleton_named(sk, &vnames, &snames)
    }
}
