//! Edge-labeled subshifts of finite type over a finite group.
//!
//! A closed path in the transition graph is a periodic orbit; its holonomy
//! is the product of edge labels along one period, and its Frobenius class
//! is the conjugacy class of the holonomy (independent of the starting edge).
//! Primitive orbits are enumerated once each, as their Lyndon rotation, in
//! order of (length, edge sequence).

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freewords::{GroupHom, Word, WordError};
use crate::permgroup::{ConjugacyClass, CycleType, FiniteGroup};

/// Default cap on `state_count × |G|` for [`exact_counts`].
pub const DEFAULT_DP_CAP: usize = 65536;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SftError {
    #[error("a subshift needs at least one edge")]
    NoEdges,
    #[error("edge {edge} references state {state}, but there are {states} states")]
    StateOutOfRange { edge: usize, state: usize, states: usize },
    #[error("edge {edge} label: {source}")]
    Label { edge: usize, source: WordError },
    #[error("homomorphism is not surjective onto its target (image order {image}, target order {target})")]
    NotSurjective { image: usize, target: usize },
    #[error("no periodic orbits up to the requested length")]
    NoOrbits,
    #[error("state count × group order = {size} exceeds cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("length must be at least 1")]
    ZeroLength,
    #[error("invalid subshift file: {0}")]
    File(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftEdge {
    pub from: usize,
    pub to: usize,
    pub label: Word,
}

/// A finite directed graph whose edges carry words resolved into a finite
/// group through a homomorphism.
#[derive(Clone, Debug)]
pub struct LabeledSFT {
    state_count: usize,
    edges: Vec<SftEdge>,
    hom: GroupHom,
    edge_elements: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    classes: Vec<ConjugacyClass>,
    class_map: Vec<usize>,
}

impl LabeledSFT {
    pub fn new(state_count: usize, edges: Vec<SftEdge>, hom: GroupHom) -> Result<Self, SftError> {
        if edges.is_empty() {
            return Err(SftError::NoEdges);
        }
        let mut out_edges = vec![Vec::new(); state_count];
        let mut edge_elements = Vec::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            for s in [e.from, e.to] {
                if s >= state_count {
                    return Err(SftError::StateOutOfRange {
                        edge: i,
                        state: s,
                        states: state_count,
                    });
                }
            }
            out_edges[e.from].push(i);
            edge_elements.push(
                hom.evaluate(&e.label)
                    .map_err(|source| SftError::Label { edge: i, source })?,
            );
        }
        let classes = hom.target().conjugacy_classes();
        let class_map = hom.target().class_map(&classes);
        Ok(LabeledSFT {
            state_count,
            edges,
            hom,
            edge_elements,
            out_edges,
            classes,
            class_map,
        })
    }

    /// Parses the JSON subshift format against an already-built homomorphism.
    pub fn from_json(text: &str, hom: GroupHom) -> Result<Self, SftError> {
        let file: SftFile = serde_json::from_str(text).map_err(|e| SftError::File(e.to_string()))?;
        file.build(hom)
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn edges(&self) -> &[SftEdge] {
        &self.edges
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.hom.target()
    }

    /// Group element of each edge label.
    pub fn edge_elements(&self) -> &[usize] {
        &self.edge_elements
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_map[element]
    }

    fn holonomy(&self, path: &[usize]) -> usize {
        self.group()
            .product(path.iter().map(|&e| self.edge_elements[e]))
    }
}

/// `{ "states": n, "edges": [{"from": 0, "to": 1, "label": "x1"}, …] }`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SftFile {
    pub states: usize,
    pub edges: Vec<SftFileEdge>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SftFileEdge {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

impl SftFile {
    pub fn build(&self, hom: GroupHom) -> Result<LabeledSFT, SftError> {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                Ok(SftEdge {
                    from: e.from,
                    to: e.to,
                    label: Word::parse(&e.label).map_err(|source| SftError::Label { edge: i, source })?,
                })
            })
            .collect::<Result<Vec<_>, SftError>>()?;
        LabeledSFT::new(self.states, edges, hom)
    }
}

/// A primitive periodic orbit in its canonical (Lyndon) rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub edges: Vec<usize>,
    pub holonomy: usize,
    pub class: usize,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn order_key(&self) -> (usize, &[usize]) {
        (self.edges.len(), &self.edges)
    }
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    /// `None` at the root, where candidates are the allowed first edges.
    state: Option<usize>,
    cursor: usize,
}

/// Streaming depth-first enumeration of primitive orbits.
pub struct OrbitIter<'a> {
    sft: &'a LabeledSFT,
    max_len: usize,
    len: usize,
    first_edges: Vec<usize>,
    frames: Vec<Frame>,
    path: Vec<usize>,
    periods: Vec<usize>,
}

impl<'a> OrbitIter<'a> {
    fn new(sft: &'a LabeledSFT, max_len: usize, first_edges: Vec<usize>) -> Self {
        OrbitIter {
            sft,
            max_len,
            len: 1,
            first_edges,
            frames: vec![Frame { state: None, cursor: 0 }],
            path: Vec::new(),
            periods: Vec::new(),
        }
    }

    fn candidates(&self, frame: Frame) -> &[usize] {
        match frame.state {
            None => &self.first_edges,
            Some(s) => &self.sft.out_edges[s],
        }
    }

    /// Next Lyndon closed path of the current length, if any remain.
    fn advance(&mut self) -> Option<Vec<usize>> {
        loop {
            let frame = *self.frames.last()?;
            let cands = self.candidates(frame);
            if frame.cursor >= cands.len() {
                self.frames.pop();
                self.path.pop();
                self.periods.pop();
                continue;
            }
            let c = cands[frame.cursor];
            self.frames.last_mut().expect("frame present").cursor += 1;
            let t = self.path.len();
            // pre-necklace test: only prefixes of Lyndon words survive
            let period = if t == 0 {
                1
            } else {
                let p = self.periods[t - 1];
                let a = self.path[t - p];
                match c.cmp(&a) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => p,
                    std::cmp::Ordering::Greater => t + 1,
                }
            };
            if t + 1 == self.len {
                let first = self.path.first().copied().unwrap_or(c);
                let closes = self.sft.edges[c].to == self.sft.edges[first].from;
                if closes && period == self.len {
                    let mut out = self.path.clone();
                    out.push(c);
                    return Some(out);
                }
                continue;
            }
            self.path.push(c);
            self.periods.push(period);
            self.frames.push(Frame {
                state: Some(self.sft.edges[c].to),
                cursor: 0,
            });
        }
    }
}

impl Iterator for OrbitIter<'_> {
    type Item = Orbit;

    fn next(&mut self) -> Option<Orbit> {
        while self.len <= self.max_len {
            if let Some(edges) = self.advance() {
                let holonomy = self.sft.holonomy(&edges);
                return Some(Orbit {
                    class: self.sft.class_of(holonomy),
                    edges,
                    holonomy,
                });
            }
            self.len += 1;
            self.frames = vec![Frame { state: None, cursor: 0 }];
            self.path.clear();
            self.periods.clear();
        }
        None
    }
}

/// All primitive orbits of length `1..=max_len`, streamed in
/// (length, canonical edge sequence) order.
pub fn enumerate_orbits(sft: &LabeledSFT, max_len: usize) -> OrbitIter<'_> {
    OrbitIter::new(sft, max_len, (0..sft.edges.len()).collect())
}

/// Same orbits as [`enumerate_orbits`], partitioned by first edge across
/// `workers` threads and merged back into canonical order.
pub fn enumerate_orbits_parallel(sft: &LabeledSFT, max_len: usize, workers: usize) -> Vec<Orbit> {
    if workers <= 1 {
        return enumerate_orbits(sft, max_len).collect();
    }
    let firsts: Vec<usize> = (0..sft.edges.len()).collect();
    let mut orbits: Vec<Orbit> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let part: Vec<usize> = firsts.iter().copied().skip(w).step_by(workers).collect();
                scope.spawn(move || OrbitIter::new(sft, max_len, part).collect::<Vec<_>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("enumeration worker"))
            .collect()
    });
    orbits.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
    orbits
}

/// Closed paths of length exactly `n` (based, not up to rotation), counted
/// per conjugacy class of their label product, by dynamic programming over
/// (state, group element) pairs.
pub fn exact_counts(sft: &LabeledSFT, n: usize, cap: usize) -> Result<Vec<u128>, SftError> {
    if n == 0 {
        return Err(SftError::ZeroLength);
    }
    let g = sft.group();
    let order = g.order();
    let size = sft.state_count * order;
    if size > cap {
        return Err(SftError::CapExceeded { size, cap });
    }
    let mut counts = vec![0u128; sft.classes.len()];
    for start in 0..sft.state_count {
        let mut cur = vec![0u128; size];
        cur[start * order + g.identity()] = 1;
        for _ in 0..n {
            let mut next = vec![0u128; size];
            for u in 0..sft.state_count {
                for x in 0..order {
                    let c = cur[u * order + x];
                    if c == 0 {
                        continue;
                    }
                    for &e in &sft.out_edges[u] {
                        let y = g.mul(x, sft.edge_elements[e]);
                        next[sft.edges[e].to * order + y] += c;
                    }
                }
            }
            cur = next;
        }
        for x in 0..order {
            counts[sft.class_map[x]] += cur[start * order + x];
        }
    }
    Ok(counts)
}

/// Enumeration side of the orbit/closed-path conservation identity:
/// `Σ_{d|n} Σ_{|o|=d} d·[hol(o)^{n/d} ∈ C]` for every class `C`.
pub fn orbit_power_counts(sft: &LabeledSFT, orbits: &[Orbit], n: usize) -> Vec<u128> {
    let g = sft.group();
    let mut counts = vec![0u128; sft.classes.len()];
    for o in orbits.iter().filter(|o| !o.is_empty() && n.is_multiple_of(o.len())) {
        let d = o.len();
        let x = g.pow(o.holonomy, (n / d) as u64);
        counts[sft.class_map[x]] += d as u128;
    }
    counts
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationReport {
    pub target_order: usize,
    /// Order of the group generated by holonomies of a cycle basis.
    pub holonomy_order: usize,
    pub irreducible: bool,
    /// Gcd of cycle lengths (0 when there is no cycle through state 0).
    pub period: usize,
    pub bound: usize,
    /// First orbit attaining each class, aligned with `LabeledSFT::classes`.
    pub witnesses: Vec<Option<Orbit>>,
}

impl RealizationReport {
    pub fn holonomy_full(&self) -> bool {
        self.holonomy_order == self.target_order
    }

    pub fn all_classes_attained(&self) -> bool {
        self.witnesses.iter().all(Option::is_some)
    }

    pub fn passed(&self) -> bool {
        self.holonomy_full() && self.irreducible && self.period == 1 && self.all_classes_attained()
    }

    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.holonomy_full() {
            out.push(format!(
                "holonomy group has order {} but the target has order {}",
                self.holonomy_order, self.target_order
            ));
        }
        if !self.irreducible {
            out.push("transition graph is not strongly connected".into());
        }
        if self.irreducible && self.period != 1 {
            out.push(format!("transition graph has period {}", self.period));
        }
        let missing = self.witnesses.iter().filter(|w| w.is_none()).count();
        if missing > 0 {
            out.push(format!(
                "{missing} conjugacy class(es) not attained by any orbit of length <= {}",
                self.bound
            ));
        }
        out
    }
}

fn reachable(n: usize, adj: &[Vec<usize>], from: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Checks that the holonomy of the transition graph is the whole target,
/// that the graph is irreducible and aperiodic, and that every conjugacy
/// class is the Frobenius class of some orbit of length at most `bound`.
pub fn realization_check(sft: &LabeledSFT, bound: usize) -> RealizationReport {
    let g = sft.group();
    let n = sft.state_count;

    // spanning tree over the underlying undirected graph from state 0
    let mut incident: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (i, e) in sft.edges.iter().enumerate() {
        incident[e.from].push((i, true));
        incident[e.to].push((i, false));
    }
    let mut path_elem: Vec<Option<usize>> = vec![None; n];
    let mut tree_edge = vec![false; sft.edges.len()];
    path_elem[0] = Some(g.identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let pu = path_elem[u].expect("queued state has a path");
        for &(i, forward) in &incident[u] {
            let e = &sft.edges[i];
            let (v, step) = if forward {
                (e.to, sft.edge_elements[i])
            } else {
                (e.from, g.inv(sft.edge_elements[i]))
            };
            if path_elem[v].is_none() {
                path_elem[v] = Some(g.mul(pu, step));
                tree_edge[i] = true;
                queue.push_back(v);
            }
        }
    }
    let cycle_elems: Vec<usize> = sft
        .edges
        .iter()
        .enumerate()
        .filter(|(i, _)| !tree_edge[*i])
        .filter_map(|(i, e)| {
            let pu = path_elem[e.from]?;
            let pv = path_elem[e.to]?;
            Some(g.mul(g.mul(pu, sft.edge_elements[i]), g.inv(pv)))
        })
        .collect();
    let holonomy_order = g.subgroup_generated(&cycle_elems).order();

    let fwd: Vec<Vec<usize>> = sft
        .out_edges
        .iter()
        .map(|es| es.iter().map(|&e| sft.edges[e].to).collect())
        .collect();
    let mut bwd: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in &sft.edges {
        bwd[e.to].push(e.from);
    }
    let irreducible =
        reachable(n, &fwd, 0).iter().all(|&b| b) && reachable(n, &bwd, 0).iter().all(|&b| b);

    // period: gcd of level differences along edges within the reachable part
    let mut level: Vec<Option<usize>> = vec![None; n];
    level[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &v in &fwd[u] {
            if level[v].is_none() {
                level[v] = Some(level[u].expect("queued") + 1);
                queue.push_back(v);
            }
        }
    }
    let period = sft
        .edges
        .iter()
        .filter_map(|e| Some((level[e.from]? + 1).abs_diff(level[e.to]?)))
        .fold(0usize, |acc, d| acc.gcd(&d));

    let mut witnesses: Vec<Option<Orbit>> = vec![None; sft.classes.len()];
    let mut missing = witnesses.len();
    for orbit in enumerate_orbits(sft, bound) {
        let class = orbit.class;
        if witnesses[class].is_none() {
            witnesses[class] = Some(orbit);
            missing -= 1;
            if missing == 0 {
                break;
            }
        }
    }

    RealizationReport {
        target_order: g.order(),
        holonomy_order,
        irreducible,
        period,
        bound,
        witnesses,
    }
}

/// One row of a density table: orbits of length `≤ cutoff` falling into
/// a class (or aggregated type), against the target proportion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityRow {
    pub cutoff: usize,
    pub key: String,
    pub count: u64,
    pub total: u64,
    pub target: Ratio<i128>,
}

impl DensityRow {
    pub fn density(&self) -> Ratio<i128> {
        Ratio::new(self.count as i128, self.total as i128)
    }

    pub fn deviation(&self) -> Ratio<i128> {
        (self.density() - self.target).abs()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub skipped: usize,
    /// Cutoffs with at least one counted orbit.
    pub cutoffs: Vec<usize>,
    pub class_rows: Vec<DensityRow>,
    pub type_rows: Vec<DensityRow>,
}

impl DensityReport {
    /// Builds per-class and per-type rows. `class_type` assigns the cycle
    /// type a class is aggregated under.
    pub fn from_orbits(
        sft: &LabeledSFT,
        orbits: &[Orbit],
        max_len: usize,
        skip: usize,
        class_type: &dyn Fn(usize) -> CycleType,
    ) -> Self {
        let order = sft.group().order() as i128;
        let classes = sft.classes();
        let class_keys: Vec<String> = classes
            .iter()
            .enumerate()
            .map(|(i, c)| format!("C{i} {}", sft.group().element(c.representative)))
            .collect();
        let class_types: Vec<CycleType> = (0..classes.len()).map(class_type).collect();
        let mut type_targets: BTreeMap<CycleType, usize> = BTreeMap::new();
        for (i, c) in classes.iter().enumerate() {
            *type_targets.entry(class_types[i].clone()).or_default() += c.size();
        }

        let mut counts = vec![0u64; classes.len()];
        let mut total = 0u64;
        let mut cutoffs = Vec::new();
        let mut class_rows = Vec::new();
        let mut type_rows = Vec::new();
        let mut it = orbits.iter().skip(skip).peekable();
        for cutoff in 1..=max_len {
            while let Some(o) = it.next_if(|o| o.len() <= cutoff) {
                counts[o.class] += 1;
                total += 1;
            }
            if total == 0 {
                continue;
            }
            cutoffs.push(cutoff);
            for (i, c) in classes.iter().enumerate() {
                class_rows.push(DensityRow {
                    cutoff,
                    key: class_keys[i].clone(),
                    count: counts[i],
                    total,
                    target: Ratio::new(c.size() as i128, order),
                });
            }
            for (ty, &size) in &type_targets {
                let count = (0..classes.len())
                    .filter(|&i| &class_types[i] == ty)
                    .map(|i| counts[i])
                    .sum();
                type_rows.push(DensityRow {
                    cutoff,
                    key: ty.to_string(),
                    count,
                    total,
                    target: Ratio::new(size as i128, order),
                });
            }
        }
        DensityReport {
            skipped: skip,
            cutoffs,
            class_rows,
            type_rows,
        }
    }

    pub fn final_cutoff(&self) -> Option<usize> {
        self.cutoffs.last().copied()
    }

    pub fn rows_at<'a>(&'a self, rows: &'a [DensityRow], cutoff: usize) -> impl Iterator<Item = &'a DensityRow> {
        rows.iter().filter(move |r| r.cutoff == cutoff)
    }
}

/// Empirical Chebotarev densities over the length-ordered orbit prefix at
/// every cutoff up to `max_len`, after dropping the first `skip` orbits.
/// Types aggregate classes by the cycle type of their representative.
pub fn chebotarev_report(
    sft: &LabeledSFT,
    max_len: usize,
    skip: usize,
    workers: usize,
) -> Result<DensityReport, SftError> {
    if max_len == 0 {
        return Err(SftError::ZeroLength);
    }
    let g = sft.group();
    if !sft.hom().is_surjective() {
        return Err(SftError::NotSurjective {
            image: g.subgroup_generated(sft.hom().images()).order(),
            target: g.order(),
        });
    }
    let orbits = enumerate_orbits_parallel(sft, max_len, workers);
    if orbits.len() <= skip {
        return Err(SftError::NoOrbits);
    }
    let classes = sft.classes().to_vec();
    let group = g.clone();
    let ty = move |c: usize| group.element(classes[c].representative).cycle_type();
    Ok(DensityReport::from_orbits(sft, &orbits, max_len, skip, &ty))
}

/// Formats a nonnegative-or-negative rational with `places` decimals,
/// rounding half away from zero.
pub fn format_decimal(r: &Ratio<i128>, places: u32) -> String {
    let scale = 10i128.pow(places);
    let neg = r.is_negative();
    let a = r.abs();
    let scaled = a * Ratio::from_integer(scale);
    let mut int = scaled.to_integer();
    if (scaled - Ratio::from_integer(int)) * Ratio::from_integer(2) >= Ratio::from_integer(1) {
        int += 1;
    }
    let whole = int / scale;
    let frac = int % scale;
    let sign = if neg && !int.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0width$}", width = places as usize)
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::Permutation;

    fn trivial_hom(gens: usize) -> GroupHom {
        let g = Arc::new(FiniteGroup::generate(1, &[]).unwrap());
        GroupHom::free(g.clone(), vec![g.identity(); gens]).unwrap()
    }

    fn z2_hom() -> GroupHom {
        let g = Arc::new(FiniteGroup::from_cycle_strings(2, &["(1 2)"]).unwrap());
        let s = g.index_of(&Permutation::parse(2, "(1 2)").unwrap()).unwrap();
        GroupHom::free(g, vec![s]).unwrap()
    }

    fn edge(from: usize, to: usize, label: &str) -> SftEdge {
        SftEdge {
            from,
            to,
            label: Word::parse(label).unwrap(),
        }
    }

    fn golden(hom: GroupHom) -> LabeledSFT {
        LabeledSFT::new(2, vec![edge(0, 0, "1"), edge(0, 1, "1"), edge(1, 0, "1")], hom).unwrap()
    }

    fn full2_z2() -> LabeledSFT {
        LabeledSFT::new(1, vec![edge(0, 0, "1"), edge(0, 0, "x1")], z2_hom()).unwrap()
    }

    fn counts_by_length(orbits: &[Orbit], max: usize) -> Vec<usize> {
        (1..=max).map(|n| orbits.iter().filter(|o| o.len() == n).count()).collect()
    }

    #[test]
    fn single_loop_has_one_orbit() {
        let s = LabeledSFT::new(1, vec![edge(0, 0, "1")], trivial_hom(0)).unwrap();
        let orbits: Vec<_> = enumerate_orbits(&s, 6).collect();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].edges, vec![0]);
    }

    #[test]
    fn golden_mean_and_full_shift_counts() {
        let s = golden(trivial_hom(0));
        let orbits: Vec<_> = enumerate_orbits(&s, 4).collect();
        assert_eq!(counts_by_length(&orbits, 4), vec![1, 1, 1, 1]);
        let s = full2_z2();
        let orbits: Vec<_> = enumerate_orbits(&s, 3).collect();
        assert_eq!(counts_by_length(&orbits, 3), vec![2, 1, 2]);
        assert_eq!(orbits[2].edges, vec![0, 1]);
    }

    #[test]
    fn exact_count_examples() {
        let s = golden(trivial_hom(0));
        assert_eq!(exact_counts(&s, 1, DEFAULT_DP_CAP).unwrap(), vec![1]);
        assert_eq!(exact_counts(&s, 4, DEFAULT_DP_CAP).unwrap(), vec![7]);
        let s = full2_z2();
        assert_eq!(exact_counts(&s, 2, DEFAULT_DP_CAP).unwrap(), vec![2, 2]);
        assert_eq!(exact_counts(&s, 0, DEFAULT_DP_CAP), Err(SftError::ZeroLength));
        assert!(matches!(exact_counts(&s, 3, 1), Err(SftError::CapExceeded { size: 2, cap: 1 })));
    }

    #[test]
    fn realization_examples() {
        let s = LabeledSFT::new(1, vec![edge(0, 0, "1"), edge(0, 0, "1")], z2_hom()).unwrap();
        let r = realization_check(&s, 6);
        assert!(!r.holonomy_full());
        assert!(!r.passed());

        let s = full2_z2();
        let r = realization_check(&s, 6);
        assert!(r.passed());
        let s_class = s.class_of(s.edge_elements()[1]);
        assert_eq!(r.witnesses[s_class].as_ref().unwrap().len(), 1);

        // a 2-cycle alone has period 2
        let s = LabeledSFT::new(2, vec![edge(0, 1, "x1"), edge(1, 0, "1")], z2_hom()).unwrap();
        let r = realization_check(&s, 4);
        assert!(r.irreducible);
        assert_eq!(r.period, 2);
        assert!(!r.passed());
    }

    #[test]
    fn report_examples() {
        let s = golden(trivial_hom(0));
        let r = chebotarev_report(&s, 5, 0, 1).unwrap();
        assert!(r.class_rows.iter().all(|row| row.density() == Ratio::from_integer(1)));

        let s = full2_z2();
        let r = chebotarev_report(&s, 10, 0, 2).unwrap();
        let last: Vec<_> = r.rows_at(&r.class_rows, 10).collect();
        assert_eq!(last.len(), 2);
        for row in &last {
            assert_eq!(row.target, Ratio::new(1, 2));
            assert!(row.deviation() < Ratio::new(1, 20));
        }

        let bad = LabeledSFT::new(
            1,
            vec![edge(0, 0, "1")],
            GroupHom::free(z2_hom().target().clone(), vec![0]).unwrap(),
        )
        .unwrap();
        assert!(matches!(chebotarev_report(&bad, 3, 0, 1), Err(SftError::NotSurjective { .. })));
        assert_eq!(chebotarev_report(&s, 1, 5, 1), Err(SftError::NoOrbits));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(LabeledSFT::new(1, vec![], trivial_hom(0)), Err(SftError::NoEdges)));
        assert!(matches!(
            LabeledSFT::new(1, vec![edge(0, 1, "1")], trivial_hom(0)),
            Err(SftError::StateOutOfRange { .. })
        ));
        assert!(matches!(
            LabeledSFT::new(1, vec![edge(0, 0, "x2")], trivial_hom(1)),
            Err(SftError::Label { edge: 0, .. })
        ));
        let json = r#"{ "states": 1, "edges": [{"from": 0, "to": 0, "label": "x1"}] }"#;
        assert!(LabeledSFT::from_json(json, z2_hom()).is_ok());
        assert!(matches!(LabeledSFT::from_json("{", z2_hom()), Err(SftError::File(_))));
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(&Ratio::new(1, 3), 6), "0.333333");
        assert_eq!(format_decimal(&Ratio::new(2, 3), 6), "0.666667");
        assert_eq!(format_decimal(&Ratio::new(1, 60), 6), "0.016667");
        assert_eq!(format_decimal(&Ratio::new(-1, 8), 2), "-0.13");
        assert_eq!(format_decimal(&Ratio::from_integer(1), 6), "1.000000");
    }
}
