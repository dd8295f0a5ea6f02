//! Finite covers of a wedge of circles realized as coset graphs, lifting of
//! loops, and brute-force checks that decomposition types agree with cycle
//! types of the monodromy permutation and that degree-one components behave
//! as the component-bijection lemma predicts.
//!
//! Vertices of a cover are the right cosets `Hx` of a subgroup `H` of the
//! target group; vertex 0 is `H` itself. The edge of generator `k` leaving
//! `Hx` ends at `Hx·g_k`, which is the endpoint of the lifted loop. The
//! monodromy permutation of `g` (see [`coset_action`]) is the inverse of this
//! vertex map, so both have the same cycle type.

use std::collections::VecDeque;
use std::sync::Arc;

use thiserror::Error;

use crate::freewords::{cyclic_reduce, CyclicWord, GroupHom, Letter, Word, WordError};
use crate::permgroup::{coset_action, CycleType, FiniteGroup, PermError, Permutation, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("the empty word does not represent a knot class")]
    EmptyWord,
    #[error("generator x{generator} out of range (cover has {count} generators)")]
    GeneratorOutOfRange { generator: usize, count: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A finite cover of the wedge of `base_generator_count` circles.
#[derive(Clone, Debug)]
pub struct CoveringGraph {
    edges: Vec<Permutation>,
    inverse_edges: Vec<Permutation>,
    coset_reps: Vec<usize>,
}

/// Builds the cover whose vertices are the right cosets of `sub` in the
/// target of `hom`, numbered breadth-first from `H` over the generator
/// images in order. Cosets unreachable from `H` (when the image of `hom`
/// is not transitive) are appended in element order.
pub fn build_cover(hom: &GroupHom, sub: &Subgroup) -> Result<CoveringGraph, CoverError> {
    let g = hom.target();
    let sub = Subgroup::new(g, sub.members().to_vec())?;
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    let assign = |rep: usize, coset_of: &mut Vec<usize>, reps: &mut Vec<usize>| {
        let c = reps.len();
        reps.push(rep);
        for &h in sub.members() {
            coset_of[g.mul(h, rep)] = c;
        }
    };
    let mut queue = VecDeque::new();
    for seed in std::iter::once(g.identity()).chain(0..n) {
        if coset_of[seed] != usize::MAX {
            continue;
        }
        assign(seed, &mut coset_of, &mut reps);
        queue.push_back(reps.len() - 1);
        while let Some(c) = queue.pop_front() {
            for &img in hom.images() {
                let y = g.mul(reps[c], img);
                if coset_of[y] == usize::MAX {
                    assign(y, &mut coset_of, &mut reps);
                    queue.push_back(reps.len() - 1);
                }
            }
        }
    }
    let edges: Vec<Permutation> = hom
        .images()
        .iter()
        .map(|&img| {
            let images = reps.iter().map(|&x| coset_of[g.mul(x, img)]).collect();
            Permutation::from_images(images).expect("right multiplication permutes cosets")
        })
        .collect();
    let inverse_edges = edges.iter().map(Permutation::inverse).collect();
    Ok(CoveringGraph {
        edges,
        inverse_edges,
        coset_reps: reps,
    })
}

impl CoveringGraph {
    /// Builds a cover directly from one vertex permutation per generator.
    pub fn from_edge_maps(edges: Vec<Permutation>) -> Result<Self, CoverError> {
        let degree = edges.first().map_or(1, Permutation::degree);
        if let Some(e) = edges.iter().find(|e| e.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, e.degree()).into());
        }
        let inverse_edges = edges.iter().map(Permutation::inverse).collect();
        Ok(CoveringGraph {
            edges,
            inverse_edges,
            coset_reps: Vec::new(),
        })
    }

    pub fn base_generator_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.edges
            .first()
            .map_or(self.coset_reps.len().max(1), Permutation::degree)
    }

    /// Vertex map of generator `k`: `v ↦ v·g_k`.
    pub fn edge_map(&self, k: usize) -> &Permutation {
        &self.edges[k]
    }

    /// Group element `x` with vertex `v = Hx`, when built from a homomorphism.
    pub fn coset_representative(&self, v: usize) -> Option<usize> {
        self.coset_reps.get(v).copied()
    }

    fn step(&self, v: usize, l: Letter) -> Result<usize, CoverError> {
        let maps = if l.is_inverse() {
            &self.inverse_edges
        } else {
            &self.edges
        };
        maps.get(l.generator())
            .map(|p| p.apply(v))
            .ok_or(CoverError::GeneratorOutOfRange {
                generator: l.generator() + 1,
                count: self.edges.len(),
            })
    }

    /// Endpoint of the lift of `letters` starting at `v`.
    pub fn lift_endpoint(&self, v: usize, letters: &[Letter]) -> Result<usize, CoverError> {
        letters.iter().try_fold(v, |x, &l| self.step(x, l))
    }

    /// Breadth-first spanning tree from vertex 0: a path word to every vertex
    /// reachable from the basepoint.
    pub fn path_words(&self) -> Vec<Option<Word>> {
        let n = self.vertex_count();
        let mut paths: Vec<Option<Word>> = vec![None; n];
        paths[0] = Some(Word::empty());
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let here = paths[v].clone().expect("queued vertices have paths");
            for k in 0..self.edges.len() {
                for l in [Letter::new(k, false), Letter::new(k, true)] {
                    let u = self.step(v, l).expect("generator in range");
                    if paths[u].is_none() {
                        paths[u] = Some(here.concat(&Word::reduce([l])));
                        queue.push_back(u);
                    }
                }
            }
        }
        paths
    }
}

/// One connected component of the preimage of a loop: the basepoint-fiber
/// vertices it passes through and its covering degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftComponent {
    pub vertices: Vec<usize>,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftResult {
    /// Ordered by least contained vertex.
    pub components: Vec<LiftComponent>,
    pub decomposition_type: CycleType,
}

fn lift_components(cover: &CoveringGraph, letters: &[Letter]) -> Result<LiftResult, CoverError> {
    let n = cover.vertex_count();
    let len = letters.len();
    let mut visited = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut vertices = vec![start];
        visited[start] = true;
        let mut v = start;
        let mut steps = 0usize;
        loop {
            for &l in letters {
                v = cover.step(v, l)?;
                steps += 1;
            }
            if len == 0 {
                steps = 1;
            }
            if v == start {
                break;
            }
            visited[v] = true;
            vertices.push(v);
        }
        vertices.sort_unstable();
        components.push(LiftComponent {
            vertices,
            degree: steps / len.max(1),
        });
    }
    let decomposition_type = CycleType::from_parts(components.iter().map(|c| c.degree).collect());
    Ok(LiftResult {
        components,
        decomposition_type,
    })
}

/// Lifts the loop `w` from every fiber vertex and groups the fiber into the
/// components of its preimage. A component's degree is the number of
/// letter steps until the lift first closes up, divided by `|w|`.
pub fn decompose_loop(cover: &CoveringGraph, w: &CyclicWord) -> Result<LiftResult, CoverError> {
    if w.is_empty() {
        return Err(CoverError::EmptyWord);
    }
    lift_components(cover, w.letters())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinMismatch {
    pub element: usize,
    pub word: Word,
    pub decomposition_type: CycleType,
    pub monodromy_type: CycleType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub index: usize,
    pub checked: usize,
    pub mismatches: Vec<ArtinMismatch>,
}

impl ArtinReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Shortest positive words in the group's generators for every element,
/// from a breadth-first Schreier tree.
pub fn element_words(g: &FiniteGroup) -> Vec<Word> {
    let mut words: Vec<Option<Word>> = vec![None; g.order()];
    words[g.identity()] = Some(Word::empty());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        let here = words[x].clone().expect("queued elements have words");
        for (k, &gen) in g.generators().iter().enumerate() {
            let y = g.mul(x, gen);
            if words[y].is_none() {
                words[y] = Some(here.concat(&Word::generator(k)));
                queue.push_back(y);
            }
        }
    }
    words
        .into_iter()
        .map(|w| w.expect("generators generate the group"))
        .collect()
}

/// For every element `z`, compares the decomposition type of a loop
/// representing `z` in the coset-graph cover with the cycle type of the
/// monodromy permutation of `z`.
pub fn verify_artin(g: &Arc<FiniteGroup>, sub: &Subgroup) -> Result<ArtinReport, CoverError> {
    let hom = GroupHom::free(g.clone(), g.generators().to_vec())?;
    let cover = build_cover(&hom, sub)?;
    let action = coset_action(g, sub)?;
    let words = element_words(g);
    let mut mismatches = Vec::new();
    for (z, word) in words.iter().enumerate() {
        let graph = lift_components(&cover, word.letters())?.decomposition_type;
        let mono = action.image(z).cycle_type();
        if graph != mono {
            mismatches.push(ArtinMismatch {
                element: z,
                word: word.clone(),
                decomposition_type: graph,
                monodromy_type: mono,
            });
        }
    }
    Ok(ArtinReport {
        group_order: g.order(),
        subgroup_order: sub.order(),
        index: action.index(),
        checked: words.len(),
        mismatches,
    })
}

/// Direction (1) for one degree-one component at fiber vertex `vertex`:
/// the loop `γ·w·γ⁻¹` through that vertex lifts to a closed loop at the
/// basepoint, and its image lies in both `[z]` and `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeOneCheck {
    pub vertex: usize,
    pub based_loop: Word,
    pub holonomy: usize,
    pub lift_closed: bool,
    pub in_class: bool,
    pub in_subgroup: bool,
}

impl DegreeOneCheck {
    pub fn ok(&self) -> bool {
        self.lift_closed && self.in_class && self.in_subgroup
    }
}

/// Direction (2) for one conjugate `k` of `z` lying in `H`: a degree-one
/// component whose based holonomy is `H`-conjugate to `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateWitness {
    pub element: usize,
    pub component_vertex: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub image: usize,
    pub lift: LiftResult,
    pub degree_one: Vec<DegreeOneCheck>,
    pub conjugates_in_subgroup: Vec<ConjugateWitness>,
}

impl BijectionReport {
    pub fn direction_one_holds(&self) -> bool {
        self.degree_one.iter().all(DegreeOneCheck::ok)
    }

    pub fn direction_two_holds(&self) -> bool {
        self.conjugates_in_subgroup
            .iter()
            .all(|c| c.component_vertex.is_some())
    }

    pub fn passed(&self) -> bool {
        self.direction_one_holds() && self.direction_two_holds()
    }
}

pub fn verify_component_bijection(
    cover: &CoveringGraph,
    hom: &GroupHom,
    sub: &Subgroup,
    w: &CyclicWord,
) -> Result<BijectionReport, CoverError> {
    let g = hom.target();
    let word = w.to_word();
    let z = hom.evaluate(&word)?;
    let lift = decompose_loop(cover, w)?;
    let paths = cover.path_words();
    let class: Vec<bool> = {
        let mut in_class = vec![false; g.order()];
        for y in 0..g.order() {
            in_class[g.conjugate(z, y)] = true;
        }
        in_class
    };

    let mut degree_one = Vec::new();
    for comp in lift.components.iter().filter(|c| c.degree == 1) {
        let v = comp.vertices[0];
        let Some(path) = &paths[v] else {
            continue;
        };
        let based_loop = word.conjugate_by(path);
        let lift_closed = cover.lift_endpoint(0, based_loop.letters())? == 0;
        let holonomy = hom.evaluate(&based_loop)?;
        degree_one.push(DegreeOneCheck {
            vertex: v,
            based_loop,
            holonomy,
            lift_closed,
            in_class: class[holonomy],
            in_subgroup: sub.contains(holonomy),
        });
    }

    let mut conjugates_in_subgroup = Vec::new();
    for k in (0..g.order()).filter(|&k| class[k] && sub.contains(k)) {
        let component_vertex = degree_one
            .iter()
            .find(|d| {
                sub.members()
                    .iter()
                    .any(|&n| g.conjugate(d.holonomy, n) == k)
            })
            .map(|d| d.vertex);
        conjugates_in_subgroup.push(ConjugateWitness {
            element: k,
            component_vertex,
        });
    }

    Ok(BijectionReport {
        image: z,
        lift,
        degree_one,
        conjugates_in_subgroup,
    })
}

/// A nonempty loop for every element: its Schreier word, or `x_k^m` for the
/// identity, with `x_k` the first generator of order `m > 1`. `None` only for
/// the identity of a trivial group.
pub fn element_loops(g: &FiniteGroup) -> Vec<Option<CyclicWord>> {
    let identity_loop = g.generators().iter().enumerate().find_map(|(k, &x)| {
        let m = g.element(x).order();
        (m > 1).then(|| cyclic_reduce(&Word::generator(k).pow(m as i64)))
    });
    element_words(g)
        .iter()
        .map(|w| {
            if w.is_empty() {
                identity_loop.clone()
            } else {
                Some(cyclic_reduce(w))
            }
        })
        .collect()
}

/// Runs [`verify_component_bijection`] on a loop for every element of `g`,
/// using the cover of `g` by its own generators.
pub fn verify_bijection_all(g: &Arc<FiniteGroup>, sub: &Subgroup) -> Result<Vec<BijectionReport>, CoverError> {
    let hom = GroupHom::free(g.clone(), g.generators().to_vec())?;
    let cover = build_cover(&hom, sub)?;
    element_loops(g)
        .iter()
        .flatten()
        .map(|w| verify_component_bijection(&cover, &hom, sub, w))
        .collect()
}
