//! Permutations, finite permutation groups, conjugacy classes and the
//! monodromy action of a group on the right cosets of a subgroup.
//!
//! Composition is right-to-left: `a.compose(&b)` maps `x` to `a(b(x))`, and
//! the group product `x·y` used everywhere in this crate is `x.compose(&y)`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default upper bound on the order of a generated group.
pub const DEFAULT_ORDER_CAP: usize = 10080;

/// Groups up to this order get a precomputed multiplication table.
const TABLE_ORDER_LIMIT: usize = 720;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("image list is not a bijection on 0..{0}")]
    NotBijective(usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears twice in cycle notation")]
    RepeatedPoint(usize),
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
    #[error("group order exceeds cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("permutation {0} is not an element of the group")]
    NotInGroup(String),
}

/// A bijection of `{0, …, degree-1}`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "permutation degree must be at least 1");
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijective(n));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles over 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p >= degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if used[p] {
                    return Err(PermError::RepeatedPoint(p + 1));
                }
                used[p] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint-cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`.
    /// Points may be separated by spaces or commas; `()` is the identity.
    pub fn parse(degree: usize, text: &str) -> Result<Self, PermError> {
        let err = || PermError::Parse(text.to_string());
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(err());
        }
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(err)?;
            let close = body.find(')').ok_or_else(err)?;
            let mut cycle = Vec::new();
            for tok in body[..close].split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok.parse().map_err(|_| err())?;
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                cycle.push(p - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut images: Vec<usize> = (0..self.degree()).collect();
        for _ in 0..exp.unsigned_abs() {
            images = images.iter().map(|&x| base.images[x]).collect();
        }
        Permutation { images }
    }

    /// All cycles including fixed points, each starting at its least point,
    /// ordered by that point.
    pub fn all_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_parts(self.all_cycles().iter().map(Vec::len).collect())
    }

    pub fn order(&self) -> usize {
        self.all_cycles()
            .iter()
            .map(Vec::len)
            .fold(1, num_integer::lcm)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.all_cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let pts: Vec<String> = cycle.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// Cycle lengths of a permutation in weakly decreasing order, fixed points
/// included as 1's.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of cycles (components).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for CycleType {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| PermError::Parse(s.to_string()))?;
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PermError::Parse(s.to_string()))?;
        Ok(CycleType::from_parts(parts))
    }
}

/// A finite permutation group with its elements in lexicographic order of
/// their image lists. Elements are addressed by index into that order.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    generators: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl FiniteGroup {
    pub fn generate(degree: usize, gens: &[Permutation]) -> Result<Self, PermError> {
        Self::generate_with_cap(degree, gens, DEFAULT_ORDER_CAP)
    }

    /// Closes `gens` under composition. Fails once more than `cap` elements
    /// have been found.
    pub fn generate_with_cap(
        degree: usize,
        gens: &[Permutation],
        cap: usize,
    ) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.compose(g)?;
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(PermError::OrderCapExceeded { cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(Self::from_sorted(degree, elements, gens))
    }

    fn from_sorted(degree: usize, elements: Vec<Permutation>, gens: &[Permutation]) -> Self {
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        let identity = index[&Permutation::identity(degree)];
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let n = elements.len();
        let table = (n <= TABLE_ORDER_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    let c = b.images.iter().map(|&x| a.images[x]).collect::<Vec<_>>();
                    t.push(index[&Permutation { images: c }] as u32);
                }
            }
            t
        });
        FiniteGroup {
            degree,
            elements,
            index,
            generators,
            identity,
            inverses,
            table,
        }
    }

    /// The group generated by the given cycle-notation strings.
    pub fn from_cycle_strings<S: AsRef<str>>(degree: usize, gens: &[S]) -> Result<Self, PermError> {
        let perms = gens
            .iter()
            .map(|s| Permutation::parse(degree, s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::generate(degree, &perms)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of a permutation, or an error naming it if it lies outside the group.
    pub fn locate(&self, p: &Permutation) -> Result<usize, PermError> {
        if p.degree() != self.degree {
            return Err(PermError::DegreeMismatch(self.degree, p.degree()));
        }
        self.index_of(p)
            .ok_or_else(|| PermError::NotInGroup(p.to_string()))
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => {
                let c = self.elements[a]
                    .compose(&self.elements[b])
                    .expect("group elements share a degree");
                self.index[&c]
            }
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `by · x · by⁻¹`
    pub fn conjugate(&self, x: usize, by: usize) -> usize {
        self.mul(self.mul(by, x), self.inv(by))
    }

    pub fn pow(&self, a: usize, exp: u64) -> usize {
        let mut acc = self.identity;
        let mut base = a;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn product<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items
            .into_iter()
            .fold(self.identity, |acc, x| self.mul(acc, x))
    }

    /// Conjugacy classes sorted by representative, the least member of each class.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let n = self.order();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            assigned[x] = true;
            let mut members = vec![x];
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for &g in &self.generators {
                    let z = self.conjugate(y, g);
                    if !assigned[z] {
                        assigned[z] = true;
                        members.push(z);
                        queue.push_back(z);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative: x,
                members,
            });
        }
        classes
    }

    /// Class index of every element, aligned with `conjugacy_classes()`.
    pub fn class_map(&self, classes: &[ConjugacyClass]) -> Vec<usize> {
        let mut map = vec![usize::MAX; self.order()];
        for (c, class) in classes.iter().enumerate() {
            for &m in &class.members {
                map[m] = c;
            }
        }
        map
    }

    /// The subgroup generated by the given element indices.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut members = vec![self.identity];
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup { members }
    }

    /// Stabilizer of a 0-based point.
    pub fn point_stabilizer(&self, point: usize) -> Result<Subgroup, PermError> {
        if point >= self.degree {
            return Err(PermError::PointOutOfRange {
                point: point + 1,
                degree: self.degree,
            });
        }
        let members = (0..self.order())
            .filter(|&i| self.elements[i].apply(point) == point)
            .collect();
        Ok(Subgroup { members })
    }

    /// Every subgroup, ordered by (order, member list). Intended for small
    /// groups: each subgroup is reached as a join of cyclic subgroups.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let cyclic: BTreeSet<Vec<usize>> = (0..self.order())
            .map(|x| self.subgroup_generated(&[x]).members)
            .collect();
        let cyclic: Vec<(usize, Vec<usize>)> = cyclic
            .into_iter()
            .map(|m| {
                // a generator of the cyclic subgroup: any element of full order
                let g = *m
                    .iter()
                    .find(|&&x| self.subgroup_generated(&[x]).members.len() == m.len())
                    .expect("cyclic subgroup has a generator");
                (g, m)
            })
            .collect();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for (g, m) in &cyclic {
            if found.insert(m.clone()) {
                frontier.push((vec![*g], m.clone()));
            }
        }
        while let Some((gens, members)) = frontier.pop() {
            for (g, m) in &cyclic {
                if m.iter().all(|x| members.binary_search(x).is_ok()) {
                    continue;
                }
                let mut joined_gens = gens.clone();
                joined_gens.push(*g);
                let joined = self.subgroup_generated(&joined_gens).members;
                if found.insert(joined.clone()) {
                    frontier.push((joined_gens, joined));
                }
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().map(|members| Subgroup { members }).collect();
        out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        out
    }

    /// True if the given element indices generate the whole group.
    pub fn is_generated_by(&self, gens: &[usize]) -> bool {
        self.subgroup_generated(gens).order() == self.order()
    }
}

/// A conjugacy class: its least member and all members, as element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// A subgroup of a parent [`FiniteGroup`], stored as sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Validates that `members` is a subgroup of `group`.
    pub fn new(group: &FiniteGroup, mut members: Vec<usize>) -> Result<Self, PermError> {
        members.sort_unstable();
        members.dedup();
        if let Some(&m) = members.iter().find(|&&m| m >= group.order()) {
            return Err(PermError::NotSubgroup(format!("index {m} outside the group")));
        }
        let sub = Subgroup { members };
        sub.validate(group)?;
        Ok(sub)
    }

    /// The subgroup generated by permutations, each of which must lie in `group`.
    pub fn generated_by(group: &FiniteGroup, gens: &[Permutation]) -> Result<Self, PermError> {
        let idx = gens
            .iter()
            .map(|p| group.locate(p))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| PermError::NotSubgroup(e.to_string()))?;
        Ok(group.subgroup_generated(&idx))
    }

    fn validate(&self, group: &FiniteGroup) -> Result<(), PermError> {
        if self.members.iter().any(|&m| m >= group.order()) {
            return Err(PermError::NotSubgroup("element index outside the group".into()));
        }
        if !self.contains(group.identity()) {
            return Err(PermError::NotSubgroup("identity missing".into()));
        }
        for &a in &self.members {
            for &b in &self.members {
                if !self.contains(group.mul(a, b)) {
                    return Err(PermError::NotSubgroup("not closed under composition".into()));
                }
            }
        }
        Ok(())
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_normal_in(&self, group: &FiniteGroup) -> bool {
        group.generators().iter().all(|&g| {
            self.members
                .iter()
                .all(|&h| self.contains(group.conjugate(h, g)))
        })
    }
}

/// The monodromy action of a group on the right cosets `Hx` of a subgroup:
/// `z` sends `Hx` to `H·x·z⁻¹`. Coset 0 is `H`; the others are numbered in
/// breadth-first order from `H` over the group's generators.
#[derive(Clone, Debug)]
pub struct CosetAction {
    representatives: Vec<usize>,
    coset_of: Vec<usize>,
    images: Vec<Permutation>,
}

pub fn coset_action(group: &FiniteGroup, sub: &Subgroup) -> Result<CosetAction, PermError> {
    sub.validate(group)?;
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    let assign = |rep: usize, coset_of: &mut Vec<usize>, reps: &mut Vec<usize>| {
        let c = reps.len();
        reps.push(rep);
        for &h in sub.members() {
            coset_of[group.mul(h, rep)] = c;
        }
    };
    assign(group.identity(), &mut coset_of, &mut representatives);
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let rep = representatives[c];
        for &g in group.generators() {
            let y = group.mul(rep, g);
            if coset_of[y] == usize::MAX {
                assign(y, &mut coset_of, &mut representatives);
                queue.push_back(representatives.len() - 1);
            }
        }
    }
    debug_assert!(coset_of.iter().all(|&c| c != usize::MAX));
    let images = (0..n)
        .map(|z| {
            let zinv = group.inv(z);
            let imgs = representatives
                .iter()
                .map(|&x| coset_of[group.mul(x, zinv)])
                .collect();
            Permutation::from_images(imgs).expect("coset action is a bijection")
        })
        .collect();
    Ok(CosetAction {
        representatives,
        coset_of,
        images,
    })
}

impl CosetAction {
    /// Number of cosets `[G:H]`.
    pub fn index(&self) -> usize {
        self.representatives.len()
    }

    /// The monodromy permutation of element `z`.
    pub fn image(&self, z: usize) -> &Permutation {
        &self.images[z]
    }

    /// Representative `x` of coset `c`, so that coset `c` is `Hx`.
    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c]
    }

    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// Elements acting trivially on every coset.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.images.len())
            .filter(|&z| self.images[z].is_identity())
            .collect()
    }
}

/// On-disk group description: `{ "degree": n, "generators": ["(1 2 3)", …] }`
/// with 1-based points.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupFile {
    pub fn permutations(&self) -> Result<Vec<Permutation>, PermError> {
        self.generators
            .iter()
            .map(|s| Permutation::parse(self.degree, s))
            .collect()
    }

    pub fn build(&self) -> Result<FiniteGroup, PermError> {
        FiniteGroup::generate(self.degree, &self.permutations()?)
    }

    /// Generators of a standard group by name: `S<n>`, `A<n>`, `Z<n>`
    /// (cyclic, regular on `n` points) or `D<n>` (dihedral of order `2n`).
    pub fn named(name: &str) -> Option<GroupFile> {
        let name = name.trim();
        let (kind, n) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
        let n: usize = n.parse().ok().filter(|&n| (1..=64).contains(&n))?;
        let cycle = |pts: &[usize]| -> String {
            let inner: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
            format!("({})", inner.join(" "))
        };
        let rotation = cycle(&(1..=n).collect::<Vec<_>>());
        let generators = match kind.to_ascii_uppercase().as_str() {
            "S" if n >= 2 => vec![rotation, cycle(&[1, 2])],
            "S" | "A" if n == 1 => vec!["()".into()],
            "A" if n == 2 => vec!["()".into()],
            "A" => (3..=n).map(|k| cycle(&[1, 2, k])).collect(),
            "Z" | "C" if n == 1 => vec!["()".into()],
            "Z" | "C" => vec![rotation],
            "D" if n >= 3 => {
                let reflection: String = (1..=n / 2).map(|i| cycle(&[i, n + 1 - i])).collect();
                vec![rotation, reflection]
            }
            _ => return None,
        };
        Some(GroupFile { degree: n, generators })
    }
}
