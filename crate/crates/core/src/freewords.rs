//! Free-group words, cyclic words, finite-quotient evaluation and link-group
//! presentations of braid closures.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::permgroup::{FiniteGroup, PermError, Permutation};
use crate::quotients::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("cannot parse word token {0:?}")]
    Parse(String),
    #[error("cannot parse braid {0:?}")]
    BraidParse(String),
    #[error("braid letter s{index} out of range for {strands} strands")]
    BraidIndex { index: usize, strands: usize },
    #[error("generator x{generator} out of range (domain has {count} generators)")]
    GeneratorOutOfRange { generator: usize, count: usize },
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("relator {index} ({relator}) does not evaluate to the identity")]
    RelatorNotSatisfied { index: usize, relator: String },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A generator or its inverse. Ordered `x1 < x1⁻¹ < x2 < x2⁻¹ < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    generator: usize,
    inverse: bool,
}

impl Letter {
    /// `generator` is 0-based.
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    /// From the signed 1-based convention: `+k` is `x_k`, `-k` is `x_k⁻¹`.
    pub fn from_signed(v: i64) -> Option<Self> {
        (v != 0).then(|| Letter::new(v.unsigned_abs() as usize - 1, v < 0))
    }

    pub fn to_signed(self) -> i64 {
        let k = self.generator as i64 + 1;
        if self.inverse {
            -k
        } else {
            k
        }
    }

    pub fn generator(self) -> usize {
        self.generator
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.generator + 1)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Free reduction by a single stack pass.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in raw {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn from_signed(letters: &[i64]) -> Self {
        Self::reduce(letters.iter().filter_map(|&v| Letter::from_signed(v)))
    }

    pub fn generator(k: usize) -> Self {
        Word(vec![Letter::new(k, false)])
    }

    /// Parses `x1 x2^-1 x1`. Exponents `^n` with any nonzero integer are
    /// accepted; an empty string, `1` or `e` is the empty word.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let mut raw = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" || tok == "e" {
                continue;
            }
            let err = || WordError::Parse(tok.to_string());
            let body = tok.strip_prefix('x').ok_or_else(err)?;
            let (gen, exp) = match body.split_once('^') {
                Some((g, e)) => (g, e.parse::<i64>().map_err(|_| err())?),
                None => (body, 1),
            };
            let k: usize = gen.parse().map_err(|_| err())?;
            if k == 0 || exp == 0 {
                return Err(err());
            }
            let l = Letter::new(k - 1, exp < 0);
            raw.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        Ok(Self::reduce(raw))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Self::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        Self::reduce(
            std::iter::repeat_n(base.0.iter().copied(), exp.unsigned_abs() as usize)
                .flatten(),
        )
    }

    /// `u · self · u⁻¹`
    pub fn conjugate_by(&self, u: &Word) -> Word {
        u.concat(self).concat(&u.inverse())
    }

    /// Largest 0-based generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Signed letter count per generator.
    pub fn abelianize(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0; generators];
        for l in &self.0 {
            v[l.generator] += if l.inverse { -1 } else { 1 };
        }
        v
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(Letter::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A cyclically reduced word in its canonical rotation (the least rotation).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord(Vec<Letter>);

pub fn cyclic_reduce(w: &Word) -> CyclicWord {
    let letters = w.letters();
    let (mut lo, mut hi) = (0, letters.len());
    while hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    let core = &letters[lo..hi];
    let n = core.len();
    let best = (0..n)
        .map(|r| core[r..].iter().chain(&core[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default();
    CyclicWord(best)
}

impl CyclicWord {
    pub fn from_word(w: &Word) -> Self {
        cyclic_reduce(w)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_word())
    }
}

/// Generators plus relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self, WordError> {
        for r in &relators {
            if let Some(g) = r.max_generator().filter(|&g| g >= generator_count) {
                return Err(WordError::GeneratorOutOfRange {
                    generator: g + 1,
                    count: generator_count,
                });
            }
        }
        Ok(Presentation {
            generator_count,
            relators,
        })
    }

    pub fn free(generator_count: usize) -> Self {
        Presentation {
            generator_count,
            relators: Vec::new(),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generator_count).map(|k| format!("x{k}")).collect();
        let rels: Vec<String> = self.relators.iter().map(Word::to_string).collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

/// A braid on `strands` strands; letter `+i` is `σ_i`, `-i` is `σ_i⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self, WordError> {
        if strands == 0 {
            return Err(WordError::BraidParse("zero strands".into()));
        }
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strands {
                return Err(WordError::BraidIndex { index: i, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses `n:s1 s2^-1 s1`.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let err = || WordError::BraidParse(text.to_string());
        let (n, body) = text.split_once(':').ok_or_else(err)?;
        let strands: usize = n.trim().parse().map_err(|_| err())?;
        let mut letters = Vec::new();
        for tok in body.split_whitespace() {
            let rest = tok.strip_prefix('s').ok_or_else(err)?;
            let (idx, inv) = match rest.strip_suffix("^-1") {
                Some(i) => (i, true),
                None => (rest, false),
            };
            let i: i64 = idx.parse().map_err(|_| err())?;
            if i <= 0 {
                return Err(err());
            }
            letters.push(if inv { -i } else { i });
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| {
                if l < 0 {
                    format!("s{}^-1", -l)
                } else {
                    format!("s{l}")
                }
            })
            .collect();
        write!(f, "{}:{}", self.strands, parts.join(" "))
    }
}

/// Substitutes one Artin generator into a word.
fn artin_substitute(w: &Word, sigma: i64) -> Word {
    let i = sigma.unsigned_abs() as usize - 1;
    let xi = Letter::new(i, false);
    let xj = Letter::new(i + 1, false);
    let image = |gen: usize| -> Option<Vec<Letter>> {
        match (gen == i, gen == i + 1, sigma > 0) {
            // σ_i : x_i ↦ x_i x_{i+1} x_i⁻¹, x_{i+1} ↦ x_i
            (true, _, true) => Some(vec![xi, xj, xi.inverse()]),
            (_, true, true) => Some(vec![xi]),
            // σ_i⁻¹ : x_i ↦ x_{i+1}, x_{i+1} ↦ x_{i+1}⁻¹ x_i x_{i+1}
            (true, _, false) => Some(vec![xj]),
            (_, true, false) => Some(vec![xj.inverse(), xi, xj]),
            _ => None,
        }
    };
    Word::reduce(w.letters().iter().flat_map(|&l| {
        let img = image(l.generator()).unwrap_or_else(|| vec![Letter::new(l.generator(), false)]);
        if l.is_inverse() {
            img.into_iter().rev().map(Letter::inverse).collect::<Vec<_>>()
        } else {
            img
        }
    }))
}

/// Presentation of the fundamental group of the braid closure's complement:
/// generators `x1..xn` (the top arcs), relators `x_j⁻¹ · β(x_j)` where `β`
/// applies the braid letters left to right as Artin automorphisms.
pub fn braid_presentation(braid: &BraidWord) -> Presentation {
    let n = braid.strands();
    let mut images: Vec<Word> = (0..n).map(Word::generator).collect();
    for &sigma in braid.letters() {
        for w in images.iter_mut() {
            *w = artin_substitute(w, sigma);
        }
    }
    let relators = images
        .iter()
        .enumerate()
        .map(|(j, img)| Word::generator(j).inverse().concat(img))
        .collect();
    Presentation {
        generator_count: n,
        relators,
    }
}

/// Relators × generators matrix of signed letter counts.
pub fn abelianized_matrix(p: &Presentation) -> IntMatrix {
    let rows = p
        .relators()
        .iter()
        .map(|r| {
            r.abelianize(p.generator_count())
                .into_iter()
                .map(BigInt::from)
                .collect()
        })
        .collect();
    IntMatrix::from_rows(p.relators().len(), p.generator_count(), rows)
}

/// A homomorphism from a presented group to a finite permutation group,
/// given by one target element per generator.
#[derive(Clone, Debug)]
pub struct GroupHom {
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl GroupHom {
    /// Checks that every relator maps to the identity.
    pub fn new(
        presentation: &Presentation,
        target: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<Self, WordError> {
        if images.len() != presentation.generator_count() {
            return Err(WordError::ImageCount {
                expected: presentation.generator_count(),
                got: images.len(),
            });
        }
        if let Some(&bad) = images.iter().find(|&&i| i >= target.order()) {
            return Err(WordError::GeneratorOutOfRange {
                generator: bad,
                count: target.order(),
            });
        }
        let hom = GroupHom { target, images };
        for (index, r) in presentation.relators().iter().enumerate() {
            if hom.evaluate(r)? != hom.target.identity() {
                return Err(WordError::RelatorNotSatisfied {
                    index,
                    relator: r.to_string(),
                });
            }
        }
        Ok(hom)
    }

    /// A homomorphism from a free group, which needs no relator check.
    pub fn free(target: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self, WordError> {
        Self::new(&Presentation::free(images.len()), target, images)
    }

    pub fn from_permutations(
        presentation: &Presentation,
        target: Arc<FiniteGroup>,
        perms: &[Permutation],
    ) -> Result<Self, WordError> {
        let images = perms
            .iter()
            .map(|p| target.locate(p))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(presentation, target, images)
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    /// Image of a word: the product of letter images, left to right under
    /// the group product (`x·y = x ∘ y`).
    pub fn evaluate(&self, w: &Word) -> Result<usize, WordError> {
        let g = &self.target;
        let mut acc = g.identity();
        for l in w.letters() {
            let img = *self
                .images
                .get(l.generator())
                .ok_or(WordError::GeneratorOutOfRange {
                    generator: l.generator() + 1,
                    count: self.images.len(),
                })?;
            let x = if l.is_inverse() { g.inv(img) } else { img };
            acc = g.mul(acc, x);
        }
        Ok(acc)
    }

    pub fn evaluate_letters(&self, letters: &[Letter]) -> Result<usize, WordError> {
        self.evaluate(&Word::reduce(letters.iter().copied()))
    }

    pub fn is_surjective(&self) -> bool {
        self.target.is_generated_by(&self.images)
    }
}

/// On-disk homomorphism from the free group on `x1..xk`:
/// `{ "degree": n, "generators": [image of x1, …], "target": [optional target generators] }`.
/// Without `target`, the target is the group generated by the images.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HomFile {
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<String>>,
}

impl HomFile {
    pub fn build(&self) -> Result<GroupHom, WordError> {
        let images = self
            .generators
            .iter()
            .map(|s| Permutation::parse(self.degree, s))
            .collect::<Result<Vec<_>, _>>()?;
        let target = match &self.target {
            Some(t) => FiniteGroup::from_cycle_strings(self.degree, t)?,
            None => FiniteGroup::generate(self.degree, &images)?,
        };
        GroupHom::from_permutations(&Presentation::free(images.len()), Arc::new(target), &images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotients::smith_normal_form;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(Word::from_signed(&[1, -1]).is_empty());
        assert_eq!(Word::from_signed(&[1, 2, -2, 1]), w("x1 x1"));
        assert_eq!(w("x1 x2 x1^-1").letters().len(), 3);
        assert_eq!(w("x1^3 x1^-2"), w("x1"));
        assert_eq!(w(""), Word::empty());
        assert!(Word::parse("y1").is_err());
        assert!(Word::parse("x0").is_err());
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(cyclic_reduce(&w("x2 x1 x2^-1")).to_word(), w("x1"));
        assert!(cyclic_reduce(&Word::empty()).is_empty());
        assert_eq!(cyclic_reduce(&w("x1 x2")), cyclic_reduce(&w("x2 x1")));
        // x1 < x1^-1 < x2 in the letter order
        assert_eq!(cyclic_reduce(&w("x2 x1^-1 x1^-1")).to_word(), w("x1^-1 x1^-1 x2"));
    }

    #[test]
    fn evaluate_examples() {
        let g = Arc::new(FiniteGroup::from_cycle_strings(3, &["(1 2)", "(2 3)"]).unwrap());
        let x = g.index_of(&Permutation::parse(3, "(1 2)").unwrap()).unwrap();
        let y = g.index_of(&Permutation::parse(3, "(2 3)").unwrap()).unwrap();
        let hom = GroupHom::free(g.clone(), vec![x, y]).unwrap();
        assert_eq!(hom.evaluate(&Word::empty()).unwrap(), g.identity());
        let xy = hom.evaluate(&w("x1 x2")).unwrap();
        assert_eq!(g.element(xy).to_string(), "(1 2 3)");
        assert!(matches!(
            hom.evaluate(&w("x3")),
            Err(WordError::GeneratorOutOfRange { generator: 3, .. })
        ));

        let c3 = Arc::new(FiniteGroup::from_cycle_strings(3, &["(1 2 3)"]).unwrap());
        let t = c3.index_of(&Permutation::parse(3, "(1 2 3)").unwrap()).unwrap();
        let hom = GroupHom::free(c3.clone(), vec![t]).unwrap();
        assert_eq!(hom.evaluate(&w("x1^3")).unwrap(), c3.identity());
    }

    #[test]
    fn hom_rejects_bad_relators() {
        let trefoil = braid_presentation(&BraidWord::parse("2:s1 s1 s1").unwrap());
        let s3 = Arc::new(FiniteGroup::from_cycle_strings(3, &["(1 2)", "(1 2 3)"]).unwrap());
        let t = |s: &str| Permutation::parse(3, s).unwrap();
        assert!(GroupHom::from_permutations(&trefoil, s3.clone(), &[t("(1 2)"), t("(2 3)")]).is_ok());
        assert!(matches!(
            GroupHom::from_permutations(&trefoil, s3.clone(), &[t("(1 2)"), t("(1 2 3)")]),
            Err(WordError::RelatorNotSatisfied { .. })
        ));
        assert!(matches!(
            GroupHom::from_permutations(&trefoil, s3, &[t("(1 2)")]),
            Err(WordError::ImageCount { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn braid_parsing() {
        let b = BraidWord::parse("3:s1 s2^-1 s1 s2^-1").unwrap();
        assert_eq!(b.letters(), &[1, -2, 1, -2]);
        assert_eq!(b.to_string(), "3:s1 s2^-1 s1 s2^-1");
        assert!(matches!(
            BraidWord::parse("2:s2"),
            Err(WordError::BraidIndex { index: 2, strands: 2 })
        ));
        assert!(BraidWord::parse("2 s1").is_err());
        assert_eq!(BraidWord::parse("4:").unwrap().letters(), &[] as &[i64]);
    }

    fn invariant_factors(p: &Presentation) -> (Vec<String>, usize) {
        let m = abelianized_matrix(p);
        let snf = smith_normal_form(&m);
        let d = snf.diagonal();
        let nonzero: Vec<String> = d.iter().filter(|x| **x != BigInt::from(0)).map(|x| x.to_string()).collect();
        let free_rank = p.generator_count() - nonzero.len();
        (nonzero, free_rank)
    }

    #[test]
    fn braid_presentations_and_homology() {
        let free = braid_presentation(&BraidWord::parse("2:").unwrap());
        assert!(free.relators().iter().all(Word::is_empty));
        assert_eq!(invariant_factors(&free).1, 2);

        let trefoil = braid_presentation(&BraidWord::parse("2:s1 s1 s1").unwrap());
        assert_eq!(trefoil.generator_count(), 2);
        assert_eq!(trefoil.relators().len(), 2);
        let (tors, rank) = invariant_factors(&trefoil);
        assert_eq!(rank, 1);
        assert!(tors.iter().all(|d| d == "1"));
        let m = abelianized_matrix(&trefoil);
        let mut rows: Vec<Vec<i64>> = m.to_i64_rows().unwrap();
        rows.sort();
        assert_eq!(rows, vec![vec![-1, 1], vec![1, -1]]);

        let fig8 = braid_presentation(&BraidWord::parse("3:s1 s2^-1 s1 s2^-1").unwrap());
        let (tors, rank) = invariant_factors(&fig8);
        assert_eq!(rank, 1);
        assert!(tors.iter().all(|d| d == "1"));
    }

    #[test]
    fn abelianized_matrix_examples() {
        let free = Presentation::free(3);
        let m = abelianized_matrix(&free);
        assert_eq!((m.rows(), m.cols()), (0, 3));
        let p = Presentation::new(1, vec![w("x1 x1")]).unwrap();
        assert_eq!(abelianized_matrix(&p).to_i64_rows().unwrap(), vec![vec![2]]);
        assert!(Presentation::new(1, vec![w("x2")]).is_err());
    }

    #[test]
    fn hom_file_builds_free_hom() {
        let f: HomFile = serde_json::from_str(
            r#"{ "degree": 5, "generators": ["(1 2 3 4 5)", "(1 2 3)"] }"#,
        )
        .unwrap();
        let hom = f.build().unwrap();
        assert_eq!(hom.target().order(), 60);
        assert!(hom.is_surjective());
        let f: HomFile = serde_json::from_str(
            r#"{ "degree": 5, "generators": ["(1 2 3)"], "target": ["(1 2 3 4 5)", "(1 2 3)"] }"#,
        )
        .unwrap();
        assert!(!f.build().unwrap().is_surjective());
    }
}
