//! Integer matrices and Smith normal form, the H₁-generation criterion for
//! a set of loop classes, and exhaustive search for homomorphisms from a
//! finitely presented group onto a finite permutation group.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::freewords::{abelianized_matrix, GroupHom, Presentation, Word};
use crate::permgroup::FiniteGroup;

/// Default cap on `|target|^generators` for [`quotient_search`].
pub const DEFAULT_SEARCH_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("search space {candidates} exceeds budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("matrix row {row} has {got} entries, expected {expected}")]
    Ragged { row: usize, got: usize, expected: usize },
    #[error("cannot parse matrix entry {0:?}")]
    Parse(String),
}

/// A dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics if a row length differs from `cols`.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(entries.len(), rows);
        let mut data = Vec::with_capacity(rows * cols);
        for r in entries {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64_rows(entries: &[Vec<i64>]) -> Result<Self, QuotientError> {
        let cols = entries.first().map_or(0, Vec::len);
        for (row, r) in entries.iter().enumerate() {
            if r.len() != cols {
                return Err(QuotientError::Ragged {
                    row,
                    got: r.len(),
                    expected: cols,
                });
            }
        }
        Ok(Self::from_rows(
            entries.len(),
            cols,
            entries
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        ))
    }

    /// Parses rows of whitespace-separated integers; blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, QuotientError> {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<BigInt>().map_err(|_| QuotientError::Parse(t.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(QuotientError::Ragged {
                        row: rows.len(),
                        got: row.len(),
                        expected: first.len(),
                    });
                }
            }
            rows.push(row);
        }
        let cols = rows.first().map_or(0, Vec::len);
        Ok(Self::from_rows(rows.len(), cols, rows))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "dimension mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c · row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * c;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += c · col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * c;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `A = U · S · V` with `U`, `V` unimodular and `S` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// `V⁻¹`, tracked during reduction.
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1, …, d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Reduction state: row operations on `s` are mirrored on the columns of `u`,
/// column operations on the rows of `v` (and the columns of `v_inv`), so that
/// `A = U · S · V` holds after every step.
struct Reducer {
    u: IntMatrix,
    s: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_rows(a, b);
        self.v_inv.swap_cols(a, b);
    }

    /// S: row[dst] += c·row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.s.add_row(dst, src, c);
        self.u.add_col(src, dst, &-c);
    }

    /// S: col[dst] += c·col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.s.add_col(dst, src, c);
        self.v.add_row(src, dst, &-c);
        self.v_inv.add_col(dst, src, c);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_col(i);
    }

    /// Smallest nonzero |entry| in the trailing block starting at (t, t);
    /// ties go to the first in row-major order.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.s.rows {
            for j in t..self.s.cols {
                let a = self.s[(i, j)].abs();
                if a.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, b)| a < *b) {
                    best = Some(((i, j), a));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut r = Reducer {
        u: IntMatrix::identity(m),
        s: a.clone(),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = r.pivot(t) else {
                return finish(r);
            };
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..m {
                let q = r.s[(i, t)].div_floor(&r.s[(t, t)]);
                if !q.is_zero() {
                    r.add_row(i, t, &-q);
                }
                clean &= r.s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = r.s[(t, j)].div_floor(&r.s[(t, t)]);
                if !q.is_zero() {
                    r.add_col(j, t, &-q);
                }
                clean &= r.s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let p = r.s[(t, t)].clone();
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !r.s[(i, j)].is_multiple_of(&p));
            match offender {
                Some((i, _)) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.s[(t, t)].is_negative() {
            r.negate_row(t);
        }
    }
    finish(r)
}

fn finish(r: Reducer) -> SmithForm {
    SmithForm {
        u: r.u,
        s: r.s,
        v: r.v,
        v_inv: r.v_inv,
    }
}

/// A surjection `φ: ℤ^generators → ℤ/p` vanishing on every relator and class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeWitness {
    pub prime: u64,
    /// `φ(x_j)` for each generator, reduced into `0..p`.
    pub values: Vec<u64>,
}

impl PrimeWitness {
    /// `φ` applied to a word's abelianization, in `0..p`.
    pub fn evaluate(&self, w: &Word) -> u64 {
        let p = self.prime as i128;
        let total: i128 = w
            .abelianize(self.values.len())
            .iter()
            .zip(&self.values)
            .map(|(&c, &v)| c as i128 * v as i128)
            .sum();
        total.rem_euclid(p) as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericCheck {
    pub generic: bool,
    /// Diagonal of the Smith form of the stacked relator/class matrix.
    pub invariant_factors: Vec<BigInt>,
    pub witness: Option<PrimeWitness>,
}

fn smallest_prime_factor(n: &BigInt) -> u64 {
    let n = n.abs();
    let mut d = 2u64;
    loop {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            return n.to_u64().expect("prime factor fits in u64");
        }
        if (&n % &bd).is_zero() {
            return d;
        }
        d += 1;
    }
}

/// Decides whether the abelianized classes, together with the relators,
/// generate `ℤ^generators`, i.e. whether the classes generate H₁ of the
/// presented group. On failure returns a prime `p` and a surjection onto
/// `ℤ/p` killing every relator and every class.
pub fn generic_check(p: &Presentation, classes: &[Word]) -> GenericCheck {
    let n = p.generator_count();
    let class_rows = classes
        .iter()
        .map(|w| w.abelianize(n).into_iter().map(BigInt::from).collect())
        .collect();
    let stacked = abelianized_matrix(p).vstack(&IntMatrix::from_rows(classes.len(), n, class_rows));
    let snf = smith_normal_form(&stacked);
    let diag = snf.diagonal();
    let first_bad = (0..n).find(|&k| diag.get(k).is_none_or(|d| !d.is_one()));
    let witness = first_bad.map(|k| {
        let d = diag.get(k).cloned().unwrap_or_else(BigInt::zero);
        let prime = if d.is_zero() { 2 } else { smallest_prime_factor(&d) };
        let bp = BigInt::from(prime);
        let values = (0..n)
            .map(|j| {
                snf.v_inv[(j, k)]
                    .mod_floor(&bp)
                    .to_u64()
                    .expect("residue fits in u64")
            })
            .collect();
        PrimeWitness { prime, values }
    });
    GenericCheck {
        generic: witness.is_none(),
        invariant_factors: diag,
        witness,
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub surjective_only: bool,
    /// Keep only the least tuple of each simultaneous-conjugation orbit.
    pub dedup_conjugation: bool,
    pub budget: u128,
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            surjective_only: true,
            dedup_conjugation: false,
            budget: DEFAULT_SEARCH_BUDGET,
            workers: 1,
        }
    }
}

/// Every assignment of target elements to generators that satisfies all
/// relators, in lexicographic order of element-index tuples.
pub fn quotient_search(
    p: &Presentation,
    target: &Arc<FiniteGroup>,
    opts: &SearchOptions,
) -> Result<Vec<GroupHom>, QuotientError> {
    let n = p.generator_count();
    let order = target.order() as u128;
    let candidates = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(order)).unwrap_or(u128::MAX);
    if candidates > opts.budget {
        return Err(QuotientError::BudgetExceeded {
            candidates,
            budget: opts.budget,
        });
    }
    // a relator can be checked once its largest generator is assigned
    let mut due: Vec<Vec<&Word>> = vec![Vec::new(); n];
    for r in p.relators() {
        if let Some(g) = r.max_generator() {
            due[g].push(r);
        }
    }
    let search = Search {
        group: target,
        due: &due,
    };
    let tuples: Vec<Vec<usize>> = if n == 0 {
        vec![Vec::new()]
    } else if opts.workers <= 1 {
        let mut out = Vec::new();
        for first in 0..target.order() {
            search.run_from(first, &mut out);
        }
        out
    } else {
        let firsts: Vec<usize> = (0..target.order()).collect();
        let chunk = firsts.len().div_ceil(opts.workers);
        let mut parts: Vec<Vec<Vec<usize>>> = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = firsts
                .chunks(chunk.max(1))
                .map(|c| {
                    let search = &search;
                    scope.spawn(move || {
                        let mut out = Vec::new();
                        for &first in c {
                            search.run_from(first, &mut out);
                        }
                        out
                    })
                })
                .collect();
            parts = handles.into_iter().map(|h| h.join().expect("search worker")).collect();
        });
        parts.concat()
    };
    let mut tuples: Vec<Vec<usize>> = tuples
        .into_iter()
        .filter(|t| !opts.surjective_only || target.is_generated_by(t))
        .collect();
    tuples.sort();
    if opts.dedup_conjugation {
        tuples.retain(|t| {
            (0..target.order()).all(|g| {
                let c: Vec<usize> = t.iter().map(|&x| target.conjugate(x, g)).collect();
                c >= *t
            })
        });
    }
    Ok(tuples
        .into_iter()
        .map(|t| GroupHom::new(p, target.clone(), t).expect("search only returns valid homomorphisms"))
        .collect())
}

struct Search<'a> {
    group: &'a FiniteGroup,
    due: &'a [Vec<&'a Word>],
}

impl Search<'_> {
    fn run_from(&self, first: usize, out: &mut Vec<Vec<usize>>) {
        let mut tuple = vec![first];
        if self.satisfied(&tuple) {
            self.extend(&mut tuple, out);
        }
    }

    fn extend(&self, tuple: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if tuple.len() == self.due.len() {
            out.push(tuple.clone());
            return;
        }
        for x in 0..self.group.order() {
            tuple.push(x);
            if self.satisfied(tuple) {
                self.extend(tuple, out);
            }
            tuple.pop();
        }
    }

    /// Relators that just became fully assigned evaluate to the identity.
    fn satisfied(&self, tuple: &[usize]) -> bool {
        let g = self.group;
        self.due[tuple.len() - 1].iter().all(|r| {
            let v = r.letters().iter().fold(g.identity(), |acc, l| {
                let img = tuple[l.generator()];
                g.mul(acc, if l.is_inverse() { g.inv(img) } else { img })
            });
            v == g.identity()
        })
    }
}
