//! Degree-bounded exact linear algebra: enumeration of normal-form words,
//! fraction-free kernel computation, and recovery of the primitive and
//! anti-cocommutative subspaces.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, Integer, One, Zero};

use crate::algebra::{AlgebraElement, GenIndex, SymbolTable, Word};
use crate::coalgebra::delta;
use crate::error::{AlgebraError, Result};
use crate::rewrite::Presentation;
use crate::scalar::Scalar;
use crate::tensor::TensorElement;

/// Optional cap on enumeration size, overridable through HOPFGK_MAX_WORDS.
pub fn word_cap() -> usize {
    std::env::var("HOPFGK_MAX_WORDS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(2_000_000)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// Weight = declared coradical degree.
    Coradical,
    /// All generators weight 1 (word length).
    Unit,
}

pub fn letter_weight(table: &SymbolTable, mode: WeightMode, idx: GenIndex) -> u32 {
    match mode {
        WeightMode::Coradical => table.weight(idx),
        WeightMode::Unit => 1,
    }
}

pub fn word_weight(table: &SymbolTable, mode: WeightMode, w: &Word) -> u32 {
    w.0.iter().map(|&l| letter_weight(table, mode, l)).sum()
}

/// All nondecreasing words over the given letters with weighted degree at
/// most `bound`, in graded lexicographic order.
pub fn enumerate_words(
    table: &SymbolTable,
    mode: WeightMode,
    bound: u32,
    letters: Option<&BTreeSet<GenIndex>>,
) -> Result<Vec<Word>> {
    let cap = word_cap();
    let all: Vec<GenIndex> = match letters {
        Some(set) => set.iter().copied().collect(),
        None => (0..table.len() as GenIndex).collect(),
    };
    let mut out = Vec::new();
    let mut current: Vec<GenIndex> = Vec::new();

    fn rec(
        table: &SymbolTable,
        mode: WeightMode,
        all: &[GenIndex],
        start: usize,
        remaining: u32,
        current: &mut Vec<GenIndex>,
        out: &mut Vec<Word>,
        cap: usize,
    ) -> Result<()> {
        if out.len() >= cap {
            return Err(AlgebraError::ResourceLimit(cap));
        }
        out.push(Word(current.clone()));
        for (pos, &l) in all.iter().enumerate().skip(start) {
            let w = letter_weight(table, mode, l);
            if w <= remaining {
                current.push(l);
                rec(table, mode, all, pos, remaining - w, current, out, cap)?;
                current.pop();
            }
        }
        Ok(())
    }

    rec(table, mode, &all, 0, bound, &mut current, &mut out, cap)?;
    out.sort_by(|a, b| {
        (word_weight(table, mode, a), a).cmp(&(word_weight(table, mode, b), b))
    });
    Ok(out)
}

/// The deterministic basis of a filtration piece: all normal-form words of
/// weighted degree at most the bound.
#[derive(Debug, Clone)]
pub struct FilteredBasis {
    pub bound: u32,
    pub words: Vec<Word>,
    pub index: BTreeMap<Word, usize>,
}

impl FilteredBasis {
    pub fn from_words(bound: u32, words: Vec<Word>) -> Self {
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        FilteredBasis { bound, words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Same span, reversed enumeration order; used to confirm solver output
    /// is order-independent.
    pub fn reversed(&self) -> Self {
        let mut words = self.words.clone();
        words.reverse();
        Self::from_words(self.bound, words)
    }
}

pub fn enumerate_basis(p: &Presentation, bound: u32) -> Result<FilteredBasis> {
    p.require_confluent()?;
    let words = enumerate_words(p.table(), WeightMode::Coradical, bound, None)?;
    Ok(FilteredBasis::from_words(bound, words))
}

/// Default degree bound: lemma-scale checks live in filtration levels 3-4,
/// so bound at least 2 * max degree + 1.
pub fn default_bound(p: &Presentation) -> u32 {
    2 * p.table().max_degree() + 1
}

/// A list of linearly independent elements.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    pub vectors: Vec<AlgebraElement>,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

// ---------------------------------------------------------------------------
// Fraction-free elimination.

/// Clears denominators row by row, producing an integer matrix with the same
/// kernel.
fn to_integer_rows(rows: &[Vec<Scalar>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for x in row {
                lcm = lcm.lcm(x.denom());
            }
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect()
}

/// Bareiss fraction-free echelon form. Returns the reduced matrix together
/// with the pivot (row, column) positions.
fn bareiss_echelon(mut m: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<(usize, usize)>) {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    (m, pivots)
}

pub fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    let (_, pivots) = bareiss_echelon(to_integer_rows(rows), ncols);
    pivots.len()
}

/// Exact kernel basis of the column space map given by `rows` (each row is
/// one linear equation over `ncols` unknowns). One basis vector per free
/// column, via back substitution on the fraction-free echelon form.
pub fn kernel_basis(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let (m, pivots) = bareiss_echelon(to_integer_rows(rows), ncols);
    let pivot_cols: BTreeSet<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for f in 0..ncols {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut x = vec![Scalar::zero(); ncols];
        x[f] = Scalar::one();
        for &(pr, pc) in pivots.iter().rev() {
            let mut acc = Scalar::zero();
            for j in pc + 1..ncols {
                if !m[pr][j].is_zero() && !x[j].is_zero() {
                    acc += Scalar::from_integer(m[pr][j].clone()) * x[j].clone();
                }
            }
            x[pc] = -acc / Scalar::from_integer(m[pr][pc].clone());
        }
        basis.push(x);
    }
    basis
}

/// True iff `target` lies in the row span of `rows`.
pub fn in_row_span(rows: &[Vec<Scalar>], target: &[Scalar], ncols: usize) -> bool {
    let base = rank(rows, ncols);
    let mut extended: Vec<Vec<Scalar>> = rows.to_vec();
    extended.push(target.to_vec());
    rank(&extended, ncols) == base
}

// ---------------------------------------------------------------------------
// Coordinate embeddings.

/// Dense coordinate rows for algebra elements over the union of their
/// supports.
pub fn element_rows(items: &[&AlgebraElement]) -> (Vec<Word>, Vec<Vec<Scalar>>) {
    let coords: BTreeSet<Word> = items
        .iter()
        .flat_map(|e| e.terms().map(|(w, _)| w.clone()))
        .collect();
    let coords: Vec<Word> = coords.into_iter().collect();
    let rows = items
        .iter()
        .map(|e| coords.iter().map(|w| e.coefficient(w)).collect())
        .collect();
    (coords, rows)
}

pub fn element_in_span(span: &[AlgebraElement], target: &AlgebraElement) -> bool {
    if target.is_zero() {
        return true;
    }
    let mut items: Vec<&AlgebraElement> = span.iter().collect();
    items.push(target);
    let (coords, rows) = element_rows(&items);
    let (span_rows, target_row) = rows.split_at(span.len());
    in_row_span(span_rows, &target_row[0], coords.len())
}

/// Dense coordinate rows for tensor elements over the union of their
/// supports.
pub fn tensor_rows(items: &[&TensorElement]) -> (Vec<(Word, Word)>, Vec<Vec<Scalar>>) {
    let coords: BTreeSet<(Word, Word)> = items
        .iter()
        .flat_map(|e| e.terms().map(|(k, _)| k.clone()))
        .collect();
    let coords: Vec<(Word, Word)> = coords.into_iter().collect();
    let rows = items
        .iter()
        .map(|e| coords.iter().map(|(a, b)| e.coefficient(a, b)).collect())
        .collect();
    (coords, rows)
}

pub fn tensor_in_span(span: &[TensorElement], target: &TensorElement) -> bool {
    if target.is_zero() {
        return true;
    }
    let mut items: Vec<&TensorElement> = span.iter().collect();
    items.push(target);
    let (coords, rows) = tensor_rows(&items);
    let (span_rows, target_row) = rows.split_at(span.len());
    in_row_span(span_rows, &target_row[0], coords.len())
}

// ---------------------------------------------------------------------------
// Kernels of linear maps into the tensor square.

/// Exact kernel of a linear map within the counit-zero slice of the span of
/// `basis`. The unit column is deleted rather than constrained, which keeps
/// the slice explicit.
pub fn kernel_of<F>(p: &Presentation, basis: &FilteredBasis, map: F) -> Result<SubspaceBasis>
where
    F: Fn(&AlgebraElement) -> Result<TensorElement>,
{
    let cols: Vec<&Word> = basis.words.iter().filter(|w| !w.is_empty()).collect();
    let mut images = Vec::with_capacity(cols.len());
    for w in &cols {
        let e = AlgebraElement::from_word(p.table().clone(), (*w).clone());
        images.push(map(&e)?);
    }
    let coords: BTreeSet<(Word, Word)> = images
        .iter()
        .flat_map(|t| t.terms().map(|(k, _)| k.clone()))
        .collect();
    let rows: Vec<Vec<Scalar>> = coords
        .iter()
        .map(|(a, b)| images.iter().map(|t| t.coefficient(a, b)).collect())
        .collect();
    let kernel = kernel_basis(&rows, cols.len());
    let vectors = kernel
        .into_iter()
        .map(|v| {
            AlgebraElement::from_terms(
                p.table().clone(),
                v.into_iter()
                    .zip(&cols)
                    .map(|(c, w)| ((*w).clone(), c)),
            )
        })
        .collect();
    Ok(SubspaceBasis { vectors })
}

/// P(H) within the bound: the kernel of the delta map.
pub fn primitive_space(p: &Presentation, bound: u32) -> Result<SubspaceBasis> {
    let basis = enumerate_basis(p, bound)?;
    kernel_of(p, &basis, |e| delta(p, e))
}

pub fn primitive_space_on(p: &Presentation, basis: &FilteredBasis) -> Result<SubspaceBasis> {
    kernel_of(p, basis, |e| delta(p, e))
}

/// P_2(H) within the bound: elements c with tau delta(c) = -delta(c) and
/// delta(c) inside P (x) P. Solved as one joint system: unknowns are the
/// coefficients of c over the basis words plus auxiliary coordinates
/// expressing delta(c) in the v_i (x) v_j basis of P (x) P.
pub fn anti_cocommutative_space(p: &Presentation, bound: u32) -> Result<SubspaceBasis> {
    let basis = enumerate_basis(p, bound)?;
    anti_cocommutative_space_on(p, &basis)
}

pub fn anti_cocommutative_space_on(
    p: &Presentation,
    basis: &FilteredBasis,
) -> Result<SubspaceBasis> {
    let prim = primitive_space_on(p, basis)?;
    let cols: Vec<&Word> = basis.words.iter().filter(|w| !w.is_empty()).collect();
    let nw = cols.len();

    let mut delta_images = Vec::with_capacity(nw);
    for w in &cols {
        let e = AlgebraElement::from_word(p.table().clone(), (*w).clone());
        delta_images.push(delta(p, &e)?);
    }
    let sym_images: Vec<TensorElement> = delta_images
        .iter()
        .map(|d| d.add(&d.twist()))
        .collect::<Result<_>>()?;

    let mut products = Vec::new();
    for vi in &prim.vectors {
        for vj in &prim.vectors {
            products.push(TensorElement::pure(vi, vj)?);
        }
    }
    let naux = products.len();

    let mut rows = Vec::new();
    // Block 1: delta(c) - sum mu_ij v_i (x) v_j = 0.
    let coords1: BTreeSet<(Word, Word)> = delta_images
        .iter()
        .chain(products.iter())
        .flat_map(|t| t.terms().map(|(k, _)| k.clone()))
        .collect();
    for (a, b) in &coords1 {
        let mut row = Vec::with_capacity(nw + naux);
        for d in &delta_images {
            row.push(d.coefficient(a, b));
        }
        for t in &products {
            row.push(-t.coefficient(a, b));
        }
        rows.push(row);
    }
    // Block 2: (delta + tau delta)(c) = 0.
    let coords2: BTreeSet<(Word, Word)> = sym_images
        .iter()
        .flat_map(|t| t.terms().map(|(k, _)| k.clone()))
        .collect();
    for (a, b) in &coords2 {
        let mut row = Vec::with_capacity(nw + naux);
        for d in &sym_images {
            row.push(d.coefficient(a, b));
        }
        row.extend(std::iter::repeat(Scalar::zero()).take(naux));
        rows.push(row);
    }

    let kernel = kernel_basis(&rows, nw + naux);
    // Project onto the element coordinates and keep an independent set.
    let mut vectors: Vec<AlgebraElement> = Vec::new();
    for v in kernel {
        let e = AlgebraElement::from_terms(
            p.table().clone(),
            v[..nw]
                .iter()
                .cloned()
                .zip(&cols)
                .map(|(c, w)| ((*w).clone(), c)),
        );
        if !e.is_zero() && !element_in_span(&vectors, &e) {
            vectors.push(e);
        }
    }
    Ok(SubspaceBasis { vectors })
}
