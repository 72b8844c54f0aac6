//! Generator symbols, words in the free algebra, and exact linear
//! combinations of words.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::Zero;

use crate::error::{AlgebraError, Result};
use crate::scalar::{format_scalar, Scalar};

pub type GenIndex = u32;

/// A named generator with its position in declaration order and its declared
/// coradical degree (1 = primitive, 2 = anti-cocommutative non-primitive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSymbol {
    pub name: String,
    pub index: GenIndex,
    pub degree: u8,
}

/// The ordered generator list shared by every element of one presentation.
#[derive(Debug, PartialEq, Eq)]
pub struct SymbolTable {
    generators: Vec<GeneratorSymbol>,
}

impl SymbolTable {
    pub fn new(gens: Vec<(String, u8)>) -> Result<Arc<Self>> {
        let mut seen = std::collections::BTreeSet::new();
        for (name, deg) in &gens {
            if !seen.insert(name.clone()) {
                return Err(AlgebraError::InvalidPresentation(format!(
                    "duplicate generator `{name}`"
                )));
            }
            if *deg != 1 && *deg != 2 {
                return Err(AlgebraError::InvalidPresentation(format!(
                    "generator `{name}` has degree {deg}; only 1 and 2 are supported"
                )));
            }
        }
        let generators = gens
            .into_iter()
            .enumerate()
            .map(|(i, (name, degree))| GeneratorSymbol {
                name,
                index: i as GenIndex,
                degree,
            })
            .collect();
        Ok(Arc::new(SymbolTable { generators }))
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, idx: GenIndex) -> &GeneratorSymbol {
        &self.generators[idx as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<GenIndex> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as GenIndex)
    }

    pub fn weight(&self, idx: GenIndex) -> u32 {
        self.generators[idx as usize].degree as u32
    }

    pub fn max_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree as u32).max().unwrap_or(1)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GeneratorSymbol> {
        self.generators.iter()
    }

    /// Indices of the degree-1 (primitive) generators.
    pub fn primitive_indices(&self) -> Vec<GenIndex> {
        self.generators
            .iter()
            .filter(|g| g.degree == 1)
            .map(|g| g.index)
            .collect()
    }

    /// Indices of the degree-2 generators.
    pub fn degree_two_indices(&self) -> Vec<GenIndex> {
        self.generators
            .iter()
            .filter(|g| g.degree == 2)
            .map(|g| g.index)
            .collect()
    }
}

/// A monomial: a finite sequence of generator indices. The empty word is the
/// unit. Normal form means nondecreasing indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<GenIndex>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(i: GenIndex) -> Self {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn is_normal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Position of the first adjacent descent, if any.
    pub fn first_descent(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[0] > w[1])
    }

    pub fn weighted_degree(&self, table: &SymbolTable) -> u32 {
        self.0.iter().map(|&i| table.weight(i)).sum()
    }

    /// Number of out-of-order pairs; part of the termination measure of the
    /// rewriting loop.
    pub fn inversions(&self) -> usize {
        let n = self.0.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[i] > self.0[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn display<'a>(&'a self, table: &'a SymbolTable) -> WordDisplay<'a> {
        WordDisplay { word: self, table }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    table: &'a SymbolTable,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<&str> = self
            .word
            .0
            .iter()
            .map(|&i| self.table.get(i).name.as_str())
            .collect();
        write!(f, "{}", names.join("*"))
    }
}

/// A finite rational linear combination of words over one symbol table.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    table: Arc<SymbolTable>,
    terms: BTreeMap<Word, Scalar>,
}

impl AlgebraElement {
    pub fn zero(table: Arc<SymbolTable>) -> Self {
        AlgebraElement {
            table,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(table: Arc<SymbolTable>) -> Self {
        Self::from_word(table, Word::empty())
    }

    pub fn generator(table: Arc<SymbolTable>, idx: GenIndex) -> Self {
        Self::from_word(table, Word::single(idx))
    }

    pub fn from_word(table: Arc<SymbolTable>, word: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(word, crate::scalar::one());
        AlgebraElement { table, terms }
    }

    pub fn from_terms<I>(table: Arc<SymbolTable>, it: I) -> Self
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut e = Self::zero(table);
        for (w, c) in it {
            e.add_term(w, c);
        }
        e
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The counit: the coefficient of the empty word.
    pub fn counit(&self) -> Scalar {
        self.coefficient(&Word::empty())
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(Word::is_normal)
    }

    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_table(&self, other: &AlgebraElement) -> Result<()> {
        if Arc::ptr_eq(&self.table, &other.table) || self.table == other.table {
            Ok(())
        } else {
            Err(AlgebraError::PresentationMismatch)
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> AlgebraElement {
        if s.is_zero() {
            return Self::zero(self.table.clone());
        }
        AlgebraElement {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    /// Free (concatenation) product; the result may contain non-normal words.
    pub fn multiply_free(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_table(other)?;
        let mut out = Self::zero(self.table.clone());
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    /// `self * other - other * self` in the free algebra.
    pub fn commutator_free(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        let ab = self.multiply_free(other)?;
        let ba = other.multiply_free(self)?;
        ab.sub(&ba)
    }

    /// Letters occurring anywhere in the support.
    pub fn support_letters(&self) -> std::collections::BTreeSet<GenIndex> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).collect()
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let cs = format_scalar(c);
            let (sign, mag) = if let Some(stripped) = cs.strip_prefix('-') {
                ("-", stripped.to_string())
            } else {
                ("+", cs)
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if w.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag == "1" {
                write!(f, "{}", w.display(&self.table))?;
            } else {
                write!(f, "{}*{}", mag, w.display(&self.table))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{half, int};

    fn table3() -> Arc<SymbolTable> {
        SymbolTable::new(vec![
            ("x1".into(), 1),
            ("x2".into(), 1),
            ("x3".into(), 1),
        ])
        .unwrap()
    }

    #[test]
    fn additive_inverse_cancels() {
        let t = table3();
        let x1 = AlgebraElement::generator(t.clone(), 0);
        let sum = x1.add(&x1.neg()).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn add_keeps_distinct_terms() {
        let t = table3();
        let x1 = AlgebraElement::generator(t.clone(), 0);
        let x2 = AlgebraElement::generator(t.clone(), 1);
        let sum = x1.add(&x2).unwrap();
        assert_eq!(sum.num_terms(), 2);
    }

    #[test]
    fn scalar_halves_recombine() {
        let t = table3();
        let z = AlgebraElement::generator(t.clone(), 2);
        let h = z.scale(&half());
        assert_eq!(h.add(&h).unwrap(), z);
    }

    #[test]
    fn concatenation_is_free() {
        let t = table3();
        let x1 = AlgebraElement::generator(t.clone(), 0);
        let x2 = AlgebraElement::generator(t.clone(), 1);
        let p = x2.multiply_free(&x1).unwrap();
        let w: Vec<_> = p.terms().collect();
        assert_eq!(w.len(), 1);
        assert_eq!(*w[0].0, Word(vec![1, 0]));
        assert!(!w[0].0.is_normal());
    }

    #[test]
    fn unit_law() {
        let t = table3();
        let one = AlgebraElement::unit(t.clone());
        let z = AlgebraElement::generator(t.clone(), 2);
        assert_eq!(one.multiply_free(&z).unwrap(), z);
        assert_eq!(z.multiply_free(&one).unwrap(), z);
    }

    #[test]
    fn distributivity_example() {
        let t = table3();
        let x1 = AlgebraElement::generator(t.clone(), 0);
        let x2 = AlgebraElement::generator(t.clone(), 1);
        let x3 = AlgebraElement::generator(t.clone(), 2);
        let lhs = x1.add(&x2).unwrap().multiply_free(&x3).unwrap();
        let rhs = x1
            .multiply_free(&x3)
            .unwrap()
            .add(&x2.multiply_free(&x3).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_self_vanishes() {
        let t = table3();
        let x1 = AlgebraElement::generator(t.clone(), 0);
        assert!(x1.commutator_free(&x1).unwrap().is_zero());
    }

    #[test]
    fn commutator_free_expands() {
        let t = table3();
        let x1 = AlgebraElement::generator(t.clone(), 0);
        let x2 = AlgebraElement::generator(t.clone(), 1);
        let c = x1.commutator_free(&x2).unwrap();
        assert_eq!(c.coefficient(&Word(vec![0, 1])), int(1));
        assert_eq!(c.coefficient(&Word(vec![1, 0])), int(-1));
    }

    #[test]
    fn mismatched_tables_error() {
        let t1 = table3();
        let t2 = SymbolTable::new(vec![("y".into(), 1)]).unwrap();
        let a = AlgebraElement::generator(t1, 0);
        let b = AlgebraElement::generator(t2, 0);
        assert!(matches!(
            a.add(&b),
            Err(AlgebraError::PresentationMismatch)
        ));
    }

    #[test]
    fn duplicate_generator_rejected() {
        assert!(SymbolTable::new(vec![("x".into(), 1), ("x".into(), 2)]).is_err());
        assert!(SymbolTable::new(vec![("x".into(), 3)]).is_err());
    }

    #[test]
    fn display_formats() {
        let t = table3();
        let x1 = AlgebraElement::generator(t.clone(), 0);
        let x2 = AlgebraElement::generator(t.clone(), 1);
        let e = x1
            .multiply_free(&x2)
            .unwrap()
            .sub(&x2.scale(&half()))
            .unwrap();
        assert_eq!(e.to_string(), "x1*x2 - 1/2*x2");
    }
}
