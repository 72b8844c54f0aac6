//! Elements of the tensor square H (x) H: rational combinations of ordered
//! pairs of words, with the twist involution.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::Zero;

use crate::algebra::{AlgebraElement, SymbolTable, Word};
use crate::error::{AlgebraError, Result};
use crate::scalar::{format_scalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    table: Arc<SymbolTable>,
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorElement {
    pub fn zero(table: Arc<SymbolTable>) -> Self {
        TensorElement {
            table,
            terms: BTreeMap::new(),
        }
    }

    /// 1 (x) 1.
    pub fn unit(table: Arc<SymbolTable>) -> Self {
        let mut t = Self::zero(table);
        t.add_term(Word::empty(), Word::empty(), crate::scalar::one());
        t
    }

    pub fn from_terms<I>(table: Arc<SymbolTable>, it: I) -> Self
    where
        I: IntoIterator<Item = (Word, Word, Scalar)>,
    {
        let mut t = Self::zero(table);
        for (a, b, c) in it {
            t.add_term(a, b, c);
        }
        t
    }

    /// The pure tensor a (x) b, distributing over the terms of both factors.
    pub fn pure(a: &AlgebraElement, b: &AlgebraElement) -> Result<TensorElement> {
        if a.table() != b.table() {
            return Err(AlgebraError::PresentationMismatch);
        }
        let mut t = Self::zero(a.table().clone());
        for (w1, c1) in a.terms() {
            for (w2, c2) in b.terms() {
                t.add_term(w1.clone(), w2.clone(), c1.clone() * c2.clone());
            }
        }
        Ok(t)
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: &Word, b: &Word) -> Scalar {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, a: Word, b: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((a, b)) {
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

    fn check_table(&self, other: &TensorElement) -> Result<()> {
        if Arc::ptr_eq(&self.table, &other.table) || self.table == other.table {
            Ok(())
        } else {
            Err(AlgebraError::PresentationMismatch)
        }
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_table(other)?;
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TensorElement {
        TensorElement {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> TensorElement {
        if s.is_zero() {
            return Self::zero(self.table.clone());
        }
        TensorElement {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    /// Componentwise product (a (x) b)(c (x) d) = ac (x) bd in the free
    /// algebra; legs may leave normal form.
    pub fn multiply_free(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_table(other)?;
        let mut out = Self::zero(self.table.clone());
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term(a1.concat(a2), b1.concat(b2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn commutator_free(&self, other: &TensorElement) -> Result<TensorElement> {
        let ab = self.multiply_free(other)?;
        let ba = other.multiply_free(self)?;
        ab.sub(&ba)
    }

    /// The twist tau(v (x) w) = w (x) v.
    pub fn twist(&self) -> TensorElement {
        TensorElement {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((b.clone(), a.clone()), c.clone()))
                .collect(),
        }
    }

    pub fn is_normal(&self) -> bool {
        self.terms
            .keys()
            .all(|(a, b)| a.is_normal() && b.is_normal())
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in &self.terms {
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
            if mag != "1" {
                write!(f, "{}*", mag)?;
            }
            write!(
                f,
                "({} ox {})",
                a.display(&self.table),
                b.display(&self.table)
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn table() -> Arc<SymbolTable> {
        SymbolTable::new(vec![("x".into(), 1), ("y".into(), 1)]).unwrap()
    }

    #[test]
    fn twist_is_involution() {
        let t = table();
        let el = TensorElement::from_terms(
            t,
            vec![
                (Word(vec![0]), Word(vec![1]), int(1)),
                (Word(vec![1]), Word(vec![0]), int(-1)),
            ],
        );
        assert_eq!(el.twist().twist(), el);
        assert_eq!(el.twist(), el.neg());
    }

    #[test]
    fn componentwise_product() {
        let t = table();
        let x = AlgebraElement::generator(t.clone(), 0);
        let y = AlgebraElement::generator(t.clone(), 1);
        let a = TensorElement::pure(&x, &y).unwrap();
        let b = TensorElement::pure(&y, &x).unwrap();
        let p = a.multiply_free(&b).unwrap();
        assert_eq!(p.coefficient(&Word(vec![0, 1]), &Word(vec![1, 0])), int(1));
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn unit_multiplies_trivially() {
        let t = table();
        let one = TensorElement::unit(t.clone());
        let x = AlgebraElement::generator(t.clone(), 0);
        let a = TensorElement::pure(&x, &x).unwrap();
        assert_eq!(one.multiply_free(&a).unwrap(), a);
    }
}
