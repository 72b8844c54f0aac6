//! Relation sets, reduction to PBW normal form, and the overlap (diamond
//! lemma) confluence check.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

use crate::algebra::{AlgebraElement, GenIndex, SymbolTable, Word};
use crate::error::{AlgebraError, Result};
use crate::scalar::Scalar;
use crate::tensor::TensorElement;

/// Default step budget for a single normal-form computation. Degree-dropping
/// relations terminate long before this; the budget only catches malformed
/// presentations built through the unvalidated constructor.
const REWRITE_BUDGET: u64 = 5_000_000;

/// A rewrite rule hi*lo = lo*hi + rhs with hi declared after lo.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub hi: GenIndex,
    pub lo: GenIndex,
    pub rhs: AlgebraElement,
}

/// A relation-closed subset of generators, denoting a Hopf subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraSpec {
    pub label: String,
    pub indices: BTreeSet<GenIndex>,
}

impl SubalgebraSpec {
    pub fn new(label: impl Into<String>, indices: impl IntoIterator<Item = GenIndex>) -> Self {
        SubalgebraSpec {
            label: label.into(),
            indices: indices.into_iter().collect(),
        }
    }

    pub fn contains(&self, idx: GenIndex) -> bool {
        self.indices.contains(&idx)
    }
}

/// Outcome of reducing one overlap word g_i g_j g_k along both critical-pair
/// paths.
#[derive(Debug, Clone)]
pub struct ConfluenceFailure {
    pub triple: (GenIndex, GenIndex, GenIndex),
    pub left_reduct: AlgebraElement,
    pub right_reduct: AlgebraElement,
}

#[derive(Debug, Clone)]
pub struct ConfluenceReport {
    pub confluent: bool,
    pub triples_checked: usize,
    pub failures: Vec<ConfluenceFailure>,
}

/// A finitely presented algebra: ordered generators, one commutator relation
/// per unordered pair, and a coproduct tail for each degree-2 generator.
#[derive(Debug)]
pub struct Presentation {
    pub name: String,
    table: Arc<SymbolTable>,
    relations: BTreeMap<(GenIndex, GenIndex), AlgebraElement>,
    tails: BTreeMap<GenIndex, TensorElement>,
    confluence: OnceLock<ConfluenceReport>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.table == other.table
            && self.relations == other.relations
            && self.tails == other.tails
    }
}

impl Presentation {
    /// Builds and validates a presentation. Structural rules enforced here:
    /// exactly one relation per pair of distinct generators; rhs words in
    /// normal form, length at most 2, and of weighted degree strictly below
    /// the pair being rewritten; tails only on degree-2 generators with
    /// single-letter primitive legs. Antisymmetry of tails is left to the
    /// Hopf-axiom suite (and the parser), so deliberately broken coproducts
    /// can still be constructed and reported.
    pub fn new(
        name: impl Into<String>,
        table: Arc<SymbolTable>,
        relations: Vec<Relation>,
        tails: BTreeMap<GenIndex, TensorElement>,
    ) -> Result<Self> {
        let name = name.into();
        let n = table.len() as GenIndex;
        let mut map = BTreeMap::new();
        for rel in relations {
            if rel.hi >= n || rel.lo >= n {
                return Err(AlgebraError::InvalidPresentation(
                    "relation references an undeclared generator".into(),
                ));
            }
            if rel.hi <= rel.lo {
                return Err(AlgebraError::InvalidPresentation(format!(
                    "relation pair ({}, {}) is not ordered hi > lo",
                    table.get(rel.hi).name,
                    table.get(rel.lo).name
                )));
            }
            if rel.rhs.table() != &table {
                return Err(AlgebraError::PresentationMismatch);
            }
            let cap = table.weight(rel.hi) + table.weight(rel.lo);
            for (w, _) in rel.rhs.terms() {
                if !w.is_normal() {
                    return Err(AlgebraError::InvalidPresentation(format!(
                        "relation [{},{}] has a non-normal rhs word",
                        table.get(rel.hi).name,
                        table.get(rel.lo).name
                    )));
                }
                if w.len() > 2 {
                    return Err(AlgebraError::InvalidPresentation(format!(
                        "relation [{},{}] has an rhs word longer than 2",
                        table.get(rel.hi).name,
                        table.get(rel.lo).name
                    )));
                }
                if w.weighted_degree(&table) >= cap {
                    return Err(AlgebraError::InvalidPresentation(format!(
                        "relation [{},{}] is not degree-dropping",
                        table.get(rel.hi).name,
                        table.get(rel.lo).name
                    )));
                }
            }
            if map.insert((rel.hi, rel.lo), rel.rhs).is_some() {
                return Err(AlgebraError::InvalidPresentation(format!(
                    "duplicate relation for pair ({}, {})",
                    table.get(rel.hi).name,
                    table.get(rel.lo).name
                )));
            }
        }
        for hi in 1..n {
            for lo in 0..hi {
                if !map.contains_key(&(hi, lo)) {
                    return Err(AlgebraError::InvalidPresentation(format!(
                        "missing relation for pair ({}, {})",
                        table.get(lo).name,
                        table.get(hi).name
                    )));
                }
            }
        }
        for (&g, tail) in &tails {
            if g >= n || table.get(g).degree != 2 {
                return Err(AlgebraError::InvalidPresentation(
                    "coproduct tail declared on a non-degree-2 generator".into(),
                ));
            }
            if tail.table() != &table {
                return Err(AlgebraError::PresentationMismatch);
            }
            for ((a, b), _) in tail.terms() {
                let leg_ok = |w: &Word| w.len() == 1 && table.get(w.0[0]).degree == 1;
                if !leg_ok(a) || !leg_ok(b) {
                    return Err(AlgebraError::InvalidPresentation(format!(
                        "tail of {} has a non-primitive leg",
                        table.get(g).name
                    )));
                }
            }
        }
        for g in table.degree_two_indices() {
            if !tails.contains_key(&g) {
                return Err(AlgebraError::InvalidPresentation(format!(
                    "degree-2 generator {} has no declared coproduct tail",
                    table.get(g).name
                )));
            }
        }
        Ok(Presentation {
            name,
            table,
            relations: map,
            tails,
            confluence: OnceLock::new(),
        })
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn relation(&self, hi: GenIndex, lo: GenIndex) -> &AlgebraElement {
        &self.relations[&(hi, lo)]
    }

    pub fn relations(&self) -> impl Iterator<Item = (&(GenIndex, GenIndex), &AlgebraElement)> {
        self.relations.iter()
    }

    /// The coproduct tail of a generator; zero for primitives.
    pub fn delta_tail(&self, g: GenIndex) -> TensorElement {
        self.tails
            .get(&g)
            .cloned()
            .unwrap_or_else(|| TensorElement::zero(self.table.clone()))
    }

    pub fn tails(&self) -> impl Iterator<Item = (&GenIndex, &TensorElement)> {
        self.tails.iter()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.table.clone())
    }

    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement::unit(self.table.clone())
    }

    pub fn gen_elem(&self, idx: GenIndex) -> AlgebraElement {
        AlgebraElement::generator(self.table.clone(), idx)
    }

    /// The degree-1 generator subset, labeled U_H.
    pub fn enveloping_sub(&self) -> SubalgebraSpec {
        SubalgebraSpec::new("U_H", self.table.primitive_indices())
    }

    pub fn full_sub(&self) -> SubalgebraSpec {
        SubalgebraSpec::new("H", self.table.iter().map(|g| g.index))
    }

    /// Applies one rewrite step at the given descent position of `word`,
    /// returning the resulting terms (the swapped word plus the embedded
    /// relation tail).
    pub(crate) fn rewrite_at(&self, word: &Word, pos: usize) -> Vec<(Word, Scalar)> {
        let hi = word.0[pos];
        let lo = word.0[pos + 1];
        debug_assert!(hi > lo);
        let rhs = &self.relations[&(hi, lo)];
        let mut out = Vec::with_capacity(1 + rhs.num_terms());
        let mut swapped = word.clone();
        swapped.0.swap(pos, pos + 1);
        out.push((swapped, crate::scalar::one()));
        let prefix = &word.0[..pos];
        let suffix = &word.0[pos + 2..];
        for (w, c) in rhs.terms() {
            let mut v = Vec::with_capacity(prefix.len() + w.len() + suffix.len());
            v.extend_from_slice(prefix);
            v.extend_from_slice(&w.0);
            v.extend_from_slice(suffix);
            out.push((Word(v), c.clone()));
        }
        out
    }

    /// Reduces an element to PBW normal form: every word nondecreasing.
    pub fn normal_form(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        if a.table() != &self.table {
            return Err(AlgebraError::PresentationMismatch);
        }
        let mut result = self.zero();
        let mut stack: Vec<(Word, Scalar)> =
            a.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut budget = REWRITE_BUDGET;
        while let Some((word, coeff)) = stack.pop() {
            match word.first_descent() {
                None => result.add_term(word, coeff),
                Some(pos) => {
                    if budget == 0 {
                        return Err(AlgebraError::RewriteBudgetExhausted(REWRITE_BUDGET));
                    }
                    budget -= 1;
                    for (w, c) in self.rewrite_at(&word, pos) {
                        stack.push((w, coeff.clone() * c));
                    }
                }
            }
        }
        Ok(result)
    }

    /// Normal form of the commutator [a, b] = ab - ba.
    pub fn commutator(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.normal_form(&a.commutator_free(b)?)
    }

    /// Normal form of the product ab.
    pub fn product(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.normal_form(&a.multiply_free(b)?)
    }

    /// Checks every overlap word g_i g_j g_k (i > j > k) by reducing along
    /// both critical-pair paths and comparing the results.
    pub fn check_confluence(&self) -> &ConfluenceReport {
        self.confluence.get_or_init(|| {
            let n = self.table.len() as GenIndex;
            let mut failures = Vec::new();
            let mut checked = 0usize;
            for i in 2..n {
                for j in 1..i {
                    for k in 0..j {
                        checked += 1;
                        let word = Word(vec![i, j, k]);
                        let reduce_from = |pos: usize| -> AlgebraElement {
                            let mut e = self.zero();
                            for (w, c) in self.rewrite_at(&word, pos) {
                                e.add_term(w, c);
                            }
                            // Degree-dropping rules terminate, so the
                            // budget error cannot fire here.
                            self.normal_form(&e).expect("reduction terminates")
                        };
                        let left = reduce_from(0);
                        let right = reduce_from(1);
                        if left != right {
                            failures.push(ConfluenceFailure {
                                triple: (i, j, k),
                                left_reduct: left,
                                right_reduct: right,
                            });
                        }
                    }
                }
            }
            ConfluenceReport {
                confluent: failures.is_empty(),
                triples_checked: checked,
                failures,
            }
        })
    }

    pub fn is_confluent(&self) -> bool {
        self.check_confluence().confluent
    }

    pub fn require_confluent(&self) -> Result<()> {
        if self.is_confluent() {
            Ok(())
        } else {
            Err(AlgebraError::NotConfluent)
        }
    }

    /// A subalgebra is relation-closed when every relation among its
    /// generators has rhs supported inside the subset.
    pub fn validate_sub(&self, sub: &SubalgebraSpec) -> Result<()> {
        for &idx in &sub.indices {
            if idx >= self.table.len() as GenIndex {
                return Err(AlgebraError::InvalidPresentation(format!(
                    "subalgebra `{}` references an undeclared generator",
                    sub.label
                )));
            }
        }
        for (&(hi, lo), rhs) in &self.relations {
            if sub.contains(hi) && sub.contains(lo) {
                let outside = rhs.support_letters().into_iter().find(|l| !sub.contains(*l));
                if outside.is_some() {
                    return Err(AlgebraError::InvalidSubalgebra {
                        label: sub.label.clone(),
                        hi: self.table.get(hi).name.clone(),
                        lo: self.table.get(lo).name.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// True iff the normal form of `a` is supported on words using only
    /// generators of `sub`.
    pub fn is_member(&self, a: &AlgebraElement, sub: &SubalgebraSpec) -> Result<bool> {
        self.validate_sub(sub)?;
        let nf = self.normal_form(a)?;
        Ok(nf.support_letters().iter().all(|l| sub.contains(*l)))
    }

    /// The sub-presentation on a relation-closed generator subset whose
    /// coproduct tails also stay inside the subset.
    pub fn restrict(&self, sub: &SubalgebraSpec) -> Result<Presentation> {
        self.validate_sub(sub)?;
        let kept: Vec<GenIndex> = sub.indices.iter().copied().collect();
        let mut reindex: BTreeMap<GenIndex, GenIndex> = BTreeMap::new();
        let mut gens = Vec::new();
        for (new_idx, &old) in kept.iter().enumerate() {
            reindex.insert(old, new_idx as GenIndex);
            let g = self.table.get(old);
            gens.push((g.name.clone(), g.degree));
        }
        let table = SymbolTable::new(gens)?;
        let remap_word = |w: &Word| -> Result<Word> {
            w.0.iter()
                .map(|l| {
                    reindex.get(l).copied().ok_or_else(|| {
                        AlgebraError::InvalidSubalgebra {
                            label: sub.label.clone(),
                            hi: self.table.get(*l).name.clone(),
                            lo: String::new(),
                        }
                    })
                })
                .collect::<Result<Vec<_>>>()
                .map(Word)
        };
        let mut relations = Vec::new();
        for (&(hi, lo), rhs) in &self.relations {
            if sub.contains(hi) && sub.contains(lo) {
                let mut new_rhs = AlgebraElement::zero(table.clone());
                for (w, c) in rhs.terms() {
                    new_rhs.add_term(remap_word(w)?, c.clone());
                }
                relations.push(Relation {
                    hi: reindex[&hi],
                    lo: reindex[&lo],
                    rhs: new_rhs,
                });
            }
        }
        let mut tails = BTreeMap::new();
        for (&g, tail) in &self.tails {
            if sub.contains(g) {
                let mut new_tail = TensorElement::zero(table.clone());
                for ((a, b), c) in tail.terms() {
                    new_tail.add_term(remap_word(a)?, remap_word(b)?, c.clone());
                }
                tails.insert(reindex[&g], new_tail);
            }
        }
        Presentation::new(
            format!("{}/{}", self.name, sub.label),
            table,
            relations,
            tails,
        )
    }
}
