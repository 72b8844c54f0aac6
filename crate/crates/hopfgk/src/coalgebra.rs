//! The coalgebra structure: comultiplication, counit, antipode, the delta
//! map with its symmetric/antisymmetric halves, and the axiom suite.

use std::collections::BTreeMap;

use num::Zero;

use crate::algebra::{AlgebraElement, GenIndex, Word};
use crate::error::Result;
use crate::rewrite::Presentation;
use crate::scalar::{half, one, Scalar};
use crate::tensor::TensorElement;

/// Delta applied to a single letter, as free tensor terms.
fn letter_coproduct(p: &Presentation, g: GenIndex) -> Vec<(Word, Word, Scalar)> {
    let mut out = vec![
        (Word::single(g), Word::empty(), one()),
        (Word::empty(), Word::single(g), one()),
    ];
    for ((a, b), c) in p.delta_tail(g).terms() {
        out.push((a.clone(), b.clone(), c.clone()));
    }
    out
}

/// Normalizes both legs of every term.
pub fn normalize_tensor(p: &Presentation, t: &TensorElement) -> Result<TensorElement> {
    let mut out = TensorElement::zero(p.table().clone());
    for ((a, b), c) in t.terms() {
        let na = p.normal_form(&AlgebraElement::from_word(p.table().clone(), a.clone()))?;
        let nb = p.normal_form(&AlgebraElement::from_word(p.table().clone(), b.clone()))?;
        for (wa, ca) in na.terms() {
            for (wb, cb) in nb.terms() {
                out.add_term(wa.clone(), wb.clone(), c.clone() * ca.clone() * cb.clone());
            }
        }
    }
    Ok(out)
}

fn coproduct_word_free(p: &Presentation, w: &Word) -> TensorElement {
    let mut acc = TensorElement::unit(p.table().clone());
    for &letter in &w.0 {
        let mut next = TensorElement::zero(p.table().clone());
        for ((a, b), c) in acc.terms() {
            for (la, lb, lc) in letter_coproduct(p, letter) {
                next.add_term(a.concat(&la), b.concat(&lb), c.clone() * lc);
            }
        }
        acc = next;
    }
    acc
}

/// The comultiplication, extended multiplicatively over letters and linearly
/// over terms; both legs are normalized once at the end.
pub fn coproduct(p: &Presentation, a: &AlgebraElement) -> Result<TensorElement> {
    let mut free = TensorElement::zero(p.table().clone());
    for (w, c) in a.terms() {
        let cw = coproduct_word_free(p, w);
        for ((x, y), s) in cw.terms() {
            free.add_term(x.clone(), y.clone(), c.clone() * s.clone());
        }
    }
    normalize_tensor(p, &free)
}

/// delta(a) = coproduct(a) - a (x) 1 - 1 (x) a.
pub fn delta(p: &Presentation, a: &AlgebraElement) -> Result<TensorElement> {
    let cop = coproduct(p, a)?;
    let nf = p.normal_form(a)?;
    let unit = p.unit();
    let left = TensorElement::pure(&nf, &unit)?;
    let right = TensorElement::pure(&unit, &nf)?;
    cop.sub(&left)?.sub(&right)
}

/// The cocommutative half (delta + tau delta)/2.
pub fn delta_cc(p: &Presentation, a: &AlgebraElement) -> Result<TensorElement> {
    let d = delta(p, a)?;
    Ok(d.add(&d.twist())?.scale(&half()))
}

/// The anti-cocommutative half (delta - tau delta)/2.
pub fn delta_ac(p: &Presentation, a: &AlgebraElement) -> Result<TensorElement> {
    let d = delta(p, a)?;
    Ok(d.sub(&d.twist())?.scale(&half()))
}

/// Antipode of a single generator: -g for primitives, and
/// -g - sum tail_1 * S(tail_2) for degree-2 generators (the tail legs are
/// primitive, so S on them is just negation).
fn antipode_letter(p: &Presentation, g: GenIndex) -> Result<AlgebraElement> {
    let mut s = p.gen_elem(g).neg();
    for ((a, b), c) in p.delta_tail(g).terms() {
        // -c * a * S(b) = +c * a * b since b is primitive.
        let mut w = a.clone();
        w.0.extend_from_slice(&b.0);
        s.add_term(w, c.clone());
    }
    p.normal_form(&s)
}

/// The antipode, defined on generators and extended as an algebra
/// anti-morphism.
pub fn antipode(p: &Presentation, a: &AlgebraElement) -> Result<AlgebraElement> {
    let n = p.table().len() as GenIndex;
    let letters: Vec<AlgebraElement> = (0..n)
        .map(|g| antipode_letter(p, g))
        .collect::<Result<_>>()?;
    let mut out = p.zero();
    for (w, c) in a.terms() {
        let mut acc = p.unit();
        for &letter in w.0.iter().rev() {
            acc = acc.multiply_free(&letters[letter as usize])?;
        }
        out = out.add(&acc.scale(c))?;
    }
    p.normal_form(&out)
}

/// A list of pure tensor pairs whose sum is the coproduct.
#[derive(Debug, Clone)]
pub struct SweedlerDecomposition {
    pub pairs: Vec<(AlgebraElement, AlgebraElement)>,
}

impl SweedlerDecomposition {
    pub fn reassemble(&self, p: &Presentation) -> Result<TensorElement> {
        let mut t = TensorElement::zero(p.table().clone());
        for (a, b) in &self.pairs {
            t = t.add(&TensorElement::pure(a, b)?)?;
        }
        Ok(t)
    }
}

/// One pair per coproduct term, with the coefficient folded into the left
/// factor.
pub fn sweedler(p: &Presentation, h: &AlgebraElement) -> Result<SweedlerDecomposition> {
    let cop = coproduct(p, h)?;
    let pairs = cop
        .terms()
        .map(|((a, b), c)| {
            let left =
                AlgebraElement::from_word(p.table().clone(), a.clone()).scale(c);
            let right = AlgebraElement::from_word(p.table().clone(), b.clone());
            (left, right)
        })
        .collect();
    Ok(SweedlerDecomposition { pairs })
}

/// Internal triple-tensor carrier for the coassociativity check.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Tensor3 {
    terms: BTreeMap<(Word, Word, Word), Scalar>,
}

impl Tensor3 {
    fn add_term(&mut self, a: Word, b: Word, c: Word, s: Scalar) {
        if s.is_zero() {
            return;
        }
        let key = (a, b, c);
        let e = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *e += s;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }
}

fn coproduct_left(p: &Presentation, t: &TensorElement) -> Result<Tensor3> {
    let mut out = Tensor3::default();
    for ((a, b), c) in t.terms() {
        let cop = coproduct(p, &AlgebraElement::from_word(p.table().clone(), a.clone()))?;
        for ((x, y), s) in cop.terms() {
            out.add_term(x.clone(), y.clone(), b.clone(), c.clone() * s.clone());
        }
    }
    Ok(out)
}

fn coproduct_right(p: &Presentation, t: &TensorElement) -> Result<Tensor3> {
    let mut out = Tensor3::default();
    for ((a, b), c) in t.terms() {
        let cop = coproduct(p, &AlgebraElement::from_word(p.table().clone(), b.clone()))?;
        for ((x, y), s) in cop.terms() {
            out.add_term(a.clone(), x.clone(), y.clone(), c.clone() * s.clone());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum AxiomKind {
    CoproductWellDefined,
    Coassociativity,
    Counit,
    Antipode,
    TailAntisymmetry,
}

impl std::fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            AxiomKind::CoproductWellDefined => "coproduct well-defined on relations",
            AxiomKind::Coassociativity => "coassociativity",
            AxiomKind::Counit => "counit",
            AxiomKind::Antipode => "antipode convolution",
            AxiomKind::TailAntisymmetry => "tail twist-antisymmetry",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub struct AxiomFailure {
    pub axiom: AxiomKind,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks, exactly, that the declared coproduct data really makes the
/// presented algebra a Hopf algebra: the coproduct kills every relation,
/// is coassociative and counital on generators, the antipode convolution
/// identity holds, and every tail is twist-antisymmetric with primitive
/// legs.
pub fn verify_hopf_axioms(p: &Presentation) -> Result<AxiomReport> {
    let mut failures = Vec::new();
    let table = p.table();
    let n = table.len() as GenIndex;

    // (i) coproduct of each relation hi*lo - lo*hi - rhs vanishes.
    for (&(hi, lo), rhs) in p.relations() {
        let chi = coproduct(p, &p.gen_elem(hi))?;
        let clo = coproduct(p, &p.gen_elem(lo))?;
        let crhs = coproduct(p, rhs)?;
        let residual = normalize_tensor(p, &chi.commutator_free(&clo)?)?.sub(&crhs)?;
        if !residual.is_zero() {
            failures.push(AxiomFailure {
                axiom: AxiomKind::CoproductWellDefined,
                witness: format!(
                    "[{},{}]: residual {}",
                    table.get(hi).name,
                    table.get(lo).name,
                    residual
                ),
            });
        }
    }

    for g in 0..n {
        let gen = p.gen_elem(g);
        let name = &table.get(g).name;
        let cop = coproduct(p, &gen)?;

        // (ii) coassociativity.
        if coproduct_left(p, &cop)? != coproduct_right(p, &cop)? {
            failures.push(AxiomFailure {
                axiom: AxiomKind::Coassociativity,
                witness: name.clone(),
            });
        }

        // (iii) counit: contracting either leg gives the generator back.
        let mut left = p.zero();
        let mut right = p.zero();
        for ((a, b), c) in cop.terms() {
            if a.is_empty() {
                left.add_term(b.clone(), c.clone());
            }
            if b.is_empty() {
                right.add_term(a.clone(), c.clone());
            }
        }
        if left != gen || right != gen {
            failures.push(AxiomFailure {
                axiom: AxiomKind::Counit,
                witness: name.clone(),
            });
        }

        // (iv) antipode convolution: sum S(g1) g2 = counit(g) = 0.
        let mut conv = p.zero();
        for ((a, b), c) in cop.terms() {
            let sa = antipode(p, &AlgebraElement::from_word(table.clone(), a.clone()))?;
            let eb = AlgebraElement::from_word(table.clone(), b.clone());
            conv = conv.add(&sa.multiply_free(&eb)?.scale(c))?;
        }
        let conv = p.normal_form(&conv)?;
        if !conv.is_zero() {
            failures.push(AxiomFailure {
                axiom: AxiomKind::Antipode,
                witness: format!("{name}: convolution {conv}"),
            });
        }
    }

    // (v) tails are twist-antisymmetric (primitive legs are enforced at
    // construction).
    for (&g, tail) in p.tails() {
        if !tail.add(&tail.twist())?.is_zero() {
            failures.push(AxiomFailure {
                axiom: AxiomKind::TailAntisymmetry,
                witness: table.get(g).name.clone(),
            });
        }
    }

    Ok(AxiomReport { failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl;
    use crate::rewrite::Relation;
    use crate::scalar::int;
    use std::collections::BTreeMap;

    fn wzz() -> Presentation {
        dsl::builtin("wzz-3-5a").unwrap()
    }

    #[test]
    fn coproduct_of_primitive() {
        let p = wzz();
        let cop = coproduct(&p, &p.gen_elem(0)).unwrap();
        assert_eq!(cop.coefficient(&Word(vec![0]), &Word::empty()), int(1));
        assert_eq!(cop.coefficient(&Word::empty(), &Word(vec![0])), int(1));
        assert_eq!(cop.num_terms(), 2);
    }

    #[test]
    fn coproduct_of_unit_is_grouplike() {
        let p = wzz();
        let cop = coproduct(&p, &p.unit()).unwrap();
        assert_eq!(cop, TensorElement::unit(p.table().clone()));
    }

    #[test]
    fn coproduct_of_commutator_z_x3() {
        // [z,x3] = x2 is primitive, so its coproduct is x2 ox 1 + 1 ox x2.
        let p = wzz();
        let c = p.commutator(&p.gen_elem(3), &p.gen_elem(2)).unwrap();
        let cop = coproduct(&p, &c).unwrap();
        let expected = coproduct(&p, &p.gen_elem(1)).unwrap();
        assert_eq!(cop, expected);
    }

    #[test]
    fn delta_examples() {
        let p = wzz();
        assert!(delta(&p, &p.gen_elem(2)).unwrap().is_zero());

        let dz = delta(&p, &p.gen_elem(3)).unwrap();
        assert_eq!(dz.coefficient(&Word(vec![0]), &Word(vec![1])), int(1));
        assert_eq!(dz.coefficient(&Word(vec![1]), &Word(vec![0])), int(-1));
        assert_eq!(dz.num_terms(), 2);

        // delta kills primitives, so z + 5*x1 has the same image as z.
        let shifted = p.gen_elem(3).add(&p.gen_elem(0).scale(&int(5))).unwrap();
        assert_eq!(delta(&p, &shifted).unwrap(), dz);
    }

    #[test]
    fn delta_halves_split() {
        let p = wzz();
        let z = p.gen_elem(3);
        assert!(delta_cc(&p, &z).unwrap().is_zero());
        assert_eq!(delta_ac(&p, &z).unwrap(), delta(&p, &z).unwrap());

        // On the enveloping part delta is fully cocommutative.
        let u = p.gen_elem(0).multiply_free(&p.gen_elem(1)).unwrap();
        assert_eq!(delta_cc(&p, &u).unwrap(), delta(&p, &u).unwrap());
        assert!(delta_ac(&p, &u).unwrap().is_zero());

        let zz = p.commutator(&z, &z).unwrap();
        assert!(delta_cc(&p, &zz).unwrap().is_zero());
    }

    #[test]
    fn delta_decomposition_identities() {
        use rand::{Rng, SeedableRng};
        let p = wzz();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let mut e = p.zero();
            for _ in 0..2 {
                let len = rng.gen_range(0..3);
                let w = Word((0..len).map(|_| rng.gen_range(0..4)).collect());
                e.add_term(w, int(rng.gen_range(-3..4)));
            }
            let d = delta(&p, &e).unwrap();
            let cc = delta_cc(&p, &e).unwrap();
            let ac = delta_ac(&p, &e).unwrap();
            assert_eq!(cc.add(&ac).unwrap(), d);
            assert_eq!(cc.twist(), cc);
            assert_eq!(ac.twist(), ac.neg());
        }
    }

    #[test]
    fn antipode_examples() {
        let p = wzz();
        assert_eq!(antipode(&p, &p.gen_elem(0)).unwrap(), p.gen_elem(0).neg());

        // S(z) = -z + [x1,x2] = -z + x2.
        let sz = antipode(&p, &p.gen_elem(3)).unwrap();
        let expected = p.gen_elem(3).neg().add(&p.gen_elem(1)).unwrap();
        assert_eq!(sz, expected);

        // Anti-morphism on primitives: S(x1 x2) = S(x2) S(x1) = x2 x1.
        let x1x2 = p.gen_elem(0).multiply_free(&p.gen_elem(1)).unwrap();
        let s = antipode(&p, &x1x2).unwrap();
        let x2x1 = p
            .normal_form(&p.gen_elem(1).multiply_free(&p.gen_elem(0)).unwrap())
            .unwrap();
        assert_eq!(s, x2x1);
    }

    #[test]
    fn sweedler_examples() {
        let p = wzz();
        let sx = sweedler(&p, &p.gen_elem(0)).unwrap();
        assert_eq!(sx.pairs.len(), 2);
        assert_eq!(
            sx.reassemble(&p).unwrap(),
            coproduct(&p, &p.gen_elem(0)).unwrap()
        );

        let szz = sweedler(&p, &p.gen_elem(3)).unwrap();
        assert_eq!(szz.pairs.len(), 4);
        assert_eq!(
            szz.reassemble(&p).unwrap(),
            coproduct(&p, &p.gen_elem(3)).unwrap()
        );

        let s1 = sweedler(&p, &p.unit()).unwrap();
        assert_eq!(s1.pairs.len(), 1);
    }

    #[test]
    fn coproduct_is_algebra_morphism() {
        use rand::{Rng, SeedableRng};
        let p = wzz();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let sample = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut e = p.zero();
                for _ in 0..2 {
                    let len = rng.gen_range(0..3);
                    let w = Word((0..len).map(|_| rng.gen_range(0..4)).collect());
                    e.add_term(w, int(rng.gen_range(-2..3)));
                }
                e
            };
            let a = sample(&mut rng);
            let b = sample(&mut rng);
            let lhs = coproduct(&p, &p.product(&a, &b).unwrap()).unwrap();
            let rhs = normalize_tensor(
                &p,
                &coproduct(&p, &a)
                    .unwrap()
                    .multiply_free(&coproduct(&p, &b).unwrap())
                    .unwrap(),
            )
            .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn axioms_pass_on_builtins() {
        for name in dsl::builtin_names() {
            let p = dsl::builtin(name).unwrap();
            let report = verify_hopf_axioms(&p).unwrap();
            assert!(
                report.passed(),
                "{name}: {:?}",
                report.failures
            );
        }
    }

    #[test]
    fn non_antisymmetric_tail_fails_axiom() {
        // delta z = x ox y without the matching -y ox x.
        let table = crate::algebra::SymbolTable::new(vec![
            ("x".into(), 1),
            ("y".into(), 1),
            ("z".into(), 2),
        ])
        .unwrap();
        let zero = AlgebraElement::zero(table.clone());
        let relations = vec![
            Relation { hi: 1, lo: 0, rhs: zero.clone() },
            Relation { hi: 2, lo: 0, rhs: zero.clone() },
            Relation { hi: 2, lo: 1, rhs: zero.clone() },
        ];
        let mut tails = BTreeMap::new();
        tails.insert(
            2,
            TensorElement::from_terms(
                table.clone(),
                vec![(Word(vec![0]), Word(vec![1]), int(1))],
            ),
        );
        let p = Presentation::new("bad-tail", table, relations, tails).unwrap();
        let report = verify_hopf_axioms(&p).unwrap();
        assert!(report
            .failures
            .iter()
            .any(|f| f.axiom == AxiomKind::TailAntisymmetry));
    }
}
