//! Adjoint actions, normality of Hopf subalgebras, the bracket criterion for
//! the enveloping subalgebra, and almost-centralizing-extension checks.

use crate::algebra::{AlgebraElement, GenIndex};
use crate::coalgebra::{antipode, delta, delta_ac, delta_cc, sweedler};
use crate::error::{AlgebraError, Result};
use crate::rewrite::{Presentation, SubalgebraSpec};
use crate::solver::{
    anti_cocommutative_space, default_bound, element_in_span, enumerate_words, primitive_space,
    tensor_in_span, WeightMode,
};
use crate::tensor::TensorElement;

/// ad_l[h](a) = sum h_1 a S(h_2), fully normalized.
pub fn adjoint_left(
    p: &Presentation,
    h: &AlgebraElement,
    a: &AlgebraElement,
) -> Result<AlgebraElement> {
    p.require_confluent()?;
    let dec = sweedler(p, h)?;
    let mut out = p.zero();
    for (h1, h2) in &dec.pairs {
        let s2 = antipode(p, h2)?;
        let term = h1.multiply_free(a)?.multiply_free(&s2)?;
        out = out.add(&term)?;
    }
    p.normal_form(&out)
}

/// ad_r[h](a) = sum S(h_1) a h_2, fully normalized.
pub fn adjoint_right(
    p: &Presentation,
    h: &AlgebraElement,
    a: &AlgebraElement,
) -> Result<AlgebraElement> {
    p.require_confluent()?;
    let dec = sweedler(p, h)?;
    let mut out = p.zero();
    for (h1, h2) in &dec.pairs {
        let s1 = antipode(p, h1)?;
        let term = s1.multiply_free(a)?.multiply_free(h2)?;
        out = out.add(&term)?;
    }
    p.normal_form(&out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum AdjointSide {
    Left,
    Right,
}

#[derive(Debug, Clone)]
pub struct NormalityWitness {
    pub actor: GenIndex,
    pub target: GenIndex,
    pub value: AlgebraElement,
    pub side: AdjointSide,
}

#[derive(Debug, Clone)]
pub struct NormalityReport {
    pub is_normal: bool,
    pub witnesses: Vec<NormalityWitness>,
}

/// Checks stability of `sub` under both adjoint actions. Generator checks
/// suffice because adjoints of products compose, so the default grid is
/// (every generator of p) x (every generator of sub); `full` additionally
/// runs every length-2 product of generators as an actor.
pub fn check_normal(
    p: &Presentation,
    sub: &SubalgebraSpec,
    full: bool,
) -> Result<NormalityReport> {
    p.require_confluent()?;
    p.validate_sub(sub)?;
    let n = p.table().len() as GenIndex;
    let mut witnesses = Vec::new();
    let mut actors: Vec<AlgebraElement> = (0..n).map(|g| p.gen_elem(g)).collect();
    let mut actor_names: Vec<GenIndex> = (0..n).collect();
    if full {
        for i in 0..n {
            for j in 0..n {
                actors.push(p.gen_elem(i).multiply_free(&p.gen_elem(j))?);
                actor_names.push(i);
            }
        }
    }
    for (actor_idx, h) in actor_names.iter().zip(&actors) {
        for &t in &sub.indices {
            let a = p.gen_elem(t);
            let left = adjoint_left(p, h, &a)?;
            if !p.is_member(&left, sub)? {
                witnesses.push(NormalityWitness {
                    actor: *actor_idx,
                    target: t,
                    value: left,
                    side: AdjointSide::Left,
                });
            }
            let right = adjoint_right(p, h, &a)?;
            if !p.is_member(&right, sub)? {
                witnesses.push(NormalityWitness {
                    actor: *actor_idx,
                    target: t,
                    value: right,
                    side: AdjointSide::Right,
                });
            }
        }
    }
    Ok(NormalityReport {
        is_normal: witnesses.is_empty(),
        witnesses,
    })
}

/// The bracket criterion: U_H is normal iff every commutator of a degree-2
/// generator with a primitive generator is again a combination of primitive
/// generators. Requires the degree-1 generators to span the primitive space
/// at the default bound.
pub fn bracket_criterion(p: &Presentation) -> Result<bool> {
    p.require_confluent()?;
    let prim_gens = p.table().primitive_indices();
    let prim = primitive_space(p, default_bound(p))?;
    if prim.dim() != prim_gens.len() {
        return Err(AlgebraError::CriterionInapplicable(format!(
            "degree-1 generators do not span the primitive space: {} generators vs dimension {}",
            prim_gens.len(),
            prim.dim()
        )));
    }
    for &t in &p.table().degree_two_indices() {
        for &g in &prim_gens {
            let c = p.commutator(&p.gen_elem(t), &p.gen_elem(g))?;
            let primitive_supported = c
                .terms()
                .all(|(w, _)| w.len() == 1 && p.table().get(w.0[0]).degree == 1);
            if !primitive_supported {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct AceWitness {
    pub left: GenIndex,
    pub right: GenIndex,
    pub value: AlgebraElement,
}

#[derive(Debug, Clone)]
pub struct AceReport {
    pub passes: bool,
    /// Commutators [a, h_i] that leave the subalgebra.
    pub condition1_failures: Vec<AceWitness>,
    /// Commutators [h_i, h_j] outside sum h_m A + A.
    pub condition2_failures: Vec<AceWitness>,
}

fn complement_of(p: &Presentation, sub: &SubalgebraSpec) -> Vec<GenIndex> {
    (0..p.table().len() as GenIndex)
        .filter(|g| !sub.contains(*g))
        .collect()
}

/// Verifies that the whole algebra is an almost centralizing extension of
/// `sub`: commutators of sub elements with the complement generators stay in
/// sub, and commutators among complement generators lie in
/// sum h_m sub + sub (decided by exact linear membership over a
/// degree-bounded basis).
pub fn check_almost_centralizing(p: &Presentation, sub: &SubalgebraSpec) -> Result<AceReport> {
    p.require_confluent()?;
    p.validate_sub(sub)?;
    let complement = complement_of(p, sub);
    // Precondition: complement tails stay inside sub (x) sub.
    for &h in &complement {
        for ((a, b), _) in p.delta_tail(h).terms() {
            let leg_in = |w: &crate::algebra::Word| w.0.iter().all(|l| sub.contains(*l));
            if !leg_in(a) || !leg_in(b) {
                return Err(AlgebraError::CriterionInapplicable(format!(
                    "coproduct tail of {} leaves {} (x) {}",
                    p.table().get(h).name,
                    sub.label,
                    sub.label
                )));
            }
        }
    }

    let mut condition1_failures = Vec::new();
    for &a in &sub.indices {
        for &h in &complement {
            let c = p.commutator(&p.gen_elem(a), &p.gen_elem(h))?;
            if !p.is_member(&c, sub)? {
                condition1_failures.push(AceWitness {
                    left: a,
                    right: h,
                    value: c,
                });
            }
        }
    }

    let mut condition2_failures = Vec::new();
    for (pos, &hi) in complement.iter().enumerate() {
        for &hj in complement.iter().skip(pos) {
            let target = p.commutator(&p.gen_elem(hi), &p.gen_elem(hj))?;
            if target.is_zero() {
                continue;
            }
            let bound = p.table().weight(hi) + p.table().weight(hj);
            let span = extension_span(p, sub, &complement, bound)?;
            if !element_in_span(&span, &target) {
                condition2_failures.push(AceWitness {
                    left: hi,
                    right: hj,
                    value: target,
                });
            }
        }
    }

    Ok(AceReport {
        passes: condition1_failures.is_empty() && condition2_failures.is_empty(),
        condition1_failures,
        condition2_failures,
    })
}

/// Spanning set for sum h_m sub + sub up to the weighted bound.
fn extension_span(
    p: &Presentation,
    sub: &SubalgebraSpec,
    complement: &[GenIndex],
    bound: u32,
) -> Result<Vec<AlgebraElement>> {
    let sub_words = enumerate_words(
        p.table(),
        WeightMode::Coradical,
        bound,
        Some(&sub.indices),
    )?;
    let mut span = Vec::new();
    for w in &sub_words {
        span.push(AlgebraElement::from_word(p.table().clone(), w.clone()));
    }
    for &h in complement {
        let hw = p.table().weight(h);
        if hw > bound {
            continue;
        }
        for w in &sub_words {
            if w.weighted_degree(p.table()) + hw <= bound {
                let e = AlgebraElement::from_word(p.table().clone(), w.clone());
                span.push(p.product(&p.gen_elem(h), &e)?);
            }
        }
    }
    Ok(span)
}

#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub almost_centralizing: bool,
    pub normal_and_delta_condition: bool,
    pub agree: bool,
}

/// Computes both sides of the almost-centralizing equivalence independently:
/// the direct definition on one side, normality plus the delta-image
/// membership condition on the other. Disagreement indicates a defect in
/// this library, not a mathematical fact.
pub fn equivalence_check(p: &Presentation, sub: &SubalgebraSpec) -> Result<EquivalenceReport> {
    let ace = check_almost_centralizing(p, sub)?;

    let normal = check_normal(p, sub, false)?.is_normal;
    let complement = complement_of(p, sub);
    let mut delta_condition = true;
    'outer: for (pos, &hi) in complement.iter().enumerate() {
        for &hj in complement.iter().skip(pos) {
            let target = delta(p, &p.commutator(&p.gen_elem(hi), &p.gen_elem(hj))?)?;
            if target.is_zero() {
                continue;
            }
            let bound = p.table().weight(hi) + p.table().weight(hj);
            let span = extension_span(p, sub, &complement, bound)?;
            let mut images: Vec<TensorElement> = Vec::with_capacity(span.len());
            for e in &span {
                images.push(delta(p, e)?);
            }
            if !tensor_in_span(&images, &target) {
                delta_condition = false;
                break 'outer;
            }
        }
    }
    let right = normal && delta_condition;
    Ok(EquivalenceReport {
        almost_centralizing: ace.passes,
        normal_and_delta_condition: right,
        agree: ace.passes == right,
    })
}

/// Tests the biconditional: the cocommutative half of delta([s,t]) lies in
/// delta of length-3 primitive words iff the anti-cocommutative half lies in
/// delta of the anti-cocommutative subspace. Both memberships are decided by
/// exact linear algebra; both inputs must lie in the anti-cocommutative
/// subspace at the given bound.
pub fn biconditional_check(
    p: &Presentation,
    s: &AlgebraElement,
    t: &AlgebraElement,
    bound: u32,
) -> Result<bool> {
    p.require_confluent()?;
    let p2 = anti_cocommutative_space(p, bound)?;
    for (label, e) in [("s", s), ("t", t)] {
        if !element_in_span(&p2.vectors, &p.normal_form(e)?) {
            return Err(AlgebraError::OutsideDomain(format!(
                "{label} is not in the anti-cocommutative subspace at bound {bound}"
            )));
        }
    }
    let bracket = p.commutator(s, t)?;
    let cc = delta_cc(p, &bracket)?;
    let ac = delta_ac(p, &bracket)?;

    // delta(U_3): primitive-letter words of length at most 3.
    let prim_letters = p.table().primitive_indices().into_iter().collect();
    let u3_words = enumerate_words(p.table(), WeightMode::Unit, 3, Some(&prim_letters))?;
    let mut u3_images = Vec::new();
    for w in &u3_words {
        if w.is_empty() {
            continue;
        }
        u3_images.push(delta(
            p,
            &AlgebraElement::from_word(p.table().clone(), w.clone()),
        )?);
    }
    let lhs = tensor_in_span(&u3_images, &cc);

    let mut p2_images = Vec::new();
    for v in &p2.vectors {
        p2_images.push(delta(p, v)?);
    }
    let rhs = tensor_in_span(&p2_images, &ac);

    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl;
    use crate::scalar::int;

    fn wzz() -> Presentation {
        dsl::builtin("wzz-3-5a").unwrap()
    }

    #[test]
    fn primitive_adjoint_is_commutator() {
        let p = wzz();
        for g in 0..3u32 {
            for a in 0..4u32 {
                let h = p.gen_elem(g);
                let target = p.gen_elem(a);
                let c = p.commutator(&h, &target).unwrap();
                assert_eq!(adjoint_left(&p, &h, &target).unwrap(), c);
                assert_eq!(adjoint_right(&p, &h, &target).unwrap(), c.neg());
            }
        }
    }

    #[test]
    fn adjoint_of_z_on_x1_leaves_enveloping_part() {
        let p = wzz();
        let v = adjoint_left(&p, &p.gen_elem(3), &p.gen_elem(0)).unwrap();
        assert_eq!(v.coefficient(&crate::algebra::Word(vec![3])), int(-1));
    }

    #[test]
    fn unit_acts_trivially() {
        let p = wzz();
        let a = p.gen_elem(1).add(&p.gen_elem(3).scale(&int(2))).unwrap();
        assert_eq!(adjoint_left(&p, &p.unit(), &a).unwrap(), a);
        assert_eq!(adjoint_right(&p, &p.unit(), &a).unwrap(), a);
    }

    #[test]
    fn adjoint_composition_law() {
        use rand::{Rng, SeedableRng};
        let p = wzz();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..25 {
            let sample = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut e = p.zero();
                for _ in 0..2 {
                    let g = rng.gen_range(0..4);
                    e.add_term(crate::algebra::Word(vec![g]), int(rng.gen_range(-2..3)));
                }
                e
            };
            let h = sample(&mut rng);
            let hp = sample(&mut rng);
            let a = sample(&mut rng);
            // ad_l[h h'] = ad_l[h] after ad_l[h']: Sweedler legs of a product
            // nest, with the antipode reversing the right legs.
            let product = p.product(&h, &hp).unwrap();
            let lhs = adjoint_left(&p, &product, &a).unwrap();
            let rhs = adjoint_left(&p, &h, &adjoint_left(&p, &hp, &a).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn enveloping_sub_not_normal_in_example() {
        let p = wzz();
        let report = check_normal(&p, &p.enveloping_sub(), false).unwrap();
        assert!(!report.is_normal);
        assert!(report
            .witnesses
            .iter()
            .any(|w| w.actor == 3 && w.target == 0));
    }

    #[test]
    fn a_subalgebra_normal_in_example() {
        let p = wzz();
        let sub = SubalgebraSpec::new("A", [0, 1, 3]);
        let report = check_normal(&p, &sub, false).unwrap();
        assert!(report.is_normal, "witnesses: {:?}", report.witnesses);
    }

    #[test]
    fn whole_algebra_normal_in_itself() {
        let p = wzz();
        let report = check_normal(&p, &p.full_sub(), true).unwrap();
        assert!(report.is_normal);
    }

    #[test]
    fn bracket_criterion_examples() {
        assert!(!bracket_criterion(&wzz()).unwrap());
        assert!(bracket_criterion(&dsl::builtin("central-acc").unwrap()).unwrap());
        assert!(bracket_criterion(&dsl::builtin("env-abelian-3").unwrap()).unwrap());
    }

    #[test]
    fn bracket_criterion_agrees_with_adjoint_normality() {
        for name in dsl::builtin_names() {
            let p = dsl::builtin(name).unwrap();
            let direct = check_normal(&p, &p.enveloping_sub(), false)
                .unwrap()
                .is_normal;
            let criterion = bracket_criterion(&p).unwrap();
            assert_eq!(direct, criterion, "{name}");
        }
    }

    #[test]
    fn ace_over_a_passes() {
        let p = wzz();
        let sub = SubalgebraSpec::new("A", [0, 1, 3]);
        let report = check_almost_centralizing(&p, &sub).unwrap();
        assert!(report.passes, "{:?}", report);
    }

    #[test]
    fn ace_over_enveloping_fails_condition_1() {
        let p = wzz();
        let report = check_almost_centralizing(&p, &p.enveloping_sub()).unwrap();
        assert!(!report.passes);
        assert!(report
            .condition1_failures
            .iter()
            .any(|w| w.left == 0 && w.right == 3));
    }

    #[test]
    fn ace_of_lie_ideal() {
        // U(g) for the 2-dim nonabelian [x,y] = y over the ideal generated
        // by y.
        let p = dsl::builtin("env-nonabelian-2").unwrap();
        let sub = SubalgebraSpec::new("ideal", [1]);
        let report = check_almost_centralizing(&p, &sub).unwrap();
        assert!(report.passes);
    }

    #[test]
    fn equivalence_on_example_both_directions() {
        let p = wzz();
        let over_a = equivalence_check(&p, &SubalgebraSpec::new("A", [0, 1, 3])).unwrap();
        assert!(over_a.agree);
        assert!(over_a.almost_centralizing);

        let over_u = equivalence_check(&p, &p.enveloping_sub()).unwrap();
        assert!(over_u.agree);
        assert!(!over_u.almost_centralizing);
    }

    #[test]
    fn equivalence_on_abelian_enveloping() {
        let p = dsl::builtin("env-abelian-3").unwrap();
        for sub in [
            SubalgebraSpec::new("s1", [0]),
            SubalgebraSpec::new("s2", [0, 1]),
        ] {
            let r = equivalence_check(&p, &sub).unwrap();
            assert!(r.agree);
            assert!(r.almost_centralizing);
        }
    }

    #[test]
    fn biconditional_trivial_cases() {
        let p = wzz();
        let z = p.gen_elem(3);
        assert!(biconditional_check(&p, &z, &z, 4).unwrap());

        // s = z, t = z + x1 gives [s,t] = [z,x1] = z.
        let t = z.add(&p.gen_elem(0)).unwrap();
        assert!(biconditional_check(&p, &z, &t, 4).unwrap());

        // Primitive inputs.
        assert!(biconditional_check(&p, &p.gen_elem(0), &p.gen_elem(1), 4).unwrap());
    }

    #[test]
    fn biconditional_rejects_inputs_outside_p2() {
        let p = wzz();
        let bad = p.gen_elem(0).multiply_free(&p.gen_elem(1)).unwrap();
        assert!(matches!(
            biconditional_check(&p, &bad, &p.gen_elem(3), 4),
            Err(AlgebraError::OutsideDomain(_))
        ));
    }

    #[test]
    fn biconditional_on_random_p2_pairs() {
        use rand::{Rng, SeedableRng};
        for name in ["wzz-3-5a", "central-acc"] {
            let p = dsl::builtin(name).unwrap();
            let p2 = anti_cocommutative_space(&p, 4).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
            for _ in 0..50 {
                let sample = |rng: &mut rand_chacha::ChaCha8Rng| {
                    let mut e = p.zero();
                    for v in &p2.vectors {
                        e = e.add(&v.scale(&int(rng.gen_range(-2..3)))).unwrap();
                    }
                    e
                };
                let s = sample(&mut rng);
                let t = sample(&mut rng);
                assert!(biconditional_check(&p, &s, &t, 4).unwrap(), "{name}");
            }
        }
    }
}
