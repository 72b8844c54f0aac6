//! Machine-readable JSON report. Field order is fixed by the struct
//! definitions and all maps are sorted, so rendering the same presentation
//! twice produces byte-identical output. Rationals are rendered as "p/q"
//! strings and words as arrays of generator names.

use serde::Serialize;

use crate::algebra::{AlgebraElement, Word};
use crate::checks::{bracket_criterion, check_normal, equivalence_check, AdjointSide};
use crate::coalgebra::verify_hopf_axioms;
use crate::error::{AlgebraError, Result};
use crate::growth::{gk_equals_dim_p2_check, growth_function};
use crate::rewrite::Presentation;
use crate::scalar::format_scalar;
use crate::solver::{anti_cocommutative_space, default_bound, primitive_space};
use crate::tensor::TensorElement;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TermJson {
    pub word: Vec<String>,
    pub coeff: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TensorTermJson {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub coeff: String,
}

fn word_json(p: &Presentation, w: &Word) -> Vec<String> {
    w.0.iter().map(|&i| p.table().get(i).name.clone()).collect()
}

fn element_json(p: &Presentation, e: &AlgebraElement) -> Vec<TermJson> {
    e.terms()
        .map(|(w, c)| TermJson {
            word: word_json(p, w),
            coeff: format_scalar(c),
        })
        .collect()
}

fn tensor_json(p: &Presentation, t: &TensorElement) -> Vec<TensorTermJson> {
    t.terms()
        .map(|((a, b), c)| TensorTermJson {
            left: word_json(p, a),
            right: word_json(p, b),
            coeff: format_scalar(c),
        })
        .collect()
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorJson {
    pub name: String,
    pub degree: u8,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RelationJson {
    pub hi: String,
    pub lo: String,
    pub rhs: Vec<TermJson>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TailJson {
    pub generator: String,
    pub tail: Vec<TensorTermJson>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConfluenceFailureJson {
    pub triple: Vec<String>,
    pub left_reduct: Vec<TermJson>,
    pub right_reduct: Vec<TermJson>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConfluenceJson {
    pub confluent: bool,
    pub triples_checked: usize,
    pub failures: Vec<ConfluenceFailureJson>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AxiomFailureJson {
    pub axiom: String,
    pub witness: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AxiomsJson {
    pub passed: bool,
    pub failures: Vec<AxiomFailureJson>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GrowthJson {
    pub dims: Vec<u64>,
    pub weighted_dims: Vec<u64>,
    pub pbw_count: Option<u64>,
    pub fitted_exponent: f64,
    pub exact_gk: Option<u32>,
    pub certificate: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpaceJson {
    pub bound: u32,
    pub dim: usize,
    pub basis: Vec<Vec<TermJson>>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NormalWitnessJson {
    pub actor: String,
    pub target: String,
    pub side: String,
    pub value: Vec<TermJson>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NormalJson {
    pub subalgebra: String,
    pub generators: Vec<String>,
    pub is_normal: bool,
    pub witnesses: Vec<NormalWitnessJson>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BracketJson {
    pub applicable: bool,
    pub holds: Option<bool>,
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivalenceJson {
    pub subalgebra: String,
    pub almost_centralizing: bool,
    pub normal_and_delta_condition: bool,
    pub agree: bool,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TheoremJson {
    pub in_class: bool,
    pub hypothesis_normal: Option<bool>,
    pub exact_gk: Option<u32>,
    pub dim_p2: Option<usize>,
    pub agree: Option<bool>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub name: String,
    pub generators: Vec<GeneratorJson>,
    pub relations: Vec<RelationJson>,
    pub tails: Vec<TailJson>,
    pub check_confluence: ConfluenceJson,
    pub verify_hopf_axioms: AxiomsJson,
    pub growth_function: GrowthJson,
    /// Null when the system is not confluent: the solver sections need a
    /// PBW basis.
    pub primitive_space: Option<SpaceJson>,
    pub anti_cocommutative_space: Option<SpaceJson>,
    pub check_normal: Option<NormalJson>,
    pub bracket_criterion: Option<BracketJson>,
    pub equivalence_check: Option<EquivalenceJson>,
    pub theorem00_check: TheoremJson,
}

/// Gathers every analysis into one report. `max_degree` is the window for
/// the growth counts.
pub fn build_report(p: &Presentation, max_degree: u32) -> Result<Report> {
    let table = p.table();
    let generators = table
        .iter()
        .map(|g| GeneratorJson {
            name: g.name.clone(),
            degree: g.degree,
        })
        .collect();
    let relations = p
        .relations()
        .map(|(&(hi, lo), rhs)| RelationJson {
            hi: table.get(hi).name.clone(),
            lo: table.get(lo).name.clone(),
            rhs: element_json(p, rhs),
        })
        .collect();
    let tails = p
        .tails()
        .map(|(&g, tail)| TailJson {
            generator: table.get(g).name.clone(),
            tail: tensor_json(p, tail),
        })
        .collect();

    let conf = p.check_confluence();
    let check_confluence = ConfluenceJson {
        confluent: conf.confluent,
        triples_checked: conf.triples_checked,
        failures: conf
            .failures
            .iter()
            .map(|f| ConfluenceFailureJson {
                triple: vec![
                    table.get(f.triple.0).name.clone(),
                    table.get(f.triple.1).name.clone(),
                    table.get(f.triple.2).name.clone(),
                ],
                left_reduct: element_json(p, &f.left_reduct),
                right_reduct: element_json(p, &f.right_reduct),
            })
            .collect(),
    };

    let axioms = verify_hopf_axioms(p)?;
    let verify_hopf_axioms = AxiomsJson {
        passed: axioms.passed(),
        failures: axioms
            .failures
            .iter()
            .map(|f| AxiomFailureJson {
                axiom: f.axiom.to_string(),
                witness: f.witness.clone(),
            })
            .collect(),
    };

    let growth = growth_function(p, max_degree)?;
    let growth_function = GrowthJson {
        dims: growth.dims,
        weighted_dims: growth.weighted_dims,
        pbw_count: growth.pbw_count,
        fitted_exponent: growth.fitted_exponent,
        exact_gk: growth.exact_gk,
        certificate: format!("{:?}", growth.certificate),
    };

    let confluent = conf.confluent;
    let bound = default_bound(p);

    let space_json = |space: &crate::solver::SubspaceBasis| SpaceJson {
        bound,
        dim: space.dim(),
        basis: space
            .vectors
            .iter()
            .map(|v| element_json(p, v))
            .collect(),
    };

    let (primitive, acc, normal, bracket, equivalence) = if confluent {
        let prim = primitive_space(p, bound)?;
        let acc = anti_cocommutative_space(p, bound)?;
        let sub = p.enveloping_sub();
        let norm = check_normal(p, &sub, false)?;
        let normal = NormalJson {
            subalgebra: sub.label.clone(),
            generators: sub
                .indices
                .iter()
                .map(|&i| table.get(i).name.clone())
                .collect(),
            is_normal: norm.is_normal,
            witnesses: norm
                .witnesses
                .iter()
                .map(|w| NormalWitnessJson {
                    actor: table.get(w.actor).name.clone(),
                    target: table.get(w.target).name.clone(),
                    side: match w.side {
                        AdjointSide::Left => "left".into(),
                        AdjointSide::Right => "right".into(),
                    },
                    value: element_json(p, &w.value),
                })
                .collect(),
        };
        let bracket = match bracket_criterion(p) {
            Ok(holds) => BracketJson {
                applicable: true,
                holds: Some(holds),
                note: None,
            },
            Err(AlgebraError::CriterionInapplicable(msg)) => BracketJson {
                applicable: false,
                holds: None,
                note: Some(msg),
            },
            Err(e) => return Err(e),
        };
        let eq = equivalence_check(p, &sub)?;
        let equivalence = EquivalenceJson {
            subalgebra: sub.label,
            almost_centralizing: eq.almost_centralizing,
            normal_and_delta_condition: eq.normal_and_delta_condition,
            agree: eq.agree,
        };
        (
            Some(space_json(&prim)),
            Some(space_json(&acc)),
            Some(normal),
            Some(bracket),
            Some(equivalence),
        )
    } else {
        (None, None, None, None, None)
    };

    let thm = gk_equals_dim_p2_check(p, max_degree)?;
    let theorem00_check = TheoremJson {
        in_class: thm.in_class,
        hypothesis_normal: thm.hypothesis_normal,
        exact_gk: thm.exact_gk,
        dim_p2: thm.dim_p2,
        agree: thm.agree,
    };

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        name: p.name.clone(),
        generators,
        relations,
        tails,
        check_confluence,
        verify_hopf_axioms,
        growth_function,
        primitive_space: primitive,
        anti_cocommutative_space: acc,
        check_normal: normal,
        bracket_criterion: bracket,
        equivalence_check: equivalence,
        theorem00_check,
    })
}

pub fn render(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}
