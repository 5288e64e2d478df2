//! The five subcommands as plain functions from parsed documents to verdicts.

use serde_json::{json, Value};

use wwcat_core::factor::{
    factorize_prop4, factorize_ww, predicted_middle_dim, verify_two_term, VerifyReport,
};
use wwcat_core::finrel::{compose_fin, witness_excess};
use wwcat_core::symplin::{analyze_pair, is_lagrangian};
use wwcat_core::ww::{functor_c, make_path, normalize_with_log, CollapseStep, Path};
use wwcat_core::{
    CanRel, Error, Factorization, FinEngine, LinEngine, RelationEngine, RelationProfile,
};

use crate::document::{
    canrel_json, finrel_json, morphism_json, path_json, space_json, trace_json, Morphism, PathDoc,
};
use crate::error::{CliError, Result};
use crate::verdict::Verdict;

pub const PREDICATES: [&str; 7] = [
    "lagrangian",
    "surjective",
    "cosurjective",
    "injective",
    "coinjective",
    "reduction",
    "coreduction",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Prop4,
    Ww,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Prop4 => "prop4",
            Mode::Ww => "ww",
        }
    }
}

fn profile_json(p: &RelationProfile) -> Value {
    json!({
        "surjective": p.surjective,
        "cosurjective": p.cosurjective,
        "injective": p.injective,
        "coinjective": p.coinjective,
        "reduction": p.reduction,
        "coreduction": p.coreduction,
    })
}

pub fn compose(f: &Morphism, g: &Morphism) -> Result<Verdict> {
    let details = match (f, g) {
        (Morphism::Fin(f), Morphism::Fin(g)) => {
            let fg = compose_fin(f, g).map_err(|e| CliError::domain("compose", e))?;
            let excess = witness_excess(f, g).map_err(|e| CliError::domain("compose", e))?;
            json!({
                "engine": "finrel",
                "composite": finrel_json(&fg),
                "analysis": {
                    "monic": excess == 0,
                    "witness_excess": excess,
                },
            })
        }
        (Morphism::Lin(f), Morphism::Lin(g)) => {
            let a = analyze_pair(f, g).map_err(|e| CliError::domain("compose", e))?;
            json!({
                "engine": "symplin",
                "composite": canrel_json(&a.composite),
                "analysis": {
                    "transversal": a.transversal,
                    "monic": a.monic,
                    "strongly_transversal": a.strongly_transversal,
                    "transversality_defect": a.transversality_defect,
                    "monicity_defect": a.monicity_defect,
                    "fiber_product_dim": a.fiber_product.dim(),
                },
            })
        }
        _ => {
            return Err(CliError::domain(
                "compose",
                Error::NotComposable("cannot compose a finrel with a canrel".into()),
            ))
        }
    };
    Ok(Verdict::new("compose", true, details))
}

pub fn check(f: &Morphism, predicate: &str) -> Result<Verdict> {
    if !PREDICATES.contains(&predicate) {
        return Err(CliError::Usage(format!(
            "unknown predicate `{predicate}`, expected one of {}",
            PREDICATES.join(", ")
        )));
    }
    let (profile, lagrangian) = match f {
        Morphism::Fin(f) => (FinEngine.classify(f), None),
        Morphism::Lin(f) => {
            let lag = is_lagrangian(&f.ambient_space(), f.graph())
                .map_err(|e| CliError::domain("check", e))?;
            (LinEngine.classify(f), Some(lag))
        }
    };
    let value = if predicate == "lagrangian" {
        lagrangian.ok_or_else(|| {
            CliError::Usage("predicate `lagrangian` applies to canrel documents only".into())
        })?
    } else {
        profile.get(predicate).expect("predicate name was checked")
    };
    let mut details = json!({
        "engine": f.engine().as_str(),
        "predicate": predicate,
        "value": value,
        "profile": profile_json(&profile),
    });
    if let Some(lag) = lagrangian {
        details["profile"]["lagrangian"] = json!(lag);
    }
    Ok(Verdict::new("check", value, details))
}

fn lin_word<'a>(p: &'a PathDoc, command: &str) -> Result<&'a [CanRel]> {
    match p {
        PathDoc::Lin { word, .. } => Ok(word),
        PathDoc::Fin { .. } => Err(CliError::domain(
            command,
            Error::InvalidSpace("factorization is defined for the symplin engine only".into()),
        )),
    }
}

fn report_json(r: &VerifyReport) -> Value {
    let steps: Vec<Value> = r
        .steps
        .iter()
        .filter(|s| !s.ok)
        .map(|s| {
            json!({
                "step": s.step,
                "move": s.movement.as_str(),
                "index": s.index,
                "detail": s.detail,
            })
        })
        .collect();
    json!({
        "ok": r.ok,
        "steps_checked": r.steps.len(),
        "expansions": r.expansions,
        "collapses": r.collapses,
        "final_word_matches": r.final_word_matches,
        "composite_matches": r.composite_matches,
        "middle_matches": r.middle_matches,
        "reduction": r.reduction,
        "coreduction": r.coreduction,
        "failures": steps,
    })
}

pub fn factorize(p: &PathDoc, mode: Mode) -> Result<Verdict> {
    let word = lin_word(p, "factorize")?;
    let fact = match mode {
        Mode::Prop4 => match word {
            [f] => factorize_prop4(f),
            _ => {
                return Err(CliError::domain(
                    "factorize",
                    Error::NotComposable(format!(
                        "prop4 mode takes a single relation, the word has {} entries",
                        word.len()
                    )),
                ))
            }
        },
        Mode::Ww => factorize_ww(word),
    }
    .map_err(|e| CliError::domain("factorize", e))?;

    let mut dims: Vec<usize> = word.iter().map(|f| f.target().dim()).collect();
    dims.push(word.last().map_or(0, |f| f.source().dim()));
    let predicted = predicted_middle_dim(&dims);
    let report = verify_two_term(word, &fact);
    let q_dim = fact.middle.dim();
    let details = json!({
        "mode": mode.as_str(),
        "word_length": word.len(),
        "A": canrel_json(&fact.reduction_part),
        "B": canrel_json(&fact.coreduction_part),
        "Q": space_json(&fact.middle),
        "q_dim": q_dim,
        "predicted_q_dim": predicted,
        "trace": trace_json(&fact.trace),
        "verification": report_json(&report),
    });
    Ok(Verdict::new(
        "factorize",
        report.ok && q_dim == predicted,
        details,
    ))
}

fn log_json(log: &[CollapseStep]) -> Value {
    Value::Array(
        log.iter()
            .map(|s| {
                json!({
                    "index": s.index,
                    "defects": [s.junction.transversality_defect, s.junction.monicity_defect],
                })
            })
            .collect(),
    )
}

fn normalize_in<E>(
    engine: &E,
    word: Vec<E::Morphism>,
    object: Option<E::Object>,
    to_doc: impl Fn(&Path<E>) -> PathDoc,
    to_json: impl Fn(&E::Morphism) -> Value,
) -> Result<Value>
where
    E: RelationEngine,
    E::Morphism: PartialEq,
{
    let input_len = word.len();
    let path = make_path(engine, word, object).map_err(|e| CliError::domain("normalize", e))?;
    let minimal_len = path.len();
    let normal = normalize_with_log(engine, &path).map_err(|e| CliError::domain("normalize", e))?;
    let c_in = functor_c(engine, &path).map_err(|e| CliError::domain("normalize", e))?;
    let c_out = functor_c(engine, &normal.path).map_err(|e| CliError::domain("normalize", e))?;
    Ok(json!({
        "engine": engine.name(),
        "input_length": input_len,
        "minimal_length": minimal_len,
        "output_length": normal.path.len(),
        "normal_form": path_json(&to_doc(&normal.path)),
        "log": log_json(&normal.log),
        "c_input": to_json(&c_in),
        "c_output": to_json(&c_out),
        "c_equal": c_in == c_out,
    }))
}

pub fn normalize(p: &PathDoc) -> Result<Verdict> {
    let details = match p.clone() {
        PathDoc::Fin { word, object } => normalize_in(
            &FinEngine,
            word,
            object,
            |q| PathDoc::Fin {
                word: q.word().to_vec(),
                object: q.is_empty().then(|| q.target().clone()),
            },
            |f| morphism_json(&Morphism::Fin(f.clone())),
        )?,
        PathDoc::Lin { word, object } => normalize_in(
            &LinEngine,
            word,
            object,
            |q| PathDoc::Lin {
                word: q.word().to_vec(),
                object: q.is_empty().then(|| q.target().clone()),
            },
            |f| morphism_json(&Morphism::Lin(f.clone())),
        )?,
    };
    let ok = details["c_equal"] == json!(true);
    Ok(Verdict::new("normalize", ok, details))
}

pub fn verify(p: &PathDoc, fact: &Factorization) -> Result<Verdict> {
    let word = lin_word(p, "verify")?;
    let report = verify_two_term(word, fact);
    let details = json!({
        "word_length": word.len(),
        "trace_length": fact.trace.len(),
        "q_dim": fact.middle.dim(),
        "verification": report_json(&report),
    });
    Ok(Verdict::new("verify", report.ok, details))
}
