//! Two-term factorization of linear canonical relations.
//!
//! A single relation `f : X ← Y` splits as
//!
//! ```text
//! X = X × 1  ↞  X × Ȳ × Y  ↢  1 × Y = Y
//!     1_X × ε_Y        γ_f × 1_Y
//! ```
//!
//! and a composable word `f_1, …, f_r` is reduced to one reduction followed
//! by one coreduction by repeatedly splitting every entry, collapsing each
//! coreduction into the reduction to its right, and peeling the outermost
//! reduction and coreduction off into accumulators. The middle space roughly
//! triples in dimension at every level.
//!
//! Each factorization carries a trace of the rewrite moves it performed on
//! the working word. The trace is replayable: an expansion is always the
//! canonical split above, so `(move, index)` determines the step, and
//! [`verify_two_term`] re-derives everything from the input word.

use std::fmt;

use crate::error::{Error, Result};
use crate::symplin::{
    analyze_pair, classify_lin, compose_lin, dual_space, epsilon_rel, product_rel, product_space,
    CanRel, PairAnalysis, SymplecticSpace,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    /// Replace entry `index` by its canonical reduction/coreduction split.
    Expand,
    /// Replace entries `index`, `index + 1` by their composite.
    Collapse,
}

impl Move {
    pub fn as_str(self) -> &'static str {
        match self {
            Move::Expand => "expand",
            Move::Collapse => "collapse",
        }
    }

    pub fn parse(s: &str) -> Option<Move> {
        match s {
            "expand" => Some(Move::Expand),
            "collapse" => Some(Move::Collapse),
            _ => None,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TraceStep {
    pub movement: Move,
    /// Zero-based position in the working word at the time of the move.
    pub index: usize,
    pub transversality_defect: usize,
    pub monicity_defect: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// `A : X_0 ← Q`, a reduction.
    pub reduction_part: CanRel,
    /// `B : Q ← X_r`, a coreduction.
    pub coreduction_part: CanRel,
    /// The middle space `Q`.
    pub middle: SymplecticSpace,
    pub trace: Vec<TraceStep>,
}

/// The pair `(1_X × ε_Y, γ_f × 1_Y)` for `f : X ← Y`.
pub fn canonical_split(f: &CanRel) -> (CanRel, CanRel) {
    let (x, y) = (f.target(), f.source());
    let reduction = product_rel(&CanRel::identity(x), &epsilon_rel(y));
    // γ_f is the same subspace as f, read as a morphism X × Ȳ ← 1.
    let gamma = CanRel::new_unchecked(
        product_space(x, &dual_space(y)),
        SymplecticSpace::point(),
        f.graph().clone(),
    );
    let coreduction = product_rel(&gamma, &CanRel::identity(y));
    (reduction, coreduction)
}

fn certified(index: usize, movement: Move, a: &PairAnalysis) -> Result<TraceStep> {
    if !a.strongly_transversal {
        return Err(Error::NotStronglyTransversal {
            index,
            transversality_defect: a.transversality_defect,
            monicity_defect: a.monicity_defect,
        });
    }
    Ok(TraceStep {
        movement,
        index,
        transversality_defect: a.transversality_defect,
        monicity_defect: a.monicity_defect,
    })
}

/// Working word plus the trace of moves applied to it.
struct Rewriter {
    word: Vec<CanRel>,
    trace: Vec<TraceStep>,
}

impl Rewriter {
    fn expand(&mut self, index: usize) -> Result<()> {
        let f = &self.word[index];
        let (a, b) = canonical_split(f);
        let analysis = analyze_pair(&a, &b)?;
        let step = certified(index, Move::Expand, &analysis)?;
        if analysis.composite != *f {
            return Err(Error::Invariant(format!(
                "canonical split at index {index} does not compose back to the entry"
            )));
        }
        self.word.splice(index..=index, [a, b]);
        self.trace.push(step);
        Ok(())
    }

    fn collapse(&mut self, index: usize) -> Result<()> {
        let analysis = analyze_pair(&self.word[index], &self.word[index + 1])?;
        let step = certified(index, Move::Collapse, &analysis)?;
        self.word.splice(index..=index + 1, [analysis.composite]);
        self.trace.push(step);
        Ok(())
    }
}

fn check_word(word: &[CanRel]) -> Result<()> {
    if word.is_empty() {
        return Err(Error::EmptyWord(
            "factorization needs at least one relation",
        ));
    }
    for i in 1..word.len() {
        if word[i - 1].source() != word[i].target() {
            return Err(Error::NotComposableAt {
                index: i,
                reason: format!(
                    "source {} of entry {} is not target {}",
                    word[i - 1].source(),
                    i - 1,
                    word[i].target()
                ),
            });
        }
    }
    Ok(())
}

pub fn factorize_prop4(f: &CanRel) -> Result<Factorization> {
    factorize_ww(std::slice::from_ref(f))
}

/// Reduces a composable word to `[A, B]` with `A` a reduction and `B` a
/// coreduction, certifying every move.
pub fn factorize_ww(word: &[CanRel]) -> Result<Factorization> {
    check_word(word)?;
    let mut rw = Rewriter {
        word: word.to_vec(),
        trace: Vec::new(),
    };

    // Working word = left accumulators ++ middle row ++ right accumulators.
    let mut left = 0;
    let mut right = 0;
    let mut middle = word.len();
    while middle > 0 {
        for i in 0..middle {
            rw.expand(left + 2 * i)?;
        }
        // κ_i ∘ ρ_{i+1}: coreduction first, so always collapsible.
        for i in 0..middle - 1 {
            rw.collapse(left + 1 + i)?;
        }
        left += 1;
        right += 1;
        middle -= 1;
    }
    debug_assert_eq!(rw.word.len(), left + right);

    // Fold the reductions into A, then the coreductions into B.
    for _ in 1..left {
        rw.collapse(0)?;
    }
    for _ in 1..right {
        rw.collapse(1)?;
    }
    let [a, b]: [CanRel; 2] = rw
        .word
        .try_into()
        .expect("accumulators fold to exactly two entries");
    Ok(Factorization {
        middle: a.source().clone(),
        reduction_part: a,
        coreduction_part: b,
        trace: rw.trace,
    })
}

/// Middle-space dimension predicted by iterating `d'_i = d_{i-1} + 2·d_i`
/// over the object dimensions `d_0, …, d_r` of a word.
pub fn predicted_middle_dim(object_dims: &[usize]) -> usize {
    let mut dims = object_dims.to_vec();
    while dims.len() > 1 {
        dims = dims.windows(2).map(|w| w[0] + 2 * w[1]).collect();
    }
    dims[0]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCheck {
    pub step: usize,
    pub movement: Move,
    pub index: usize,
    pub ok: bool,
    pub detail: String,
}

/// Outcome of replaying a factorization against its input word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub steps: Vec<StepCheck>,
    pub expansions: usize,
    pub collapses: usize,
    /// The replayed word ends as exactly `[A, B]`.
    pub final_word_matches: bool,
    /// `A ∘ B` equals the left fold of the input.
    pub composite_matches: bool,
    pub middle_matches: bool,
    pub reduction: bool,
    pub coreduction: bool,
    pub ok: bool,
}

fn fold(word: &[CanRel]) -> Result<CanRel> {
    let (first, rest) = word
        .split_first()
        .ok_or(Error::EmptyWord("cannot fold an empty word"))?;
    rest.iter()
        .try_fold(first.clone(), |acc, f| compose_lin(&acc, f))
}

fn replay_step(word: &mut Vec<CanRel>, step: &TraceStep) -> std::result::Result<(), String> {
    let i = step.index;
    let analysis = match step.movement {
        Move::Expand => {
            let f = word
                .get(i)
                .ok_or_else(|| format!("index {i} out of range ({} entries)", word.len()))?;
            let (a, b) = canonical_split(f);
            let analysis = analyze_pair(&a, &b).map_err(|e| e.to_string())?;
            if analysis.composite != *f {
                return Err("split does not compose back to the entry".into());
            }
            word.splice(i..=i, [a, b]);
            analysis
        }
        Move::Collapse => {
            if i + 1 >= word.len() {
                return Err(format!("index {i} out of range ({} entries)", word.len()));
            }
            let analysis = analyze_pair(&word[i], &word[i + 1]).map_err(|e| e.to_string())?;
            word.splice(i..=i + 1, [analysis.composite.clone()]);
            analysis
        }
    };
    if !analysis.strongly_transversal {
        return Err(format!(
            "pair not strongly transversal (defects {}, {})",
            analysis.transversality_defect, analysis.monicity_defect
        ));
    }
    let recorded = (step.transversality_defect, step.monicity_defect);
    let found = (analysis.transversality_defect, analysis.monicity_defect);
    if recorded != found {
        return Err(format!(
            "recorded defects {recorded:?}, recomputed {found:?}"
        ));
    }
    Ok(())
}

/// Replays the trace of `fact` on `word` and checks the conclusion.
/// Never fails; every problem becomes an entry of the report.
pub fn verify_two_term(word: &[CanRel], fact: &Factorization) -> VerifyReport {
    let mut working = word.to_vec();
    let mut steps = Vec::with_capacity(fact.trace.len());
    let mut replay_ok = true;
    for (n, step) in fact.trace.iter().enumerate() {
        let result = if replay_ok {
            replay_step(&mut working, step)
        } else {
            Err("skipped after an earlier failure".into())
        };
        replay_ok &= result.is_ok();
        steps.push(StepCheck {
            step: n,
            movement: step.movement,
            index: step.index,
            ok: result.is_ok(),
            detail: result.err().unwrap_or_default(),
        });
    }

    let (a, b) = (&fact.reduction_part, &fact.coreduction_part);
    let final_word_matches =
        replay_ok && working.len() == 2 && working[0] == *a && working[1] == *b;
    let composite_matches = match (compose_lin(a, b), fold(word)) {
        (Ok(ab), Ok(c)) => ab == c,
        _ => false,
    };
    let middle_matches = a.source() == &fact.middle && b.target() == &fact.middle;
    let reduction = classify_lin(a).reduction;
    let coreduction = classify_lin(b).coreduction;
    let count = |m: Move| fact.trace.iter().filter(|s| s.movement == m).count();
    let ok = replay_ok
        && final_word_matches
        && composite_matches
        && middle_matches
        && reduction
        && coreduction;
    VerifyReport {
        expansions: count(Move::Expand),
        collapses: count(Move::Collapse),
        steps,
        final_word_matches,
        composite_matches,
        middle_matches,
        reduction,
        coreduction,
        ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Matrix, Subspace};
    use crate::symplin::{graph_of_map, is_lagrangian, transpose_lin};

    fn std1() -> SymplecticSpace {
        SymplecticSpace::standard(1)
    }

    fn shear() -> CanRel {
        graph_of_map(&Matrix::from_i64(2, &[&[1, 1], &[0, 1]]), &std1(), &std1()).unwrap()
    }

    #[test]
    fn prop4_on_identity() {
        let id = CanRel::identity(&std1());
        let fact = factorize_prop4(&id).unwrap();
        assert_eq!(fact.middle.dim(), 6);
        assert_eq!(
            compose_lin(&fact.reduction_part, &fact.coreduction_part).unwrap(),
            id
        );
        assert!(classify_lin(&fact.reduction_part).reduction);
        assert!(classify_lin(&fact.coreduction_part).coreduction);
        assert_eq!(fact.trace.len(), 1);
        assert_eq!(fact.trace[0].movement, Move::Expand);
        for part in [&fact.reduction_part, &fact.coreduction_part] {
            assert!(is_lagrangian(&part.ambient_space(), part.graph()).unwrap());
        }
    }

    #[test]
    fn prop4_with_point_target_is_epsilon() {
        let l = CanRel::new(
            SymplecticSpace::point(),
            std1(),
            Subspace::span(&Matrix::from_i64(2, &[&[1, 2]])),
        )
        .unwrap();
        let fact = factorize_prop4(&l).unwrap();
        assert_eq!(fact.reduction_part, epsilon_rel(&std1()));
        assert_eq!(
            compose_lin(&fact.reduction_part, &fact.coreduction_part).unwrap(),
            l
        );
    }

    #[test]
    fn ww_two_entries() {
        let word = vec![shear(), transpose_lin(&shear())];
        let fact = factorize_ww(&word).unwrap();
        assert_eq!(fact.middle.dim(), 18);
        assert_eq!(predicted_middle_dim(&[2, 2, 2]), 18);
        let report = verify_two_term(&word, &fact);
        assert!(report.ok, "{report:?}");
        // level 1: 2 expansions, 1 collapse; level 2: 1 expansion; fold: 2 collapses
        assert_eq!(report.expansions, 3);
        assert_eq!(report.collapses, 3);
    }

    #[test]
    fn empty_and_mismatched_words() {
        assert!(matches!(factorize_ww(&[]), Err(Error::EmptyWord(_))));
        let e = epsilon_rel(&std1());
        assert!(matches!(
            factorize_ww(&[shear(), e]),
            Err(Error::NotComposableAt { index: 1, .. })
        ));
    }

    #[test]
    fn verify_single_round_trip() {
        let word = vec![shear()];
        let fact = factorize_ww(&word).unwrap();
        let report = verify_two_term(&word, &fact);
        assert!(report.ok);
        assert_eq!((report.expansions, report.collapses), (1, 0));
    }

    #[test]
    fn verify_detects_tampering() {
        let word = vec![shear(), shear()];
        let fact = factorize_ww(&word).unwrap();
        let mut tampered = fact.clone();
        let twist =
            graph_of_map(&Matrix::from_i64(2, &[&[1, 0], &[1, 1]]), &std1(), &std1()).unwrap();
        tampered.coreduction_part = compose_lin(&fact.coreduction_part, &twist).unwrap();
        let report = verify_two_term(&word, &tampered);
        assert!(!report.ok);
        assert!(!report.composite_matches);
        assert!(!report.final_word_matches);
        // replayed moves themselves are still fine
        assert!(report.steps.iter().all(|s| s.ok));

        let mut bad_trace = fact.clone();
        bad_trace.trace[0].index = 7;
        let report = verify_two_term(&word, &bad_trace);
        assert!(!report.ok);
        assert!(!report.steps[0].ok);
        assert!(report.steps[1..].iter().all(|s| !s.ok));
    }

    #[test]
    fn predicted_dims() {
        assert_eq!(predicted_middle_dim(&[2, 2]), 6);
        assert_eq!(predicted_middle_dim(&[2; 5]), 162);
        assert_eq!(predicted_middle_dim(&[0, 2]), 4);
        assert_eq!(predicted_middle_dim(&[4]), 4);
    }
}
