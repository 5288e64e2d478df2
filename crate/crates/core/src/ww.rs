//! Composable paths and the collapse quotient.
//!
//! A [`Path`] is a finite composable word of morphisms, stored without
//! identities so that each class of paths has exactly one representative.
//! Paths compose by concatenation. The quotient identifies a word with the
//! word obtained by replacing an adjacent strongly transversal pair by its
//! composite; [`normalize`] applies that rewrite greedily from the left.
//!
//! Everything here is generic over a [`RelationEngine`], implemented for
//! finite-set relations ([`FinEngine`]) and linear canonical relations
//! ([`LinEngine`]).
//!
//! Equal normal forms imply equivalent paths. The converse is not claimed:
//! confluence of the collapse system is not established, so comparing
//! normal forms is a sound but incomplete equality test.

use std::fmt;

use crate::error::{Error, Result};
use crate::finrel::{self, FinRelation, FinSet};
use crate::profile::RelationProfile;
use crate::symplin::{self, CanRel, SymplecticSpace};

/// Defects of a composable pair. Both zero means the pair may collapse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Junction {
    pub transversality_defect: usize,
    pub monicity_defect: usize,
}

impl Junction {
    pub fn strongly_transversal(&self) -> bool {
        self.transversality_defect == 0 && self.monicity_defect == 0
    }
}

/// The operations a category of relations has to supply for the path layer.
pub trait RelationEngine {
    type Object: Clone + PartialEq + fmt::Debug + fmt::Display;
    type Morphism: Clone + PartialEq + fmt::Debug;

    /// Short name used in documents (`"finrel"`, `"symplin"`).
    fn name(&self) -> &'static str;

    fn target(&self, f: &Self::Morphism) -> Self::Object;
    fn source(&self, f: &Self::Morphism) -> Self::Object;
    fn identity(&self, object: &Self::Object) -> Self::Morphism;
    fn is_identity(&self, f: &Self::Morphism) -> bool;
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism>;
    fn junction(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Junction>;
    fn classify(&self, f: &Self::Morphism) -> RelationProfile;
    fn transpose(&self, f: &Self::Morphism) -> Self::Morphism;

    fn is_strongly_transversal(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<bool> {
        Ok(self.junction(f, g)?.strongly_transversal())
    }
}

/// Finite sets and relations. There is no transversality condition for
/// discrete sets, so strongly transversal means monic.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinEngine;

impl RelationEngine for FinEngine {
    type Object = FinSet;
    type Morphism = FinRelation;

    fn name(&self) -> &'static str {
        "finrel"
    }

    fn target(&self, f: &FinRelation) -> FinSet {
        f.target().clone()
    }

    fn source(&self, f: &FinRelation) -> FinSet {
        f.source().clone()
    }

    fn identity(&self, object: &FinSet) -> FinRelation {
        FinRelation::identity(object)
    }

    fn is_identity(&self, f: &FinRelation) -> bool {
        f.is_identity()
    }

    fn compose(&self, f: &FinRelation, g: &FinRelation) -> Result<FinRelation> {
        finrel::compose_fin(f, g)
    }

    fn junction(&self, f: &FinRelation, g: &FinRelation) -> Result<Junction> {
        Ok(Junction {
            transversality_defect: 0,
            monicity_defect: finrel::witness_excess(f, g)?,
        })
    }

    fn classify(&self, f: &FinRelation) -> RelationProfile {
        finrel::classify_fin(f)
    }

    fn transpose(&self, f: &FinRelation) -> FinRelation {
        finrel::transpose_fin(f)
    }
}

/// Rational symplectic vector spaces and linear canonical relations.
#[derive(Debug, Clone, Copy, Default)]
pub struct LinEngine;

impl RelationEngine for LinEngine {
    type Object = SymplecticSpace;
    type Morphism = CanRel;

    fn name(&self) -> &'static str {
        "symplin"
    }

    fn target(&self, f: &CanRel) -> SymplecticSpace {
        f.target().clone()
    }

    fn source(&self, f: &CanRel) -> SymplecticSpace {
        f.source().clone()
    }

    fn identity(&self, object: &SymplecticSpace) -> CanRel {
        CanRel::identity(object)
    }

    fn is_identity(&self, f: &CanRel) -> bool {
        f.is_identity()
    }

    fn compose(&self, f: &CanRel, g: &CanRel) -> Result<CanRel> {
        symplin::compose_lin(f, g)
    }

    fn junction(&self, f: &CanRel, g: &CanRel) -> Result<Junction> {
        let a = symplin::analyze_pair(f, g)?;
        Ok(Junction {
            transversality_defect: a.transversality_defect,
            monicity_defect: a.monicity_defect,
        })
    }

    fn classify(&self, f: &CanRel) -> RelationProfile {
        symplin::classify_lin(f)
    }

    fn transpose(&self, f: &CanRel) -> CanRel {
        symplin::transpose_lin(f)
    }
}

/// A composable word in minimal form: no identity entries.
pub struct Path<E: RelationEngine> {
    target: E::Object,
    source: E::Object,
    word: Vec<E::Morphism>,
}

impl<E: RelationEngine> Path<E> {
    pub fn target(&self) -> &E::Object {
        &self.target
    }

    pub fn source(&self) -> &E::Object {
        &self.source
    }

    pub fn word(&self) -> &[E::Morphism] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    /// The empty word, an identity path.
    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn into_word(self) -> Vec<E::Morphism> {
        self.word
    }
}

impl<E: RelationEngine> Clone for Path<E> {
    fn clone(&self) -> Self {
        Path {
            target: self.target.clone(),
            source: self.source.clone(),
            word: self.word.clone(),
        }
    }
}

impl<E: RelationEngine> PartialEq for Path<E> {
    fn eq(&self, other: &Self) -> bool {
        self.target == other.target && self.source == other.source && self.word == other.word
    }
}

impl<E: RelationEngine> fmt::Debug for Path<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Path")
            .field("target", &self.target)
            .field("source", &self.source)
            .field("word", &self.word)
            .finish()
    }
}

/// The identity path on `object`.
pub fn identity_path<E: RelationEngine>(object: &E::Object) -> Path<E> {
    Path {
        target: object.clone(),
        source: object.clone(),
        word: Vec::new(),
    }
}

/// Validates composability and strips identities. `declared` fixes the
/// object of an empty word and is checked against the ends otherwise.
pub fn make_path<E: RelationEngine>(
    engine: &E,
    word: Vec<E::Morphism>,
    declared: Option<E::Object>,
) -> Result<Path<E>> {
    for i in 1..word.len() {
        let (s, t) = (engine.source(&word[i - 1]), engine.target(&word[i]));
        if s != t {
            return Err(Error::NotComposableAt {
                index: i,
                reason: format!("source {s} of entry {} is not target {t}", i - 1),
            });
        }
    }
    let (target, source) = match (word.first(), word.last(), declared) {
        (Some(first), Some(last), declared) => {
            let (t, s) = (engine.target(first), engine.source(last));
            if let Some(d) = declared {
                // A declared object only makes sense for endo-words.
                if d != t || d != s {
                    return Err(Error::NotComposableAt {
                        index: 0,
                        reason: format!("declared object {d} does not match the word"),
                    });
                }
            }
            (t, s)
        }
        (_, _, Some(d)) => (d.clone(), d),
        _ => return Err(Error::EmptyWord("an empty path needs a declared object")),
    };
    let word = word
        .into_iter()
        .filter(|f| !engine.is_identity(f))
        .collect();
    Ok(Path {
        target,
        source,
        word,
    })
}

/// Concatenation; identity paths are neutral.
pub fn compose_paths<E: RelationEngine>(p: &Path<E>, q: &Path<E>) -> Result<Path<E>> {
    if p.source != q.target {
        return Err(Error::NotComposable(format!(
            "path source {} is not path target {}",
            p.source, q.target
        )));
    }
    let mut word = p.word.clone();
    word.extend(q.word.iter().cloned());
    Ok(Path {
        target: p.target.clone(),
        source: q.source.clone(),
        word,
    })
}

pub fn transpose_path<E: RelationEngine>(engine: &E, p: &Path<E>) -> Path<E> {
    Path {
        target: p.source.clone(),
        source: p.target.clone(),
        word: p.word.iter().rev().map(|f| engine.transpose(f)).collect(),
    }
}

/// One applied collapse, with the certificate that allowed it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollapseStep {
    pub index: usize,
    pub junction: Junction,
}

/// Replaces entries `i` and `i + 1` (zero-based) by their composite,
/// provided the pair is strongly transversal.
pub fn collapse_at<E: RelationEngine>(
    engine: &E,
    p: &Path<E>,
    i: usize,
) -> Result<(Path<E>, CollapseStep)> {
    if i + 1 >= p.word.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: p.word.len(),
        });
    }
    let (f, g) = (&p.word[i], &p.word[i + 1]);
    let junction = engine.junction(f, g)?;
    if !junction.strongly_transversal() {
        return Err(Error::NotStronglyTransversal {
            index: i,
            transversality_defect: junction.transversality_defect,
            monicity_defect: junction.monicity_defect,
        });
    }
    let fg = engine.compose(f, g)?;
    let mut word = Vec::with_capacity(p.word.len() - 1);
    word.extend_from_slice(&p.word[..i]);
    if !engine.is_identity(&fg) {
        word.push(fg);
    }
    word.extend_from_slice(&p.word[i + 2..]);
    let path = Path {
        target: p.target.clone(),
        source: p.source.clone(),
        word,
    };
    Ok((path, CollapseStep { index: i, junction }))
}

/// A normal form together with the collapses that produced it.
pub struct Normalized<E: RelationEngine> {
    pub path: Path<E>,
    pub log: Vec<CollapseStep>,
}

/// Collapses the leftmost strongly transversal pair until none is left.
/// Terminates because every collapse shortens the word.
pub fn normalize_with_log<E: RelationEngine>(engine: &E, p: &Path<E>) -> Result<Normalized<E>> {
    let mut path = p.clone();
    let mut log = Vec::new();
    'outer: loop {
        for i in 0..path.word.len().saturating_sub(1) {
            if engine.is_strongly_transversal(&path.word[i], &path.word[i + 1])? {
                let (next, step) = collapse_at(engine, &path, i)?;
                path = next;
                log.push(step);
                continue 'outer;
            }
        }
        return Ok(Normalized { path, log });
    }
}

pub fn normalize<E: RelationEngine>(engine: &E, p: &Path<E>) -> Result<Path<E>> {
    Ok(normalize_with_log(engine, p)?.path)
}

/// The total composite of a path; the identity for the empty word.
pub fn functor_c<E: RelationEngine>(engine: &E, p: &Path<E>) -> Result<E::Morphism> {
    let mut entries = p.word.iter();
    let Some(first) = entries.next() else {
        return Ok(engine.identity(&p.target));
    };
    entries.try_fold(first.clone(), |acc, f| engine.compose(&acc, f))
}

/// The one-entry path `[f]`, or the identity path when `f` is an identity.
pub fn embed_s<E: RelationEngine>(engine: &E, f: &E::Morphism) -> Path<E> {
    let word = if engine.is_identity(f) {
        Vec::new()
    } else {
        vec![f.clone()]
    };
    Path {
        target: engine.target(f),
        source: engine.source(f),
        word,
    }
}
