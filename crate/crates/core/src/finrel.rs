//! Relations between finite sets.
//!
//! A relation `X ← Y` is a set of pairs `(x, y)`; the target comes first.
//! Besides being a full engine for the path layer, this module is the
//! reference model every predicate is checked against.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::profile::RelationProfile;

/// A finite set of opaque labels.
///
/// Equality compares the labels as a set; the name and the listed order are
/// presentation only.
#[derive(Debug, Clone)]
pub struct FinSet {
    name: String,
    elements: Vec<String>,
    members: BTreeSet<String>,
}

impl FinSet {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        elements: impl IntoIterator<Item = S>,
    ) -> Result<FinSet> {
        let name = name.into();
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let mut members = BTreeSet::new();
        for e in &elements {
            if !members.insert(e.clone()) {
                return Err(Error::DuplicateLabel {
                    label: e.clone(),
                    set: name,
                });
            }
        }
        Ok(FinSet {
            name,
            elements,
            members,
        })
    }

    /// The one-point set, unit object of the category.
    pub fn point() -> FinSet {
        FinSet::new("1", ["*"]).unwrap()
    }

    pub fn empty(name: impl Into<String>) -> FinSet {
        FinSet::new(name, Vec::<String>::new()).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.members.contains(label)
    }

    fn check(&self, label: &str) -> Result<()> {
        if self.contains(label) {
            Ok(())
        } else {
            Err(Error::UnknownLabel {
                label: label.to_string(),
                set: self.name.clone(),
            })
        }
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for FinSet {}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {{{}}}", self.name, self.elements.join(", "))
    }
}

/// A relation `target ← source` between finite sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinRelation {
    target: FinSet,
    source: FinSet,
    pairs: BTreeSet<(String, String)>,
}

impl FinRelation {
    /// Validates every pair against the two sets. Repeated pairs collapse.
    pub fn new<A, B>(
        target: FinSet,
        source: FinSet,
        pairs: impl IntoIterator<Item = (A, B)>,
    ) -> Result<FinRelation>
    where
        A: Into<String>,
        B: Into<String>,
    {
        let mut set = BTreeSet::new();
        for (x, y) in pairs {
            let (x, y) = (x.into(), y.into());
            target.check(&x)?;
            source.check(&y)?;
            set.insert((x, y));
        }
        Ok(FinRelation {
            target,
            source,
            pairs: set,
        })
    }

    pub fn identity(set: &FinSet) -> FinRelation {
        let pairs = set
            .elements
            .iter()
            .map(|e| (e.clone(), e.clone()))
            .collect();
        FinRelation {
            target: set.clone(),
            source: set.clone(),
            pairs,
        }
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    pub fn source(&self) -> &FinSet {
        &self.source
    }

    pub fn pairs(&self) -> &BTreeSet<(String, String)> {
        &self.pairs
    }

    pub fn contains(&self, x: &str, y: &str) -> bool {
        self.pairs.contains(&(x.to_string(), y.to_string()))
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.source
            && self.pairs.len() == self.target.len()
            && self.pairs.iter().all(|(x, y)| x == y)
    }

    /// Range `f(Y)`.
    pub fn range(&self) -> BTreeSet<String> {
        self.pairs.iter().map(|(x, _)| x.clone()).collect()
    }

    /// Domain, the range of the transpose.
    pub fn domain(&self) -> BTreeSet<String> {
        self.pairs.iter().map(|(_, y)| y.clone()).collect()
    }
}

fn check_composable(f: &FinRelation, g: &FinRelation) -> Result<()> {
    if f.source != g.target {
        return Err(Error::NotComposable(format!(
            "source `{}` of the first relation differs from target `{}` of the second",
            f.source.name, g.target.name
        )));
    }
    Ok(())
}

/// Middle witnesses `y` grouped by source point, for joining against `f`.
fn index_by_target(g: &FinRelation) -> BTreeMap<&str, Vec<&str>> {
    let mut by_y: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (y, z) in &g.pairs {
        by_y.entry(y.as_str()).or_default().push(z.as_str());
    }
    by_y
}

/// `f ×_Y g`: all triples `(x, y, z)` with `(x, y) ∈ f` and `(y, z) ∈ g`.
pub fn fiber_product_fin(
    f: &FinRelation,
    g: &FinRelation,
) -> Result<BTreeSet<(String, String, String)>> {
    check_composable(f, g)?;
    let by_y = index_by_target(g);
    let mut triples = BTreeSet::new();
    for (x, y) in &f.pairs {
        for z in by_y.get(y.as_str()).into_iter().flatten() {
            triples.insert((x.clone(), y.clone(), z.to_string()));
        }
    }
    Ok(triples)
}

pub fn compose_fin(f: &FinRelation, g: &FinRelation) -> Result<FinRelation> {
    let pairs = fiber_product_fin(f, g)?
        .into_iter()
        .map(|(x, _, z)| (x, z))
        .collect();
    Ok(FinRelation {
        target: f.target.clone(),
        source: g.source.clone(),
        pairs,
    })
}

pub fn transpose_fin(f: &FinRelation) -> FinRelation {
    FinRelation {
        target: f.source.clone(),
        source: f.target.clone(),
        pairs: f
            .pairs
            .iter()
            .map(|(x, y)| (y.clone(), x.clone()))
            .collect(),
    }
}

/// `f(T)` for a subset `T` of the source.
pub fn image_of<'a>(
    f: &FinRelation,
    subset: impl IntoIterator<Item = &'a str>,
) -> Result<BTreeSet<String>> {
    let mut t = BTreeSet::new();
    for y in subset {
        f.source.check(y)?;
        t.insert(y);
    }
    Ok(f.pairs
        .iter()
        .filter(|(_, y)| t.contains(y.as_str()))
        .map(|(x, _)| x.clone())
        .collect())
}

pub fn classify_fin(f: &FinRelation) -> RelationProfile {
    let mut per_x: BTreeMap<&str, usize> = BTreeMap::new();
    let mut per_y: BTreeMap<&str, usize> = BTreeMap::new();
    for (x, y) in &f.pairs {
        *per_x.entry(x).or_default() += 1;
        *per_y.entry(y).or_default() += 1;
    }
    RelationProfile::new(
        per_x.len() == f.target.len(),
        per_y.len() == f.source.len(),
        per_x.values().all(|&n| n <= 1),
        per_y.values().all(|&n| n <= 1),
    )
}

/// Number of surplus middle witnesses: `|f ×_Y g| − |f ∘ g|`. Zero exactly
/// when the pair is monic.
pub fn witness_excess(f: &FinRelation, g: &FinRelation) -> Result<usize> {
    let triples = fiber_product_fin(f, g)?;
    let distinct: BTreeSet<(&str, &str)> = triples
        .iter()
        .map(|(x, _, z)| (x.as_str(), z.as_str()))
        .collect();
    Ok(triples.len() - distinct.len())
}

/// Each `(x, z)` of the composite is accounted for by exactly one `y`.
pub fn monic_pair_fin(f: &FinRelation, g: &FinRelation) -> Result<bool> {
    Ok(witness_excess(f, g)? == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(name: &str, els: &[&str]) -> FinSet {
        FinSet::new(name, els.iter().copied()).unwrap()
    }

    fn rel(t: &FinSet, s: &FinSet, pairs: &[(&str, &str)]) -> FinRelation {
        FinRelation::new(t.clone(), s.clone(), pairs.iter().copied()).unwrap()
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(matches!(
            FinSet::new("X", ["a", "a"]),
            Err(Error::DuplicateLabel { .. })
        ));
    }

    #[test]
    fn unknown_labels_rejected() {
        let x = set("X", &["a"]);
        let y = set("Y", &["1"]);
        assert!(matches!(
            FinRelation::new(x, y, [("a", "2")]),
            Err(Error::UnknownLabel { .. })
        ));
    }

    #[test]
    fn set_equality_ignores_name_and_order() {
        assert_eq!(set("X", &["a", "b"]), set("Z", &["b", "a"]));
        assert_ne!(set("X", &["a"]), set("X", &["a", "b"]));
    }

    #[test]
    fn compose_examples() {
        let x = set("X", &["a", "b"]);
        let y = set("Y", &["1", "2"]);
        let z = set("Z", &["p"]);
        let f = rel(&x, &y, &[("a", "1"), ("b", "2")]);
        assert_eq!(compose_fin(&f, &FinRelation::identity(&y)).unwrap(), f);

        let g = rel(&y, &z, &[("1", "p"), ("2", "p")]);
        assert_eq!(
            compose_fin(&f, &g).unwrap(),
            rel(&x, &z, &[("a", "p"), ("b", "p")])
        );

        let xs = set("X", &["x"]);
        let ys = set("Y", &["y1", "y2"]);
        let zs = set("Z", &["z"]);
        let f = rel(&xs, &ys, &[("x", "y1")]);
        let g = rel(&ys, &zs, &[("y2", "z")]);
        assert!(compose_fin(&f, &g).unwrap().pairs().is_empty());

        assert!(matches!(compose_fin(&g, &g), Err(Error::NotComposable(_))));
    }

    #[test]
    fn transpose_examples() {
        let x = set("X", &["a"]);
        let y = set("Y", &["1", "2"]);
        let id = FinRelation::identity(&y);
        assert_eq!(transpose_fin(&id), id);
        let f = rel(&x, &y, &[("a", "1"), ("a", "2")]);
        let t = transpose_fin(&f);
        assert_eq!(t, rel(&y, &x, &[("1", "a"), ("2", "a")]));
        assert_eq!(transpose_fin(&t), f);
    }

    #[test]
    fn image_examples() {
        let x = set("X", &["a", "b"]);
        let y = set("Y", &["1", "2"]);
        let f = rel(&x, &y, &[("a", "1"), ("b", "1"), ("b", "2")]);
        let img = image_of(&f, ["1"]).unwrap();
        assert_eq!(img, ["a", "b"].iter().map(|s| s.to_string()).collect());
        assert!(image_of(&f, []).unwrap().is_empty());
        let id = FinRelation::identity(&y);
        assert_eq!(image_of(&id, ["2"]).unwrap().len(), 1);
        assert_eq!(image_of(&f, ["1", "2"]).unwrap(), f.range());
        assert_eq!(
            image_of(&transpose_fin(&f), ["a", "b"]).unwrap(),
            f.domain()
        );
        assert!(image_of(&f, ["9"]).is_err());
    }

    #[test]
    fn classify_examples() {
        let y = set("Y", &["1", "2"]);
        let p = classify_fin(&FinRelation::identity(&y));
        assert!(p.surjective && p.cosurjective && p.injective && p.coinjective);
        assert!(p.reduction && p.coreduction);

        let x = set("X", &["x1", "x2"]);
        let y3 = set("Y", &["y1", "y2", "y3"]);
        let f = rel(&x, &y3, &[("x1", "y1"), ("x2", "y2")]);
        let p = classify_fin(&f);
        assert!(p.surjective && p.coinjective && p.reduction);
        assert!(!p.cosurjective && !p.coreduction);

        let x1 = set("X", &["x"]);
        let y2 = set("Y", &["y1", "y2"]);
        let f = rel(&x1, &y2, &[("x", "y1"), ("x", "y2")]);
        let p = classify_fin(&f);
        assert!(!p.injective);
        // each y has exactly one partner
        assert!(p.coinjective);
    }

    #[test]
    fn fiber_product_and_monic() {
        let x = set("X", &["a"]);
        let y = set("Y", &["1", "2"]);
        let z = set("Z", &["z"]);
        let f = rel(&x, &y, &[("a", "1"), ("a", "2")]);
        let g = rel(&y, &z, &[("1", "z"), ("2", "z")]);
        let fp = fiber_product_fin(&f, &g).unwrap();
        let expected: BTreeSet<_> = [("a", "1", "z"), ("a", "2", "z")]
            .iter()
            .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect();
        assert_eq!(fp, expected);
        assert!(!monic_pair_fin(&f, &g).unwrap());
        assert_eq!(witness_excess(&f, &g).unwrap(), 1);

        let id = FinRelation::identity(&y);
        let fp = fiber_product_fin(&f, &id).unwrap();
        assert!(fp.iter().all(|(_, y, z)| y == z));
        assert_eq!(fp.len(), 2);
        assert!(monic_pair_fin(&f, &id).unwrap());

        let disjoint = rel(&y, &z, &[]);
        assert!(fiber_product_fin(&f, &disjoint).unwrap().is_empty());
    }
}
