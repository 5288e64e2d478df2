/// The four definitional predicates of a relation and the two classes they
/// combine into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelationProfile {
    /// Range equals target.
    pub surjective: bool,
    /// Domain equals source ("defined everywhere").
    pub cosurjective: bool,
    /// At most one pair per target point.
    pub injective: bool,
    /// At most one pair per source point ("single valued").
    pub coinjective: bool,
    pub reduction: bool,
    pub coreduction: bool,
}

impl RelationProfile {
    pub fn new(surjective: bool, cosurjective: bool, injective: bool, coinjective: bool) -> Self {
        RelationProfile {
            surjective,
            cosurjective,
            injective,
            coinjective,
            reduction: surjective && coinjective,
            coreduction: injective && cosurjective,
        }
    }

    /// Profile of the transposed relation: every predicate trades places
    /// with its dual.
    pub fn transposed(self) -> Self {
        RelationProfile::new(
            self.cosurjective,
            self.surjective,
            self.coinjective,
            self.injective,
        )
    }

    /// Looks a predicate up by its command-line name.
    pub fn get(&self, name: &str) -> Option<bool> {
        Some(match name {
            "surjective" => self.surjective,
            "cosurjective" => self.cosurjective,
            "injective" => self.injective,
            "coinjective" => self.coinjective,
            "reduction" => self.reduction,
            "coreduction" => self.coreduction,
            _ => return None,
        })
    }

    /// Invertible relations (bijective functions) are both.
    pub fn is_invertible(&self) -> bool {
        self.reduction && self.coreduction
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_flags() {
        let p = RelationProfile::new(true, false, false, true);
        assert!(p.reduction);
        assert!(!p.coreduction);
        let t = p.transposed();
        assert!(t.coreduction && !t.reduction);
        assert_eq!(t.transposed(), p);
        assert_eq!(p.get("coinjective"), Some(true));
        assert_eq!(p.get("lagrangian"), None);
    }
}
