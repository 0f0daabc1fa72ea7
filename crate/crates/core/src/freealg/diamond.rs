use serde::Serialize;

use super::{NCPoly, ReductionSystem, Word};
use crate::par::{self, Exec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbiguityKind {
    Overlap,
    Inclusion,
}

/// A word reducible by two rules at the recorded positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub rule_a: usize,
    pub rule_b: usize,
    pub witness: Word,
    pub pos_a: usize,
    pub pos_b: usize,
    /// nf(reduct via a) - nf(reduct via b); zero iff resolvable.
    pub difference: NCPoly,
}

impl Ambiguity {
    pub fn resolvable(&self) -> bool {
        self.difference.is_zero()
    }
}

#[derive(Debug, Clone)]
pub struct DiamondReport {
    pub ambiguities: Vec<Ambiguity>,
}

impl DiamondReport {
    pub fn unresolved(&self) -> impl Iterator<Item = &Ambiguity> {
        self.ambiguities.iter().filter(|a| !a.resolvable())
    }

    pub fn is_confluent(&self) -> bool {
        self.unresolved().next().is_none()
    }
}

/// Enumerates every overlap and inclusion ambiguity and resolves each with
/// the canonical normal form.
pub fn check_diamond(sys: &ReductionSystem, exec: Exec) -> DiamondReport {
    let rules = sys.rules();
    let mut raw = Vec::new();
    for (i, ri) in rules.iter().enumerate() {
        let a = ri.lhs.letters();
        for (j, rj) in rules.iter().enumerate() {
            let b = rj.lhs.letters();
            // overlaps: a proper suffix of a equals a proper prefix of b
            for k in 1..a.len().min(b.len()) {
                if a[a.len() - k..] == b[..k] {
                    let mut w = a.to_vec();
                    w.extend_from_slice(&b[k..]);
                    raw.push((AmbiguityKind::Overlap, i, j, Word(w), 0, a.len() - k));
                }
            }
            // inclusions: b occurs inside a
            if i != j && b.len() <= a.len() {
                for p in 0..=a.len() - b.len() {
                    if a[p..p + b.len()] == *b {
                        raw.push((AmbiguityKind::Inclusion, i, j, Word(a.to_vec()), 0, p));
                    }
                }
            }
        }
    }
    let ambiguities = par::map(exec, &raw, |(kind, i, j, w, pa, pb)| {
        let ra = sys.normal_form(&sys.rewrite_at(w, *pa, *i));
        let rb = sys.normal_form(&sys.rewrite_at(w, *pb, *j));
        Ambiguity {
            kind: *kind,
            rule_a: *i,
            rule_b: *j,
            witness: w.clone(),
            pos_a: *pa,
            pos_b: *pb,
            difference: ra.sub(&rb),
        }
    });
    DiamondReport { ambiguities }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_zero_self_overlap() {
        let s = ReductionSystem::parse("field: Q\nvars: x y\nrule: x^2 -> 0\n").unwrap();
        let rep = check_diamond(&s, Exec::Sequential);
        assert_eq!(rep.ambiguities.len(), 1);
        let a = &rep.ambiguities[0];
        assert_eq!(a.kind, AmbiguityKind::Overlap);
        assert_eq!(s.show(&NCPoly::word(s.field(), a.witness.clone())), "x^3");
        assert!(rep.is_confluent());
    }

    #[test]
    fn non_confluent_pair_detected() {
        let s = ReductionSystem::parse("field: Q\nvars: a b c\nrule: a*b -> c\nrule: b*a -> a\n").unwrap();
        let rep = check_diamond(&s, Exec::Sequential);
        // aba reduces to c*a one way and a^2 the other
        assert!(!rep.is_confluent());
    }

    #[test]
    fn inclusion_found() {
        let s = ReductionSystem::parse("field: Q\nvars: a b\nrule: a*b*a -> a\nrule: b -> 0\n").unwrap();
        let rep = check_diamond(&s, Exec::Sequential);
        assert!(rep
            .ambiguities
            .iter()
            .any(|a| a.kind == AmbiguityKind::Inclusion && a.pos_b == 1));
        assert!(!rep.is_confluent());
    }
}
