use serde::Serialize;

use super::ConstructionError;
use crate::freealg::{check_diamond, Alphabet, NCPoly, ReductionSystem, Rule, Word};
use crate::par::{self, Exec};
use crate::scalars::BaseField;

/// Bounded search for an inner inverse of `a^k` among monomials.
#[derive(Debug, Clone, Serialize)]
pub struct PowerProbe {
    pub k: u32,
    pub in_index_set: bool,
    /// For `k ∈ I`, whether `x_k` is a witness.
    pub witness: Option<bool>,
    /// For `k ∉ I`, normal monomials tried and those that worked.
    pub monomials_tried: usize,
    pub monomial_witnesses: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RewritingReport {
    pub index_set: Vec<u32>,
    pub with_units: bool,
    pub system: String,
    pub ambiguities: usize,
    pub confluent: bool,
    pub max_len: usize,
    pub probes: Vec<PowerProbe>,
}

impl RewritingReport {
    /// Confluent, every `x_k` works for `k ∈ I`, and no short monomial works
    /// for `k ∉ I`.
    pub fn verified(&self) -> bool {
        self.confluent
            && self.probes.iter().all(|p| {
                if p.in_index_set {
                    p.witness == Some(true)
                } else {
                    p.monomial_witnesses.is_empty()
                }
            })
    }
}

/// `F<a, x_i : a^i x_i a^i = a^i, i ∈ I>`, optionally with `y_i` inverse to `x_i`.
pub fn power_system(index_set: &[u32], with_units: bool) -> Result<ReductionSystem, ConstructionError> {
    let field = BaseField::Rationals;
    let mut names = vec!["a".to_string()];
    for i in index_set {
        names.push(format!("x{i}"));
        if with_units {
            names.push(format!("y{i}"));
        }
    }
    let alphabet = Alphabet::new(&names)?;
    let letter = |name: String| alphabet.index(&name).expect("declared above");
    let a = letter("a".into());
    let mut rules = Vec::new();
    for &i in index_set {
        let ai = Word(vec![a; i as usize]);
        let x = Word::letter(letter(format!("x{i}")));
        rules.push(Rule {
            lhs: ai.concat(&x).concat(&ai),
            rhs: NCPoly::word(field, ai.clone()),
        });
        if with_units {
            let y = Word::letter(letter(format!("y{i}")));
            rules.push(Rule {
                lhs: x.concat(&y),
                rhs: NCPoly::one(field),
            });
            rules.push(Rule {
                lhs: y.concat(&x),
                rhs: NCPoly::one(field),
            });
        }
    }
    Ok(ReductionSystem::new(alphabet, field, rules)?)
}

/// Diamond check plus, for each `1 <= k <= k_bound`, either the defining
/// witness (`k ∈ I`) or an exhaustive check that no normal monomial of length
/// at most `max_len` is an inner inverse of `a^k`.
pub fn rewriting_examples_suite(
    index_set: &[u32],
    k_bound: u32,
    max_len: usize,
    with_units: bool,
    exec: Exec,
) -> Result<RewritingReport, ConstructionError> {
    let sys = power_system(index_set, with_units)?;
    let diamond = check_diamond(&sys, exec);
    let words = sys.normal_words(max_len, 1 << 22)?;
    let a = sys.gen("a")?;
    let mut probes = Vec::new();
    for k in 1..=k_bound {
        let ak = sys.pow(&a, k);
        if index_set.contains(&k) {
            let x = sys.gen(&format!("x{k}"))?;
            probes.push(PowerProbe {
                k,
                in_index_set: true,
                witness: Some(sys.mul(&sys.mul(&ak, &x), &ak) == ak),
                monomials_tried: 0,
                monomial_witnesses: Vec::new(),
            });
        } else {
            let hits = par::filter_map(exec, &words, |w| {
                let r = NCPoly::word(sys.field(), w.clone());
                (sys.mul(&sys.mul(&ak, &r), &ak) == ak).then(|| sys.show(&r))
            });
            probes.push(PowerProbe {
                k,
                in_index_set: false,
                witness: None,
                monomials_tried: words.len(),
                monomial_witnesses: hits,
            });
        }
    }
    Ok(RewritingReport {
        index_set: index_set.to_vec(),
        with_units,
        system: sys.to_file_string(),
        ambiguities: diamond.ambiguities.len(),
        confluent: diamond.is_confluent(),
        max_len,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_not_regular_with_index_one() {
        let rep = rewriting_examples_suite(&[1], 4, 6, false, Exec::Parallel).unwrap();
        assert!(rep.verified(), "{rep:?}");
        // words over {a, x1} of length <= 6 avoiding `a x1 a`
        assert_eq!(rep.probes[1].monomials_tried, 84);
    }

    #[test]
    fn cube_regular_via_x3() {
        let rep = rewriting_examples_suite(&[1, 3], 3, 4, false, Exec::Sequential).unwrap();
        assert!(rep.verified());
        assert_eq!(rep.probes[2].witness, Some(true));
        assert!(!rep.probes[1].in_index_set);
    }

    #[test]
    fn first_four_powers_resolve() {
        let rep = rewriting_examples_suite(&[1, 2, 3, 4], 4, 0, false, Exec::Parallel).unwrap();
        assert!(rep.confluent);
        assert!(rep.ambiguities > 0);
    }

    #[test]
    fn unit_variant() {
        let rep = rewriting_examples_suite(&[1], 2, 4, true, Exec::Parallel).unwrap();
        assert!(rep.verified(), "{rep:?}");
    }

    /// Oracle: the monomial count is the number of words over {a, x1} of
    /// length <= 6 avoiding `a x1 a`.
    #[test]
    fn monomial_count_oracle() {
        let mut count = 0;
        for len in 0..=6u32 {
            for code in 0..(1u32 << len) {
                let w: Vec<u32> = (0..len).map(|i| code >> i & 1).collect();
                if !w.windows(3).any(|t| t == [0, 1, 0]) {
                    count += 1;
                }
            }
        }
        let rep = rewriting_examples_suite(&[1], 2, 6, false, Exec::Sequential).unwrap();
        assert_eq!(rep.probes[1].monomials_tried, count);
    }
}
