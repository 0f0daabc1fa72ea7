use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FreeAlgError, NCPoly, ReductionSystem, RewriteStrategy, Word};
use crate::linalg::SparseSystem;
use crate::scalars::Scalar;
use crate::par::{self, Exec};

/// Budget for [`reduce_to_zero`]: how many alternative strategies to try
/// once the canonical normal form stalls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Effort {
    pub strategies: usize,
    pub seed: u64,
}

impl Default for Effort {
    fn default() -> Self {
        Effort {
            strategies: 64,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroVerdict {
    /// Some chain of valid rewrites reached 0; `strategies` counts the
    /// rewriting passes used (1 = canonical normal form alone).
    ProvedZero { strategies: usize },
    /// Nothing was proved; the residual is what the last pass left.
    Inconclusive { residual: NCPoly },
}

impl ZeroVerdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, ZeroVerdict::ProvedZero { .. })
    }
}

/// Tries to rewrite `p` to zero. Every pass rewrites the current residual,
/// so the chain is a sequence of equalities in the quotient and a zero
/// verdict is sound even when the system is not confluent.
pub fn reduce_to_zero(p: &NCPoly, sys: &ReductionSystem, effort: Effort) -> ZeroVerdict {
    let mut r = sys.normal_form(p);
    if r.is_zero() {
        return ZeroVerdict::ProvedZero { strategies: 1 };
    }
    let n = sys.rules().len();
    let identity: Vec<usize> = (0..n).collect();
    let reversed: Vec<usize> = (0..n).rev().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(effort.seed);
    for attempt in 0..effort.strategies {
        let strategy = match attempt {
            0 => RewriteStrategy {
                rule_order: None,
                rightmost: true,
            },
            1 => RewriteStrategy {
                rule_order: Some(reversed.clone()),
                rightmost: false,
            },
            2 => RewriteStrategy {
                rule_order: Some(reversed.clone()),
                rightmost: true,
            },
            _ => {
                let mut order = identity.clone();
                order.shuffle(&mut rng);
                RewriteStrategy {
                    rule_order: Some(order),
                    rightmost: attempt % 2 == 1,
                }
            }
        };
        r = sys.normal_form_with(&r, &strategy, None);
        if r.is_zero() {
            return ZeroVerdict::ProvedZero {
                strategies: attempt + 2,
            };
        }
        r = sys.normal_form(&r);
        if r.is_zero() {
            return ZeroVerdict::ProvedZero {
                strategies: attempt + 2,
            };
        }
    }
    ZeroVerdict::Inconclusive { residual: r }
}

/// Outcome of [`bounded_inverse_search`].
#[derive(Debug, Clone)]
pub struct InverseSearch {
    pub inverse: Option<NCPoly>,
    /// Number of normal words spanning the candidate space.
    pub dimension: usize,
    pub equations: usize,
    pub rank: usize,
}

impl InverseSearch {
    pub fn support(&self) -> Option<usize> {
        self.inverse.as_ref().map(NCPoly::len)
    }
}

/// Candidate span for [`bounded_inverse_search`]: normal words of length at
/// most `max_len`, optionally restricted to some letters and to a window of
/// weighted degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpace {
    pub max_len: usize,
    pub letters: Option<Vec<u8>>,
    pub grading: Option<Grading>,
    /// Resource guard on the number of candidate words.
    pub limit: usize,
}

/// Integer weight per letter plus an inclusive degree window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    pub weights: Vec<i64>,
    pub min: i64,
    pub max: i64,
}

impl Grading {
    pub fn degree(&self, w: &Word) -> i64 {
        w.letters().iter().map(|&l| self.weights[l as usize]).sum()
    }
}

impl SearchSpace {
    pub fn length(max_len: usize) -> Self {
        SearchSpace {
            max_len,
            letters: None,
            grading: None,
            limit: 2_000_000,
        }
    }

    pub fn with_letters(mut self, letters: Vec<u8>) -> Self {
        self.letters = Some(letters);
        self
    }

    pub fn with_grading(mut self, grading: Grading) -> Self {
        self.grading = Some(grading);
        self
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    /// Enumerates the span in increasing word order.
    pub fn words(&self, sys: &ReductionSystem) -> Result<Vec<Word>, FreeAlgError> {
        let letters: Vec<u8> = match &self.letters {
            Some(l) => l.clone(),
            None => (0..sys.alphabet().len() as u8).collect(),
        };
        let max_step = self
            .grading
            .as_ref()
            .map(|g| letters.iter().map(|&l| g.weights[l as usize].abs()).max().unwrap_or(0))
            .unwrap_or(0);
        // a prefix is kept only if its degree can still be brought into the window
        let viable = |w: &Word| match &self.grading {
            None => true,
            Some(g) => {
                let d = g.degree(w);
                let slack = max_step * (self.max_len - w.len()) as i64;
                d + slack >= g.min && d - slack <= g.max
            }
        };
        let in_window = |w: &Word| self.grading.as_ref().is_none_or(|g| {
            let d = g.degree(w);
            d >= g.min && d <= g.max
        });
        let mut out = Vec::new();
        let mut frontier = vec![Word::empty()];
        let mut count = 0usize;
        for len in 0..=self.max_len {
            for w in &frontier {
                if in_window(w) {
                    out.push(w.clone());
                }
            }
            count += frontier.len();
            if count > self.limit {
                return Err(FreeAlgError::SearchSpaceTooLarge {
                    dimension: count,
                    limit: self.limit,
                });
            }
            if len == self.max_len {
                break;
            }
            let mut next = Vec::new();
            for w in &frontier {
                for &l in &letters {
                    let mut v = Vec::with_capacity(w.len() + 1);
                    v.extend_from_slice(w.letters());
                    v.push(l);
                    let cand = Word(v);
                    if !sys.has_suffix_match(&cand) && viable(&cand) {
                        next.push(cand);
                    }
                }
            }
            frontier = next;
        }
        out.sort();
        Ok(out)
    }
}

/// Looks for a two-sided inverse of `u` in a span of normal words by
/// solving `u*v = 1`, `v*u = 1` coefficientwise.
///
/// Any returned `v` satisfies both equations under the canonical normal
/// form, so it is a genuine inverse in the quotient. Free unknowns are set
/// to zero, which favours short words. An absent answer only means the
/// span holds no inverse.
pub fn bounded_inverse_search(
    u: &NCPoly,
    sys: &ReductionSystem,
    space: &SearchSpace,
    exec: Exec,
) -> Result<InverseSearch, FreeAlgError> {
    let basis = space.words(sys)?;
    Ok(inverse_search_in_span(u, sys, &basis, exec))
}

/// [`bounded_inverse_search`] over an explicit list of normal words.
pub fn inverse_search_in_span(u: &NCPoly, sys: &ReductionSystem, basis: &[Word], exec: Exec) -> InverseSearch {
    let field = sys.field();
    let u = sys.normal_form(u);
    let products = par::map(exec, basis, |b| {
        let bw = NCPoly::word(field, b.clone());
        (sys.mul(&u, &bw), sys.mul(&bw, &u))
    });
    // one equation per (side, word); the constant-term equations come first
    let mut index: HashMap<(bool, Word), usize> = HashMap::new();
    index.insert((false, Word::empty()), 0);
    index.insert((true, Word::empty()), 1);
    let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(), BTreeMap::new()];
    for (col, (left, right)) in products.into_iter().enumerate() {
        for (side, prod) in [(false, left), (true, right)] {
            for (w, c) in prod.into_terms() {
                let next = index.len();
                let r = *index.entry((side, w)).or_insert(next);
                if r == rows.len() {
                    rows.push(BTreeMap::new());
                }
                rows[r].insert(col, c);
            }
        }
    }
    let equations = rows.len();
    // sparsest equations first keeps fill-in low
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&r| (rows[r].len(), r));
    let mut solver = SparseSystem::new(field);
    for r in order {
        let rhs = if r < 2 { field.one() } else { field.zero() };
        if !solver.push(std::mem::take(&mut rows[r]), rhs) {
            break;
        }
    }
    let inverse = solver.solve().map(|x| {
        NCPoly::from_terms(field, x.into_iter().map(|(col, c)| (basis[col].clone(), c)))
    });
    InverseSearch {
        inverse,
        dimension: basis.len(),
        equations,
        rank: solver.rank(),
    }
}

/// Inverse of `1 + a` for `a` with `a^nil_bound = 0` in the quotient:
/// the truncated geometric series.
pub fn nilpotent_inverse(a: &NCPoly, sys: &ReductionSystem, nil_bound: u32) -> Result<NCPoly, FreeAlgError> {
    let a = sys.normal_form(a);
    let minus_a = a.neg();
    let mut power = sys.one();
    let mut sum = sys.zero();
    for _ in 0..nil_bound {
        sum = sum.add(&power);
        power = sys.mul(&power, &minus_a);
    }
    if !power.is_zero() {
        return Err(FreeAlgError::NilpotencyFailed { power: nil_bound });
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(t: &str) -> ReductionSystem {
        ReductionSystem::parse(t).unwrap()
    }

    #[test]
    fn trivial_zero() {
        let s = sys("field: Q\nvars: a x1\nrule: a*x1*a -> a\n");
        let p = s.parse_poly("a - a").unwrap();
        assert!(reduce_to_zero(&p, &s, Effort::default()).is_proved());
        let q = s.parse_poly("a*x1*a - a").unwrap();
        assert_eq!(
            reduce_to_zero(&q, &s, Effort::default()),
            ZeroVerdict::ProvedZero { strategies: 1 }
        );
        let nz = s.parse_poly("a").unwrap();
        assert!(!reduce_to_zero(&nz, &s, Effort { strategies: 4, seed: 1 }).is_proved());
    }

    #[test]
    fn inverse_of_one() {
        let s = sys("field: Q\nvars: x y\nrule: x^2 -> 0\n");
        let r = bounded_inverse_search(&s.one(), &s, &SearchSpace::length(2), Exec::Sequential).unwrap();
        assert!(r.inverse.unwrap().is_one());
    }

    #[test]
    fn zero_divisor_has_no_inverse() {
        let s = sys("field: Q\nvars: x y\nrule: x^2 -> 0\n");
        let x = s.gen("x").unwrap();
        for bound in 0..5 {
            let r = bounded_inverse_search(&x, &s, &SearchSpace::length(bound), Exec::Parallel).unwrap();
            assert!(r.inverse.is_none());
        }
    }

    #[test]
    fn unit_found_by_search() {
        let s = sys("field: Q\nvars: x y\nrule: x^2 -> 0\n");
        let u = s.parse_poly("1 + x").unwrap();
        let v = bounded_inverse_search(&u, &s, &SearchSpace::length(1), Exec::Sequential)
            .unwrap()
            .inverse
            .unwrap();
        assert_eq!(v, s.parse_poly("1 - x").unwrap());
    }

    #[test]
    fn overflow_guard() {
        let s = sys("field: F2\nvars: a b c\nrule: a^2 -> 0\n");
        let e = bounded_inverse_search(&s.one(), &s, &SearchSpace::length(12).with_limit(500), Exec::Sequential).unwrap_err();
        assert!(matches!(e, FreeAlgError::SearchSpaceTooLarge { limit: 500, .. }));
    }

    #[test]
    fn graded_span() {
        let s = sys("field: Q\nvars: x y\nrule: x^2 -> 0\n");
        let g = Grading {
            weights: vec![1, -1],
            min: 0,
            max: 0,
        };
        let words = SearchSpace::length(4).with_grading(g.clone()).words(&s).unwrap();
        // 1; xy, yx; xyxy, xyyx, yxyx
        assert!(words.iter().all(|w| g.degree(w) == 0));
        assert_eq!(words.len(), 1 + 2 + 3);
        let only_y = SearchSpace::length(3).with_letters(vec![1]).words(&s).unwrap();
        assert_eq!(only_y.len(), 4);
    }

    #[test]
    fn geometric_series() {
        let s = sys("field: F2\nvars: a\nrule: a^3 -> 0\n");
        let a = s.gen("a").unwrap();
        let inv = nilpotent_inverse(&a, &s, 3).unwrap();
        assert_eq!(inv, s.parse_poly("1 + a + a^2").unwrap());
        assert!(s.mul(&inv, &s.parse_poly("1 + a").unwrap()).is_one());
        assert_eq!(
            nilpotent_inverse(&a, &s, 2).unwrap_err(),
            FreeAlgError::NilpotencyFailed { power: 2 }
        );
    }
}
