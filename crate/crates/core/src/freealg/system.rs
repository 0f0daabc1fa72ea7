use std::fmt;

use super::{parse_expr, Alphabet, FreeAlgError, NCPoly, Word};
use crate::scalars::BaseField;

/// Oriented rewrite rule `lhs -> rhs`; every word of `rhs` is smaller than `lhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

/// Monomial reduction system over a declared alphabet.
#[derive(Debug, Clone)]
pub struct ReductionSystem {
    alphabet: Alphabet,
    field: BaseField,
    rules: Vec<Rule>,
    by_first: Vec<Vec<usize>>,
}

/// Which occurrence to rewrite and in what rule order.
///
/// The default (leftmost occurrence, rules in list order) is the canonical
/// strategy used for all reported normal forms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RewriteStrategy {
    /// Rule priority; `None` means list order.
    pub rule_order: Option<Vec<usize>>,
    pub rightmost: bool,
}

/// One rewrite step: `word` had rule `rule` applied at `position`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub word: Word,
    pub position: usize,
    pub rule: usize,
}

impl ReductionSystem {
    pub fn new(alphabet: Alphabet, field: BaseField, rules: Vec<Rule>) -> Result<Self, FreeAlgError> {
        for (i, r) in rules.iter().enumerate() {
            if r.lhs.is_empty() {
                return Err(FreeAlgError::InvalidRule {
                    index: i,
                    reason: "empty left-hand side".into(),
                });
            }
            if r.lhs.letters().iter().any(|&l| l as usize >= alphabet.len()) {
                return Err(FreeAlgError::InvalidRule {
                    index: i,
                    reason: "letter outside the alphabet".into(),
                });
            }
            if let Some((w, _)) = r.rhs.terms().find(|(w, _)| **w >= r.lhs) {
                return Err(FreeAlgError::InvalidRule {
                    index: i,
                    reason: format!(
                        "right-hand word {} is not smaller than {}",
                        w.display(&alphabet),
                        r.lhs.display(&alphabet)
                    ),
                });
            }
            if rules[..i].iter().any(|o| o.lhs == r.lhs) {
                return Err(FreeAlgError::InvalidRule {
                    index: i,
                    reason: "duplicate left-hand side".into(),
                });
            }
        }
        let mut by_first = vec![Vec::new(); alphabet.len()];
        for (i, r) in rules.iter().enumerate() {
            by_first[r.lhs.letters()[0] as usize].push(i);
        }
        Ok(ReductionSystem {
            alphabet,
            field,
            rules,
            by_first,
        })
    }

    /// Builds a system from `lhs = rhs` relation strings, orienting each so the
    /// larger side (which must be a single word) becomes the left-hand side.
    pub fn from_relations(
        alphabet: Alphabet,
        field: BaseField,
        relations: &[(&str, &str)],
    ) -> Result<Self, FreeAlgError> {
        let mut rules = Vec::new();
        for (i, (l, r)) in relations.iter().enumerate() {
            let lp = parse_expr(l, &alphabet, field)?;
            let rp = parse_expr(r, &alphabet, field)?;
            rules.push(orient(i, &lp, &rp)?);
        }
        Self::new(alphabet, field, rules)
    }

    /// Parses the line-based file format:
    ///
    /// ```text
    /// field: F2
    /// vars: a r t w
    /// rule: a*r*a -> a
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, FreeAlgError> {
        let mut field = None;
        let mut alphabet = None;
        let mut rules = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            // columns are reported relative to the whole (untrimmed) line
            let indent = raw.len() - raw.trim_start().len();
            let at_line = |offset: usize| {
                move |e: crate::expr::ParseError| FreeAlgError::Syntax {
                    line: lineno + 1,
                    column: e.column + offset,
                    message: e.message,
                }
            };
            let (key, rest) = line.split_once(':').ok_or(FreeAlgError::Syntax {
                line: lineno + 1,
                column: 1,
                message: "expected 'key: value'".into(),
            })?;
            match key.trim() {
                "field" => {
                    field = Some(BaseField::parse(rest).map_err(|e| FreeAlgError::Syntax {
                        line: lineno + 1,
                        column: 1,
                        message: e.to_string(),
                    })?)
                }
                "vars" => alphabet = Some(Alphabet::parse(rest)?),
                "rule" => {
                    let (Some(f), Some(a)) = (field, alphabet.as_ref()) else {
                        return Err(FreeAlgError::Syntax {
                            line: lineno + 1,
                            column: 1,
                            message: "'field' and 'vars' must precede rules".into(),
                        });
                    };
                    let (l, r) = rest.split_once("->").ok_or(FreeAlgError::Syntax {
                        line: lineno + 1,
                        column: 1,
                        message: "rule needs '->'".into(),
                    })?;
                    let l_off = indent + key.len() + 1;
                    let r_off = l_off + l.len() + 2;
                    let lp = parse_expr(l, a, f).map_err(at_line(l_off))?;
                    let rp = parse_expr(r, a, f).map_err(at_line(r_off))?;
                    let lhs = single_word(&lp).ok_or_else(|| FreeAlgError::InvalidRule {
                        index: rules.len(),
                        reason: "left-hand side must be a single monomial with coefficient 1".into(),
                    })?;
                    rules.push(Rule { lhs, rhs: rp });
                }
                other => {
                    return Err(FreeAlgError::Syntax {
                        line: lineno + 1,
                        column: 1,
                        message: format!("unknown key '{other}'"),
                    })
                }
            }
        }
        let field = field.ok_or(FreeAlgError::Syntax {
            line: 0,
            column: 0,
            message: "missing 'field:' line".into(),
        })?;
        let alphabet = alphabet.ok_or(FreeAlgError::Syntax {
            line: 0,
            column: 0,
            message: "missing 'vars:' line".into(),
        })?;
        Self::new(alphabet, field, rules)
    }

    pub fn to_file_string(&self) -> String {
        let mut s = format!("field: {}\nvars: {}\n", self.field, self.alphabet.names().join(" "));
        for r in &self.rules {
            s.push_str(&format!(
                "rule: {} -> {}\n",
                r.lhs.display(&self.alphabet),
                r.rhs.display(&self.alphabet)
            ));
        }
        s
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn parse_poly(&self, text: &str) -> Result<NCPoly, FreeAlgError> {
        Ok(parse_expr(text, &self.alphabet, self.field)?)
    }

    pub fn show(&self, p: &NCPoly) -> String {
        p.display(&self.alphabet).to_string()
    }

    /// Same rules with a different priority order.
    pub fn reordered(&self, order: &[usize]) -> Self {
        let rules = order.iter().map(|&i| self.rules[i].clone()).collect();
        Self::new(self.alphabet.clone(), self.field, rules).expect("permutation of a valid system")
    }

    pub fn is_reducible(&self, w: &Word) -> bool {
        self.find_match(w, &RewriteStrategy::default()).is_some()
    }

    /// True if some rule's lhs ends exactly at the end of `w`.
    pub(crate) fn has_suffix_match(&self, w: &Word) -> bool {
        let l = w.letters();
        self.rules
            .iter()
            .any(|r| r.lhs.len() <= l.len() && l.ends_with(r.lhs.letters()))
    }

    fn rule_matches_at(&self, w: &[u8], pos: usize, rule: usize) -> bool {
        let lhs = self.rules[rule].lhs.letters();
        w.len() - pos >= lhs.len() && &w[pos..pos + lhs.len()] == lhs
    }

    /// Position and rule index of the occurrence the strategy rewrites.
    pub fn find_match(&self, w: &Word, strategy: &RewriteStrategy) -> Option<(usize, usize)> {
        let letters = w.letters();
        let positions: Box<dyn Iterator<Item = usize>> = if strategy.rightmost {
            Box::new((0..letters.len()).rev())
        } else {
            Box::new(0..letters.len())
        };
        for pos in positions {
            match &strategy.rule_order {
                None => {
                    for &ri in &self.by_first[letters[pos] as usize] {
                        if self.rule_matches_at(letters, pos, ri) {
                            return Some((pos, ri));
                        }
                    }
                }
                Some(order) => {
                    for &ri in order {
                        if self.rule_matches_at(letters, pos, ri) {
                            return Some((pos, ri));
                        }
                    }
                }
            }
        }
        None
    }

    /// Applies `rule` at `pos` of `w` (which must match there).
    pub fn rewrite_at(&self, w: &Word, pos: usize, rule: usize) -> NCPoly {
        let r = &self.rules[rule];
        let prefix = Word(w.letters()[..pos].to_vec());
        let suffix = Word(w.letters()[pos + r.lhs.len()..].to_vec());
        NCPoly::from_terms(
            self.field,
            r.rhs
                .terms()
                .map(|(m, c)| (prefix.concat(m).concat(&suffix), c.clone())),
        )
    }

    /// Canonical normal form (leftmost occurrence, first rule in list order).
    pub fn normal_form(&self, p: &NCPoly) -> NCPoly {
        self.normal_form_with(p, &RewriteStrategy::default(), None)
    }

    /// Normal form plus the full rewrite trace.
    pub fn normal_form_traced(&self, p: &NCPoly) -> (NCPoly, Vec<RewriteStep>) {
        let mut trace = Vec::new();
        let nf = self.normal_form_with(p, &RewriteStrategy::default(), Some(&mut trace));
        (nf, trace)
    }

    /// Rewrites the largest reducible word first. Since rewriting only
    /// produces smaller words, a word popped as irreducible is final.
    pub fn normal_form_with(
        &self,
        p: &NCPoly,
        strategy: &RewriteStrategy,
        mut trace: Option<&mut Vec<RewriteStep>>,
    ) -> NCPoly {
        let mut work = p.clone();
        let mut done = NCPoly::zero(self.field);
        while let Some((w, c)) = work.take_largest() {
            match self.find_match(&w, strategy) {
                None => done.add_term(w, &c),
                Some((pos, rule)) => {
                    let r = &self.rules[rule];
                    let prefix = &w.letters()[..pos];
                    let suffix = &w.letters()[pos + r.lhs.len()..];
                    for (m, k) in r.rhs.terms() {
                        let mut v = Vec::with_capacity(prefix.len() + m.len() + suffix.len());
                        v.extend_from_slice(prefix);
                        v.extend_from_slice(m.letters());
                        v.extend_from_slice(suffix);
                        work.add_term(Word(v), &(&c * k));
                    }
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(RewriteStep {
                            word: w,
                            position: pos,
                            rule,
                        });
                    }
                }
            }
        }
        done
    }

    /// Product followed by normal form.
    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        self.normal_form(&a.mul(b))
    }

    pub fn pow(&self, a: &NCPoly, e: u32) -> NCPoly {
        let mut acc = NCPoly::one(self.field);
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn scalar(&self, c: i64) -> NCPoly {
        NCPoly::constant(self.field.from_i64(c))
    }

    pub fn one(&self) -> NCPoly {
        NCPoly::one(self.field)
    }

    pub fn zero(&self) -> NCPoly {
        NCPoly::zero(self.field)
    }

    pub fn gen(&self, name: &str) -> Result<NCPoly, FreeAlgError> {
        let l = self
            .alphabet
            .index(name)
            .ok_or_else(|| FreeAlgError::UnknownGenerator(name.to_string()))?;
        Ok(NCPoly::letter(self.field, l))
    }

    /// Irreducible words of length at most `max_len`, in increasing order.
    pub fn normal_words(&self, max_len: usize, limit: usize) -> Result<Vec<Word>, FreeAlgError> {
        let mut out = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for l in 0..self.alphabet.len() as u8 {
                    let mut v = w.0.clone();
                    v.push(l);
                    let cand = Word(v);
                    if !self.has_suffix_match(&cand) {
                        next.push(cand);
                    }
                }
            }
            out.extend(next.iter().cloned());
            if out.len() > limit {
                return Err(FreeAlgError::SearchSpaceTooLarge {
                    dimension: out.len(),
                    limit,
                });
            }
            frontier = next;
        }
        out.sort();
        Ok(out)
    }
}

fn single_word(p: &NCPoly) -> Option<Word> {
    if p.len() != 1 {
        return None;
    }
    let (w, c) = p.terms().next()?;
    c.is_one().then(|| w.clone())
}

/// Orients `l = r` as `word -> rest` with the largest word on the left.
fn orient(index: usize, l: &NCPoly, r: &NCPoly) -> Result<Rule, FreeAlgError> {
    let diff = l.sub(r);
    let lead = diff
        .leading_word()
        .cloned()
        .ok_or_else(|| FreeAlgError::InvalidRule {
            index,
            reason: "trivial relation".into(),
        })?;
    let c = diff.coeff(&lead);
    let inv = c.inv().map_err(|_| FreeAlgError::InvalidRule {
        index,
        reason: "zero leading coefficient".into(),
    })?;
    // lead = -(diff - c*lead)/c
    let rest = diff
        .sub(&NCPoly::monomial(c.clone(), lead.clone()))
        .scale(&(-&inv));
    Ok(Rule { lhs: lead, rhs: rest })
}

impl fmt::Display for ReductionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_file_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(text: &str) -> ReductionSystem {
        ReductionSystem::parse(text).unwrap()
    }

    #[test]
    fn square_zero() {
        let s = sys("field: Q\nvars: x y\nrule: x^2 -> 0\n");
        assert!(s.normal_form(&s.parse_poly("x^2").unwrap()).is_zero());
        let p = s.parse_poly("(1+x)*(1-x)").unwrap();
        assert!(s.normal_form(&p).is_one());
    }

    #[test]
    fn forced_reduction() {
        let s = sys("field: Q\nvars: a r w\nrule: a*r*a -> a\nrule: r*a*w -> w\n");
        let nf = s.normal_form(&s.parse_poly("a*r*a*w").unwrap());
        assert_eq!(s.show(&nf), "a*w");
    }

    #[test]
    fn trace_records_steps() {
        let s = sys("field: Q\nvars: a r\nrule: a*r*a -> a\n");
        let (nf, trace) = s.normal_form_traced(&s.parse_poly("a*r*a*r*a").unwrap());
        assert_eq!(s.show(&nf), "a");
        assert_eq!(trace.len(), 2);
        assert_eq!(trace[0].position, 0);
    }

    #[test]
    fn rejects_non_decreasing_rules() {
        let e = ReductionSystem::parse("field: Q\nvars: a b\nrule: a -> b\n").unwrap_err();
        assert!(matches!(e, FreeAlgError::InvalidRule { index: 0, .. }));
        assert!(ReductionSystem::parse("field: Q\nvars: a\nrule: a -> a^2\n").is_err());
        assert!(ReductionSystem::parse("field: Q\nvars: a\nrule: a^2 -> a\nrule: a^2 -> 0\n").is_err());
        assert!(ReductionSystem::parse("vars: a\nrule: a^2 -> a\n").is_err());
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let e = ReductionSystem::parse("field: Q\nvars: a\n\nrule: a*b -> a\n").unwrap_err();
        match e {
            FreeAlgError::Syntax { line, column, .. } => assert_eq!((line, column), (4, 9)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn relations_are_oriented() {
        let a = Alphabet::parse("a r t w").unwrap();
        let s = ReductionSystem::from_relations(a, BaseField::Rationals, &[("w*t", "r*a"), ("a", "a*r*a")]).unwrap();
        assert_eq!(s.show(&s.rules()[0].rhs), "r*a");
        assert_eq!(s.show(&s.rules()[1].rhs), "a");
    }

    #[test]
    fn file_roundtrip() {
        let s = sys("field: F2\nvars: a x1\nrule: a*x1*a -> a\n");
        let again = sys(&s.to_file_string());
        assert_eq!(again.rules(), s.rules());
    }

    #[test]
    fn normal_words_avoid_lhs() {
        let s = sys("field: Q\nvars: x y\nrule: x^2 -> 0\n");
        // words over {x,y} with no "xx": 1, 2, 3, 5 of lengths 0..3
        assert_eq!(s.normal_words(3, 1000).unwrap().len(), 11);
        assert!(s.normal_words(30, 1000).is_err());
    }
}
