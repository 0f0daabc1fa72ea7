use std::cmp::Ordering;
use std::fmt;

use super::FreeAlgError;

/// Ordered generator names; a letter is an index into this list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, FreeAlgError> {
        let mut out: Vec<String> = Vec::new();
        for n in names {
            let n = n.as_ref().trim();
            let valid = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
            if !valid {
                return Err(FreeAlgError::BadGenerator(n.to_string()));
            }
            if out.iter().any(|o| o == n) {
                return Err(FreeAlgError::DuplicateGenerator(n.to_string()));
            }
            out.push(n.to_string());
        }
        if out.len() > u8::MAX as usize {
            return Err(FreeAlgError::BadGenerator("too many generators".into()));
        }
        Ok(Alphabet { names: out })
    }

    /// Whitespace-separated generator list, e.g. `"a r t w"`.
    pub fn parse(text: &str) -> Result<Self, FreeAlgError> {
        let names: Vec<&str> = text.split_whitespace().collect();
        Self::new(&names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn name(&self, letter: u8) -> &str {
        &self.names[letter as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The word spelled by a sequence of generator names.
    pub fn word(&self, letters: &[&str]) -> Result<Word, FreeAlgError> {
        letters
            .iter()
            .map(|l| {
                self.index(l)
                    .ok_or_else(|| FreeAlgError::UnknownGenerator(l.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// A monomial in the free monoid; the empty word is the identity.
///
/// Ordered length-lexicographically (shorter first, then by alphabet order),
/// which is a monoid order: `u < v` implies `xuy < xvy`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: u8) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// First position at which `pattern` occurs, if any.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.0.is_empty() || pattern.0.len() > self.0.len() {
            return None;
        }
        self.0.windows(pattern.0.len()).position(|w| w == pattern.0.as_slice())
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        self.find(pattern).is_some()
    }

    /// Replaces `self[pos..pos+len]` with `middle`.
    pub fn splice(&self, pos: usize, len: usize, middle: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() - len + middle.0.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(&middle.0);
        v.extend_from_slice(&self.0[pos + len..]);
        Word(v)
    }

    /// Pretty form such as `a^2*r*a`; the empty word prints as `1`.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = &self.word.0;
        if letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = self.alphabet.name(letters[i]);
            if j - i == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_lex_order() {
        let a = Alphabet::parse("a r t w").unwrap();
        let ra = a.word(&["r", "a"]).unwrap();
        let wt = a.word(&["w", "t"]).unwrap();
        let ara = a.word(&["a", "r", "a"]).unwrap();
        assert!(ra < wt);
        assert!(wt < ara);
        assert!(Word::empty() < Word::letter(0));
    }

    #[test]
    fn display_compresses_runs() {
        let a = Alphabet::parse("a w").unwrap();
        let w = a.word(&["a", "a", "w", "a"]).unwrap();
        assert_eq!(w.display(&a).to_string(), "a^2*w*a");
        assert_eq!(Word::empty().display(&a).to_string(), "1");
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::parse("a a").is_err());
        assert!(Alphabet::parse("a 1x").is_err());
        assert!(Alphabet::parse("x1 x2 y_3").is_ok());
    }

    #[test]
    fn find_and_splice() {
        let a = Alphabet::parse("a r").unwrap();
        let w = a.word(&["r", "a", "r", "a"]).unwrap();
        let p = a.word(&["a", "r", "a"]).unwrap();
        assert_eq!(w.find(&p), Some(1));
        assert_eq!(w.splice(1, 3, &Word::letter(0)), a.word(&["r", "a"]).unwrap());
    }
}
