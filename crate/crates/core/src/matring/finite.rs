use std::collections::HashMap;
use std::fmt;

use super::{Field, MatRing, Ring, RingError, TruncPoly, ZMod};
use crate::par::{self, Exec};
use crate::scalars::{parse_rational_function, parse_scalar, BaseField, Scalar};

/// A small finite ring named by a spec string such as `M2(F3)`, `T2(F2)`,
/// `Z/6`, `F5` or `F2[x]/(x^2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    ZMod(u32),
    PrimeField(u32),
    Matrices { n: usize, p: u32 },
    UpperTriangular { n: usize, p: u32 },
    Truncated { p: u32, k: usize },
}

fn prime_of(text: &str, whole: &str) -> Result<u32, RingError> {
    match BaseField::parse(text) {
        Ok(BaseField::Prime(p)) => Ok(p),
        _ => Err(RingError::UnknownSpec(whole.to_string())),
    }
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<Self, RingError> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || RingError::UnknownSpec(text.trim().to_string());
        if let Some(n) = t.strip_prefix("Z/") {
            let n: u32 = n.parse().map_err(|_| bad())?;
            return if n >= 2 { Ok(RingSpec::ZMod(n)) } else { Err(bad()) };
        }
        if let Some(rest) = t.strip_prefix('M').or_else(|| t.strip_prefix('T')) {
            let open = rest.find('(').ok_or_else(bad)?;
            let n: usize = rest[..open].parse().map_err(|_| bad())?;
            let inner = rest[open + 1..].strip_suffix(')').ok_or_else(bad)?;
            let p = prime_of(inner, text)?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(if t.starts_with('M') {
                RingSpec::Matrices { n, p }
            } else {
                RingSpec::UpperTriangular { n, p }
            });
        }
        if let Some(open) = t.find("[x]/(x^") {
            let p = prime_of(&t[..open], text)?;
            let k: usize = t[open + 7..]
                .strip_suffix(')')
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?;
            return if k >= 1 { Ok(RingSpec::Truncated { p, k }) } else { Err(bad()) };
        }
        Ok(RingSpec::PrimeField(prime_of(&t, text)?))
    }

    /// Number of elements, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        match *self {
            RingSpec::ZMod(n) => Some(n as u64),
            RingSpec::PrimeField(p) => Some(p as u64),
            RingSpec::Matrices { n, p } => (p as u64).checked_pow((n * n) as u32),
            RingSpec::UpperTriangular { n, p } => (p as u64).checked_pow((n * (n + 1) / 2) as u32),
            RingSpec::Truncated { p, k } => (p as u64).checked_pow(k as u32),
        }
    }

    /// Builds the multiplication and addition tables.
    pub fn build(&self, limit: u64, exec: Exec) -> Result<FiniteRing, RingError> {
        let size = self.size().unwrap_or(u64::MAX);
        if size > limit {
            return Err(RingError::TooLarge { size, limit });
        }
        Ok(match *self {
            RingSpec::ZMod(n) => FiniteRing::from_ring(self.clone(), &ZMod(n), exec),
            RingSpec::PrimeField(p) => FiniteRing::from_ring(self.clone(), &Field(BaseField::Prime(p)), exec),
            RingSpec::Truncated { p, k } => FiniteRing::from_ring(self.clone(), &TruncPoly { p, k }, exec),
            RingSpec::Matrices { n, p } => {
                let m = MatRing::new(Field(BaseField::Prime(p)), n);
                let mut fr = FiniteRing::from_ring(self.clone(), &m, exec);
                let els = m.elements().expect("finite");
                let t: Vec<u32> = els.iter().map(|x| fr.by_label[&m.show(&x.transpose())]).collect();
                fr.transpose = Some(t);
                fr
            }
            RingSpec::UpperTriangular { n, p } => {
                FiniteRing::from_ring(self.clone(), &MatRing::upper_triangular(Field(BaseField::Prime(p)), n), exec)
            }
        })
    }

    /// Canonical label of a literal, e.g. `[[0,1],[0,0]]`, `3`, `1 + x`.
    pub fn canonical_literal(&self, text: &str) -> Result<String, RingError> {
        match *self {
            RingSpec::ZMod(n) => {
                let v = parse_scalar(text, BaseField::Rationals)?;
                let int = v
                    .to_i64()
                    .ok_or_else(|| RingError::Literal(format!("'{}' is not an integer", text.trim())))?;
                Ok(ZMod(n).show(&ZMod(n).from_int(int)))
            }
            RingSpec::PrimeField(p) => Ok(parse_scalar(text, BaseField::Prime(p))?.to_string()),
            RingSpec::Truncated { p, k } => {
                let f = parse_rational_function(text, BaseField::Prime(p), "x")?;
                if !f.denominator().is_one() {
                    return Err(RingError::Literal("expected a polynomial in x".into()));
                }
                let r = TruncPoly { p, k };
                let coeffs: Vec<u32> = (0..k)
                    .map(|i| match f.numerator().coeff(i) {
                        Scalar::Mod { value, .. } => value,
                        Scalar::Rat(_) => unreachable!("prime field"),
                    })
                    .collect();
                Ok(r.show(&coeffs))
            }
            RingSpec::Matrices { n, p } | RingSpec::UpperTriangular { n, p } => {
                let cells = parse_matrix_literal(text)?;
                let field = BaseField::Prime(p);
                let rows = cells
                    .iter()
                    .map(|r| r.iter().map(|c| parse_scalar(c, field)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let m = match self {
                    RingSpec::Matrices { .. } => MatRing::new(Field(field), n),
                    _ => MatRing::upper_triangular(Field(field), n),
                };
                let mat = m.from_rows(rows)?;
                Ok(m.show(&mat))
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::ZMod(n) => write!(f, "Z/{n}"),
            RingSpec::PrimeField(p) => write!(f, "F{p}"),
            RingSpec::Matrices { n, p } => write!(f, "M{n}(F{p})"),
            RingSpec::UpperTriangular { n, p } => write!(f, "T{n}(F{p})"),
            RingSpec::Truncated { p, k } => write!(f, "F{p}[x]/(x^{k})"),
        }
    }
}

/// Splits `[[a,b],[c,d]]` into entry strings; entries are not interpreted.
pub fn parse_matrix_literal(text: &str) -> Result<Vec<Vec<String>>, RingError> {
    let err = |col: usize, msg: &str| RingError::Literal(format!("column {}: {msg}", col + 1));
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let (first, last) = match (chars.first(), chars.last()) {
        (Some(&(i, '[')), Some(&(j, ']'))) if chars.len() >= 2 => (i, j),
        (Some(&(i, _)), _) => return Err(err(i, "matrix literal must look like [[..],[..]]")),
        _ => return Err(err(0, "empty matrix literal")),
    };
    let body = &text[first + 1..last];
    let offset = first + 1;
    let mut rows = Vec::new();
    let mut depth = 0i32;
    let mut row: Option<(Vec<String>, usize)> = None;
    for (i, c) in body.char_indices() {
        match c {
            '[' if row.is_none() && depth == 0 => row = Some((Vec::new(), i + 1)),
            ']' if depth == 0 => {
                let (mut cells, start) = row.take().ok_or_else(|| err(offset + i, "unbalanced ']'"))?;
                cells.push(body[start..i].trim().to_string());
                rows.push(cells);
            }
            ',' if depth == 0 => {
                if let Some((cells, start)) = row.as_mut() {
                    cells.push(body[*start..i].trim().to_string());
                    *start = i + 1;
                }
            }
            '(' => depth += 1,
            ')' => depth -= 1,
            _ if row.is_none() && !c.is_whitespace() => return Err(err(offset + i, "expected '['")),
            _ => {}
        }
    }
    if row.is_some() {
        return Err(err(last, "unterminated row"));
    }
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err(err(first, "matrix literal must be square"));
    }
    if rows.iter().flatten().any(String::is_empty) {
        return Err(err(first, "empty entry"));
    }
    Ok(rows)
}

/// A finite ring stored as addition and multiplication tables over element
/// indices, with unit and idempotent caches built once.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    spec: RingSpec,
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    one: u32,
    labels: Vec<String>,
    by_label: HashMap<String, u32>,
    inv: Vec<Option<u32>>,
    units: Vec<u32>,
    idempotents: Vec<u32>,
    transpose: Option<Vec<u32>>,
}

impl FiniteRing {
    pub fn from_ring<R: Ring>(spec: RingSpec, ring: &R, exec: Exec) -> Self {
        let els = ring.elements().expect("enumerable ring");
        let size = els.len();
        let index: HashMap<R::Elem, u32> = els.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let rows: Vec<(Vec<u32>, Vec<u32>)> = par::map_range(exec, 0..size, |i| {
            let a = &els[i];
            let add = els.iter().map(|b| index[&ring.add(a, b)]).collect();
            let mul = els.iter().map(|b| index[&ring.mul(a, b)]).collect();
            (add, mul)
        });
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for (a, m) in rows {
            add.extend(a);
            mul.extend(m);
        }
        let neg = els.iter().map(|a| index[&ring.neg(a)]).collect();
        let labels: Vec<String> = els.iter().map(|e| ring.show(e)).collect();
        let by_label = labels.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
        let zero = index[&ring.zero()];
        let one = index[&ring.one()];
        let mut fr = FiniteRing {
            spec,
            size,
            add,
            mul,
            neg,
            zero,
            one,
            labels,
            by_label,
            inv: Vec::new(),
            units: Vec::new(),
            idempotents: Vec::new(),
            transpose: None,
        };
        fr.inv = par::map_range(exec, 0..size, |a| {
            let a = a as u32;
            (0..size as u32).find(|&b| fr.mul(a, b) == one && fr.mul(b, a) == one)
        });
        fr.units = (0..size as u32).filter(|&a| fr.inv[a as usize].is_some()).collect();
        fr.idempotents = (0..size as u32).filter(|&a| fr.mul(a, a) == a).collect();
        fr
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.size as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul3(&self, a: u32, b: u32, c: u32) -> u32 {
        self.mul(self.mul(a, b), c)
    }

    pub fn pow(&self, a: u32, e: u32) -> u32 {
        (0..e).fold(self.one, |acc, _| self.mul(acc, a))
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn inverse(&self, a: u32) -> Option<u32> {
        self.inv[a as usize]
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.inv[a as usize].is_some()
    }

    pub fn units(&self) -> &[u32] {
        &self.units
    }

    pub fn idempotents(&self) -> &[u32] {
        &self.idempotents
    }

    pub fn label(&self, a: u32) -> &str {
        &self.labels[a as usize]
    }

    /// Transposition, for full matrix rings.
    pub fn transpose(&self) -> Option<&[u32]> {
        self.transpose.as_deref()
    }

    /// Looks up a literal written in the spec's element syntax.
    pub fn parse_elem(&self, text: &str) -> Result<u32, RingError> {
        let label = self.spec.canonical_literal(text)?;
        self.by_label
            .get(&label)
            .copied()
            .ok_or_else(|| RingError::Literal(format!("'{}' is not an element of {}", text.trim(), self.spec)))
    }

    /// `aR` as a membership bitmap.
    pub fn right_ideal(&self, a: u32) -> Vec<bool> {
        let mut set = vec![false; self.size];
        for x in self.elements() {
            set[self.mul(a, x) as usize] = true;
        }
        set
    }

    /// True iff `aR ∩ bR = {0}`.
    pub fn right_ideal_meets_zero(&self, a: u32, b: u32) -> bool {
        let ia = self.right_ideal(a);
        let ib = self.right_ideal(b);
        !ia.iter()
            .zip(&ib)
            .enumerate()
            .any(|(i, (x, y))| *x && *y && i as u32 != self.zero)
    }

    /// `{x : a x = 0}` as a membership bitmap.
    pub fn right_annihilator(&self, a: u32) -> Vec<bool> {
        self.elements().map(|x| self.mul(a, x) == self.zero).collect()
    }
}

impl Ring for FiniteRing {
    type Elem = u32;

    fn zero(&self) -> u32 {
        self.zero
    }
    fn one(&self) -> u32 {
        self.one
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        FiniteRing::add(self, *a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        FiniteRing::neg(self, *a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        FiniteRing::mul(self, *a, *b)
    }
    fn show(&self, a: &u32) -> String {
        self.labels[*a as usize].clone()
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some(FiniteRing::elements(self).collect())
    }
    fn inverse(&self, a: &u32) -> Result<Option<u32>, RingError> {
        Ok(self.inv[*a as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> FiniteRing {
        RingSpec::parse(s).unwrap().build(1 << 16, Exec::Sequential).unwrap()
    }

    #[test]
    fn spec_round_trip() {
        for s in ["M2(F2)", "M2(F3)", "T2(F2)", "Z/4", "Z/6", "F2[x]/(x^2)", "F5", "M3(F2)"] {
            assert_eq!(RingSpec::parse(s).unwrap().to_string(), s);
        }
        assert!(RingSpec::parse("M2(F4)").is_err());
        assert!(RingSpec::parse("Z/1").is_err());
        assert!(RingSpec::parse("Q").is_err());
    }

    #[test]
    fn sizes_and_units() {
        assert_eq!(build("M2(F2)").units().len(), 6);
        assert_eq!(build("M2(F3)").units().len(), 48);
        assert_eq!(build("T2(F2)").units().len(), 2);
        assert_eq!(build("Z/6").units().len(), 2);
        assert_eq!(build("F2[x]/(x^2)").units().len(), 2);
        assert_eq!(build("M2(F2)").idempotents().len(), 8);
    }

    #[test]
    fn literals() {
        let m = build("M2(F2)");
        let a = m.parse_elem("[[0,0],[1,1]]").unwrap();
        assert_eq!(m.label(a), "[[0,0],[1,1]]");
        assert_eq!(m.parse_elem("[[0, 0], [3, -1]]").unwrap(), a);
        assert!(m.parse_elem("[[0,0],[1]]").is_err());
        let t = build("T2(F2)");
        assert!(matches!(t.parse_elem("[[0,0],[1,0]]"), Err(RingError::Shape { row: 2, col: 1, .. })));
        let z = build("Z/4");
        assert_eq!(z.parse_elem("-2").unwrap(), z.parse_elem("2").unwrap());
        let tr = build("F2[x]/(x^2)");
        let x = tr.parse_elem("x").unwrap();
        assert_eq!(tr.mul(x, x), tr.zero());
        assert_eq!(tr.parse_elem("x^3 + 1").unwrap(), tr.one());
    }

    #[test]
    fn remark_ideal_intersections() {
        let m = build("M2(F2)");
        let a = m.parse_elem("[[0,0],[1,1]]").unwrap();
        let e = m.parse_elem("[[1,0],[0,0]]").unwrap();
        assert!(m.right_ideal_meets_zero(a, e));
        assert!(!m.right_ideal_meets_zero(m.mul(a, a), m.mul(a, e)));
        assert!(m.right_ideal_meets_zero(m.zero(), a));
    }
}
