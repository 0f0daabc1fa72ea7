use std::fmt;

use super::{elim, Ring, RingError};

/// Optional shape constraint on square matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Full,
    UpperTriangular,
}

impl Shape {
    fn allows(self, row: usize, col: usize) -> bool {
        match self {
            Shape::Full => true,
            Shape::UpperTriangular => row <= col,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Full => write!(f, "full"),
            Shape::UpperTriangular => write!(f, "upper triangular"),
        }
    }
}

/// Row-major `n x n` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    n: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, RingError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(RingError::SizeMismatch(n, r.len()));
            }
            data.extend(r);
        }
        Ok(Matrix { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.data.chunks(self.n.max(1)).map(|c| c.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }
}

/// `n x n` matrices over a ring handle, optionally shape-constrained.
#[derive(Debug, Clone)]
pub struct MatRing<R> {
    pub base: R,
    pub n: usize,
    pub shape: Shape,
}

/// Enumeration stops above this many elements.
const ENUM_LIMIT: u64 = 1 << 20;

impl<R: Ring> MatRing<R> {
    pub fn new(base: R, n: usize) -> Self {
        MatRing {
            base,
            n,
            shape: Shape::Full,
        }
    }

    pub fn upper_triangular(base: R, n: usize) -> Self {
        MatRing {
            base,
            n,
            shape: Shape::UpperTriangular,
        }
    }

    pub fn from_rows(&self, rows: Vec<Vec<R::Elem>>) -> Result<Matrix<R::Elem>, RingError> {
        let m = Matrix::from_rows(rows)?;
        if m.size() != self.n {
            return Err(RingError::SizeMismatch(self.n, m.size()));
        }
        self.check_shape(&m)?;
        Ok(m)
    }

    /// Integer-literal convenience constructor.
    pub fn ints(&self, rows: &[&[i64]]) -> Matrix<R::Elem> {
        Matrix::from_fn(self.n, |i, j| self.base.from_int(rows[i][j]))
    }

    pub fn diag(&self, d: &[R::Elem]) -> Matrix<R::Elem> {
        Matrix::from_fn(self.n, |i, j| if i == j { d[i].clone() } else { self.base.zero() })
    }

    pub fn scalar(&self, c: &R::Elem) -> Matrix<R::Elem> {
        Matrix::from_fn(self.n, |i, j| if i == j { c.clone() } else { self.base.zero() })
    }

    /// Error naming the first entry outside the shape.
    pub fn check_shape(&self, m: &Matrix<R::Elem>) -> Result<(), RingError> {
        for i in 0..m.size() {
            for j in 0..m.size() {
                if !self.shape.allows(i, j) && !self.base.is_zero(m.get(i, j)) {
                    return Err(RingError::Shape {
                        row: i + 1,
                        col: j + 1,
                        shape: self.shape.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn entry_map<S: Ring>(&self, m: &Matrix<R::Elem>, f: impl Fn(&R::Elem) -> S::Elem) -> Matrix<S::Elem> {
        Matrix::from_fn(m.size(), |i, j| f(m.get(i, j)))
    }

    /// Elimination helper; only meaningful when the base is a field.
    pub fn elimination(&self) -> elim::Elimination<'_, R> {
        elim::Elimination::new(&self.base)
    }
}

impl<R: Ring> Ring for MatRing<R> {
    type Elem = Matrix<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Matrix::from_fn(self.n, |_, _| self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.scalar(&self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Matrix::from_fn(self.n, |i, j| self.base.add(a.get(i, j), b.get(i, j)))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Matrix::from_fn(self.n, |i, j| self.base.neg(a.get(i, j)))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Matrix::from_fn(self.n, |i, j| {
            let mut acc = self.base.zero();
            for k in 0..self.n {
                let (x, y) = (a.get(i, k), b.get(k, j));
                if self.base.is_zero(x) || self.base.is_zero(y) {
                    continue;
                }
                acc = self.base.add(&acc, &self.base.mul(x, y));
            }
            acc
        })
    }
    fn show(&self, a: &Self::Elem) -> String {
        let rows: Vec<String> = a
            .rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|e| self.base.show(e)).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.scalar(&self.base.from_int(n))
    }
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let base = self.base.elements()?;
        let slots: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.shape.allows(i, j))
            .collect();
        let total = (base.len() as u64).checked_pow(slots.len() as u32)?;
        if total > ENUM_LIMIT {
            return None;
        }
        let mut out = Vec::with_capacity(total as usize);
        for mut code in 0..total {
            let mut m = self.zero();
            for &(i, j) in &slots {
                m.set(i, j, base[(code % base.len() as u64) as usize].clone());
                code /= base.len() as u64;
            }
            out.push(m);
        }
        Some(out)
    }
    fn inverse(&self, a: &Self::Elem) -> Result<Option<Self::Elem>, RingError> {
        if self.base.is_field() {
            let inv = self.elimination().inverse(a);
            // Inverses of triangular matrices are triangular; recheck anyway.
            if let Some(b) = &inv {
                self.check_shape(b)?;
            }
            return Ok(inv);
        }
        let all = self
            .elements()
            .ok_or_else(|| RingError::Unsupported("matrix unit search over a non-enumerable base".into()))?;
        let one = self.one();
        Ok(all.into_iter().find(|b| self.mul(a, b) == one && self.mul(b, a) == one))
    }
}
