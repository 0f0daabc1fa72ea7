use super::{Matrix, Ring};

/// Gaussian elimination over a field-valued ring handle.
pub struct Elimination<'a, R: Ring> {
    f: &'a R,
}

/// `E * m * F^T = D` with `E`, `F` invertible and `D = diag(1,..,1,0,..,0)`.
#[derive(Debug, Clone)]
pub struct RankFactorization<E> {
    pub rank: usize,
    pub left: Matrix<E>,
    pub right: Matrix<E>,
}

impl<'a, R: Ring> Elimination<'a, R> {
    pub fn new(f: &'a R) -> Self {
        assert!(f.is_field(), "elimination needs a field");
        Elimination { f }
    }

    /// Reduced row echelon form of a rectangular row list, with pivot columns.
    /// Row operations are mirrored onto `track` when given.
    pub fn rref_rows(&self, rows: &mut [Vec<R::Elem>], mut track: Option<&mut [Vec<R::Elem>]>) -> Vec<usize> {
        let f = self.f;
        let cols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
                continue;
            };
            rows.swap(r, p);
            if let Some(t) = track.as_deref_mut() {
                t.swap(r, p);
            }
            let inv = f.field_inv(&rows[r][c]).expect("nonzero pivot");
            scale_row(f, &mut rows[r], &inv);
            if let Some(t) = track.as_deref_mut() {
                scale_row(f, &mut t[r], &inv);
            }
            for i in 0..rows.len() {
                if i == r || f.is_zero(&rows[i][c]) {
                    continue;
                }
                let k = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                axpy(f, &mut rows[i], &k, &pivot_row);
                if let Some(t) = track.as_deref_mut() {
                    let pivot_row = t[r].clone();
                    axpy(f, &mut t[i], &k, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, m: &Matrix<R::Elem>) -> usize {
        self.rref_rows(&mut m.rows(), None).len()
    }

    pub fn inverse(&self, m: &Matrix<R::Elem>) -> Option<Matrix<R::Elem>> {
        let n = m.size();
        let mut rows = m.rows();
        let mut track = self.identity(n).rows();
        let piv = self.rref_rows(&mut rows, Some(&mut track));
        (piv.len() == n).then(|| Matrix::from_rows(track).expect("square"))
    }

    /// Basis of the right null space `{x : m x = 0}`.
    pub fn kernel(&self, m: &Matrix<R::Elem>) -> Vec<Vec<R::Elem>> {
        let f = self.f;
        let n = m.size();
        let mut rows = m.rows();
        let piv = self.rref_rows(&mut rows, None);
        (0..n)
            .filter(|c| !piv.contains(c))
            .map(|free| {
                let mut x = vec![f.zero(); n];
                x[free] = f.one();
                for (r, &pc) in piv.iter().enumerate() {
                    x[pc] = f.neg(&rows[r][free]);
                }
                x
            })
            .collect()
    }

    /// Basis of the column space.
    pub fn image(&self, m: &Matrix<R::Elem>) -> Vec<Vec<R::Elem>> {
        let mut rows = m.transpose().rows();
        let piv = self.rref_rows(&mut rows, None);
        rows.truncate(piv.len());
        rows
    }

    /// Coefficients `x` with `sum_i x_i * basis[i] = v`, when `v` is in the span.
    pub fn coordinates(&self, basis: &[Vec<R::Elem>], v: &[R::Elem]) -> Option<Vec<R::Elem>> {
        let f = self.f;
        let k = basis.len();
        let mut rows: Vec<Vec<R::Elem>> = (0..v.len())
            .map(|c| {
                let mut row: Vec<R::Elem> = basis.iter().map(|b| b[c].clone()).collect();
                row.push(v[c].clone());
                row
            })
            .collect();
        let piv = self.rref_rows(&mut rows, None);
        if piv.contains(&k) {
            return None;
        }
        let mut x = vec![f.zero(); k];
        for (r, &c) in piv.iter().enumerate() {
            x[c] = rows[r][k].clone();
        }
        Some(x)
    }

    pub fn rank_factorization(&self, m: &Matrix<R::Elem>) -> RankFactorization<R::Elem> {
        let n = m.size();
        let mut rows = m.rows();
        let mut left = self.identity(n).rows();
        let rank = self.rref_rows(&mut rows, Some(&mut left)).len();
        let reduced = Matrix::from_rows(rows).expect("square");
        let mut cols = reduced.transpose().rows();
        let mut right = self.identity(n).rows();
        self.rref_rows(&mut cols, Some(&mut right));
        RankFactorization {
            rank,
            left: Matrix::from_rows(left).expect("square"),
            right: Matrix::from_rows(right).expect("square"),
        }
    }

    /// The canonical unit inner inverse `F^T E` from the rank factorization.
    pub fn unit_inner_inverse(&self, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
        let rf = self.rank_factorization(m);
        self.mul(&rf.right.transpose(), &rf.left)
    }

    /// The canonical inner inverse `F^T D E`, of rank equal to `rank(m)`.
    pub fn inner_inverse(&self, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
        let rf = self.rank_factorization(m);
        let d = Matrix::from_fn(m.size(), |i, j| {
            if i == j && i < rf.rank {
                self.f.one()
            } else {
                self.f.zero()
            }
        });
        self.mul(&self.mul(&rf.right.transpose(), &d), &rf.left)
    }

    pub fn identity(&self, n: usize) -> Matrix<R::Elem> {
        Matrix::from_fn(n, |i, j| if i == j { self.f.one() } else { self.f.zero() })
    }

    pub fn mul(&self, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
        let f = self.f;
        Matrix::from_fn(a.size(), |i, j| {
            (0..a.size()).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(a.get(i, k), b.get(k, j))))
        })
    }
}

fn scale_row<R: Ring>(f: &R, row: &mut [R::Elem], k: &R::Elem) {
    for x in row.iter_mut() {
        *x = f.mul(k, x);
    }
}

/// `row -= k * pivot`
fn axpy<R: Ring>(f: &R, row: &mut [R::Elem], k: &R::Elem, pivot: &[R::Elem]) {
    for (x, p) in row.iter_mut().zip(pivot) {
        if !f.is_zero(p) {
            *x = f.sub(x, &f.mul(k, p));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matring::{Field, MatRing};
    use crate::scalars::BaseField;

    fn f5() -> Field {
        Field(BaseField::prime(5).unwrap())
    }

    #[test]
    fn factorization_reproduces_rank_projection() {
        let m = MatRing::new(f5(), 3);
        let a = m.ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let el = m.elimination();
        let rf = el.rank_factorization(&a);
        assert_eq!(rf.rank, 2);
        let d = el.mul(&el.mul(&rf.left, &a), &rf.right.transpose());
        assert_eq!(d, m.diag(&[m.base.one(), m.base.one(), m.base.zero()]));
        let u = el.unit_inner_inverse(&a);
        assert_eq!(m.mul(&m.mul(&a, &u), &a), a);
        assert!(m.inverse(&u).unwrap().is_some());
        let r = el.inner_inverse(&a);
        assert_eq!(m.mul(&m.mul(&a, &r), &a), a);
        assert_eq!(el.rank(&r), 2);
    }

    #[test]
    fn kernel_and_image_dimensions() {
        let m = MatRing::new(f5(), 3);
        let a = m.ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 0]]);
        let el = m.elimination();
        let ker = el.kernel(&a);
        assert_eq!(ker.len(), 2);
        for x in &ker {
            for i in 0..3 {
                let s = (0..3).fold(m.base.zero(), |acc, k| &acc + &(a.get(i, k) * &x[k]));
                assert!(s.is_zero());
            }
        }
        assert_eq!(el.image(&a).len(), 1);
    }

    #[test]
    fn coordinates_in_a_row_basis() {
        let f = f5();
        let el = Elimination::new(&f);
        let v = |xs: &[i64]| xs.iter().map(|&x| f.from_int(x)).collect::<Vec<_>>();
        let basis = vec![v(&[1, 0, 2]), v(&[0, 1, 1])];
        assert_eq!(el.coordinates(&basis, &v(&[3, 4, 0])), Some(v(&[3, 4])));
        assert_eq!(el.coordinates(&basis, &v(&[0, 0, 1])), None);
    }
}
