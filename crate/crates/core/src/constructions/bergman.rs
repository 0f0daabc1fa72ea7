use rand::Rng as _;
use serde::Serialize;

use super::{all_hold, ConstructionError, Identity};
use crate::matring::{Elimination, Field, Matrix, Ring};
use crate::par::{self, Exec};
use crate::scalars::{BaseField, LaurentPolynomial, Scalar};
use crate::toeplitz::{enumerate_window_idempotents, Line, Model, Structured, ToeplitzError, ToeplitzRing};

/// A unit inner inverse `U` of a bilateral element, with its inverse.
#[derive(Debug, Clone, Serialize)]
pub struct BergmanUnit {
    pub a: String,
    /// `"zero-symbol"` or `"monomial"`.
    pub case: &'static str,
    pub u: String,
    pub u_inv: String,
    /// Size of the finite block `X0` the construction inverts inside.
    pub block: usize,
    pub identities: Vec<Identity>,
    #[serde(skip)]
    pub u_value: Structured,
    #[serde(skip)]
    pub u_inv_value: Structured,
}

impl BergmanUnit {
    pub fn verified(&self) -> bool {
        all_hold(&self.identities)
    }
}

/// Dense window `rows x cols` (half-open) as a row list.
fn dense(a: &Structured, rows: (i64, i64), cols: (i64, i64)) -> Vec<Vec<Scalar>> {
    (rows.0..rows.1)
        .map(|i| (cols.0..cols.1).map(|j| a.entry(i, j)).collect())
        .collect()
}

/// The deviation of `a` restricted to a rectangle, as a zero-symbol element.
fn restrict(ring: &ToeplitzRing, a: &Structured, rows: impl Fn(i64) -> bool, cols: impl Fn(i64) -> bool) -> Structured {
    let dev = a
        .deviation()
        .iter()
        .filter(|((i, j), _)| rows(*i) && cols(*j))
        .map(|(k, c)| (*k, c.clone()));
    ring.build(LaurentPolynomial::zero(ring.field), dev.collect::<Vec<_>>())
        .expect("restriction of a valid deviation")
}

fn rank(el: &Elimination<'_, Field>, rows: &[Vec<Scalar>]) -> usize {
    let mut rows = rows.to_vec();
    el.rref_rows(&mut rows, None).len()
}

/// Builds `U` with `AUA = A` and `U` a unit, following the proof's case split
/// on the symbol. Only zero and monomial symbols are in tier.
pub fn bergman_unit(ring: &ToeplitzRing, a: &Structured) -> Result<BergmanUnit, ConstructionError> {
    if ring.model != Model::Bilateral {
        return Err(ConstructionError::Precondition("the construction is for the bilateral model".into()));
    }
    let field = Field(ring.field);
    let el = Elimination::new(&field);
    let to_matrix = |rows: Vec<Vec<Scalar>>| Matrix::from_rows(rows).expect("square block");
    let rows_of = |m: &Matrix<Scalar>| m.rows();
    let (case, u, u_inv, block) = if a.symbol().is_zero() {
        match a.support_bounds() {
            None => ("zero-symbol", ring.one(), ring.one(), 0),
            Some(((_, r1), (c0, c1))) => {
                let (m, n) = (r1 + 1, c0);
                // A0 lives in rows < m, cols >= n; only rows >= the lowest
                // deviation row can be nonzero.
                let r0 = a.support_bounds().map(|b| b.0 .0).unwrap_or(m);
                let all_rows = dense(a, (r0, m), (n, c1 + 1));
                let full = rank(&el, &all_rows);
                let c = (0..=all_rows.len())
                    .find(|&c| rank(&el, &all_rows[all_rows.len() - c..]) == full)
                    .unwrap_or(all_rows.len());
                let a1 = dense(a, (m - c as i64, m), (n, c1 + 1));
                let cols: Vec<Vec<Scalar>> = (0..a1.first().map_or(0, Vec::len))
                    .map(|j| a1.iter().map(|r| r[j].clone()).collect())
                    .collect();
                let d = (0..=cols.len()).find(|&d| rank(&el, &cols[..d]) == full).unwrap_or(cols.len());
                let c = c.max(d);
                if c == 0 {
                    ("zero-symbol", ring.one(), ring.one(), 0)
                } else {
                    let ci = c as i64;
                    let x0 = to_matrix(dense(a, (m - ci, m), (n, n + ci)));
                    let u0 = el.unit_inner_inverse(&x0);
                    let u0i = el.inverse(&u0).expect("canonical unit inner inverse is invertible");
                    let id = el.identity(c);
                    let minus = |x: &Matrix<Scalar>| {
                        Matrix::from_fn(c, |i, j| field.sub(x.get(i, j), id.get(i, j)))
                    };
                    let one = ring.field.one();
                    let u = ring.add(
                        &ring.shift(m - ci - n, one.clone()),
                        &ring.block(n, m - ci, &rows_of(&minus(&u0)))?,
                    );
                    let u_inv = ring.add(
                        &ring.shift(n - m + ci, one),
                        &ring.block(m - ci, n, &rows_of(&minus(&u0i)))?,
                    );
                    ("zero-symbol", u, u_inv, c)
                }
            }
        }
    } else {
        let (lam, k0) = a
            .symbol()
            .as_monomial()
            .ok_or_else(|| ConstructionError::OutOfTier(ToeplitzError::OutOfTier(a.symbol().to_string()).to_string()))?;
        let (n, m) = match a.support_bounds() {
            None => (0, 1 - k0),
            Some(((_, r1), (c0, _))) => (c0, (r1 + 1).max(c0 - k0 + 1)),
        };
        let m = m.max(n - k0 + 1);
        let s = (m + k0 - n) as usize;
        let lam_inv = lam.inv().map_err(|_| ConstructionError::Precondition("zero leading coefficient".into()))?;
        let sh = ring.shift(-k0, lam_inv.clone());
        let (top, mid, right) = (n - k0, m, m + k0);
        let y = restrict(ring, a, |i| i < top, |j| j >= n && j < right);
        let w = restrict(ring, a, |i| i < top, |j| j >= right);
        let z = restrict(ring, a, |i| i >= top && i < mid, |j| j >= right);
        let x0 = to_matrix(dense(a, (top, mid), (n, right)));
        let u0 = el.unit_inner_inverse(&x0);
        let u0i = el.inverse(&u0).expect("canonical unit inner inverse is invertible");
        let u0e = ring.block(n, top, &rows_of(&u0))?;
        let lam_block = Matrix::from_fn(s, |i, j| if i == j { lam_inv.clone() } else { field.zero() });
        let diag = ring.sub(&u0e, &ring.block(n, top, &rows_of(&lam_block))?);
        let m3 = |p: &Structured, q: &Structured, r: &Structured| ring.mul(&ring.mul(p, q), r);
        let syu0 = m3(&sh, &y, &u0e);
        let inner = ring.sub(&m3(&y, &u0e, &z), &w);
        let corner = m3(&sh, &inner, &sh);
        let u0zt = m3(&u0e, &z, &sh);
        let u = ring.sub(&ring.add(&ring.sub(&ring.add(&sh, &diag), &syu0), &corner), &u0zt);
        let fix = Matrix::from_fn(s, |i, j| field.sub(u0i.get(i, j), x0.get(i, j)));
        let u_inv = ring.add(a, &ring.block(top, n, &rows_of(&fix))?);
        ("monomial", u, u_inv, s)
    };
    let one = ring.one();
    let identities = vec![
        Identity::new("A U A = A", ring.mul(&ring.mul(a, &u), a) == *a),
        Identity::new("U U^-1 = 1", ring.mul(&u, &u_inv) == one),
        Identity::new("U^-1 U = 1", ring.mul(&u_inv, &u) == one),
    ];
    Ok(BergmanUnit {
        a: ring.to_text(a),
        case,
        u: ring.to_text(&u),
        u_inv: ring.to_text(&u_inv),
        block,
        identities,
        u_value: u,
        u_inv_value: u_inv,
    })
}

/// A random element with zero or monomial symbol and a deviation inside
/// `[-radius, radius]^2`.
pub fn random_tier1(ring: &ToeplitzRing, rng: &mut impl rand::Rng, radius: i64) -> Structured {
    let f = ring.field;
    let nonzero = |rng: &mut dyn rand::RngCore| loop {
        let c = f.from_i64(rng.gen_range(-4..=4));
        if !c.is_zero() {
            return c;
        }
    };
    let symbol = if rng.gen_bool(0.3) {
        LaurentPolynomial::zero(f)
    } else {
        LaurentPolynomial::monomial(nonzero(rng), rng.gen_range(-2..=2))
    };
    let mut dev = Vec::new();
    for i in -radius..=radius {
        for j in -radius..=radius {
            if rng.gen_bool(0.25) {
                dev.push(((i, j), f.from_i64(rng.gen_range(-4..=4))));
            }
        }
    }
    ring.build(symbol, dev).expect("bilateral indices are unrestricted")
}

/// `a_{i,i-1} = 1` for `i != 0` and `a_{-1,-1} = 1`: symbol `t^-1` with two
/// deviation entries.
pub fn bergman_witness_element(ring: &ToeplitzRing) -> Result<Structured, ConstructionError> {
    Ok(ring.from_ints(&[(-1, 1)], &[((-1, -1), 1), ((0, -1), -1)])?)
}

/// Outcome of the window enumeration against the witness.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub radius: u32,
    /// `AE = EAE` instead of `AE = EA`.
    pub capably: bool,
    pub candidates: u128,
    pub idempotents: usize,
    /// Idempotents passing the commutation test.
    pub commuting: usize,
    /// `ψ(E) = 0` and row 0 of `A - E` vanishes.
    pub zero_row: usize,
    /// `ψ(E) = 1` and column -1 of `A - E` vanishes.
    pub zero_col: usize,
    /// Commuting idempotents without the expected certificate.
    pub failures: Vec<String>,
}

impl WitnessReport {
    pub fn verified(&self) -> bool {
        self.failures.is_empty() && self.zero_row + self.zero_col == self.commuting
    }
}

/// Enumerates window idempotents over F2 and certifies that `A - E` is a
/// non-unit for each one commuting with `A`.
pub fn bergman_witness(radius: u32, capably: bool, exec: Exec) -> Result<WitnessReport, ConstructionError> {
    let ring = ToeplitzRing::bilateral(BaseField::prime(2).expect("2 is prime"));
    let a = bergman_witness_element(&ring)?;
    let search = enumerate_window_idempotents(&ring, radius, &[0, 1], exec)?;
    let verdicts = par::filter_map(exec, &search.idempotents, |e| {
        let ae = ring.mul(&a, e);
        let commutes = if capably {
            ae == ring.mul(&ring.mul(e, &a), e)
        } else {
            ae == ring.mul(e, &a)
        };
        if !commutes {
            return None;
        }
        let diff = ring.sub(&a, e);
        let line = if e.symbol().is_zero() { Line::Row(0) } else { Line::Col(-1) };
        Some((line, diff.zero_line_certificate(line), ring.to_text(e)))
    });
    let mut rep = WitnessReport {
        radius,
        capably,
        candidates: search.candidates,
        idempotents: search.idempotents.len(),
        commuting: verdicts.len(),
        zero_row: 0,
        zero_col: 0,
        failures: Vec::new(),
    };
    for (line, ok, text) in verdicts {
        match (line, ok) {
            (Line::Row(_), true) => rep.zero_row += 1,
            (Line::Col(_), true) => rep.zero_col += 1,
            _ => rep.failures.push(text),
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> ToeplitzRing {
        ToeplitzRing::bilateral(BaseField::Rationals)
    }

    #[test]
    fn single_entry_block() {
        let r = q();
        let a = r.from_ints(&[], &[((0, 0), 1)]).unwrap();
        let b = bergman_unit(&r, &a).unwrap();
        assert!(b.verified(), "{b:?}");
        assert_eq!(b.block, 1);
        assert_eq!(b.u_value, r.one());
    }

    #[test]
    fn shift_inverts_to_shift() {
        let r = q();
        let a = r.shift(1, r.field.one());
        let b = bergman_unit(&r, &a).unwrap();
        assert!(b.verified());
        assert_eq!(b.u_value, r.shift(-1, r.field.one()));
    }

    #[test]
    fn rank_deficient_zero_symbol() {
        let r = q();
        // rows 0 and 2 equal, column 3 is twice column 1
        let a = r
            .from_ints(&[], &[((0, 1), 1), ((0, 3), 2), ((2, 1), 1), ((2, 3), 2), ((1, 2), 5)])
            .unwrap();
        let b = bergman_unit(&r, &a).unwrap();
        assert!(b.verified(), "{b:?}");
    }

    #[test]
    fn zero_element() {
        let r = q();
        let b = bergman_unit(&r, &r.zero()).unwrap();
        assert!(b.verified());
        assert_eq!(b.u_value, r.one());
    }

    #[test]
    fn non_monomial_is_out_of_tier() {
        let r = q();
        let a = r.from_ints(&[(0, 1), (1, 1)], &[]).unwrap();
        assert!(matches!(bergman_unit(&r, &a), Err(ConstructionError::OutOfTier(_))));
    }

    #[test]
    fn random_tier1_over_f5() {
        let r = ToeplitzRing::bilateral(BaseField::prime(5).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let a = random_tier1(&r, &mut rng, 3);
            let b = bergman_unit(&r, &a).unwrap();
            assert!(b.verified(), "{}", b.a);
            // the window agrees with the structured product
            let aua = r.mul(&r.mul(&a, &b.u_value), &a);
            assert_eq!(aua.window(-6..=6, -6..=6), a.window(-6..=6, -6..=6));
        }
    }

    #[test]
    fn witness_entries() {
        let r = ToeplitzRing::bilateral(BaseField::prime(2).unwrap());
        let a = bergman_witness_element(&r).unwrap();
        for i in -4..=4i64 {
            for j in -4..=4i64 {
                let want = (j == i - 1 && i != 0) || (i == -1 && j == -1);
                assert_eq!(!a.entry(i, j).is_zero(), want, "({i},{j})");
            }
        }
    }

    #[test]
    fn witness_radius_one() {
        for capably in [false, true] {
            let rep = bergman_witness(1, capably, Exec::Parallel).unwrap();
            assert!(rep.verified(), "{rep:?}");
            assert!(rep.commuting >= 2);
        }
    }
}
