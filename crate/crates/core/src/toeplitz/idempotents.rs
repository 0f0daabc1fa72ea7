use crate::par::{self, Exec};
use crate::scalars::{BaseField, LaurentPolynomial};

use super::{Model, Structured, ToeplitzError, ToeplitzRing};

/// Largest candidate count a window search will scan per symbol.
pub const WINDOW_LIMIT: u128 = 1 << 26;

/// Result of a window enumeration.
#[derive(Debug, Clone)]
pub struct IdempotentSearch {
    pub radius: u32,
    pub candidates: u128,
    pub idempotents: Vec<Structured>,
}

/// Indices of the deviation window: `[-r, r]` for the bilateral model and
/// `[1, 2r+1]` for the unilateral one.
pub fn window_indices(model: Model, radius: u32) -> Vec<i64> {
    let r = radius as i64;
    match model {
        Model::Bilateral => (-r..=r).collect(),
        Model::Unilateral => (1..=2 * r + 1).collect(),
    }
}

/// Every `E = s*1 + D` with `s` in `symbols` (each 0 or 1) and `D` supported
/// on the window, such that `E^2 = E`.
///
/// Since `D` lives on a finite square window, `E^2 = E` reduces to
/// `D^2 = D` for `s = 0` and `D^2 = -D` for `s = 1`, a finite check.
pub fn enumerate_window_idempotents(
    ring: &ToeplitzRing,
    radius: u32,
    symbols: &[u8],
    exec: Exec,
) -> Result<IdempotentSearch, ToeplitzError> {
    let p = match ring.field {
        BaseField::Prime(p @ (2 | 3)) => p,
        f => return Err(ToeplitzError::UnsupportedField(f)),
    };
    let idx = window_indices(ring.model, radius);
    let n = idx.len();
    let per_symbol = (p as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if per_symbol > WINDOW_LIMIT {
        return Err(ToeplitzError::WindowTooLarge {
            candidates: per_symbol,
            limit: WINDOW_LIMIT,
        });
    }
    let mut found = Vec::new();
    for &s in symbols {
        assert!(s <= 1, "idempotent symbols are 0 or 1");
        let codes = if p == 2 {
            scan_f2(n, per_symbol as u64, exec)
        } else {
            scan_generic(n, p, s == 1, per_symbol as u64, exec)
        };
        let symbol = if s == 1 {
            LaurentPolynomial::one(ring.field)
        } else {
            LaurentPolynomial::zero(ring.field)
        };
        for code in codes {
            let digits = decode(code, n * n, p);
            let dev = digits.iter().enumerate().filter(|(_, &d)| d != 0).map(|(k, &d)| {
                ((idx[k / n], idx[k % n]), ring.field.from_i64(d as i64))
            });
            found.push(ring.build(symbol.clone(), dev.collect::<Vec<_>>())?);
        }
    }
    Ok(IdempotentSearch {
        radius,
        candidates: per_symbol * symbols.len() as u128,
        idempotents: found,
    })
}

const CHUNK: u64 = 1 << 16;

fn chunked(total: u64, exec: Exec, test: impl Fn(u64) -> bool + Sync + Send) -> Vec<u64> {
    let chunks = total.div_ceil(CHUNK) as usize;
    par::map_range(exec, 0..chunks, |c| {
        let lo = c as u64 * CHUNK;
        (lo..(lo + CHUNK).min(total)).filter(|&code| test(code)).collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Over `F_2` rows are bitmasks and `-D = D`.
fn scan_f2(n: usize, total: u64, exec: Exec) -> Vec<u64> {
    let mask = (1u64 << n) - 1;
    chunked(total, exec, |code| {
        let row = |i: usize| (code >> (i * n)) & mask;
        (0..n).all(|i| {
            let r = row(i);
            let mut sq = 0;
            for k in 0..n {
                if r >> k & 1 == 1 {
                    sq ^= row(k);
                }
            }
            sq == r
        })
    })
}

fn scan_generic(n: usize, p: u32, negate: bool, total: u64, exec: Exec) -> Vec<u64> {
    chunked(total, exec, |code| {
        let d = decode(code, n * n, p);
        (0..n).all(|i| {
            (0..n).all(|j| {
                let sq = (0..n).map(|k| d[i * n + k] * d[k * n + j]).sum::<u32>() % p;
                let target = if negate { (p - d[i * n + j]) % p } else { d[i * n + j] };
                sq == target
            })
        })
    })
}

/// Little-endian base-`p` digits; digit `k` is entry `(k / n, k % n)`.
fn decode(mut code: u64, len: usize, p: u32) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (code % p as u64) as u32;
            code /= p as u64;
            d
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matring::Ring;

    #[test]
    fn radius_zero_gives_zero_and_one() {
        let r = ToeplitzRing::bilateral(BaseField::prime(2).unwrap());
        let s = enumerate_window_idempotents(&r, 0, &[0, 1], Exec::Sequential).unwrap();
        let mut got = s.idempotents.clone();
        got.sort_by_key(|e| r.show(e));
        assert!(got.contains(&r.zero()));
        assert!(got.contains(&r.one()));
        // 1 + D with D = 1 at (0,0) is idempotent too, and equals 1 - e00.
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn radius_one_counts_match_matrix_idempotents() {
        // Idempotents of M_3(F_2): 1 + 28 + 28 + 1 = 58, once per symbol.
        let r = ToeplitzRing::bilateral(BaseField::prime(2).unwrap());
        let s = enumerate_window_idempotents(&r, 1, &[0, 1], Exec::Parallel).unwrap();
        assert_eq!(s.idempotents.len(), 116);
        for e in &s.idempotents {
            assert_eq!(r.mul(e, e), *e);
        }
        let diag = r.from_ints(&[], &[((1, 1), 1)]).unwrap();
        assert!(s.idempotents.contains(&diag));
    }

    #[test]
    fn f3_and_guards() {
        let r = ToeplitzRing::unilateral(BaseField::prime(3).unwrap());
        let s = enumerate_window_idempotents(&r, 0, &[0, 1], Exec::Sequential).unwrap();
        assert_eq!(s.idempotents.len(), 4);
        for e in &s.idempotents {
            assert_eq!(r.mul(e, e), *e);
        }
        assert!(matches!(
            enumerate_window_idempotents(&r, 3, &[0], Exec::Sequential),
            Err(ToeplitzError::WindowTooLarge { .. })
        ));
        let q = ToeplitzRing::bilateral(BaseField::Rationals);
        assert!(enumerate_window_idempotents(&q, 0, &[0], Exec::Sequential).is_err());
    }
}
