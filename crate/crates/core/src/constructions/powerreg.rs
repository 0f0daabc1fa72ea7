use serde::Serialize;

use super::{all_hold, eval_poly, ConstructionError, Identity};
use crate::freealg::{reduce_to_zero, Effort, NCPoly, ReductionSystem};
use crate::matring::{Field, FiniteRing, MatRing, RatFuncField, Ring};
use crate::predicates::find_inner_inverses;
use crate::scalars::BaseField;

/// Rings that can hand out an inner inverse deterministically.
pub trait InnerInverses: Ring {
    /// Some `r` with `x r x = x`. With `prefer_unit`, a unit one when the
    /// ring has one to offer.
    fn inner_inverse(&self, x: &Self::Elem, prefer_unit: bool) -> Option<Self::Elem>;
}

impl InnerInverses for MatRing<Field> {
    fn inner_inverse(&self, x: &Self::Elem, prefer_unit: bool) -> Option<Self::Elem> {
        let el = self.elimination();
        Some(if prefer_unit { el.unit_inner_inverse(x) } else { el.inner_inverse(x) })
    }
}

impl InnerInverses for FiniteRing {
    fn inner_inverse(&self, x: &u32, prefer_unit: bool) -> Option<u32> {
        if prefer_unit {
            if let Some(&u) = find_inner_inverses(self, *x, true).first() {
                return Some(u);
            }
        }
        find_inner_inverses(self, *x, false).first().copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerMode {
    /// The induction on `n`.
    Recursive,
    /// The nine-term formula in `x1, x2` (only `n = 2`).
    Closed2,
}

/// One grid cell: both identities for a pair `i <= j`.
#[derive(Debug, Clone, Serialize)]
pub struct GridCell {
    pub i: u32,
    pub j: u32,
    /// `a^i w^j a^j = w^(j-i) a^j`
    pub left: bool,
    /// `a^j w^j a^i = a^j w^(j-i)`
    pub right: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerInverseCertificate {
    pub a: String,
    pub w: String,
    pub n: u32,
    pub mode: PowerMode,
    pub grid: Vec<GridCell>,
    /// `a^i w^i a^i = a^i`, checked on its own.
    pub diagonal: Vec<Identity>,
    /// Whether the top-level inner inverse picked was a unit.
    pub unit_inner_inverse: bool,
    /// `None` when the ring could not decide.
    pub w_unit: Option<bool>,
}

impl PowerInverseCertificate {
    pub fn verified(&self) -> bool {
        self.grid.iter().all(|c| c.left && c.right) && all_hold(&self.diagonal)
    }
}

fn inner<R: InnerInverses>(ring: &R, x: &R::Elem, prefer_unit: bool, power: u32) -> Result<R::Elem, ConstructionError> {
    ring.inner_inverse(x, prefer_unit)
        .filter(|r| ring.mul(&ring.mul(x, r), x) == *x)
        .ok_or(ConstructionError::NotRegular { power })
}

/// `w = (1 + f a v e) r (1 + e' v' a f')` with `v`, `v'` built for
/// `α = ea` and `α' = ae'` one level down.
pub(super) fn recursive_w<R: InnerInverses>(ring: &R, a: &R::Elem, n: u32, prefer_unit: bool) -> Result<R::Elem, ConstructionError> {
    let r = inner(ring, a, prefer_unit, 1)?;
    if n == 1 {
        return Ok(r);
    }
    let one = ring.one();
    let e = ring.mul(&r, a);
    let f = ring.sub(&one, &e);
    let alpha = ring.mul(&e, a);
    let e1 = ring.mul(a, &r);
    let f1 = ring.sub(&one, &e1);
    let alpha1 = ring.mul(a, &e1);
    let v = recursive_w(ring, &alpha, n - 1, prefer_unit)?;
    let v1 = recursive_w(ring, &alpha1, n - 1, prefer_unit)?;
    let left = ring.add(&one, &ring.mul(&ring.mul(&ring.mul(&f, a), &v), &e));
    let right = ring.add(&one, &ring.mul(&ring.mul(&ring.mul(&e1, &v1), a), &f1));
    Ok(ring.mul(&ring.mul(&left, &r), &right))
}

/// Checks the grid for a candidate `w`.
fn certify<R: Ring>(ring: &R, a: &R::Elem, w: &R::Elem, n: u32, mode: PowerMode, unit_inner: bool) -> PowerInverseCertificate {
    let ap: Vec<R::Elem> = (0..=n).map(|k| ring.pow(a, k)).collect();
    let wp: Vec<R::Elem> = (0..=n).map(|k| ring.pow(w, k)).collect();
    let mut grid = Vec::new();
    for j in 1..=n {
        for i in 1..=j {
            let (i_, j_, d) = (i as usize, j as usize, (j - i) as usize);
            let left = ring.mul(&ring.mul(&ap[i_], &wp[j_]), &ap[j_]) == ring.mul(&wp[d], &ap[j_]);
            let right = ring.mul(&ring.mul(&ap[j_], &wp[j_]), &ap[i_]) == ring.mul(&ap[j_], &wp[d]);
            grid.push(GridCell { i, j, left, right });
        }
    }
    let diagonal = (1..=n as usize)
        .map(|k| {
            Identity::new(
                format!("a^{k} w^{k} a^{k} = a^{k}"),
                ring.mul(&ring.mul(&ap[k], &wp[k]), &ap[k]) == ap[k],
            )
        })
        .collect();
    let w_unit = ring.inverse(w).ok().map(|x| x.is_some());
    PowerInverseCertificate {
        a: ring.show(a),
        w: ring.show(w),
        n,
        mode,
        grid,
        diagonal,
        unit_inner_inverse: unit_inner,
        w_unit,
    }
}

/// Builds `w` for `a` with `a, ..., a^n` regular and certifies the grid.
/// In `Closed2` mode `x1`, `x2` are the inner inverses the ring hands out
/// for `a` and `a^2`.
pub fn powerreg_build<R: InnerInverses>(
    ring: &R,
    a: &R::Elem,
    n: u32,
    mode: PowerMode,
    prefer_unit: bool,
) -> Result<PowerInverseCertificate, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::Precondition("n must be at least 1".into()));
    }
    for k in 1..=n {
        inner(ring, &ring.pow(a, k), prefer_unit, k)?;
    }
    let top = inner(ring, a, prefer_unit, 1)?;
    let unit_inner = matches!(ring.inverse(&top), Ok(Some(_)));
    let w = match mode {
        PowerMode::Recursive => recursive_w(ring, a, n, prefer_unit)?,
        PowerMode::Closed2 => {
            if n != 2 {
                return Err(ConstructionError::Precondition("the closed formula is for n = 2".into()));
            }
            let x2 = inner(ring, &ring.mul(a, a), prefer_unit, 2)?;
            closed2(ring, a, &top, &x2)?
        }
    };
    Ok(certify(ring, a, &w, n, mode, unit_inner))
}

/// The nine terms, in the letters `a x1 x2`.
pub const CLOSED2: &str = "x1 + a*x2*a*x1 + x1*a*x2*a - x1*a^2*x2*a*x1 - x1*a*x2*a^2*x1 \
     + a*x2*a*x2*a - a*x2*a*x2*a^2*x1 - x1*a^2*x2*a*x2*a + x1*a^2*x2*a*x2*a^2*x1";

fn closed2_system() -> ReductionSystem {
    ReductionSystem::parse("field: Q\nvars: a x1 x2\nrule: a*x1*a -> a\nrule: a*a*x2*a*a -> a*a\n")
        .expect("fixed system parses")
}

/// Evaluates the nine-term `w` at concrete `a, x1, x2`.
pub fn closed2<R: Ring>(ring: &R, a: &R::Elem, x1: &R::Elem, x2: &R::Elem) -> Result<R::Elem, ConstructionError> {
    let sys = closed2_system();
    eval_poly(ring, &sys.parse_poly(CLOSED2)?, &[a.clone(), x1.clone(), x2.clone()])
}

/// The nine-term `w` checked in the free algebra on `a, x1, x2` modulo
/// `a x1 a = a`, `a^2 x2 a^2 = a^2`.
#[derive(Debug, Clone, Serialize)]
pub struct Closed2Symbolic {
    pub identities: Vec<Identity>,
}

impl Closed2Symbolic {
    pub fn verified(&self) -> bool {
        all_hold(&self.identities)
    }
}

pub fn closed2_symbolic() -> Result<Closed2Symbolic, ConstructionError> {
    let sys = closed2_system();
    let w = sys.normal_form(&sys.parse_poly(CLOSED2)?);
    let a = sys.gen("a")?;
    let a2 = sys.mul(&a, &a);
    let w2 = sys.mul(&w, &w);
    let m = |x: &NCPoly, y: &NCPoly, z: &NCPoly| sys.mul(&sys.mul(x, y), z);
    let zero = |p: NCPoly| reduce_to_zero(&p, &sys, Effort::default()).is_proved();
    let identities = vec![
        Identity::new("a w a = a", zero(m(&a, &w, &a).sub(&a))),
        Identity::new("a^2 w^2 a^2 = a^2", zero(m(&a2, &w2, &a2).sub(&a2))),
        Identity::new("a w^2 a^2 = w a^2", zero(m(&a, &w2, &a2).sub(&sys.mul(&w, &a2)))),
        Identity::new("a^2 w^2 a = a^2 w", zero(m(&a2, &w2, &a).sub(&sys.mul(&a2, &w)))),
    ];
    Ok(Closed2Symbolic { identities })
}

/// Degrees of the entries of `r^k` for one `k`.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeRow {
    pub k: u32,
    /// Degrees of `s_k, t_k, u_k, v_k`.
    pub degrees: [Option<usize>; 4],
    pub expected: [usize; 4],
    /// `a^k r^k a^k != a^k`.
    pub power_fails: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeReport {
    pub field: String,
    pub ara: bool,
    pub r_unit: bool,
    pub rows: Vec<DegreeRow>,
}

impl DegreeReport {
    pub fn holds(&self) -> bool {
        self.ara
            && self.r_unit
            && self
                .rows
                .iter()
                .all(|r| r.power_fails && r.degrees.iter().zip(r.expected).all(|(d, e)| *d == Some(e)))
    }
}

/// `a = diag(1, 0)`, `r = [[1, 1], [x, x^2]]` over `F(x)`: `r` is a unit
/// inner inverse of `a`, yet `r^k` fails for `a^k` at every `k >= 2`.
pub fn powerreg_degree_counterexample(field: BaseField, k_max: u32) -> Result<DegreeReport, ConstructionError> {
    if k_max < 2 {
        return Err(ConstructionError::Precondition("k_max must be at least 2".into()));
    }
    let f = RatFuncField(field);
    let m = MatRing::new(f, 2);
    let a = m.ints(&[&[1, 0], &[0, 0]]);
    let r = m.from_rows(vec![
        vec![f.one(), f.one()],
        vec![f.poly(&[0, 1]), f.poly(&[0, 0, 1])],
    ])?;
    let ara = m.mul(&m.mul(&a, &r), &a) == a;
    let r_unit = m.inverse(&r)?.is_some();
    let mut rows = Vec::new();
    let mut rk = r.clone();
    for k in 2..=k_max {
        rk = m.mul(&rk, &r);
        // a is idempotent, so a^k = a
        let power_fails = m.mul(&m.mul(&a, &rk), &a) != a;
        let deg = |i, j| {
            let x: &crate::scalars::RationalFunction = rk.get(i, j);
            x.poly_degree()
        };
        let k2 = 2 * k as usize;
        rows.push(DegreeRow {
            k,
            degrees: [deg(0, 0), deg(0, 1), deg(1, 0), deg(1, 1)],
            expected: [k2 - 3, k2 - 2, k2 - 1, k2],
            power_fails,
        });
    }
    Ok(DegreeReport {
        field: field.to_string(),
        ara,
        r_unit,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matring::RingSpec;
    use crate::par::Exec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u32) -> Field {
        Field(BaseField::prime(p).unwrap())
    }

    #[test]
    fn nilpotent_two_by_two_closed_form() {
        let m = MatRing::new(f(2), 2);
        let a = m.ints(&[&[0, 1], &[0, 0]]);
        let x1 = m.ints(&[&[0, 0], &[1, 0]]);
        let w = closed2(&m, &a, &x1, &m.zero()).unwrap();
        assert_eq!(w, x1);
        assert_eq!(m.mul(&m.mul(&a, &w), &a), a);
    }

    #[test]
    fn closed_form_is_symbolically_sound() {
        let c = closed2_symbolic().unwrap();
        assert!(c.verified(), "{:?}", c.identities);
    }

    #[test]
    fn recursive_grid_on_random_m4f5() {
        let m = MatRing::new(f(5), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let a = Matrix::from_fn(4, |_, _| f(5).from_int(rng.gen_range(0..5)));
            let c = powerreg_build(&m, &a, 4, PowerMode::Recursive, true).unwrap();
            assert!(c.verified(), "{}", c.a);
            assert!(c.unit_inner_inverse);
            assert_eq!(c.w_unit, Some(true));
        }
    }

    #[test]
    fn closed_mode_matches_theorem() {
        let m = MatRing::new(f(3), 3);
        let a = m.ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 1]]);
        let c = powerreg_build(&m, &a, 2, PowerMode::Closed2, false).unwrap();
        assert!(c.verified());
        assert!(powerreg_build(&m, &a, 3, PowerMode::Closed2, false).is_err());
    }

    #[test]
    fn finite_ring_exhaustive() {
        let r = RingSpec::parse("T2(F3)").unwrap().build(1 << 12, Exec::Sequential).unwrap();
        for a in r.elements() {
            match powerreg_build(&r, &a, 3, PowerMode::Recursive, true) {
                Ok(c) => assert!(c.verified(), "{}", r.label(a)),
                Err(ConstructionError::NotRegular { power }) => {
                    // the failing power really has no inner inverse
                    let x = r.pow(a, power);
                    assert!(r.elements().all(|y| r.mul3(x, y, x) != x));
                }
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn degree_counterexample() {
        let rep = powerreg_degree_counterexample(BaseField::prime(5).unwrap(), 6).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert_eq!(rep.rows[0].degrees, [Some(1), Some(2), Some(3), Some(4)]);
    }

    use crate::matring::Matrix;
}
