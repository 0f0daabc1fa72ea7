use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{all_hold, ConstructionError, Identity};
use crate::freealg::{bounded_inverse_search, NCPoly, SearchSpace, Word};
use crate::matring::{MatRing, Matrix, Quotient, RegNilp, Ring};
use crate::par::Exec;
use crate::scalars::{BaseField, Poly, Scalar};
use crate::toeplitz::{Structured, ToeplitzRing};

/// Facts about the square-zero example ring `S`.
#[derive(Debug, Clone, Serialize)]
pub struct RegNilpReport {
    pub a: String,
    pub r: String,
    pub identities: Vec<Identity>,
    /// Samples of `(μ + a)^-1 = μ^-1 − μ^-2 a` for `a ∈ Fx + xRx`.
    pub unit_samples: usize,
    pub unit_samples_ok: usize,
    /// Words searched for an inverse of `1 − yx`.
    pub inverse_search_words: usize,
    pub inverse_found: bool,
    pub idempotents: GradedIdempotents,
}

impl RegNilpReport {
    pub fn verified(&self) -> bool {
        all_hold(&self.identities)
            && self.unit_samples_ok == self.unit_samples
            && !self.inverse_found
            && self.idempotents.only_trivial()
    }
}

/// Idempotents of `F<x, y : x^2 = 0>` up to a degree bound.
///
/// The relation is homogeneous, so `e = e_0 + e_1 + ...` by word length and
/// `e^2 = e` splits degree by degree: `e_0 ∈ {0, 1}` and for `k >= 1`
/// `(1 − 2e_0) e_k = Σ_{i+j=k, i,j>=1} e_i e_j`. Since `1 − 2e_0 = ±1` each
/// `e_k` is forced, so the solutions below are all of them.
#[derive(Debug, Clone, Serialize)]
pub struct GradedIdempotents {
    pub max_degree: usize,
    pub solutions: Vec<String>,
}

impl GradedIdempotents {
    pub fn only_trivial(&self) -> bool {
        self.solutions.iter().all(|s| s == "0" || s == "1")
    }
}

fn xy_ring(field: BaseField) -> Quotient {
    RegNilp::new(field).base
}

pub fn graded_idempotents(field: BaseField, max_degree: usize) -> GradedIdempotents {
    let r = xy_ring(field);
    let mut solutions = Vec::new();
    for c in [0i64, 1] {
        let sign = field.from_i64(1 - 2 * c);
        let mut parts: Vec<NCPoly> = vec![r.scalar(&field.from_i64(c))];
        for k in 1..=max_degree {
            let mut sum = r.zero();
            for i in 1..k {
                sum = r.add(&sum, &r.mul(&parts[i], &parts[k - i]));
            }
            // sign is ±1, its own inverse
            parts.push(sum.scale(&sign));
        }
        let e = parts.iter().fold(r.zero(), |acc, p| r.add(&acc, p));
        solutions.push(r.show(&e));
    }
    GradedIdempotents { max_degree, solutions }
}

/// A random `λx + x p x` with `p` a short combination of words.
fn random_xrx(r: &Quotient, rng: &mut ChaCha8Rng) -> NCPoly {
    let field = r.sys.field();
    let x = r.gen("x");
    let mut p = r.zero();
    for _ in 0..3 {
        let len = rng.gen_range(0..4);
        let w = Word((0..len).map(|_| rng.gen_range(0..2u8)).collect());
        let c = field.from_i64(rng.gen_range(-3..=3));
        p = r.add(&p, &NCPoly::monomial(c, w));
    }
    let lam = field.from_i64(rng.gen_range(-3..=3));
    r.add(&x.scale(&lam), &r.mul(&r.mul(&x, &p), &x))
}

/// `A = [[x, 0], [1, 0]]` with inner inverse `[[y, 1 − yx], [0, 0]]`, the
/// unit formula in `R`, and the two bounded absence checks.
pub fn reg_nilp_suite(seed: u64, samples: usize, max_degree: usize, exec: Exec) -> Result<RegNilpReport, ConstructionError> {
    let field = BaseField::Rationals;
    let s = RegNilp::new(field);
    let a = s.elem("x", "0", "1", 0, "0");
    let r = s.elem("y", "1", "0", 0, "0");
    let a3 = s.pow(&a, 3);
    let ara = s.mul(&s.mul(&a, &r), &a);
    let full = s.full_ring();
    let identities = vec![
        Identity::new("A^3 = 0", s.is_zero(&a3)),
        Identity::new("A R A = A", ara == a),
        Identity::new("A^2 != 0", !s.is_zero(&s.mul(&a, &a))),
        Identity::new(
            "tagged product agrees with the plain 2x2 product",
            s.expand(&ara) == full.mul(&full.mul(&s.expand(&a), &s.expand(&r)), &s.expand(&a)),
        ),
    ];

    let base = &s.base;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = 0;
    for _ in 0..samples {
        let x = random_xrx(base, &mut rng);
        let mu = loop {
            let m = field.from_i64(rng.gen_range(-5..=5));
            if !m.is_zero() {
                break m;
            }
        };
        let mi = mu.inv().expect("nonzero");
        let cand = base.sub(&base.scalar(&mi), &x.scale(&(&mi * &mi)));
        let unit = base.add(&base.scalar(&mu), &x);
        let one = base.one();
        if base.is_zero(&base.mul(&x, &x)) && base.mul(&unit, &cand) == one && base.mul(&cand, &unit) == one {
            ok += 1;
        }
    }

    let k = base.parse("1 - y*x")?;
    let search = bounded_inverse_search(&k, &base.sys, &SearchSpace::length(max_degree), exec)?;
    Ok(RegNilpReport {
        a: s.show(&a),
        r: s.show(&r),
        identities,
        unit_samples: samples,
        unit_samples_ok: ok,
        inverse_search_words: search.dimension,
        inverse_found: search.inverse.is_some(),
        idempotents: graded_idempotents(field, max_degree),
    })
}

/// The unilateral shift example: `w`, `w'` mutually inverse and
/// `w^k a^k = diag(1, 0)`.
#[derive(Debug, Clone, Serialize)]
pub struct RegPowerReport {
    pub bound: u32,
    pub identities: Vec<Identity>,
}

impl RegPowerReport {
    pub fn verified(&self) -> bool {
        all_hold(&self.identities)
    }
}

fn in_ideal(x: &Structured) -> bool {
    x.symbol().is_zero()
}

pub fn reg_power_not_clean(field: BaseField, bound: u32) -> Result<RegPowerReport, ConstructionError> {
    let t = ToeplitzRing::unilateral(field);
    let m = MatRing::new(t, 2);
    let one = field.one();
    let alpha = t.shift(-1, one.clone());
    let alpha1 = t.shift(1, one);
    let sigma = t.from_ints(&[], &[((1, 1), 1)])?;
    let z = t.zero();
    let mk = |rows: Vec<Vec<Structured>>| Matrix::from_rows(rows).expect("2x2");
    let w = mk(vec![vec![alpha1.clone(), z.clone()], vec![sigma.clone(), alpha.clone()]]);
    let w1 = mk(vec![vec![alpha.clone(), sigma.clone()], vec![z.clone(), alpha1.clone()]]);
    let a = m.diag(&[alpha.clone(), z.clone()]);
    let proj = m.diag(&[t.one(), z]);
    let mut identities = vec![
        Identity::new("alpha' alpha = 1", t.mul(&alpha1, &alpha) == t.one()),
        Identity::new("alpha alpha' = 1 - sigma", t.mul(&alpha, &alpha1) == t.sub(&t.one(), &sigma)),
        Identity::new("w w' = 1", m.mul(&w, &w1) == m.one()),
        Identity::new("w' w = 1", m.mul(&w1, &w) == m.one()),
        Identity::new(
            "off-diagonal entries of w, w' lie in the ideal",
            [&w, &w1].iter().all(|x| in_ideal(x.get(0, 1)) && in_ideal(x.get(1, 0))),
        ),
    ];
    let (mut ak, mut wk) = (m.one(), m.one());
    for k in 1..=bound {
        ak = m.mul(&ak, &a);
        wk = m.mul(&wk, &w);
        let wa = m.mul(&wk, &ak);
        identities.push(Identity::new(format!("w^{k} a^{k} = diag(1, 0)"), wa == proj));
        identities.push(Identity::new(format!("a^{k} w^{k} a^{k} = a^{k}"), m.mul(&ak, &wa) == ak));
    }
    Ok(RegPowerReport { bound, identities })
}

/// `p(a)` for `a = diag(α, λ_2, ..., λ_n)` with `λ_2 = 0` a root of the
/// monomial `p`, and its unit inner inverse.
#[derive(Debug, Clone, Serialize)]
pub struct FinalExampleReport {
    pub p: String,
    pub n: usize,
    pub lambdas: Vec<String>,
    pub identities: Vec<Identity>,
}

impl FinalExampleReport {
    pub fn verified(&self) -> bool {
        all_hold(&self.identities)
    }
}

pub fn final_example(field: BaseField, p: &Poly, n: usize) -> Result<FinalExampleReport, ConstructionError> {
    let nonzero: Vec<(usize, &Scalar)> = p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let (k, c) = match nonzero.as_slice() {
        [(k, c)] if *k >= 1 => (*k as u32, (*c).clone()),
        [(0, _)] | [] => return Err(ConstructionError::Precondition("p must be non-constant".into())),
        _ => return Err(ConstructionError::OutOfTier(format!("p = {p} is not a monomial"))),
    };
    if n < 2 {
        return Err(ConstructionError::Precondition("n must be at least 2".into()));
    }
    // λ_2 = 0, then distinct nonzero scalars
    let mut lambdas = vec![field.zero()];
    let mut next = 1i64;
    while lambdas.len() < n - 1 {
        let l = field.from_i64(next);
        if l.is_zero() || lambdas.contains(&l) {
            return Err(ConstructionError::Precondition(format!("{field} has too few elements for n = {n}")));
        }
        lambdas.push(l);
        next += 1;
    }
    let t = ToeplitzRing::unilateral(field);
    let m = MatRing::new(t, n);
    let ci = c.inv().map_err(|_| ConstructionError::Precondition("zero coefficient".into()))?;
    let beta = t.shift(-(k as i64), c.clone());
    let beta1 = t.shift(k as i64, ci);
    let one = t.one();
    let gap = t.sub(&one, &t.mul(&beta, &beta1));
    let scal = |x: &Scalar| t.shift(0, x.clone());
    let pl: Vec<Scalar> = lambdas.iter().map(|l| &c * &l.pow(k as u64)).collect();
    // z = p(a), v = block v on coordinates (1, 2), p(λ_i)^-1 elsewhere
    let mut z = m.zero();
    let mut v = m.zero();
    let mut vi = m.zero();
    z.set(0, 0, beta.clone());
    v.set(0, 0, beta1.clone());
    v.set(1, 0, gap.clone());
    v.set(1, 1, beta.clone());
    vi.set(0, 0, beta.clone());
    vi.set(0, 1, gap.clone());
    vi.set(1, 1, beta1.clone());
    for (i, x) in pl.iter().enumerate().skip(1) {
        let xi = x.inv().map_err(|_| ConstructionError::Precondition("p(λ) vanishes twice".into()))?;
        z.set(i + 1, i + 1, scal(x));
        v.set(i + 1, i + 1, scal(&xi));
        vi.set(i + 1, i + 1, scal(x));
    }
    let off_diag_ok = |x: &Matrix<Structured>| {
        (0..n).all(|i| (0..n).all(|j| i == j || x.get(i, j).symbol().is_zero()))
    };
    let identities = vec![
        Identity::new("beta' beta = 1", t.mul(&beta1, &beta) == one),
        Identity::new("z v z = z", m.mul(&m.mul(&z, &v), &z) == z),
        Identity::new("v v^-1 = 1", m.mul(&v, &vi) == m.one()),
        Identity::new("v^-1 v = 1", m.mul(&vi, &v) == m.one()),
        Identity::new("off-diagonal entries lie in the ideal", off_diag_ok(&v) && off_diag_ok(&vi)),
    ];
    let mut shown = vec!["alpha".to_string()];
    shown.extend(lambdas.iter().map(Scalar::to_string));
    Ok(FinalExampleReport {
        p: p.to_string(),
        n,
        lambdas: shown,
        identities,
    })
}
