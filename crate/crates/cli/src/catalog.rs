//! Registered checks and their dispatch.

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use unireg_core::battery::{self, Verdict, CORRESPONDENCE_RINGS};
use unireg_core::constructions::{
    bergman_unit, bergman_witness, concrete_ten_relations, corr_assemble, find_ten_relation_data,
    ConstructionError,
};
use unireg_core::freealg::{Grading, SearchSpace};
use unireg_core::matring::{FiniteRing, RingSpec};
use unireg_core::par::Exec;
use unireg_core::predicates::{correspondence_check, decide, ring_scan, verify_report, Predicate, DEFAULT_CENSUS_CAP};
use unireg_core::scalars::BaseField;
use unireg_core::toeplitz::{parse_element, ToeplitzRing};

use crate::report::Status;

/// Largest finite ring the CLI will tabulate.
const RING_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    Ring,
    Elem,
    Bound,
    Radius,
    Seed,
}

impl Flag {
    pub fn name(self) -> &'static str {
        match self {
            Flag::Ring => "--ring",
            Flag::Elem => "--elem",
            Flag::Bound => "--bound",
            Flag::Radius => "--radius",
            Flag::Seed => "--seed",
        }
    }
}

/// Validated parameters of one run.
#[derive(Debug, Clone)]
pub struct Params {
    pub ring: Option<String>,
    pub elem: Option<String>,
    pub bound: Option<u32>,
    pub radius: Option<u32>,
    pub seed: u64,
    /// True when `--seed` was given explicitly.
    pub seed_given: bool,
    pub exec: Exec,
}

impl Params {
    fn given(&self, f: Flag) -> bool {
        match f {
            Flag::Ring => self.ring.is_some(),
            Flag::Elem => self.elem.is_some(),
            Flag::Bound => self.bound.is_some(),
            Flag::Radius => self.radius.is_some(),
            Flag::Seed => self.seed_given,
        }
    }
}

pub struct Outcome {
    pub status: Status,
    pub warnings: Vec<String>,
    pub result: Value,
}

impl From<Verdict> for Outcome {
    fn from(v: Verdict) -> Self {
        let status = if v.passed {
            Status::Pass
        } else if v.inconclusive {
            Status::Inconclusive
        } else {
            Status::Fail
        };
        Outcome {
            status,
            warnings: v.warnings,
            result: v.details,
        }
    }
}

pub struct Check {
    pub id: &'static str,
    /// Short quoted phrase from the source text the check reproduces.
    pub anchor: &'static str,
    pub summary: &'static str,
    pub accepts: &'static [Flag],
    pub requires: &'static [Flag],
    run: fn(&Params) -> Result<Outcome>,
}

impl Check {
    /// Rejects flags the check ignores and missing required ones.
    pub fn validate(&self, p: &Params) -> Result<()> {
        for f in [Flag::Ring, Flag::Elem, Flag::Bound, Flag::Radius, Flag::Seed] {
            if p.given(f) && !self.accepts.contains(&f) {
                bail!("check {} does not take {}", self.id, f.name());
            }
        }
        for f in self.requires {
            if !p.given(*f) {
                bail!("check {} requires {}", self.id, f.name());
            }
        }
        Ok(())
    }

    pub fn run(&self, p: &Params) -> Result<Outcome> {
        (self.run)(p)
    }
}

pub const CATALOG: &[Check] = &[
    Check {
        id: "paper.all",
        anchor: "the full acceptance battery",
        summary: "all ten acceptance criteria at their stated parameters",
        accepts: &[Flag::Seed],
        requires: &[],
        run: run_all,
    },
    Check {
        id: "paper.bergman-unit",
        anchor: "is invertible in $R$, with inverse",
        summary: "unit U with AUA = A for a bilateral element with zero or monomial symbol",
        accepts: &[Flag::Ring, Flag::Elem, Flag::Seed],
        requires: &[],
        run: run_bergman_unit,
    },
    Check {
        id: "paper.bergman-witness",
        anchor: "the $0$th row of $A-E$ is all zeros",
        summary: "exhaustive F2 window search: every commuting idempotent leaves a zero line in A - E",
        accepts: &[Flag::Radius],
        requires: &[],
        run: run_bergman_witness,
    },
    Check {
        id: "paper.correspondence",
        anchor: "$au^{-1}a=a$ and $a^2u^{-2}a^2=a^2$",
        summary: "the six equivalent conditions agree on every element of small finite rings",
        accepts: &[Flag::Ring, Flag::Elem],
        requires: &[],
        run: run_correspondence,
    },
    Check {
        id: "paper.degree-counterexample",
        anchor: "$\\deg(s_k)=2k-3$",
        summary: "a unit inner inverse r of a whose powers r^k fail for a^k in M2(F5(x))",
        accepts: &[Flag::Bound],
        requires: &[],
        run: |p| Ok(battery::degree(p.bound.unwrap_or(6))?.into()),
    },
    Check {
        id: "paper.diamond",
        anchor: "all ambiguities are resolvable",
        summary: "confluence of a^i x_i a^i -> a^i for i up to --bound",
        accepts: &[Flag::Bound],
        requires: &[],
        run: |p| Ok(battery::diamond(p.bound.unwrap_or(4), p.exec)?.into()),
    },
    Check {
        id: "paper.examples",
        anchor: "we easily check that $ww'=w'w=1$",
        summary: "shift example, square-zero ring S and the final example",
        accepts: &[Flag::Bound, Flag::Seed],
        requires: &[],
        run: |p| Ok(battery::examples(p.seed, p.bound.unwrap_or(10), 6, p.exec)?.into()),
    },
    Check {
        id: "paper.fiftythree",
        anchor: "53 monomials in its support",
        summary: "the twelve-term idempotent and a verified inverse of a - e under the ten relations",
        accepts: &[Flag::Bound],
        requires: &[],
        run: run_fiftythree,
    },
    Check {
        id: "paper.infrastructure",
        anchor: "ring axioms and the symbol homomorphism",
        summary: "seeded ring-axiom spot checks, symbol map, normal forms, witness re-verification",
        accepts: &[Flag::Seed],
        requires: &[],
        run: |p| Ok(battery::infrastructure(p.seed, p.exec)?.into()),
    },
    Check {
        id: "paper.nilpotent",
        anchor: "Let $u:=b+(1+a)^{-1}(1-ab)$",
        summary: "nilpotent formulas symbolically, unit-corner scan on M3(F2), annihilator instances",
        accepts: &[Flag::Bound, Flag::Seed],
        requires: &[],
        run: |p| Ok(battery::nilpotent(p.seed, p.bound.unwrap_or(5), p.exec)?.into()),
    },
    Check {
        id: "paper.non-regular",
        anchor: "$a^{n+1}$ is not regular in $R_n$",
        summary: "no short monomial inverts a^k from inside when only a is known to be regular",
        accepts: &[Flag::Bound],
        requires: &[],
        run: |p| Ok(battery::non_regular(p.bound.unwrap_or(4), 6, p.exec)?.into()),
    },
    Check {
        id: "paper.powerreg-grid",
        anchor: "$a^iw^ja^j=w^{j-i}a^j$",
        summary: "recursive w for seeded random M4(F5) matrices, plus the closed n = 2 formula",
        accepts: &[Flag::Bound, Flag::Seed],
        requires: &[],
        run: |p| Ok(battery::power_grid(p.seed, p.bound.unwrap_or(4), 200, p.exec)?.into()),
    },
    Check {
        id: "paper.remark-fixture",
        anchor: "but $a^2R\\cap aeR\\ne(0)$",
        summary: "an M2(F2) decomposition with aR, eR and a^2R, aeaR independent while a^2R and aeR meet",
        accepts: &[],
        requires: &[],
        run: |_| Ok(battery::remark_fixture()?.into()),
    },
    Check {
        id: "paper.ten-relations",
        anchor: "wt=ra",
        summary: "find r, t, w for an element, check the ten relations and assemble a = e + u",
        accepts: &[Flag::Ring, Flag::Elem],
        requires: &[Flag::Ring, Flag::Elem],
        run: run_ten_relations,
    },
    Check {
        id: "ring.decide",
        anchor: "regular, unit-regular and clean",
        summary: "decide the five element predicates by exhaustive search and re-verify witnesses",
        accepts: &[Flag::Ring, Flag::Elem],
        requires: &[Flag::Ring, Flag::Elem],
        run: run_decide,
    },
    Check {
        id: "ring.scan",
        anchor: "regular elements in rings with stable range one are always clean",
        summary: "per-element predicate table with the implication checks",
        accepts: &[Flag::Ring],
        requires: &[Flag::Ring],
        run: run_scan,
    },
];

/// Looks a check up, with a catalog hint on failure.
pub fn find(id: &str) -> Result<&'static Check> {
    CATALOG.iter().find(|c| c.id == id).ok_or_else(|| {
        let close: Vec<&str> = CATALOG
            .iter()
            .map(|c| c.id)
            .filter(|c| c.contains(id) || id.contains(c.trim_start_matches("paper.")))
            .collect();
        let hint = if close.is_empty() {
            "run `unireg list` for the catalog".to_string()
        } else {
            format!("did you mean {}? run `unireg list` for the catalog", close.join(", "))
        };
        anyhow!("unknown check '{id}'; {hint}")
    })
}

fn build_ring(spec: &str, exec: Exec) -> Result<FiniteRing> {
    let s = RingSpec::parse(spec).with_context(|| format!("bad ring spec '{spec}'"))?;
    s.build(RING_LIMIT, exec).with_context(|| format!("cannot tabulate {spec}"))
}

fn element(ring: &FiniteRing, text: &str) -> Result<u32> {
    ring.parse_elem(text)
        .with_context(|| format!("bad element '{text}' for {}", ring.spec()))
}

fn run_all(p: &Params) -> Result<Outcome> {
    let outcomes = battery::run_all(p.seed, p.exec);
    let passed = outcomes.iter().all(|o| o.passed);
    let warnings = outcomes
        .iter()
        .flat_map(|o| o.warnings.iter().map(move |w| format!("criterion {}: {w}", o.number)))
        .collect();
    Ok(Outcome {
        status: if passed { Status::Pass } else { Status::Fail },
        warnings,
        result: json!({ "criteria": outcomes }),
    })
}

fn run_fiftythree(p: &Params) -> Result<Outcome> {
    let space = match p.bound {
        None => unireg_core::constructions::fiftythree_space(),
        Some(len) => SearchSpace::length(len as usize)
            .with_letters(vec![0, 1, 3])
            .with_grading(Grading {
                weights: vec![1, -1, 1, -1],
                min: -1,
                max: 0,
            })
            .with_limit(1 << 22),
    };
    Ok(battery::fiftythree(&space, p.exec)?.into())
}

fn run_correspondence(p: &Params) -> Result<Outcome> {
    match (&p.ring, &p.elem) {
        (None, None) => Ok(battery::correspondence(&CORRESPONDENCE_RINGS, p.exec)?.into()),
        (Some(r), None) => Ok(battery::correspondence(&[r.as_str()], p.exec)?.into()),
        (Some(r), Some(e)) => {
            let ring = build_ring(r, p.exec)?;
            let a = element(&ring, e)?;
            let prof = correspondence_check(&ring, a)?;
            let ok = prof.consistent() && prof.verify(&ring);
            Ok(Outcome {
                status: if ok { Status::Pass } else { Status::Fail },
                warnings: Vec::new(),
                result: serde_json::to_value(&prof)?,
            })
        }
        (None, Some(_)) => bail!("--elem needs --ring"),
    }
}

fn run_ten_relations(p: &Params) -> Result<Outcome> {
    let ring = build_ring(p.ring.as_deref().unwrap_or_default(), p.exec)?;
    let a = element(&ring, p.elem.as_deref().unwrap_or_default())?;
    let Some((r, t, w)) = find_ten_relation_data(&ring, a) else {
        return Ok(Outcome {
            status: Status::Inconclusive,
            warnings: vec!["no (r, t, w) satisfying the ten relations: the element is not doubly unit-regular".into()],
            result: json!({ "a": ring.label(a) }),
        });
    };
    let cert = concrete_ten_relations(&ring, &a, &r, &t, &w)?;
    let clean = corr_assemble(&ring, &cert)?;
    Ok(Outcome {
        status: if clean.verified() { Status::Pass } else { Status::Fail },
        warnings: Vec::new(),
        result: json!({ "data": cert, "decomposition": clean }),
    })
}

fn run_bergman_witness(p: &Params) -> Result<Outcome> {
    let radius = p.radius.unwrap_or(2);
    let commuting = bergman_witness(radius, false, p.exec)?;
    let capably = bergman_witness(radius, true, p.exec)?;
    let ok = commuting.verified() && capably.verified();
    Ok(Outcome {
        status: if ok { Status::Pass } else { Status::Fail },
        warnings: Vec::new(),
        result: json!({ "commuting": commuting, "capably": capably }),
    })
}

fn run_bergman_unit(p: &Params) -> Result<Outcome> {
    let field = BaseField::parse(p.ring.as_deref().unwrap_or("F5")).context("--ring must name a field here")?;
    let ring = ToeplitzRing::bilateral(field);
    let elems = match &p.elem {
        Some(text) => vec![parse_element(text, &ring).with_context(|| format!("bad element '{text}'"))?],
        None => battery::tier1_samples(&ring, p.seed, 50),
    };
    let mut units = Vec::new();
    let mut status = Status::Pass;
    let mut warnings = Vec::new();
    for a in &elems {
        match bergman_unit(&ring, a) {
            Ok(u) => {
                if !u.verified() {
                    status = Status::Fail;
                }
                units.push(serde_json::to_value(&u)?);
            }
            Err(ConstructionError::OutOfTier(why)) => {
                if status == Status::Pass {
                    status = Status::Inconclusive;
                }
                warnings.push(why);
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome {
        status,
        warnings,
        result: json!({ "field": field.to_string(), "units": units }),
    })
}

const PREDICATES: [Predicate; 5] = [
    Predicate::Regular,
    Predicate::UnitRegular,
    Predicate::Clean,
    Predicate::StronglyClean,
    Predicate::CapablyClean,
];

fn run_decide(p: &Params) -> Result<Outcome> {
    let ring = build_ring(p.ring.as_deref().unwrap_or_default(), p.exec)?;
    let a = element(&ring, p.elem.as_deref().unwrap_or_default())?;
    let reports: Vec<_> = PREDICATES.iter().map(|&q| decide(&ring, a, q)).collect();
    let ok = reports.iter().all(|r| !r.verdict || verify_report(&ring, r));
    Ok(Outcome {
        status: if ok { Status::Pass } else { Status::Fail },
        warnings: Vec::new(),
        result: json!({ "element": ring.label(a), "reports": reports }),
    })
}

fn run_scan(p: &Params) -> Result<Outcome> {
    let ring = build_ring(p.ring.as_deref().unwrap_or_default(), p.exec)?;
    let census = ring_scan(&ring, DEFAULT_CENSUS_CAP, p.exec)?;
    Ok(Outcome {
        status: if census.violations.is_empty() { Status::Pass } else { Status::Fail },
        warnings: Vec::new(),
        result: serde_json::to_value(&census)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn ids_unique_and_anchored() {
        let ids: HashSet<&str> = CATALOG.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), CATALOG.len());
        assert!(CATALOG.iter().all(|c| !c.anchor.is_empty()));
        assert!(ids.contains("paper.powerreg-grid"));
        assert!(ids.contains("paper.degree-counterexample"));
    }

    #[test]
    fn catalog_is_sorted() {
        assert!(CATALOG.windows(2).all(|w| w[0].id < w[1].id));
    }

    #[test]
    fn unknown_check_gets_a_hint() {
        let err = find("paper.fifty").err().unwrap().to_string();
        assert!(err.contains("unireg list"), "{err}");
    }

    #[test]
    fn flags_are_validated() {
        let p = Params {
            ring: None,
            elem: None,
            bound: None,
            radius: Some(3),
            seed: 0,
            seed_given: false,
            exec: Exec::Sequential,
        };
        assert!(find("paper.diamond").unwrap().validate(&p).is_err());
        assert!(find("paper.bergman-witness").unwrap().validate(&p).is_ok());
        assert!(find("ring.scan").unwrap().validate(&p).is_err());
    }
}
