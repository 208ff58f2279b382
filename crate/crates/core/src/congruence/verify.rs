use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::members::{member_rng, MemberFactory};
use super::{in_subgroup, paired_kernel_test, SubgroupSpec};
use crate::element::ElemRing;
use crate::error::{Error, Result};
use crate::forms::mat_json;
use crate::isogeny::lift;
use crate::rings::{Quad, QuadField, Quaternion, Rational};

/// The statements checked by [`verify_theorem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    Thm1b,
    Thm1c,
    Thm2b,
    Thm2c,
    Thm3,
    Cor1,
    Cor2,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] =
        [TheoremId::Thm1b, TheoremId::Thm1c, TheoremId::Thm2b, TheoremId::Thm2c, TheoremId::Thm3, TheoremId::Cor1, TheoremId::Cor2];

    pub fn name(&self) -> &'static str {
        match self {
            TheoremId::Thm1b => "thm1b",
            TheoremId::Thm1c => "thm1c",
            TheoremId::Thm2b => "thm2b",
            TheoremId::Thm2c => "thm2c",
            TheoremId::Thm3 => "thm3",
            TheoremId::Cor1 => "cor1",
            TheoremId::Cor2 => "cor2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown theorem '{s}'")))
    }

    pub fn of(spec: &SubgroupSpec) -> Self {
        match spec {
            SubgroupSpec::PrincipalSiegel { .. } => TheoremId::Thm1b,
            SubgroupSpec::SiegelLevel { .. } => TheoremId::Thm1c,
            SubgroupSpec::PrincipalHermitian { .. } => TheoremId::Thm2b,
            SubgroupSpec::HermitianLevel { .. } => TheoremId::Thm2c,
            SubgroupSpec::IdealPrincipal { .. } => TheoremId::Thm3,
            SubgroupSpec::QuatLevel { .. } => TheoremId::Cor1,
            SubgroupSpec::WpPrincipal => TheoremId::Cor2,
        }
    }

    /// The subgroup for explicit parameters.
    pub fn spec(&self, m: Option<u32>, n: Option<u32>, level: Option<u32>) -> Result<SubgroupSpec> {
        let name = match self {
            TheoremId::Thm1b => "principal-siegel",
            TheoremId::Thm1c => "siegel-level",
            TheoremId::Thm2b => "principal-hermitian",
            TheoremId::Thm2c => "hermitian-level",
            TheoremId::Thm3 => "ideal-principal",
            TheoremId::Cor1 => "quat-level",
            TheoremId::Cor2 => "wp-principal",
        };
        SubgroupSpec::parse(name, m, n, level)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

const LEVELS: [u32; 5] = [2, 3, 4, 6, 12];
const LEVEL_PAIRS: [(u32, u32); 4] = [(1, 2), (2, 2), (2, 4), (3, 6)];
const HERMITIAN_M: [u32; 3] = [1, 3, 5];
const IDEAL_M: [u32; 5] = [1, 3, 5, 7, 15];
const QUAT_LEVELS: [u32; 5] = [2, 3, 4, 5, 15];

/// The default parameter grid of a theorem.
pub fn default_grid(t: TheoremId) -> Vec<SubgroupSpec> {
    match t {
        TheoremId::Thm1b => LEVELS.iter().map(|&level| SubgroupSpec::PrincipalSiegel { level }).collect(),
        TheoremId::Thm1c => LEVEL_PAIRS.iter().map(|&(n, level)| SubgroupSpec::SiegelLevel { n, level }).collect(),
        TheoremId::Thm2b => HERMITIAN_M
            .iter()
            .flat_map(|&m| LEVELS.iter().map(move |&level| SubgroupSpec::PrincipalHermitian { m, level }))
            .collect(),
        TheoremId::Thm2c => HERMITIAN_M
            .iter()
            .flat_map(|&m| LEVEL_PAIRS.iter().map(move |&(n, level)| SubgroupSpec::HermitianLevel { m, n, level }))
            .collect(),
        TheoremId::Thm3 => IDEAL_M
            .iter()
            .flat_map(|&m| {
                let d = QuadField::new(m).expect("squarefree").discriminant().unsigned_abs() as u32;
                (2..=d).map(move |level| SubgroupSpec::IdealPrincipal { m, level })
            })
            .filter(|s| s.validate().is_ok())
            .collect(),
        TheoremId::Cor1 => QUAT_LEVELS.iter().map(|&level| SubgroupSpec::QuatLevel { level }).collect(),
        TheoremId::Cor2 => vec![SubgroupSpec::WpPrincipal],
    }
}

/// One offending sample.
#[derive(Clone, Debug, PartialEq)]
pub struct FailureDump {
    pub direction: &'static str,
    pub index: u64,
    pub element: Value,
    pub lift: Option<Value>,
    pub reason: String,
}

impl FailureDump {
    pub fn to_json(&self) -> Value {
        json!({
            "direction": self.direction,
            "index": self.index,
            "element": self.element,
            "lift": self.lift,
            "reason": self.reason,
        })
    }
}

/// Counts of a [`verify_theorem`] run; `failures` lists every failing sample.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub theorem: TheoremId,
    pub spec: SubgroupSpec,
    pub seed: u64,
    pub samples: usize,
    pub forward_passed: usize,
    pub forward_failed: usize,
    pub backward_samples: usize,
    pub backward_hits: usize,
    pub backward_passed: usize,
    pub backward_failed: usize,
    pub skipped: usize,
    pub failures: Vec<FailureDump>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.forward_failed == 0 && self.backward_failed == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem.name(),
            "params": self.spec.to_json(),
            "seed": self.seed,
            "samples": self.samples,
            "forward": { "passed": self.forward_passed, "failed": self.forward_failed },
            "backward": {
                "samples": self.backward_samples,
                "hits": self.backward_hits,
                "passed": self.backward_passed,
                "failed": self.backward_failed,
            },
            "skipped": self.skipped,
            "pass": self.passed(),
            "failures": self.failures.iter().map(FailureDump::to_json).collect::<Vec<_>>(),
        })
    }
}

enum Outcome {
    Pass,
    Miss,
    Skip,
    Fail(FailureDump),
    /// A failure before the kernel test could run.
    Error(FailureDump),
}

const BACKWARD_STREAM: u64 = 1 << 40;

fn forward_one<T: ElemRing>(f: &MemberFactory<T>, seed: u64, i: u64) -> Outcome {
    let g = f.member(&mut member_rng(seed, i));
    let elem = T::wrap(g.clone());
    let fail = |reason: String, lift: Option<Value>| Outcome::Fail(FailureDump { direction: "forward", index: i, element: elem.to_json(), lift, reason });
    match in_subgroup(&f.spec, &elem) {
        Ok(c) if c.member => {}
        Ok(c) => return fail(format!("constructed member violates {}", c.violated.unwrap_or_default()), None),
        Err(e) => return fail(e.to_string(), None),
    }
    let mt = match lift(&g) {
        Ok(mt) => mt,
        Err(Error::DegenerateLift) => return Outcome::Skip,
        Err(e) => return fail(e.to_string(), None),
    };
    match paired_kernel_test(&f.spec, &mt) {
        Ok(true) => Outcome::Pass,
        Ok(false) => fail("lift is not in the paired kernel".into(), Some(mat_json(mt.matrix()))),
        Err(e) => fail(e.to_string(), Some(mat_json(mt.matrix()))),
    }
}

/// Backward samples cycle through constructed members, members times one
/// ambient generator, free ambient words and members of the relaxed group.
fn backward_one<T: ElemRing>(f: &MemberFactory<T>, seed: u64, i: u64) -> Outcome {
    let mut rng = member_rng(seed, BACKWARD_STREAM + i);
    let g = match i % 4 {
        0 => f.member(&mut rng),
        1 => {
            let a = f.sampler.alphabet();
            f.member(&mut rng).mul(&a[rng.gen_range(0..a.len())])
        }
        2 => f.sampler.word(rng.gen_range(4..=10), &mut rng),
        _ => f.relaxed_member(&mut rng),
    };
    let elem = T::wrap(g.clone());
    let mt = match lift(&g) {
        Ok(mt) => mt,
        Err(Error::DegenerateLift) => return Outcome::Skip,
        Err(e) => return Outcome::Error(FailureDump { direction: "backward", index: i, element: elem.to_json(), lift: None, reason: e.to_string() }),
    };
    let dump = |reason: String| FailureDump { direction: "backward", index: i, element: elem.to_json(), lift: Some(mat_json(mt.matrix())), reason };
    match paired_kernel_test(&f.spec, &mt) {
        Ok(false) => Outcome::Miss,
        Ok(true) => match in_subgroup(&f.spec, &elem) {
            Ok(c) if c.member => Outcome::Pass,
            Ok(c) => Outcome::Fail(dump(format!("kernel hit violates {}", c.violated.unwrap_or_default()))),
            Err(e) => Outcome::Fail(dump(e.to_string())),
        },
        Err(e) => Outcome::Error(dump(e.to_string())),
    }
}

fn run<T: ElemRing>(spec: &SubgroupSpec, samples: usize, seed: u64) -> Result<VerifyReport> {
    let f = MemberFactory::<T>::new(spec)?;
    let forward: Vec<Outcome> = (0..samples as u64).into_par_iter().map(|i| forward_one(&f, seed, i)).collect();
    let backward: Vec<Outcome> = (0..samples as u64).into_par_iter().map(|i| backward_one(&f, seed, i)).collect();
    let mut r = VerifyReport {
        theorem: TheoremId::of(spec),
        spec: *spec,
        seed,
        samples,
        forward_passed: 0,
        forward_failed: 0,
        backward_samples: samples,
        backward_hits: 0,
        backward_passed: 0,
        backward_failed: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    for o in forward {
        match o {
            Outcome::Pass => r.forward_passed += 1,
            Outcome::Skip | Outcome::Miss => r.skipped += 1,
            Outcome::Fail(d) | Outcome::Error(d) => {
                r.forward_failed += 1;
                r.failures.push(d);
            }
        }
    }
    for o in backward {
        match o {
            Outcome::Pass => {
                r.backward_hits += 1;
                r.backward_passed += 1;
            }
            Outcome::Miss => {}
            Outcome::Skip => r.skipped += 1,
            Outcome::Fail(d) => {
                r.backward_hits += 1;
                r.backward_failed += 1;
                r.failures.push(d);
            }
            Outcome::Error(d) => {
                r.backward_failed += 1;
                r.failures.push(d);
            }
        }
    }
    Ok(r)
}

/// Forward and backward inclusion checks for one subgroup; deterministic in
/// `(spec, samples, seed)` regardless of the thread count.
pub fn verify_theorem(spec: &SubgroupSpec, samples: usize, seed: u64) -> Result<VerifyReport> {
    spec.validate()?;
    match spec.ambient()? {
        crate::symplectic::GroupKind::Siegel => run::<Rational>(spec, samples, seed),
        crate::symplectic::GroupKind::Hermitian(_) => run::<Quad>(spec, samples, seed),
        _ => run::<Quaternion>(spec, samples, seed),
    }
}
