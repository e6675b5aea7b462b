use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::decimal::{exact_decimal, render_decimal, to_f64};
use super::exact::sweep;
use super::sample::{sample_counts, RNG_ALGORITHM};
use super::spec::ProbabilitySpec;
use crate::error::Result;
use crate::forgetting::{eliminate, ForgettingPolicy, Op};
use crate::logic::{Formula, Theory, Vocabulary};
use crate::textio::render;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Sample { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LimitingFlag {
    /// Weak forgetting produced an inconsistent formula.
    WeakInconsistent,
    /// Strong forgetting produced a tautology.
    StrongTautological,
}

impl LimitingFlag {
    pub fn name(self) -> &'static str {
        match self {
            LimitingFlag::WeakInconsistent => "weak_inconsistent",
            LimitingFlag::StrongTautological => "strong_tautological",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LossReport {
    pub theory: String,
    pub policy: Vec<String>,
    /// Ground atoms actually eliminated.
    pub forgotten: Vec<String>,
    pub mode: Mode,
    pub world_count: BigUint,
    pub p_theory: BigRational,
    pub p_strong: BigRational,
    pub p_weak: BigRational,
    pub loss_nc: BigRational,
    pub loss_sc: BigRational,
    pub loss_t: BigRational,
    pub limiting_flags: Vec<LimitingFlag>,
    pub strong: Formula,
    pub weak: Formula,
}

/// Exact decimal when it terminates, `n/d` otherwise; either form parses
/// back to the same rational.
pub fn exact_text(q: &BigRational) -> String {
    exact_decimal(q).unwrap_or_else(|| format!("{}/{}", q.numer(), q.denom()))
}

impl LossReport {
    pub fn probabilities(&self) -> [(&'static str, &BigRational); 6] {
        [
            ("p_theory", &self.p_theory),
            ("p_strong", &self.p_strong),
            ("p_weak", &self.p_weak),
            ("loss_nc", &self.loss_nc),
            ("loss_sc", &self.loss_sc),
            ("loss_t", &self.loss_t),
        ]
    }

    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "theory": self.theory,
            "policy": self.policy,
            "forgotten": self.forgotten,
            "mode": match self.mode { Mode::Exact => "exact", Mode::Sample { .. } => "sample" },
            "world_count": self.world_count.to_string(),
            "limiting_flags": self.limiting_flags.iter().map(|f| f.name()).collect::<Vec<_>>(),
            "strong": render(&self.strong),
            "weak": render(&self.weak),
        });
        let mut approx = serde_json::Map::new();
        for (k, v) in self.probabilities() {
            obj[k] = Value::String(exact_text(v));
            approx.insert(k.to_string(), json!(to_f64(v)));
        }
        obj["float"] = Value::Object(approx);
        if let Mode::Sample { samples, seed } = self.mode {
            obj["rng"] = json!({ "algorithm": RNG_ALGORITHM, "seed": seed, "samples": samples });
        }
        obj
    }

    /// Human-readable report, values at 10 significant digits.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("theory: {}\n", self.theory));
        s.push_str(&format!("policy: {}\n", self.policy.join(", ")));
        match self.mode {
            Mode::Exact => s.push_str("mode: exact\n"),
            Mode::Sample { samples, seed } => s.push_str(&format!(
                "mode: sample ({samples} samples, seed {seed}, {RNG_ALGORITHM})\n"
            )),
        }
        s.push_str(&format!("worlds: {}\n", self.world_count));
        s.push_str(&format!("strong: {}\n", render(&self.strong)));
        s.push_str(&format!("weak: {}\n", render(&self.weak)));
        for (k, v) in self.probabilities() {
            s.push_str(&format!("{k}: {}\n", render_decimal(v, 10)));
        }
        if !self.limiting_flags.is_empty() {
            let names: Vec<&str> = self.limiting_flags.iter().map(|f| f.name()).collect();
            s.push_str(&format!("limiting: {}\n", names.join(", ")));
        }
        s
    }
}

/// Ground the theory, forget the policy both ways and compare probabilities.
///
/// All three formulas are evaluated over the same working vocabulary: the
/// ground theory's atoms together with the spec's atoms. In sampling mode
/// they are evaluated on the same sampled worlds.
pub fn loss_measures(
    theory: &Theory,
    domain: &[String],
    policy: &ForgettingPolicy,
    spec: &ProbabilitySpec,
    mode: Mode,
    cap: usize,
) -> Result<LossReport> {
    let ground = theory.ground(domain)?;
    let vocab: Vocabulary = ground.vocabulary.union(&spec.vocabulary());
    if mode == Mode::Exact {
        vocab.check_cap(cap)?;
    }
    let conj = ground.conjunction();
    let forgotten = policy.expand(&vocab);
    let strong = eliminate(&conj, &forgotten, Op::Strong)?;
    let weak = eliminate(&conj, &forgotten, Op::Weak)?;
    let formulas = [conj, strong.clone(), weak.clone()];
    let all = BigUint::from(1u8) << vocab.len();

    let mut flags = Vec::new();
    let (p_theory, p_strong, p_weak) = match mode {
        Mode::Exact => {
            let r = sweep(spec, &formulas, &vocab, cap)?;
            if weak == Formula::False || r[2].models == 0 {
                flags.push(LimitingFlag::WeakInconsistent);
            }
            if strong == Formula::True || BigUint::from(r[1].models) == all {
                flags.push(LimitingFlag::StrongTautological);
            }
            let mut ps = r.into_iter().map(|o| o.probability);
            (ps.next().unwrap(), ps.next().unwrap(), ps.next().unwrap())
        }
        Mode::Sample { samples, seed } => {
            if weak == Formula::False {
                flags.push(LimitingFlag::WeakInconsistent);
            }
            if strong == Formula::True {
                flags.push(LimitingFlag::StrongTautological);
            }
            let c = sample_counts(spec, &formulas, &vocab, samples, seed)?;
            let frac = |k: u64| BigRational::new(k.into(), samples.into());
            (frac(c[0]), frac(c[1]), frac(c[2]))
        }
    };
    let loss_nc = &p_strong - &p_theory;
    let loss_sc = &p_theory - &p_weak;
    let loss_t = &p_strong - &p_weak;
    debug_assert!(!(loss_nc < BigRational::zero()) && !(loss_sc < BigRational::zero()));
    Ok(LossReport {
        theory: theory.name().to_string(),
        policy: policy.symbols().to_vec(),
        forgotten,
        mode,
        world_count: all,
        p_theory,
        p_strong,
        p_weak,
        loss_nc,
        loss_sc,
        loss_t,
        limiting_flags: flags,
        strong,
        weak,
    })
}
