use std::path::Path;

use serde_json::{json, Value};
use surgery_core::chains::{BasedComplex, ComplexJson};
use surgery_core::duality_verifier::{browder_check, fundamental_class, truncated_duality_at_infinity, verify_duality, DualityError};
use surgery_core::endtowers::{
    delta_vanishes, epsilon_vanishes, Decision, EndPeriodicComplex, EndPeriodicJson, MultiTower, MultiTowerJson, TruncationOracle,
};
use surgery_core::selftest;
use surgery_core::simplicial::{
    cap_boundary_identity, cup_identities, graded_commutativity, Chain, ChainJson, Rel, SimplicialSpace, SpaceJson,
    Twist, Voltage, VoltageJson,
};
use surgery_core::torsion::{torsion_of_acyclic, TorsionError, Verdict};
use surgery_core::tree_modules::{stabilize, validate_partition, Partition, PartitionJson};

use crate::{bad, load, InputError, Job, Options, Outcome};

fn parse<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T, InputError> {
    serde_json::from_value(v).map_err(|e| InputError(format!("not a valid {what}: {e}")))
}

fn space(v: Value) -> Result<SimplicialSpace, InputError> {
    SimplicialSpace::from_json(&parse::<SpaceJson>(v, "space")?).map_err(bad)
}

fn job(outcome: Outcome, details: Value, text: Vec<String>) -> Job {
    Job { outcome, details, witnesses: vec![], text, notes: vec![] }
}

fn from_verdict(v: Verdict) -> Outcome {
    match v {
        Verdict::Pass => Outcome::Pass,
        Verdict::Fail => Outcome::Fail,
        Verdict::Unknown => Outcome::Undetermined,
    }
}

pub fn homology(input: &Path, twisted: bool, relative: bool) -> Result<Job, InputError> {
    let k = space(load(input)?)?;
    let twist = if twisted { Twist::W } else { Twist::Trivial };
    let rel = if relative { Rel::Relative } else { Rel::Absolute };
    let sc = k.chains(twist, rel);
    let degrees = 0..=k.dim() as i64;
    let h: Vec<String> = degrees.clone().map(|d| sc.homology(d).describe()).collect();
    let c: Vec<String> = degrees.map(|d| sc.cohomology(d).describe()).collect();
    let mut text: Vec<String> = h.iter().enumerate().map(|(d, g)| format!("H_{d} = {g}")).collect();
    text.extend(c.iter().enumerate().map(|(d, g)| format!("H^{d} = {g}")));
    let details = json!({
        "coefficients": if twisted { "twisted" } else { "integers" },
        "relative": relative,
        "homology": h,
        "cohomology": c,
        "euler_characteristic": k.euler_characteristic(),
    });
    Ok(job(Outcome::Pass, details, text))
}

pub fn products(input: &Path, samples: usize, opts: &Options) -> Result<Job, InputError> {
    let k = space(load(input)?)?;
    let mut rng = selftest::seeded_rng(opts.seed, 0);
    let checks = [
        ("cup", cup_identities(&k, &mut rng, samples).map(|_| samples)),
        ("cap", cap_boundary_identity(&k, &mut rng, samples).map(|_| samples)),
        ("graded_commutativity", graded_commutativity(&k)),
    ];
    let mut details = serde_json::Map::new();
    let mut out = job(Outcome::Pass, Value::Null, vec![]);
    for (name, r) in checks {
        match r {
            Ok(n) => {
                details.insert(name.into(), json!({"verdict": "PASS", "checked": n}));
                out.text.push(format!("{name}: PASS ({n} checked)"));
            }
            Err(e) => {
                details.insert(name.into(), json!({"verdict": "FAIL", "detail": e}));
                out.text.push(format!("{name}: FAIL: {e}"));
                out.witnesses.push(json!({"check": name, "detail": e}));
                out.notes.push(format!("{name}: {e}"));
                out.outcome = Outcome::Fail;
            }
        }
    }
    out.details = Value::Object(details);
    Ok(out)
}

pub fn torsion(input: &Path) -> Result<Job, InputError> {
    let c = BasedComplex::from_json(&parse::<ComplexJson>(load(input)?, "complex")?).map_err(bad)?;
    let ring = c.ring().describe();
    match torsion_of_acyclic(&c) {
        Ok(t) => {
            let text = vec![format!("ring: {ring}"), format!("torsion: det {} (trivial: {})", t.det.normalized, t.is_trivial())];
            Ok(job(Outcome::Pass, json!({"ring": ring, "torsion": t.to_json()}), text))
        }
        Err(TorsionError::NotAcyclic(d)) => {
            let mut j = job(Outcome::Fail, json!({"ring": ring}), vec![format!("not acyclic: {d}")]);
            j.witnesses.push(json!({"kind": "homology", "detail": d}));
            j.notes.push(format!("not acyclic: {d}"));
            Ok(j)
        }
        Err(e @ TorsionError::OutOfBound { .. }) => Ok(job(Outcome::Undetermined, json!({"ring": ring, "detail": e.to_string()}), vec![e.to_string()])),
        Err(e) => Err(bad(e)),
    }
}

fn duality_error(e: DualityError) -> Result<Job, InputError> {
    match e {
        DualityError::DualityFails(d) => {
            let mut j = job(Outcome::Fail, json!({"detail": d}), vec![format!("duality fails: {d}")]);
            j.notes.push(d);
            Ok(j)
        }
        DualityError::Torsion(e @ TorsionError::OutOfBound { .. }) => {
            Ok(job(Outcome::Undetermined, json!({"detail": e.to_string()}), vec![e.to_string()]))
        }
        e => Err(bad(e)),
    }
}

pub fn duality(input: &Path) -> Result<Job, InputError> {
    let mut v = load(input)?;
    let obj = v.as_object_mut().ok_or_else(|| InputError("expected a JSON object".into()))?;
    let class = obj.remove("class").filter(|c| !c.is_null());
    let cover = obj.remove("cover").filter(|c| !c.is_null());
    let k = space(v)?;
    let z = match class {
        Some(c) => Chain::from_json(&k, &parse::<ChainJson>(c, "chain")?).map_err(bad)?,
        None => match fundamental_class(&k) {
            Some(z) => z,
            None => {
                let d = format!("H_{}(K, A; Z^w) is not infinite cyclic, so there is no fundamental class", k.dim());
                let mut j = job(Outcome::Fail, json!({"detail": d}), vec![d.clone()]);
                j.witnesses.push(json!({"kind": "fundamental_class", "detail": d}));
                j.notes.push(d);
                return Ok(j);
            }
        },
    };
    let voltage = match cover {
        Some(c) => Some(Voltage::from_json(&k, &parse::<VoltageJson>(c, "cover")?).map_err(bad)?),
        None => None,
    };
    let report = match verify_duality(&k, &z, voltage.as_ref()) {
        Ok(r) => r,
        Err(e) => return duality_error(e),
    };
    let mut text = vec![format!("dimension {}, class coefficients {}", report.dim, report.class_twist)];
    for d in &report.degrees {
        text.push(format!(
            "{:?} {} m={}: H^m = {} -> H_(n-m) = {}: {}",
            d.direction,
            d.coefficients,
            d.degree,
            d.cohomology,
            d.homology,
            if d.iso { "iso" } else { "NOT iso" }
        ));
    }
    let mut outcome = from_verdict(report.verdict);
    let mut details = serde_json::to_value(&report).map_err(bad)?;
    let witnesses: Vec<Value> = report.witnesses.iter().map(|w| serde_json::to_value(w).unwrap()).collect();
    details.as_object_mut().unwrap().remove("witnesses");
    if k.has_subcomplex() && report.passes() {
        let b = match browder_check(&k, &z, Twist::Trivial) {
            Ok(b) => b,
            Err(e) => return duality_error(e),
        };
        text.push(format!("browder ladder: {}", b.verdict));
        if b.verdict != Verdict::Pass {
            outcome = Outcome::Fail;
        }
        details["browder"] = serde_json::to_value(&b).map_err(bad)?;
    }
    if let Some(t) = &report.torsion {
        text.push(format!("duality torsion over {}: trivial {}, relation {}", t.ring, t.trivial, t.relation));
    }
    let notes = report.witnesses.iter().map(|w| format!("{:?} degree {} {}: {}", w.direction, w.degree, w.kind, w.detail)).collect();
    Ok(Job { outcome, details, witnesses, text, notes })
}

fn decision(d: Decision) -> &'static str {
    match d {
        Decision::True => "vanishes",
        Decision::False => "does not vanish",
        Decision::Undetermined => "undetermined",
    }
}

pub fn endtower(input: &Path, degree: Option<i64>, opts: &Options) -> Result<Job, InputError> {
    let v = load(input)?;
    let towers: Vec<(String, MultiTower)> = if v.get("ends").is_some() {
        let x = EndPeriodicComplex::from_json(&parse::<EndPeriodicJson>(v, "end-periodic complex")?).map_err(bad)?;
        let degrees: Vec<i64> = match degree {
            Some(k) => vec![k],
            None => (0..=x.core.dim() as i64).collect(),
        };
        let mut out = Vec::new();
        for k in degrees {
            out.push((format!("H_{k}"), x.end_tower(k, opts.depth).map_err(bad)?));
        }
        out
    } else {
        vec![("tower".into(), MultiTower::from_json(&parse::<MultiTowerJson>(v, "multitower")?).map_err(bad)?)]
    };
    let mut out = job(Outcome::Pass, Value::Null, vec![]);
    let mut details = serde_json::Map::new();
    for (name, mt) in towers {
        let eps = epsilon_vanishes(&mt, opts.horizon);
        let delta = delta_vanishes(&mt, opts.horizon);
        out.text.push(format!("{name}: epsilon {}, Delta {}", decision(eps.verdict), decision(delta.verdict)));
        if eps.verdict == Decision::Undetermined || delta.verdict == Decision::Undetermined {
            out.outcome = Outcome::Undetermined;
            out.notes.push(format!("{name}: undetermined within horizon {}", opts.horizon));
        }
        details.insert(name, json!({"epsilon": eps, "delta": delta}));
    }
    out.details = Value::Object(details);
    Ok(out)
}

pub fn lfhomology(input: &Path, opts: &Options) -> Result<Job, InputError> {
    let x = EndPeriodicComplex::from_json(&parse::<EndPeriodicJson>(load(input)?, "end-periodic complex")?).map_err(bad)?;
    let top = x.core.dim() as i64;
    let mut lf = Vec::new();
    let mut cs = Vec::new();
    let mut out = job(Outcome::Pass, Value::Null, vec![]);
    for k in 0..=top {
        lf.push(x.lf_homology(k).map_err(bad)?.to_string());
        cs.push(x.cs_cohomology(k).map_err(bad)?.to_string());
        out.text.push(format!("H^lf_{k} = {}, H^{k}_c = {}", lf[k as usize], cs[k as usize]));
    }
    let oracle = match TruncationOracle::run(&x, opts.depth) {
        Ok(_) => json!({"depth": opts.depth, "verdict": "PASS"}),
        Err(e) => {
            out.outcome = Outcome::Fail;
            out.notes.push(e.to_string());
            out.witnesses.push(json!({"kind": "truncation", "detail": e.to_string()}));
            json!({"depth": opts.depth, "verdict": "FAIL", "detail": e.to_string()})
        }
    };
    out.text.push(format!("truncation oracle at depth {}: {}", opts.depth, oracle["verdict"].as_str().unwrap()));
    let infinity = match truncated_duality_at_infinity(&x, opts.depth) {
        Ok(r) => {
            out.text.push(format!("duality at infinity: {}", r.verdict));
            if r.verdict != Verdict::Pass {
                out.outcome = Outcome::Fail;
                out.notes.push("truncated duality at infinity fails".into());
            }
            serde_json::to_value(&r).map_err(bad)?
        }
        Err(e) => {
            out.text.push(format!("duality at infinity: not applicable ({e})"));
            json!({"applicable": false, "detail": e.to_string()})
        }
    };
    out.details = json!({"lf_homology": lf, "cs_cohomology": cs, "truncation_oracle": oracle, "duality_at_infinity": infinity});
    Ok(out)
}

pub fn partition(input: &Path) -> Result<Job, InputError> {
    let p = Partition::from_json(&parse::<PartitionJson>(load(input)?, "partition")?).map_err(bad)?;
    let r = validate_partition(&p);
    let mut out = job(Outcome::Pass, Value::Null, vec![format!("axioms satisfied: {}", r.checked.join(", "))]);
    let mut details = json!({"validation": r});
    if let Some(v) = &r.violation {
        out.outcome = Outcome::Fail;
        out.text.push(format!("axiom {} fails: {}", v.axiom, v.witness));
        out.witnesses.push(serde_json::to_value(v).map_err(bad)?);
        out.notes.push(format!("axiom {}: {}", v.axiom, v.witness));
    } else {
        let s = stabilize(&p).map_err(bad)?;
        let verified = s.verify(&p).is_ok();
        out.text.push(format!("stabilized with {} copies; certificate {}", s.copies, if verified { "verified" } else { "REJECTED" }));
        if !verified {
            out.outcome = Outcome::Fail;
        }
        details["stabilization"] = serde_json::to_value(&s).map_err(bad)?;
        details["certificate_verified"] = json!(verified);
    }
    out.details = details;
    Ok(out)
}

pub fn selftest(opts: &Options) -> Job {
    let r = selftest::run(opts.seed);
    let text = r.table().lines().map(String::from).collect();
    let mut j = job(from_verdict(r.verdict), serde_json::to_value(&r).unwrap(), text);
    for c in r.criteria.iter().filter(|c| c.verdict != Verdict::Pass) {
        j.notes.push(format!("criterion {} ({}): {}", c.id, c.name, c.detail));
        j.witnesses.push(json!({"criterion": c.id, "detail": c.detail}));
    }
    j
}
