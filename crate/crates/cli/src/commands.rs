use std::fmt::Write as _;

use reidemeister::freenilp::{hirsch_length_free_nilpotent, lyndon_words_up_to, reid_free_nilpotent, witt_rank};
use reidemeister::oracle::{klein_ball_agreement, verify_product_formula};
use reidemeister::reidemeister::{
    analyze_family, certify, family_window, reid_central_tower, reid_dihedral, reid_fg_abelian, reid_klein,
    scan_g53, scan_q42, scan_q42_sampled, verify, verify_json, KleinFamily, Problem, KLEIN_WINDOW,
};
use reidemeister::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::groups::resolve;
use crate::repro::repro;
use crate::spec::{Command, JobSpec};

/// Result of one job: exit code, JSON report and human rendering.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub human: String,
}

impl Outcome {
    pub fn ok(json: Value, human: String) -> Self {
        Outcome { code: 0, json, human }
    }

    pub fn asserted(ok: bool, json: Value, human: String) -> Self {
        Outcome { code: if ok { 0 } else { 1 }, json, human }
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Exit code for a library error: 1 when no rule or check succeeds, 2 for
/// bad input.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::NoApplicableRule(_) | Error::Verify(_) => 1,
        _ => 2,
    }
}

pub const DEFAULT_SEED: u64 = 0;

pub fn execute(job: &JobSpec) -> Result<Outcome> {
    let p = &job.params;
    match job.command {
        Command::Witt => witt(p.rank.unwrap_or(2), p.max_degree.unwrap_or(8)),
        Command::Layers => {
            let problem = resolve(
                job.group.as_ref().unwrap_or(&json!("free-nilpotent")),
                job.endo.as_ref(),
                p,
            )?;
            match problem {
                Problem::FreeNilpotent { endo, class } => {
                    let r = reid_free_nilpotent(&endo, class)?;
                    let human = free_nilpotent_human(&r);
                    Ok(Outcome::ok(to_value(&r), human))
                }
                _ => Err(Error::Parse("layers works on free nilpotent groups".into())),
            }
        }
        Command::Reid => {
            let group = job.group.as_ref().ok_or_else(|| Error::Parse("reid needs --group".into()))?;
            reid(resolve(group, job.endo.as_ref(), p)?)
        }
        Command::Certify => {
            if let Some(path) = &p.verify {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                let c = verify_json(&v)?;
                let human = format!("certificate accepted ({} nodes)\n{}", c.size(), c.outline());
                return Ok(Outcome::ok(json!({ "accepted": true, "nodes": c.size() }), human));
            }
            let group = job.group.as_ref().ok_or_else(|| Error::Parse("certify needs --group".into()))?;
            let c = certify(&resolve(group, job.endo.as_ref(), p)?)?;
            verify(&c)?;
            let human = format!("certificate accepted by the verifier\n{}", c.outline());
            Ok(Outcome::ok(to_value(&c), human))
        }
        Command::ScanQ42 => {
            let bound = p.bound.unwrap_or(1);
            let r = match p.samples {
                Some(s) => scan_q42_sampled(bound, s, p.seed.unwrap_or(DEFAULT_SEED), p.retries.unwrap_or(64))?,
                None => scan_q42(bound)?,
            };
            let human = q42_human(&r);
            Ok(Outcome::asserted(r.passed(), to_value(&r), human))
        }
        Command::ScanG53 => {
            let r = scan_g53(p.b_bound.unwrap_or(10))?;
            let mut h = format!("{} abelianization tuples (a, d in {{1, -1}}, |b| <= {})\n", r.count, r.b_bound);
            let _ = writeln!(
                h,
                "{}",
                if r.all_infinite { "R = infinity for every tuple".to_string() } else { format!("{} tuples with finite R", r.finite.len()) }
            );
            Ok(Outcome::asserted(r.all_infinite, to_value(&r), h))
        }
        Command::Klein => {
            let group = job.group.clone().unwrap_or(json!("klein"));
            let Problem::Klein { aut } = resolve(&group, job.endo.as_ref(), p)? else {
                return Err(Error::Parse("klein works on the Klein bottle group".into()));
            };
            let (lo, hi) = (p.lo.unwrap_or(KLEIN_WINDOW.0), p.hi.unwrap_or(KLEIN_WINDOW.1));
            let (value, cert) = reid_klein(aut)?;
            let mut families = Vec::new();
            for f in [KleinFamily::XPow, KleinFamily::XPowY, KleinFamily::YPow] {
                families.push(json!({ "analysis": analyze_family(aut, f), "window": family_window(aut, f, lo, hi) }));
            }
            let ball = klein_ball_agreement(aut, p.radius.unwrap_or(6));
            let witness = KleinFamily::for_case(aut.case());
            let w = family_window(aut, witness, lo, hi);
            let human = format!(
                "automorphism {aut} (case {})\nR = {value} by {}\nwitness family {}: {} distinct classes among {} members\nball radius {}: {} elements, {} merged pairs, {} contradictions\n",
                aut.case().letter(),
                cert.rule,
                witness.label(),
                w.distinct_classes,
                hi - lo + 1,
                ball.radius,
                ball.elements,
                ball.merged_pairs,
                ball.contradictions
            );
            let ok = ball.contradictions == 0;
            let json = json!({
                "aut": aut,
                "case": aut.case(),
                "value": value,
                "rule": cert.rule,
                "witness_family": witness.label(),
                "families": families,
                "ball": ball,
            });
            Ok(Outcome::asserted(ok, json, human))
        }
        Command::Oracle => {
            let moduli = p.moduli.clone().unwrap_or_else(|| vec![2, 3, 4]);
            let r = verify_product_formula(&moduli, p.seed.unwrap_or(DEFAULT_SEED))?;
            let mut h = format!("seed {}\n", r.seed);
            for m in &r.moduli {
                let _ = writeln!(
                    h,
                    "m = {}: {} candidates ({}), {} endomorphisms, {} violations; identity {} vs {} * {}",
                    m.m, m.candidates, m.policy, m.endomorphisms, m.violations, m.identity.total, m.identity.center, m.identity.quotient
                );
            }
            Ok(Outcome::asserted(r.passed(), to_value(&r), h))
        }
        Command::Repro => repro(p.target.as_deref().unwrap_or_default(), p),
    }
}

pub fn witt(rank: usize, max_degree: usize) -> Result<Outcome> {
    if max_degree == 0 {
        return Err(Error::Domain("max-degree must be at least 1".into()));
    }
    let words = lyndon_words_up_to(rank, max_degree);
    let mut rows = Vec::new();
    let mut h = format!("rank {rank}\n degree  rank of G_n/G_(n+1)\n");
    for n in 1..=max_degree {
        let w = witt_rank(rank as u64, n as u64)?;
        let lyndon = words.iter().filter(|x| x.len() == n).count();
        let _ = writeln!(h, " {n:>6}  {w}");
        rows.push(json!({ "degree": n, "rank": w.to_string(), "lyndon_words": lyndon }));
    }
    let hirsch = hirsch_length_free_nilpotent(rank as u64, max_degree as u64)?;
    let _ = writeln!(h, "Hirsch length of F_{rank}/G_{}: {hirsch}", max_degree + 1);
    Ok(Outcome::ok(
        json!({ "rank": rank, "max_degree": max_degree, "rows": rows, "hirsch_length": hirsch.to_string() }),
        h,
    ))
}

pub fn free_nilpotent_human(r: &reidemeister::freenilp::FreeNilpotentReid) -> String {
    let mut h = format!("{}\n", r.endo);
    for l in &r.layers {
        let _ = writeln!(h, " layer {:>2}: rank {:>3}, det(I - L) = {}, R = {}", l.degree, l.rank, l.det_identity_minus, l.value);
    }
    let _ = writeln!(h, "R = {}", r.value);
    h
}

fn reid(problem: Problem) -> Result<Outcome> {
    match problem {
        Problem::Abelian { matrix, relations } => {
            let v = reid_fg_abelian(&matrix, relations.as_ref())?;
            Ok(Outcome::ok(json!({ "value": v }), format!("R = {v}\n")))
        }
        Problem::Klein { aut } => {
            let (v, c) = reid_klein(aut)?;
            Ok(Outcome::ok(json!({ "value": v, "rule": c.rule }), format!("R = {v} ({})\n", c.rule)))
        }
        Problem::Dihedral { aut } => {
            let (v, c) = reid_dihedral(aut)?;
            Ok(Outcome::ok(json!({ "value": v, "rule": c.rule }), format!("R = {v} ({})\n", c.rule)))
        }
        p @ Problem::KleinTimesZn { .. } => {
            let c = certify(&p)?;
            let v = c.claim.value.clone().expect("value claim");
            Ok(Outcome::ok(json!({ "value": v, "rule": c.rule }), format!("R = {v} ({})\n", c.rule)))
        }
        Problem::FreeNilpotent { endo, class } => {
            let r = reid_free_nilpotent(&endo, class)?;
            let human = free_nilpotent_human(&r);
            Ok(Outcome::ok(to_value(&r), human))
        }
        Problem::Tower { tower, endo } => {
            let r = reid_central_tower(&tower, &endo)?;
            let exact = tower.layers.iter().all(|l| l.torsion.is_empty());
            let mut h = format!("{}\n", r.group);
            for l in &r.layers {
                let _ = writeln!(h, " layer {}: R = {}", l.layer, l.value);
            }
            let _ = writeln!(h, "R = {}{}", r.value, if exact { "" } else { " (upper bound: the tower has torsion)" });
            let mut json = to_value(&r);
            json["exact"] = json!(exact);
            Ok(Outcome::ok(json, h))
        }
    }
}

pub fn q42_human(r: &reidemeister::reidemeister::Q42ScanReport) -> String {
    let mut h = format!(
        "bound {} ({}): {} raw candidates, {} lifting, {} lifting with |det| = 1\n",
        r.bound, r.mode, r.raw_candidates, r.lifting, r.lifting_unimodular
    );
    for c in &r.checkpoints {
        let _ = writeln!(
            h,
            " {}: det(M - Id) = {}, det(N - Id) = {}, R = {}",
            c.label,
            c.det_m_minus_id,
            c.det_n_minus_id.as_ref().map(ToString::to_string).unwrap_or("-".into()),
            c.value.as_ref().map(ToString::to_string).unwrap_or("-".into())
        );
    }
    if r.finite_r_counterexamples.is_empty() {
        h.push_str("no finite-R lifting automorphism found\n");
    } else {
        let _ = writeln!(h, "{} lifting automorphisms with finite R", r.finite_r_counterexamples.len());
    }
    if !r.invariant_violations.is_empty() {
        let _ = writeln!(h, "{} automorphisms with neither I - M nor I - N singular", r.invariant_violations.len());
    }
    h
}
