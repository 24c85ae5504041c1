//! The end-to-end checklist behind `verify all`: thirteen criteria, each
//! re-deriving its numbers from scratch and reporting one outcome. The
//! deep flag adds the two long enumerations (the 𝔽₁₂₅ exponent and the
//! extended Hurwitz crosscheck); everything else runs in seconds.

use std::fmt::Write as _;
use std::time::Instant;

use num_rational::Rational64;
use serde::Serialize;

use crate::arith;
use crate::atlas::{
    abelian_extremal_verify, attaining_genera, exponent24_occurrences, main_bound_check,
    standard_actions,
};
use crate::catalog::builtin_catalog;
use crate::fq::{build_gl2, build_sl2, psl2_exponent};
use crate::fuchsian::{
    action_record, divisibility_check, genus_from_action, genvec_search, multiplier_ladder,
    normalized_equation_solutions, verify_genvec, ActionRecord, Signature, EQUATION_EXPONENTS,
    LADDER_MIN_THRESHOLD,
};
use crate::group::{
    build_group, is_z_group, zassenhaus_decompose, GroupHandle, GroupSpec,
};
use crate::hurwitz;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: String,
    pub description: String,
    pub pass: bool,
    /// Deterministic across reruns whenever pass is true, so serialized
    /// reports of passing runs are byte-identical.
    pub details: String,
    /// The operations the verdict rests on.
    pub provenance: Vec<String>,
}

fn outcome(
    id: &str,
    description: &str,
    pass: bool,
    details: String,
    provenance: &[&str],
) -> CriterionOutcome {
    CriterionOutcome {
        id: id.to_string(),
        description: description.to_string(),
        pass,
        details,
        provenance: provenance.iter().map(|s| s.to_string()).collect(),
    }
}

/// Runs every criterion in a fixed order. Failures never panic; they come
/// back as `pass: false` with the discrepancy in the details.
pub fn run_all(deep: bool) -> Vec<CriterionOutcome> {
    vec![
        psl2_prime_exponents(),
        exponent_table(deep),
        hurwitz_crosscheck(deep),
        sl2_involution_obstruction(),
        genus3_attainment(),
        genus2_bolza(),
        signature_equation(),
        ladder_integer_rungs(),
        abelian_extremal(),
        power_difference_scan(),
        cyclic_sharp_family(),
        z_group_sweep(),
        attaining_rows(),
    ]
}

fn psl2_prime_exponents() -> CriterionOutcome {
    let start = Instant::now();
    let mut ok = true;
    let mut details = String::new();
    for p in [5u64, 7, 11, 13] {
        let expected = (p * p * p - p) / 4;
        match psl2_exponent(p) {
            Ok(e) => {
                ok &= e == expected;
                let _ = write!(details, "p={p}: {e} (expect {expected})  ");
            }
            Err(err) => {
                ok = false;
                let _ = write!(details, "p={p}: error {err}  ");
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs() >= 5 {
        ok = false;
        let _ = write!(details, "budget exceeded: {elapsed:.2?}");
    }
    outcome(
        "exponent-psl2-formula",
        "exp(PSL2(F_p)) = (p^3 - p)/4 for p in {5, 7, 11, 13}",
        ok,
        details,
        &["psl2_exponent"],
    )
}

fn exponent_table(deep: bool) -> CriterionOutcome {
    let start = Instant::now();
    let mut pairs = vec![(7u64, 84u64), (8, 126), (27, 546)];
    if deep {
        pairs.push((125, 19_530));
    }
    let mut ok = true;
    let mut details = String::new();
    for (q, expected) in pairs {
        match psl2_exponent(q) {
            Ok(e) => {
                ok &= e == expected;
                let _ = write!(details, "q={q}: {e} (expect {expected})  ");
            }
            Err(err) => {
                ok = false;
                let _ = write!(details, "q={q}: error {err}  ");
            }
        }
    }
    let elapsed = start.elapsed();
    if deep && elapsed.as_secs() >= 600 {
        ok = false;
        let _ = write!(details, "budget exceeded: {elapsed:.2?}  ");
    }
    if !deep {
        details.push_str("q=125 skipped (deep only)");
    }
    outcome(
        "exponent-table",
        "exponents of the candidate Hurwitz PSL2 groups match the frozen table",
        ok,
        details.trim_end().to_string(),
        &["psl2_exponent"],
    )
}

fn hurwitz_crosscheck(deep: bool) -> CriterionOutcome {
    let q_max = if deep { 27 } else { 13 };
    let (ok, details) = match hurwitz::macbeath_crosscheck(q_max) {
        Ok(r) => {
            let hurwitz_qs: Vec<u64> = r
                .checked
                .iter()
                .filter(|&&(_, h)| h)
                .map(|&(q, _)| q)
                .collect();
            let ok = r.disagreements.is_empty() && r.skipped.is_empty();
            (
                ok,
                format!(
                    "q <= {q_max}: {} prime powers checked, generating: {:?}, disagreements: {:?}",
                    r.checked.len(),
                    hurwitz_qs,
                    r.disagreements
                ),
            )
        }
        Err(err) => (false, format!("error: {err}")),
    };
    outcome(
        "hurwitz-crosscheck",
        "brute-force (2,3,7)-generation agrees with the arithmetic criterion for every prime power",
        ok,
        details,
        &["macbeath_crosscheck", "hurwitz_search", "macbeath_predicate"],
    )
}

fn sl2_involution_obstruction() -> CriterionOutcome {
    let (ok, details) = match build_sl2(7) {
        Ok(g) => {
            let invs = g.elements_of_order(2);
            let central = invs
                .iter()
                .all(|&i| g.generators().iter().all(|&a| g.mul(i, a) == g.mul(a, i)));
            let witness = hurwitz::hurwitz_search(&g);
            let ok = invs.len() == 1 && central && witness.is_none();
            (
                ok,
                format!(
                    "|SL2(F_7)| = {} (divisible by 84), involutions: {} (central: {central}), witness: {}",
                    g.order(),
                    invs.len(),
                    if witness.is_some() { "found" } else { "none" }
                ),
            )
        }
        Err(err) => (false, format!("error: {err}")),
    };
    outcome(
        "sl2-involution-obstruction",
        "SL2(F_7) has a single central involution and no (2,3,7) generating pair",
        ok,
        details,
        &["build_sl2", "elements_of_order", "hurwitz_search"],
    )
}

fn genus3_attainment() -> CriterionOutcome {
    let run = || -> crate::Result<(bool, String)> {
        let sig = Signature::new(0, vec![2, 3, 7])?;
        let genus_exact = genus_from_action(168, &sig);
        let g = crate::fq::build_psl2(7)?;
        let v = genvec_search(&g, &sig);
        let rec = action_record(&g, &sig, v);
        let verdict = main_bound_check(&g, &rec);
        let ok = genus_exact == Rational64::from_integer(3)
            && rec.genus == 3
            && rec.exponent == 84
            && verdict.bound == 84
            && verdict.within_bound
            && verdict.attained
            && verdict.hurwitz_witness
            && verdict.half_order_exponent
            && verdict.hurwitz_order
            && verdict.attainment_consistent;
        Ok((
            ok,
            format!(
                "genus {genus_exact}, |G| = {}, exp = {} = 42(g-1), attained: {}, consistent: {}",
                rec.order, rec.exponent, verdict.attained, verdict.attainment_consistent
            ),
        ))
    };
    let (ok, details) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
    outcome(
        "genus3-attainment",
        "the order-168 simple group attains exp = 42(g-1) at genus 3 via (0; 2,3,7)",
        ok,
        details,
        &["genus_from_action", "genvec_search", "main_bound_check"],
    )
}

fn genus2_bolza() -> CriterionOutcome {
    let run = || -> crate::Result<(bool, String)> {
        let g = build_gl2(3)?;
        let sig = Signature::new(0, vec![2, 3, 8])?;
        let v = genvec_search(&g, &sig);
        let witnessed = v.is_some();
        let rec = action_record(&g, &sig, v);
        let verdict = main_bound_check(&g, &rec);
        let divisible = divisibility_check(&rec)?;
        let ok = witnessed
            && rec.genus == 2
            && rec.order == 48
            && rec.exponent == 24
            && rec.order / rec.exponent == 2
            && 2 * (rec.genus - 1) == 2
            && divisible
            && verdict.within_bound
            && !verdict.attained
            && verdict.attainment_consistent;
        Ok((
            ok,
            format!(
                "genus {}, |G| = {}, exp = {}, |G|/exp = {} = 2(g-1), witnessed: {witnessed}",
                rec.genus,
                rec.order,
                rec.exponent,
                rec.order / rec.exponent
            ),
        ))
    };
    let (ok, details) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
    outcome(
        "genus2-bolza",
        "the 48-element matrix group acts at genus 2 via (0; 2,3,8) with |G|/exp = 2(g-1)",
        ok,
        details,
        &["build_gl2", "genvec_search", "main_bound_check", "divisibility_check"],
    )
}

fn signature_equation() -> CriterionOutcome {
    let mut ok = true;
    let mut details = String::new();
    let mut positive_genus = Vec::new();
    for e in EQUATION_EXPONENTS {
        match normalized_equation_solutions(e) {
            Ok(sols) => {
                let mut spherical = 0usize;
                for s in &sols {
                    if s.h == 0 {
                        ok &= s.periods.len() <= 5 && !s.infeasible;
                        spherical += 1;
                    } else {
                        ok &= s.infeasible;
                        positive_genus.push((e, s.h, s.periods.clone()));
                    }
                }
                let _ = write!(details, "e={e}: {spherical} spherical  ");
            }
            Err(err) => {
                ok = false;
                let _ = write!(details, "e={e}: error {err}  ");
            }
        }
    }
    ok &= positive_genus == [(2, 1, vec![2])];
    let _ = write!(details, "positive-genus: {positive_genus:?}  ");

    // the lone positive-genus solution never admits a generating vector
    // for a group of exponent 2, which is (C_2)^k
    let sig = match Signature::new(1, vec![2]) {
        Ok(s) => s,
        Err(e) => {
            return outcome(
                "signature-equation",
                "",
                false,
                format!("error: {e}"),
                &["normalized_equation_solutions", "genvec_search"],
            )
        }
    };
    for k in 1..=6u32 {
        match build_group(&GroupSpec::Abelian(vec![2; k as usize])) {
            Ok(g) => {
                let rejected = genvec_search(&g, &sig).is_none();
                ok &= rejected;
                if !rejected {
                    let _ = write!(details, "(C2)^{k} unexpectedly admits (1; 2)  ");
                }
            }
            Err(err) => {
                ok = false;
                let _ = write!(details, "(C2)^{k}: error {err}  ");
            }
        }
    }
    details.push_str("(1; 2) rejected for (C2)^k, k <= 6");
    outcome(
        "signature-equation",
        "the normalized signature equation has only spherical solutions with r <= 5, and its lone positive-genus solution is infeasible",
        ok,
        details,
        &["normalized_equation_solutions", "genvec_search"],
    )
}

fn ladder_integer_rungs() -> CriterionOutcome {
    let (ok, details) = match multiplier_ladder(LADDER_MIN_THRESHOLD) {
        Ok(ladder) => {
            let integers: Vec<i64> = ladder
                .rows
                .iter()
                .filter(|r| r.multiplier.is_integer())
                .map(|r| r.multiplier.to_integer())
                .collect();
            let above_32: Vec<i64> = integers.iter().copied().filter(|&m| m > 32).collect();
            let absent = [44, 32, 28].iter().all(|m| !integers.contains(m));
            let ok = above_32 == [84, 48, 40, 36] && absent;
            (
                ok,
                format!(
                    "integer rungs above 32: {above_32:?}; 44, 32, 28 absent: {absent}; {} rungs total from threshold {}",
                    ladder.rows.len(),
                    LADDER_MIN_THRESHOLD
                ),
            )
        }
        Err(err) => (false, format!("error: {err}")),
    };
    outcome(
        "multiplier-ladder",
        "the integer multipliers above 32 are exactly 36, 40, 48, 84",
        ok,
        details,
        &["multiplier_ladder"],
    )
}

fn abelian_extremal() -> CriterionOutcome {
    let start = Instant::now();
    let (mut ok, details) = match abelian_extremal_verify(9) {
        Ok(r) => {
            let expected_accepted = ["C2xC2", "C2xC6", "C2xC2xC2", "C4xC4", "C2xC2xC2xC2"];
            let rejected: Vec<(Vec<u64>, u64, Option<u64>)> = r
                .candidates
                .iter()
                .filter(|c| !c.accepted)
                .map(|c| (c.invariants.clone(), c.genus, c.found_genus))
                .collect();
            let expected_rejected = [
                (vec![2, 4], 2, Some(3)),
                (vec![2, 2, 4], 3, Some(5)),
                (vec![2, 2, 2, 2, 2], 9, None),
            ];
            let ok = r.accepted == expected_accepted && rejected == expected_rejected;
            (
                ok,
                format!("accepted: {:?}; rejected: {rejected:?}", r.accepted),
            )
        }
        Err(err) => (false, format!("error: {err}")),
    };
    let elapsed = start.elapsed();
    let details = if elapsed.as_secs() >= 120 {
        ok = false;
        format!("{details}  budget exceeded: {elapsed:.2?}")
    } else {
        details
    };
    outcome(
        "abelian-extremal",
        "exactly five abelian groups of order 2(g-1)exp act minimally at their genus",
        ok,
        details,
        &["abelian_extremal_verify", "min_genus"],
    )
}

fn power_difference_scan() -> CriterionOutcome {
    let r = hurwitz::nt_scan(200);
    let ok = r.rows.len() == 200
        && r.violations.is_empty()
        && r.ord_7_mod_9 == 3
        && r.m_divisibility_ok
        && r.n_congruence_ok
        && r.cube_identity_ok
        && r.cube_identity_limit == 1_000_000;
    outcome(
        "power-difference-scan",
        "3^(4n+2) - 1 is never 8 times a power of 7, with the supporting congruences",
        ok,
        format!(
            "n <= {}: violations {:?}, ord(7 mod 9) = {}, congruences ok: {}, cubes to {} ok: {}",
            r.n_max,
            r.violations,
            r.ord_7_mod_9,
            r.m_divisibility_ok && r.n_congruence_ok,
            r.cube_identity_limit,
            r.cube_identity_ok
        ),
        &["nt_scan"],
    )
}

fn cyclic_sharp_family() -> CriterionOutcome {
    let mut ok = true;
    let mut details = String::new();
    for genus in 2..=20u64 {
        let n = 4 * genus + 2;
        let run = || -> crate::Result<bool> {
            let g = build_group(&GroupSpec::Cyclic(n))?;
            let sig = Signature::new(0, vec![2, 2 * genus + 1, 4 * genus + 2])?;
            let v = genvec_search(&g, &sig);
            let witnessed = v.as_ref().is_some_and(|v| verify_genvec(&g, &sig, v));
            let rec = action_record(&g, &sig, v);
            Ok(witnessed
                && rec.genus == genus
                && rec.exponent == n
                && rec.exponent == rec.order
                && divisibility_check(&rec)?)
        };
        match run() {
            Ok(true) => {}
            Ok(false) => {
                ok = false;
                let _ = write!(details, "genus {genus}: mismatch  ");
            }
            Err(e) => {
                ok = false;
                let _ = write!(details, "genus {genus}: error {e}  ");
            }
        }
    }
    if ok {
        details = "C_{4g+2} realizes (0; 2, 2g+1, 4g+2) with exp = 4g+2 for every genus 2..=20"
            .to_string();
    }
    outcome(
        "cyclic-sharp-family",
        "the cyclic order-(4g+2) action is witnessed at every genus 2..=20",
        ok,
        details,
        &["genvec_search", "verify_genvec", "divisibility_check"],
    )
}

/// Independent re-check of a metacyclic decomposition: orders, coprimality,
/// the conjugation relation, and generation.
fn zassenhaus_witness_ok(g: &GroupHandle, form: &crate::group::ZassenhausForm) -> bool {
    form.m % 2 == 1
        && form.m * form.n == g.order()
        && arith::gcd(form.m, form.n) == 1
        && g.element_order(form.x) == form.m
        && g.element_order(form.y) == form.n
        && g.conjugate(form.y, form.x) == g.pow(form.x, form.k)
        && g.generates(&[form.x, form.y])
}

fn z_group_sweep() -> CriterionOutcome {
    let specs = builtin_catalog();
    let mut ok = true;
    let mut details = String::new();
    let mut swept = 0usize;
    let mut z_count = 0usize;
    for spec in &specs {
        let Ok(order) = spec.validated_order() else {
            ok = false;
            let _ = write!(details, "{spec}: invalid  ");
            continue;
        };
        if order > 2000 {
            continue;
        }
        let g = match build_group(spec) {
            Ok(g) => g,
            Err(e) => {
                ok = false;
                let _ = write!(details, "{spec}: error {e}  ");
                continue;
            }
        };
        swept += 1;
        let full_exponent = g.exponent() == g.order();
        let z = is_z_group(&g);
        if full_exponent != z {
            ok = false;
            let _ = write!(details, "{spec}: exp = |G| is {full_exponent} but Z-group is {z}  ");
            continue;
        }
        if z {
            z_count += 1;
            match zassenhaus_decompose(&g) {
                Ok(Some(form)) if zassenhaus_witness_ok(&g, &form) => {}
                Ok(Some(_)) => {
                    ok = false;
                    let _ = write!(details, "{spec}: decomposition fails re-check  ");
                }
                Ok(None) => {
                    ok = false;
                    let _ = write!(details, "{spec}: no decomposition found  ");
                }
                Err(e) => {
                    ok = false;
                    let _ = write!(details, "{spec}: error {e}  ");
                }
            }
        }
    }

    let mut actions: Vec<ActionRecord> = Vec::new();
    for (_, rec) in standard_actions() {
        actions.push(rec);
    }
    actions.extend(exponent24_occurrences(&specs, 50));
    match abelian_extremal_verify(9) {
        Ok(r) => {
            for c in r.candidates {
                if let (Some(sig), witness @ Some(_)) = (c.signature, c.witness) {
                    if let Ok(g) = build_group(&GroupSpec::Abelian(c.invariants.clone())) {
                        actions.push(action_record(&g, &sig, witness));
                    }
                }
            }
        }
        Err(e) => {
            ok = false;
            let _ = write!(details, "extremal scan: error {e}  ");
        }
    }
    let mut divisible = 0usize;
    for rec in &actions {
        match divisibility_check(rec) {
            Ok(true) => divisible += 1,
            Ok(false) => {
                ok = false;
                let _ = write!(details, "{}: (|G|/exp) does not divide 2(g-1)  ", rec.group);
            }
            Err(e) => {
                ok = false;
                let _ = write!(details, "{}: error {e}  ", rec.group);
            }
        }
    }
    let _ = write!(
        details,
        "{swept} groups swept ({z_count} Z-groups decomposed), {divisible}/{} witnessed actions divisible",
        actions.len()
    );
    outcome(
        "z-group-sweep",
        "exp = |G| coincides with all-Sylow-cyclic across the catalog, and |G|/exp divides 2(g-1) on every witnessed action",
        ok,
        details,
        &["builtin_catalog", "is_z_group", "zassenhaus_decompose", "divisibility_check"],
    )
}

fn attaining_rows() -> CriterionOutcome {
    let rows = attaining_genera(50);
    let got: Vec<(u64, u64, u64)> = rows.iter().map(|r| (r.p, r.genus, r.surface_count)).collect();
    let expected = [
        (7u64, 3u64, 1u64),
        (13, 14, 3),
        (29, 146, 3),
        (41, 411, 3),
        (43, 474, 3),
    ];
    let names_ok = rows.iter().all(|r| r.group == format!("PSL2({})", r.p));
    let ok = got == expected && names_ok;
    outcome(
        "attaining-genera",
        "the genera attaining the bound for p <= 50 are exactly 3, 14, 146, 411, 474",
        ok,
        format!("rows: {got:?}"),
        &["attaining_genera"],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_checklist_passes() {
        let outcomes = run_all(false);
        assert_eq!(outcomes.len(), 13);
        for o in &outcomes {
            assert!(o.pass, "{}: {}", o.id, o.details);
        }
        let ids: Vec<&str> = outcomes.iter().map(|o| o.id.as_str()).collect();
        assert_eq!(
            ids,
            [
                "exponent-psl2-formula",
                "exponent-table",
                "hurwitz-crosscheck",
                "sl2-involution-obstruction",
                "genus3-attainment",
                "genus2-bolza",
                "signature-equation",
                "multiplier-ladder",
                "abelian-extremal",
                "power-difference-scan",
                "cyclic-sharp-family",
                "z-group-sweep",
                "attaining-genera"
            ]
        );
    }

    #[test]
    fn outcomes_serialize() {
        let o = outcome("demo", "a demo criterion", true, "fine".to_string(), &["op"]);
        let text = serde_json::to_string(&o).unwrap();
        assert!(text.contains("\"pass\":true"));
        assert!(text.contains("\"provenance\":[\"op\"]"));
    }

    #[test]
    fn passing_details_are_deterministic() {
        let a = run_all(false);
        let b = run_all(false);
        assert_eq!(a, b);
    }
}
