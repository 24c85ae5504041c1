//! (2,3,7)-generation: brute-force witnesses, Macbeath's arithmetic
//! criterion for PSL2, the exponent scan over the small-characteristic
//! candidates, and the exact divisibility scan behind the claim that
//! 3^(4n+2) - 1 is never 8 times a power of 7.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith;
use crate::error::Result;
use crate::fq;
use crate::group::{self, GroupHandle};

// =====================================================================
// Witness search
// =====================================================================

/// A pair generating G with sigma^2 = tau^3 = (sigma tau)^7 = identity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HurwitzWitness {
    pub sigma: u32,
    pub tau: u32,
    pub sigma_repr: String,
    pub tau_repr: String,
}

/// Lexicographically least valid (sigma, tau) by canonical index, or None.
///
/// sigma only runs over the least-index representative of each involution
/// class: conjugating a valid pair keeps it valid, so the least valid
/// sigma overall is always a class representative, and the scan below
/// still returns the global lexicographic minimum.
pub fn hurwitz_search(g: &GroupHandle) -> Option<HurwitzWitness> {
    if g.order() % 42 != 0 {
        return None;
    }
    let taus = g.elements_of_order(3);
    for sigma in g.class_reps_of_order(2) {
        for &tau in &taus {
            if g.element_order(g.mul(sigma, tau)) == 7 && g.generates(&[sigma, tau]) {
                assert_eq!(g.order() % 84, 0, "{}: Hurwitz order", g.label());
                assert!(group::is_perfect(g), "{}: Hurwitz groups are perfect", g.label());
                return Some(HurwitzWitness {
                    sigma,
                    tau,
                    sigma_repr: g.format_element(sigma),
                    tau_repr: g.format_element(tau),
                });
            }
        }
    }
    None
}

/// Re-checks a witness from scratch: the three order relations by direct
/// powering plus full generation by closure, independent of however the
/// witness was produced.
pub fn verify_witness(g: &GroupHandle, w: &HurwitzWitness) -> bool {
    let id = GroupHandle::IDENTITY;
    let st = g.mul(w.sigma, w.tau);
    w.sigma != id
        && g.pow(w.sigma, 2) == id
        && g.element_order(w.tau) == 3
        && g.pow(st, 7) == id
        && g.pow(st, 1) != id
        && (1..7).all(|e| g.pow(st, e) != id)
        && g.generates(&[w.sigma, w.tau])
}

// =====================================================================
// Macbeath's criterion
// =====================================================================

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum MacbeathCase {
    /// q = 7.
    I,
    /// q an odd prime congruent to +-1 mod 7.
    II,
    /// q = p^3 with p congruent to +-2 or +-3 mod 7.
    III,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MacbeathAnswer {
    pub q: u64,
    pub hurwitz: bool,
    pub case: Option<MacbeathCase>,
    /// Distinct surfaces with this automorphism group at the minimal
    /// genus: one in cases I and III, three in case II, zero otherwise.
    pub surface_count: u64,
}

pub fn macbeath_predicate(q: u64) -> Result<MacbeathAnswer> {
    let (p, n) = arith::prime_power(q).ok_or(crate::Error::NotPrimePower(q))?;
    let case = if q == 7 {
        Some(MacbeathCase::I)
    } else if n == 1 && (p % 7 == 1 || p % 7 == 6) {
        Some(MacbeathCase::II)
    } else if n == 3 && matches!(p % 7, 2 | 3 | 4 | 5) {
        Some(MacbeathCase::III)
    } else {
        None
    };
    let surface_count = match case {
        Some(MacbeathCase::II) => 3,
        Some(_) => 1,
        None => 0,
    };
    Ok(MacbeathAnswer {
        q,
        hurwitz: case.is_some(),
        case,
        surface_count,
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MacbeathCrosscheck {
    pub q_max: u64,
    /// (q, is Hurwitz) for every checked prime power, both routes agreeing.
    pub checked: Vec<(u64, bool)>,
    /// q where the brute-force search contradicts the criterion.
    pub disagreements: Vec<u64>,
    /// Prime powers whose PSL2 exceeded the order cap.
    pub skipped: Vec<u64>,
}

/// Brute-force hurwitz_search over PSL2(F_q) against the arithmetic
/// criterion, for every prime power q up to q_max.
pub fn macbeath_crosscheck(q_max: u64) -> Result<MacbeathCrosscheck> {
    let mut checked = Vec::new();
    let mut disagreements = Vec::new();
    let mut skipped = Vec::new();
    for q in 2..=q_max {
        if arith::prime_power(q).is_none() {
            continue;
        }
        let predicted = macbeath_predicate(q)?.hurwitz;
        let g = match fq::build_psl2(q) {
            Ok(g) => g,
            Err(crate::Error::OrderCapExceeded { .. }) => {
                skipped.push(q);
                continue;
            }
            Err(e) => return Err(e),
        };
        let found = hurwitz_search(&g).is_some();
        if found != predicted {
            disagreements.push(q);
        }
        checked.push((q, found));
    }
    Ok(MacbeathCrosscheck {
        q_max,
        checked,
        disagreements,
        skipped,
    })
}

// =====================================================================
// Exponent scan over the small-characteristic candidates
// =====================================================================

/// Is e of the shape 2 * 3 * 7^n with n >= 1?
pub fn is_exponent_form_2_3_7n(e: u64) -> bool {
    if e % 42 != 0 {
        return false;
    }
    let rest = e / 6;
    rest == 7u64.pow(arith::valuation(rest, 7))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ExponentScanRow {
    pub q: u64,
    pub group_order: u64,
    pub exponent: u64,
    pub exponent_factorization: Vec<(u64, u32)>,
    pub has_excluded_form: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ExponentScan {
    pub q_max: u64,
    pub candidates: Vec<ExponentScanRow>,
    /// True when no candidate exponent is 2 * 3 * 7^n.
    pub all_clear: bool,
}

/// Candidates are the Hurwitz PSL2(F_q) with q a power of 2, 3, 5, or 7;
/// Macbeath's criterion cuts that to q in {7, 8, 27, 125} regardless of
/// q_max. Each candidate's exponent is computed by full enumeration.
pub fn exponent42_scan(q_max: u64) -> Result<ExponentScan> {
    let mut candidates = Vec::new();
    for q in 2..=q_max {
        match arith::prime_power(q) {
            Some((p, _)) if matches!(p, 2 | 3 | 5 | 7) => {}
            _ => continue,
        }
        if !macbeath_predicate(q)?.hurwitz {
            continue;
        }
        let g = fq::build_psl2(q)?;
        let exponent = g.exponent();
        candidates.push(ExponentScanRow {
            q,
            group_order: g.order(),
            exponent,
            exponent_factorization: arith::factorize(exponent),
            has_excluded_form: is_exponent_form_2_3_7n(exponent),
        });
    }
    let all_clear = candidates.iter().all(|r| !r.has_excluded_form);
    Ok(ExponentScan {
        q_max,
        candidates,
        all_clear,
    })
}

// =====================================================================
// The 3^(4n+2) - 1 divisibility scan
// =====================================================================

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NtRow {
    pub n: u64,
    /// (3^(2n+1))^2 - 1 in decimal.
    pub value: String,
    pub v7: u32,
    /// value / (8 * 7^v7) in decimal.
    pub cofactor: String,
    pub cofactor_is_one: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NtScanReport {
    pub n_max: u64,
    pub rows: Vec<NtRow>,
    /// n whose cofactor collapsed to 1; must stay empty.
    pub violations: Vec<u64>,
    pub ord_7_mod_9: u64,
    /// 7^m = 1 (mod 9) exactly when 3 | m, for all m <= n_max.
    pub m_divisibility_ok: bool,
    /// 6 | 4n+2 exactly when n = 1 (mod 3), for all n <= n_max.
    pub n_congruence_ok: bool,
    /// x^3 - y^3 = 1 with 0 <= y < x has only (1, 0), x up to the limit.
    pub cube_identity_ok: bool,
    pub cube_identity_limit: u64,
}

pub fn nt_scan(n_max: u64) -> NtScanReport {
    let eight = BigUint::from(8u32);
    let seven = BigUint::from(7u32);
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for n in 1..=n_max {
        let value = BigUint::from(3u32).pow(4 * n as u32 + 2) - BigUint::one();
        let mut cofactor = &value / &eight;
        assert_eq!(&cofactor * &eight, value, "2-adic part is exactly 8");
        let mut v7 = 0u32;
        while (&cofactor % &seven).is_zero() {
            cofactor /= &seven;
            v7 += 1;
        }
        let cofactor_is_one = cofactor.is_one();
        if cofactor_is_one {
            violations.push(n);
        }
        rows.push(NtRow {
            n,
            value: value.to_string(),
            v7,
            cofactor: cofactor.to_string(),
            cofactor_is_one,
        });
    }

    let ord_7_mod_9 = arith::ord_mod(7, 9);
    let m_divisibility_ok =
        (1..=n_max).all(|m| (arith::pow_mod(7, m, 9) == 1) == (m % 3 == 0));
    let n_congruence_ok = (1..=n_max).all(|n| ((4 * n + 2) % 6 == 0) == (n % 3 == 1));

    let cube_identity_limit = 1_000_000;
    // x = 1, y = 0 is a solution; the scan shows x >= 2 never is, since
    // x^3 - 1 then sits strictly between (x-1)^3 and x^3
    let cube_identity_ok =
        (2..=cube_identity_limit).all(|x: u128| (x - 1).pow(3) < x.pow(3) - 1);

    NtScanReport {
        n_max,
        rows,
        violations,
        ord_7_mod_9,
        m_divisibility_ok,
        n_congruence_ok,
        cube_identity_ok,
        cube_identity_limit: cube_identity_limit as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::{build_psl2, build_sl2};
    use crate::group::{build_group, GroupSpec};

    #[test]
    fn psl2_f7_witness_is_lex_least() {
        let g = build_psl2(7).unwrap();
        let w = hurwitz_search(&g).expect("PSL2(F7) is a Hurwitz group");
        assert!(verify_witness(&g, &w));

        // oracle: first valid pair over all involutions, unreduced
        let mut oracle = None;
        'outer: for sigma in g.elements_of_order(2) {
            for tau in g.elements_of_order(3) {
                if g.element_order(g.mul(sigma, tau)) == 7 && g.generates(&[sigma, tau]) {
                    oracle = Some((sigma, tau));
                    break 'outer;
                }
            }
        }
        assert_eq!(oracle, Some((w.sigma, w.tau)));
    }

    #[test]
    fn hurwitz_positive_cases() {
        for q in [7, 8, 13] {
            let g = build_psl2(q).unwrap();
            let w = hurwitz_search(&g).unwrap_or_else(|| panic!("PSL2({q}) must generate"));
            assert!(verify_witness(&g, &w), "q = {q}");
        }
    }

    #[test]
    fn hurwitz_negative_cases() {
        // 7 does not divide |PSL2(F5)| = 60
        assert!(hurwitz_search(&build_psl2(5).unwrap()).is_none());
        // PSL2(F9) has order 360 = 42 * 60/7; 7 does not divide it either
        assert!(hurwitz_search(&build_psl2(9).unwrap()).is_none());
        // SL2(F7): the single involution -I is central, so no witness
        let sl27 = build_sl2(7).unwrap();
        assert_eq!(sl27.elements_of_order(2).len(), 1);
        assert!(hurwitz_search(&sl27).is_none());
        // PSL2(F11): order divisible by 11 only, criterion says no
        assert!(hurwitz_search(&build_psl2(11).unwrap()).is_none());
        // solvable groups can't qualify
        assert!(hurwitz_search(&build_group(&GroupSpec::Cyclic(84)).unwrap()).is_none());
    }

    #[test]
    fn corrupted_witness_fails_verification() {
        let g = build_psl2(7).unwrap();
        let w = hurwitz_search(&g).unwrap();
        let mut bad = w.clone();
        bad.sigma = GroupHandle::IDENTITY;
        assert!(!verify_witness(&g, &bad));
        let mut bad = w.clone();
        bad.tau = bad.sigma;
        assert!(!verify_witness(&g, &bad));
    }

    #[test]
    fn macbeath_cases() {
        let a = macbeath_predicate(7).unwrap();
        assert_eq!((a.hurwitz, a.case, a.surface_count), (true, Some(MacbeathCase::I), 1));
        let a = macbeath_predicate(13).unwrap();
        assert_eq!((a.hurwitz, a.case, a.surface_count), (true, Some(MacbeathCase::II), 3));
        let a = macbeath_predicate(43).unwrap();
        assert_eq!((a.hurwitz, a.case, a.surface_count), (true, Some(MacbeathCase::II), 3));
        let a = macbeath_predicate(8).unwrap();
        assert_eq!((a.hurwitz, a.case, a.surface_count), (true, Some(MacbeathCase::III), 1));
        let a = macbeath_predicate(27).unwrap();
        assert_eq!((a.hurwitz, a.case, a.surface_count), (true, Some(MacbeathCase::III), 1));
        let a = macbeath_predicate(125).unwrap();
        assert_eq!((a.hurwitz, a.case, a.surface_count), (true, Some(MacbeathCase::III), 1));
        for q in [2, 3, 4, 5, 9, 11, 16, 25, 32, 49, 121, 343] {
            let a = macbeath_predicate(q).unwrap();
            assert!(!a.hurwitz, "q = {q}");
            assert_eq!(a.surface_count, 0);
        }
        assert!(matches!(
            macbeath_predicate(12),
            Err(crate::Error::NotPrimePower(12))
        ));
    }

    #[test]
    fn crosscheck_up_to_13() {
        let r = macbeath_crosscheck(13).unwrap();
        assert!(r.disagreements.is_empty());
        assert!(r.skipped.is_empty());
        let qs: Vec<u64> = r.checked.iter().map(|&(q, _)| q).collect();
        assert_eq!(qs, [2, 3, 4, 5, 7, 8, 9, 11, 13]);
        let hurwitz: Vec<u64> = r
            .checked
            .iter()
            .filter(|&&(_, h)| h)
            .map(|&(q, _)| q)
            .collect();
        assert_eq!(hurwitz, [7, 8, 13]);
    }

    #[test]
    fn excluded_form_detector() {
        assert!(is_exponent_form_2_3_7n(42));
        assert!(is_exponent_form_2_3_7n(294)); // 2 * 3 * 7^2
        assert!(is_exponent_form_2_3_7n(2058)); // 2 * 3 * 7^3
        for e in [6, 84, 126, 546, 19530, 168, 210, 441] {
            assert!(!is_exponent_form_2_3_7n(e), "e = {e}");
        }
    }

    #[test]
    fn exponent_scan_default_range() {
        let r = exponent42_scan(27).unwrap();
        let qs: Vec<u64> = r.candidates.iter().map(|c| c.q).collect();
        assert_eq!(qs, [7, 8, 27]);
        let exps: Vec<u64> = r.candidates.iter().map(|c| c.exponent).collect();
        assert_eq!(exps, [84, 126, 546]);
        assert_eq!(
            r.candidates[2].exponent_factorization,
            [(2, 1), (3, 1), (7, 1), (13, 1)]
        );
        assert!(r.all_clear);
    }

    #[test]
    fn nt_scan_small_range() {
        let r = nt_scan(30);
        assert!(r.violations.is_empty());
        assert_eq!(r.ord_7_mod_9, 3);
        assert!(r.m_divisibility_ok && r.n_congruence_ok && r.cube_identity_ok);

        let first = &r.rows[0];
        assert_eq!((first.n, &*first.value), (1, "728")); // 8 * 7 * 13
        assert_eq!((first.v7, &*first.cofactor), (1, "13"));

        for row in &r.rows {
            let value: BigUint = row.value.parse().unwrap();
            // 3^(4n+2) = 9^odd = 9 (mod 16), so the 2-part is exactly 8
            assert_eq!(value.clone() % 16u32, BigUint::from(8u32), "n = {}", row.n);
            // 3^(4n+2) = 4 (mod 5), so 5 never divides the value
            assert_eq!(value % 5u32, BigUint::from(3u32), "n = {}", row.n);
            let cofactor: BigUint = row.cofactor.parse().unwrap();
            assert!(cofactor > BigUint::one(), "n = {}", row.n);
            assert_eq!(cofactor % 2u32, BigUint::one(), "cofactor odd, n = {}", row.n);
        }

        // 7 divides the value exactly when n = 1 (mod 3)
        for row in &r.rows {
            assert_eq!(row.v7 >= 1, row.n % 3 == 1, "n = {}", row.n);
        }
    }

    #[test]
    fn hurwitz_psl2_f27() {
        // the q = 27 case of the candidate list, by direct search
        let g = build_psl2(27).unwrap();
        assert_eq!(g.order(), 9828);
        let w = hurwitz_search(&g).expect("PSL2(F27) is a Hurwitz group");
        assert!(verify_witness(&g, &w));
        assert_eq!(g.exponent(), 546);
    }
}
