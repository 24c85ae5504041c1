//! The thirteen-point checklist as a test target, one printed line per
//! criterion. Run the ignored test for the deep variant, which adds the
//! 𝔽₁₂₅ exponent and the extended Hurwitz crosscheck.

use exatlas_core::verify::run_all;

fn report(deep: bool) {
    let outcomes = run_all(deep);
    assert_eq!(outcomes.len(), 13);
    let mut failed = 0;
    for o in &outcomes {
        let tag = if o.pass { "[PASS]" } else { "[FAIL]" };
        println!("{tag} {}: {}", o.id, o.description);
        if !o.pass {
            println!("       {}", o.details);
            failed += 1;
        }
    }
    assert_eq!(failed, 0, "{failed} of 13 criteria failed");
}

#[test]
fn acceptance_checklist() {
    report(false);
}

#[test]
#[ignore = "adds the two long enumerations; minutes, not seconds"]
fn acceptance_checklist_deep() {
    report(true);
}
