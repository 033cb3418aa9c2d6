//! One PASS/FAIL line per acceptance criterion.
//!
//! Two literal claims are known to be false and are reported as FAIL with a
//! counterexample rather than relaxed. The run itself fails only if the set
//! of failing criteria differs from that list.

use projsys::verify::run_suite_with;

/// (criterion, why it cannot pass as stated)
const KNOWN_FALSE: [(&str, &str); 2] = [
    (
        "6a",
        "the threshold n > s(q+1)+k−2 is one too low: union(full_space(3,2), full_space(3,2)) = \
         [14,3,8]_2 has t = 2 and repeated points, and [7,5,2]_2 with a repeated point misses \
         Griesmer; both forcing conclusions hold from n > s(q+1)+k−1 on (criterion 6b)",
    ),
    (
        "7b",
        "d* = d needs the point on a secant; a point on no maximal hyperplane shortens to a \
         larger d*. Restricted to points on a secant the claim holds (7b.secant)",
    ),
];

fn main() {
    let seed = std::env::var("PROJSYS_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    let results = run_suite_with(seed, |r| println!("{}", r.line()));
    let failing: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    for (id, why) in KNOWN_FALSE {
        if failing.contains(&id) {
            println!("note {id}: {why}");
        }
    }
    let expected: Vec<&str> = KNOWN_FALSE.iter().map(|k| k.0).collect();
    let passed = results.len() - failing.len();
    println!("{passed} of {} criteria pass", results.len());
    if failing != expected {
        println!("unexpected outcome: failing {failing:?}, documented {expected:?}");
        std::process::exit(1);
    }
}
