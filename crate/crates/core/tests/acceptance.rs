//! One pass/fail line per acceptance criterion. Positional arguments filter
//! criteria by number or by a substring of the title.

use std::process::ExitCode;

use sigcocycle::acceptance::{self, Config, CriterionReport};

fn main() -> ExitCode {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let cfg = Config::default();
    let criteria: [(u32, &str, &dyn Fn() -> CriterionReport); 8] = [
        (1, "calibration", &acceptance::criterion1),
        (2, "cocycle identity", &|| acceptance::criterion2(&cfg)),
        (3, "divisibility", &|| acceptance::criterion3(&cfg)),
        (4, "dual oracle", &|| acceptance::criterion4(&cfg)),
        (5, "group orders", &acceptance::criterion5),
        (6, "subgroup structure", &acceptance::criterion6),
        (7, "covering numbers", &|| acceptance::criterion7(&cfg)),
        (8, "property suites", &|| acceptance::criterion8(&cfg)),
    ];
    let mut failed = Vec::new();
    let mut ran = 0;
    for (id, name, run) in criteria {
        if !filters.is_empty() && !filters.iter().any(|f| f == &id.to_string() || name.contains(f.as_str())) {
            continue;
        }
        let r = run();
        println!("{r}");
        ran += 1;
        if !r.passed {
            failed.push(id);
        }
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed: {failed:?}");
        ExitCode::FAILURE
    }
}
