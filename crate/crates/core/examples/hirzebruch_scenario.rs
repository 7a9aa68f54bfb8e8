//! Evaluates a scenario file: two fibers of multiplicity 3 through the
//! blown-up point of the plane. Defaults to the bundled data file.

use miranda::scenario::Scenario;

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/hirzebruch_f1.json").to_string());
    let text = std::fs::read_to_string(&path).expect("readable scenario file");
    let report = Scenario::from_json(&text).unwrap().evaluate().unwrap();
    println!("lambda = {}", report.lambda);
    for b in &report.blowdowns {
        println!(
            "contract {}: delta = {}, log-extremal {}, {:?}",
            b.class, b.delta, b.log_extremal, b.verdict
        );
    }
    println!("{}", serde_json::to_string_pretty(&report.mmp.status).unwrap());
}
