//! Runs `selftest` twice through the command line and prints one line per
//! criterion. The eighth criterion is byte equality of the two reports.

use serde_json::Value;

fn selftest() -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = towerlim::cli::run_with(["towerlim", "selftest"], &mut std::io::empty(), &mut out, &mut err);
    (code, out)
}

fn main() {
    let (code, first) = selftest();
    let (_, second) = selftest();
    let report: Value = serde_json::from_slice(&first).expect("selftest prints JSON");
    let mut failed = 0;
    for a in report["assertions"].as_array().expect("assertions") {
        let pass = a["pass"].as_bool().unwrap();
        let id = a["name"].as_str().unwrap().trim_start_matches("criterion_");
        let name = a["values"]["name"].as_str().unwrap();
        let detail = a["values"]["detail"].as_str().unwrap();
        println!("criterion {id}: {} - {name} ({detail})", if pass { "PASS" } else { "FAIL" });
        failed += usize::from(!pass);
    }
    let same = first == second;
    println!(
        "criterion 8: {} - selftest reports are byte-identical ({} bytes)",
        if same { "PASS" } else { "FAIL" },
        first.len()
    );
    failed += usize::from(!same);
    if failed > 0 || code != 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
