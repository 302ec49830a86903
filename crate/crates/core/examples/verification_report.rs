//! Run a verification suite in-process and inspect the report.

use spinc_localization::suite::{run, RunConfig, Suite};

fn main() -> spinc_localization::Result<()> {
    let config = RunConfig { samples: 20, ..RunConfig::default() };
    let report = run(Suite::Genus, &config)?;
    print!("{}", report.to_text());

    let json: serde_json::Value = serde_json::from_str(&report.to_json()).expect("valid json");
    println!("json summary: {}", json["summary"]);
    for failure in report.failures() {
        println!("failed: {}", failure.id);
    }
    Ok(())
}
