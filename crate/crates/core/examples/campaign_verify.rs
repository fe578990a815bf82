//! Sample hypergraphs satisfying the uniform condition and confirm each is
//! Hamiltonian. Prints the summary block of the report.

use berge_hamilton::harness::{verify_theorem_campaign, CampaignConfig};
use berge_hamilton::Theorem;

fn main() -> berge_hamilton::Result<()> {
    let mut config = CampaignConfig::verify(Theorem::RUniform, 9, Some(3), 60, 7);
    config.threads = 2;
    let report = verify_theorem_campaign(&config)?;
    let text = report.to_string();
    // trial lines first, summary last
    let summary: Vec<&str> = text.lines().filter(|l| !l.starts_with("trial")).collect();
    println!("{}", summary.join("\n"));
    assert_eq!(report.counts.fail, 0);
    Ok(())
}
