//! Look for counterexamples to the conjectured condition. Samples that satisfy
//! it while failing the proven one are the interesting ones.

use berge_hamilton::harness::{conjecture_search, CampaignConfig};

fn main() -> berge_hamilton::Result<()> {
    for (n, r) in [(7, 3), (9, 3), (11, 4)] {
        let report = conjecture_search(&CampaignConfig::conjecture(n, r, 300, 1))?;
        let c = report.counts;
        println!(
            "n={n} r={r}: pass={} fail={} unknown={} vacuous={}",
            c.pass, c.fail, c.unknown, c.vacuous
        );
        for x in &report.counterexamples {
            println!(
                "  candidate at trial {}: reverified={}",
                x.trial,
                x.reverify()?
            );
        }
    }
    Ok(())
}
