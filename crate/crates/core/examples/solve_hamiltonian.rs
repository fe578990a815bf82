//! Decide Hamiltonicity with the exact solver and check the answer against
//! the brute-force oracle and the certificate verifier.

use berge_hamilton::harness::{sample_hypergraph, Profile, Uniformity};
use berge_hamilton::io::Certificate;
use berge_hamilton::solver::is_hamiltonian_bruteforce;
use berge_hamilton::{find_hamiltonian_berge_cycle, verify_berge_cycle, Outcome, SearchBudget};

fn main() -> berge_hamilton::Result<()> {
    let budget = SearchBudget::default();
    for seed in 0..8 {
        let h = sample_hypergraph(
            7,
            Uniformity::Uniform(3),
            &Profile::Bernoulli { p: 0.2 },
            seed,
        )?;
        let report = find_hamiltonian_berge_cycle(&h, &budget)?;
        let oracle = is_hamiltonian_bruteforce(&h)?;
        print!(
            "seed {seed}: {} edges, {} after {} nodes",
            h.edge_count(),
            report.outcome,
            report.nodes
        );
        match &report.outcome {
            Outcome::Cycle(c) => {
                verify_berge_cycle(&h, c).expect("solver returns verified cycles");
                let cert = Certificate::from_cycle(&h, c);
                assert!(cert.verify(Some(&h)).is_ok());
                println!(" {c}");
                assert!(oracle);
            }
            Outcome::NoneExists => {
                println!();
                assert!(!oracle);
            }
            Outcome::Unknown => println!(" (budget exhausted)"),
        }
    }
    Ok(())
}
