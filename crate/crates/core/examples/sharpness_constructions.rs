//! Build the three extremal families, compare their degree sequences with the
//! closed forms, and confirm none of them is Hamiltonian.

use berge_hamilton::conditions::posa_r_uniform;
use berge_hamilton::constructions::{generate, Family};
use berge_hamilton::{find_hamiltonian_berge_cycle, SearchBudget};

fn main() -> berge_hamilton::Result<()> {
    let members = [
        (Family::H1, 9, 3, Some(2)),
        (Family::H2, 9, 3, Some(4)),
        (Family::H3, 10, 3, None),
        (Family::H3, 12, 4, None),
    ];
    for (family, n, r, k) in members {
        let (h, spec) = generate(family, n, r, k)?;
        let d = h.degree_sequence();
        assert_eq!(d, spec.predicted_degree_sequence());
        let report = posa_r_uniform(&d, r)?;
        let outcome = find_hamiltonian_berge_cycle(&h, &SearchBudget::default())?.outcome;
        println!(
            "{family:?}(n={n}, r={r}, k={k:?}): {} edges, degrees {d}",
            h.edge_count()
        );
        println!(
            "  violated {:?} (designated {:?}), solver: {}",
            report.violated_tags(),
            family.designated_tag(),
            outcome
        );
    }
    Ok(())
}
