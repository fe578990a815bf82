//! Rotate a Hamiltonian Berge path, then compute its full rotation closure.

use berge_hamilton::constructions::{generate, Family};
use berge_hamilton::solver::{
    hamiltonian_path_bruteforce, rotate_defining, rotation_closure, RotationState,
};

fn main() -> berge_hamilton::Result<()> {
    // H1(7,3,2) has no Hamiltonian cycle but plenty of Hamiltonian paths.
    let (h, _) = generate(Family::H1, 7, 3, Some(2))?;
    let p = hamiltonian_path_bruteforce(&h)?.expect("H1 is traceable");
    println!("start path: {p}");

    let state = RotationState::new(&h, p.clone())?;
    for i in 2..h.n() {
        if let Ok(next) = rotate_defining(&h, &state, i) {
            println!("defining rotation at {i}: {}", next.path);
            break;
        }
    }

    let closure = rotation_closure(&h, &p)?;
    println!(
        "fixed end {}, reachable starts {}",
        closure.fixed_end, closure.reachable_ends
    );
    for (v, w) in closure.witnesses() {
        println!("  {v}: {w}");
    }
    println!(
        "claim set {} holds: {}",
        closure.claim_one_set(&h),
        closure.claim_one_holds(&h)
    );
    Ok(())
}
