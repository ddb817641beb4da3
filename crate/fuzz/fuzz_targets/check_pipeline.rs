#![no_main]
use libfuzzer_sys::fuzz_target;
use sparc_core::grounder::ground_program;
use sparc_core::{crsolver, load, Limits};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let limits = Limits { atom_cap: 2_000, candidate_cap: 20_000, substitution_cap: 20_000 };
    let Ok(checked) = load(src, &limits) else { return };
    let Ok(ground) = ground_program(&checked, &limits) else { return };
    if ground.cr.len() > 10 {
        return;
    }
    if let Ok(solutions) = crsolver::solve(&ground, 4, limits.candidate_cap) {
        for s in &solutions {
            assert!(crsolver::verify(&ground, s));
        }
    }
});
