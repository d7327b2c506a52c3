//! Benchmarks live in `benches/`; run them with `cargo bench -p veerdil-bench`.

/// Signatures timed by the benchmarks, smallest first.
pub const SIGS: [&str; 4] = [
    "cPcbbbdxm_10",
    "eLPkaccddjnkaj_2002",
    "gLMzQbcdefffhhhhhit_122112",
    "fLLQcbeddeehhbghh_01110",
];

/// A b1 = 2 triangulation whose minimum needs the critical-point solver.
pub const SOLVER_SIG: &str = "pLLvLAMPPAQbefgikjjimlnnoooxxhvcqrfrhfjrmla_211120020212120";
