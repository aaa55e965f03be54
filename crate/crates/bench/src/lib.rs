//! Shared fixtures for the benchmark targets.

use dmr_core::cyclic::EmbeddingDatum;
use dmr_core::dmr::{dmr_solve, FreeVarPolicy};
use dmr_core::scalar::qi;
use dmr_core::series::{Letter, SeriesX};

/// A dense-ish grouplike series at the given window.
pub fn sample_grouplike(n: u32, d: usize) -> SeriesX {
    let x0 = SeriesX::letter(n, d, Letter::X0);
    let x1 = SeriesX::letter(n, d, Letter::x1(n));
    let bracket = x0.mul(&x1).unwrap().sub(&x1.mul(&x0).unwrap());
    x0.add(&x1)
        .add(&bracket.scale(&dmr_core::scalar::qr(1, 3)))
        .exp_series()
        .unwrap()
}

/// A solver output for benchmarking the checker and actions.
pub fn sample_dmr(n: u32, d: usize) -> SeriesX {
    dmr_solve(
        n,
        &EmbeddingDatum::reference(n),
        &qi(1),
        d,
        FreeVarPolicy::AllZero,
    )
    .unwrap()
}
