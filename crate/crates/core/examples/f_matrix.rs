//! Build F, F* and Δ for small chains, check FF* = Δ and compare the
//! conjugated column operators with their closed form.

use ffice::fmatrix::{
    build_f, build_fstar, column_operator, conjugated_column, conjugated_column_direct, delta_diagonal, f_inverse,
    SiteContext,
};
use ffice::tensorops::LinOp;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = SiteContext::type_a(2);
    let f = build_f(&ctx)?;
    println!("F (N=2, type A):");
    for ((out, inp), v) in f.entries() {
        println!("  F[{out:02b},{inp:02b}] = {v}");
    }

    for (label, ctx) in [
        ("type A, N=3", SiteContext::type_a(3)),
        ("alternating, N=3", SiteContext::alternating(3)),
        ("type C, r=2", SiteContext::type_c(2)),
    ] {
        let f = build_f(&ctx)?;
        let fs = build_fstar(&ctx)?;
        let delta = delta_diagonal(&ctx)?;
        let inv = f_inverse(&ctx)?;
        let ok = f.compose(&fs)? == delta && f.compose(&inv)? == LinOp::identity(ctx.n());
        println!("{label:<18} FF* = Δ and F F⁻¹ = 1: {ok}");
    }

    let ctx = SiteContext::type_a(3);
    for alpha in [0, 1] {
        let closed = conjugated_column(alpha, &ctx)?;
        let direct = conjugated_column_direct(alpha, &ctx)?;
        let plain = column_operator(alpha, &ctx, None);
        println!(
            "S[{alpha}]: {} entries, F S F⁻¹: {} entries, closed form matches: {}",
            plain.nnz(),
            closed.nnz(),
            closed == direct
        );
    }
    Ok(())
}
