//! Sparse operators on (C²)^⊗N: R-matrices, site permutations and the
//! Yang-Baxter equation checked as an operator identity.

use ffice::exactalg::RatFun;
use ffice::tensorops::{permutation_op, r_matrix, LinOp, Permutation, SVec};
use ffice::weights::Ice;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 3;
    let z: Vec<RatFun> = (1..=n).map(RatFun::z).collect();
    let g = Ice::Gamma;

    let r12 = r_matrix(1, 2, &z[0], &z[1], g, g, n)?;
    let r13 = r_matrix(1, 3, &z[0], &z[2], g, g, n)?;
    let r23 = r_matrix(2, 3, &z[1], &z[2], g, g, n)?;
    println!("R12 has {} nonzero entries of {}", r12.nnz(), r12.dim() * r12.dim());

    let lhs = LinOp::product(n, [&r12, &r13, &r23])?;
    let rhs = LinOp::product(n, [&r23, &r13, &r12])?;
    println!("R12 R13 R23 == R23 R13 R12: {}", lhs == rhs);

    // R(z, z) is the swap of the two sites
    let same = r_matrix(1, 2, &z[0], &z[0], g, g, 2)?;
    let swap = permutation_op(&Permutation::s(1, 2), 2)?;
    println!("R12(z1, z1) == P12: {}", same == swap);

    let x = SVec::from_spins(&[0, 1, 1]);
    let y = r12.apply(&x)?;
    for (idx, c) in y.comps() {
        println!("R12 |011> has {:03b} -> {c}", idx);
    }
    Ok(())
}
