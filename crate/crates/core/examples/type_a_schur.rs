//! Type-A partition functions: every engine against the deformed Schur
//! closed form, and the two Schur evaluations against each other.

use ffice::exactalg::RatFun;
use ffice::models::{
    enumerate_with_count, partition_column_product, partition_fmatrix, schur, transfer_with_count, Model,
    ModelSpecA, SchurMethod,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, lambda) in [(2, "1,0"), (2, "2,1"), (3, "2,1,0"), (3, "3,1,0")] {
        let model = Model::A(ModelSpecA::new(n, lambda.parse()?)?);
        let e = enumerate_with_count(&model)?;
        let t = transfer_with_count(&model)?;
        let values = [e.value.clone(), t.value, partition_column_product(&model)?, partition_fmatrix(&model)?];
        let closed = model.closed_form()?;
        let agree = values.iter().all(|v| *v == closed);
        println!("N={n} λ=({lambda}): {} states, engines match closed form: {agree}", e.states);
    }

    let z: Vec<RatFun> = (1..=3).map(RatFun::z).collect();
    let lambda = "2,1".parse()?;
    let s = schur(&lambda, &z, SchurMethod::Tableaux)?;
    println!("s_(2,1)(z1,z2,z3) = {s}");
    assert_eq!(s, schur(&lambda, &z, SchurMethod::Bialternant)?);
    Ok(())
}
