//! Type-C (capped) partition functions: engines against the closed form,
//! plus the hyperoctahedral action on parameters.

use ffice::exactalg::RatFun;
use ffice::models::{
    hyperoctahedral_apply, partition_column_product, partition_enumerate, partition_fmatrix, partition_transfer,
    theorem2_rhs_descending_prefactor, Model, ModelSpecC, SignedPermutation,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (r, lambda) in [(1, "0"), (1, "2"), (2, "0,0"), (2, "1,0"), (2, "2,1")] {
        let spec = ModelSpecC::new(r, lambda.parse()?)?;
        let model = Model::C(spec.clone());
        let values = [
            partition_enumerate(&model)?,
            partition_transfer(&model)?,
            partition_column_product(&model)?,
            partition_fmatrix(&model)?,
        ];
        let closed = model.closed_form()?;
        let agree = values.iter().all(|v| *v == closed);
        let descending = theorem2_rhs_descending_prefactor(&spec)?;
        let ratio = values[0].div(&descending)?;
        println!("r={r} λ=({lambda}): engines match closed form: {agree}; Z / descending-prefactor form = {ratio}");
    }

    let f = RatFun::z(1) + RatFun::z(2).inv()?;
    for sigma in SignedPermutation::all(2) {
        println!("{sigma}: {}", hyperoctahedral_apply(&sigma, &f));
    }
    Ok(())
}
