//! Canonical rational functions: arithmetic, parsing, JSON, evaluation and
//! the two equality modes.

use std::collections::BTreeMap;

use ffice::exactalg::{equal, from_json, parse_human, to_human, to_json, EqualityMode, RatFun, Var};
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (v, z1, z2) = (RatFun::v(), RatFun::z(1), RatFun::z(2));

    // (z2 - v z1)(z1 + z2) / (z1 + z2) reduces to a polynomial
    let num = (&z2 - &(&v * &z1)) * (&z1 + &z2);
    let q = num.div(&(&z1 + &z2))?;
    println!("quotient        = {q}");
    assert_eq!(q, parse_human("z2 - v*z1")?);

    // Laurent monomials are allowed; w1 squares to z1
    let w1 = RatFun::w(1);
    let cap = &w1.inv()? - &(RatFun::u() * w1.clone());
    println!("cap sum         = {cap}");
    println!("cap sum squared = {}", &cap * &cap);

    let json = to_json(&q);
    println!("json            = {json}");
    assert_eq!(from_json(&json)?, q);
    assert_eq!(parse_human(&to_human(&q))?, q);

    let mut point = BTreeMap::new();
    point.insert(Var::U, BigRational::from_integer(3.into()));
    point.insert(Var::w(1), BigRational::from_integer(2.into()));
    point.insert(Var::w(2), BigRational::from_integer(5.into()));
    println!("q at u=3,w1=2,w2=5 -> {}", q.evaluate_at(&point)?);

    let alt = parse_human("(z2^2 - v^2*z1^2)/(z2 + v*z1)")?;
    let modes = [EqualityMode::Canonical, EqualityMode::Probabilistic { k: 20, seed: 7 }];
    for mode in modes {
        println!("{mode:?}: equal = {}", equal(&q, &alt, mode));
    }
    Ok(())
}
