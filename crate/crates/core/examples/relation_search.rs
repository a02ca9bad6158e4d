//! Rational-function detection and bounded search for monomial relations.
use lucascert::hyperdata::FactorialRatioSystem;
use lucascert::independence::find_monomial_relation;
use lucascert::rational::format_rational;
use lucascert::sequences::{closure_transform, ClosureOp, CoefficientStream};

fn poly(c: &[lucascert::Rational]) -> String {
    c.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cb = CoefficientStream::factorial(&FactorialRatioSystem::univariate(&[2], &[1, 1])?);
    if let Some(r) = find_monomial_relation(std::slice::from_ref(&cb), 3, 5, 200)? {
        println!("C(2n,n): f^{:?} = [{}] / [{}], checked to order {}", r.exponents, poly(&r.fraction.num), poly(&r.fraction.den), r.verified_order);
    }
    let sq = closure_transform(ClosureOp::Hadamard, &[cb.clone(), cb.clone()])?;
    let cube = closure_transform(ClosureOp::Hadamard, &[sq.clone(), cb])?;
    match find_monomial_relation(&[sq, cube], 3, 20, 200)? {
        Some(r) => println!("C(2n,n)^2, C(2n,n)^3: relation {:?}", r.exponents),
        None => println!("C(2n,n)^2, C(2n,n)^3: no relation with |d| <= 3, height 20, order 200"),
    }
    Ok(())
}
