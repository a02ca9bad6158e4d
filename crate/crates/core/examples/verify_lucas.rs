//! Brute-force Lucas congruences on a box, the series form, and a failing example.
use lucascert::hyperdata::FactorialRatioSystem;
use lucascert::lucasverify::{series_congruence_check, verify_pk_lucas, LucasBox};
use lucascert::sequences::CoefficientStream;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cb = CoefficientStream::factorial(&FactorialRatioSystem::univariate(&[2], &[1, 1])?);
    for p in [2, 3, 5, 7, 11] {
        let r = verify_pk_lucas(&cb, p, 1, &LucasBox::full(300))?;
        println!("C(2n,n), p = {p}: {:?} on {} pairs", r.verdict, r.checked);
    }
    let s = series_congruence_check(&cb, 5, 1, 200)?;
    println!("f(x) = A(x) f(x^5) mod 5 to order 200: {}", s.holds);

    let bad = CoefficientStream::factorial(&FactorialRatioSystem::univariate(&[4], &[2, 2])?);
    let r = verify_pk_lucas(&bad, 3, 1, &LucasBox::full(20))?;
    println!("(4n)!/(2n)!^2, p = 3: {:?}, {} violations", r.verdict, r.violation_count);
    if let Some(v) = r.violations.first() {
        println!("  first: {v:?}");
    }
    Ok(())
}
