//! Closure operations on coefficient streams: diagonal, Hadamard product, algebraic roots.
use lucascert::rational::format_rational;
use lucascert::sequences::{algebraic_root_stream, closure_transform, ClosureOp, Polynomial};
use lucascert::int;

fn line(name: &str, v: &[lucascert::Rational]) {
    println!("{name:<28} {}", v.iter().map(format_rational).collect::<Vec<_>>().join(", "));
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let one = Polynomial::univariate(&[int(1)]);
    // 1/sqrt(1-4x)
    let cb = algebraic_root_stream(&one, &Polynomial::univariate(&[int(1), int(-4)]), 2, 1)?;
    line("1/sqrt(1-4x)", &cb.prefix(10)?);
    let sq = closure_transform(ClosureOp::Hadamard, &[cb.clone(), cb.clone()])?;
    line("Hadamard square", &sq.prefix(10)?);
    // 1/sqrt(1-6x+x^2): central Delannoy numbers
    let del = algebraic_root_stream(&one, &Polynomial::univariate(&[int(1), int(-6), int(1)]), 2, 1)?;
    line("1/sqrt(1-6x+x^2)", &del.prefix(10)?);
    let outer = closure_transform(ClosureOp::OuterProduct, &[cb.clone(), del])?;
    let diag = closure_transform(ClosureOp::Diagonal, &[outer])?;
    line("diagonal of outer product", &diag.prefix(8)?);
    Ok(())
}
