//! Exact arithmetic with roots of unity.

use reflekt::CycNum;

fn main() -> reflekt::Result<()> {
    let z5: CycNum = "z(5)".parse()?;
    // 1 + ζ + ζ² + ζ³ + ζ⁴ = 0
    let sum = (0..5).fold(CycNum::zero(), |acc, k| &acc + &z5.pow(k));
    println!("1 + z5 + ... + z5^4 = {sum}");

    // the golden ratio lives in Q(ζ5)
    let phi = &(&CycNum::one() + &reflekt::cyclotomic::sqrt_int(5)) * &CycNum::rational(1, 2);
    println!("phi = {phi}, phi^2 - phi - 1 = {}", &(&(&phi * &phi) - &phi) - &CycNum::one());

    // values are reduced to the smallest field holding them
    let i = CycNum::zeta(4);
    let x = &CycNum::zeta(12).pow(3) * &i;
    println!("z12^3 * i = {x} (conductor {})", x.conductor());
    println!("1/(1 + i) = {}", (&CycNum::one() + &i).inv());
    Ok(())
}
