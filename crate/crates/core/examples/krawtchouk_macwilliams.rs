//! Krawtchouk polynomials, the MacWilliams transform and the two closed forms
//! of collision smoothness for a ball kernel.

use hamming_smoothing::codes::{hamming, Code};
use hamming_smoothing::hypercube::krawtchouk;
use hamming_smoothing::smoothing::l2_ball_forms;

fn main() -> hamming_smoothing::Result<()> {
    let n = 7;
    for t in 0..=3 {
        let row: Vec<String> = (0..=n).map(|x| krawtchouk(n, t, x).map(|v| v.to_string())).collect::<Result<_, _>>()?;
        println!("K_{t}: {}", row.join(" "));
    }
    let dist = Code::from(hamming(3)?).distance_distribution()?;
    let dual = dist.dual()?;
    let show = |v: &[hamming_smoothing::Rational]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ");
    println!("A     = {}", show(dist.values()));
    println!("A_dual= {}", show(dual.values()));
    for t in 0..=2 {
        let (direct, via_dual) = l2_ball_forms(&dist, t)?;
        println!("ball:{t}  ||2^n T f||^2 = {direct} = {via_dual}");
    }
    Ok(())
}
