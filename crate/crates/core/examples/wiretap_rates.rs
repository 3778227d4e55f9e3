//! Secrecy rates on a BSC wiretap pair, and exact leakage of a nested
//! Reed-Muller scheme.

use hamming_smoothing::codes::reed_muller;
use hamming_smoothing::wiretap::{leakage_exact, rate_point, secrecy_bound, NestedScheme, ReConvention, Regime};

fn main() -> hamming_smoothing::Result<()> {
    let (db, de) = (0.05, 0.3);
    for regime in Regime::parse("shannon,bec,rm,alpha:2")? {
        let p = rate_point(db, de, regime, ReConvention::Numbers)?;
        println!("{:<20} R_b={:.4} R_e={:.4} rate={:.4}", regime.label(), p.r_b, p.r_e, p.rate);
    }
    let scheme = NestedScheme::new(reed_muller(1, 4)?, reed_muller(2, 4)?)?;
    println!("RM(1,4) in RM(2,4), {} message bits", scheme.message_bits());
    for de in [0.1, 0.2, 0.3, 0.4] {
        println!(
            "  de={de}: I(M;Z)={:.6}  D(T f_Ce||U)={:.6}  D_2={:.6}",
            leakage_exact(&scheme, de)?,
            secrecy_bound(&scheme, de, 1.0)?,
            secrecy_bound(&scheme, de, 2.0)?
        );
    }
    Ok(())
}
