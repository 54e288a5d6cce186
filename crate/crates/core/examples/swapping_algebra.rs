//! Entanglement swapping as a change of pairing.
//!
//! A product of two Bell pairs re-expands over any other pairing of the same
//! four qubits with four terms of weight 1/2. Measuring two qubits from
//! different pairs therefore leaves the other two in a definite Bell state.
//!
//!     cargo run --example swapping_algebra

use bellshare::bellalg::{rebase, BellLabel, Pair};

fn pair((a, b): Pair) -> String {
    format!("({a},{b})")
}

fn show(first: BellLabel, a: Pair, second: BellLabel, b: Pair, target: (Pair, Pair)) -> bellshare::error::Result<()> {
    let e = rebase(first, a, second, b, target)?;
    let (t0, t1) = target;
    let terms: Vec<String> = e
        .terms()
        .iter()
        .map(|t| {
            let sign = if t.coefficient < 0.0 { "-" } else { "+" };
            format!(
                "{sign}{}{}{}{}",
                t.labels.0.symbol(),
                pair(t0),
                t.labels.1.symbol(),
                pair(t1)
            )
        })
        .collect();
    println!(
        "{}{} {}{} = 1/2 ( {} )",
        first.symbol(),
        pair(a),
        second.symbol(),
        pair(b),
        terms.join(" ")
    );
    Ok(())
}

fn main() -> bellshare::error::Result<()> {
    use BellLabel::*;
    // Dealer's view: the (2,3),(5,6) pairs seen through P2's and P3's pairs.
    show(BetaPlus, (2, 3), AlphaPlus, (5, 6), ((2, 6), (3, 5)))?;
    // Reconstruction step 1: P2's and P3's outcomes back onto (2,3),(5,6).
    show(BetaMinus, (2, 6), BetaPlus, (3, 5), ((2, 3), (5, 6)))?;
    // Reconstruction step 2: P1's outcome with the inferred (2,3).
    show(AlphaPlus, (1, 4), AlphaMinus, (2, 3), ((1, 2), (3, 4)))?;

    println!("\nall sixteen products of (2,6),(3,5) over (2,3),(5,6):");
    for x in BellLabel::ALL {
        for y in BellLabel::ALL {
            show(x, (2, 6), y, (3, 5), ((2, 3), (5, 6)))?;
        }
    }
    Ok(())
}
