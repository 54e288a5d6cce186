//! Step-by-step reconstruction of one round: the dealer applies Z to
//! qubit 1 and the parties announce P1 = α+, P2 = β−, P3 = β+.
//!
//!     cargo run --example reconstruction_walkthrough

use bellshare::bellalg::{rebase, BellLabel, OperatedQubit, PairSide, Pauli};
use bellshare::protocol::{
    op_to_bits, reconstruct_oracle, reconstruct_trace, BellTriple, RoundAnnouncements, P1_PAIR, P2_PAIR, P3_PAIR,
};

fn main() -> bellshare::error::Result<()> {
    use BellLabel::*;
    let a = RoundAnnouncements {
        initial: BellTriple::ALPHA_PLUS,
        operated_qubit: OperatedQubit::One,
        p1: Some(AlphaPlus),
        p2: Some(BetaMinus),
        p3: Some(BetaPlus),
    };
    println!("announced: initial {}, qubit 1, P1 α+, P2 β−, P3 β+\n", a.initial);

    let step1 = rebase(BetaMinus, P2_PAIR, BetaPlus, P3_PAIR, ((2, 3), (5, 6)))?;
    println!("1. β−(2,6) β+(3,5) over (2,3),(5,6):");
    for t in step1.terms() {
        let keep = if t.labels.1 == a.initial.pair56 {
            "  <- (5,6) is α+"
        } else {
            ""
        };
        println!(
            "   {:+.1} {}(2,3) {}(5,6){keep}",
            t.coefficient,
            t.labels.0.symbol(),
            t.labels.1.symbol()
        );
    }

    let trace = reconstruct_trace(&a)?;
    let step2 = rebase(AlphaPlus, P1_PAIR, trace.pair23, (2, 3), ((1, 2), (3, 4)))?;
    println!("2. α+(1,4) {}(2,3) over (1,2),(3,4):", trace.pair23.symbol());
    for t in step2.terms() {
        let keep = if t.labels.1 == a.initial.pair34 {
            "  <- (3,4) untouched, still α+"
        } else {
            ""
        };
        println!(
            "   {:+.1} {}(1,2) {}(3,4){keep}",
            t.coefficient,
            t.labels.0.symbol(),
            t.labels.1.symbol()
        );
    }

    println!(
        "3. which Pauli on qubit 1 takes α+(1,2) to {}(1,2)?",
        trace.touched_pair.symbol()
    );
    for op in Pauli::ALL {
        let (_, image) = a.initial.pair12.apply_pauli(op, PairSide::First);
        println!(
            "   {op}: {}{}",
            image.symbol(),
            if image == trace.touched_pair { "  <-" } else { "" }
        );
    }
    println!("\noperator {} -> bits {}", trace.share_op, op_to_bits(trace.share_op));
    let candidates: Vec<String> = reconstruct_oracle(&a).iter().map(ToString::to_string).collect();
    println!("brute-force candidates: {}", candidates.join(", "));
    Ok(())
}
