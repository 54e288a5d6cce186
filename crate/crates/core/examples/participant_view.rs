//! What a single participant holds: a maximally mixed two-qubit state, so
//! local Bell measurements are uniform whatever the dealer did. Pairs of
//! participants are a different story, see the end of the output.
//!
//!     cargo run --example participant_view

use bellshare::bellalg::{BellLabel, OperatedQubit, Pauli};
use bellshare::protocol::{dealer_prepare, BellTriple, Party, ShareOp};

fn main() -> bellshare::error::Result<()> {
    for qubit in OperatedQubit::BOTH {
        for op in Pauli::ALL {
            let state = dealer_prepare(ShareOp::new(op, qubit), BellTriple::ALPHA_PLUS);
            let mut line = format!("{:<5}", ShareOp::new(op, qubit).to_string());
            for party in Party::ALL {
                let (a, b) = party.pair();
                let rho = state.reduced_density(&[a, b])?;
                let p = state.bell_probabilities(a, b)?;
                line += &format!(
                    "  {party}({a},{b}): purity {:.3}, Bell p = [{:.2} {:.2} {:.2} {:.2}]",
                    rho.purity(),
                    p[0],
                    p[1],
                    p[2],
                    p[3]
                );
            }
            println!("{line}");
        }
    }

    // Any two participants together hold one of the dealer's original
    // pairs: P1 and P2 share (1,2), so a joint Bell measurement there reads
    // the operator on qubit 1 directly.
    for op in Pauli::ALL {
        let state = dealer_prepare(ShareOp::new(op, OperatedQubit::One), BellTriple::ALPHA_PLUS);
        let p = state.bell_probabilities(1, 2)?;
        let seen = BellLabel::ALL[p.iter().position(|&x| x > 0.5).expect("pair (1,2) is a Bell state")];
        println!("P1+P2 on (1,2) after {op}_1: {}", seen.symbol());
    }
    Ok(())
}
