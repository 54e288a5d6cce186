//! Collapse table: what pairs (2,3) and (5,6) become after P1's Bell
//! outcome on (1,4), for each dealer operator.
//!
//! Qubit 1 prints the stored table next to a fresh simulation; qubit 4 is
//! simulation only.
//!
//!     cargo run --example table_one

use bellshare::bellalg::{collapse_table, simulate_collapse, BellLabel, OperatedQubit, Pauli};
use bellshare::cli::format_cell;

fn main() -> bellshare::error::Result<()> {
    for qubit in OperatedQubit::BOTH {
        println!("operated qubit {qubit}");
        for op in Pauli::ALL {
            for outcome in BellLabel::ALL {
                let stored = collapse_table(op, qubit, outcome);
                let (p, sim) = simulate_collapse(op, qubit, outcome)?;
                let agrees = (stored.pair23, stored.pair56) == (sim.pair23, sim.pair56);
                println!(
                    "  {:<3}{:<4}{:<28} p = {p:.2}  simulated {:<28}{}",
                    op.name(),
                    outcome.symbol(),
                    format_cell(stored.sign, stored.pair23, stored.pair56),
                    format_cell(sim.sign, sim.pair23, sim.pair56),
                    if agrees { "" } else { "  labels differ" },
                );
            }
        }
        println!();
    }
    // Signs in the iY row differ by a global phase only.
    Ok(())
}
