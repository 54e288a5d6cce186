//! Shares the byte 55 two bits at a time and reconstructs it from the
//! public announcements.
//!
//!     cargo run --example share_secret [-- <decimal> [<seed>]]

use bellshare::protocol::{share_secret, BitString, QubitPolicy};

fn main() -> bellshare::error::Result<()> {
    let mut args = std::env::args().skip(1);
    let value: u64 = args.next().map_or(Ok(55), |s| s.parse()).expect("decimal secret");
    let seed: u64 = args.next().map_or(Ok(7), |s| s.parse()).expect("integer seed");
    let secret = BitString::from_decimal(value);

    for policy in QubitPolicy::ALL {
        let session = share_secret(&secret, policy, seed)?;
        println!(
            "{policy:?}: secret {} in {} rounds",
            session.secret,
            session.rounds.len()
        );
        for r in &session.rounds {
            let a = &r.announcements;
            println!(
                "  {} -> {:<5} P1 {}  P2 {}  P3 {}  => {}",
                r.true_bits(),
                r.true_op.to_string(),
                a.p1.unwrap().symbol(),
                a.p2.unwrap().symbol(),
                a.p3.unwrap().symbol(),
                r.reconstructed.bits().map_or("aborted".into(), |b| b.to_string()),
            );
        }
        let got = session.reconstructed().expect("honest rounds never abort");
        println!("  reconstructed {got} ({})\n", got.value());
    }
    Ok(())
}
