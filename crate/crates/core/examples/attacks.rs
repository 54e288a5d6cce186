//! Runs every adversary scenario and the two fixed counterexamples.
//!
//!     cargo run --release --example attacks [-- <trials>]

use bellshare::adversary::{
    lying_dealer_state_counterexample, lying_dealer_state_honest_control, lying_p1_counterexample, run_scenario,
    run_session_scenario, Scenario,
};
use bellshare::protocol::{BitString, QubitPolicy};

fn main() -> bellshare::error::Result<()> {
    let trials: usize = std::env::args()
        .nth(1)
        .map_or(Ok(10_000), |s| s.parse())
        .expect("trial count");
    let seed = 1;
    for name in Scenario::NAMES {
        let s = Scenario::from_name(name)?;
        let r = run_scenario(&s, "10".parse()?, QubitPolicy::UniformRandom, trials, seed)?;
        println!("{s}\n{r}\n");
    }

    let s = Scenario::from_name("lying-dealer-qubit")?;
    let sessions = run_session_scenario(
        &s,
        &BitString::from_decimal(55),
        QubitPolicy::UniformRandom,
        trials,
        seed,
    )?;
    println!(
        "lying-dealer-qubit over whole 4-round secrets: {:.4} intact ({} sessions)",
        sessions.session_correct_rate, sessions.sessions
    );

    let (got, truth) = lying_p1_counterexample();
    println!("P1 reports α− for α+: reconstructed {got}, dealer shared {truth}");
    let (got, truth) = lying_dealer_state_counterexample();
    println!("dealer prepares all-α−, announces all-α+: reconstructed {got}, dealer applied {truth}");
    println!(
        "same dealer, honest announcement: {:?}",
        lying_dealer_state_honest_control()?
    );
    Ok(())
}
