//! NEQR image states and pixel-wise sharing of a 2x2 image.
//!
//!     cargo run --example image_sharing

use bellshare::neqr::{
    build_image_state, neqr_decode, neqr_encode, reconstruct_image, share_image, share_image_with, share_pixel,
    GrayImage, Tamper,
};
use bellshare::pgm::format_pgm;
use bellshare::protocol::QubitPolicy;

fn main() -> bellshare::error::Result<()> {
    let img = GrayImage::new(1, vec![0, 0, 0, 55])?;
    let direct = neqr_encode(&img)?;
    let built = build_image_state(&img)?;
    println!(
        "{} qubits, fidelity(gates, closed form) = {:.12}",
        direct.num_qubits(),
        built.fidelity_up_to_phase(&direct)?
    );
    for (i, a) in direct.amplitudes().iter().enumerate().filter(|(_, a)| a.norm() > 0.0) {
        println!("  |{:08b}>|{:b}>|{:b}>  {:.3}", i >> 2, (i >> 1) & 1, i & 1, a.re);
    }
    assert_eq!(neqr_decode(&built)?, img);

    let pixel = share_pixel(1, 1, 1, 55, QubitPolicy::AlwaysOne, 3)?;
    println!(
        "\npixel (1,1) = 55 shares {} in {} rounds:",
        pixel.shared_bits(),
        pixel.rounds.len()
    );
    for r in &pixel.rounds {
        println!("  {} via {}", r.true_bits(), r.true_op);
    }

    let bundles = share_image(&img, QubitPolicy::UniformRandom, 9)?;
    let back = reconstruct_image(img.n(), &bundles)?;
    println!("\nreconstructed:\n{}", format_pgm(&back));

    let tamper = Some(Tamper {
        pixel_index: 3,
        round_index: 0,
    });
    let lied = reconstruct_image(img.n(), &share_image_with(&img, QubitPolicy::UniformRandom, 9, tamper)?)?;
    println!("with P1 lying once:\n{lied}differences: {:?}", img.diff(&lied)?);
    Ok(())
}
