//! Plain-text PGM (`P2`) for square power-of-two grayscale images.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::neqr::GrayImage;

/// Parses a `P2` file. `#` starts a comment that runs to end of line.
pub fn parse_pgm(text: &str) -> Result<GrayImage> {
    let mut tokens = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    let magic = tokens.next();
    if magic != Some("P2") {
        return Err(Error::MalformedPgm(format!("expected magic P2, found {magic:?}")));
    }
    let mut next_number = |what: &str| -> Result<u32> {
        let tok = tokens
            .next()
            .ok_or_else(|| Error::MalformedPgm(format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| Error::MalformedPgm(format!("{what} {tok:?} is not a non-negative integer")))
    };
    let width = next_number("width")?;
    let height = next_number("height")?;
    let maxval = next_number("maximum gray value")?;
    if width != height {
        return Err(Error::MalformedPgm(format!("image is {width}x{height}, not square")));
    }
    if !width.is_power_of_two() || width < 2 {
        return Err(Error::MalformedPgm(format!("side {width} is not a power of two >= 2")));
    }
    if maxval == 0 || maxval > 255 {
        return Err(Error::MalformedPgm(format!(
            "maximum gray value {maxval} outside 1..=255"
        )));
    }
    let count = (width as usize) * (height as usize);
    let mut pixels = Vec::with_capacity(count);
    for i in 0..count {
        let v = next_number(&format!("pixel {i}"))?;
        if v > maxval {
            return Err(Error::MalformedPgm(format!("pixel {i} value {v} exceeds {maxval}")));
        }
        pixels.push(v as u8);
    }
    if tokens.next().is_some() {
        return Err(Error::MalformedPgm("trailing data after the last pixel".into()));
    }
    GrayImage::new(width.trailing_zeros(), pixels).map_err(|e| Error::MalformedPgm(e.to_string()))
}

/// Renders an image as `P2` with maximum gray value 255, one row per line.
pub fn format_pgm(img: &GrayImage) -> String {
    let side = img.side();
    let mut out = format!("P2\n{side} {side}\n255\n");
    for row in img.pixels().chunks(side) {
        let cells: Vec<String> = row.iter().map(u8::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_pgm(path: &Path) -> Result<GrayImage> {
    parse_pgm(&fs::read_to_string(path)?)
}

pub fn write_pgm(path: &Path, img: &GrayImage) -> Result<()> {
    fs::write(path, format_pgm(img))?;
    Ok(())
}
