//! Matrices transcribed from the worked examples, checked against `SHA256SUMS`
//! every time they are loaded.

use holoforge_core::{Matrix, RingSpec};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matfile::{parse_matrix, parse_matrix_over};

const SUMS: &str = include_str!("../data/SHA256SUMS");

macro_rules! files {
    ($($name:literal),* $(,)?) => {
        const FILES: &[(&str, &str)] = &[$(($name, include_str!(concat!("../data/", $name, ".mat")))),*];
    };
}

files!(
    "e1_a",
    "e1_b",
    "e1_c",
    "e1_d",
    "e1_e",
    "e3_a",
    "e3_b",
    "e3_l1",
    "e3_l2",
    "e6_c",
    "e6_j",
    "e7_l1",
    "e7_l2",
    "e7_x",
    "e7_y",
    "e7_z",
    "e9_a1",
    "e9_a2",
    "e9_a3",
    "e9_b1",
    "e9_b2",
    "e9_b3",
    "final_a",
    "final_a12",
    "final_a2",
    "final_a3",
    "final_a6",
    "final_b",
);

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

/// Raw text of a data file after its checksum has been verified.
pub fn text(name: &str) -> Result<&'static str> {
    let (_, body) = FILES.iter().find(|(n, _)| *n == name).ok_or_else(|| Error::UnknownData(name.into()))?;
    let digest = format!("{:x}", Sha256::digest(body.as_bytes()));
    let file = format!("{name}.mat");
    let listed = SUMS
        .lines()
        .filter_map(|l| l.split_once("  "))
        .find(|(_, f)| *f == file)
        .map(|(sum, _)| sum);
    if listed != Some(digest.as_str()) {
        return Err(Error::Checksum(file));
    }
    Ok(body)
}

pub fn matrix(name: &str) -> Result<Matrix> {
    parse_matrix(text(name)?)
}

/// The same integer entries, reduced in `ring` instead.
pub fn matrix_over(name: &str, ring: RingSpec) -> Result<Matrix> {
    parse_matrix_over(text(name)?, ring)
}
