//! The standard genetic code (NCBI translation table 1).

use std::collections::BTreeMap;

use super::code::{Codon, Nucleotide};
use crate::error::Result;
use crate::frame::Frame;

const TABLE_ONE: &str = "FFLLSSSSYY**CC*WLLLLPPPPHHQQRRRRIIIMTTTTNNKKSSRRVVVVAAAADDEEGGGG";
const TABLE_ORDER: [Nucleotide; 4] = [Nucleotide::U, Nucleotide::C, Nucleotide::A, Nucleotide::G];

fn three_letter(code: char) -> Option<&'static str> {
    Some(match code {
        'A' => "Ala",
        'R' => "Arg",
        'N' => "Asn",
        'D' => "Asp",
        'C' => "Cys",
        'Q' => "Gln",
        'E' => "Glu",
        'G' => "Gly",
        'H' => "His",
        'I' => "Ile",
        'L' => "Leu",
        'K' => "Lys",
        'M' => "Met",
        'F' => "Phe",
        'P' => "Pro",
        'S' => "Ser",
        'T' => "Thr",
        'W' => "Trp",
        'Y' => "Tyr",
        'V' => "Val",
        _ => return None,
    })
}

/// Amino acid (three-letter name) for each sense codon. Stop codons are
/// absent.
pub fn standard_assignments() -> BTreeMap<Codon, &'static str> {
    let mut out = BTreeMap::new();
    for (i, aa) in TABLE_ONE.chars().enumerate() {
        let codon = Codon([TABLE_ORDER[i / 16], TABLE_ORDER[(i / 4) % 4], TABLE_ORDER[i % 4]]);
        if let Some(name) = three_letter(aa) {
            out.insert(codon, name);
        }
    }
    out
}

/// The 64 codons as ground, the 20 amino acids as possibilities.
pub fn standard_frame() -> Result<Frame> {
    let mut by_aa: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for (codon, aa) in standard_assignments() {
        by_aa.entry(aa).or_default().push(codon.to_string());
    }
    Frame::new(Codon::all().map(|c| c.to_string()), by_aa)
}
