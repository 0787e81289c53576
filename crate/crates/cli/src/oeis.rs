//! Reference values of A003645, `2^n · C(n+1)` with offset 0.
//!
//! Entry `i` of the sequence is `a(i + 1)` in this crate's numbering, where
//! `a(n) = 2^(n-1) · C(n)` counts trees on `n + 1` nodes with one marked
//! excessive node.

use std::collections::BTreeMap;
use std::io::BufRead;

use beta_trees::verify::{Check, VerifyReport};
use num_bigint::BigUint;

use crate::error::CliError;

/// The first terms of A003645.
pub const EMBEDDED: [u64; 16] = [
    1,
    4,
    20,
    112,
    672,
    4224,
    27456,
    183040,
    1244672,
    8599552,
    60196864,
    426008576,
    3042918400,
    21909012480,
    158840340480,
    1158600130560,
];

/// Sequence terms keyed by OEIS index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    terms: BTreeMap<u64, BigUint>,
}

impl Sequence {
    pub fn embedded() -> Sequence {
        Sequence { terms: EMBEDDED.iter().enumerate().map(|(i, &v)| (i as u64, BigUint::from(v))).collect() }
    }

    /// Reads a b-file: lines `index value`, blank lines and `#` comments.
    pub fn read_bfile(reader: impl BufRead) -> Result<Sequence, CliError> {
        let mut terms = BTreeMap::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || CliError::Usage(format!("b-file line {}: expected 'index value'", lineno + 1));
            let mut fields = line.split_whitespace();
            let index: u64 = fields.next().and_then(|f| f.parse().ok()).ok_or_else(bad)?;
            let value: BigUint = fields.next().and_then(|f| f.parse().ok()).ok_or_else(bad)?;
            if fields.next().is_some() {
                return Err(bad());
            }
            terms.insert(index, value);
        }
        Ok(Sequence { terms })
    }

    /// `a(n)` for `n ≥ 1`, if the source covers it.
    pub fn a(&self, n: u32) -> Option<&BigUint> {
        n.checked_sub(1).and_then(|i| self.terms.get(&u64::from(i)))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Compares the values of a `prop15` or `conj-fp` report with the sequence
/// and records the outcome in the report.
pub fn cross_check(report: &mut VerifyReport, seq: &Sequence) {
    let index = |n: u32| match report.check {
        Check::Prop15 => Some(n),
        Check::ConjFp => Some(n / 2),
        _ => None,
    };
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for (n, value) in &report.values {
        let Some(want) = index(*n).and_then(|k| seq.a(k)) else { continue };
        compared += 1;
        if value.parse::<BigUint>().ok().as_ref() != Some(want) {
            mismatches.push(format!("n={n}: {value} but A003645 gives {want}"));
        }
    }
    if index(0).is_none() {
        return;
    }
    if mismatches.is_empty() {
        report.notes.push(format!("A003645: {compared} values agree"));
    } else {
        report.passed = false;
        report.notes.extend(mismatches);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use beta_trees::enumerate::a_seq;

    #[test]
    fn embedded_terms_follow_the_closed_form() {
        let seq = Sequence::embedded();
        for n in 1..=EMBEDDED.len() as u32 {
            assert_eq!(seq.a(n), a_seq(n).as_ref(), "n = {n}");
        }
        assert_eq!(seq.a(0), None);
    }

    #[test]
    fn bfile_offset_zero() {
        let text = "# A003645\n0 1\n1 4\n\n2 20\n";
        let seq = Sequence::read_bfile(text.as_bytes()).unwrap();
        assert_eq!(seq.len(), 3);
        assert_eq!(seq.a(1), Some(&BigUint::from(1u32)));
        assert_eq!(seq.a(3), Some(&BigUint::from(20u32)));
        assert_eq!(seq.a(4), None);
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(Sequence::read_bfile("0 1\nx 4\n".as_bytes()).is_err());
        assert!(Sequence::read_bfile("0 1 2\n".as_bytes()).is_err());
    }
}
