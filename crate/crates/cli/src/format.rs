//! Coefficient file format: ASCII decimal residues in `[0, p)`, ascending
//! exponent, separated by whitespace (spaces or newlines). An empty file is
//! the zero polynomial. The format is strict: tokens must parse as
//! nonnegative integers and must already be reduced below the modulus.

use std::fmt;

use pscomp::{PrimeModulus, UniPoly};

/// A rejected token, reported with the file label and 1-based token index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub file: String,
    pub token_index: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: token {}: {}",
            self.file, self.token_index, self.message
        )
    }
}

impl std::error::Error for ParseError {}

/// Parses whitespace-separated residues into a polynomial whose length is
/// exactly the token count.
pub fn parse_poly(
    text: &str,
    file_label: &str,
    modulus: &PrimeModulus,
) -> Result<UniPoly, ParseError> {
    let mut coeffs = Vec::new();
    for (idx, token) in text.split_ascii_whitespace().enumerate() {
        let value: u64 = token.parse().map_err(|_| ParseError {
            file: file_label.to_string(),
            token_index: idx + 1,
            message: format!("expected a nonnegative integer, found {token:?}"),
        })?;
        if value >= modulus.p() {
            return Err(ParseError {
                file: file_label.to_string(),
                token_index: idx + 1,
                message: format!(
                    "residue {value} is not below the modulus {}",
                    modulus.p()
                ),
            });
        }
        coeffs.push(value);
    }
    Ok(UniPoly::new(coeffs))
}

/// One line of space-separated residues, trailing newline included.
pub fn write_poly(f: &UniPoly) -> String {
    let mut out = f
        .coeffs()
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modulus() -> PrimeModulus {
        PrimeModulus::new(998244353).unwrap()
    }

    #[test]
    fn roundtrip() {
        let md = modulus();
        let p = parse_poly("1 2 3\n0 7", "t", &md).unwrap();
        assert_eq!(p.coeffs(), &[1, 2, 3, 0, 7]);
        assert_eq!(write_poly(&p), "1 2 3 0 7\n");
        let back = parse_poly(&write_poly(&p), "t", &md).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn empty_is_zero_polynomial() {
        let md = modulus();
        let p = parse_poly("", "t", &md).unwrap();
        assert_eq!(p.len(), 0);
        assert_eq!(parse_poly("  \n ", "t", &md).unwrap().len(), 0);
    }

    #[test]
    fn bad_token_reports_position() {
        let md = modulus();
        let err = parse_poly("1 x 3", "f.txt", &md).unwrap_err();
        assert_eq!(err.token_index, 2);
        assert_eq!(err.file, "f.txt");
        let err = parse_poly("1 -2", "f.txt", &md).unwrap_err();
        assert_eq!(err.token_index, 2);
    }

    #[test]
    fn out_of_range_residue_rejected() {
        let md = modulus();
        let err = parse_poly("0 998244353", "g.txt", &md).unwrap_err();
        assert_eq!(err.token_index, 2);
        assert!(err.message.contains("below the modulus"));
    }
}
