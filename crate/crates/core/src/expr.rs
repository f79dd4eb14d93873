//! Divisor expressions such as `4H-E`, `24H - 7E` or `-E+3H`.
//!
//! Grammar: a sum of terms `[sign][integer](H|E)`, the first sign optional,
//! the coefficient defaulting to 1. Whitespace is ignored and `−` (U+2212)
//! is accepted as a minus sign.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::DivisorClass;

pub fn parse_divisor(input: &str) -> Result<DivisorClass> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    let fail = |token: String| Error::ExprParse {
        input: input.to_string(),
        token,
    };
    if chars.is_empty() {
        return Err(fail("end of input".into()));
    }
    let mut class = DivisorClass::new(0, 0);
    let mut i = 0;
    let mut first = true;
    while i < chars.len() {
        let negative = match chars[i] {
            '+' => {
                i += 1;
                false
            }
            '-' | '\u{2212}' => {
                i += 1;
                true
            }
            _ if first => false,
            c => return Err(fail(c.to_string())),
        };
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let mut coeff: BigInt = if start == i {
            BigInt::from(1)
        } else {
            chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .expect("ascii digits")
        };
        if negative {
            coeff = -coeff;
        }
        match chars.get(i) {
            Some('H') => class.h += coeff,
            Some('E') => class.e += coeff,
            Some(c) => return Err(fail(c.to_string())),
            None => return Err(fail("end of input".into())),
        }
        i += 1;
        first = false;
    }
    Ok(class)
}
