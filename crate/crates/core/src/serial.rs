//! Deterministic JSON output: fixed key order and floats written with 17
//! significant digits.

use std::io;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

use crate::CMatrix;

/// A `serde_json` formatter that prints every float as `{:.16e}`.
#[derive(Debug, Default, Clone, Copy)]
pub struct SigDigitsFormatter;

impl Formatter for SigDigitsFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            // serde_json maps non-finite floats to null as well
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, SigDigitsFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

pub fn complex_pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|c| [c.re, c.im]).collect()
}

/// Row-major `[[ [re, im], ... ], ...]`.
pub fn matrix_pairs(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub(crate) mod opt_pairs {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<crate::CVector>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|v| complex_pairs(v.as_slice())).serialize(s)
    }
}

pub(crate) mod matrix {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(m: &CMatrix, s: S) -> Result<S::Ok, S::Error> {
        matrix_pairs(m).serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        let s = to_json_string(&[1.0f64, 2.0 / 3.0, -1e-20]).unwrap();
        assert_eq!(s, "[1.0000000000000000e0,6.6666666666666663e-1,-9.9999999999999995e-21]");
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vec![1.0, 2.0 / 3.0, -1e-20]);
    }
}
