//! Serialization helpers shared by every exported report.
//!
//! Floats are written with 17 significant digits in scientific notation so
//! that reports round-trip exactly and compare byte for byte across runs.

use serde::Serializer;
use serde_json::value::RawValue;

/// Version tag embedded in every JSON document.
pub const SCHEMA_VERSION: &str = "bessel-fourier/1";

/// `x` with 17 significant digits; non-finite values become `inf`, `-inf` or `nan`.
pub fn sig17(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

pub fn ser_sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_str(&sig17(*x));
    }
    let raw = RawValue::from_string(sig17(*x)).map_err(serde::ser::Error::custom)?;
    serde::Serialize::serialize(&raw, s)
}

pub fn ser_opt_sig17<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_sig17(v, s),
        None => s.serialize_none(),
    }
}

pub fn ser_vec_sig17<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Sig17(*x))?;
    }
    seq.end()
}

/// Wrapper serializing an `f64` through [`ser_sig17`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sig17(pub f64);

impl serde::Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_sig17(&self.0, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(sig17(2.404825557695773), "2.4048255576957729e0");
        assert_eq!(sig17(-1e-300), "-1.0000000000000000e-300");
        assert_eq!(sig17(f64::INFINITY), "inf");
        let x = 0.1 + 0.2;
        assert_eq!(sig17(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn json_numbers_are_raw() {
        #[derive(serde::Serialize)]
        struct T {
            #[serde(serialize_with = "ser_sig17")]
            v: f64,
            w: Vec<Sig17>,
        }
        let s = serde_json::to_string(&T { v: 0.5, w: vec![Sig17(1.0), Sig17(f64::NAN)] }).unwrap();
        assert_eq!(s, r#"{"v":5.0000000000000000e-1,"w":[1.0000000000000000e0,"nan"]}"#);
    }
}
