//! CSV writers with C-style `%.12g` number formatting.

use std::io::{self, Write};

use crate::epower::SweepCurve;

pub const SWEEP_HEADER: &str = "mu,ep_eof,ep_tangle,mems_eof,gap,argmax,n_samples";
pub const MEMS_CURVE_HEADER: &str = "mu,gamma,concurrence,eof";

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros removed,
/// scientific notation outside `1e-4 ≤ |x| < 1e12`.
pub fn format_sig12(x: f64) -> String {
    format_sig(x, 12)
}

/// `%.{digits}g`.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes the sweep table with a header and one LF-terminated row per point.
pub fn write_sweep_csv<W: Write>(curve: &SweepCurve, mut w: W) -> io::Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for p in &curve.points {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            format_sig12(p.mu),
            format_sig12(p.ep_eof),
            format_sig12(p.ep_tangle),
            format_sig12(p.mems_eof),
            format_sig12(p.gap),
            p.argmax,
            p.n_samples
        )?;
    }
    Ok(())
}

/// One row of the MEMS frontier table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MemsRow {
    pub mu: f64,
    pub gamma: f64,
    pub concurrence: f64,
    pub eof: f64,
}

pub fn write_mems_curve_csv<W: Write>(rows: &[MemsRow], mut w: W) -> io::Result<()> {
    writeln!(w, "{MEMS_CURVE_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            format_sig12(r.mu),
            format_sig12(r.gamma),
            format_sig12(r.concurrence),
            format_sig12(r.eof)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (0.5, "0.5"),
            (1.0 / 3.0, "0.333333333333"),
            (2.0 / 3.0, "0.666666666667"),
            (0.721928094887362, "0.721928094887"),
            (1e-5, "1e-05"),
            (1.5e-10, "1.5e-10"),
            (-2.5e-13, "-2.5e-13"),
            (0.0001, "0.0001"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (-0.75, "-0.75"),
            (0.99999999999999, "1"),
            (14_400_000.0, "14400000"),
        ];
        for (x, want) in cases {
            assert_eq!(format_sig12(x), want, "{x:e}");
        }
        assert_eq!(format_sig(1.23456, 3), "1.23");
        assert_eq!(format_sig(f64::NAN, 12), "nan");
    }

    #[test]
    fn mems_table_shape() {
        let rows = [MemsRow {
            mu: 1.0,
            gamma: 1.0,
            concurrence: 1.0,
            eof: 1.0,
        }];
        let mut buf = Vec::new();
        write_mems_curve_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "mu,gamma,concurrence,eof\n1,1,1,1\n"
        );
    }
}
