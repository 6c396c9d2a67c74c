//! Matrix serialization. Reals use 17 significant digits so a written
//! matrix parses back bit-exactly.

use std::fmt::Write;

use quantum_baker::{ComplexMatrix, PropagatorVariant};

pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn matrix_csv(m: &ComplexMatrix) -> String {
    let mut s = String::from("row,col,re,im\n");
    for r in 0..m.dim() {
        for (c, z) in m.row(r).iter().enumerate() {
            writeln!(s, "{r},{c},{},{}", real(z.re), real(z.im)).unwrap();
        }
    }
    s
}

pub fn matrix_json(m: &ComplexMatrix, variant: PropagatorVariant) -> String {
    let part = |pick: fn(&num_complex::Complex64) -> f64| {
        let rows: Vec<String> = (0..m.dim())
            .map(|r| {
                let cells: Vec<String> = m.row(r).iter().map(|z| real(pick(z))).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    };
    format!(
        "{{\"n\":{},\"variant\":\"{}\",\"re\":{},\"im\":{}}}\n",
        m.dim(),
        variant.as_str(),
        part(|z| z.re),
        part(|z| z.im)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [
            0.1,
            -1.0 / 3.0,
            std::f64::consts::FRAC_1_SQRT_2,
            1e-300,
            -0.0,
        ] {
            let s = real(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(real(0.5), "5.0000000000000000e-1");
    }
}
