//! Number formatting shared by the text reports.

/// Scientific notation with three decimals and a signed two-digit exponent,
/// e.g. `1.951e+00`.
pub fn sci(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.3e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Competition ranks: 1 + the number of strictly better entries.
pub fn column_ranks(values: &[f64], higher_is_better: bool) -> Vec<usize> {
    values
        .iter()
        .map(|&v| {
            1 + values
                .iter()
                .filter(|&&o| if higher_is_better { o > v } else { o < v })
                .count()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific() {
        assert_eq!(sci(1.951), "1.951e+00");
        assert_eq!(sci(0.0), "0.000e+00");
        assert_eq!(sci(1.0), "1.000e+00");
        assert_eq!(sci(12346.0), "1.235e+04");
        assert_eq!(sci(-2.5e-12), "-2.500e-12");
        assert_eq!(sci(3e150), "3.000e+150");
        assert_eq!(sci(f64::INFINITY), "inf");
    }

    #[test]
    fn ranks_follow_sorted_order() {
        assert_eq!(column_ranks(&[0.3, 0.1, 0.3, 0.2], false), vec![3, 1, 3, 2]);
        assert_eq!(column_ranks(&[50.0, 100.0], true), vec![2, 1]);
    }
}
