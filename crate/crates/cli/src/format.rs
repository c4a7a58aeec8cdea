//! Locale-independent number formatting for CSV output.

/// `printf("%.15g")`: 15 significant digits, trailing zeros stripped,
/// exponent form outside `1e-4 <= |x| < 1e15`. Both zeros print as `0`.
pub fn g15(x: f64) -> String {
    const DIGITS: i32 = 15;
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp) as usize;
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

/// Optional value; missing prints as an empty field.
pub fn g15_opt(x: Option<f64>) -> String {
    x.map(g15).unwrap_or_default()
}
