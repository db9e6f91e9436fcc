//! CSV number formatting: '.' decimal point, no separators, 9 significant
//! digits, positional notation for moderate exponents (like %.9g).

pub const SIG_DIGITS: usize = 9;

pub fn sig9(x: f64) -> String {
    format_sig(x, SIG_DIGITS)
}

pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let formatted = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = formatted.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("exponent");
    // %g style: positional for -4 <= exp < sig, scientific otherwise.
    if exp < -4 || exp >= sig as i32 {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = exp + 1; // digits before the decimal point
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', -point as usize));
        out.push_str(&digits);
    } else if (point as usize) >= digits.len() {
        out.push_str(&digits);
        out.extend(std::iter::repeat_n('0', point as usize - digits.len()));
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    trim_zeros(&out).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positional_range() {
        assert_eq!(sig9(0.036), "0.036");
        assert_eq!(sig9(0.0264), "0.0264");
        assert_eq!(sig9(1.0 / 6.0), "0.166666667");
        assert_eq!(sig9(726.0), "726");
        assert_eq!(sig9(-0.5), "-0.5");
        assert_eq!(sig9(0.0), "0");
    }

    #[test]
    fn scientific_range() {
        assert_eq!(sig9(1.23456789e-7), "1.23456789e-7");
        assert_eq!(sig9(9.876e12), "9.876e12");
        assert_eq!(sig9(-2.0e-5), "-2e-5");
        assert_eq!(sig9(-2.0e-4), "-0.0002");
    }

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(0.123456789123), "0.123456789");
        assert_eq!(sig9(123456789.123), "123456789");
        assert_eq!(sig9(1234567891.23), "1.23456789e9");
    }
}
