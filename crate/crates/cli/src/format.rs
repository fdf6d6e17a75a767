/// `value` with 12 significant digits, trailing zeros dropped; scientific
/// notation outside `1e-5 ..= 1e12`.
pub fn sig12(value: f64) -> String {
    if value == 0.0 {
        return "0".into();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let exp = value.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{value:.decimals$}");
        // rounding can carry into a new leading digit; that only adds a
        // digit of precision, which is harmless
        trim(&s).to_string()
    } else {
        let s = format!("{value:.11e}");
        let (mantissa, e) = s.split_once('e').expect("scientific format");
        format!("{}e{e}", trim(mantissa))
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
