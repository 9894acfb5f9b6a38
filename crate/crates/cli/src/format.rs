/// Rounds to 12 significant digits; negative zero becomes zero.
pub fn round_significant(v: f64) -> f64 {
    if !v.is_finite() {
        return v;
    }
    let r: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Fixed six-decimal CSV field.
pub fn csv_field(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

pub fn csv_row(values: &[f64]) -> String {
    let fields: Vec<String> = values.iter().map(|&v| csv_field(v)).collect();
    fields.join(",")
}
