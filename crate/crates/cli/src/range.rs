//! Grid syntax for command-line values.
//!
//! A grid item is either a single number or `start:end:count`, which expands
//! to `count` evenly spaced points including both endpoints. Items can be
//! joined with commas.

/// Expands one `start:end:count` item, or a single number.
pub fn parse_range(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.trim().split(':').collect();
    match parts.as_slice() {
        [single] => Ok(vec![parse_number(single)?]),
        [start, end, count] => {
            let start = parse_number(start)?;
            let end = parse_number(end)?;
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| format!("range count `{count}` is not a positive integer"))?;
            if count == 0 {
                return Err("range count must be >= 1".into());
            }
            if count == 1 {
                if start != end {
                    return Err(format!("range {text} has one point but distinct endpoints"));
                }
                return Ok(vec![start]);
            }
            let step = (end - start) / (count - 1) as f64;
            let mut out: Vec<f64> = (0..count).map(|i| start + step * i as f64).collect();
            // pin the endpoint exactly; accumulated rounding would miss it
            out[count - 1] = end;
            Ok(out)
        }
        _ => Err(format!("`{text}` is neither a number nor start:end:count")),
    }
}

/// Comma-separated grid items, concatenated in order.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in text.split(',') {
        out.extend(parse_range(item)?);
    }
    Ok(out)
}

fn parse_number(text: &str) -> Result<f64, String> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| format!("`{text}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{text}` is not finite"))
    }
}
