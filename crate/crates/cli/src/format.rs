//! Number printing and argument grammar shared by the subcommands.

/// Formats `x` with 17 significant digits, which round-trips every `f64`.
///
/// Plain decimal notation for exponents in `[-5, 16]`, scientific otherwise.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..=16).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, x)
    } else {
        sci
    }
}

/// Parses an `RE,IM` pair.
pub fn parse_complex(s: &str) -> Result<(f64, f64), String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM but got '{s}'"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("'{}' is not a number in '{s}'", t.trim()))
    };
    Ok((parse(re)?, parse(im)?))
}
