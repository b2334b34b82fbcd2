//! Angle arguments: plain numbers or products/quotients involving `pi`
//! (`pi/2`, `3*pi/4`, `0.25*pi`), and ranges `start:stop:count`.

use std::f64::consts::PI;

pub fn parse_angle(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty angle".into());
    }
    let mut value = 1.0;
    let mut op = '*';
    let mut token = String::new();
    let apply = |value: &mut f64, op: char, token: &str| -> Result<(), String> {
        let t = token.trim();
        let x = if t.eq_ignore_ascii_case("pi") {
            PI
        } else {
            t.parse::<f64>().map_err(|_| format!("bad angle term '{t}'"))?
        };
        if op == '*' {
            *value *= x;
        } else if x == 0.0 {
            return Err("division by zero in angle".into());
        } else {
            *value /= x;
        }
        Ok(())
    };
    for ch in s.chars() {
        if ch == '*' || ch == '/' {
            apply(&mut value, op, &token)?;
            token.clear();
            op = ch;
        } else {
            token.push(ch);
        }
    }
    apply(&mut value, op, &token)?;
    if !value.is_finite() {
        return Err("angle must be finite".into());
    }
    Ok(value)
}

/// A single angle or an inclusive range `start:stop:count`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSpec(pub Vec<f64>);

pub fn parse_angle_spec(s: &str) -> Result<AngleSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [one] => Ok(AngleSpec(vec![parse_angle(one)?])),
        [start, stop, count] => {
            let (a, b) = (parse_angle(start)?, parse_angle(stop)?);
            let n: usize = count
                .trim()
                .parse()
                .map_err(|_| format!("bad point count '{count}'"))?;
            Ok(AngleSpec(linspace(a, b, n)?))
        }
        _ => Err("expected ANGLE or START:STOP:COUNT".into()),
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Result<Vec<f64>, String> {
    match n {
        0 => Err("empty grid".into()),
        1 => Ok(vec![a]),
        _ => Ok((0..n)
            .map(|i| a + (b - a) * (i as f64 / (n - 1) as f64))
            .collect()),
    }
}
