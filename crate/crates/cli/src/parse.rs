//! Value parsers for complex numbers and comma-separated lists.

use num_complex::Complex64;

fn real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

/// `re` or `re,im`.
pub fn complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re] => Ok(Complex64::new(real(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(real(re)?, real(im)?)),
        _ => Err(format!("expected re or re,im, got {s:?}")),
    }
}

pub fn list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let v = s.split(',').map(real).collect::<Result<Vec<_>, _>>()?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected {N} comma-separated values, got {}", v.len()))
}

pub fn vec3(s: &str) -> Result<[f64; 3], String> {
    list::<3>(s)
}

pub fn grid(s: &str) -> Result<[usize; 4], String> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("not a grid size: {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    v.try_into().map_err(|v: Vec<usize>| format!("expected 4 grid sizes, got {}", v.len()))
}

/// Three real components, or six values read as `re,im` pairs.
pub fn axis(s: &str) -> Result<[Complex64; 3], String> {
    let v = s.split(',').map(real).collect::<Result<Vec<_>, _>>()?;
    match v.len() {
        3 => Ok([0, 1, 2].map(|k| Complex64::new(v[k], 0.0))),
        6 => Ok([0, 1, 2].map(|k| Complex64::new(v[2 * k], v[2 * k + 1]))),
        n => Err(format!("axis needs 3 reals or 6 values (re,im per component), got {n}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(complex("0.3").unwrap(), Complex64::new(0.3, 0.0));
        assert_eq!(complex("-1,2.5").unwrap(), Complex64::new(-1.0, 2.5));
        assert!(complex("1,2,3").is_err());
        assert!(complex("nan").is_err());
        assert!(complex("x").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(vec3("1,0,-2").unwrap(), [1.0, 0.0, -2.0]);
        assert!(vec3("1,0").is_err());
        assert_eq!(grid("5,5,6,7").unwrap(), [5, 5, 6, 7]);
        assert!(grid("5,5,-1,5").is_err());
        assert_eq!(axis("0,1,0,0,0,0").unwrap()[0], Complex64::new(0.0, 1.0));
        assert_eq!(axis("0,0,1").unwrap()[2], Complex64::new(1.0, 0.0));
    }
}
