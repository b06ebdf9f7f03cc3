//! Input file parsing: polynomials, curves, and point sets.
//!
//! All three formats are line-oriented `key: value` text. Blank lines and
//! lines starting with `#` are ignored. Rationals are written `p/q` (a bare
//! integer is also accepted).
//!
//! Polynomial file:
//! ```text
//! n: 2
//! term: 1/2 * x1^2 x2^1
//! term: -3 * x2^3
//! ```
//!
//! Curve file (coefficients by ascending power; the declared degree must
//! match the actual maximal coordinate degree):
//! ```text
//! n: 2
//! degree: 2
//! coord: 0 0 1
//! coord: 0 1
//! ```
//!
//! Points file (`params` is optional and must match the point count):
//! ```text
//! n: 2
//! point: 0 0
//! point: 1 1
//! params: -1 1
//! ```

use rigidity_core::curves::PolynomialCurve;
use rigidity_core::exactpoly::{parse_rational, parse_term, MVPoly, Rational, UniPoly};

pub type ParseResult<T> = Result<T, String>;

fn key_value_lines(content: &str) -> ParseResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (lineno, raw) in content.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| format!("line {}: expected `key: value`, got `{line}`", lineno + 1))?;
        out.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn leading_dimension(lines: &[(String, String)]) -> ParseResult<usize> {
    match lines.first() {
        Some((key, value)) if key == "n" => value
            .parse::<usize>()
            .map_err(|_| format!("bad dimension `{value}`"))
            .and_then(|n| {
                if n == 0 {
                    Err("dimension must be at least 1".to_string())
                } else {
                    Ok(n)
                }
            }),
        _ => Err("file must start with an `n:` line".to_string()),
    }
}

fn rational_list(value: &str) -> ParseResult<Vec<Rational>> {
    value
        .split_whitespace()
        .map(|tok| parse_rational(tok).map_err(|e| e.to_string()))
        .collect()
}

pub fn parse_poly_file(content: &str) -> ParseResult<MVPoly> {
    let lines = key_value_lines(content)?;
    let n = leading_dimension(&lines)?;
    let mut terms = Vec::new();
    for (key, value) in &lines[1..] {
        match key.as_str() {
            "term" => terms.push(parse_term(value, n).map_err(|e| e.to_string())?),
            other => return Err(format!("unexpected key `{other}` in polynomial file")),
        }
    }
    MVPoly::from_terms(n, terms).map_err(|e| e.to_string())
}

pub fn parse_curve_file(content: &str) -> ParseResult<PolynomialCurve> {
    let lines = key_value_lines(content)?;
    let n = leading_dimension(&lines)?;
    let mut declared_degree: Option<usize> = None;
    let mut coords: Vec<UniPoly> = Vec::new();
    for (key, value) in &lines[1..] {
        match key.as_str() {
            "degree" => {
                declared_degree = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| format!("bad degree `{value}`"))?,
                );
            }
            "coord" => {
                let coeffs = rational_list(value)?;
                if coeffs.is_empty() {
                    return Err("coordinate needs at least one coefficient".to_string());
                }
                coords.push(UniPoly::from_coeffs(coeffs));
            }
            other => return Err(format!("unexpected key `{other}` in curve file")),
        }
    }
    if coords.len() != n {
        return Err(format!("expected {n} coordinates, got {}", coords.len()));
    }
    let curve = PolynomialCurve::new(coords).map_err(|e| e.to_string())?;
    let declared = declared_degree.ok_or("curve file is missing the `degree:` line")?;
    if curve.degree() != declared {
        return Err(format!(
            "declared degree {declared} but the coordinates have maximal degree {}",
            curve.degree()
        ));
    }
    Ok(curve)
}

pub struct PointsFile {
    pub points: Vec<Vec<Rational>>,
    pub params: Option<Vec<Rational>>,
}

pub fn parse_points_file(content: &str) -> ParseResult<PointsFile> {
    let lines = key_value_lines(content)?;
    let n = leading_dimension(&lines)?;
    let mut points = Vec::new();
    let mut params = None;
    for (key, value) in &lines[1..] {
        match key.as_str() {
            "point" => {
                let coords = rational_list(value)?;
                if coords.len() != n {
                    return Err(format!(
                        "point has {} coordinates, expected {n}",
                        coords.len()
                    ));
                }
                points.push(coords);
            }
            "params" => params = Some(rational_list(value)?),
            other => return Err(format!("unexpected key `{other}` in points file")),
        }
    }
    if points.is_empty() {
        return Err("points file contains no points".to_string());
    }
    if let Some(p) = &params {
        if p.len() != points.len() {
            return Err(format!(
                "{} params for {} points",
                p.len(),
                points.len()
            ));
        }
    }
    Ok(PointsFile { points, params })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rigidity_core::exactpoly::rat;

    #[test]
    fn parses_polynomial_file() {
        let f = parse_poly_file("# f = x^2 y - y^3/3\nn: 2\nterm: 1 * x1^2 x2^1\nterm: -1/3 * x2^3\n")
            .unwrap();
        assert_eq!(f.n(), 2);
        assert_eq!(f.num_terms(), 2);
    }

    #[test]
    fn parses_curve_file() {
        let w = parse_curve_file("n: 2\ndegree: 2\ncoord: 0 0 1\ncoord: 0 1\n").unwrap();
        assert_eq!(w.dimension(), 2);
        assert_eq!(w.degree(), 2);
        assert!(parse_curve_file("n: 1\ndegree: 3\ncoord: 0 1\n").is_err());
        assert!(parse_curve_file("n: 2\ndegree: 1\ncoord: 0 1\n").is_err());
        assert!(parse_curve_file("degree: 1\nn: 1\ncoord: 0 1\n").is_err());
    }

    #[test]
    fn parses_points_file() {
        let pf = parse_points_file("n: 2\npoint: 0 0\npoint: 1 1\nparams: -1 1\n").unwrap();
        assert_eq!(pf.points.len(), 2);
        assert_eq!(pf.params.as_deref(), Some(&[rat(-1, 1), rat(1, 1)][..]));
        assert!(parse_points_file("n: 2\npoint: 0 0\nparams: -1 1\n").is_err());
        assert!(parse_points_file("n: 2\npoint: 0\n").is_err());
    }
}
