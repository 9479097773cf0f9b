use crate::function::FunctionSpec;
use crate::hilhorst::{hilhorst_window, make_window};

fn numbers<const N: usize>(kind: &str, args: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("{kind} takes {N} numbers, got '{args}'"));
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("'{p}' is not a finite number"))?;
    }
    Ok(out)
}

/// Two columns per line, separated by a comma or whitespace; `#` starts a comment.
fn read_table(path: &str) -> Result<FunctionSpec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let parse = |t: &str| {
            t.parse::<f64>()
                .map_err(|_| format!("{path}:{}: '{t}' is not a number", n + 1))
        };
        match cols[..] {
            [x, y] => {
                xs.push(parse(x)?);
                ys.push(parse(y)?);
            }
            _ => return Err(format!("{path}:{}: expected two columns", n + 1)),
        }
    }
    FunctionSpec::tabulated(xs, ys).map_err(|e| format!("{path}: {e}"))
}

/// Parse a function descriptor such as `indicator:0,1`.
pub fn parse_function(desc: &str) -> Result<FunctionSpec, String> {
    let (kind, args) = desc
        .split_once(':')
        .ok_or_else(|| format!("expected kind:params, got '{desc}'"))?;
    let spec = match kind.trim() {
        "indicator" => {
            let [a, b] = numbers("indicator", args)?;
            FunctionSpec::indicator(a, b)
        }
        "powerlaw" => {
            let [a, b, beta, lambda] = numbers("powerlaw", args)?;
            make_window(a, b, beta, lambda).map(Into::into)
        }
        "powerlaw-hilhorst" => {
            let [a, b, q] = numbers("powerlaw-hilhorst", args)?;
            hilhorst_window(a, b, q).map(Into::into)
        }
        "qgauss" => {
            let [q, width, radius] = numbers("qgauss", args)?;
            FunctionSpec::q_gaussian(q, width, radius)
        }
        "tabulated" => return read_table(args.trim()),
        other => return Err(format!("unknown function kind '{other}'")),
    };
    spec.map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn analytic_kinds() {
        assert_eq!(parse_function("indicator:0,1").unwrap().value(0.5), 1.0);
        let w = parse_function("powerlaw:1,2,2,1.4142135623730951").unwrap();
        assert!((w.value(1.0) - 2.0).abs() < 1e-15);
        let h = parse_function("powerlaw-hilhorst:1, 2, 1.5").unwrap();
        assert!((h.value(1.0) - 2.0).abs() < 1e-14);
        assert_eq!(
            parse_function("qgauss:1.5,1,3").unwrap().support(),
            (-3.0, 3.0)
        );
    }

    #[test]
    fn malformed_descriptors() {
        for bad in [
            "indicator",
            "indicator:1",
            "indicator:1,0",
            "powerlaw:1,2,x,1",
            "box:0,1",
            "powerlaw-hilhorst:1,2,1",
        ] {
            assert!(parse_function(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn tabulated_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# triangle\n0, 0\n1 1\n2,0").unwrap();
        let spec = parse_function(&format!("tabulated:{}", f.path().display())).unwrap();
        assert_eq!(spec.value(0.5), 0.5);
        assert!(parse_function("tabulated:/nonexistent/file").is_err());
    }
}
