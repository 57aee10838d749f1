//! Text formats for rule tables and configurations.
//!
//! Rule file: first line `m k`, then `m^k` lines `s_1 .. s_k -> s` in
//! ascending mixed-radix order of the inputs. Configuration file: one
//! lattice row per line, one digit per cell; `.` and `#` stand for 0 and 1
//! when `m = 2`.

use std::fmt::Write;

use super::{decode_env, CellAlphabet, Configuration, LatticeGeometry, LocalRule, Symbol};
use crate::error::{Error, Result};

/// Parses a rule table. Offsets are not part of the file and are supplied
/// by the caller.
pub fn parse_rule(text: &str, alphabet_kind: super::SubtractKind, offsets: Vec<Vec<i64>>) -> Result<LocalRule> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty rule file"))?;
    let nums = parse_numbers(hline, 1, header)?;
    let [m, k] = nums[..] else {
        return Err(Error::parse(hline, 1, "header must be `m k`"));
    };
    let alphabet = CellAlphabet::new(m, alphabet_kind).map_err(|e| Error::parse(hline, 1, e.to_string()))?;
    if offsets.len() != k {
        return Err(Error::parse(
            hline,
            1,
            format!("rule arity {k} does not match {} offsets", offsets.len()),
        ));
    }
    let len = m
        .checked_pow(k as u32)
        .filter(|&n| n <= 1 << 24)
        .ok_or_else(|| Error::parse(hline, 1, "table too large"))?;
    let mut table = Vec::with_capacity(len);
    let mut expected = vec![0 as Symbol; k];
    for idx in 0..len {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| Error::parse(hline, 1, format!("expected {len} table lines, found {idx}")))?;
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| Error::parse(lno, 1, "missing `->`"))?;
        let inputs = parse_numbers(lno, 1, lhs)?;
        decode_env(idx, m, &mut expected);
        if inputs.len() != k || inputs.iter().zip(&expected).any(|(&a, &b)| a != b as usize) {
            return Err(Error::parse(
                lno,
                1,
                format!("expected inputs {expected:?} in ascending order"),
            ));
        }
        let rhs_col = lhs.chars().count() + 3;
        let col = rhs_col + rhs.len() - rhs.trim_start().len();
        let out = parse_numbers(lno, rhs_col, rhs)?;
        let [s] = out[..] else {
            return Err(Error::parse(lno, col, "expected one output symbol"));
        };
        if s >= m {
            return Err(Error::parse(lno, col, format!("symbol {s} outside alphabet of {m}")));
        }
        table.push(s as Symbol);
    }
    if let Some((lno, _)) = lines.next() {
        return Err(Error::parse(lno, 1, "trailing content after table"));
    }
    LocalRule::new(alphabet, offsets, table)
}

fn parse_numbers(lno: usize, first_col: usize, s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut col = first_col;
    for tok in s.split(' ') {
        if !tok.is_empty() {
            let tok_trim = tok.trim();
            out.push(
                tok_trim
                    .parse()
                    .map_err(|_| Error::parse(lno, col, format!("not a number: `{tok_trim}`")))?,
            );
        }
        col += tok.chars().count() + 1;
    }
    Ok(out)
}

/// Writes a rule table in the file format above.
pub fn format_rule(rule: &LocalRule) -> String {
    let m = rule.alphabet().size();
    let k = rule.arity();
    let mut out = format!("{m} {k}\n");
    let mut env = vec![0; k];
    for (idx, &s) in rule.table().iter().enumerate() {
        decode_env(idx, m, &mut env);
        let inputs: Vec<String> = env.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "{} -> {s}", inputs.join(" "));
    }
    out
}

/// Parses a configuration. A single row gives a ring, several rows a 2D
/// torus.
pub fn parse_configuration(text: &str, alphabet: CellAlphabet) -> Result<Configuration> {
    let m = alphabet.size();
    let mut rows: Vec<Vec<Symbol>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::with_capacity(line.len());
        for (j, ch) in line.chars().enumerate() {
            let s = match ch {
                '.' if m == 2 => 0,
                '#' if m == 2 => 1,
                c => c
                    .to_digit(36)
                    .map(|d| d as usize)
                    .filter(|&d| d < m)
                    .ok_or_else(|| Error::parse(i + 1, j + 1, format!("invalid cell symbol `{c}`")))?,
            };
            row.push(s as Symbol);
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::parse(
                    i + 1,
                    1,
                    format!("row has {} cells, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(1, 1, "empty configuration"));
    }
    let geometry = if rows.len() == 1 {
        LatticeGeometry::ring(rows[0].len())?
    } else {
        LatticeGeometry::torus(rows.len(), rows[0].len())?
    };
    Configuration::new(geometry, alphabet, rows.concat())
}

/// Renders a configuration one row per line (rings on a single line).
pub fn format_configuration(config: &Configuration) -> String {
    let dims = config.geometry().dims();
    let cols = *dims.last().unwrap_or(&1);
    let mut out = String::new();
    for row in config.cells().chunks(cols) {
        for &s in row {
            out.push(std::char::from_digit(s as u32, 36).unwrap_or('?'));
        }
        out.push('\n');
    }
    out
}

/// Centered default offsets for a rule of arity `k` read from a file: a 1D
/// window of radius `(k-1)/2`, or the Moore (9) / von Neumann (5) shapes
/// in 2D.
pub fn default_offsets(k: usize, rank: usize) -> Result<Vec<Vec<i64>>> {
    match (rank, k) {
        (1, k) if k % 2 == 1 => {
            let r = (k / 2) as i64;
            Ok((-r..=r).map(|o| vec![o]).collect())
        }
        (2, 9) => Ok(super::moore_offsets()),
        (2, 5) => Ok(vec![vec![-1, 0], vec![0, -1], vec![0, 0], vec![0, 1], vec![1, 0]]),
        _ => Err(Error::InvalidArgument(format!(
            "no default neighborhood for arity {k} in {rank}D; pass offsets explicitly"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{elementary_rule, SubtractKind};

    #[test]
    fn rule_round_trip() {
        let rule = elementary_rule(110).unwrap();
        let text = format_rule(&rule);
        assert!(text.starts_with("2 3\n0 0 0 -> 0\n0 0 1 -> 1\n"));
        let back = parse_rule(&text, SubtractKind::ModM, default_offsets(3, 1).unwrap()).unwrap();
        assert_eq!(back, rule);
    }

    #[test]
    fn rule_diagnostics_carry_position() {
        let bad = "2 1\n0 -> 1\n1 -> x\n";
        match parse_rule(bad, SubtractKind::ModM, vec![vec![0]]) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let order = "2 1\n1 -> 1\n0 -> 0\n";
        assert!(matches!(
            parse_rule(order, SubtractKind::ModM, vec![vec![0]]),
            Err(Error::Parse { line: 2, .. })
        ));
        let out_of_range = "2 1\n0 -> 1\n1 -> 2\n";
        assert!(matches!(
            parse_rule(out_of_range, SubtractKind::ModM, vec![vec![0]]),
            Err(Error::Parse { line: 3, column: 6, .. })
        ));
    }

    #[test]
    fn configuration_aliases() {
        let c = parse_configuration(".#.\n#..\n", CellAlphabet::binary()).unwrap();
        assert_eq!(c.geometry().dims(), &[2, 3]);
        assert_eq!(c.cells(), &[0, 1, 0, 1, 0, 0]);
        assert_eq!(format_configuration(&c), "010\n100\n");
        let ring = parse_configuration("00110\n", CellAlphabet::binary()).unwrap();
        assert_eq!(ring.geometry().dims(), &[5]);
    }

    #[test]
    fn configuration_errors() {
        assert!(matches!(
            parse_configuration("012\n", CellAlphabet::binary()),
            Err(Error::Parse { line: 1, column: 3, .. })
        ));
        assert!(matches!(
            parse_configuration("01\n011\n", CellAlphabet::binary()),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
