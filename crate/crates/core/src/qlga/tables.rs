use std::fmt::Write;

use crate::error::Result;

use super::identification::ket_label;
use super::{fock_space, FockState, QubotSpace, Statistics};

/// Two time slots of one spatial site with two internal modes.
fn table_space() -> QubotSpace {
    QubotSpace::with_time(1, 2, 2).expect("fixed dimensions")
}

/// `(sign, key)` of a product of basis keys that is a single basis state
/// up to sign, or `None` when it vanishes.
fn basis_product(a: &[u16], b: &[u16]) -> Result<Option<(i8, Vec<u16>)>> {
    let n = a.len();
    let mut s = FockState::basis(n, Statistics::Fermionic, a)?;
    for (m, &occ) in b.iter().enumerate() {
        if occ == 1 {
            s = s.create(m)?;
        }
    }
    Ok(s.amplitudes().iter().next().map(|(k, c)| {
        let sign = if c.re > 0.0 { 1 } else { -1 };
        (sign, k.clone())
    }))
}

fn signed(space: &QubotSpace, entry: Option<(i8, Vec<u16>)>) -> String {
    match entry {
        None => "0".to_string(),
        Some((s, k)) => format!("{}{}", if s > 0 { '+' } else { '-' }, ket_label(space, &k)),
    }
}

fn grid(out: &mut String, space: &QubotSpace, rows: &[Vec<u16>], cols: &[Vec<u16>]) -> Result<()> {
    let head: Vec<String> = cols.iter().map(|c| ket_label(space, c)).collect();
    writeln!(out, "∧\t{}", head.join("\t")).expect("string write");
    for r in rows {
        let cells = cols
            .iter()
            .map(|c| Ok(signed(space, basis_product(r, c)?)))
            .collect::<Result<Vec<_>>>()?;
        writeln!(out, "{}\t{}", ket_label(space, r), cells.join("\t")).expect("string write");
    }
    Ok(())
}

/// Multiplication tables of the four-mode exterior algebra: single modes
/// against single modes, single modes against pairs, and the top element
/// factored as a single mode times its complementary triple.
pub fn wedge_tables() -> Result<String> {
    let space = table_space();
    let grades = fock_space(space.mode_count(), Statistics::Fermionic)?;
    let mut out = String::new();
    out.push_str("[grade 1 ∧ grade 1]\n");
    grid(&mut out, &space, &grades[1], &grades[1])?;
    out.push_str("\n[grade 1 ∧ grade 2]\n");
    grid(&mut out, &space, &grades[1], &grades[2])?;
    out.push_str("\n[grade 4]\n");
    let top = &grades[4][0];
    for single in &grades[1] {
        let rest: Vec<u16> = top.iter().zip(single).map(|(t, s)| t - s).collect();
        let (sign, _) = basis_product(single, &rest)?.expect("complementary factors");
        writeln!(
            out,
            "{} = {}{} ∧ {}",
            ket_label(&space, top),
            if sign > 0 { '+' } else { '-' },
            ket_label(&space, single),
            ket_label(&space, &rest)
        )
        .expect("string write");
    }
    Ok(out)
}
