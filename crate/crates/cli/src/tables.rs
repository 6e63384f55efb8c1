//! Parameter tables for PRM_nu(2,16) and PRM_nu(3,8), one CSV row per
//! quantity and one column per `nu`.

use prm::codes::{prm_params, CodeSpec};
use prm::{Field, Result};

pub const NU_2_16: [usize; 9] = [5, 8, 11, 14, 17, 20, 23, 26, 29];
pub const NU_3_8: [usize; 8] = [2, 4, 6, 9, 12, 14, 16, 18];

fn row(label: &str, vals: impl IntoIterator<Item = usize>) -> String {
    std::iter::once(label.to_string())
        .chain(vals.into_iter().map(|v| v.to_string()))
        .collect::<Vec<_>>()
        .join(",")
}

fn specs(m: usize, field: &Field, nus: &[usize]) -> Result<Vec<CodeSpec>> {
    nus.iter().map(|&nu| prm_params(m, field, nu)).collect()
}

/// `k` and `d` of PRM_nu(2,16).
pub fn table_one() -> Result<String> {
    let s = specs(2, &Field::new(2, 4)?, &NU_2_16)?;
    Ok([
        row("nu", NU_2_16),
        row("k", s.iter().map(|c| c.k)),
        row("d", s.iter().map(|c| c.d)),
    ]
    .join("\n")
        + "\n")
}

fn capacities(m: usize, field: &Field, nus: &[usize]) -> Result<String> {
    let s = specs(m, field, nus)?;
    Ok([
        row("nu", nus.iter().copied()),
        row("t0", s.iter().map(|c| c.t0)),
        row("tMD", s.iter().map(|c| c.t_md)),
        row("Difference", s.iter().map(|c| c.t_md - c.t0)),
    ]
    .join("\n")
        + "\n")
}

/// Correctable errors of the chart-wise decoder and of MDD for PRM_nu(2,16).
pub fn table_three() -> Result<String> {
    capacities(2, &Field::new(2, 4)?, &NU_2_16)
}

/// The same for PRM_nu(3,8).
pub fn table_four() -> Result<String> {
    capacities(3, &Field::new(2, 3)?, &NU_3_8)
}
