//! CSV writers for the exported artifacts, and a minimal reader for
//! re-summarizing them. Floats are written with `{:e}`, the shortest
//! round-trip representation, so files are reproducible byte for byte and
//! parse back exactly.

use std::io::Write;
use std::path::Path;

use crate::diagnostics::LedgerRow;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::profile::ShockProfile;
use crate::shifts::ShiftLogRow;
use crate::solver::FlowState;

/// Profile table: a metadata comment line, then xi, v, u, h, dv_dxi.
pub fn write_profile_csv(path: &Path, profile: &ShockProfile) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!(
        "# family={},sigma={:e},sigma_star={:e},delta={:e}\n",
        profile.family(),
        profile.sigma(),
        profile.sigma_star(),
        profile.delta()
    ));
    out.push_str("xi,v,u,h,dv_dxi\n");
    let ode = profile.ode();
    for i in 0..profile.len() {
        let xi = profile.xi_at(i);
        let v = profile.v_tab()[i];
        out.push_str(&format!(
            "{:e},{:e},{:e},{:e},{:e}\n",
            xi,
            v,
            profile.u_tab()[i],
            profile.h_tab()[i],
            ode.rhs(v)
        ));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Snapshot of the flow fields: t, x1 (, x2, x3 when resolved), v, u1, u2, u3.
pub fn write_snapshot_csv(path: &Path, grid: &Grid, state: &FlowState) -> Result<()> {
    let f = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(f);
    if grid.is_1d() {
        writeln!(w, "t,x1,v,u1,u2,u3")?;
        for i in 0..grid.n1 {
            writeln!(
                w,
                "{:e},{:e},{:e},{:e},{:e},{:e}",
                state.t,
                grid.x1(i),
                state.v[i],
                state.u[0][i],
                state.u[1][i],
                state.u[2][i]
            )?;
        }
    } else {
        writeln!(w, "t,x1,x2,x3,v,u1,u2,u3")?;
        for k in 0..grid.n3 {
            for j in 0..grid.n2 {
                for i in 0..grid.n1 {
                    let id = grid.idx(i, j, k);
                    writeln!(
                        w,
                        "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
                        state.t,
                        grid.x1(i),
                        grid.x2(j),
                        grid.x3(k),
                        state.v[id],
                        state.u[0][id],
                        state.u[1][id],
                        state.u[2][id]
                    )?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Snapshot in a simple binary layout: an ascii header line, then the v and
/// u fields as little-endian f64 in grid order.
pub fn write_snapshot_bin(path: &Path, grid: &Grid, state: &FlowState) -> Result<()> {
    let f = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(f);
    writeln!(
        w,
        "twoshock-snapshot t={:e} n1={} n2={} n3={} fields=v,u1,u2,u3 layout=le_f64",
        state.t, grid.n1, grid.n2, grid.n3
    )?;
    for field in [&state.v, &state.u[0], &state.u[1], &state.u[2]] {
        for &x in field.iter() {
            w.write_all(&x.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

pub const SHIFT_LOG_HEADER: &str =
    "t,X1,X2,Xdot1,Xdot2,sep_margin_left,sep_margin_right,sup_perturbation";

pub fn write_shift_log(path: &Path, rows: &[ShiftLogRow]) -> Result<()> {
    let f = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(f);
    writeln!(w, "{SHIFT_LOG_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
            r.t,
            r.x1,
            r.x2,
            r.xdot1,
            r.xdot2,
            r.sep_margin_left,
            r.sep_margin_right,
            r.sup_perturbation
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_ledger(path: &Path, rows: &[LedgerRow]) -> Result<()> {
    let f = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(f);
    writeln!(w, "{}", LedgerRow::CSV_HEADER)?;
    for r in rows {
        writeln!(w, "{}", r.to_csv())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a CSV with a header line into named columns of f64.
pub fn read_csv_columns(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Config(format!("{}: empty csv", path.display())))?;
    let names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    let mut cols: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    for (lno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != names.len() {
            return Err(Error::Config(format!(
                "{}: row {} has {} fields, header has {}",
                path.display(),
                lno + 2,
                fields.len(),
                names.len()
            )));
        }
        for (c, field) in fields.iter().enumerate() {
            let val: f64 = field.trim().parse().map_err(|_| {
                Error::Config(format!(
                    "{}: row {} column {}: not a number: '{}'",
                    path.display(),
                    lno + 2,
                    names[c],
                    field
                ))
            })?;
            cols[c].push(val);
        }
    }
    Ok((names, cols))
}

/// Parses ledger rows back from a CSV written by [`write_ledger`].
pub fn read_ledger(path: &Path) -> Result<Vec<LedgerRow>> {
    let (names, cols) = read_csv_columns(path)?;
    let expect: Vec<&str> = LedgerRow::CSV_HEADER.split(',').collect();
    if names != expect {
        return Err(Error::Config(format!(
            "{}: unexpected ledger header {:?}",
            path.display(),
            names
        )));
    }
    let n = cols[0].len();
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        rows.push(LedgerRow {
            t: cols[0][r],
            e_weighted: cols[1][r],
            g_s_p: cols[2][r],
            g_s_v: cols[3][r],
            d: cols[4][r],
            d1: cols[5][r],
            d2: cols[6][r],
            d3: cols[7][r],
            g1: cols[8][r],
            g3: cols[9][r],
            interaction_12: cols[10][r],
            sup_v_dev: cols[11][r],
            sup_u_dev: cols[12][r],
            x1: cols[13][r],
            x2: cols[14][r],
            xdot1: cols[15][r],
            xdot2: cols[16][r],
            phi2_tail1: cols[17][r],
            phi1_tail2: cols[18][r],
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_round_trips_exactly() {
        let row = LedgerRow {
            t: 0.1,
            e_weighted: 1.234e-5,
            g_s_p: 2.0_f64.powi(-40),
            g_s_v: 0.0,
            d: 3.3e3,
            d1: 1.0 / 3.0,
            d2: f64::MIN_POSITIVE,
            d3: 9.9e99,
            g1: -0.0,
            g3: 5.5,
            interaction_12: 1e-300,
            sup_v_dev: 0.25,
            sup_u_dev: 0.5,
            x1: -1.7e-8,
            x2: 0.125,
            xdot1: -3.0,
            xdot2: 4.0,
            phi2_tail1: 6.0,
            phi1_tail2: 7.0,
        };
        let dir = std::env::temp_dir().join("twoshock_csv_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ledger.csv");
        write_ledger(&path, &[row]).unwrap();
        let back = read_ledger(&path).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].e_weighted, row.e_weighted);
        assert_eq!(back[0].d2, row.d2);
        assert_eq!(back[0].interaction_12, row.interaction_12);
        assert_eq!(back[0].x1, row.x1);
    }
}
