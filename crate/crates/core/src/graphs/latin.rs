//! Latin rectangle completion.
//!
//! A `k × n` Latin rectangle with `k < n` extends by one row: in the
//! bipartite graph joining column `c` to each symbol not yet in that column,
//! every vertex has degree `n − k`, so Hall's condition holds and a perfect
//! matching exists. Repeating this fills the square.

use crate::error::{Error, Result};

/// Kuhn's augmenting-path matching. `allowed[c][s]` says symbol `s` may go
/// in column `c`. Returns the symbol for each column.
fn perfect_matching(allowed: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = allowed.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];

    fn augment(c: usize, allowed: &[Vec<bool>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for s in 0..allowed.len() {
            if allowed[c][s] && !seen[s] {
                seen[s] = true;
                if owner[s].map_or(true, |d| augment(d, allowed, seen, owner)) {
                    owner[s] = Some(c);
                    return true;
                }
            }
        }
        false
    }

    for c in 0..n {
        let mut seen = vec![false; n];
        if !augment(c, allowed, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut row = vec![0; n];
    for (s, c) in owner.iter().enumerate() {
        row[c.expect("perfect")] = s;
    }
    Some(row)
}

pub fn is_latin_rectangle(rows: &[Vec<usize>], n: usize) -> bool {
    let mut col_seen = vec![vec![false; n]; n];
    for row in rows {
        if row.len() != n {
            return false;
        }
        let mut row_seen = vec![false; n];
        for (c, &s) in row.iter().enumerate() {
            if s >= n || row_seen[s] || col_seen[c][s] {
                return false;
            }
            row_seen[s] = true;
            col_seen[c][s] = true;
        }
    }
    true
}

/// Extends 0-based rows to a full `n × n` Latin square.
pub fn complete_latin_rectangle(rows: &[Vec<usize>], n: usize) -> Result<Vec<Vec<usize>>> {
    if rows.len() > n || !is_latin_rectangle(rows, n) {
        return Err(Error::ConflictingConstraints(
            "rows do not form a Latin rectangle".into(),
        ));
    }
    let mut square = rows.to_vec();
    while square.len() < n {
        let allowed: Vec<Vec<bool>> = (0..n)
            .map(|c| (0..n).map(|s| square.iter().all(|r| r[c] != s)).collect())
            .collect();
        let row = perfect_matching(&allowed).expect("Hall's condition holds for Latin rectangles");
        square.push(row);
    }
    Ok(square)
}
