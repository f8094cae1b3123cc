//! Latin squares with keyed rows and columns.

use std::collections::BTreeSet;

/// An m×m array over symbols 0..m. Rows and columns carry the parameter
/// values they were built from, so squares of one family can be compared
/// row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    pub row_keys: Vec<usize>,
    pub col_keys: Vec<usize>,
    pub cells: Vec<Vec<usize>>,
}

impl LatinSquare {
    pub fn new(row_keys: Vec<usize>, col_keys: Vec<usize>, cells: Vec<Vec<usize>>) -> LatinSquare {
        LatinSquare { row_keys, col_keys, cells }
    }

    /// Square with keys 0..m.
    pub fn from_cells(cells: Vec<Vec<usize>>) -> LatinSquare {
        let m = cells.len();
        LatinSquare::new((0..m).collect(), (0..m).collect(), cells)
    }

    pub fn order(&self) -> usize {
        self.cells.len()
    }

    pub fn row(&self, key: usize) -> Option<&[usize]> {
        self.row_keys.iter().position(|&k| k == key).map(|r| self.cells[r].as_slice())
    }
}

/// Every symbol of 0..m exactly once per row and per column.
pub fn check_latin(sq: &LatinSquare) -> bool {
    let m = sq.order();
    let full: BTreeSet<usize> = (0..m).collect();
    sq.cells.iter().all(|row| row.len() == m && row.iter().copied().collect::<BTreeSet<_>>() == full)
        && (0..m).all(|c| sq.cells.iter().map(|row| row[c]).collect::<BTreeSet<_>>() == full)
}

/// True when for every row key `i` of `a`, row `shift(i)` of `b` exists and
/// equals row `i` of `a`.
pub fn rows_shift_match(a: &LatinSquare, b: &LatinSquare, shift: impl Fn(usize) -> usize) -> bool {
    a.col_keys == b.col_keys
        && a.row_keys.iter().zip(&a.cells).all(|(&i, row)| b.row(shift(i)) == Some(row.as_slice()))
}

/// True when every row is a cyclic shift of 0..m, i.e. the square is the
/// addition table of Z_m with rows permuted (columns in key order 0..m).
pub fn is_row_permuted_cyclic_table(sq: &LatinSquare) -> bool {
    let m = sq.order();
    check_latin(sq)
        && sq.col_keys == (0..m).collect::<Vec<_>>()
        && sq.cells.iter().all(|row| (0..m).all(|c| row[c] == (row[0] + c) % m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_squares() {
        assert!(check_latin(&LatinSquare::from_cells(vec![vec![0, 1], vec![1, 0]])));
        assert!(!check_latin(&LatinSquare::from_cells(vec![vec![0, 0], vec![1, 1]])));
        assert!(!check_latin(&LatinSquare::from_cells(vec![vec![0, 1], vec![0, 1]])));
        assert!(!check_latin(&LatinSquare::from_cells(vec![vec![0, 2], vec![2, 0]])));
        assert!(check_latin(&LatinSquare::from_cells(vec![])));
    }

    #[test]
    fn cyclic_tables() {
        let sq = LatinSquare::from_cells(vec![vec![2, 0, 1], vec![0, 1, 2], vec![1, 2, 0]]);
        assert!(is_row_permuted_cyclic_table(&sq));
        let not = LatinSquare::from_cells(vec![vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]]);
        assert!(check_latin(&not));
        assert!(!is_row_permuted_cyclic_table(&not));
    }

    #[test]
    fn shifted_rows() {
        let a = LatinSquare::new(vec![0, 1], vec![0, 1], vec![vec![0, 1], vec![1, 0]]);
        let b = LatinSquare::new(vec![1, 2], vec![0, 1], vec![vec![0, 1], vec![1, 0]]);
        assert!(rows_shift_match(&a, &b, |i| i + 1));
        assert!(!rows_shift_match(&a, &b, |i| i));
    }
}
