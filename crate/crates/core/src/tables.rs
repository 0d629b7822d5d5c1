//! Regeneration of the published count tables and comparison against the
//! embedded reference values.

use std::fmt::Write as _;

use serde::Serialize;

use crate::counting::{delta1_closed, delta2_closed, totals};
use crate::terms::{brute_force_delta1, brute_force_delta2};

/// Representative `(p, q)` for each tabulated `p+q`.
pub const REPRESENTATIVES: [(u32, u32); 4] = [(1, 1), (2, 1), (3, 1), (3, 2)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    ClosedForm,
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    /// Row key: `N` for tables 1 and 2, `p+q` for table 3.
    pub row: u32,
    /// Column key: `p+q` for tables 1 and 2, quantity name for table 3.
    pub column: String,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub which: u8,
    pub cells: Vec<Cell>,
}

const TABLE1: [[u64; 4]; 15] = [
    [1, 0, 0, 0],
    [1, 1, 0, 0],
    [3, 1, 1, 0],
    [3, 2, 1, 1],
    [6, 3, 2, 1],
    [6, 4, 2, 2],
    [10, 5, 4, 2],
    [10, 7, 4, 3],
    [15, 8, 6, 4],
    [15, 10, 6, 5],
    [21, 12, 9, 6],
    [21, 14, 9, 7],
    [28, 16, 12, 8],
    [28, 19, 12, 10],
    [36, 21, 16, 11],
];

const TABLE2: [[u64; 4]; 13] = [
    [1, 0, 0, 0],
    [1, 1, 0, 0],
    [4, 1, 1, 0],
    [4, 3, 1, 1],
    [10, 4, 3, 1],
    [10, 7, 3, 3],
    [20, 9, 7, 3],
    [20, 14, 7, 6],
    [35, 17, 13, 7],
    [35, 24, 13, 11],
    [56, 29, 22, 13],
    [56, 38, 22, 18],
    [84, 45, 34, 21],
];

const TABLE3: [[u64; 3]; 4] = [[55, 90, 70], [37, 54, 34], [33, 46, 26], [27, 34, 14]];

const TABLE3_COLUMNS: [&str; 3] = ["N_coef", "N_op", "N_c"];

fn first_order(which: u8) -> u32 {
    match which {
        1 => 4,
        2 => 6,
        _ => 10,
    }
}

/// Reference values as published.
pub fn published_table(which: u8) -> Option<CountTable> {
    let mut cells = Vec::new();
    match which {
        1 | 2 => {
            let rows: &[[u64; 4]] = if which == 1 { &TABLE1 } else { &TABLE2 };
            for (r, row) in rows.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    cells.push(Cell {
                        row: first_order(which) + r as u32,
                        column: (c + 2).to_string(),
                        value: *v,
                    });
                }
            }
        }
        3 => {
            for (r, row) in TABLE3.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    cells.push(Cell {
                        row: r as u32 + 2,
                        column: TABLE3_COLUMNS[c].into(),
                        value: *v,
                    });
                }
            }
        }
        _ => return None,
    }
    Some(CountTable { which, cells })
}

pub fn regenerate_table(which: u8) -> Option<CountTable> {
    regenerate_table_with(which, Method::ClosedForm)
}

pub fn regenerate_table_with(which: u8, method: Method) -> Option<CountTable> {
    let mut cells = Vec::new();
    match which {
        1 | 2 => {
            let last = 18;
            for order in first_order(which)..=last {
                for (p, q) in REPRESENTATIVES {
                    let value = match (which, method) {
                        (1, Method::ClosedForm) => delta1_closed(order, p, q),
                        (1, Method::BruteForce) => brute_force_delta1(order, p, q),
                        (_, Method::ClosedForm) => delta2_closed(order, p, q),
                        (_, Method::BruteForce) => brute_force_delta2(order, p, q),
                    };
                    cells.push(Cell {
                        row: order,
                        column: (p + q).to_string(),
                        value,
                    });
                }
            }
        }
        3 => {
            for (p, q) in REPRESENTATIVES {
                let r = totals(2, 10, p, q).expect("representatives are valid");
                let (coef, op, c) = match method {
                    Method::ClosedForm => (r.n_coef, r.n_op, r.n_c),
                    Method::BruteForce => {
                        let c = crate::terms::enumerate_coupling(2, 10, p, q).len() as u64;
                        let d = crate::terms::enumerate_dunham(2, 10).len() as u64;
                        (d + c / 2, d + c, c)
                    }
                };
                for (name, v) in TABLE3_COLUMNS.iter().zip([coef, op, c]) {
                    cells.push(Cell {
                        row: p + q,
                        column: (*name).into(),
                        value: v,
                    });
                }
            }
        }
        _ => return None,
    }
    Some(CountTable { which, cells })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellCheck {
    pub which: u8,
    pub row: u32,
    pub column: String,
    pub expected: u64,
    pub computed: Option<u64>,
    pub pass: bool,
}

/// Compares every published cell with its regenerated counterpart.
pub fn compare_tables(expected: &CountTable, computed: &CountTable) -> Vec<CellCheck> {
    expected
        .cells
        .iter()
        .map(|e| {
            let got = computed
                .cells
                .iter()
                .find(|c| c.row == e.row && c.column == e.column)
                .map(|c| c.value);
            CellCheck {
                which: expected.which,
                row: e.row,
                column: e.column.clone(),
                expected: e.value,
                computed: got,
                pass: got == Some(e.value),
            }
        })
        .collect()
}

impl CountTable {
    fn columns(&self) -> Vec<String> {
        let mut cols: Vec<String> = Vec::new();
        for c in &self.cells {
            if !cols.contains(&c.column) {
                cols.push(c.column.clone());
            }
        }
        cols
    }

    fn rows(&self) -> Vec<u32> {
        let mut rows: Vec<u32> = self.cells.iter().map(|c| c.row).collect();
        rows.dedup();
        rows
    }

    pub fn get(&self, row: u32, column: &str) -> Option<u64> {
        self.cells
            .iter()
            .find(|c| c.row == row && c.column == column)
            .map(|c| c.value)
    }

    /// Aligned text in the layout of the published tables.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let cols = self.columns();
        if self.which == 3 {
            let _ = write!(out, "{:>5}", "p+q");
            for c in &cols {
                let _ = write!(out, " {c:>7}");
            }
            out.push('\n');
            for r in self.rows() {
                let _ = write!(out, "{r:>5}");
                for c in &cols {
                    let _ = write!(out, " {:>7}", self.get(r, c).unwrap_or_default());
                }
                out.push('\n');
            }
            return out;
        }
        let quantity = if self.which == 1 { "D1" } else { "D2" };
        let _ = write!(out, "{:>3}", "N");
        for _ in &cols {
            let _ = write!(out, " {:>4} {quantity:>4}", "p+q");
        }
        out.push('\n');
        for r in self.rows() {
            let _ = write!(out, "{r:>3}");
            for c in &cols {
                let _ = write!(out, " {c:>4} {:>4}", self.get(r, c).unwrap_or_default());
            }
            out.push('\n');
        }
        out
    }
}
