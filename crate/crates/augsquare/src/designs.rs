//! Core domain types: contractions, incidence matrices, augmented designs
//! and efficiency reports.
//!
//! A contraction is a `k x v` row-column design whose rows are complete
//! replicates of the treatments `1..=v`; equivalently a `k x v` Latin
//! rectangle. Treatment identifiers are 1-based everywhere they cross an
//! interface (files, display, accessors returning labels); matrix and grid
//! *indices* are ordinary 0-based Rust indices.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Validated `k x v` row-column design whose rows are complete replicates.
///
/// Invariants, enforced at construction:
/// * `v >= 4` and `2 <= k <= v - 2`;
/// * every row is a permutation of `1..=v`;
/// * every column holds `k` distinct treatments (binary columns).
///
/// The canonical file format is a JSON object `{"v": .., "k": .., "rows": [..]}`
/// with unknown fields rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawContraction")]
pub struct Contraction {
    v: usize,
    k: usize,
    rows: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawContraction {
    v: usize,
    k: usize,
    rows: Vec<Vec<usize>>,
}

impl TryFrom<RawContraction> for Contraction {
    type Error = Error;

    fn try_from(raw: RawContraction) -> Result<Self> {
        Contraction::new(raw.v, raw.k, raw.rows)
    }
}

impl Contraction {
    /// Validates and wraps a raw array. Row and column indices in errors
    /// are 1-based to match displays.
    pub fn new(v: usize, k: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if v < 4 || k < 2 || k + 2 > v || rows.len() != k {
            return Err(Error::BadDimensions { v, k });
        }
        let mut seen = vec![false; v + 1];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != v {
                return Err(Error::RowNotPermutation(i + 1));
            }
            seen.iter_mut().for_each(|s| *s = false);
            for &t in row {
                if t < 1 || t > v || seen[t] {
                    return Err(Error::RowNotPermutation(i + 1));
                }
                seen[t] = true;
            }
        }
        for j in 0..v {
            seen.iter_mut().for_each(|s| *s = false);
            for row in &rows {
                let t = row[j];
                if seen[t] {
                    return Err(Error::DuplicateInColumn(j + 1));
                }
                seen[t] = true;
            }
        }
        Ok(Self { v, k, rows })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Rows of the design; `rows()[i][j]` is the treatment in row `i`,
    /// column `j` (1-based label, 0-based indices).
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Treatments of column `j`, sorted ascending.
    pub fn column_set(&self, j: usize) -> Vec<usize> {
        let mut col: Vec<usize> = self.rows.iter().map(|row| row[j]).collect();
        col.sort_unstable();
        col
    }

    /// Treatment-by-column 0/1 incidence of the design.
    pub fn incidence(&self) -> IncidenceMatrix {
        let v = self.v;
        let mut data = vec![false; v * v];
        for row in &self.rows {
            for (j, &t) in row.iter().enumerate() {
                data[(t - 1) * v + j] = true;
            }
        }
        IncidenceMatrix { v, data }
    }

    /// Serializes to the canonical JSON file format.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("contraction serializes");
        s.push('\n');
        s
    }

    /// Parses and validates the canonical JSON file format.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// `v x v` treatment-by-column incidence of a contraction: entry `(t, j)`
/// is 1 iff treatment `t + 1` appears in column `j`. Row and column sums
/// all equal `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    v: usize,
    data: Vec<bool>,
}

impl IncidenceMatrix {
    pub fn order(&self) -> usize {
        self.v
    }

    /// Whether treatment with 0-based index `t` appears in column `j`.
    pub fn contains(&self, t: usize, j: usize) -> bool {
        self.data[t * self.v + j]
    }

    pub fn row_sum(&self, t: usize) -> usize {
        (0..self.v).filter(|&j| self.contains(t, j)).count()
    }

    pub fn col_sum(&self, j: usize) -> usize {
        (0..self.v).filter(|&t| self.contains(t, j)).count()
    }

    /// Treatments (1-based) incident to column `j`, ascending.
    pub fn column_set(&self, j: usize) -> Vec<usize> {
        (0..self.v).filter(|&t| self.contains(t, j)).map(|t| t + 1).collect()
    }
}

/// One cell of an augmented design. Labels are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Blank,
    Check(usize),
    Entry(usize),
}

/// `v x v` grid holding `k` check varieties (each once per row and per
/// column) and up to `v(v - k)` unreplicated test entries. Blank cells are
/// the not-yet-filled positions of test entries.
///
/// Treatments are ordered with the test entries first and the checks last,
/// so entry `e` has treatment index `e - 1` and check `c` has treatment
/// index `v(v - k) + c - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedDesign {
    v: usize,
    k: usize,
    grid: Vec<Cell>,
}

impl AugmentedDesign {
    /// Validates a grid: every check once per row and per column, every
    /// entry label in `1..=v(v-k)` at most once.
    pub fn from_grid(v: usize, k: usize, grid: Vec<Cell>) -> Result<Self> {
        if v < 4 || k < 2 || k + 2 > v {
            return Err(Error::BadDimensions { v, k });
        }
        if grid.len() != v * v {
            return Err(Error::BadGrid(format!(
                "expected {} cells, found {}",
                v * v,
                grid.len()
            )));
        }
        let m = v * (v - k);
        let mut entry_seen = vec![false; m + 1];
        for cell in &grid {
            match *cell {
                Cell::Blank => {}
                Cell::Check(c) => {
                    if c < 1 || c > k {
                        return Err(Error::BadGrid(format!("check label {c} out of 1..={k}")));
                    }
                }
                Cell::Entry(e) => {
                    if e < 1 || e > m {
                        return Err(Error::BadGrid(format!("entry label {e} out of 1..={m}")));
                    }
                    if entry_seen[e] {
                        return Err(Error::BadGrid(format!("entry {e} appears twice")));
                    }
                    entry_seen[e] = true;
                }
            }
        }
        for i in 0..v {
            let mut row_seen = vec![false; k + 1];
            let mut col_seen = vec![false; k + 1];
            let mut row_checks = 0;
            let mut col_checks = 0;
            for j in 0..v {
                if let Cell::Check(c) = grid[i * v + j] {
                    if row_seen[c] {
                        return Err(Error::BadGrid(format!("check {c} twice in row {}", i + 1)));
                    }
                    row_seen[c] = true;
                    row_checks += 1;
                }
                if let Cell::Check(c) = grid[j * v + i] {
                    if col_seen[c] {
                        return Err(Error::BadGrid(format!("check {c} twice in column {}", i + 1)));
                    }
                    col_seen[c] = true;
                    col_checks += 1;
                }
            }
            if row_checks != k || col_checks != k {
                return Err(Error::BadGrid(format!(
                    "row/column {} does not hold all {k} checks",
                    i + 1
                )));
            }
        }
        Ok(Self { v, k, grid })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Total number of treatments: `v^2 - k(v - 1)`.
    pub fn v_star(&self) -> usize {
        self.v * self.v - self.k * (self.v - 1)
    }

    /// Number of test entries: `v(v - k)`.
    pub fn entry_count(&self) -> usize {
        self.v * (self.v - self.k)
    }

    pub fn cell(&self, i: usize, j: usize) -> Cell {
        self.grid[i * self.v + j]
    }

    pub fn grid(&self) -> &[Cell] {
        &self.grid
    }

    pub fn blank_count(&self) -> usize {
        self.grid.iter().filter(|c| matches!(c, Cell::Blank)).count()
    }

    /// Whether every test entry has been placed.
    pub fn is_complete(&self) -> bool {
        self.blank_count() == 0
    }

    pub(crate) fn with_grid(&self, grid: Vec<Cell>) -> Result<Self> {
        Self::from_grid(self.v, self.k, grid)
    }

    /// `v x v` 0/1 matrix with ones at check positions.
    pub fn check_positions(&self) -> IncidenceMatrix {
        let v = self.v;
        let data = (0..v * v)
            .map(|idx| matches!(self.grid[idx], Cell::Check(_)))
            .collect();
        IncidenceMatrix { v, data }
    }

    /// `v x v` 0/1 matrix with ones at test-entry positions (blanks count
    /// as entry positions until they are filled). Row and column sums are
    /// all `v - k`.
    pub fn entry_indicator(&self) -> IncidenceMatrix {
        let v = self.v;
        let data = (0..v * v)
            .map(|idx| !matches!(self.grid[idx], Cell::Check(_)))
            .collect();
        IncidenceMatrix { v, data }
    }

    /// Replication vector over the `v_star` treatments: 1 for each entry,
    /// `v` for each check.
    pub fn replication(&self) -> Vec<usize> {
        let m = self.entry_count();
        let mut r = vec![1; self.v_star()];
        r[m..].iter_mut().for_each(|x| *x = self.v);
        r
    }

    /// 0-based treatment index of a cell, if it holds a treatment.
    fn treatment_index(&self, cell: Cell) -> Option<usize> {
        match cell {
            Cell::Blank => None,
            Cell::Entry(e) => Some(e - 1),
            Cell::Check(c) => Some(self.entry_count() + c - 1),
        }
    }

    /// `v_star x v` treatment-by-row incidence counts.
    pub fn row_incidence(&self) -> Vec<Vec<usize>> {
        let mut n_r = vec![vec![0; self.v]; self.v_star()];
        for i in 0..self.v {
            for j in 0..self.v {
                if let Some(t) = self.treatment_index(self.cell(i, j)) {
                    n_r[t][i] += 1;
                }
            }
        }
        n_r
    }

    /// `v_star x v` treatment-by-column incidence counts.
    pub fn col_incidence(&self) -> Vec<Vec<usize>> {
        let mut n_c = vec![vec![0; self.v]; self.v_star()];
        for i in 0..self.v {
            for j in 0..self.v {
                if let Some(t) = self.treatment_index(self.cell(i, j)) {
                    n_c[t][j] += 1;
                }
            }
        }
        n_c
    }

    /// Reads the check labels down each column and records their row
    /// positions, recovering the contraction the design was built from.
    pub fn contraction(&self) -> Result<Contraction> {
        let (v, k) = (self.v, self.k);
        let mut rows = vec![vec![0; v]; k];
        for j in 0..v {
            for i in 0..v {
                if let Cell::Check(c) = self.cell(i, j) {
                    rows[c - 1][j] = i + 1;
                }
            }
        }
        Contraction::new(v, k, rows)
    }

    /// Renders the `v x v` grid as CSV: `C1..Ck` for checks, `T1..Tm` for
    /// entries, empty fields for blanks.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.v {
            for j in 0..self.v {
                if j > 0 {
                    out.push(',');
                }
                match self.cell(i, j) {
                    Cell::Blank => {}
                    Cell::Check(c) => out.push_str(&format!("C{c}")),
                    Cell::Entry(e) => out.push_str(&format!("T{e}")),
                }
            }
            out.push('\n');
        }
        out
    }

    /// Parses the CSV grid format written by [`AugmentedDesign::to_csv`].
    /// `v` is the number of rows; `k` is the number of distinct check labels.
    pub fn from_csv(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        let v = lines.len();
        if v == 0 {
            return Err(Error::BadGrid("empty grid".into()));
        }
        let mut grid = Vec::with_capacity(v * v);
        let mut k = 0;
        for (i, line) in lines.iter().enumerate() {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != v {
                return Err(Error::BadGrid(format!(
                    "row {} has {} fields, expected {v}",
                    i + 1,
                    fields.len()
                )));
            }
            for field in fields {
                let field = field.trim();
                let cell = if field.is_empty() {
                    Cell::Blank
                } else if let Some(label) = field.strip_prefix('C') {
                    let c: usize = label
                        .parse()
                        .map_err(|_| Error::BadGrid(format!("bad check label {field:?}")))?;
                    k = k.max(c);
                    Cell::Check(c)
                } else if let Some(label) = field.strip_prefix('T') {
                    let e: usize = label
                        .parse()
                        .map_err(|_| Error::BadGrid(format!("bad entry label {field:?}")))?;
                    Cell::Entry(e)
                } else {
                    return Err(Error::BadGrid(format!("unrecognised cell {field:?}")));
                };
                grid.push(cell);
            }
        }
        Self::from_grid(v, k, grid)
    }
}

/// Canonical efficiency factors of a design together with their harmonic
/// mean `e` and the trivial (arithmetic-mean) upper bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EfficiencyReport {
    /// Canonical efficiency factors, ascending, all in `(0, 1]`.
    pub cefs: Vec<f64>,
    /// Average efficiency factor: harmonic mean of `cefs`.
    pub e: f64,
    /// Trivial upper bound on `e` (arithmetic mean of the cefs).
    pub ub_trivial: f64,
    /// `100 * e / ub_trivial`.
    pub pct_ub_trivial: f64,
}

impl EfficiencyReport {
    /// Builds a report from raw cefs; sorts them ascending and computes the
    /// harmonic mean. Fails with [`Error::NonPositiveValue`] on any cef
    /// `<= 0`.
    pub fn new(mut cefs: Vec<f64>, ub_trivial: f64) -> Result<Self> {
        if cefs.is_empty() || cefs.iter().any(|&x| x <= 0.0) {
            return Err(Error::NonPositiveValue);
        }
        cefs.sort_by(|a, b| a.partial_cmp(b).expect("cefs are finite"));
        let e = cefs.len() as f64 / cefs.iter().map(|x| 1.0 / x).sum::<f64>();
        assert!(
            cefs.last().copied().unwrap_or(0.0) <= 1.0 + 1e-10,
            "canonical efficiency factor above 1"
        );
        assert!(e <= ub_trivial + 1e-9, "harmonic mean above the trivial bound");
        Ok(Self {
            cefs,
            e,
            ub_trivial,
            pct_ub_trivial: 100.0 * e / ub_trivial,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::example_contraction;

    #[test]
    fn example_contraction_is_valid() {
        let c = example_contraction();
        assert_eq!(c.v(), 5);
        assert_eq!(c.k(), 3);
    }

    #[test]
    fn cyclic_shift_rows_are_valid() {
        let c = Contraction::new(4, 2, vec![vec![1, 2, 3, 4], vec![2, 3, 4, 1]]);
        assert!(c.is_ok());
    }

    #[test]
    fn duplicate_in_column_rejected() {
        let err = Contraction::new(4, 2, vec![vec![1, 2, 3, 4], vec![1, 3, 4, 2]]).unwrap_err();
        assert!(matches!(err, Error::DuplicateInColumn(1)));
    }

    #[test]
    fn non_permutation_row_rejected() {
        let err = Contraction::new(4, 2, vec![vec![1, 2, 3, 3], vec![2, 3, 4, 1]]).unwrap_err();
        assert!(matches!(err, Error::RowNotPermutation(1)));
        let err = Contraction::new(4, 2, vec![vec![1, 2, 3, 4], vec![2, 3, 4, 5]]).unwrap_err();
        assert!(matches!(err, Error::RowNotPermutation(2)));
    }

    #[test]
    fn dimension_limits_enforced() {
        // k > v - 2
        assert!(matches!(
            Contraction::new(4, 3, vec![vec![1, 2, 3, 4]; 3]).unwrap_err(),
            Error::BadDimensions { .. }
        ));
        // v < 4
        assert!(matches!(
            Contraction::new(3, 2, vec![vec![1, 2, 3]; 2]).unwrap_err(),
            Error::BadDimensions { .. }
        ));
        // row count does not match k
        assert!(matches!(
            Contraction::new(5, 3, vec![vec![1, 2, 3, 4, 5]; 2]).unwrap_err(),
            Error::BadDimensions { .. }
        ));
    }

    #[test]
    fn incidence_of_example_column_one() {
        // Column 1 of the example holds {2, 5, 1}.
        let n = example_contraction().incidence();
        assert_eq!(n.column_set(0), vec![1, 2, 5]);
        assert!(n.contains(0, 0) && n.contains(1, 0) && n.contains(4, 0));
        assert!(!n.contains(2, 0) && !n.contains(3, 0));
    }

    #[test]
    fn incidence_of_cyclic_rows_is_circulant() {
        let c = Contraction::new(4, 2, vec![vec![1, 2, 3, 4], vec![2, 3, 4, 1]]).unwrap();
        let n = c.incidence();
        assert_eq!(n.column_set(0), vec![1, 2]);
        for j in 0..4 {
            let expect: Vec<usize> = {
                let mut s = vec![(j % 4) + 1, ((j + 1) % 4) + 1];
                s.sort_unstable();
                s
            };
            assert_eq!(n.column_set(j), expect);
        }
    }

    #[test]
    fn incidence_sums_are_k() {
        let c = example_contraction();
        let n = c.incidence();
        let mut total = 0;
        for t in 0..5 {
            assert_eq!(n.row_sum(t), 3);
            total += n.row_sum(t);
        }
        for j in 0..5 {
            assert_eq!(n.col_sum(j), 3);
        }
        assert_eq!(total, 5 * 3);
    }

    #[test]
    fn json_round_trip() {
        let c = example_contraction();
        let text = c.to_json();
        let back = Contraction::from_json(&text).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn json_rejects_unknown_fields() {
        let text = r#"{"v":4,"k":2,"rows":[[1,2,3,4],[2,3,4,1]],"extra":1}"#;
        assert!(Contraction::from_json(text).is_err());
    }

    #[test]
    fn json_rejects_invalid_design() {
        let text = r#"{"v":4,"k":2,"rows":[[1,2,3,4],[1,3,4,2]]}"#;
        assert!(Contraction::from_json(text).is_err());
    }

    #[test]
    fn efficiency_report_orders_and_averages() {
        let r = EfficiencyReport::new(vec![1.0, 0.5], 0.75).unwrap();
        assert_eq!(r.cefs, vec![0.5, 1.0]);
        assert!((r.e - 2.0 / 3.0).abs() < 1e-12);
        assert!((r.pct_ub_trivial - 100.0 * r.e / 0.75).abs() < 1e-12);
    }

    #[test]
    fn efficiency_report_rejects_non_positive() {
        assert!(matches!(
            EfficiencyReport::new(vec![0.5, 0.0], 1.0).unwrap_err(),
            Error::NonPositiveValue
        ));
    }

    #[test]
    fn csv_round_trip_with_blanks() {
        // 4 x 4 grid, k = 2, checks on two broken diagonals, blanks elsewhere.
        let mut grid = vec![Cell::Blank; 16];
        for j in 0..4 {
            grid[((j + 1) % 4) * 4 + j] = Cell::Check(1);
            grid[((j + 2) % 4) * 4 + j] = Cell::Check(2);
        }
        let d = AugmentedDesign::from_grid(4, 2, grid).unwrap();
        assert_eq!(d.blank_count(), 8);
        let text = d.to_csv();
        let back = AugmentedDesign::from_csv(&text).unwrap();
        assert_eq!(d, back);
    }

    #[test]
    fn grid_validation_catches_misplaced_checks() {
        let mut grid = vec![Cell::Blank; 16];
        // Check 1 twice in row 0.
        grid[0] = Cell::Check(1);
        grid[1] = Cell::Check(1);
        assert!(AugmentedDesign::from_grid(4, 2, grid).is_err());
    }

    #[test]
    fn csv_rejects_garbage() {
        assert!(AugmentedDesign::from_csv("C1,x\n,C1\n").is_err());
        assert!(AugmentedDesign::from_csv("").is_err());
    }
}
