use std::fmt;

use super::field::{FieldElement, FieldSpec};
use crate::error::{Error, Result};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
    field: FieldSpec,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixFq,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "MatrixFq[{}x{} over F_{}]",
            self.rows,
            self.cols,
            self.field.q()
        )?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl MatrixFq {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixFq {
            rows,
            cols,
            entries: vec![FieldElement::ZERO; rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_entries(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.rep() >= field.q()) {
            return Err(Error::ElementOutOfRange {
                value: bad.rep() as u64,
                q: field.q(),
            });
        }
        Ok(MatrixFq {
            rows,
            cols,
            entries,
            field: field.clone(),
        })
    }

    /// Builds a matrix from integer reps, one inner slice per row.
    pub fn from_reps<R: AsRef<[u32]>>(field: &FieldSpec, cols: usize, rows: &[R]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            for &v in row {
                entries.push(field.element(v as u64)?);
            }
        }
        Self::from_entries(field, rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> Self {
        assert!(
            start <= end && end <= self.rows,
            "row range {start}..{end} out of bounds"
        );
        MatrixFq {
            rows: end - start,
            cols: self.cols,
            entries: self.entries[start * self.cols..end * self.cols].to_vec(),
            field: self.field.clone(),
        }
    }

    /// The first `t` rows.
    pub fn first_rows(&self, t: usize) -> Self {
        self.row_range(0, t)
    }

    /// The last `t` rows.
    pub fn last_rows(&self, t: usize) -> Self {
        self.row_range(self.rows - t, self.rows)
    }

    /// Vertical concatenation. All blocks must share the column count and field.
    pub fn vstack(blocks: &[&MatrixFq]) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("vstack of no blocks".into()))?;
        let cols = first.cols;
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch(format!(
                    "vstack of {} and {} columns",
                    cols, b.cols
                )));
            }
            if b.field != first.field {
                return Err(Error::FieldMismatch);
            }
            entries.extend_from_slice(&b.entries);
            rows += b.rows;
        }
        Ok(MatrixFq {
            rows,
            cols,
            entries,
            field: first.field.clone(),
        })
    }

    /// Horizontal concatenation.
    pub fn hstack(blocks: &[&MatrixFq]) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("hstack of no blocks".into()))?;
        let rows = first.rows;
        if let Some(b) = blocks.iter().find(|b| b.rows != rows) {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                rows, b.rows
            )));
        }
        if blocks.iter().any(|b| b.field != first.field) {
            return Err(Error::FieldMismatch);
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for b in blocks {
                entries.extend_from_slice(b.row(r));
            }
        }
        Ok(MatrixFq {
            rows,
            cols,
            entries,
            field: first.field.clone(),
        })
    }

    pub fn mul(&self, other: &MatrixFq) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Ordinary matrix power with `M^0 = I`.
    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "power of a non-square matrix".into(),
            ));
        }
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn sub(&self, other: &MatrixFq) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                "difference of differently shaped matrices".into(),
            ));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(MatrixFq {
            entries,
            ..self.clone()
        })
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, lead);
            let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
            if inv != FieldElement::ONE {
                for j in c..m.cols {
                    let v = f.mul(m.get(lead, j), inv);
                    m.set(lead, j, v);
                }
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(lead, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Rref {
            matrix: m,
            rank: lead,
            pivots,
        }
    }

    /// Rank via forward elimination only.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut m = self.clone();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, lead);
            let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
            for r in lead + 1..m.rows {
                let factor = m.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                let factor = f.mul(factor, inv);
                for j in c..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(lead, j)));
                    m.set(r, j, v);
                }
            }
            lead += 1;
        }
        lead
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Text form: a header line `q rows cols`, then one line per row of
    /// space-separated element reps.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.field.q(), self.rows, self.cols);
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.rep().to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the text form. The header's `q` must match `field`.
    pub fn parse_text(field: &FieldSpec, text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let nums = parse_nums(header)?;
        let [q, rows, cols] = nums[..] else {
            return Err(Error::Parse(format!(
                "matrix header {header:?} must be `q rows cols`"
            )));
        };
        if q != field.q() as u64 {
            return Err(Error::Parse(format!(
                "matrix is over F_{q} but the field is F_{}",
                field.q()
            )));
        }
        let (rows, cols) = (rows as usize, cols as usize);
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing matrix row {r}")))?;
            let vals = parse_nums(line)?;
            if vals.len() != cols {
                return Err(Error::Parse(format!(
                    "row {r} has {} entries, expected {cols}",
                    vals.len()
                )));
            }
            for v in vals {
                entries.push(field.element(v)?);
            }
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing matrix line {extra:?}")));
        }
        Self::from_entries(field, rows, cols, entries)
    }
}

fn parse_nums(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn rref_identity() {
        let f = f2();
        let i3 = MatrixFq::identity(&f, 3);
        let r = i3.rref();
        assert_eq!(r.matrix, i3);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_duplicate_rows() {
        let f = f2();
        let a = MatrixFq::from_reps(&f, 2, &[[1, 1], [1, 1]]).unwrap();
        let r = a.rref();
        assert_eq!(
            r.matrix,
            MatrixFq::from_reps(&f, 2, &[[1, 1], [0, 0]]).unwrap()
        );
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_over_f3_normalises_pivots() {
        let f = FieldSpec::prime(3).unwrap();
        let a = MatrixFq::from_reps(&f, 3, &[[2, 1, 0], [1, 1, 1]]).unwrap();
        let r = a.rref();
        assert_eq!(r.rank, 2);
        // 2x + y = 0, x + y + z = 0  =>  rows [1 0 2], [0 1 2]
        assert_eq!(
            r.matrix,
            MatrixFq::from_reps(&f, 3, &[[1, 0, 2], [0, 1, 2]]).unwrap()
        );
        assert_eq!(r.matrix.rank(), 2);
    }

    #[test]
    fn product_and_power() {
        let f = f2();
        // companion of x^2 + x + 1
        let m = MatrixFq::from_reps(&f, 2, &[[0, 1], [1, 1]]).unwrap();
        assert_eq!(m.pow(3).unwrap(), MatrixFq::identity(&f, 2));
        assert_eq!(m.pow(0).unwrap(), MatrixFq::identity(&f, 2));
        assert!(m.mul(&MatrixFq::zeros(&f, 3, 1)).is_err());
    }

    #[test]
    fn stacking() {
        let f = f2();
        let a = MatrixFq::identity(&f, 2);
        let z = MatrixFq::zeros(&f, 2, 1);
        let h = MatrixFq::hstack(&[&a, &z]).unwrap();
        assert_eq!(
            h,
            MatrixFq::from_reps(&f, 3, &[[1, 0, 0], [0, 1, 0]]).unwrap()
        );
        let v = MatrixFq::vstack(&[&h, &h.first_rows(1)]).unwrap();
        assert_eq!(v.rows(), 3);
        assert_eq!(v.last_rows(1).row(0), h.row(0));
        assert!(MatrixFq::vstack(&[&a, &h]).is_err());
    }

    #[test]
    fn text_round_trip_and_errors() {
        let f = FieldSpec::prime(3).unwrap();
        let a = MatrixFq::from_reps(&f, 3, &[[2, 1, 0], [1, 1, 1]]).unwrap();
        let text = a.to_text();
        assert_eq!(text, "3 2 3\n2 1 0\n1 1 1\n");
        assert_eq!(MatrixFq::parse_text(&f, &text).unwrap(), a);
        assert!(MatrixFq::parse_text(&f2(), &text).is_err());
        assert!(MatrixFq::parse_text(&f, "3 1 2\n1 3\n").is_err());
        assert!(MatrixFq::parse_text(&f, "3 2 2\n1 1\n").is_err());
        let empty = MatrixFq::zeros(&f, 0, 4);
        assert_eq!(MatrixFq::parse_text(&f, &empty.to_text()).unwrap(), empty);
    }
}
