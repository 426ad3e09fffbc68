//! Cartan data: the input from which every Coxeter system is built.
//!
//! Convention: `matrix[i][j]` is the pairing of the coroot of `alpha_i` with
//! `alpha_j`, so the simple reflection `s_i` sends `alpha_j` to
//! `alpha_j - matrix[i][j] * alpha_i`.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    label: Option<String>,
    matrix: Vec<Vec<i32>>,
}

impl CartanDatum {
    /// Validates the sign and symmetry conditions of a generalized Cartan
    /// matrix. Finiteness is checked later, during root closure.
    pub fn new(matrix: Vec<Vec<i32>>, label: Option<String>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::InvalidCartan("rank must be positive".into()));
        }
        if n > 32 {
            return Err(Error::InvalidCartan(format!("rank {n} exceeds 32")));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartan(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j && a != 2 {
                    return Err(Error::InvalidCartan(format!("diagonal entry ({i},{i}) is {a}")));
                }
                if i != j && a > 0 {
                    return Err(Error::InvalidCartan(format!("off-diagonal entry ({i},{j}) is {a} > 0")));
                }
                if i != j && (a == 0) != (matrix[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({i},{j}) and ({j},{i}) must vanish together"
                    )));
                }
            }
        }
        Ok(CartanDatum { label, matrix })
    }

    /// Parses a type label such as `B3`, or a product such as `A1xA1`.
    pub fn from_label(label: &str) -> Result<Self> {
        let parts: Vec<&str> = label
            .split(['x', 'X', '+', '*'])
            .map(str::trim)
            .collect();
        if parts.iter().any(|p| p.is_empty()) {
            return Err(Error::BadTypeLabel(label.to_string()));
        }
        let mut blocks = Vec::with_capacity(parts.len());
        for part in &parts {
            blocks.push(series_matrix(part).ok_or_else(|| Error::BadTypeLabel(label.to_string()))?);
        }
        let normalized = parts
            .iter()
            .map(|p| p.to_ascii_uppercase())
            .collect::<Vec<_>>()
            .join("x");
        CartanDatum::new(block_diagonal(&blocks), Some(normalized))
    }

    /// Reads a whitespace-separated integer matrix, one row per line.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidCartan(format!("{}: {e}", path.display())))?;
        Self::parse_matrix(&text)
    }

    pub fn parse_matrix(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i32>().map_err(|e| Error::InvalidCartan(format!("`{t}`: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        CartanDatum::new(rows, None)
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.matrix
    }

    /// Squared lengths of the simple roots, scaled so that the shortest root
    /// of each connected component has length 1.
    pub fn root_lengths(&self) -> Vec<u32> {
        let n = self.rank();
        let mut len: Vec<Option<f64>> = vec![None; n];
        let mut out = vec![0; n];
        for start in 0..n {
            if len[start].is_some() {
                continue;
            }
            len[start] = Some(1.0);
            let mut comp = vec![start];
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..n {
                    if j != i && self.matrix[i][j] != 0 && len[j].is_none() {
                        let li = len[i].unwrap();
                        len[j] = Some(li * self.matrix[i][j] as f64 / self.matrix[j][i] as f64);
                        comp.push(j);
                    }
                }
                k += 1;
            }
            let min = comp.iter().map(|&i| len[i].unwrap()).fold(f64::INFINITY, f64::min);
            for &i in &comp {
                out[i] = (len[i].unwrap() / min).round() as u32;
            }
        }
        out
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "{l}"),
            None => write!(f, "{:?}", self.matrix),
        }
    }
}

fn block_diagonal(blocks: &[Vec<Vec<i32>>]) -> Vec<Vec<i32>> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut m = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                m[off + i][off + j] = a;
            }
        }
        off += b.len();
    }
    m
}

fn chain(n: usize) -> Vec<Vec<i32>> {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        m[i][i] = 2;
        if i + 1 < n {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    m
}

fn series_matrix(part: &str) -> Option<Vec<Vec<i32>>> {
    let mut chars = part.chars();
    let series = chars.next()?.to_ascii_uppercase();
    let rank: usize = chars.as_str().parse().ok()?;
    let m = match (series, rank) {
        ('A', n) if n >= 1 => chain(n),
        ('B', n) if n >= 2 => {
            let mut m = chain(n);
            m[n - 1][n - 2] = -2;
            m
        }
        ('C', n) if n >= 2 => {
            let mut m = chain(n);
            m[n - 2][n - 1] = -2;
            m
        }
        ('D', n) if n >= 4 => {
            let mut m = chain(n - 1);
            for row in &mut m {
                row.push(0);
            }
            m.push(vec![0; n]);
            m[n - 1][n - 1] = 2;
            m[n - 1][n - 3] = -1;
            m[n - 3][n - 1] = -1;
            m
        }
        ('E', n) if (6..=8).contains(&n) => {
            // Bourbaki labelling: 1-3-4-5-..., with 2 attached to 4.
            let mut m = vec![vec![0; n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 2;
            }
            let mut edges = vec![(0, 2), (1, 3)];
            edges.extend((2..n - 1).map(|i| (i, i + 1)));
            for (a, b) in edges {
                m[a][b] = -1;
                m[b][a] = -1;
            }
            m
        }
        ('F', 4) => {
            let mut m = chain(4);
            m[2][1] = -2;
            m
        }
        ('G', 2) => vec![vec![2, -1], vec![-3, 2]],
        _ => return None,
    };
    Some(m)
}
