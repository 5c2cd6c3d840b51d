//! On-disk formats: matrix CSV (one header line holding n, then n rows)
//! and permutation files (n lines, line i holds p(i)).

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::types::Permutation;

pub fn write_matrix_csv(path: &Path, m: &Array2<f64>) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "{}", m.nrows())?;
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        writeln!(f, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn read_matrix_csv(path: &Path) -> Result<Array2<f64>> {
    let f = BufReader::new(std::fs::File::open(path)?);
    let mut lines = f.lines().enumerate();
    let (_, first) = lines.next().ok_or_else(|| Error::Parse { line: 1, msg: "empty file".into() })?;
    let n: usize = first?
        .trim()
        .parse()
        .map_err(|e| Error::Parse { line: 1, msg: format!("bad header: {e}") })?;
    let mut data = Array2::zeros((n, n));
    for i in 0..n {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: i + 2, msg: "missing row".into() })?;
        let line = line?;
        let vals: Vec<&str> = line.trim().split(',').collect();
        if vals.len() != n {
            return Err(Error::Parse { line: lineno + 1, msg: format!("expected {n} columns") });
        }
        for (j, v) in vals.iter().enumerate() {
            data[[i, j]] = v
                .trim()
                .parse()
                .map_err(|e| Error::Parse { line: lineno + 1, msg: format!("bad value: {e}") })?;
        }
    }
    Ok(data)
}

pub fn write_permutation(path: &Path, p: &Permutation) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    for i in 0..p.n() {
        writeln!(f, "{}", p.map(i))?;
    }
    Ok(())
}

pub fn read_permutation(path: &Path) -> Result<Permutation> {
    let f = BufReader::new(std::fs::File::open(path)?);
    let mut map = Vec::new();
    for (i, line) in f.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        map.push(t.parse().map_err(|e| Error::Parse { line: i + 1, msg: format!("{e}") })?);
    }
    Permutation::new(map)
}
