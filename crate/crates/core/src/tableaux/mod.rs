//! Three-row Young tableaux with walls and holes.
//!
//! A shape has a left-justified top row of `k` boxes, a left-justified middle
//! row of `middle_len` boxes and a bottom row whose boxes sit in an arbitrary
//! set of columns. Adjacent bottom boxes are separated by walls, so the bottom
//! row carries no left-to-right condition. Columns increase upwards.

mod identity;
mod ytable;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{self, Word, WordClass, WordClassSpec};

pub use identity::{tc_count, verify_tableau_identity, IdentitySweep, TableauIdentityReport};
pub use ytable::{y_count, YTable};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TableauShape {
    k: usize,
    middle_len: usize,
    bottom_cols: BTreeSet<usize>,
}

impl TableauShape {
    /// `bottom_cols` are 1-based column indices.
    pub fn new(k: usize, middle_len: usize, bottom_cols: BTreeSet<usize>) -> Result<Self> {
        if k > middle_len {
            return Err(Error::InvalidInput(format!(
                "top row ({k}) longer than middle row ({middle_len})"
            )));
        }
        if bottom_cols.iter().any(|&c| c == 0 || c > middle_len) {
            return Err(Error::InvalidInput(format!(
                "bottom columns {bottom_cols:?} outside 1..={middle_len}"
            )));
        }
        Ok(TableauShape { k, middle_len, bottom_cols })
    }

    /// Shape of `A*_n`: 3 x n with a full bottom row.
    pub fn class_a(n: usize) -> Self {
        Self::class_c(n, n)
    }

    /// Shape of `C*_{n,k}`: top row `k`, middle and bottom rows `n`.
    pub fn class_c(n: usize, k: usize) -> Self {
        TableauShape {
            k,
            middle_len: n,
            bottom_cols: (1..=n).collect(),
        }
    }

    /// Shape of `B*_{n,k}`: top and middle rows `n`, bottom boxes under the
    /// given columns.
    pub fn class_b(n: usize, bottom_cols: BTreeSet<usize>) -> Result<Self> {
        Self::new(n, n, bottom_cols)
    }

    pub fn top_len(&self) -> usize {
        self.k
    }

    pub fn middle_len(&self) -> usize {
        self.middle_len
    }

    pub fn bottom_cols(&self) -> &BTreeSet<usize> {
        &self.bottom_cols
    }

    pub fn boxes(&self) -> usize {
        self.k + self.middle_len + self.bottom_cols.len()
    }

    /// Row indices (0 = bottom, 1 = middle, 2 = top) present in a 1-based column.
    fn column_rows(&self, col: usize) -> impl Iterator<Item = usize> + '_ {
        let bottom = self.bottom_cols.contains(&col).then_some(0);
        let middle = (col <= self.middle_len).then_some(1);
        let top = (col <= self.k).then_some(2);
        bottom.into_iter().chain(middle).chain(top)
    }
}

/// A standard filling of a [`TableauShape`] by `1..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    shape: TableauShape,
    /// Indexed by column - 1; `None` for holes.
    bottom: Vec<Option<u32>>,
    middle: Vec<u32>,
    top: Vec<u32>,
}

impl Tableau {
    /// Builds and validates a tableau from its rows.
    pub fn new(
        shape: TableauShape,
        bottom: Vec<Option<u32>>,
        middle: Vec<u32>,
        top: Vec<u32>,
    ) -> Result<Self> {
        if middle.len() != shape.middle_len || top.len() != shape.k || bottom.len() != shape.middle_len {
            return Err(Error::InvalidInput("row lengths do not match the shape".into()));
        }
        for (i, b) in bottom.iter().enumerate() {
            if b.is_some() != shape.bottom_cols.contains(&(i + 1)) {
                return Err(Error::InvalidInput(format!(
                    "bottom row occupancy differs from shape at column {}",
                    i + 1
                )));
            }
        }
        let t = Tableau { shape, bottom, middle, top };
        t.check_filling()?;
        Ok(t)
    }

    fn check_filling(&self) -> Result<()> {
        let n = self.shape.boxes();
        let mut seen = vec![false; n + 1];
        for v in self.entries() {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidInput(format!(
                    "entries are not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        let increasing = |row: &[u32]| row.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&self.middle) || !increasing(&self.top) {
            return Err(Error::InvalidInput("top or middle row not increasing".into()));
        }
        for c in 0..self.shape.middle_len {
            if let Some(b) = self.bottom[c] {
                if b >= self.middle[c] {
                    return Err(Error::InvalidInput(format!("column {} not increasing", c + 1)));
                }
            }
            if c < self.shape.k && self.middle[c] >= self.top[c] {
                return Err(Error::InvalidInput(format!("column {} not increasing", c + 1)));
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &TableauShape {
        &self.shape
    }

    pub fn bottom(&self) -> &[Option<u32>] {
        &self.bottom
    }

    pub fn middle(&self) -> &[u32] {
        &self.middle
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    fn entries(&self) -> impl Iterator<Item = u32> + '_ {
        self.bottom
            .iter()
            .flatten()
            .chain(self.middle.iter())
            .chain(self.top.iter())
            .copied()
    }

    /// Entries of a 1-based column, bottom to top.
    pub fn column(&self, col: usize) -> Vec<u32> {
        self.shape
            .column_rows(col)
            .map(|row| match row {
                0 => self.bottom[col - 1].unwrap(),
                1 => self.middle[col - 1],
                _ => self.top[col - 1],
            })
            .collect()
    }

    /// Rows bottom-to-top, each padded to the middle-row length with `None`.
    pub fn rows(&self) -> Vec<Vec<Option<u32>>> {
        let pad = |row: &[u32]| {
            let mut r: Vec<Option<u32>> = row.iter().copied().map(Some).collect();
            r.resize(self.shape.middle_len, None);
            r
        };
        vec![self.bottom.clone(), pad(&self.middle), pad(&self.top)]
    }

    /// Inverse of [`Tableau::rows`].
    pub fn from_rows(rows: &[Vec<Option<u32>>]) -> Result<Self> {
        if rows.len() != 3 {
            return Err(Error::InvalidInput(format!("expected 3 rows, got {}", rows.len())));
        }
        let width = rows[1].len();
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidInput("rows must be padded to equal length".into()));
        }
        let prefix = |row: &[Option<u32>]| -> Result<Vec<u32>> {
            let len = row.iter().take_while(|v| v.is_some()).count();
            if row[len..].iter().any(Option::is_some) {
                return Err(Error::InvalidInput("top and middle rows must be left-justified".into()));
            }
            Ok(row[..len].iter().map(|v| v.unwrap()).collect())
        };
        let middle = prefix(&rows[1])?;
        let top = prefix(&rows[2])?;
        let bottom: Vec<Option<u32>> = rows[0][..middle.len()].to_vec();
        if rows[0][middle.len()..].iter().any(Option::is_some) {
            return Err(Error::InvalidInput("bottom box without a middle box above".into()));
        }
        let cols = bottom
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|_| i + 1))
            .collect();
        let shape = TableauShape::new(top.len(), middle.len(), cols)?;
        Tableau::new(shape, bottom, middle, top)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableauJson {
    rows: Vec<Vec<Option<u32>>>,
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauJson { rows: self.rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TableauJson::deserialize(d)?;
        Tableau::from_rows(&raw.rows).map_err(serde::de::Error::custom)
    }
}

fn class_shape(word: &Word, spec: &WordClassSpec) -> Result<TableauShape> {
    match spec.class {
        WordClass::A => Ok(TableauShape::class_a(spec.n)),
        WordClass::C | WordClass::H => Ok(TableauShape::class_c(spec.n, spec.k)),
        WordClass::B => TableauShape::class_b(
            spec.n,
            word.thrice_letters().into_iter().map(|l| l as usize).collect(),
        ),
    }
}

/// Places position `m` of the word into the next free box (bottom to top)
/// of the column of its letter.
pub fn word_to_tableau(word: &Word, spec: &WordClassSpec) -> Result<Tableau> {
    if !words::is_valid(word, spec)? {
        return Err(Error::InvalidInput(format!(
            "word {word} is not in class {}_{{{},{}}}",
            spec.class, spec.n, spec.k
        )));
    }
    let shape = class_shape(word, spec)?;
    let n = shape.middle_len;
    let mut bottom = vec![None; n];
    let mut middle = vec![0u32; n];
    let mut top = vec![0u32; shape.k];
    let mut next: Vec<Vec<usize>> = (1..=n).map(|c| shape.column_rows(c).collect()).collect();
    next.iter_mut().for_each(|rows| rows.reverse());
    for (pos, &letter) in word.letters().iter().enumerate() {
        let col = letter as usize - 1;
        let row = next[col]
            .pop()
            .ok_or_else(|| Error::InvalidInput(format!("column {} overfilled", col + 1)))?;
        let value = pos as u32 + 1;
        match row {
            0 => bottom[col] = Some(value),
            1 => middle[col] = value,
            _ => top[col] = value,
        }
    }
    Tableau::new(shape, bottom, middle, top)
}

/// Reads the entries `1..=N` in order and records their columns.
pub fn tableau_to_word(t: &Tableau, spec: &WordClassSpec) -> Result<Word> {
    let shape = t.shape();
    let fits = match spec.class {
        WordClass::A => *shape == TableauShape::class_a(spec.n),
        WordClass::C | WordClass::H => *shape == TableauShape::class_c(spec.n, spec.k),
        WordClass::B => {
            shape.k == spec.n && shape.middle_len == spec.n && shape.bottom_cols.len() == spec.k
        }
    };
    if !fits {
        return Err(Error::InvalidInput(format!(
            "tableau shape does not belong to class {}_{{{},{}}}",
            spec.class, spec.n, spec.k
        )));
    }
    let mut letters = vec![0u16; shape.boxes()];
    for col in 1..=shape.middle_len {
        for v in t.column(col) {
            letters[v as usize - 1] = col as u16;
        }
    }
    let word = Word::new(letters, spec.n)?;
    if !words::is_valid(&word, spec)? {
        return Err(Error::Consistency(format!(
            "tableau read back to invalid word {word}"
        )));
    }
    Ok(word)
}
