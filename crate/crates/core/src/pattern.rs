//! Coloured rectangular patterns: the text format and the generators.
//!
//! A pattern file starts with a header line `m n k`, followed by `n` rows of
//! `m` colour indices. The first row listed is the northernmost one (`y = n`),
//! so files read like the pictures they describe.

use std::fmt;

use thiserror::Error;

use crate::partition::Partition;
use crate::rng;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("malformed header: {0}")]
    Header(String),
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}: bad colour token {token:?}")]
    BadToken { row: usize, token: String },
    #[error("colour {colour} at ({x},{y}) is not below k = {k}")]
    ColourOutOfRange {
        x: usize,
        y: usize,
        colour: usize,
        k: usize,
    },
    #[error("colour {0} never occurs in the pattern")]
    MissingColour(usize),
    #[error("cannot colour {cells} cells onto {k} colours")]
    TooManyColours { cells: usize, k: usize },
    #[error("grid dimensions and colour count must be positive")]
    Empty,
}

/// A `k`-colouring of `[m] × [n]` that uses every colour.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorGrid {
    m: usize,
    n: usize,
    k: usize,
    cells: Vec<u32>,
}

impl ColorGrid {
    /// Builds a grid from colours in cell-index order (south row first).
    pub fn new(m: usize, n: usize, k: usize, cells: Vec<u32>) -> Result<Self, PatternError> {
        if m == 0 || n == 0 || k == 0 {
            return Err(PatternError::Empty);
        }
        if k > m * n {
            return Err(PatternError::TooManyColours { cells: m * n, k });
        }
        if cells.len() != m * n {
            return Err(PatternError::RowCount {
                expected: n,
                found: cells.len() / m,
            });
        }
        let mut seen = vec![false; k];
        for (i, &c) in cells.iter().enumerate() {
            let c = c as usize;
            if c >= k {
                return Err(PatternError::ColourOutOfRange {
                    x: i % m + 1,
                    y: i / m + 1,
                    colour: c,
                    k,
                });
            }
            seen[c] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(PatternError::MissingColour(missing));
        }
        Ok(ColorGrid { m, n, k, cells })
    }

    /// Builds a grid from a colour function over 1-based `(x, y)`.
    pub fn from_fn(
        m: usize,
        n: usize,
        k: usize,
        mut colour: impl FnMut(usize, usize) -> u32,
    ) -> Result<Self, PatternError> {
        let mut cells = Vec::with_capacity(m * n);
        for y in 1..=n {
            for x in 1..=m {
                cells.push(colour(x, y));
            }
        }
        ColorGrid::new(m, n, k, cells)
    }

    pub fn width(&self) -> usize {
        self.m
    }

    pub fn height(&self) -> usize {
        self.n
    }

    pub fn num_colours(&self) -> usize {
        self.k
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// Colour of the 1-based cell `(x, y)`.
    pub fn color(&self, x: usize, y: usize) -> u32 {
        self.cells[(y - 1) * self.m + (x - 1)]
    }

    /// Colour of a cell index (see [`crate::partition`] for the indexing).
    pub fn color_of_cell(&self, cell: usize) -> u32 {
        self.cells[cell]
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    /// The partition of the grid into colour classes, P(c).
    pub fn color_partition(&self) -> Partition {
        Partition::from_labels(self.m, self.n, &self.cells).expect("grid dimensions are valid")
    }

    pub fn parse(text: &str) -> Result<Self, PatternError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| PatternError::Header("empty input".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| PatternError::Header(header.to_string()))
            })
            .collect::<Result<_, _>>()?;
        let [m, n, k] = dims[..] else {
            return Err(PatternError::Header(header.to_string()));
        };
        if m == 0 || n == 0 || k == 0 {
            return Err(PatternError::Empty);
        }
        let rows: Vec<&str> = lines.filter(|l| !l.trim().is_empty()).collect();
        if rows.len() != n {
            return Err(PatternError::RowCount {
                expected: n,
                found: rows.len(),
            });
        }
        let mut cells = vec![0u32; m * n];
        for (i, row) in rows.iter().enumerate() {
            let y = n - i;
            let tokens: Vec<&str> = row.split_whitespace().collect();
            if tokens.len() != m {
                return Err(PatternError::RowLength {
                    row: y,
                    expected: m,
                    found: tokens.len(),
                });
            }
            for (x0, tok) in tokens.iter().enumerate() {
                let colour: u32 = tok.parse().map_err(|_| PatternError::BadToken {
                    row: y,
                    token: tok.to_string(),
                })?;
                cells[(y - 1) * m + x0] = colour;
            }
        }
        ColorGrid::new(m, n, k, cells)
    }

    /// Canonical pattern-file text.
    pub fn emit(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ColorGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.m, self.n, self.k)?;
        for y in (1..=self.n).rev() {
            let row = &self.cells[(y - 1) * self.m..y * self.m];
            let text: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{}", text.join(" "))?;
        }
        Ok(())
    }
}

/// The discrete Sierpinski triangle: solid west column and south row, every
/// other cell the XOR of its west and south neighbours. Colour 1 is black.
pub fn sierpinski(m: usize, n: usize) -> Result<ColorGrid, PatternError> {
    if m == 0 || n == 0 {
        return Err(PatternError::Empty);
    }
    let mut cells = vec![0u32; m * n];
    for y in 0..n {
        for x in 0..m {
            cells[y * m + x] = if x == 0 || y == 0 {
                1
            } else {
                cells[y * m + x - 1] ^ cells[(y - 1) * m + x]
            };
        }
    }
    two_colour(m, n, cells)
}

/// Binary counter: row `y` spells `y` in binary, least significant bit in the
/// west column.
pub fn binary_counter(m: usize, n: usize) -> Result<ColorGrid, PatternError> {
    if m == 0 || n == 0 {
        return Err(PatternError::Empty);
    }
    let mut cells = Vec::with_capacity(m * n);
    for y in 1..=n {
        for x in 1..=m {
            let bit = if x > usize::BITS as usize {
                0
            } else {
                (y >> (x - 1)) & 1
            };
            cells.push(bit as u32);
        }
    }
    two_colour(m, n, cells)
}

/// Black-and-white grid from 0/1 cells. Degenerate sizes where only one
/// colour occurs (e.g. a single Sierpinski row) collapse to a 1-colouring
/// with every cell 0, keeping the colouring onto.
fn two_colour(m: usize, n: usize, cells: Vec<u32>) -> Result<ColorGrid, PatternError> {
    let first = cells[0];
    if cells.iter().all(|&c| c == first) {
        return ColorGrid::new(m, n, 1, vec![0; m * n]);
    }
    ColorGrid::new(m, n, 2, cells)
}

/// A uniformly random `k`-colouring, redrawn wholesale until every colour
/// occurs. Cells are drawn in cell-index order (south row first, west to
/// east) with [`rng::uniform_below`] from a generator seeded by `seed`.
pub fn random(m: usize, n: usize, k: usize, seed: u64) -> Result<ColorGrid, PatternError> {
    if m == 0 || n == 0 || k == 0 {
        return Err(PatternError::Empty);
    }
    if k > m * n {
        return Err(PatternError::TooManyColours { cells: m * n, k });
    }
    let mut rng = rng::seeded(seed);
    loop {
        let cells: Vec<u32> = (0..m * n)
            .map(|_| rng::uniform_below(&mut rng, k as u64) as u32)
            .collect();
        match ColorGrid::new(m, n, k, cells) {
            Ok(grid) => return Ok(grid),
            Err(PatternError::MissingColour(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_small_grid() {
        let g = ColorGrid::parse("2 2 2\n1 0\n1 1\n").unwrap();
        assert_eq!(g.color(1, 1), 1);
        assert_eq!(g.color(2, 1), 1);
        assert_eq!(g.color(1, 2), 1);
        assert_eq!(g.color(2, 2), 0);
        let one = ColorGrid::parse("1 1 1\n0\n").unwrap();
        assert_eq!(one.num_cells(), 1);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            ColorGrid::parse("2 2 3\n0 1\n1 0\n"),
            Err(PatternError::MissingColour(2))
        );
        assert!(matches!(
            ColorGrid::parse("2 2\n0 1\n1 0\n"),
            Err(PatternError::Header(_))
        ));
        assert!(matches!(
            ColorGrid::parse("a b c\n"),
            Err(PatternError::Header(_))
        ));
        assert!(matches!(ColorGrid::parse(""), Err(PatternError::Header(_))));
        assert!(matches!(
            ColorGrid::parse("2 2 2\n0 1\n"),
            Err(PatternError::RowCount {
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            ColorGrid::parse("2 2 2\n0 1 1\n1 0\n"),
            Err(PatternError::RowLength { row: 2, .. })
        ));
        assert!(matches!(
            ColorGrid::parse("2 1 2\n0 2\n"),
            Err(PatternError::ColourOutOfRange {
                x: 2,
                y: 1,
                colour: 2,
                ..
            })
        ));
        assert!(matches!(
            ColorGrid::parse("2 1 2\n0 x\n"),
            Err(PatternError::BadToken { .. })
        ));
    }

    #[test]
    fn emit_canonical() {
        let one = ColorGrid::parse("1 1 1\n0\n").unwrap();
        assert_eq!(one.emit(), "1 1 1\n0\n");
        let messy = "2  2 2\n1   0\n\n1 1";
        let g = ColorGrid::parse(messy).unwrap();
        assert_eq!(g.emit(), "2 2 2\n1 0\n1 1\n");
        assert_eq!(ColorGrid::parse(&g.emit()).unwrap(), g);
    }

    #[test]
    fn sierpinski_small() {
        let g = sierpinski(5, 4).unwrap();
        for y in 1..=4 {
            assert_eq!(g.color(1, y), 1);
        }
        for x in 1..=5 {
            assert_eq!(g.color(x, 1), 1);
        }
        assert_eq!(g.color(2, 2), 0);
    }

    #[test]
    fn counter_small() {
        let g = binary_counter(3, 3).unwrap();
        let row = |y| (1..=3).map(|x| g.color(x, y)).collect::<Vec<_>>();
        assert_eq!(row(1), vec![1, 0, 0]);
        assert_eq!(row(2), vec![0, 1, 0]);
        assert_eq!(row(3), vec![1, 1, 0]);
        let tall = binary_counter(4, 9).unwrap();
        for y in 1..=9 {
            assert_eq!(tall.color(1, y), (y % 2) as u32);
        }
    }

    #[test]
    fn random_generation() {
        let g = random(2, 2, 1, 99).unwrap();
        assert!(g.cells().iter().all(|&c| c == 0));
        assert_eq!(random(5, 3, 3, 7).unwrap(), random(5, 3, 3, 7).unwrap());
        assert_eq!(
            random(2, 2, 5, 0),
            Err(PatternError::TooManyColours { cells: 4, k: 5 })
        );
        let g = random(2, 2, 4, 3).unwrap();
        let mut sorted = g.cells().to_vec();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
    }

    #[test]
    fn colour_partition_examples() {
        let single = ColorGrid::from_fn(3, 2, 1, |_, _| 0).unwrap();
        assert_eq!(single.color_partition().num_parts(), 1);
        let g = ColorGrid::parse("2 2 2\n1 0\n1 1\n").unwrap();
        let p = g.color_partition();
        assert_eq!(p.num_parts(), 2);
        // parts: {(1,1),(2,1),(1,2)} has id 0; {(2,2)} is cell 3
        assert_eq!(p.cells_of(0), Some(&[0, 1, 2][..]));
        assert_eq!(p.cells_of(3), Some(&[3][..]));
    }
}
