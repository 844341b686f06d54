//! Tile assembly systems with an L-shaped seed, and their text format.
//!
//! ```text
//! tiles <count> temperature 2
//! tile <id> N=<g> E=<g> S=<g> W=<g> color=<c>     (one per tile, ids 0..count)
//! seedS x=<x> N=<g>                               (x = 1..m)
//! seedW y=<y> E=<g>                               (y = 1..n)
//! ```
//!
//! Every glue has strength 1 against an equal glue and 0 otherwise; the
//! temperature is always 2.

use std::fmt;

use thiserror::Error;

/// Glue label.
pub type Glue = u32;

/// Assembly temperature.
pub const TEMPERATURE: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tile {
    pub north: Glue,
    pub east: Glue,
    pub south: Glue,
    pub west: Glue,
    pub color: u32,
}

/// A tile assembly system for an `m × n` rectangle.
///
/// The seed occupies `[0,m] × {0} ∪ {0} × [0,n]`. Only its inward-facing
/// glues matter: `seed_south[x-1]` is the north glue of the seed tile at
/// `(x, 0)` and `seed_west[y-1]` the east glue of the seed tile at `(0, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileSystem {
    pub tiles: Vec<Tile>,
    pub seed_south: Vec<Glue>,
    pub seed_west: Vec<Glue>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TileFormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unsupported temperature {0}")]
    Temperature(u32),
    #[error("expected {expected} tiles, found {found}")]
    TileCount { expected: usize, found: usize },
    #[error("seed entries must cover x = 1..m and y = 1..n exactly once, in order")]
    SeedLayout,
}

impl TileSystem {
    pub fn width(&self) -> usize {
        self.seed_south.len()
    }

    pub fn height(&self) -> usize {
        self.seed_west.len()
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self, TileFormatError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let syntax = |line: usize, msg: &str| TileFormatError::Syntax {
            line: line + 1,
            msg: msg.into(),
        };

        let (hl, header) = lines.next().ok_or_else(|| syntax(0, "empty input"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        let (count, temp) = match h[..] {
            ["tiles", c, "temperature", t] => (
                c.parse::<usize>()
                    .map_err(|_| syntax(hl, "bad tile count"))?,
                t.parse::<u32>()
                    .map_err(|_| syntax(hl, "bad temperature"))?,
            ),
            _ => return Err(syntax(hl, "expected `tiles <count> temperature <t>`")),
        };
        if temp != TEMPERATURE {
            return Err(TileFormatError::Temperature(temp));
        }

        let mut tiles = Vec::with_capacity(count);
        let mut seed_south = Vec::new();
        let mut seed_west = Vec::new();
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.first().copied() {
                Some("tile") => {
                    if !seed_south.is_empty() || !seed_west.is_empty() {
                        return Err(syntax(ln, "tile after seed entries"));
                    }
                    if toks.len() != 7 {
                        return Err(syntax(ln, "tile line needs id and five fields"));
                    }
                    let id: usize = toks[1].parse().map_err(|_| syntax(ln, "bad tile id"))?;
                    if id != tiles.len() {
                        return Err(syntax(ln, "tile ids must be consecutive from 0"));
                    }
                    let field = |i: usize, key: &str| -> Result<u32, TileFormatError> {
                        keyed(toks[i], key)
                            .ok_or_else(|| syntax(ln, &format!("expected {key}=<int>")))
                    };
                    tiles.push(Tile {
                        north: field(2, "N")?,
                        east: field(3, "E")?,
                        south: field(4, "S")?,
                        west: field(5, "W")?,
                        color: field(6, "color")?,
                    });
                }
                Some("seedS") => {
                    let (x, g) =
                        seed_entry(&toks, "x", "N").ok_or_else(|| syntax(ln, "bad seedS line"))?;
                    if !seed_west.is_empty() || x != seed_south.len() + 1 {
                        return Err(TileFormatError::SeedLayout);
                    }
                    seed_south.push(g);
                }
                Some("seedW") => {
                    let (y, g) =
                        seed_entry(&toks, "y", "E").ok_or_else(|| syntax(ln, "bad seedW line"))?;
                    if y != seed_west.len() + 1 {
                        return Err(TileFormatError::SeedLayout);
                    }
                    seed_west.push(g);
                }
                _ => return Err(syntax(ln, "unknown line")),
            }
        }
        if tiles.len() != count {
            return Err(TileFormatError::TileCount {
                expected: count,
                found: tiles.len(),
            });
        }
        if seed_south.is_empty() || seed_west.is_empty() {
            return Err(TileFormatError::SeedLayout);
        }
        Ok(TileSystem {
            tiles,
            seed_south,
            seed_west,
        })
    }

    pub fn emit(&self) -> String {
        self.to_string()
    }
}

fn keyed(tok: &str, key: &str) -> Option<u32> {
    tok.strip_prefix(key)?.strip_prefix('=')?.parse().ok()
}

fn seed_entry(toks: &[&str], pos_key: &str, glue_key: &str) -> Option<(usize, Glue)> {
    if toks.len() != 3 {
        return None;
    }
    Some((keyed(toks[1], pos_key)? as usize, keyed(toks[2], glue_key)?))
}

impl fmt::Display for TileSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tiles {} temperature {}", self.tiles.len(), TEMPERATURE)?;
        for (i, t) in self.tiles.iter().enumerate() {
            writeln!(
                f,
                "tile {} N={} E={} S={} W={} color={}",
                i, t.north, t.east, t.south, t.west, t.color
            )?;
        }
        for (i, g) in self.seed_south.iter().enumerate() {
            writeln!(f, "seedS x={} N={}", i + 1, g)?;
        }
        for (i, g) in self.seed_west.iter().enumerate() {
            writeln!(f, "seedW y={} E={}", i + 1, g)?;
        }
        Ok(())
    }
}
