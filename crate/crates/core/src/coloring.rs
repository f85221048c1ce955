//! (a:b)-fractional colorings, properness checks, and the correspondence
//! between (a:a-1)-colorings and panchromatic a-colorings.
//!
//! Colors are `0..a` with `a <= 64`; a vertex's colors are a bit mask.

use std::fmt::Write as _;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::bits;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;

pub const MAX_PALETTE: u32 = 64;

pub(crate) fn palette_mask(a: u32) -> u64 {
    if a >= 64 {
        u64::MAX
    } else {
        (1u64 << a) - 1
    }
}

/// The set of colors held by one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorSet {
    palette: u32,
    mask: u64,
}

impl ColorSet {
    pub fn new(palette: u32, members: impl IntoIterator<Item = u32>) -> Result<Self> {
        check_palette(palette)?;
        let mut mask = 0u64;
        for c in members {
            if c >= palette {
                return Err(invalid(format!("color {c} outside palette of size {palette}")));
            }
            if mask & (1 << c) != 0 {
                return Err(invalid(format!("color {c} listed twice")));
            }
            mask |= 1 << c;
        }
        Ok(ColorSet { palette, mask })
    }

    pub fn from_mask(palette: u32, mask: u64) -> Result<Self> {
        check_palette(palette)?;
        if mask & !palette_mask(palette) != 0 {
            return Err(invalid(format!("mask {mask:#x} has colors outside palette {palette}")));
        }
        Ok(ColorSet { palette, mask })
    }

    pub fn palette_size(&self) -> u32 {
        self.palette
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, color: u32) -> bool {
        color < 64 && self.mask & (1 << color) != 0
    }

    pub fn members(&self) -> Vec<u32> {
        bits(self.mask).collect()
    }

    /// `self` with `removed` swapped for `added`.
    pub(crate) fn replace(self, removed: u32, added: u32) -> ColorSet {
        debug_assert!(self.contains(removed) && !self.contains(added));
        ColorSet {
            mask: (self.mask & !(1 << removed)) | (1 << added),
            ..self
        }
    }
}

fn check_palette(a: u32) -> Result<()> {
    if a == 0 || a > MAX_PALETTE {
        return Err(invalid(format!("palette size must be in 1..={MAX_PALETTE}, got {a}")));
    }
    Ok(())
}

fn check_ab(a: u32, b: u32) -> Result<()> {
    check_palette(a)?;
    if b == 0 || b > a {
        return Err(invalid(format!("need 1 <= b <= a, got a = {a}, b = {b}")));
    }
    Ok(())
}

/// One b-subset of `0..a` per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FractionalColoring {
    a: u32,
    b: u32,
    sets: Vec<ColorSet>,
}

impl FractionalColoring {
    pub fn new(a: u32, b: u32, sets: Vec<ColorSet>) -> Result<Self> {
        check_ab(a, b)?;
        for (v, s) in sets.iter().enumerate() {
            if s.palette != a || s.len() != b {
                return Err(invalid(format!(
                    "vertex {v} holds {} colors from palette {}, expected {b} from {a}",
                    s.len(),
                    s.palette
                )));
            }
        }
        Ok(FractionalColoring { a, b, sets })
    }

    pub fn from_masks(a: u32, b: u32, masks: impl IntoIterator<Item = u64>) -> Result<Self> {
        let sets = masks
            .into_iter()
            .map(|m| ColorSet::from_mask(a, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(a, b, sets)
    }

    /// Every vertex receives the same set.
    pub fn constant(a: u32, members: &[u32], vertex_count: usize) -> Result<Self> {
        let cs = ColorSet::new(a, members.iter().copied())?;
        Self::new(a, cs.len(), vec![cs; vertex_count])
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn get(&self, v: usize) -> ColorSet {
        self.sets[v]
    }

    pub fn sets(&self) -> &[ColorSet] {
        &self.sets
    }

    pub(crate) fn set_mut(&mut self, v: usize) -> &mut ColorSet {
        &mut self.sets[v]
    }

    /// Colors shared by every vertex of `edge`.
    pub fn common_colors(&self, edge: &[usize]) -> u64 {
        edge.iter().fold(palette_mask(self.a), |m, &v| m & self.sets[v].mask)
    }

    /// Replaces each color `g` by the block `k*g .. k*g + k`, giving a
    /// (ka:kb)-coloring.
    pub fn blow_up(&self, k: u32) -> Result<FractionalColoring> {
        if k == 0 || self.a * k > MAX_PALETTE {
            return Err(invalid(format!("blow-up factor {k} exceeds the palette limit")));
        }
        let block = palette_mask(k);
        let masks = self
            .sets
            .iter()
            .map(|s| bits(s.mask).fold(0u64, |m, g| m | (block << (k * g))));
        FractionalColoring::from_masks(self.a * k, self.b * k, masks)
    }
}

/// One color per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PanchromaticColoring {
    a: u32,
    colors: Vec<u32>,
}

impl PanchromaticColoring {
    pub fn new(a: u32, colors: Vec<u32>) -> Result<Self> {
        check_palette(a)?;
        if let Some(c) = colors.iter().find(|&&c| c >= a) {
            return Err(invalid(format!("color {c} outside palette of size {a}")));
        }
        Ok(PanchromaticColoring { a, colors })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }
}

pub(crate) fn sample_fractional<R: Rng>(
    vertex_count: usize,
    a: u32,
    b: u32,
    rng: &mut R,
) -> Result<FractionalColoring> {
    check_ab(a, b)?;
    let mut palette: Vec<u32> = (0..a).collect();
    let mut sets = Vec::with_capacity(vertex_count);
    for _ in 0..vertex_count {
        for (i, c) in palette.iter_mut().enumerate() {
            *c = i as u32;
        }
        // partial Fisher-Yates: the first b slots form a uniform b-subset
        let mut mask = 0u64;
        for i in 0..b as usize {
            let j = rng.gen_range(i..a as usize);
            palette.swap(i, j);
            mask |= 1 << palette[i];
        }
        sets.push(ColorSet { palette: a, mask });
    }
    Ok(FractionalColoring { a, b, sets })
}

/// Independent uniform b-subsets of `0..a` for every vertex of `h`.
pub fn random_fractional_coloring(h: &Hypergraph, a: u32, b: u32, seed: u64) -> Result<FractionalColoring> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_fractional(h.vertex_count(), a, b, &mut rng)
}

fn check_cover(h: &Hypergraph, found: usize) -> Result<()> {
    if h.vertex_count() != found {
        return Err(Error::SizeMismatch {
            expected: h.vertex_count(),
            found,
        });
    }
    Ok(())
}

/// Every `(edge index, color)` with the color present at all vertices of the
/// edge, ordered by edge then color.
pub fn monochromatic_pairs(h: &Hypergraph, chi: &FractionalColoring) -> Result<Vec<(usize, u32)>> {
    check_cover(h, chi.len())?;
    Ok(h.edges()
        .iter()
        .enumerate()
        .flat_map(|(i, e)| bits(chi.common_colors(e)).map(move |c| (i, c)))
        .collect())
}

pub fn is_proper(h: &Hypergraph, chi: &FractionalColoring) -> Result<bool> {
    check_cover(h, chi.len())?;
    Ok(h.edges().iter().all(|e| chi.common_colors(e) == 0))
}

/// Maps each vertex to the single color it is missing.
pub fn to_panchromatic(chi: &FractionalColoring) -> Result<PanchromaticColoring> {
    if chi.b + 1 != chi.a {
        return Err(Error::NotAMinusOne { a: chi.a, b: chi.b });
    }
    let full = palette_mask(chi.a);
    let colors = chi.sets.iter().map(|s| (full & !s.mask).trailing_zeros()).collect();
    Ok(PanchromaticColoring { a: chi.a, colors })
}

/// Gives each vertex every color except its own.
pub fn from_panchromatic(c: &PanchromaticColoring) -> Result<FractionalColoring> {
    if c.a < 2 {
        return Err(invalid(format!("need a >= 2 to form an (a:a-1)-coloring, got {}", c.a)));
    }
    let full = palette_mask(c.a);
    FractionalColoring::from_masks(c.a, c.a - 1, c.colors.iter().map(|&k| full & !(1u64 << k)))
}

/// Whether every edge sees all `a` colors.
pub fn is_panchromatic(h: &Hypergraph, c: &PanchromaticColoring) -> Result<bool> {
    check_cover(h, c.colors.len())?;
    let full = palette_mask(c.a);
    Ok(h.edges()
        .iter()
        .all(|e| e.iter().fold(0u64, |m, &v| m | (1 << c.colors[v])) == full))
}

// ---- file formats ----------------------------------------------------------

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, body: &str) -> Result<Vec<u32>> {
    body.split_whitespace()
        .map(|t| {
            t.parse::<u32>().map_err(|_| Error::Parse {
                line,
                reason: format!("`{t}` is not a nonnegative integer"),
            })
        })
        .collect()
}

fn perr(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

/// Parses `a b v` followed by `v` lines of `b` colors.
pub fn parse_coloring(text: &str) -> Result<FractionalColoring> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing header `a b v`"))?;
    let [a, b, v] = numbers(hl, header)?[..] else {
        return Err(perr(hl, "header needs 3 integers `a b v`"));
    };
    check_ab(a, b).map_err(|e| perr(hl, e.to_string()))?;
    let mut sets = Vec::with_capacity(v as usize);
    for (line, body) in lines {
        if sets.len() == v as usize {
            return Err(perr(line, format!("more than the declared {v} vertices")));
        }
        let cols = numbers(line, body)?;
        if cols.len() != b as usize {
            return Err(perr(line, format!("vertex has {} colors, expected {b}", cols.len())));
        }
        sets.push(ColorSet::new(a, cols).map_err(|e| perr(line, e.to_string()))?);
    }
    if sets.len() != v as usize {
        return Err(perr(
            text.lines().count().max(1),
            format!("expected {v} vertices, found {}", sets.len()),
        ));
    }
    FractionalColoring::new(a, b, sets)
}

pub fn serialize_coloring(chi: &FractionalColoring) -> String {
    let mut s = format!("{} {} {}\n", chi.a, chi.b, chi.sets.len());
    for cs in &chi.sets {
        let _ = writeln!(s, "{}", bits(cs.mask).join(" "));
    }
    s
}

/// Parses `a v` followed by `v` single colors (one per line).
pub fn parse_panchromatic(text: &str) -> Result<PanchromaticColoring> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing header `a v`"))?;
    let [a, v] = numbers(hl, header)?[..] else {
        return Err(perr(hl, "header needs 2 integers `a v`"));
    };
    let mut colors = Vec::with_capacity(v as usize);
    for (line, body) in lines {
        for c in numbers(line, body)? {
            colors.push(c);
        }
    }
    if colors.len() != v as usize {
        return Err(perr(
            text.lines().count().max(1),
            format!("expected {v} colors, found {}", colors.len()),
        ));
    }
    PanchromaticColoring::new(a, colors).map_err(|e| perr(hl, e.to_string()))
}

pub fn serialize_panchromatic(c: &PanchromaticColoring) -> String {
    let mut s = format!("{} {}\n", c.a, c.colors.len());
    for k in &c.colors {
        let _ = writeln!(s, "{k}");
    }
    s
}
