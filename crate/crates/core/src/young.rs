//! Young diagrams, the KN transformation and hook lengths.
//!
//! Rows are listed top-down (English notation): row 1 is the longest and its
//! first cell carries the largest hook. Cell coordinates are 1-based `(i, j)`.

use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numset::NumericalSet;

#[derive(Debug, Clone)]
pub struct YoungDiagram {
    rows: Vec<u32>,
    hooks: OnceLock<HookGrid>,
}

impl PartialEq for YoungDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl Eq for YoungDiagram {}

impl YoungDiagram {
    /// Rows must be non-empty, positive and weakly decreasing.
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if rows.is_empty() || rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram(rows));
        }
        Ok(YoungDiagram {
            rows,
            hooks: OnceLock::new(),
        })
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Length of row `i` (1-based), 0 past the bottom.
    pub fn row(&self, i: usize) -> u32 {
        self.rows.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn cell_count(&self) -> u32 {
        self.rows.iter().sum()
    }

    /// `#C_j` for `j = 1..=rows[1]`.
    pub fn column_heights(&self) -> Vec<u32> {
        (1..=self.rows[0])
            .map(|j| self.rows.iter().take_while(|&&r| r >= j).count() as u32)
            .collect()
    }

    /// Height of column `j` (1-based), 0 past the right edge.
    pub fn column(&self, j: u32) -> u32 {
        self.rows.iter().take_while(|&&r| r >= j).count() as u32
    }

    pub fn hook_grid(&self) -> &HookGrid {
        self.hooks.get_or_init(|| HookGrid::build(&self.rows))
    }

    pub fn conjugate(&self) -> YoungDiagram {
        YoungDiagram {
            rows: self.column_heights(),
            hooks: OnceLock::new(),
        }
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.rows == self.column_heights()
    }

    pub fn render(&self, mode: RenderMode, format: RenderFormat) -> String {
        match format {
            RenderFormat::Ascii => self.render_ascii(mode),
            RenderFormat::Svg => self.render_svg(mode),
        }
    }

    fn label(&self, mode: RenderMode, i: usize, j: usize) -> String {
        match mode {
            RenderMode::Cells => " ".to_string(),
            RenderMode::Hooks => self.hook_grid().hook(i, j).to_string(),
        }
    }

    fn render_ascii(&self, mode: RenderMode) -> String {
        let mut out = String::new();
        for (i, &len) in self.rows.iter().enumerate() {
            for j in 0..len as usize {
                let _ = write!(out, "[{}]", self.label(mode, i + 1, j + 1));
            }
            out.push('\n');
        }
        out
    }

    fn render_svg(&self, mode: RenderMode) -> String {
        const CELL: u32 = 32;
        let width = self.rows[0] * CELL;
        let height = self.rows.len() as u32 * CELL;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
            width + 2,
            height + 2,
            width + 2,
            height + 2
        );
        for (i, &len) in self.rows.iter().enumerate() {
            for j in 0..len as usize {
                let x = j as u32 * CELL + 1;
                let y = i as u32 * CELL + 1;
                let _ = writeln!(
                    out,
                    r#"  <rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="white" stroke="black"/>"#
                );
                if mode == RenderMode::Hooks {
                    let _ = writeln!(
                        out,
                        r#"  <text x="{}" y="{}" font-family="monospace" font-size="14" text-anchor="middle" dominant-baseline="central">{}</text>"#,
                        x + CELL / 2,
                        y + CELL / 2,
                        self.label(mode, i + 1, j + 1)
                    );
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

impl Serialize for YoungDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RenderMode {
    #[default]
    Cells,
    Hooks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RenderFormat {
    #[default]
    Ascii,
    Svg,
}

/// All hook lengths of a diagram, `h_{i,j} = a + l + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HookGrid {
    hooks: Vec<Vec<u32>>,
    column_heights: Vec<u32>,
}

impl HookGrid {
    fn build(rows: &[u32]) -> Self {
        let column_heights: Vec<u32> = (1..=rows[0])
            .map(|j| rows.iter().take_while(|&&r| r >= j).count() as u32)
            .collect();
        let hooks = rows
            .iter()
            .enumerate()
            .map(|(i, &len)| {
                (0..len as usize)
                    .map(|j| (len - j as u32 - 1) + (column_heights[j] - i as u32 - 1) + 1)
                    .collect()
            })
            .collect();
        HookGrid {
            hooks,
            column_heights,
        }
    }

    /// `h_{i,j}`, 1-based. Panics outside the diagram.
    pub fn hook(&self, i: usize, j: usize) -> u32 {
        self.hooks[i - 1][j - 1]
    }

    /// `h_{i,j}` if the cell exists.
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        self.hooks.get(i.checked_sub(1)?)?.get(j.checked_sub(1)?).copied()
    }

    /// Arm of cell `(i, j)`: cells to its right.
    pub fn arm(&self, i: usize, j: usize) -> u32 {
        self.hooks[i - 1].len() as u32 - j as u32
    }

    /// Leg of cell `(i, j)`: cells below it.
    pub fn leg(&self, i: usize, j: usize) -> u32 {
        self.column_heights[j - 1] - i as u32
    }

    /// Hooks of row `i`, left to right.
    pub fn row(&self, i: usize) -> &[u32] {
        &self.hooks[i - 1]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.hooks
    }

    /// `h_{1,1}, h_{2,1}, …` top-down.
    pub fn first_column(&self) -> Vec<u32> {
        self.hooks.iter().map(|r| r[0]).collect()
    }

    pub fn column_heights(&self) -> &[u32] {
        &self.column_heights
    }

    /// `(i, j, h)` for every cell, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.hooks
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &h)| (i + 1, j + 1, h)))
    }
}

/// Row `i` has one cell per member below the `i`-th largest gap.
pub fn kn_transform(s: &NumericalSet) -> Result<YoungDiagram> {
    let gaps = s.gaps();
    if gaps.is_empty() {
        return Err(Error::NoGaps);
    }
    // The gap at ascending index j has exactly j gaps below it.
    let rows = gaps.iter().enumerate().rev().map(|(j, &g)| g - j as u32).collect();
    YoungDiagram::new(rows)
}

/// Walks the boundary from the bottom-left corner: each east step is a
/// member, each north step a gap.
pub fn kn_inverse(y: &YoungDiagram) -> NumericalSet {
    let rows = y.rows();
    let mut gaps = Vec::with_capacity(rows.len());
    let mut k = 0u32;
    let mut below = 0u32;
    for &len in rows.iter().rev() {
        k += len - below; // east steps
        gaps.push(k); // north step
        k += 1;
        below = len;
    }
    NumericalSet::from_gaps(gaps).expect("path gaps are strictly increasing and positive")
}

/// The square-plus-extra-column probe for diagrams with `h_{1,1} = 2n-4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiSymmetricProfile {
    /// Column `z+1` is the first with `h_{1,z+1} = n-2`.
    pub z: usize,
    /// `h_{i,z+1}` for `i = 2..=z`, top-down.
    pub extra_column_hooks: Vec<u32>,
    /// `h_{i,i}` for `i = 1..=z`.
    pub diagonal_hooks: Vec<u32>,
}

impl QuasiSymmetricProfile {
    /// Extra-column hooks ascending; this is η.
    pub fn eta_parts(&self) -> Vec<u32> {
        let mut v = self.extra_column_hooks.clone();
        v.sort_unstable();
        v
    }
}

pub fn quasi_symmetric_profile(y: &YoungDiagram, n: u32) -> Result<QuasiSymmetricProfile> {
    let grid = y.hook_grid();
    let target = n.checked_sub(2).ok_or(Error::NoZColumn { target: 0 })?;
    let col = grid
        .row(1)
        .iter()
        .position(|&h| h == target)
        .ok_or(Error::NoZColumn { target })?
        + 1;
    let z = col - 1;
    let mut extra = Vec::with_capacity(z.saturating_sub(1));
    let mut diagonal = Vec::with_capacity(z);
    for i in 1..=z {
        let (Some(d), Some(e)) = (grid.get(i, i), grid.get(i, col)) else {
            return Err(Error::DoublingViolated { row: i });
        };
        if d != 2 * e {
            return Err(Error::DoublingViolated { row: i });
        }
        diagonal.push(d);
        if i >= 2 {
            extra.push(e);
        }
    }
    Ok(QuasiSymmetricProfile {
        z,
        extra_column_hooks: extra,
        diagonal_hooks: diagonal,
    })
}
