//! Attractor rasterization and the parameter-plane classification map.
//!
//! Points of the attractor are the depth-truncated radix sums
//! sum_{i=1}^{depth} M^-i d_i e1 over all digit words, drawn in the
//! coordinate plane of the companion realization (v = (1,0)). Enumeration
//! is exhaustive rather than sampled, so output images are deterministic.

use crate::classify::{classify_theorem, Verdict};
use crate::error::{Error, Result};
use crate::params::FractalParams;
use rayon::prelude::*;
use std::io::{self, Write};
use std::ops::RangeInclusive;

/// Default ceiling on |D|^depth for attractor enumeration.
pub const DEFAULT_POINT_BUDGET: u64 = 5_000_000;

/// Greyscale raster with the plane rectangle it covers.
#[derive(Clone, Debug, PartialEq)]
pub struct RasterImage {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
    bbox: [f64; 4],
}

impl RasterImage {
    /// `bbox` is [xmin, xmax, ymin, ymax]; both extents must be positive,
    /// and the pixel grid non-empty.
    pub fn new(width: u32, height: u32, bbox: [f64; 4]) -> Result<Self> {
        let increasing =
            |lo: f64, hi: f64| matches!(lo.partial_cmp(&hi), Some(std::cmp::Ordering::Less));
        if width == 0
            || height == 0
            || !increasing(bbox[0], bbox[1])
            || !increasing(bbox[2], bbox[3])
        {
            return Err(Error::BadImageSize { width, height });
        }
        Ok(RasterImage {
            width,
            height,
            pixels: vec![255; width as usize * height as usize],
            bbox,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn bbox(&self) -> [f64; 4] {
        self.bbox
    }

    /// Row-major pixel bytes, row 0 at the top.
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    fn set(&mut self, x: u32, y: u32, value: u8) {
        self.pixels[y as usize * self.width as usize + x as usize] = value;
    }

    /// Binary PGM (P5): magic, width, height, maxval 255, one newline after
    /// each, then raw rows.
    pub fn write_pgm<W: Write>(&self, w: &mut W) -> io::Result<()> {
        write!(w, "P5\n{}\n{}\n255\n", self.width, self.height)?;
        w.write_all(&self.pixels)
    }

    /// Binary PPM (P6) with the grey value replicated across channels.
    pub fn write_ppm<W: Write>(&self, w: &mut W) -> io::Result<()> {
        write!(w, "P6\n{}\n{}\n255\n", self.width, self.height)?;
        let mut row = Vec::with_capacity(self.width as usize * 3);
        for y in 0..self.height as usize {
            row.clear();
            for x in 0..self.width as usize {
                let v = self.pixels[y * self.width as usize + x];
                row.extend_from_slice(&[v, v, v]);
            }
            w.write_all(&row)?;
        }
        Ok(())
    }

    pub fn pgm_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_pgm(&mut out).expect("writing to memory");
        out
    }

    pub fn ppm_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_ppm(&mut out).expect("writing to memory");
        out
    }
}

fn word_count(base: usize, depth: u32) -> u128 {
    let mut count: u128 = 1;
    for _ in 0..depth {
        count = count.saturating_mul(base as u128);
    }
    count
}

/// All |D|^depth truncated radix sums, in digit-major word order.
///
/// Work is split over the first digit; the blocks are concatenated in digit
/// order, so the result does not depend on the worker count.
pub fn attractor_points(params: &FractalParams, depth: u32, budget: u64) -> Result<Vec<[f64; 2]>> {
    assert!(depth >= 1, "depth must be positive");
    let digits = params.digit_set().digits().to_vec();
    let count = word_count(digits.len(), depth);
    if count > budget as u128 {
        return Err(Error::PointBudgetExceeded { count, budget });
    }

    // column weights w_i = M^-i e1; a word's point is sum d_i w_i
    let minv = params.companion().inverse_f64();
    let mut weights = Vec::with_capacity(depth as usize);
    let mut col = [1.0f64, 0.0f64];
    for _ in 0..depth {
        col = [
            minv[0][0] * col[0] + minv[0][1] * col[1],
            minv[1][0] * col[0] + minv[1][1] * col[1],
        ];
        weights.push(col);
    }

    fn enumerate(
        digits: &[i64],
        weights: &[[f64; 2]],
        level: usize,
        acc: [f64; 2],
        out: &mut Vec<[f64; 2]>,
    ) {
        if level == weights.len() {
            out.push(acc);
            return;
        }
        let w = weights[level];
        for &d in digits {
            let d = d as f64;
            enumerate(
                digits,
                weights,
                level + 1,
                [acc[0] + d * w[0], acc[1] + d * w[1]],
                out,
            );
        }
    }

    let blocks: Vec<Vec<[f64; 2]>> = digits
        .par_iter()
        .map(|&d0| {
            let d = d0 as f64;
            let start = [d * weights[0][0], d * weights[0][1]];
            let mut block = Vec::with_capacity((count as usize) / digits.len());
            enumerate(&digits, &weights, 1, start, &mut block);
            block
        })
        .collect();
    Ok(blocks.concat())
}

/// Rasterizes the depth-truncated attractor. Pixels accumulate hit counts
/// and are shaded dark-on-white; output is deterministic for fixed inputs.
pub fn render_attractor(
    params: &FractalParams,
    depth: u32,
    width: u32,
    height: u32,
    budget: u64,
) -> Result<RasterImage> {
    let points = attractor_points(params, depth, budget)?;
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for p in &points {
        xmin = xmin.min(p[0]);
        xmax = xmax.max(p[0]);
        ymin = ymin.min(p[1]);
        ymax = ymax.max(p[1]);
    }
    let pad = |lo: &mut f64, hi: &mut f64| {
        let extent = *hi - *lo;
        if extent > 0.0 {
            *lo -= 0.02 * extent;
            *hi += 0.02 * extent;
        } else {
            *lo -= 0.5;
            *hi += 0.5;
        }
    };
    pad(&mut xmin, &mut xmax);
    pad(&mut ymin, &mut ymax);

    let mut image = RasterImage::new(width, height, [xmin, xmax, ymin, ymax])?;
    let mut counts = vec![0u32; width as usize * height as usize];
    let xscale = width as f64 / (xmax - xmin);
    let yscale = height as f64 / (ymax - ymin);
    for p in &points {
        let ix = (((p[0] - xmin) * xscale) as u32).min(width - 1);
        let iy = (((ymax - p[1]) * yscale) as u32).min(height - 1);
        counts[iy as usize * width as usize + ix as usize] += 1;
    }
    let max_count = counts.iter().copied().max().unwrap_or(0).max(1) as u64;
    for (i, &c) in counts.iter().enumerate() {
        if c > 0 {
            let shade = 95 + (c as u64 * 160) / max_count;
            image.pixels[i] = 255 - shade as u8;
        }
    }
    Ok(image)
}

/// Parameter-plane map: one square cell per (p, q), connected cells dark,
/// disconnected cells light grey, invalid or out-of-scope cells blank.
/// p increases to the right, q increases upward.
pub fn render_parameter_map(
    p_range: RangeInclusive<i64>,
    q_range: RangeInclusive<i64>,
    m: i64,
    cell_pixels: u32,
) -> Result<RasterImage> {
    const FOREGROUND: u8 = 0;
    const BACKGROUND: u8 = 208;

    let p_cells: Vec<i64> = p_range.clone().collect();
    let q_cells: Vec<i64> = q_range.clone().collect();
    let width = p_cells.len() as u32 * cell_pixels;
    let height = q_cells.len() as u32 * cell_pixels;
    let bbox = if p_cells.is_empty() || q_cells.is_empty() {
        [0.0, 0.0, 0.0, 0.0]
    } else {
        [
            *p_cells.first().unwrap() as f64 - 0.5,
            *p_cells.last().unwrap() as f64 + 0.5,
            *q_cells.first().unwrap() as f64 - 0.5,
            *q_cells.last().unwrap() as f64 + 0.5,
        ]
    };
    let mut image = RasterImage::new(width, height, bbox)?;

    for (row, &q) in q_cells.iter().rev().enumerate() {
        for (colidx, &p) in p_cells.iter().enumerate() {
            let value = FractalParams::new(p, q, m)
                .ok()
                .and_then(|params| classify_theorem(&params).ok())
                .map(|c| match c.verdict {
                    Verdict::Connected => FOREGROUND,
                    Verdict::Disconnected => BACKGROUND,
                });
            if let Some(v) = value {
                for dy in 0..cell_pixels {
                    for dx in 0..cell_pixels {
                        image.set(
                            colidx as u32 * cell_pixels + dx,
                            row as u32 * cell_pixels + dy,
                            v,
                        );
                    }
                }
            }
        }
    }
    Ok(image)
}
