//! Rectangular braid diagram: grid lines through midpoints of singular-fiber
//! coordinates, one rectangle per fiber, and canonical rectangular loops
//! (one per finite fiber plus the loop at infinity).

use num_complex::Complex64;
use serde::Serialize;
use std::fmt::Write as _;
use thiserror::Error;

pub const DEFAULT_DEDUP_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagramError {
    #[error("no finite fibers supplied")]
    NoFibers,
    #[error("fibers {a} and {b} fall in the same grid cell; inputs are degenerate at this tolerance")]
    SharedCell { a: usize, b: usize },
}

/// Axis-aligned rectangle (xmin, xmax) x (ymin, ymax).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cell {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

#[derive(Debug, Clone)]
pub struct Diagram {
    /// Sorted interior midlines plus the two boundary lines.
    pub vertical_lines: Vec<f64>,
    pub horizontal_lines: Vec<f64>,
    /// On the right-most vertical line, imaginary part 0.
    pub base_point: Complex64,
    pub fibers: Vec<Complex64>,
    /// cells[k] is the rectangle strictly containing fibers[k].
    pub cells: Vec<Cell>,
}

/// Closed axis-aligned polyline from the base point around one fiber
/// (`fiber_index = Some(k)`) or around all of them (`None`, infinity).
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramLoop {
    pub vertices: Vec<Complex64>,
    pub fiber_index: Option<usize>,
}

impl Diagram {
    pub fn build(fibers: &[Complex64], dedup_tol: f64) -> Result<Diagram, DiagramError> {
        if fibers.is_empty() {
            return Err(DiagramError::NoFibers);
        }
        let vertical_lines = grid_lines(fibers.iter().map(|f| f.re), dedup_tol);
        let horizontal_lines = grid_lines(fibers.iter().map(|f| f.im), dedup_tol);
        let base_point = Complex64::new(*vertical_lines.last().unwrap(), 0.0);
        let mut cells = Vec::with_capacity(fibers.len());
        for &f in fibers {
            let (xmin, xmax) = bracket(&vertical_lines, f.re);
            let (ymin, ymax) = bracket(&horizontal_lines, f.im);
            cells.push(Cell { xmin, xmax, ymin, ymax });
        }
        for a in 0..cells.len() {
            for b in (a + 1)..cells.len() {
                if cells[a] == cells[b] {
                    return Err(DiagramError::SharedCell { a, b });
                }
            }
        }
        Ok(Diagram {
            vertical_lines,
            horizontal_lines,
            base_point,
            fibers: fibers.to_vec(),
            cells,
        })
    }

    /// Rectangular loop around one finite fiber: up the base line to the cell's
    /// top edge, across to its top-right corner, counterclockwise around the
    /// cell, and back along the reverse approach.
    pub fn loop_for(&self, fiber_index: usize) -> DiagramLoop {
        let cell = self.cells[fiber_index];
        DiagramLoop {
            vertices: loop_vertices(self.base_point, cell),
            fiber_index: Some(fiber_index),
        }
    }

    /// Loop at infinity: the smallest rectangle enclosing every occupied cell,
    /// entered by the same approach convention.
    pub fn loop_infinity(&self) -> DiagramLoop {
        let hull = Cell {
            xmin: self.cells.iter().map(|c| c.xmin).fold(f64::INFINITY, f64::min),
            xmax: self.cells.iter().map(|c| c.xmax).fold(f64::NEG_INFINITY, f64::max),
            ymin: self.cells.iter().map(|c| c.ymin).fold(f64::INFINITY, f64::min),
            ymax: self.cells.iter().map(|c| c.ymax).fold(f64::NEG_INFINITY, f64::max),
        };
        DiagramLoop { vertices: loop_vertices(self.base_point, hull), fiber_index: None }
    }

    /// Finite loops in left-to-right, bottom-to-top fiber order.
    pub fn finite_loops(&self) -> Vec<DiagramLoop> {
        let mut order: Vec<usize> = (0..self.fibers.len()).collect();
        order.sort_by(|&a, &b| {
            (self.fibers[a].re, self.fibers[a].im)
                .partial_cmp(&(self.fibers[b].re, self.fibers[b].im))
                .unwrap()
        });
        order.into_iter().map(|k| self.loop_for(k)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verticalLines": self.vertical_lines,
            "horizontalLines": self.horizontal_lines,
            "basePoint": { "re": self.base_point.re, "im": self.base_point.im },
            "fibers": self.fibers.iter().map(|f| serde_json::json!({"re": f.re, "im": f.im})).collect::<Vec<_>>(),
            "cells": self.cells,
            "loops": self
                .finite_loops()
                .into_iter()
                .chain(std::iter::once(self.loop_infinity()))
                .map(|l| serde_json::json!({
                    "fiber": l.fiber_index,
                    "vertices": l.vertices.iter().map(|v| vec![v.re, v.im]).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
        })
    }

    /// SVG rendering of the grid, fiber markers, and loops (documentation only).
    pub fn to_svg(&self) -> String {
        let xmin = self.vertical_lines[0];
        let xmax = *self.vertical_lines.last().unwrap();
        let ymin = self.horizontal_lines[0];
        let ymax = *self.horizontal_lines.last().unwrap();
        let margin = 0.1 * (xmax - xmin).max(ymax - ymin).max(1.0);
        let (x0, y0) = (xmin - margin, ymin - margin);
        let (w, h) = (xmax - xmin + 2.0 * margin, ymax - ymin + 2.0 * margin);
        // flip y so the complex plane reads the usual way
        let fy = |y: f64| y0 + h - (y - y0);
        let mut svg = String::new();
        let _ = write!(
            svg,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">\n",
            x0, y0, w, h
        );
        let stroke = 0.01 * w.max(h);
        for &x in &self.vertical_lines {
            let _ = write!(
                svg,
                "<line x1=\"{x:.6}\" y1=\"{:.6}\" x2=\"{x:.6}\" y2=\"{:.6}\" stroke=\"#bbb\" stroke-width=\"{:.6}\"/>\n",
                fy(ymin), fy(ymax), stroke * 0.5
            );
        }
        for &y in &self.horizontal_lines {
            let _ = write!(
                svg,
                "<line x1=\"{xmin:.6}\" y1=\"{:.6}\" x2=\"{xmax:.6}\" y2=\"{:.6}\" stroke=\"#bbb\" stroke-width=\"{:.6}\"/>\n",
                fy(y), fy(y), stroke * 0.5
            );
        }
        let palette = ["#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400", "#16a085"];
        let loops = self
            .finite_loops()
            .into_iter()
            .chain(std::iter::once(self.loop_infinity()));
        for (k, l) in loops.enumerate() {
            let color = palette[k % palette.len()];
            let pts: Vec<String> = l
                .vertices
                .iter()
                .map(|v| format!("{:.6},{:.6}", v.re, fy(v.im)))
                .collect();
            let _ = write!(
                svg,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{:.6}\" marker-mid=\"url(#a{k})\"/>\n",
                pts.join(" "),
                stroke
            );
            // arrowhead at the midpoint of the first cell edge
            if l.vertices.len() >= 3 {
                let a = l.vertices[l.vertices.len() / 2 - 1];
                let b = l.vertices[l.vertices.len() / 2];
                let mx = (a.re + b.re) / 2.0;
                let my = (a.im + b.im) / 2.0;
                let ang = (-(b.im - a.im)).atan2(b.re - a.re).to_degrees();
                let s = stroke * 3.0;
                let _ = write!(
                    svg,
                    "<path d=\"M {mx:.6} {:.6} l {:.6} {:.6} l {:.6} {:.6} z\" fill=\"{color}\" transform=\"rotate({ang:.3} {mx:.6} {:.6})\"/>\n",
                    fy(my), -s, s / 2.0, 0.0, -s, fy(my)
                );
            }
        }
        for &f in &self.fibers {
            let _ = write!(
                svg,
                "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{:.6}\" fill=\"#000\"/>\n",
                f.re, fy(f.im), stroke * 1.5
            );
        }
        let _ = write!(
            svg,
            "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{:.6}\" fill=\"#e67e22\"/>\n",
            self.base_point.re, fy(self.base_point.im), stroke * 2.0
        );
        svg.push_str("</svg>\n");
        svg
    }
}

impl DiagramLoop {
    /// Total edge count, skipping degenerate segments.
    pub fn edges(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.vertices
            .windows(2)
            .map(|w| (w[0], w[1]))
            .filter(|(a, b)| (a - b).norm() > 0.0)
    }

    pub fn shortest_edge(&self) -> f64 {
        self.edges()
            .map(|(a, b)| (a - b).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Winding number about a point, by summing signed angles vertex to vertex.
    pub fn winding_number(&self, p: Complex64) -> f64 {
        let mut total = 0.0;
        for (a, b) in self.vertices.windows(2).map(|w| (w[0], w[1])) {
            let u = a - p;
            let v = b - p;
            total += (u.re * v.im - u.im * v.re).atan2(u.re * v.re + u.im * v.im);
        }
        total / (2.0 * std::f64::consts::PI)
    }
}

/// Approach + counterclockwise cell boundary + reverse approach, with
/// degenerate (zero-length) segments dropped.
fn loop_vertices(base: Complex64, cell: Cell) -> Vec<Complex64> {
    let xb = base.re;
    let path = [
        base,
        Complex64::new(xb, cell.ymax),
        Complex64::new(cell.xmax, cell.ymax),
        Complex64::new(cell.xmin, cell.ymax),
        Complex64::new(cell.xmin, cell.ymin),
        Complex64::new(cell.xmax, cell.ymin),
        Complex64::new(cell.xmax, cell.ymax),
        Complex64::new(xb, cell.ymax),
        base,
    ];
    let mut out: Vec<Complex64> = Vec::with_capacity(path.len());
    for p in path {
        if out.last().is_none_or(|&q| (q - p).norm() > 0.0) {
            out.push(p);
        }
    }
    // re-close in case the base point itself was deduplicated
    if out.last() != Some(&base) {
        out.push(base);
    }
    out
}

/// Midpoints of consecutive deduplicated values, plus boundary lines at
/// min - 1 and max + 1.
fn grid_lines(values: impl Iterator<Item = f64>, dedup_tol: f64) -> Vec<f64> {
    let mut vals: Vec<f64> = values.collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals.dedup_by(|a, b| (*a - *b).abs() < dedup_tol);
    let mut lines = Vec::with_capacity(vals.len() + 1);
    lines.push(vals[0] - 1.0);
    for w in vals.windows(2) {
        lines.push((w[0] + w[1]) / 2.0);
    }
    lines.push(*vals.last().unwrap() + 1.0);
    lines
}

/// The pair of consecutive grid lines strictly bracketing v.
fn bracket(lines: &[f64], v: f64) -> (f64, f64) {
    for w in lines.windows(2) {
        if w[0] < v && v < w[1] {
            return (w[0], w[1]);
        }
    }
    // v on or outside a grid line: construction guarantees this cannot happen
    panic!("value {v} does not lie strictly inside any grid interval");
}
