//! Level-set extraction on a rectangular window by marching squares.
//!
//! Grid values are streamed two rows at a time; every cell-edge crossing is
//! refined along its edge by a bracketed 1-D solve before segments are
//! emitted, so contour points carry the level to the requested tolerance
//! rather than linear-interpolation accuracy. Shared edges refine once.

use crate::error::Error;
use crate::numeric::bisect_newton;
use crate::Result;
use std::collections::HashMap;

/// Rectangular evaluation window.
#[derive(Debug, Clone, Copy)]
pub struct Window {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl Window {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Self {
            x: (x0, x1),
            y: (y0, y1),
        }
    }
}

/// An extracted level set: every point satisfies
/// `|f(point) - level| <= refinement_tol * level`.
#[derive(Debug, Clone)]
pub struct CriticalPath {
    pub level: f64,
    pub polylines: Vec<Vec<(f64, f64)>>,
    pub refinement_tol: f64,
}

impl CriticalPath {
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.polylines.iter().flatten().copied()
    }

    pub fn len(&self) -> usize {
        self.polylines.iter().map(|p| p.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.polylines.is_empty()
    }

    /// Smallest distance from `(x, y)` to any contour point.
    pub fn distance_to(&self, x: f64, y: f64) -> f64 {
        self.points()
            .map(|(px, py)| ((px - x).powi(2) + (py - y).powi(2)).sqrt())
            .fold(f64::INFINITY, f64::min)
    }
}

const REFINEMENT_TOL: f64 = 1e-10;

/// Edge key: (node i, node j, horizontal?) of the edge's lower-left node.
type EdgeKey = (u32, u32, bool);

struct EdgePoints {
    index: HashMap<EdgeKey, u32>,
    points: Vec<(f64, f64)>,
}

impl EdgePoints {
    fn intern<F: Fn(f64, f64) -> f64>(
        &mut self,
        key: EdgeKey,
        a: (f64, f64),
        b: (f64, f64),
        fa: f64,
        fb: f64,
        level: f64,
        field: &F,
    ) -> u32 {
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let root = bisect_newton(
            |s| field(a.0 + s * (b.0 - a.0), a.1 + s * (b.1 - a.1)) - level,
            0.0,
            1.0,
            1e-15,
            REFINEMENT_TOL * level.abs(),
        );
        debug_assert!((fa - level) * (fb - level) <= 0.0);
        let _ = (fa, fb);
        let id = self.points.len() as u32;
        self.points
            .push((a.0 + root * (b.0 - a.0), a.1 + root * (b.1 - a.1)));
        self.index.insert(key, id);
        id
    }
}

/// Marching-squares extraction of `f(x, y) = level` over the window.
///
/// Nodes falling inside any guard disk are masked and their cells skipped;
/// saddle cells are split by the field value at the cell centre.
pub fn extract_level_set<F>(
    field: F,
    level: f64,
    window: Window,
    grid_n: usize,
    guards: &[(f64, f64, f64)],
) -> Result<CriticalPath>
where
    F: Fn(f64, f64) -> f64,
{
    assert!(grid_n >= 2);
    let nx = grid_n;
    let ny = grid_n;
    let dx = (window.x.1 - window.x.0) / (nx - 1) as f64;
    let dy = (window.y.1 - window.y.0) / (ny - 1) as f64;
    let node_x = |i: usize| window.x.0 + i as f64 * dx;
    let node_y = |j: usize| window.y.0 + j as f64 * dy;
    let masked = |x: f64, y: f64| {
        guards
            .iter()
            .any(|&(gx, gy, r)| (x - gx).powi(2) + (y - gy).powi(2) <= r * r)
    };
    let eval_row = |j: usize, row: &mut Vec<f64>| {
        row.clear();
        let y = node_y(j);
        for i in 0..nx {
            let x = node_x(i);
            row.push(if masked(x, y) { f64::NAN } else { field(x, y) });
        }
    };

    let mut lower: Vec<f64> = Vec::with_capacity(nx);
    let mut upper: Vec<f64> = Vec::with_capacity(nx);
    eval_row(0, &mut lower);

    let mut edges = EdgePoints {
        index: HashMap::new(),
        points: Vec::new(),
    };
    let mut segments: Vec<(u32, u32)> = Vec::new();

    for j in 0..ny - 1 {
        eval_row(j + 1, &mut upper);
        let (y0, y1) = (node_y(j), node_y(j + 1));
        for i in 0..nx - 1 {
            let f_bl = lower[i];
            let f_br = lower[i + 1];
            let f_tr = upper[i + 1];
            let f_tl = upper[i];
            if !(f_bl.is_finite() && f_br.is_finite() && f_tr.is_finite() && f_tl.is_finite()) {
                continue;
            }
            let mut case = 0u8;
            if f_bl > level {
                case |= 1;
            }
            if f_br > level {
                case |= 2;
            }
            if f_tr > level {
                case |= 4;
            }
            if f_tl > level {
                case |= 8;
            }
            if case == 0 || case == 15 {
                continue;
            }
            let (x0, x1) = (node_x(i), node_x(i + 1));
            let (iu, ju) = (i as u32, j as u32);
            // Edge interning closures: bottom/top horizontal, left/right vertical.
            let mut edge = |which: u8| -> u32 {
                match which {
                    0 => edges.intern((iu, ju, true), (x0, y0), (x1, y0), f_bl, f_br, level, &field),
                    1 => edges.intern(
                        (iu + 1, ju, false),
                        (x1, y0),
                        (x1, y1),
                        f_br,
                        f_tr,
                        level,
                        &field,
                    ),
                    2 => edges.intern(
                        (iu, ju + 1, true),
                        (x0, y1),
                        (x1, y1),
                        f_tl,
                        f_tr,
                        level,
                        &field,
                    ),
                    _ => edges.intern((iu, ju, false), (x0, y0), (x0, y1), f_bl, f_tl, level, &field),
                }
            };
            const BOTTOM: u8 = 0;
            const RIGHT: u8 = 1;
            const TOP: u8 = 2;
            const LEFT: u8 = 3;
            let mut emit = |ea: u8, eb: u8, segs: &mut Vec<(u32, u32)>| {
                let pa = edge(ea);
                let pb = edge(eb);
                if pa != pb {
                    segs.push((pa, pb));
                }
            };
            match case {
                1 | 14 => emit(LEFT, BOTTOM, &mut segments),
                2 | 13 => emit(BOTTOM, RIGHT, &mut segments),
                3 | 12 => emit(LEFT, RIGHT, &mut segments),
                4 | 11 => emit(RIGHT, TOP, &mut segments),
                6 | 9 => emit(BOTTOM, TOP, &mut segments),
                7 | 8 => emit(LEFT, TOP, &mut segments),
                5 | 10 => {
                    let center = field(0.5 * (x0 + x1), 0.5 * (y0 + y1));
                    let center_high = center > level;
                    // Wrap the corners isolated from the centre component.
                    let around_high_corners = (case == 5) != center_high;
                    if around_high_corners {
                        emit(LEFT, BOTTOM, &mut segments);
                        emit(RIGHT, TOP, &mut segments);
                    } else {
                        emit(BOTTOM, RIGHT, &mut segments);
                        emit(LEFT, TOP, &mut segments);
                    }
                }
                _ => unreachable!(),
            }
        }
        std::mem::swap(&mut lower, &mut upper);
    }

    if segments.is_empty() {
        return Err(Error::EmptyContour { level });
    }

    Ok(CriticalPath {
        level,
        polylines: chain_segments(&edges.points, &segments),
        refinement_tol: REFINEMENT_TOL,
    })
}

/// Link shared-endpoint segments into ordered polylines.
fn chain_segments(points: &[(f64, f64)], segments: &[(u32, u32)]) -> Vec<Vec<(f64, f64)>> {
    let mut adjacency: HashMap<u32, Vec<usize>> = HashMap::new();
    for (si, &(a, b)) in segments.iter().enumerate() {
        adjacency.entry(a).or_default().push(si);
        adjacency.entry(b).or_default().push(si);
    }
    let mut used = vec![false; segments.len()];
    let mut polylines = Vec::new();

    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a, b) = segments[start];
        let mut chain = std::collections::VecDeque::from([a, b]);
        // Grow both ends until no unused continuation exists.
        for forward in [true, false] {
            loop {
                let tip = if forward {
                    *chain.back().unwrap()
                } else {
                    *chain.front().unwrap()
                };
                let next = adjacency[&tip]
                    .iter()
                    .copied()
                    .find(|&si| !used[si]);
                match next {
                    Some(si) => {
                        used[si] = true;
                        let (a, b) = segments[si];
                        let other = if a == tip { b } else { a };
                        if forward {
                            chain.push_back(other);
                        } else {
                            chain.push_front(other);
                        }
                    }
                    None => break,
                }
            }
        }
        polylines.push(chain.into_iter().map(|id| points[id as usize]).collect());
    }
    polylines
}
