//! Hierarchical decimal tick placement.
//!
//! The value axis is cut into decimal intervals. An interval whose printed
//! length reaches `s_target` is split into ten, and every split point becomes
//! a candidate. Candidates survive only if they sit on a decimal grid whose
//! neighbouring marks are at least `s_min` away.

use super::decimal::Decimal;
use super::{LabelFormat, Tick};
use crate::domain::Domain;
use crate::func::RealFn;
use crate::par::{self, Execution};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

/// Spacing floor as a fraction of the window width.
pub const S_MIN: f64 = 0.004;
/// Subdivision target as a fraction of the window width.
pub const S_TARGET: f64 = 0.02;
const MAX_CANDIDATES: usize = 20_000;
/// Mantissas stay exactly representable as doubles.
const MAX_MANTISSA: i64 = 1_000_000_000_000_000;

pub(crate) struct Frame<'a, F: ?Sized> {
    pub f: &'a F,
    pub domain: &'a Domain,
    pub unit: f64,
    /// Finite value range covered by ticks.
    pub support: (f64, f64),
    /// Positions at the two ends of `support`.
    pub end_positions: (f64, f64),
    pub window_width: f64,
    pub exec: Execution,
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    dec: Decimal,
    pos: f64,
    /// Exponent of the native step: the step of the grid the value was born on.
    q: i32,
    /// Printed length of the interval that generated this value.
    parent_width: f64,
}

#[derive(Clone, Copy)]
struct Node {
    k: i64,
    s: i32,
    width: f64,
}

fn pow10(k: i32) -> f64 {
    Decimal::new(1, k).to_f64()
}

/// Smallest `r` with `10^r >= span`.
fn root_exponent(span: f64) -> i32 {
    let mut r = span.log10().ceil() as i32;
    while pow10(r - 1) >= span {
        r -= 1;
    }
    while pow10(r) < span {
        r += 1;
    }
    r
}

/// Total order on positions for the spacing filter.
#[derive(Clone, Copy, PartialEq)]
struct Pos(f64);

impl Eq for Pos {}

impl PartialOrd for Pos {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pos {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

struct Placer<'a, 'f, F: ?Sized> {
    frame: &'a Frame<'f, F>,
    cands: Vec<Candidate>,
    index: HashMap<Decimal, usize>,
}

impl<F: RealFn + ?Sized> Placer<'_, '_, F> {
    fn position(&self, x: f64) -> Option<f64> {
        let (a, b) = self.frame.support;
        if x < a || x > b || !self.frame.domain.contains(x) {
            return None;
        }
        self.frame.f.value(x).ok().map(|v| self.frame.unit * v)
    }

    fn lookup(&self, d: Decimal) -> Option<f64> {
        self.index.get(&d).map(|&i| self.cands[i].pos)
    }

    /// Position of a child interval bound, clipped to the support.
    fn clipped(&self, d: Decimal, x: f64) -> Option<f64> {
        let (a, b) = self.frame.support;
        let (pa, pb) = self.frame.end_positions;
        if x <= a {
            Some(pa)
        } else if x >= b {
            Some(pb)
        } else {
            self.lookup(d)
        }
    }

    /// Generate candidates level by level, returning the exponent of the root step.
    fn generate(&mut self) -> i32 {
        let (a, b) = self.frame.support;
        let r = root_exponent(b - a);
        let big = pow10(r);
        let s_target = S_TARGET * self.frame.window_width;
        let (k0, k1) = ((a / big).floor() as i64, ((b / big).ceil() as i64 - 1).max((a / big).floor() as i64));
        let mut nodes: Vec<Node> = (k0..=k1)
            .map(|k| Node {
                k,
                s: r,
                width: f64::INFINITY,
            })
            .collect();
        while !nodes.is_empty() && self.cands.len() < MAX_CANDIDATES {
            // children of every node at this depth
            let mut fresh: Vec<(Decimal, i32, f64)> = Vec::new();
            for n in &nodes {
                for i in 0..=10 {
                    let d = Decimal::new(10 * n.k + i, n.s - 1);
                    if !self.index.contains_key(&d) {
                        fresh.push((d, n.s - 1, n.width));
                    }
                }
            }
            fresh.sort_by(|x, y| x.0.cmp(&y.0).then(y.2.total_cmp(&x.2)));
            fresh.dedup_by_key(|c| c.0);
            let evaluated = par::map(self.frame.exec, &fresh, |&(d, q, w)| {
                self.position(d.to_f64()).map(|pos| Candidate {
                    dec: d,
                    pos,
                    q,
                    parent_width: w,
                })
            });
            for c in evaluated.into_iter().flatten() {
                self.index.insert(c.dec, self.cands.len());
                self.cands.push(c);
            }

            let mut next = Vec::new();
            for n in &nodes {
                for i in 0..10 {
                    let k = 10 * n.k + i;
                    if (10 * (k + 1)).abs() >= MAX_MANTISSA {
                        continue;
                    }
                    let (lo, hi) = (Decimal::new(k, n.s - 1), Decimal::new(k + 1, n.s - 1));
                    let (xl, xh) = (lo.to_f64(), hi.to_f64());
                    if xh <= a || xl >= b {
                        continue;
                    }
                    let (Some(pl), Some(ph)) = (self.clipped(lo, xl), self.clipped(hi, xh)) else {
                        continue;
                    };
                    let width = (ph - pl).abs();
                    if width >= s_target {
                        next.push(Node { k, s: n.s - 1, width });
                    }
                }
            }
            nodes = next;
        }
        r
    }

    /// Rank of the coarsest decimal grid on which `c` keeps its distance to
    /// both neighbours, or `None`.
    fn grid_rank(&self, c: &Candidate, span: f64, s_min: f64) -> Option<usize> {
        let limit = pow10(c.q).max(span / 10.0) * (1.0 + 1e-12);
        let mut best = None;
        for rank in 0.. {
            let (j, m) = (c.q + (rank / 3) as i32, [1i64, 2, 5][rank % 3]);
            if m as f64 * pow10(j) > limit {
                break;
            }
            if !c.dec.is_multiple_of(m, j) {
                continue;
            }
            let g = Decimal::new(m, j);
            let clear = [g, g.neg()].iter().all(|&step| {
                let Some(nb) = c.dec.checked_add(step) else {
                    return true;
                };
                match self.lookup(nb).or_else(|| self.position(nb.to_f64())) {
                    Some(p) => (p - c.pos).abs() >= s_min,
                    None => true,
                }
            });
            if clear {
                best = Some(rank);
            }
        }
        best
    }
}

/// Place, filter, grade and label ticks. The result is ordered by position.
pub(crate) fn place<F: RealFn + ?Sized>(frame: &Frame<'_, F>, format: LabelFormat) -> Vec<Tick> {
    let mut placer = Placer {
        frame,
        cands: Vec::new(),
        index: HashMap::new(),
    };
    let r = placer.generate();
    let (a, b) = frame.support;
    let span = b - a;
    let w = frame.window_width;
    let s_min = S_MIN * w;

    let placer = &placer;
    let ranks = par::map(frame.exec, &placer.cands, |c| placer.grid_rank(c, span, s_min));
    let mut order: Vec<(usize, usize)> = ranks
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.map(|r| (i, r)))
        .collect();
    order.sort_by(|x, y| y.1.cmp(&x.1).then(placer.cands[x.0].dec.cmp(&placer.cands[y.0].dec)));

    let floor = s_min * (1.0 - 1e-9);
    let mut taken: BTreeSet<Pos> = BTreeSet::new();
    let mut kept: Vec<Candidate> = Vec::new();
    for (i, _) in order {
        let c = placer.cands[i];
        let below = taken.range(..Pos(c.pos)).next_back();
        let above = taken.range(Pos(c.pos)..).next();
        let near = [below, above].into_iter().flatten().any(|p| (p.0 - c.pos).abs() < floor);
        if !near {
            taken.insert(Pos(c.pos));
            kept.push(c);
        }
    }
    kept.sort_by(|x, y| x.pos.total_cmp(&y.pos));

    let quarter = 0.25 * w;
    let mut levels: Vec<u8> = kept
        .iter()
        .map(|c| {
            if c.q >= r - 1 || c.dec.significant_digits() == 1 && c.parent_width >= quarter {
                0
            } else if c.dec.is_multiple_of(5, c.q) || c.q >= r - 2 {
                1
            } else {
                2
            }
        })
        .collect();

    // Label majors greedily, most isolated first; crowded majors lose rank.
    let majors: Vec<usize> = (0..kept.len()).filter(|&i| levels[i] == 0).collect();
    let gap = |m: usize| -> f64 {
        let p = kept[majors[m]].pos;
        let left = m.checked_sub(1).map_or(f64::INFINITY, |l| p - kept[majors[l]].pos);
        let right = majors.get(m + 1).map_or(f64::INFINITY, |&r| kept[r].pos - p);
        left.min(right)
    };
    let mut label_order: Vec<(usize, f64)> = (0..majors.len()).map(|m| (majors[m], gap(m))).collect();
    label_order.sort_by(|x, y| {
        kept[y.0]
            .q
            .cmp(&kept[x.0].q)
            .then(y.1.total_cmp(&x.1))
            .then(kept[x.0].dec.cmp(&kept[y.0].dec))
    });
    let s_target = S_TARGET * w * (1.0 - 1e-9);
    let mut labelled: BTreeSet<Pos> = BTreeSet::new();
    for (i, _) in label_order {
        let p = kept[i].pos;
        let below = labelled.range(..Pos(p)).next_back();
        let above = labelled.range(Pos(p)..).next();
        if [below, above].into_iter().flatten().any(|l| (l.0 - p).abs() < s_target) {
            levels[i] = 1;
        } else {
            labelled.insert(Pos(p));
        }
    }

    kept.iter()
        .zip(levels)
        .map(|(c, level)| Tick {
            value: c.dec.to_f64(),
            position_mm: c.pos,
            level,
            label: (level == 0).then(|| format.format(c.dec)),
        })
        .collect()
}
