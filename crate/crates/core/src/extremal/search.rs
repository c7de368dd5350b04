//! Depth-first ruler search over increasing marks.
//!
//! Marks are positions `0 = x_0 < x_1 < …` relative to the first element. The
//! state carries three bitsets:
//!
//! * `dist`: differences already realised between placed marks;
//! * `list`: distances from the newest mark back to every placed mark (bit 0
//!   is the newest mark itself);
//! * `comp`: gaps that would collide with `dist` if used next, i.e. the union
//!   of `dist >> (x - a)` over placed marks `a`.
//!
//! Appending a mark at gap `g` updates them as `dist |= list << g`,
//! `list = (list << g) | 1`, `comp = (comp >> g) | dist`.
//!
//! In fixed-end mode the last mark sits at `length` from the start. Each new
//! interior mark `y` also realises `length − y`, and `rlist` (the mirror image
//! of `list` about bit `TOP`) lets that extra difference be folded into
//! `comp` with one shift.

use super::bits::{Bits, WIDTH};
use rayon::prelude::*;
use std::sync::atomic::{AtomicU64, Ordering};

const TOP: u32 = WIDTH - 1;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Frame {
    x: u32,
    placed: u32,
    first_gap: u32,
    dist: Bits,
    comp: Bits,
    list: Bits,
    rlist: Bits,
    /// Gaps so far equal the leading gaps of `Query::below`.
    tight: bool,
}

impl Frame {
    fn root(q: &Query<'_>) -> Self {
        let mut f = Frame {
            x: 0,
            placed: 1,
            first_gap: 0,
            dist: Bits::default(),
            comp: Bits::default(),
            list: Bits::single(0),
            rlist: Bits::single(TOP),
            tight: q.below.is_some(),
        };
        if q.fixed_end && q.marks >= 2 {
            f.dist.set(q.length);
            f.comp = f.dist;
        }
        f
    }

    #[inline]
    fn push(&self, g: u32, end: Option<u32>) -> Frame {
        let shifted = self.list.shl(g);
        let mut dist = self.dist.or(&shifted);
        let rlist = self.rlist.shr(g).or(&Bits::single(TOP));
        let mut comp = self.comp.shr(g);
        if let Some(e) = end {
            dist.set(e);
            comp = comp.or(&rlist.shr(TOP - e));
        }
        Frame {
            x: self.x + g,
            placed: self.placed + 1,
            first_gap: if self.placed == 1 { g } else { self.first_gap },
            dist,
            comp: comp.or(&dist),
            list: shifted.or(&Bits::single(0)),
            rlist,
            tight: false,
        }
    }
}

/// A single ruler query: `marks` marks spanning at most `length`.
pub(crate) struct Query<'a> {
    pub marks: u32,
    pub length: u32,
    /// `min_span[j]` is a lower bound on the span of any `j`-mark ruler.
    pub min_span: &'a [u32],
    /// Restrict to rulers whose first gap is smaller than their last gap.
    /// Sound for existence questions only.
    pub mirror: bool,
    /// Require the last mark at exactly `length`.
    pub fixed_end: bool,
    /// Only accept rulers whose gap sequence is lexicographically smaller.
    pub below: Option<&'a [u32]>,
}

/// Admissible next gaps from `f`, in increasing order.
struct Candidates {
    g: u32,
    max_g: u32,
}

impl<'a> Query<'a> {
    fn span_bound(&self, marks: u32) -> u32 {
        self.min_span
            .get(marks as usize)
            .copied()
            .unwrap_or_else(|| marks * marks.saturating_sub(1) / 2)
    }

    /// Gap range for the next mark, or `None` when the frame is complete or
    /// provably dead.
    fn candidates(&self, f: &Frame) -> Option<Candidates> {
        let mut c = self.candidates_unbounded(f)?;
        if f.tight {
            let cap = self.below?.get(f.placed as usize - 1).copied()?;
            c.max_g = c.max_g.min(cap);
        }
        Some(c)
    }

    fn candidates_unbounded(&self, f: &Frame) -> Option<Candidates> {
        let room = self.length - f.x;
        if self.fixed_end {
            // Interior marks still to place between x and the end.
            let r = self.marks.checked_sub(f.placed + 1).filter(|&r| r > 0)?;
            if f.dist.smallest_clear_sum(r + 1) > room {
                return None;
            }
            // Differences inside [x, length] other than `room` itself are all new.
            if f.dist.clear_count_upto(room) + 1 < (r + 2) * (r + 1) / 2 {
                return None;
            }
            let tail = self.span_bound(r + 1);
            let mut max_g = room.checked_sub(tail)?;
            if self.mirror && r == 1 && f.placed >= 2 {
                max_g = max_g.min(room.checked_sub(f.first_gap + 1)?);
            }
            Some(Candidates { g: 1, max_g })
        } else {
            let r = self.marks - f.placed;
            if r == 0 {
                return None;
            }
            if r >= 2 && f.dist.smallest_clear_sum(r) > room {
                return None;
            }
            if f.dist.clear_count_upto(room) < (r + 1) * r / 2 {
                return None;
            }
            let tail = self.span_bound(r);
            let max_g = room.checked_sub(tail)?;
            let g = if self.mirror && r == 1 && f.placed >= 2 { f.first_gap + 1 } else { 1 };
            Some(Candidates { g, max_g })
        }
    }

    /// Appends the closing gap of a fixed-end ruler.
    fn close(&self, mut gaps: Vec<u32>) -> Vec<u32> {
        if self.fixed_end && self.marks >= 2 {
            let x: u32 = gaps.iter().sum();
            gaps.push(self.length - x);
        }
        gaps
    }

    fn done(&self, f: &Frame) -> bool {
        if f.tight {
            // Equal on every gap placed so far, so not strictly smaller.
            return false;
        }
        if self.fixed_end {
            match self.marks {
                0 | 1 => f.placed == self.marks.max(1) && self.length == 0,
                m => f.placed + 1 == m && self.length > f.x && (!self.mirror || m < 3 || self.length - f.x > f.first_gap),
            }
        } else {
            f.placed == self.marks
        }
    }

    /// Applies gap `g` to `f` if the resulting mark keeps all differences distinct.
    #[inline]
    fn step(&self, f: &Frame, g: u32) -> Option<Frame> {
        if f.comp.test(g) {
            return None;
        }
        let tight = f.tight && self.below.and_then(|b| b.get(f.placed as usize - 1)) == Some(&g);
        if !self.fixed_end {
            return Some(Frame { tight, ..f.push(g, None) });
        }
        let y = f.x + g;
        if y >= self.length {
            return None;
        }
        let e = self.length - y;
        // `e` must be new, and must differ from every `y − a`.
        if f.dist.test(e) || (e >= g && f.list.test(e - g)) {
            return None;
        }
        Some(Frame { tight, ..f.push(g, Some(e)) })
    }
}

struct Walker<'q, 'a> {
    q: &'q Query<'a>,
    nodes: u64,
    path: Vec<u32>,
}

impl Walker<'_, '_> {
    fn dfs(&mut self, f: &Frame) -> bool {
        self.nodes += 1;
        if self.q.done(f) {
            return true;
        }
        let Some(c) = self.q.candidates(f) else {
            return false;
        };
        for g in c.g..=c.max_g {
            let Some(next) = self.q.step(f, g) else {
                continue;
            };
            self.path.push(g);
            if self.dfs(&next) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

/// Enumerates all admissible frames with `depth` marks placed, in
/// increasing-gap (lexicographic) order, alongside their gap paths.
/// Frames left unexpanded (complete or dead) are kept so the walker can
/// settle them.
fn prefixes(q: &Query<'_>, depth: u32) -> Vec<(Frame, Vec<u32>)> {
    let mut layer = vec![(Frame::root(q), Vec::new())];
    for _ in 1..depth {
        let mut next = Vec::new();
        for (f, path) in layer {
            let Some(c) = q.candidates(&f).filter(|_| !q.done(&f)) else {
                next.push((f, path));
                continue;
            };
            for g in c.g..=c.max_g {
                if let Some(child) = q.step(&f, g) {
                    let mut p = path.clone();
                    p.push(g);
                    next.push((child, p));
                }
            }
        }
        layer = next;
    }
    layer
}

pub(crate) struct Outcome {
    /// Gap sequence of the first ruler found in lexicographic order.
    pub gaps: Option<Vec<u32>>,
    pub nodes: u64,
}

/// Finds the lexicographically first ruler satisfying `q`, fanning the top
/// of the tree out across the current rayon pool. The answer does not depend
/// on the pool size; only `nodes` does.
pub(crate) fn first_ruler(q: &Query<'_>) -> Outcome {
    if q.marks == 0 {
        return Outcome { gaps: (!q.fixed_end || q.length == 0).then(Vec::new), nodes: 0 };
    }
    let roots = prefixes(q, 3);
    let nodes = AtomicU64::new(0);
    let gaps = roots.par_iter().find_map_first(|(frame, prefix)| {
        let mut w = Walker { q, nodes: 0, path: prefix.clone() };
        let hit = w.dfs(frame);
        nodes.fetch_add(w.nodes, Ordering::Relaxed);
        hit.then_some(w.path)
    });
    let gaps = gaps.map(|g| q.close(g));
    Outcome { gaps, nodes: nodes.into_inner() }
}

/// Sequential reference walk with no fan-out; used to cross-check the
/// parallel driver.
#[cfg(test)]
pub(crate) fn first_ruler_sequential(q: &Query<'_>) -> Option<Vec<u32>> {
    let mut w = Walker { q, nodes: 0, path: Vec::new() };
    w.dfs(&Frame::root(q)).then(|| q.close(w.path))
}
