//! Backtracking enumeration of all proper k-colorings of a graph.

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Stream of every proper coloring of `g` with colors in `1..=k`, in the
/// order produced by backtracking over vertices 0..n with ascending colors.
/// After `cap` colorings the stream yields one `CapExceeded` error and
/// stops.
pub fn enumerate_colorings(g: &Graph, k: u8, cap: u64) -> ColoringEnumerator {
    ColoringEnumerator {
        g: g.clone(),
        k,
        cap,
        produced: 0,
        stack: Vec::with_capacity(g.n()),
        state: State::Fresh,
    }
}

/// Total number of proper colorings, subject to the cap.
pub fn count_colorings(g: &Graph, k: u8, cap: u64) -> Result<u64> {
    let mut count = 0u64;
    for item in enumerate_colorings(g, k, cap) {
        item?;
        count += 1;
    }
    Ok(count)
}

enum State {
    Fresh,
    Running,
    Done,
}

pub struct ColoringEnumerator {
    g: Graph,
    k: u8,
    cap: u64,
    produced: u64,
    /// stack[d] = color currently assigned to vertex d.
    stack: Vec<u8>,
    state: State,
}

impl ColoringEnumerator {
    /// Smallest color > `from` usable at vertex `v` given the stack below.
    fn next_color(&self, v: usize, from: u8) -> Option<u8> {
        'colors: for c in (from + 1)..=self.k {
            for u in crate::graph::set_bits(self.g.neighbors(v)) {
                if u < v && self.stack[u] == c {
                    continue 'colors;
                }
            }
            return Some(c);
        }
        None
    }

    fn emit(&mut self) -> Option<Result<Coloring>> {
        self.produced += 1;
        if self.produced > self.cap {
            self.state = State::Done;
            return Some(Err(Error::CapExceeded {
                visited: self.cap,
                cap: self.cap,
            }));
        }
        Some(Ok(Coloring::new_unchecked(self.stack.clone(), self.k)))
    }
}

impl Iterator for ColoringEnumerator {
    type Item = Result<Coloring>;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.g.n();
        match self.state {
            State::Done => return None,
            State::Fresh => {
                self.state = State::Running;
                // Descend to the first complete assignment.
                while self.stack.len() < n {
                    let v = self.stack.len();
                    match self.next_color(v, 0) {
                        Some(c) => self.stack.push(c),
                        None => return self.backtrack_and_emit(),
                    }
                }
                return self.emit();
            }
            State::Running => {}
        }
        self.backtrack_and_emit()
    }
}

impl ColoringEnumerator {
    /// Advance from the current complete (or stuck) assignment to the next
    /// complete one, emitting it.
    fn backtrack_and_emit(&mut self) -> Option<Result<Coloring>> {
        let n = self.g.n();
        if n == 0 {
            // The empty assignment was already emitted by the Fresh arm.
            self.state = State::Done;
            return None;
        }
        loop {
            // Pop until some vertex can advance to a later color.
            loop {
                match self.stack.pop() {
                    None => {
                        self.state = State::Done;
                        return None;
                    }
                    Some(prev) => {
                        let v = self.stack.len();
                        if let Some(c) = self.next_color(v, prev) {
                            self.stack.push(c);
                            break;
                        }
                    }
                }
            }
            // Extend back to a full assignment.
            let mut stuck = false;
            while self.stack.len() < n {
                let v = self.stack.len();
                match self.next_color(v, 0) {
                    Some(c) => self.stack.push(c),
                    None => {
                        stuck = true;
                        break;
                    }
                }
            }
            if !stuck {
                return self.emit();
            }
        }
    }
}
