//! The information tree and its token game.
//!
//! A complete binary tree over `n_T` leaves (the smallest power of two at
//! least `n`). The vertex at depth `d` with 1-based index `j` covers the
//! 1-based positions `[(n_T/2^d)(j-1)+1, (n_T/2^d) j]`. Each color owns a
//! token; a token at vertex `v` certifies that the color's position in the
//! hidden permutation lies in `v`'s interval. Once every token sits on a
//! leaf the permutation is known.
//!
//! When `n` is not a power of two, intervals may reach past `n`. Queries only
//! ever cover positions `<= n`, and vertices whose interval lies entirely
//! past `n` ("phantom" vertices) never receive tokens.

use alloc::vec::Vec;
use core::ops::{Range, RangeInclusive};

use crate::engine::{Color, SignedQuery};
use crate::error::{Error, Violation};

/// A vertex by depth (root = 0) and 1-based left-to-right index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub depth: u32,
    pub index: usize,
}

impl Vertex {
    pub const ROOT: Vertex = Vertex { depth: 0, index: 1 };

    pub fn left(self) -> Vertex {
        Vertex { depth: self.depth + 1, index: 2 * self.index - 1 }
    }

    pub fn right(self) -> Vertex {
        Vertex { depth: self.depth + 1, index: 2 * self.index }
    }

    pub fn parent(self) -> Option<Vertex> {
        (self.depth > 0).then(|| Vertex { depth: self.depth - 1, index: self.index.div_ceil(2) })
    }

    // 1-based heap numbering: root 1, children 2i and 2i + 1.
    fn heap_id(self) -> usize {
        (1usize << self.depth) + self.index - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeShape {
    n: usize,
    n_t: usize,
    depth: u32,
}

impl TreeShape {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::Usage("the information tree needs n >= 1"));
        }
        let n_t = n.next_power_of_two();
        Ok(TreeShape { n, n_t, depth: n_t.trailing_zeros() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of leaves.
    pub fn n_t(&self) -> usize {
        self.n_t
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.depth <= self.depth && v.index >= 1 && v.index <= 1usize << v.depth
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        v.depth == self.depth
    }

    /// Number of leaves below `v`.
    pub fn width(&self, v: Vertex) -> usize {
        self.n_t >> v.depth
    }

    fn span(&self, v: Vertex) -> Range<usize> {
        let w = self.width(v);
        w * (v.index - 1)..w * v.index
    }

    /// The interval of `v` in 1-based positions, possibly reaching past `n`.
    pub fn interval(&self, v: Vertex) -> Result<RangeInclusive<usize>, Error> {
        if !self.contains(v) {
            return Err(Error::Usage("vertex is not part of the tree"));
        }
        let span = self.span(v);
        Ok(span.start + 1..=span.end)
    }

    /// The interval of `v` as 0-based positions, cut off at `n`.
    pub fn positions(&self, v: Vertex) -> Range<usize> {
        let span = self.span(v);
        span.start.min(self.n)..span.end.min(self.n)
    }

    /// True when every position under `v` lies past `n`.
    pub fn is_phantom(&self, v: Vertex) -> bool {
        self.positions(v).is_empty()
    }

    fn vertex_count(&self) -> usize {
        2 * self.n_t
    }
}

/// `vertex_interval` in free-function form: 1-based, unclamped.
pub fn vertex_interval(shape: &TreeShape, v: Vertex) -> Result<RangeInclusive<usize>, Error> {
    shape.interval(v)
}

/// Where every color's token currently sits.
#[derive(Clone, Debug)]
pub struct TokenState {
    position: Vec<Vertex>,
    occupants: Vec<Vec<Color>>,
    slot: Vec<usize>,
    witness: Option<Vec<usize>>,
}

impl TokenState {
    /// All `n` tokens at the root.
    pub fn new(shape: &TreeShape) -> Self {
        let n = shape.n();
        let mut occupants = alloc::vec![Vec::new(); shape.vertex_count()];
        occupants[Vertex::ROOT.heap_id()] = (1..=n as Color).collect();
        TokenState {
            position: alloc::vec![Vertex::ROOT; n],
            occupants,
            slot: (0..n).collect(),
            witness: None,
        }
    }

    /// Attaches the hidden permutation (`perm[pos]` is the color at `pos`).
    /// Every later slide is then checked against it and a token leaving the
    /// interval of its true position is reported as
    /// [`Violation::WitnessMismatch`].
    pub fn with_witness(mut self, perm: &[Color]) -> Result<Self, Error> {
        if perm.len() != self.position.len() {
            return Err(Error::LengthMismatch { expected: self.position.len(), found: perm.len() });
        }
        let mut at = alloc::vec![usize::MAX; perm.len()];
        for (pos, &c) in perm.iter().enumerate() {
            match at.get_mut((c as usize).wrapping_sub(1)) {
                Some(slot) if *slot == usize::MAX => *slot = pos,
                _ => return Err(Error::Usage("witness is not a permutation")),
            }
        }
        self.witness = Some(at);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.position.len()
    }

    pub fn position(&self, color: Color) -> Vertex {
        self.position[color as usize - 1]
    }

    /// Colors whose tokens sit exactly at `v`.
    pub fn tokens_at(&self, v: Vertex) -> &[Color] {
        &self.occupants[v.heap_id()]
    }

    fn relocate(&mut self, color: Color, to: Vertex) {
        let c = color as usize - 1;
        let from = self.position[c].heap_id();
        let idx = self.slot[c];
        self.occupants[from].swap_remove(idx);
        if let Some(&moved) = self.occupants[from].get(idx) {
            self.slot[moved as usize - 1] = idx;
        }
        let dest = &mut self.occupants[to.heap_id()];
        self.slot[c] = dest.len();
        dest.push(color);
        self.position[c] = to;
    }

    /// Moves a token one level down to `to`, which must be a child of its
    /// current vertex.
    pub(crate) fn descend(&mut self, shape: &TreeShape, color: Color, to: Vertex) -> Result<(), Error> {
        if shape.is_phantom(to) {
            return Err(Violation::PhantomPosition { color }.into());
        }
        if let Some(witness) = &self.witness {
            if !shape.positions(to).contains(&witness[color as usize - 1]) {
                return Err(Violation::WitnessMismatch { color }.into());
            }
        }
        self.relocate(color, to);
        Ok(())
    }
}

/// The zero-one query for `color`: the color on the left half of its
/// vertex's interval (cut off at `n`), blank elsewhere.
pub fn token_query(shape: &TreeShape, state: &TokenState, color: Color) -> Result<SignedQuery, Error> {
    let v = state.position(color);
    if shape.is_leaf(v) {
        return Err(Error::Usage("token already sits on a leaf"));
    }
    Ok(SignedQuery::fill(shape.n(), shape.positions(v.left()), color))
}

/// Slides a token to the left child on answer 1, the right child on 0.
pub fn slide_token(shape: &TreeShape, state: &mut TokenState, color: Color, answer: i32) -> Result<(), Error> {
    let v = state.position(color);
    if shape.is_leaf(v) {
        return Err(Error::Usage("token already sits on a leaf"));
    }
    let to = match answer {
        1 => v.left(),
        0 => v.right(),
        _ => return Err(Violation::TokenAnswer { color, answer }.into()),
    };
    state.descend(shape, color, to)
}

/// Reads the permutation off the leaves: position `p` holds the color whose
/// token sits on leaf `p`.
pub fn extract_codeword(shape: &TreeShape, state: &TokenState) -> Result<Vec<Color>, Error> {
    let n = shape.n();
    let mut out = alloc::vec![0; n];
    for color in 1..=n as Color {
        let v = state.position(color);
        if !shape.is_leaf(v) {
            return Err(Error::Usage("a token has not reached a leaf yet"));
        }
        let pos = v.index - 1;
        if pos >= n {
            return Err(Violation::PhantomPosition { color }.into());
        }
        if out[pos] != 0 {
            return Err(Violation::SharedLeaf { position: pos }.into());
        }
        out[pos] = color;
    }
    Ok(out)
}
