//! Normal-form arithmetic for the built-in groups and their Cayley graphs.
//!
//! Two families are supported: the lattices `Z^d` with the standard
//! generators `±e_i`, and free groups of small rank with the generators
//! `a, a⁻¹, b, b⁻¹, ...`. Cayley adjacency is `g ~ s·g` for `s` in the
//! generating set, so the group acts on the graph from the right.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Largest ball that [`GroupSpec::word_ball`] will enumerate.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// Letters of a free word: `2k` is the `k`-th generator, `2k + 1` its inverse.
pub type Letter = u8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Lattice { dim: usize },
    Free { rank: usize },
}

/// An element in normal form: an integer vector for lattices, a reduced word
/// for free groups. The derived order is lexicographic in both cases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Lattice(Vec<i64>),
    Free(Vec<Letter>),
}

impl GroupElement {
    pub fn lattice(coords: impl Into<Vec<i64>>) -> Self {
        GroupElement::Lattice(coords.into())
    }

    /// Builds a free word from its text form (`"aB"` is `a·b⁻¹`), reducing it.
    pub fn word(text: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(text.len());
        if text != "1" {
            for c in text.chars() {
                let letter = letter_from_char(c)
                    .ok_or_else(|| Error::usage(format!("invalid letter {c:?} in word {text:?}")))?;
                push_reduced(&mut letters, letter);
            }
        }
        Ok(GroupElement::Free(letters))
    }

    /// Coordinates of a `Z^2` element.
    pub fn xy(&self) -> Option<(i64, i64)> {
        match self {
            GroupElement::Lattice(v) if v.len() == 2 => Some((v[0], v[1])),
            _ => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Lattice(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            GroupElement::Free(w) if w.is_empty() => write!(f, "1"),
            GroupElement::Free(w) => {
                for &l in w {
                    write!(f, "{}", letter_to_char(l))?;
                }
                Ok(())
            }
        }
    }
}

fn letter_to_char(l: Letter) -> char {
    let c = (b'a' + l / 2) as char;
    if l.is_multiple_of(2) {
        c
    } else {
        c.to_ascii_uppercase()
    }
}

fn letter_from_char(c: char) -> Option<Letter> {
    match c {
        'a'..='z' => Some((c as u8 - b'a') * 2),
        'A'..='Z' => Some((c as u8 - b'A') * 2 + 1),
        _ => None,
    }
}

fn push_reduced(word: &mut Vec<Letter>, letter: Letter) {
    if word.last() == Some(&(letter ^ 1)) {
        word.pop();
    } else {
        word.push(letter);
    }
}

/// A group together with its finite symmetric generating set `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    kind: GroupKind,
    generators: Vec<GroupElement>,
    inverse_of: Vec<usize>,
    positive: Vec<usize>,
}

impl GroupSpec {
    /// `Z^d` with generators `+e_1, -e_1, +e_2, -e_2, ...`.
    pub fn lattice(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::usage("lattice dimension must be positive"));
        }
        let mut generators = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            for sign in [1, -1] {
                let mut v = vec![0; dim];
                v[i] = sign;
                generators.push(GroupElement::Lattice(v));
            }
        }
        Ok(Self::paired(GroupKind::Lattice { dim }, generators))
    }

    /// The free group on `rank` letters, generators `a, A, b, B, ...`.
    pub fn free(rank: usize) -> Result<Self> {
        if rank == 0 || rank > 26 {
            return Err(Error::usage("free group rank must be between 1 and 26"));
        }
        let generators = (0..2 * rank as Letter)
            .map(|l| GroupElement::Free(vec![l]))
            .collect();
        Ok(Self::paired(GroupKind::Free { rank }, generators))
    }

    // Generators come in (s, s⁻¹) pairs; the first of each pair is in S⁺.
    fn paired(kind: GroupKind, generators: Vec<GroupElement>) -> Self {
        let n = generators.len();
        let inverse_of = (0..n).map(|i| i ^ 1).collect();
        let positive = (0..n).step_by(2).collect();
        GroupSpec {
            kind,
            generators,
            inverse_of,
            positive,
        }
    }

    /// Looks up a built-in group by id: `"z1"`, `"z2"` or `"f2"`.
    pub fn from_id(id: &str) -> Result<Self> {
        match id {
            "z1" => Self::lattice(1),
            "z2" => Self::lattice(2),
            "f2" => Self::free(2),
            other => Err(Error::Config(format!("unknown group id {other:?}"))),
        }
    }

    pub fn id(&self) -> String {
        match self.kind {
            GroupKind::Lattice { dim } => format!("z{dim}"),
            GroupKind::Free { rank } => format!("f{rank}"),
        }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn generator(&self, index: usize) -> &GroupElement {
        &self.generators[index]
    }

    /// Index of the inverse of generator `index`.
    pub fn inverse_index(&self, index: usize) -> usize {
        self.inverse_of[index]
    }

    /// Indices of the orientation subset `S⁺`, one per inverse pair.
    pub fn positive(&self) -> &[usize] {
        &self.positive
    }

    pub fn positive_generator(&self, dir: usize) -> &GroupElement {
        &self.generators[self.positive[dir]]
    }

    pub fn generator_index(&self, s: &GroupElement) -> Option<usize> {
        self.generators.iter().position(|g| g == s)
    }

    /// Position of `s` within `S⁺`, if it is a positive generator.
    pub fn positive_index(&self, s: &GroupElement) -> Option<usize> {
        self.positive.iter().position(|&i| &self.generators[i] == s)
    }

    pub fn identity(&self) -> GroupElement {
        match self.kind {
            GroupKind::Lattice { dim } => GroupElement::Lattice(vec![0; dim]),
            GroupKind::Free { .. } => GroupElement::Free(Vec::new()),
        }
    }

    /// Whether `g` is a well-formed element of this group.
    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self.kind, g) {
            (GroupKind::Lattice { dim }, GroupElement::Lattice(v)) => v.len() == dim,
            (GroupKind::Free { rank }, GroupElement::Free(w)) => {
                w.iter().all(|&l| (l as usize) < 2 * rank)
                    && w.windows(2).all(|p| p[0] != p[1] ^ 1)
            }
            _ => false,
        }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::usage(format!("{g} is not an element of {}", self.id())))
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// Product without validation; callers guarantee both are elements.
    pub(crate) fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (a, b) {
            (GroupElement::Lattice(x), GroupElement::Lattice(y)) => {
                GroupElement::Lattice(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (GroupElement::Free(x), GroupElement::Free(y)) => {
                let mut w = x.clone();
                for &l in y {
                    push_reduced(&mut w, l);
                }
                GroupElement::Free(w)
            }
            _ => unreachable!("mixed group elements"),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        match a {
            GroupElement::Lattice(x) => GroupElement::Lattice(x.iter().map(|c| -c).collect()),
            GroupElement::Free(w) => GroupElement::Free(w.iter().rev().map(|l| l ^ 1).collect()),
        }
    }

    /// `{s·g : s ∈ S}` in generator order.
    pub fn cayley_neighbors(&self, g: &GroupElement) -> Vec<GroupElement> {
        self.generators.iter().map(|s| self.mul(s, g)).collect()
    }

    /// Word length, i.e. graph distance to the identity.
    pub fn word_length(&self, g: &GroupElement) -> u64 {
        match g {
            GroupElement::Lattice(v) => v.iter().map(|c| c.unsigned_abs()).sum(),
            GroupElement::Free(w) => w.len() as u64,
        }
    }

    /// Graph distance between `a` and `b`, which is `|b·a⁻¹|`.
    pub fn distance(&self, a: &GroupElement, b: &GroupElement) -> u64 {
        self.word_length(&self.mul(b, &self.inverse(a)))
    }

    /// Number of elements of word length at most `r`, saturating on overflow.
    pub fn ball_size(&self, r: u32) -> u128 {
        let r = r as u128;
        match self.kind {
            GroupKind::Lattice { dim } => {
                // Σ_k 2^k C(d,k) C(r,k)
                let mut total: u128 = 0;
                for k in 0..=dim.min(r as usize) as u128 {
                    let term = (1u128 << k)
                        .saturating_mul(binomial(dim as u128, k))
                        .saturating_mul(binomial(r, k));
                    total = total.saturating_add(term);
                }
                total
            }
            GroupKind::Free { rank } => {
                let branching = 2 * rank as u128 - 1;
                let mut total: u128 = 1;
                let mut sphere: u128 = 2 * rank as u128;
                for _ in 0..r {
                    total = total.saturating_add(sphere);
                    sphere = sphere.saturating_mul(branching);
                    if total > ENUMERATION_LIMIT {
                        break;
                    }
                }
                total
            }
        }
    }

    /// All elements within word distance `r` of the identity, found by
    /// breadth-first search over [`cayley_neighbors`](Self::cayley_neighbors).
    /// The result is in BFS order: by distance, then by generator order.
    pub fn word_ball(&self, r: u32) -> Result<Vec<GroupElement>> {
        let size = self.ball_size(r);
        if size > ENUMERATION_LIMIT {
            return Err(Error::ResourceGuard {
                what: "word ball",
                size,
                limit: ENUMERATION_LIMIT,
            });
        }
        let identity = self.identity();
        let mut seen: HashSet<GroupElement> = HashSet::with_capacity(size as usize);
        let mut order = Vec::with_capacity(size as usize);
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back((identity, 0u32));
        while let Some((g, d)) = queue.pop_front() {
            if d < r {
                for h in self.cayley_neighbors(&g) {
                    if seen.insert(h.clone()) {
                        queue.push_back((h, d + 1));
                    }
                }
            }
            order.push(g);
        }
        Ok(order)
    }

    /// Parses an element from whitespace-separated tokens: `d` integers for a
    /// lattice, one word for a free group. Returns the element and the number
    /// of tokens consumed.
    pub fn parse_element(&self, tokens: &[&str]) -> Result<(GroupElement, usize)> {
        match self.kind {
            GroupKind::Lattice { dim } => {
                if tokens.len() < dim {
                    return Err(Error::usage("not enough coordinates"));
                }
                let coords = tokens[..dim]
                    .iter()
                    .map(|t| {
                        t.parse::<i64>()
                            .map_err(|e| Error::usage(format!("bad coordinate {t:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((GroupElement::Lattice(coords), dim))
            }
            GroupKind::Free { .. } => {
                let token = tokens.first().ok_or_else(|| Error::usage("missing word"))?;
                let g = GroupElement::word(token)?;
                self.check(&g)?;
                Ok((g, 1))
            }
        }
    }

    /// Text tokens of an element, the inverse of [`parse_element`](Self::parse_element).
    pub fn element_tokens(&self, g: &GroupElement) -> Vec<String> {
        match g {
            GroupElement::Lattice(v) => v.iter().map(|c| c.to_string()).collect(),
            GroupElement::Free(_) => vec![g.to_string()],
        }
    }

    /// Number of text tokens per element.
    pub fn element_width(&self) -> usize {
        match self.kind {
            GroupKind::Lattice { dim } => dim,
            GroupKind::Free { .. } => 1,
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}
