//! Breadth-first enumeration of Cayley balls.
//!
//! The ball of radius `r` is the set of elements expressible as words of
//! length at most `r` over the symmetric closure of the generating sequence
//! (generators and their inverses). Enumeration is layered and deduplicated
//! by canonical form, so `ball(r)` is a prefix of `ball(r+1)` and the
//! recorded length of each element is its true word length over the
//! symmetric set.

use std::collections::HashMap;

use crate::error::Result;
use crate::groups::{GeneratingSequence, GroupDescriptor, GroupElement};

/// Enumerated ball; elements are sorted by `(word length, canonical order)`,
/// which makes the listing canonical and radius-monotone.
#[derive(Debug, Clone)]
pub struct Ball {
    radius: usize,
    elements: Vec<GroupElement>,
    lengths: Vec<usize>,
    index: HashMap<GroupElement, usize>,
}

impl Ball {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Word length of a ball element.
    pub fn length_of(&self, e: &GroupElement) -> Option<usize> {
        self.index.get(e).map(|&i| self.lengths[i])
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        self.index.contains_key(e)
    }

    /// Elements of word length at most `r` (a prefix of the listing).
    pub fn within(&self, r: usize) -> &[GroupElement] {
        let end = self.lengths.partition_point(|&l| l <= r);
        &self.elements[..end]
    }

    pub fn iter_with_lengths(&self) -> impl Iterator<Item = (&GroupElement, usize)> {
        self.elements.iter().zip(self.lengths.iter().copied())
    }
}

/// Enumerate the ball of radius `r` over the symmetric closure of `gens`.
pub fn ball(
    descriptor: &GroupDescriptor,
    gens: &GeneratingSequence,
    r: usize,
) -> Result<Ball> {
    let mut symbols: Vec<GroupElement> = Vec::new();
    for g in gens.elements() {
        let ginv = descriptor.invert(g)?;
        for s in [g.clone(), ginv] {
            if !symbols.contains(&s) {
                symbols.push(s);
            }
        }
    }

    let identity = descriptor.identity();
    let mut index = HashMap::new();
    index.insert(identity.clone(), 0usize);
    let mut elements = vec![identity];
    let mut lengths = vec![0usize];
    let mut frontier: Vec<GroupElement> = vec![elements[0].clone()];

    for layer in 1..=r {
        let mut next = Vec::new();
        for w in &frontier {
            for s in &symbols {
                let sw = descriptor.multiply(s, w)?;
                if !index.contains_key(&sw) {
                    // position fixed up below once the layer is sorted
                    index.insert(sw.clone(), usize::MAX);
                    next.push(sw);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        for e in &next {
            index.insert(e.clone(), elements.len());
            elements.push(e.clone());
            lengths.push(layer);
        }
        frontier = next;
    }

    Ok(Ball { radius: r, elements, lengths, index })
}
