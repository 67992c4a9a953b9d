//! Elements of the right-angled Artin group `A(Γ)`.
//!
//! Every [`GroupElement`] is stored in canonical form: a reduced word that is
//! the lexicographically least among all words obtained from it by swapping
//! adjacent commuting letters. Two elements are equal iff their canonical
//! words are identical.
//!
//! Letters are ordered by generator (label order) with the positive letter
//! before its inverse.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u8,
    inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        debug_assert!(generator < crate::graph::MAX_VERTICES);
        Letter {
            generator: generator as u8,
            inverse,
        }
    }

    pub fn positive(generator: usize) -> Letter {
        Letter::new(generator, false)
    }

    #[inline]
    pub fn generator(self) -> usize {
        self.generator as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    #[inline]
    pub fn inv(self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            self.generator,
            if self.inverse { "'" } else { "" }
        )
    }
}

/// The group `A(Γ)` for a fixed defining graph. Cheap to clone.
#[derive(Clone, PartialEq, Eq)]
pub struct Raag {
    graph: Arc<Graph>,
}

impl fmt::Debug for Raag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Raag").field(&*self.graph).finish()
    }
}

impl Raag {
    pub fn new(graph: Graph) -> Raag {
        Raag {
            graph: Arc::new(graph),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    fn same_group(&self, other: &Raag) -> bool {
        Arc::ptr_eq(&self.graph, &other.graph) || self.graph == other.graph
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            letters: Vec::new(),
        }
    }

    pub fn generator(&self, label: &str) -> Result<GroupElement> {
        let i = self.graph.index_of(label)?;
        Ok(self.with_normal_word(vec![Letter::positive(i)]))
    }

    pub(crate) fn generator_idx(&self, i: usize) -> GroupElement {
        self.with_normal_word(vec![Letter::positive(i)])
    }

    /// Reduces an arbitrary word to its canonical element.
    pub fn element(&self, word: &[Letter]) -> Result<GroupElement> {
        if let Some(l) = word.iter().find(|l| l.generator() >= self.graph.order()) {
            return Err(Error::input(format!(
                "generator index {} out of range",
                l.generator()
            )));
        }
        Ok(self.with_normal_word(self.normalize(word)))
    }

    /// Product of generators given by label, all positive.
    pub fn positive_word<S: AsRef<str>>(
        &self,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<GroupElement> {
        let word = labels
            .into_iter()
            .map(|l| self.graph.index_of(l.as_ref()).map(Letter::positive))
            .collect::<Result<Vec<_>>>()?;
        self.element(&word)
    }

    /// Parses `v1 v3^-1 v2`; `1` (or an empty string) is the identity.
    pub fn parse(&self, text: &str) -> Result<GroupElement> {
        let mut word = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (label, inverse) = match tok.strip_suffix("^-1") {
                Some(l) => (l, true),
                None => match tok.strip_suffix("^1") {
                    Some(l) => (l, false),
                    None => (tok, false),
                },
            };
            let i = self.graph.index_of(label)?;
            word.push(Letter::new(i, inverse));
        }
        self.element(&word)
    }

    pub(crate) fn with_normal_word(&self, letters: Vec<Letter>) -> GroupElement {
        GroupElement {
            group: self.clone(),
            letters,
        }
    }

    /// Free reduction modulo commutation: returns a reduced word (not yet
    /// canonically ordered).
    ///
    /// Each incoming letter cancels against the nearest earlier letter on the
    /// same generator when every letter in between commutes with it.
    pub fn reduce_word(&self, word: &[Letter]) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(word.len());
        for &x in word {
            let mut cancel = None;
            for (i, &y) in out.iter().enumerate().rev() {
                if y.generator == x.generator {
                    if y.inverse != x.inverse {
                        cancel = Some(i);
                    }
                    break;
                }
                if !self.graph.has_edge(x.generator(), y.generator()) {
                    break;
                }
            }
            match cancel {
                Some(i) => {
                    out.remove(i);
                }
                None => out.push(x),
            }
        }
        out
    }

    /// Rearranges a reduced word into the lexicographically least word of
    /// its commutation class by repeatedly extracting the smallest letter that
    /// can be moved to the front.
    pub fn canonical_order(&self, mut rest: Vec<Letter>) -> Vec<Letter> {
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut seen = VertexSet::EMPTY;
            let mut best: Option<usize> = None;
            for (i, &x) in rest.iter().enumerate() {
                let nbrs = self.graph.neighbors(x.generator());
                if seen.is_subset(nbrs) && best.is_none_or(|b| x < rest[b]) {
                    best = Some(i);
                }
                seen.insert(x.generator());
            }
            let b = best.expect("the first letter is always movable");
            out.push(rest.remove(b));
        }
        out
    }

    pub fn normalize(&self, word: &[Letter]) -> Vec<Letter> {
        self.canonical_order(self.reduce_word(word))
    }

    fn check(&self, other: &GroupElement) -> Result<()> {
        if self.same_group(&other.group) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }
}

/// An element of `A(Γ)` in canonical form.
#[derive(Clone)]
pub struct GroupElement {
    group: Raag,
    letters: Vec<Letter>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && self.group.same_group(&other.group)
    }
}

impl Eq for GroupElement {}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({self})")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.group.graph.label(l.generator()))?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl GroupElement {
    pub fn group(&self) -> &Raag {
        &self.group
    }

    /// The canonical word.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Word length (the canonical word is reduced).
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same as [`GroupElement::is_identity`].
    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn equals(&self, other: &GroupElement) -> Result<bool> {
        self.group.check(other)?;
        Ok(self.letters == other.letters)
    }

    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        self.group.check(other)?;
        Ok(self.mul(other))
    }

    /// Product without the ambient check; callers guarantee the same group.
    pub(crate) fn mul(&self, other: &GroupElement) -> GroupElement {
        let mut w = Vec::with_capacity(self.len() + other.len());
        w.extend_from_slice(&self.letters);
        w.extend_from_slice(&other.letters);
        self.group.with_normal_word(self.group.normalize(&w))
    }

    pub fn inverse(&self) -> GroupElement {
        let w: Vec<Letter> = self.letters.iter().rev().map(|l| l.inv()).collect();
        // The reverse inverse of a reduced word is reduced.
        self.group.with_normal_word(self.group.canonical_order(w))
    }

    /// `self^n` for any integer `n`, by repeated squaring.
    pub fn power(&self, n: i64) -> GroupElement {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.group.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `x^{-1} self x`.
    pub fn conjugate_by(&self, x: &GroupElement) -> Result<GroupElement> {
        self.group.check(x)?;
        let mut w = Vec::with_capacity(self.len() + 2 * x.len());
        w.extend(x.letters.iter().rev().map(|l| l.inv()));
        w.extend_from_slice(&self.letters);
        w.extend_from_slice(&x.letters);
        Ok(self.group.with_normal_word(self.group.normalize(&w)))
    }

    /// Generators occurring in the canonical word.
    pub fn support(&self) -> VertexSet {
        self.letters.iter().map(|l| l.generator()).collect()
    }

    pub fn support_labels(&self) -> Vec<String> {
        self.group.graph.labels_of(self.support())
    }

    pub fn commutes(&self, other: &GroupElement) -> Result<bool> {
        self.group.check(other)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &GroupElement) -> bool {
        let mut ab = Vec::with_capacity(self.len() + other.len());
        ab.extend_from_slice(&self.letters);
        ab.extend_from_slice(&other.letters);
        let mut ba = Vec::with_capacity(ab.len());
        ba.extend_from_slice(&other.letters);
        ba.extend_from_slice(&self.letters);
        self.group.normalize(&ab) == self.group.normalize(&ba)
    }

    /// Splits `self = conjugator^{-1} · core · conjugator` with `core`
    /// cyclically reduced.
    ///
    /// Repeatedly strips a letter `x` that can be moved to the front together
    /// with an `x^{-1}` that can be moved to the end.
    pub fn cyclic_reduce(&self) -> (GroupElement, GroupElement) {
        let group = &self.group;
        let mut core = self.letters.clone();
        let mut prefix: Vec<Letter> = Vec::new();
        loop {
            let front = movable_positions(group, core.iter().copied().enumerate());
            let back = movable_positions(group, core.iter().copied().enumerate().rev());
            let hit = front.iter().find_map(|&i| {
                back.iter()
                    .find(|&&j| j != i && core[j] == core[i].inv())
                    .map(|&j| (i, j))
            });
            let Some((i, j)) = hit else { break };
            prefix.push(core[i]);
            let (hi, lo) = (i.max(j), i.min(j));
            core.remove(hi);
            core.remove(lo);
        }
        // self = prefix · core · prefix^{-1}, so the conjugator is prefix^{-1}.
        let prefix = group.with_normal_word(group.normalize(&prefix));
        let core = group.with_normal_word(group.canonical_order(core));
        (prefix.inverse(), core)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.cyclic_reduce().1.len() == self.len()
    }
}

/// Positions (in the iteration order given) whose letter commutes with every
/// letter visited before it.
fn movable_positions(group: &Raag, letters: impl Iterator<Item = (usize, Letter)>) -> Vec<usize> {
    let mut seen = VertexSet::EMPTY;
    let mut out = Vec::new();
    for (i, x) in letters {
        if seen.is_subset(group.graph.neighbors(x.generator())) {
            out.push(i);
        }
        seen.insert(x.generator());
    }
    out
}
