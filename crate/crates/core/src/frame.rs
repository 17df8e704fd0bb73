//! Frames of discernment whose named possibilities may overlap.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ground universe.
pub const MAX_GROUND: usize = 4096;

const WORD_BITS: usize = 64;

/// A subset of a frame's ground universe, stored as a bitmask.
///
/// All sets belonging to one frame have the same word count, so derived
/// equality and ordering are meaningful within a frame.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(ground_len: usize) -> Self {
        ElementSet {
            words: vec![0; ground_len.div_ceil(WORD_BITS).max(1)],
        }
    }

    pub fn full(ground_len: usize) -> Self {
        let mut set = Self::empty(ground_len);
        for index in 0..ground_len {
            set.insert(index);
        }
        set
    }

    pub fn from_indices(ground_len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(ground_len);
        for index in indices {
            set.insert(index);
        }
        set
    }

    pub fn insert(&mut self, index: usize) {
        let word = index / WORD_BITS;
        if word >= self.words.len() {
            self.words.resize(word + 1, 0);
        }
        self.words[word] |= 1 << (index % WORD_BITS);
    }

    pub fn contains(&self, index: usize) -> bool {
        self.words
            .get(index / WORD_BITS)
            .is_some_and(|w| w & (1 << (index % WORD_BITS)) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        ElementSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let len = self.words.len().max(other.words.len());
        ElementSet {
            words: (0..len)
                .map(|i| self.words.get(i).copied().unwrap_or(0) | other.words.get(i).copied().unwrap_or(0))
                .collect(),
        }
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().enumerate().all(|(i, &a)| {
            let b = other.words.get(i).copied().unwrap_or(0);
            a & !b == 0
        })
    }

    /// Indices of the members, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            (0..WORD_BITS)
                .filter(move |bit| word & (1 << bit) != 0)
                .map(move |bit| w * WORD_BITS + bit)
        })
    }

    pub(crate) fn word_count(&self) -> usize {
        self.words.len()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite ground universe plus named, possibly overlapping, subsets of it.
#[derive(Debug, Clone)]
pub struct Frame {
    ground: Vec<String>,
    index: HashMap<String, usize>,
    possibilities: BTreeMap<String, ElementSet>,
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.possibilities == other.possibilities
    }
}

impl Eq for Frame {}

impl Frame {
    /// Builds a frame. Possibilities may intersect; they must be nonempty and
    /// drawn from `ground`.
    pub fn new<G, S, P, N, L, E>(ground: G, possibilities: P) -> Result<Self>
    where
        G: IntoIterator<Item = S>,
        S: Into<String>,
        P: IntoIterator<Item = (N, L)>,
        N: Into<String>,
        L: IntoIterator<Item = E>,
        E: AsRef<str>,
    {
        let ground: Vec<String> = ground.into_iter().map(Into::into).collect();
        if ground.is_empty() {
            return Err(Error::EmptyGround);
        }
        if ground.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge(ground.len()));
        }
        let mut index = HashMap::with_capacity(ground.len());
        for (i, label) in ground.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let mut frame = Frame {
            ground,
            index,
            possibilities: BTreeMap::new(),
        };
        for (name, labels) in possibilities {
            let name = name.into();
            if name.is_empty() {
                return Err(Error::EmptyLabel);
            }
            let set = frame.subset(labels)?;
            if set.is_empty() {
                return Err(Error::EmptyPossibility(name));
            }
            if frame.possibilities.contains_key(&name) {
                return Err(Error::DuplicateLabel(name));
            }
            frame.possibilities.insert(name, set);
        }
        Ok(frame)
    }

    pub(crate) fn from_parts(ground: Vec<String>, possibilities: BTreeMap<String, ElementSet>) -> Self {
        let index = ground.iter().enumerate().map(|(i, label)| (label.clone(), i)).collect();
        Frame {
            ground,
            index,
            possibilities,
        }
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn ground_len(&self) -> usize {
        self.ground.len()
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.ground.get(index).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Named possibilities in name order.
    pub fn possibilities(&self) -> impl Iterator<Item = (&str, &ElementSet)> {
        self.possibilities.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn possibility_names(&self) -> impl Iterator<Item = &str> {
        self.possibilities.keys().map(String::as_str)
    }

    pub fn possibility_count(&self) -> usize {
        self.possibilities.len()
    }

    pub fn possibility(&self, name: &str) -> Option<&ElementSet> {
        self.possibilities.get(name)
    }

    /// Whether `set` equals some named possibility.
    pub fn is_named(&self, set: &ElementSet) -> bool {
        self.possibilities.values().any(|p| p == set)
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.ground.len())
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.ground.len())
    }

    /// The set of the given ground labels (may be empty).
    pub fn subset<L, E>(&self, labels: L) -> Result<ElementSet>
    where
        L: IntoIterator<Item = E>,
        E: AsRef<str>,
    {
        let mut set = self.empty_set();
        for label in labels {
            let label = label.as_ref();
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    /// Intersection of the named possibilities (may be empty).
    pub fn intersection_of<L, E>(&self, names: L) -> Result<ElementSet>
    where
        L: IntoIterator<Item = E>,
        E: AsRef<str>,
    {
        let mut acc = self.full_set();
        let mut any = false;
        for name in names {
            let name = name.as_ref();
            let set = self
                .possibility(name)
                .ok_or_else(|| Error::UnknownPossibility(name.to_string()))?;
            acc = acc.intersection(set);
            any = true;
        }
        if !any {
            return Err(Error::EmptySubset);
        }
        Ok(acc)
    }

    /// Whether `set` has this frame's word layout and no bits beyond the
    /// ground universe.
    pub fn contains_set(&self, set: &ElementSet) -> bool {
        set.word_count() == self.empty_set().word_count() && set.iter().all(|i| i < self.ground.len())
    }

    pub fn labels_of<'a>(&'a self, set: &'a ElementSet) -> impl Iterator<Item = &'a str> + 'a {
        set.iter().filter_map(|i| self.label(i))
    }

    /// Names of the possibilities containing `set`, if their intersection is
    /// exactly `set`. Used to print focal elements as `A1&A2` rather than as
    /// raw element lists.
    pub fn naming_of(&self, set: &ElementSet) -> Option<Vec<&str>> {
        let containing: Vec<(&str, &ElementSet)> = self.possibilities().filter(|(_, p)| set.is_subset(p)).collect();
        if containing.is_empty() {
            return None;
        }
        let meet = containing
            .iter()
            .fold(self.full_set(), |acc, (_, p)| acc.intersection(p));
        (meet == *set).then(|| containing.into_iter().map(|(n, _)| n).collect())
    }

    /// Human-readable rendering of a subset.
    pub fn describe(&self, set: &ElementSet) -> String {
        match self.naming_of(set) {
            Some(names) => names.join("&"),
            None => format!("{{{}}}", self.labels_of(set).collect::<Vec<_>>().join(",")),
        }
    }
}
