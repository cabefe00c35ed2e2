//! Packed words and the index-level combinatorics behind WQSym.
//!
//! A packed word of length `n` and breadth `k` uses exactly the letters
//! `1..=k`. It is read interchangeably as a word, as the surjection
//! `[n] -> [k]`, `i |-> u_i`, or as the set composition
//! `(u^{-1}(1), ..., u^{-1}(k))` of `[n]`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Default largest length accepted by [`enumerate_packed_words`].
pub const DEFAULT_ENUMERATION_CAP: usize = 7;

type Letters = SmallVec<[u8; 8]>;

/// A word on `1..=k` in which every letter of `1..=k` occurs.
///
/// Ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PackedWord {
    letters: Letters,
}

impl PackedWord {
    /// Validates that `letters` is packed.
    pub fn new(letters: &[u32]) -> Result<Self> {
        if letters.len() > u8::MAX as usize {
            return Err(Error::WordTooLong(letters.len()));
        }
        if letters.contains(&0) || pack(letters).letters() != letters_u32(letters) {
            return Err(Error::NotPacked(letters.to_vec()));
        }
        Ok(Self::from_raw(letters.iter().map(|&a| a as u8).collect()))
    }

    pub(crate) fn from_raw(letters: Letters) -> Self {
        debug_assert!(is_packed(&letters));
        PackedWord { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The identity surjection `12...n`.
    pub fn identity(n: usize) -> Self {
        assert!(n <= u8::MAX as usize, "identity word too long");
        Self::from_raw((1..=n as u8).collect())
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.letters.iter().map(|&a| a as u32).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Maximum letter, 0 for the empty word.
    pub fn breadth(&self) -> usize {
        self.letters.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().enumerate().all(|(i, &a)| a as usize == i + 1)
    }

    /// Value of the surjection at position `i` (1-based).
    pub fn at(&self, i: usize) -> usize {
        self.letters[i - 1] as usize
    }
}

fn letters_u32(letters: &[u32]) -> Vec<u8> {
    letters.iter().map(|&a| a.min(255) as u8).collect()
}

fn is_packed(letters: &[u8]) -> bool {
    let k = letters.iter().copied().max().unwrap_or(0) as usize;
    let mut seen = vec![false; k + 1];
    for &a in letters {
        if a == 0 {
            return false;
        }
        seen[a as usize] = true;
    }
    seen[1..].iter().all(|&s| s)
}

impl Ord for PackedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for PackedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for PackedWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PackedWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        PackedWord::new(&v).map_err(serde::de::Error::custom)
    }
}

/// Relabels the letters of `word` order-preservingly onto `1..=k`.
///
/// # Panics
///
/// If `word` has more than 255 distinct letters.
pub fn pack(word: &[u32]) -> PackedWord {
    let mut values: Vec<u32> = word.to_vec();
    values.sort_unstable();
    values.dedup();
    assert!(values.len() <= u8::MAX as usize, "too many distinct letters");
    let letters = word
        .iter()
        .map(|a| (values.binary_search(a).unwrap() + 1) as u8)
        .collect();
    PackedWord::from_raw(letters)
}

/// Positions `i` (1-based) with `w_i > w_{i+1}`.
pub fn descents<T: PartialOrd>(word: &[T]) -> BTreeSet<usize> {
    word.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .map(|(i, _)| i + 1)
        .collect()
}

/// Multiplicity vector of the letters `1..=k`.
pub fn evaluation(u: &PackedWord) -> Composition {
    let mut parts = vec![0u32; u.breadth()];
    for &a in u.letters() {
        parts[a as usize - 1] += 1;
    }
    Composition::from_raw(parts.into_iter().collect())
}

pub fn reverse(u: &PackedWord) -> PackedWord {
    PackedWord::from_raw(u.letters().iter().rev().copied().collect())
}

/// `u . v[max(u)]`.
pub fn shifted_concat(u: &PackedWord, v: &PackedWord) -> PackedWord {
    let k = u.breadth() as u8;
    let mut letters = u.letters.clone();
    letters.extend(v.letters().iter().map(|&a| a + k));
    PackedWord::from_raw(letters)
}

/// The composite surjection `v . u`, i.e. `i |-> v(u(i))`.
///
/// Returns `None`, the algebraic zero, unless `len(v) == breadth(u)`.
pub fn compose_surjections(u: &PackedWord, v: &PackedWord) -> Option<PackedWord> {
    if v.len() != u.breadth() {
        return None;
    }
    Some(PackedWord::from_raw(
        u.letters().iter().map(|&a| v.letters[a as usize - 1]).collect(),
    ))
}

/// Terms of the shifted quasi-shuffle `ū ⊎ v̄[len(u)]`, in canonical order.
///
/// Each block of `ū` and of `v̄` is assigned a position in the output set
/// composition; the next output block is either the next block of `u`, the
/// next block of `v`, or their union. Every term has multiplicity one.
pub fn quasi_shuffle_indices(u: &PackedWord, v: &PackedWord) -> Vec<PackedWord> {
    let (k1, k2) = (u.breadth(), v.breadth());
    let mut out = Vec::new();
    let mut phi_u = vec![0u8; k1];
    let mut phi_v = vec![0u8; k2];
    qsh_rec(u, v, 0, 0, 1, &mut phi_u, &mut phi_v, &mut out);
    out.sort_unstable();
    out
}

#[allow(clippy::too_many_arguments)]
fn qsh_rec(
    u: &PackedWord,
    v: &PackedWord,
    a: usize,
    b: usize,
    next: u8,
    phi_u: &mut [u8],
    phi_v: &mut [u8],
    out: &mut Vec<PackedWord>,
) {
    let (k1, k2) = (phi_u.len(), phi_v.len());
    if a == k1 && b == k2 {
        let letters = u
            .letters()
            .iter()
            .map(|&x| phi_u[x as usize - 1])
            .chain(v.letters().iter().map(|&y| phi_v[y as usize - 1]))
            .collect();
        out.push(PackedWord::from_raw(letters));
        return;
    }
    if a < k1 {
        phi_u[a] = next;
        qsh_rec(u, v, a + 1, b, next + 1, phi_u, phi_v, out);
    }
    if b < k2 {
        phi_v[b] = next;
        qsh_rec(u, v, a, b + 1, next + 1, phi_u, phi_v, out);
    }
    if a < k1 && b < k2 {
        phi_u[a] = next;
        phi_v[b] = next;
        qsh_rec(u, v, a + 1, b + 1, next + 1, phi_u, phi_v, out);
    }
}

/// The `i`-th cut of the coproduct: letters `<= i` (already packed) and the
/// re-packed letters `> i`.
pub fn value_split(u: &PackedWord, i: usize) -> (PackedWord, PackedWord) {
    let i = i as u8;
    let low: Letters = u.letters().iter().copied().filter(|&a| a <= i).collect();
    let high: Letters = u.letters().iter().copied().filter(|&a| a > i).map(|a| a - i).collect();
    (PackedWord::from_raw(low), PackedWord::from_raw(high))
}

static ENUM_CACHE: Mutex<Vec<Option<Arc<Vec<PackedWord>>>>> = Mutex::new(Vec::new());

/// All packed words of length `n` in lexicographic order, with the default cap.
pub fn enumerate_packed_words(n: usize) -> Result<Arc<Vec<PackedWord>>> {
    enumerate_packed_words_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_packed_words_capped(n: usize, cap: usize) -> Result<Arc<Vec<PackedWord>>> {
    if n > cap {
        return Err(Error::ResourceLimit {
            what: "packed word length",
            requested: n,
            cap,
        });
    }
    if let Some(Some(words)) = ENUM_CACHE.lock().unwrap().get(n) {
        return Ok(words.clone());
    }
    let mut out = Vec::new();
    let mut buf = Letters::new();
    enum_rec(n, &mut buf, &mut [0u16; 256], 0, 0, &mut out);
    let words = Arc::new(out);
    let mut cache = ENUM_CACHE.lock().unwrap();
    if cache.len() <= n {
        cache.resize(n + 1, None);
    }
    cache[n] = Some(words.clone());
    Ok(words)
}

fn enum_rec(
    n: usize,
    buf: &mut Letters,
    count: &mut [u16; 256],
    distinct: usize,
    max: usize,
    out: &mut Vec<PackedWord>,
) {
    let remaining = n - buf.len();
    if remaining == 0 {
        if distinct == max {
            out.push(PackedWord::from_raw(buf.clone()));
        }
        return;
    }
    for a in 1..=n {
        let new_max = max.max(a);
        let new_distinct = distinct + usize::from(count[a] == 0);
        if new_max - new_distinct > remaining - 1 {
            continue;
        }
        count[a] += 1;
        buf.push(a as u8);
        enum_rec(n, buf, count, new_distinct, new_max, out);
        buf.pop();
        count[a] -= 1;
    }
}

/// All words over `1..=m` whose packing is `u`, in lexicographic order.
pub fn realize(u: &PackedWord, m: usize) -> Vec<Vec<u32>> {
    let k = u.breadth();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    realize_rec(k, m, 1, &mut chosen, &mut |values: &[u32]| {
        out.push(u.letters().iter().map(|&a| values[a as usize - 1]).collect());
    });
    out.sort();
    out
}

fn realize_rec(k: usize, m: usize, start: u32, chosen: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    if chosen.len() == k {
        emit(chosen);
        return;
    }
    for x in start..=m as u32 {
        chosen.push(x);
        realize_rec(k, m, x + 1, chosen, emit);
        chosen.pop();
    }
}

/// An ordered partition of `[1..n]` into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetComposition {
    blocks: Vec<BTreeSet<usize>>,
}

impl SetComposition {
    pub fn new(blocks: Vec<BTreeSet<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(BTreeSet::len).sum();
        let mut seen = vec![false; n + 1];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidSetComposition(format!("block {} is empty", i + 1)));
            }
            for &j in b {
                if j == 0 || j > n {
                    return Err(Error::InvalidSetComposition(format!(
                        "element {j} outside [1..{n}]"
                    )));
                }
                if std::mem::replace(&mut seen[j], true) {
                    return Err(Error::InvalidSetComposition(format!("element {j} repeated")));
                }
            }
        }
        Ok(SetComposition { blocks })
    }

    pub fn blocks(&self) -> &[BTreeSet<usize>] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(BTreeSet::len).sum()
    }
}

pub fn to_set_composition(u: &PackedWord) -> SetComposition {
    let mut blocks = vec![BTreeSet::new(); u.breadth()];
    for (j, &a) in u.letters().iter().enumerate() {
        blocks[a as usize - 1].insert(j + 1);
    }
    SetComposition { blocks }
}

pub fn from_set_composition(s: &SetComposition) -> PackedWord {
    let mut letters: Letters = smallvec::smallvec![0; s.size()];
    for (i, b) in s.blocks.iter().enumerate() {
        for &j in b {
            letters[j - 1] = (i + 1) as u8;
        }
    }
    PackedWord::from_raw(letters)
}

/// A finite sequence of positive integers.
///
/// Ordered by weight, then length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Composition {
    parts: SmallVec<[u32; 8]>,
}

impl Composition {
    pub fn new(parts: &[u32]) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(parts.to_vec()));
        }
        Ok(Composition {
            parts: parts.iter().copied().collect(),
        })
    }

    pub(crate) fn from_raw(parts: SmallVec<[u32; 8]>) -> Self {
        debug_assert!(!parts.contains(&0));
        Composition { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// `{i1, i1+i2, ..., i1+...+i_{k-1}}`.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        let mut acc = 0;
        let mut out = BTreeSet::new();
        for &p in &self.parts[..self.parts.len().saturating_sub(1)] {
            acc += p as usize;
            out.insert(acc);
        }
        out
    }

    /// `{i_k, i_k + i_{k-1}, ...}` intersected with `[1..n-1]`.
    pub fn reverse_descent_set(&self) -> BTreeSet<usize> {
        let rev: SmallVec<[u32; 8]> = self.parts.iter().rev().copied().collect();
        Composition::from_raw(rev).descent_set()
    }

    pub fn from_descent_set(n: usize, set: &BTreeSet<usize>) -> Composition {
        let mut parts = SmallVec::new();
        let mut prev = 0;
        for &d in set.iter().chain(std::iter::once(&n)) {
            if d > prev {
                parts.push((d - prev) as u32);
                prev = d;
            }
        }
        Composition { parts }
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Composition { parts }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Composition {
        Composition::from_raw(self.parts[range].iter().copied().collect())
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Composition::new(&v).map_err(serde::de::Error::custom)
    }
}

/// All compositions of `n` (there are `2^{n-1}` for `n >= 1`), in canonical order.
pub fn compositions_of(n: usize) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    let mut out: Vec<Composition> = (0u32..1 << (n - 1))
        .map(|mask| {
            let set = (1..n).filter(|&i| mask & (1 << (i - 1)) != 0).collect();
            Composition::from_descent_set(n, &set)
        })
        .collect();
    out.sort();
    out
}

/// True iff the part sequence is strictly smaller than each proper suffix.
pub fn is_lyndon(c: &Composition) -> bool {
    let p = c.parts();
    !p.is_empty() && (1..p.len()).all(|i| p < &p[i..])
}

pub fn lyndon_compositions(n: usize) -> Vec<Composition> {
    compositions_of(n).into_iter().filter(is_lyndon).collect()
}
