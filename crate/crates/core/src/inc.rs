//! The monoid of strictly increasing maps `N -> N`.
//!
//! A map is stored by its values on an initial segment `0..d`; beyond the
//! segment it continues with the minimal increasing extension
//! `i -> v[d-1] + (i - d + 1)`. Every stored map therefore has a cofinite
//! image and can be written uniquely as a weakly increasing word in the shift
//! generators `tau_i` (`tau_i` skips the value `i`).

use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// Variable indices and map values.
pub type Index = u32;

/// A strictly increasing map `N -> N` in canonical (trimmed) form.
///
/// Two `IncMap`s are equal as functions iff they are equal as values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IncMap {
    values: Vec<Index>,
}

impl IncMap {
    pub fn identity() -> Self {
        IncMap { values: Vec::new() }
    }

    /// Builds a map from its values on `0..values.len()`.
    ///
    /// Returns `None` unless the values are strictly increasing.
    pub fn from_values(values: Vec<Index>) -> Option<Self> {
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        let mut map = IncMap { values };
        map.trim();
        Some(map)
    }

    /// The shift generator `tau_i`: `j -> j` for `j < i`, `j -> j + 1` otherwise.
    pub fn tau(i: Index) -> Self {
        let mut values: Vec<Index> = (0..i).collect();
        values.push(i + 1);
        // Only the prefix 0..i is trimmable, and it is not, since the last
        // entry jumps.
        IncMap { values }
    }

    fn trim(&mut self) {
        while let Some(&last) = self.values.last() {
            let prev = match self.values.len() {
                1 => None,
                n => Some(self.values[n - 2]),
            };
            let extension = prev.map_or(0, |p| p + 1);
            if last == extension {
                self.values.pop();
            } else {
                break;
            }
        }
    }

    /// Values on the stored initial segment.
    pub fn values(&self) -> &[Index] {
        &self.values
    }

    /// Length of the stored segment; 0 for the identity.
    pub fn domain_size(&self) -> usize {
        self.values.len()
    }

    pub fn is_identity(&self) -> bool {
        self.values.is_empty()
    }

    pub fn apply(&self, i: Index) -> Index {
        let d = self.values.len();
        if (i as usize) < d {
            self.values[i as usize]
        } else if d == 0 {
            i
        } else {
            self.values[d - 1] + (i - d as Index + 1)
        }
    }

    /// `self ∘ other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &IncMap) -> IncMap {
        // Past both stored segments the composite is a pure shift, so one
        // extra point pins it down.
        let len = self.values.len() + other.values.len() + 1;
        let values = (0..len as Index)
            .map(|i| self.apply(other.apply(i)))
            .collect();
        let mut map = IncMap { values };
        map.trim();
        map
    }

    /// Values of the map on `0..len`.
    pub fn prefix(&self, len: usize) -> Vec<Index> {
        (0..len as Index).map(|i| self.apply(i)).collect()
    }

    /// The finite complement of the image, ascending.
    pub fn image_complement(&self) -> Vec<Index> {
        let mut out = Vec::new();
        let mut next = 0;
        for &v in &self.values {
            out.extend(next..v);
            next = v + 1;
        }
        out
    }

    /// Standard form as a weakly increasing word of shift generators.
    pub fn to_tau(&self) -> TauWord {
        // The k-th gap (0-based) of the image sits at i_k + k.
        let indices = self
            .image_complement()
            .into_iter()
            .enumerate()
            .map(|(k, c)| c - k as Index)
            .collect();
        TauWord { indices }
    }
}

impl fmt::Debug for IncMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return f.write_str("id");
        }
        f.write_str("[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}->{v}")?;
        }
        f.write_str("]")
    }
}

/// A word `tau_{i_1} ... tau_{i_d}` in standard form (`i_1 <= ... <= i_d`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TauWord {
    indices: Vec<Index>,
}

impl TauWord {
    pub fn empty() -> Self {
        TauWord::default()
    }

    /// Rewrites an arbitrary word into standard form. The word is read as a
    /// composition of functions, so `[a, b]` means `tau_a ∘ tau_b`.
    pub fn standard_form(word: &[Index]) -> TauWord {
        word_to_map(word).to_tau()
    }

    pub fn indices(&self) -> &[Index] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn to_map(&self) -> IncMap {
        word_to_map(&self.indices)
    }

    /// Product in the monoid, returned in standard form.
    pub fn concat(&self, other: &TauWord) -> TauWord {
        let mut word = self.indices.clone();
        word.extend_from_slice(&other.indices);
        TauWord::standard_form(&word)
    }
}

fn word_to_map(word: &[Index]) -> IncMap {
    word.iter()
        .rev()
        .fold(IncMap::identity(), |acc, &i| IncMap::tau(i).compose(&acc))
}

/// All strictly increasing maps `{0..d-1} -> {0..n-1}`, canonicalized, in
/// lexicographic order of their value sequences.
pub fn increasing_maps(d: usize, n: usize) -> Result<Vec<IncMap>, Error> {
    if d > n {
        return Err(Error::NoIncreasingMap {
            domain: d,
            codomain: n,
        });
    }
    let mut out = Vec::new();
    let mut current: Vec<Index> = (0..d as Index).collect();
    loop {
        // `current` is strictly increasing by construction.
        let mut map = IncMap {
            values: current.clone(),
        };
        map.trim();
        out.push(map);
        // Advance to the next d-combination of 0..n.
        let mut k = d;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if (current[k] as usize) < n - d + k {
                current[k] += 1;
                for j in k + 1..d {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}
