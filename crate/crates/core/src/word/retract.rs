//! Deleting letters outside a sub-alphabet.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Letter, Segment, Tail, Word};
use crate::error::{Error, Result};

/// A finite or cofinite set of letter indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlphabetSet {
    Finite(BTreeSet<u64>),
    /// Everything except the listed indices.
    Cofinite(BTreeSet<u64>),
}

impl AlphabetSet {
    pub fn all() -> AlphabetSet {
        AlphabetSet::Cofinite(BTreeSet::new())
    }

    pub fn finite(indices: impl IntoIterator<Item = u64>) -> AlphabetSet {
        AlphabetSet::Finite(indices.into_iter().collect())
    }

    pub fn all_except(indices: impl IntoIterator<Item = u64>) -> AlphabetSet {
        AlphabetSet::Cofinite(indices.into_iter().collect())
    }

    pub fn contains(&self, index: u64) -> bool {
        match self {
            AlphabetSet::Finite(s) => s.contains(&index),
            AlphabetSet::Cofinite(s) => !s.contains(&index),
        }
    }

    /// `1,2,3` (finite), `all`, or `all-except:4,5` (cofinite).
    pub fn parse(text: &str) -> Result<AlphabetSet> {
        let text = text.trim();
        let list = |s: &str| -> Result<BTreeSet<u64>> {
            s.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<u64>() {
                    Ok(0) | Err(_) => Err(Error::UnrepresentableAlphabet),
                    Ok(n) => Ok(n),
                })
                .collect()
        };
        if text == "all" {
            Ok(AlphabetSet::all())
        } else if let Some(rest) = text.strip_prefix("all-except:") {
            Ok(AlphabetSet::Cofinite(list(rest)?))
        } else {
            Ok(AlphabetSet::Finite(list(text)?))
        }
    }

    /// Offsets into `t` whose letters are excluded (cofinite case) or kept
    /// (finite case), i.e. the finitely many exceptional offsets.
    fn exceptional_offsets(&self, t: &Tail) -> Vec<u64> {
        let set = match self {
            AlphabetSet::Finite(s) | AlphabetSet::Cofinite(s) => s,
        };
        set.iter().filter_map(|&i| t.offset_of(i)).collect()
    }
}

impl fmt::Display for AlphabetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<u64>| s.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            AlphabetSet::Finite(s) => write!(f, "{}", join(s)),
            AlphabetSet::Cofinite(s) if s.is_empty() => write!(f, "all"),
            AlphabetSet::Cofinite(s) => write!(f, "all-except:{}", join(s)),
        }
    }
}

enum Item {
    Kept(Segment),
    Gap,
}

fn expand_forward(t: &Tail, keep: &AlphabetSet, out: &mut Vec<Item>) {
    let special = keep.exceptional_offsets(t);
    let bound = special.iter().max().map_or(0, |m| m + 1);
    for j in 0..bound {
        let l = t.letter(j);
        out.push(if keep.contains(l.index) {
            Item::Kept(Segment::Finite(vec![l]))
        } else {
            Item::Gap
        });
    }
    // beyond every exceptional offset the tail is uniformly kept or deleted
    out.push(match keep {
        AlphabetSet::Cofinite(_) => Item::Kept(Segment::Forward(t.advance(bound))),
        AlphabetSet::Finite(_) => Item::Gap,
    });
}

fn expand_backward(t: &Tail, keep: &AlphabetSet, out: &mut Vec<Item>) {
    let special = keep.exceptional_offsets(t);
    let bound = special.iter().max().map_or(0, |m| m + 1);
    out.push(match keep {
        AlphabetSet::Cofinite(_) => Item::Kept(Segment::Backward(t.advance(bound))),
        AlphabetSet::Finite(_) => Item::Gap,
    });
    for j in (0..bound).rev() {
        let l = t.letter(j);
        out.push(if keep.contains(l.index) {
            Item::Kept(Segment::Finite(vec![l]))
        } else {
            Item::Gap
        });
    }
}

impl Word {
    /// Maximal runs of kept letters of the reduced word, in order.
    pub fn split_string(&self, keep: &AlphabetSet) -> Vec<Word> {
        let reduced = self.reduce();
        let mut items = Vec::new();
        for s in reduced.segments() {
            match s {
                Segment::Finite(l) => items.extend(l.iter().map(|&x: &Letter| {
                    if keep.contains(x.index) {
                        Item::Kept(Segment::Finite(vec![x]))
                    } else {
                        Item::Gap
                    }
                })),
                Segment::Forward(t) => expand_forward(t, keep, &mut items),
                Segment::Backward(t) => expand_backward(t, keep, &mut items),
            }
        }
        let mut blocks = Vec::new();
        let mut current: Vec<Segment> = Vec::new();
        for item in items {
            match item {
                Item::Kept(s) => current.push(s),
                Item::Gap => {
                    if !current.is_empty() {
                        blocks.push(Word::from_raw(std::mem::take(&mut current)).reduce());
                    }
                }
            }
        }
        if !current.is_empty() {
            blocks.push(Word::from_raw(current).reduce());
        }
        blocks
    }

    /// The retraction deleting every letter outside `keep`.
    pub fn retract(&self, keep: &AlphabetSet) -> Word {
        self.split_string(keep)
            .iter()
            .fold(Word::empty(), |acc, b| acc.concat(b))
            .reduce()
    }
}
