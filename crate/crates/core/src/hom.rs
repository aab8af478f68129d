//! Homomorphisms from a tame subgroup into a finite group.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup};
use crate::tame::{same_class, TameOracle};
use crate::word::{Letter, Segment, Sign, Word};

/// An eventually periodic assignment `a_i ↦ g`: finitely many exceptions,
/// then `a_i ↦ images[(i - 1) mod p]`. No images means eventually identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LetterRule {
    pub exceptions: BTreeMap<u64, Element>,
    pub images: Vec<Element>,
}

impl LetterRule {
    pub fn eventually_identity(exceptions: BTreeMap<u64, Element>) -> LetterRule {
        LetterRule {
            exceptions,
            images: Vec::new(),
        }
    }

    pub fn periodic(images: Vec<Element>) -> LetterRule {
        LetterRule {
            exceptions: BTreeMap::new(),
            images,
        }
    }

    pub fn period(&self) -> u64 {
        self.images.len() as u64
    }

    pub fn image(&self, g: &FiniteGroup, index: u64) -> Element {
        match self.exceptions.get(&index) {
            Some(&e) => e,
            None if self.images.is_empty() => g.identity(),
            None => self.images[((index - 1) % self.period()) as usize],
        }
    }
}

#[derive(Clone, Debug)]
pub struct Homomorphism {
    group: Arc<FiniteGroup>,
    oracle: TameOracle,
    rule: LetterRule,
    tails: Vec<(Segment, Element)>,
}

impl Homomorphism {
    /// Every tail generator of `oracle` needs an image in `tails`.
    pub fn new(
        group: Arc<FiniteGroup>,
        oracle: TameOracle,
        rule: LetterRule,
        tails: Vec<(Segment, Element)>,
    ) -> Result<Homomorphism> {
        for &e in rule
            .exceptions
            .values()
            .chain(&rule.images)
            .chain(tails.iter().map(|(_, e)| e))
        {
            group.inv(e)?;
        }
        if rule.exceptions.contains_key(&0) {
            return Err(Error::InvalidHom("letter indices start at 1".into()));
        }
        for (s, _) in &tails {
            if !s.is_tail() {
                return Err(Error::InvalidHom("tail image given for a non-tail".into()));
            }
        }
        let f = Homomorphism {
            group,
            oracle,
            rule,
            tails,
        };
        for g in f.oracle.tail_generators() {
            if f.tail_value(&g).is_none() {
                return Err(Error::MissingTailImage(Word::from_segments(vec![g])?.to_string()));
            }
        }
        Ok(f)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<FiniteGroup> {
        self.group.clone()
    }

    pub fn oracle(&self) -> &TameOracle {
        &self.oracle
    }

    pub fn rule(&self) -> &LetterRule {
        &self.rule
    }

    pub fn with_oracle(&self, oracle: TameOracle) -> Result<Homomorphism> {
        Homomorphism::new(self.group.clone(), oracle, self.rule.clone(), self.tails.clone())
    }

    pub fn letter(&self, l: Letter) -> Element {
        let g = self.rule.image(&self.group, l.index);
        match l.sign {
            Sign::Pos => g,
            Sign::Neg => self.group.inverse(g),
        }
    }

    /// Product of letter images of a finite word.
    fn finite(&self, w: &Word) -> Element {
        let letters = w.finite_letters().expect("finite word");
        self.group.product(letters.into_iter().map(|l| self.letter(l)))
    }

    /// A tail with a declared image (directly or as an inverse), and that image.
    fn tail_value(&self, s: &Segment) -> Option<(Segment, Element)> {
        self.tails.iter().find_map(|(t, e)| {
            if same_class(s, t) {
                Some((t.clone(), *e))
            } else if same_class(s, &t.inverse()) {
                Some((t.inverse(), self.group.inverse(*e)))
            } else {
                None
            }
        })
    }

    fn segment(&self, s: &Segment) -> Result<Element> {
        if let Segment::Finite(l) = s {
            return Ok(self.group.product(l.iter().map(|&x| self.letter(x))));
        }
        let x = Word::from_segments(vec![s.clone()])?;
        let (z, v) = self
            .tail_value(s)
            .ok_or_else(|| Error::MissingTailImage(x.to_string()))?;
        let z = Word::from_segments(vec![z])?;
        // x = c·z for forward tails, x = z·c for backward ones, c finite
        Ok(match s {
            Segment::Forward(_) => self.group.mul(self.finite(&x.mul(&z.invert())), v),
            _ => self.group.mul(v, self.finite(&z.invert().mul(&x))),
        })
    }

    /// `f(w)`, for `w` in the domain subgroup.
    pub fn eval(&self, w: &Word) -> Result<Element> {
        let w = w.reduce();
        if !self.oracle.contains(&w) {
            return Err(Error::NotInSubgroup(w.to_string()));
        }
        let mut acc = self.group.identity();
        for s in w.segments() {
            acc = self.group.mul(acc, self.segment(s)?);
        }
        Ok(acc)
    }

    /// Parses a hom file. The group comes from the file's `group` key, or
    /// from `group` when the file has none.
    pub fn from_json(text: &str, group: Option<Arc<FiniteGroup>>, oracle: TameOracle) -> Result<Homomorphism> {
        let file: HomFile = serde_json::from_str(text)?;
        let group = match (&file.group, group) {
            (Some(v), _) => Arc::new(FiniteGroup::from_json(v)?),
            (None, Some(g)) => g,
            (None, None) => return Err(Error::InvalidHom("no target group given".into())),
        };
        let mut exceptions = BTreeMap::new();
        for (k, v) in &file.exceptions {
            let i: u64 = k
                .trim()
                .parse()
                .map_err(|_| Error::InvalidHom(format!("exception key {k:?} is not a letter index")))?;
            exceptions.insert(i, group.element_from_json(v)?);
        }
        let images: Vec<Element> = file
            .images
            .iter()
            .map(|v| group.element_from_json(v))
            .collect::<Result<_>>()?;
        if let Some(p) = file.period {
            if p as usize != images.len() {
                return Err(Error::InvalidHom(format!("period {p} but {} images", images.len())));
            }
        }
        let mut tails = Vec::new();
        if let Some(v) = &file.alpha_image {
            tails.push((Word::alpha().segments()[0].clone(), group.element_from_json(v)?));
        }
        for (k, v) in &file.tail_images {
            let w: Word = k.parse()?;
            match w.segments() {
                [s] if s.is_tail() => tails.push((s.clone(), group.element_from_json(v)?)),
                _ => return Err(Error::InvalidHom(format!("{k:?} is not a single tail"))),
            }
        }
        Homomorphism::new(group, oracle, LetterRule { exceptions, images }, tails)
    }

    pub fn load(path: &Path, group: Option<Arc<FiniteGroup>>, oracle: TameOracle) -> Result<Homomorphism> {
        Homomorphism::from_json(&std::fs::read_to_string(path)?, group, oracle)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HomFile {
    group: Option<Value>,
    #[serde(default)]
    exceptions: BTreeMap<String, Value>,
    period: Option<u64>,
    #[serde(default)]
    images: Vec<Value>,
    alpha_image: Option<Value>,
    #[serde(default)]
    tail_images: BTreeMap<String, Value>,
}
