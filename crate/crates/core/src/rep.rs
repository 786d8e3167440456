//! Eventually-periodic permutative representations of O₂.
//!
//! A representation is a direct sum of cyclic components `P(w)`, each given
//! by a primitive cycle word `w = w₁…w_L` with `t_{w₁}⋯t_{w_L} Ω = Ω`. The
//! reference basis of a component consists of the vectors `t_u Ω_k`, where
//! `Ω₀ = Ω` and `Ω_k = t_{w_{k+1}}⋯t_{w_L} Ω`, so that the cycle closes as
//! `t_{edge(k)} Ω_k = Ω_{k-1 mod L}` with `edge(k) = w_k` and `edge(0) = w_L`.
//!
//! Labels are kept in normal form: the prefix `u` never ends with the letter
//! that would step back along the cycle. Since `w` is primitive, distinct
//! normal-form labels denote distinct (hence orthonormal) basis vectors.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::RepError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    One,
    Two,
}

impl Letter {
    pub const BOTH: [Letter; 2] = [Letter::One, Letter::Two];

    pub fn from_digit(c: char) -> Option<Letter> {
        match c {
            '1' => Some(Letter::One),
            '2' => Some(Letter::Two),
            _ => None,
        }
    }

    pub fn digit(self) -> char {
        match self {
            Letter::One => '1',
            Letter::Two => '2',
        }
    }

    pub fn other(self) -> Letter {
        match self {
            Letter::One => Letter::Two,
            Letter::Two => Letter::One,
        }
    }
}

/// Finite word over `{1, 2}`, ordered by length and then lexicographically.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    /// All words of length `n` in lexicographic order.
    pub fn all_of_length(n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    Letter::BOTH.map(|l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        Word(v)
                    })
                })
                .collect();
        }
        out
    }

    /// The shortest `r` with `self = r^k`.
    pub fn primitive_root(&self) -> Word {
        let n = self.len();
        for p in 1..=n {
            if n.is_multiple_of(p) && (p..n).all(|i| self.0[i] == self.0[i - p]) {
                return Word(self.0[..p].to_vec());
            }
        }
        self.clone()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.digit())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = char;

    fn from_str(s: &str) -> Result<Self, char> {
        s.chars()
            .map(|c| Letter::from_digit(c).ok_or(c))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// One reference-basis vector `t_u Ω_k` of component `component`.
///
/// The derived ordering is (component, node, word length, lexicographic).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub component: usize,
    pub node: usize,
    pub word: Word,
}

impl BasisLabel {
    pub fn render(&self, show_component: bool, unicode: bool) -> String {
        if !show_component && self.word.is_empty() {
            return match (self.node, unicode) {
                (0, false) => "vac".to_string(),
                (0, true) => "Ω".to_string(),
                (k, false) => format!("vac({k})"),
                (k, true) => format!("Ω({k})"),
            };
        }
        if show_component {
            format!("|{}:{};{}>", self.component, self.word, self.node)
        } else {
            format!("|{};{}>", self.word, self.node)
        }
    }
}

/// Validated representation: a nonempty list of primitive cycle words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RepSpec {
    components: Vec<Word>,
}

impl RepSpec {
    pub fn new(components: Vec<Word>) -> Result<Self, RepError> {
        if components.is_empty() {
            return Err(RepError::Empty);
        }
        for (index, w) in components.iter().enumerate() {
            if w.is_empty() {
                return Err(RepError::EmptyWord { index });
            }
            let root = w.primitive_root();
            if root.len() != w.len() {
                return Err(RepError::NotPrimitive {
                    index,
                    word: w.to_string(),
                    root: root.to_string(),
                });
            }
        }
        Ok(Self { components })
    }

    /// `P(1)`: `t₁Ω = Ω`, the Fock representation.
    pub fn p1() -> Self {
        "1".parse().expect("valid")
    }

    /// `P(12)`: `t₁t₂Ω = Ω`.
    pub fn p12() -> Self {
        "12".parse().expect("valid")
    }

    pub fn components(&self) -> &[Word] {
        &self.components
    }

    pub fn cycle(&self, component: usize) -> &Word {
        &self.components[component]
    }

    pub fn cycle_len(&self, component: usize) -> usize {
        self.components[component].len()
    }

    pub fn max_cycle_len(&self) -> usize {
        self.components.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn is_direct_sum(&self) -> bool {
        self.components.len() > 1
    }

    /// The letter `e` with `t_e Ω_k = Ω_{k-1 mod L}`.
    pub fn edge(&self, component: usize, node: usize) -> Letter {
        let w = &self.components[component].0;
        if node == 0 {
            w[w.len() - 1]
        } else {
            w[node - 1]
        }
    }

    pub fn cycle_vector(&self, component: usize, node: usize) -> BasisLabel {
        BasisLabel {
            component,
            node,
            word: Word::empty(),
        }
    }

    /// The cyclic vector `Ω` of component 0.
    pub fn vacuum(&self) -> BasisLabel {
        self.cycle_vector(0, 0)
    }

    pub fn check_label(&self, label: &BasisLabel) -> Result<(), RepError> {
        if label.component >= self.components.len() {
            return Err(RepError::NoSuchComponent {
                component: label.component,
            });
        }
        let len = self.cycle_len(label.component);
        if label.node >= len {
            return Err(RepError::NodeOutOfRange {
                node: label.node,
                len,
            });
        }
        Ok(())
    }

    /// Strips trailing letters that step back along the cycle.
    pub fn normalize_label(&self, component: usize, mut word: Word, mut node: usize) -> BasisLabel {
        let len = self.cycle_len(component);
        while word.0.last() == Some(&self.edge(component, node)) {
            word.0.pop();
            node = (node + len - 1) % len;
        }
        BasisLabel {
            component,
            node,
            word,
        }
    }

    pub fn apply_gen(&self, letter: Letter, x: &BasisLabel) -> BasisLabel {
        if x.word.is_empty() {
            return self.normalize_label(x.component, Word(vec![letter]), x.node);
        }
        let mut v = Vec::with_capacity(x.word.len() + 1);
        v.push(letter);
        v.extend_from_slice(&x.word.0);
        BasisLabel {
            component: x.component,
            node: x.node,
            word: Word(v),
        }
    }

    /// The unique letter `i` with `t_i* x ≠ 0`, together with `t_i* x`.
    ///
    /// Exactly one exists for every basis vector because
    /// `t₁t₁* + t₂t₂* = I` and the generators permute the basis.
    pub fn read_letter(&self, x: &BasisLabel) -> (Letter, BasisLabel) {
        match x.word.0.split_first() {
            Some((first, rest)) => (
                *first,
                BasisLabel {
                    component: x.component,
                    node: x.node,
                    word: Word(rest.to_vec()),
                },
            ),
            None => {
                let w = &self.components[x.component].0;
                let next = (x.node + 1) % w.len();
                (w[x.node], self.cycle_vector(x.component, next))
            }
        }
    }

    pub fn apply_gen_adjoint(&self, letter: Letter, x: &BasisLabel) -> Option<BasisLabel> {
        let (read, rest) = self.read_letter(x);
        (read == letter).then_some(rest)
    }

    /// All normal-form labels with prefix length at most `depth`, ordered by
    /// (component, node, word length, lexicographic).
    pub fn enumerate_basis(&self, depth: usize) -> Vec<BasisLabel> {
        let mut out = Vec::new();
        for component in 0..self.components.len() {
            for node in 0..self.cycle_len(component) {
                let forbidden = self.edge(component, node);
                for len in 0..=depth {
                    for word in Word::all_of_length(len) {
                        if word.0.last() == Some(&forbidden) {
                            continue;
                        }
                        out.push(BasisLabel {
                            component,
                            node,
                            word,
                        });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(Word::to_string).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for RepSpec {
    type Err = RepError;

    /// `1`, `12`, or direct sums such as `1+12`.
    fn from_str(s: &str) -> Result<Self, RepError> {
        let mut components = Vec::new();
        for (index, part) in s.split('+').enumerate() {
            let word = part
                .trim()
                .parse::<Word>()
                .map_err(|letter| RepError::BadLetter { index, letter })?;
            components.push(word);
        }
        RepSpec::new(components)
    }
}

impl TryFrom<String> for RepSpec {
    type Error = RepError;
    fn try_from(s: String) -> Result<Self, RepError> {
        s.parse()
    }
}

impl From<RepSpec> for String {
    fn from(r: RepSpec) -> String {
        r.to_string()
    }
}
