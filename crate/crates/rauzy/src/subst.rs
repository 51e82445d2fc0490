//! Substitutions over the alphabet 1..n.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use serde::Serialize;

pub type Letter = u8;
pub type Word = Vec<Letter>;

/// One occurrence of a letter inside an image: `images[source] = prefix · letter · suffix`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub source: Letter,
    pub prefix: Word,
    pub suffix: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Substitution {
    n: usize,
    images: Vec<Word>,
    /// Display names of the letters, as read from a definition file.
    names: Vec<String>,
}

impl Substitution {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let n = images.len();
        let names = (1..=n).map(|i| i.to_string()).collect();
        Self::with_names(images, names)
    }

    pub fn with_names(images: Vec<Word>, names: Vec<String>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > 250 {
            return Err(Error::Parse { line: 0, msg: format!("alphabet size {n} unsupported") });
        }
        for (i, w) in images.iter().enumerate() {
            if w.is_empty() {
                return Err(Error::Parse { line: i + 1, msg: "empty image".into() });
            }
            if let Some(&b) = w.iter().find(|&&b| b == 0 || b as usize > n) {
                return Err(Error::LetterOutOfRange { letter: b as usize, n });
            }
        }
        Ok(Substitution { n, images, names })
    }

    /// Build from images written as digit strings, e.g. `["12", "3", "1"]`.
    pub fn from_strs(images: &[&str]) -> Result<Self> {
        let words = images
            .iter()
            .map(|s| s.bytes().map(|c| c.wrapping_sub(b'0')).collect())
            .collect();
        Self::new(words)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self, a: Letter) -> &Word {
        &self.images[a as usize - 1]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn check_word(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|&&b| b == 0 || b as usize > self.n) {
            Some(&b) => Err(Error::LetterOutOfRange { letter: b as usize, n: self.n }),
            None => Ok(()),
        }
    }

    pub fn apply(&self, w: &[Letter]) -> Word {
        w.iter().flat_map(|&a| self.image(a).iter().copied()).collect()
    }

    pub fn abelianize(&self, w: &[Letter]) -> Result<Vec<i64>> {
        self.check_word(w)?;
        Ok(abelianize(self.n, w))
    }

    pub fn incidence_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n, self.n);
        for a in 0..self.n {
            for &b in &self.images[a] {
                let r = b as usize - 1;
                m.set(r, a, m.get(r, a) + 1);
            }
        }
        m
    }

    pub fn is_primitive(&self) -> bool {
        self.incidence_matrix().is_primitive()
    }

    /// All decompositions `σ(a) = p·b·s`, in order of source letter then position.
    pub fn occurrences(&self, b: Letter) -> Vec<Occurrence> {
        let mut out = Vec::new();
        for (i, img) in self.images.iter().enumerate() {
            for (pos, &c) in img.iter().enumerate() {
                if c == b {
                    out.push(Occurrence {
                        source: (i + 1) as Letter,
                        prefix: img[..pos].to_vec(),
                        suffix: img[pos + 1..].to_vec(),
                    });
                }
            }
        }
        out
    }

    /// Length-`len` prefix of the one-sided fixed point seeded by `a`.
    pub fn fixed_point_prefix(&self, a: Letter, len: usize) -> Result<Word> {
        self.check_word(&[a])?;
        let img = self.image(a);
        if img[0] != a {
            return Err(Error::NotASeed(a as usize));
        }
        let mut w = vec![a];
        if len == 0 {
            return Ok(Vec::new());
        }
        while w.len() < len {
            let next = self.apply(&w);
            if next.len() == w.len() {
                // σ(a) = a: the fixed point is the constant-growth word a, stop.
                break;
            }
            w = next;
        }
        w.truncate(len);
        Ok(w)
    }

    /// Parse the `a -> w1 w2 ...` definition format. Letters are numbered in
    /// the order their defining lines appear.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lhs: Vec<(usize, String, Vec<String>)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (l, r) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse { line: line_no, msg: "expected `a -> w1 w2 ...`".into() })?;
            let name = l.trim();
            if name.is_empty() || name.split_whitespace().count() != 1 {
                return Err(Error::Parse { line: line_no, msg: "left side must be a single symbol".into() });
            }
            let rhs: Vec<String> = r.split_whitespace().map(str::to_string).collect();
            if rhs.is_empty() {
                return Err(Error::Parse { line: line_no, msg: "empty image".into() });
            }
            if lhs.iter().any(|(_, s, _)| s == name) {
                return Err(Error::Parse { line: line_no, msg: format!("symbol `{name}` defined twice") });
            }
            lhs.push((line_no, name.to_string(), rhs));
        }
        if lhs.is_empty() {
            return Err(Error::Parse { line: 0, msg: "no rules".into() });
        }
        let names: Vec<String> = lhs.iter().map(|(_, s, _)| s.clone()).collect();
        let mut images = Vec::with_capacity(lhs.len());
        for (line_no, _, rhs) in &lhs {
            let mut w = Vec::with_capacity(rhs.len());
            for sym in rhs {
                let pos = names.iter().position(|s| s == sym).ok_or_else(|| Error::Parse {
                    line: *line_no,
                    msg: format!("unknown symbol `{sym}`"),
                })?;
                w.push((pos + 1) as Letter);
            }
            images.push(w);
        }
        Self::with_names(images, names)
    }

    /// Canonical text form, one rule per line; `parse(format(s)) == s`.
    pub fn format(&self) -> String {
        let mut out = String::new();
        for (i, img) in self.images.iter().enumerate() {
            out.push_str(&self.names[i]);
            out.push_str(" ->");
            for &b in img {
                out.push(' ');
                out.push_str(&self.names[b as usize - 1]);
            }
            out.push('\n');
        }
        out
    }
}

pub fn abelianize(n: usize, w: &[Letter]) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for &b in w {
        v[b as usize - 1] += 1;
    }
    v
}

pub fn unit_vector(n: usize, a: Letter) -> Vec<i64> {
    let mut v = vec![0i64; n];
    v[a as usize - 1] = 1;
    v
}

pub fn word_to_string(w: &[Letter]) -> String {
    w.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(if w.iter().any(|&b| b > 9) { " " } else { "" })
}

/// The substitutions used throughout the examples.
pub mod families {
    use super::*;

    /// σ_t: 1→1^{t+1}2, 2→3, 3→4, 4→1^t5, 5→1. `t = 0` is the Hokkaido substitution.
    pub fn sigma_t(t: usize) -> Substitution {
        let mut one = vec![1u8; t + 1];
        one.push(2);
        let mut four = vec![1u8; t];
        four.push(5);
        Substitution::new(vec![one, vec![3], vec![4], four, vec![1]]).expect("valid family member")
    }

    pub fn tribonacci() -> Substitution {
        Substitution::from_strs(&["12", "13", "1"]).unwrap()
    }

    /// 1→1^{t−1}2, 2→1^{t−1}3, 3→4, 4→1 (t ≥ 2): a family that fails to project well.
    pub fn non_projecting(t: usize) -> Substitution {
        assert!(t >= 2);
        let mut one = vec![1u8; t - 1];
        one.push(2);
        let mut two = vec![1u8; t - 1];
        two.push(3);
        Substitution::new(vec![one, two, vec![4], vec![1]]).unwrap()
    }
}
