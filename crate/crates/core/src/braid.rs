//! Words in the three-strand braid group and the Murasugi normal forms.
//!
//! Letters are written `a`, `A`, `b`, `B` with capitals denoting inverses.
//! `a` crosses strands in positions 1 and 2, `b` those in positions 2 and 3,
//! and both are positive crossings. A word is read left to right and stacked
//! bottom to top.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidLetter {
    pub generator: Generator,
    pub inverse: bool,
}

impl BraidLetter {
    pub const A: BraidLetter = BraidLetter {
        generator: Generator::A,
        inverse: false,
    };
    pub const A_INV: BraidLetter = BraidLetter {
        generator: Generator::A,
        inverse: true,
    };
    pub const B: BraidLetter = BraidLetter {
        generator: Generator::B,
        inverse: false,
    };
    pub const B_INV: BraidLetter = BraidLetter {
        generator: Generator::B,
        inverse: true,
    };

    pub fn inv(self) -> Self {
        BraidLetter {
            inverse: !self.inverse,
            ..self
        }
    }

    pub fn is_positive(self) -> bool {
        !self.inverse
    }

    /// Index of the left strand position touched by this letter (0 for `a`, 1 for `b`).
    pub fn position(self) -> usize {
        match self.generator {
            Generator::A => 0,
            Generator::B => 1,
        }
    }

    pub fn to_char(self) -> char {
        match (self.generator, self.inverse) {
            (Generator::A, false) => 'a',
            (Generator::A, true) => 'A',
            (Generator::B, false) => 'b',
            (Generator::B, true) => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a' => Some(Self::A),
            'A' => Some(Self::A_INV),
            'b' => Some(Self::B),
            'B' => Some(Self::B_INV),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    #[error("invalid character '{0}'")]
    InvalidChar(char),
    #[error("zero exponent")]
    ZeroExponent,
    #[error("malformed exponent after '{0}'")]
    BadExponent(char),
    #[error("invalid normal-form parameters: {0}")]
    BadSpec(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidWord {
    pub letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(letters: Vec<BraidLetter>) -> Self {
        BraidWord { letters }
    }

    pub fn empty() -> Self {
        BraidWord::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    pub fn power(&self, n: usize) -> BraidWord {
        BraidWord {
            letters: self.letters.repeat(n),
        }
    }

    /// Reverse the word and invert every letter.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Move the prefix of length `r` (taken modulo the length) to the end.
    pub fn cyclic_rotate(&self, r: usize) -> BraidWord {
        if self.letters.is_empty() {
            return self.clone();
        }
        let mut letters = self.letters.clone();
        letters.rotate_left(r % self.letters.len());
        BraidWord { letters }
    }

    /// Lexicographically smallest rotation, used to deduplicate conjugate words.
    pub fn canonical_rotation(&self) -> BraidWord {
        (0..self.len().max(1))
            .map(|r| self.cyclic_rotate(r))
            .min()
            .unwrap_or_default()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// Parse a word over `{a, A, b, B}`; whitespace is ignored and `x^n` repeats a
/// letter `|n|` times, inverting it when `n < 0`.
pub fn parse_word(text: &str) -> Result<BraidWord, BraidError> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut letters = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let letter = BraidLetter::from_char(c).ok_or(BraidError::InvalidChar(c))?;
        i += 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let exp: String = chars[start..i].iter().collect();
            let n: i64 = exp.parse().map_err(|_| BraidError::BadExponent(c))?;
            if n == 0 {
                return Err(BraidError::ZeroExponent);
            }
            let l = if n < 0 { letter.inv() } else { letter };
            letters.extend(std::iter::repeat_n(l, n.unsigned_abs() as usize));
        } else {
            letters.push(letter);
        }
    }
    Ok(BraidWord { letters })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MurasugiClass {
    Omega0,
    Omega1,
    Omega2,
    Omega3,
    Omega4,
    Omega5,
    Omega6,
}

impl MurasugiClass {
    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_index(i: u8) -> Option<Self> {
        use MurasugiClass::*;
        [Omega0, Omega1, Omega2, Omega3, Omega4, Omega5, Omega6]
            .get(i as usize)
            .copied()
    }
}

impl fmt::Display for MurasugiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "omega{}", self.index())
    }
}

impl FromStr for MurasugiClass {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let digits = lower.trim_start_matches("omega").trim_start_matches('ω');
        digits
            .parse::<u8>()
            .ok()
            .and_then(MurasugiClass::from_index)
            .ok_or_else(|| BraidError::BadSpec(format!("unknown class '{s}'")))
    }
}

/// Parameters of a Murasugi normal form.
///
/// `l` is used by Ω4 and Ω5 and `alt` (the exponents `n1, m1, ..., nj, mj` of
/// `a^-n1 b^m1 ... a^-nj b^mj`) by Ω6; both are ignored elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MurasugiSpec {
    pub class: MurasugiClass,
    pub k: i64,
    pub l: u32,
    pub alt: Vec<u32>,
}

impl MurasugiSpec {
    pub fn new(class: MurasugiClass, k: i64) -> Self {
        MurasugiSpec {
            class,
            k,
            l: 0,
            alt: Vec::new(),
        }
    }

    pub fn with_l(class: MurasugiClass, k: i64, l: u32) -> Self {
        MurasugiSpec {
            class,
            k,
            l,
            alt: Vec::new(),
        }
    }

    pub fn omega6(k: i64, alt: Vec<u32>) -> Self {
        MurasugiSpec {
            class: MurasugiClass::Omega6,
            k,
            l: 0,
            alt,
        }
    }

    pub fn validate(&self) -> Result<(), BraidError> {
        use MurasugiClass::*;
        match self.class {
            Omega4 | Omega5 if self.l == 0 => {
                Err(BraidError::BadSpec(format!("{} needs l >= 1", self.class)))
            }
            Omega6 => {
                if self.alt.is_empty() || !self.alt.len().is_multiple_of(2) {
                    return Err(BraidError::BadSpec(
                        "omega6 needs a non-empty exponent list of even length".into(),
                    ));
                }
                if self.alt.contains(&0) {
                    return Err(BraidError::BadSpec("omega6 exponents must be >= 1".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `n(w)`: total exponent of `a^-1` in the alternating part.
    pub fn alt_n(&self) -> i64 {
        self.alt.iter().step_by(2).map(|&x| x as i64).sum()
    }

    /// `m(w)`: total exponent of `b` in the alternating part.
    pub fn alt_m(&self) -> i64 {
        self.alt.iter().skip(1).step_by(2).map(|&x| x as i64).sum()
    }

    /// The alternating part `a^-n1 b^m1 ...` alone.
    pub fn alt_word(&self) -> BraidWord {
        let mut letters = Vec::new();
        for pair in self.alt.chunks(2) {
            letters.extend(std::iter::repeat_n(BraidLetter::A_INV, pair[0] as usize));
            letters.extend(std::iter::repeat_n(BraidLetter::B, pair[1] as usize));
        }
        BraidWord { letters }
    }
}

impl fmt::Display for MurasugiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} k={}", self.class, self.k)?;
        match self.class {
            MurasugiClass::Omega4 | MurasugiClass::Omega5 => write!(f, " l={}", self.l),
            MurasugiClass::Omega6 => {
                let parts: Vec<String> = self.alt.iter().map(|x| x.to_string()).collect();
                write!(f, " alt={}", parts.join(","))
            }
            _ => Ok(()),
        }
    }
}

/// `(ab)^n` for any integer `n`, with `(ab)^-1 = BA`.
pub fn ab_power(n: i64) -> BraidWord {
    let unit = if n >= 0 {
        BraidWord::new(vec![BraidLetter::A, BraidLetter::B])
    } else {
        BraidWord::new(vec![BraidLetter::B_INV, BraidLetter::A_INV])
    };
    unit.power(n.unsigned_abs() as usize)
}

pub fn murasugi_word(spec: &MurasugiSpec) -> Result<BraidWord, BraidError> {
    use MurasugiClass::*;
    spec.validate()?;
    let k = spec.k;
    let rep = |l: BraidLetter, n: u32| BraidWord::new(vec![l; n as usize]);
    let w = match spec.class {
        Omega0 => ab_power(3 * k),
        Omega1 => ab_power(3 * k + 1),
        Omega2 => ab_power(3 * k + 2),
        Omega3 => ab_power(3 * k + 1).concat(&rep(BraidLetter::A, 1)),
        Omega4 => ab_power(3 * k).concat(&rep(BraidLetter::A_INV, spec.l)),
        Omega5 => ab_power(3 * k).concat(&rep(BraidLetter::B, spec.l)),
        Omega6 => ab_power(3 * k).concat(&spec.alt_word()),
    };
    Ok(w)
}

/// A permutation of the three strand positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perm3(pub [u8; 3]);

impl Perm3 {
    pub const IDENTITY: Perm3 = Perm3([0, 1, 2]);

    /// Then-compose: apply `self` first, then `other`.
    pub fn then(self, other: Perm3) -> Perm3 {
        let mut out = [0u8; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = other.0[self.0[i] as usize];
        }
        Perm3(out)
    }

    pub fn cycle_count(self) -> usize {
        let mut seen = [false; 3];
        let mut cycles = 0;
        for start in 0..3 {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
            }
        }
        cycles
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureMeta {
    pub n_plus: usize,
    pub n_minus: usize,
    pub writhe: i64,
    pub components: usize,
    pub permutation: Perm3,
}

pub fn closure_meta(w: &BraidWord) -> ClosureMeta {
    let mut perm = Perm3::IDENTITY;
    let mut n_plus = 0;
    for l in &w.letters {
        let t = match l.generator {
            Generator::A => Perm3([1, 0, 2]),
            Generator::B => Perm3([0, 2, 1]),
        };
        perm = perm.then(t);
        if l.is_positive() {
            n_plus += 1;
        }
    }
    let n_minus = w.len() - n_plus;
    ClosureMeta {
        n_plus,
        n_minus,
        writhe: n_plus as i64 - n_minus as i64,
        components: perm.cycle_count(),
        permutation: perm,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        parse_word(s).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(w("abab").to_string(), "abab");
        assert_eq!(w("a^-3 b^2").to_string(), "AAAbb");
        assert_eq!(w(" a b\tA "), w("abA"));
        assert_eq!(parse_word("abx"), Err(BraidError::InvalidChar('x')));
        assert_eq!(parse_word("a^0"), Err(BraidError::ZeroExponent));
        assert!(parse_word("a^").is_err());
        assert!(w("").is_empty());
    }

    #[test]
    fn normal_forms() {
        let s4 = MurasugiSpec::with_l(MurasugiClass::Omega4, 1, 2);
        assert_eq!(murasugi_word(&s4).unwrap().to_string(), "abababAA");
        assert!(murasugi_word(&MurasugiSpec::new(MurasugiClass::Omega0, 0))
            .unwrap()
            .is_empty());
        let s6 = MurasugiSpec::omega6(1, vec![1, 1]);
        assert_eq!(murasugi_word(&s6).unwrap().to_string(), "abababAb");
        assert_eq!(
            murasugi_word(&MurasugiSpec::new(MurasugiClass::Omega1, -1))
                .unwrap()
                .to_string(),
            "BABA"
        );
        assert!(murasugi_word(&MurasugiSpec::new(MurasugiClass::Omega5, 1)).is_err());
        assert!(murasugi_word(&MurasugiSpec::omega6(1, vec![1])).is_err());
    }

    #[test]
    fn normal_form_lengths() {
        use MurasugiClass::*;
        for k in 1..4 {
            let len = |c| murasugi_word(&MurasugiSpec::new(c, k)).unwrap().len() as i64;
            assert_eq!(len(Omega0), 6 * k);
            assert_eq!(len(Omega1), 6 * k + 2);
            assert_eq!(len(Omega2), 6 * k + 4);
            assert_eq!(len(Omega3), 6 * k + 3);
        }
    }

    #[test]
    fn meta() {
        let m = closure_meta(&w("ababab"));
        assert_eq!(m.permutation, Perm3::IDENTITY);
        assert_eq!(m.components, 3);
        let m = closure_meta(&w("a"));
        assert_eq!((m.components, m.n_plus, m.n_minus), (2, 1, 0));
        assert_eq!(closure_meta(&w("abababAA")).components, 3);
        assert_eq!(closure_meta(&w("abababA")).components, 2);
        assert_eq!(closure_meta(&w("abab")).components, 1);
        assert_eq!(closure_meta(&w("")).components, 3);
        assert_eq!(closure_meta(&w("aB")).writhe, 0);
    }

    #[test]
    fn mirror_and_rotate() {
        assert_eq!(w("ab").mirror().to_string(), "BA");
        assert_eq!(w("abA").cyclic_rotate(1).to_string(), "bAa");
        assert!(BraidWord::empty().mirror().is_empty());
        assert_eq!(w("ba").canonical_rotation(), w("ab"));
    }

    #[test]
    fn class_names() {
        assert_eq!(
            "omega5".parse::<MurasugiClass>().unwrap(),
            MurasugiClass::Omega5
        );
        assert_eq!(
            "Omega0".parse::<MurasugiClass>().unwrap(),
            MurasugiClass::Omega0
        );
        assert!("omega7".parse::<MurasugiClass>().is_err());
    }
}
