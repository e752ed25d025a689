use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Nature {
    Rat,
    AlgIrr,
    Trans,
}

impl Nature {
    pub const ALL: [Nature; 3] = [Nature::Rat, Nature::AlgIrr, Nature::Trans];

    pub fn tag(self) -> &'static str {
        match self {
            Nature::Rat => "RAT",
            Nature::AlgIrr => "ALGIRR",
            Nature::Trans => "TRANS",
        }
    }

    pub fn from_tag(s: &str) -> Option<Nature> {
        Nature::ALL.into_iter().find(|n| n.tag() == s)
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

/// A subset of {RAT, ALGIRR, TRANS}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Natures(u8);

impl Natures {
    pub const EMPTY: Natures = Natures(0);
    pub const ALL: Natures = Natures(0b111);
    pub const RAT: Natures = Natures(0b001);
    pub const ALGIRR: Natures = Natures(0b010);
    pub const TRANS: Natures = Natures(0b100);
    pub const ALG: Natures = Natures(0b011);
    pub const IRRATIONAL: Natures = Natures(0b110);
    pub const RAT_OR_TRANS: Natures = Natures(0b101);

    pub fn of(ns: &[Nature]) -> Natures {
        Natures(ns.iter().fold(0, |acc, n| acc | n.bit()))
    }

    pub fn contains(self, n: Nature) -> bool {
        self.0 & n.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Natures) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersect(self, other: Natures) -> Natures {
        Natures(self.0 & other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Nature> {
        Nature::ALL.into_iter().filter(move |n| self.contains(*n))
    }

    pub fn tags(self) -> Vec<&'static str> {
        self.iter().map(Nature::tag).collect()
    }
}

impl fmt::Debug for Natures {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.tags().join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Nonzero {
    Yes,
    Unknown,
}

impl Nonzero {
    pub fn tag(self) -> &'static str {
        match self {
            Nonzero::Yes => "YES",
            Nonzero::Unknown => "UNKNOWN",
        }
    }

    pub fn from_tag(s: &str) -> Option<Nonzero> {
        match s {
            "YES" => Some(Nonzero::Yes),
            "UNKNOWN" => Some(Nonzero::Unknown),
            _ => None,
        }
    }
}

/// What is known about a value: its possible natures, whether it is known to
/// be nonzero, and its exact value when that was determined to be rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub natures: Natures,
    pub nonzero: Nonzero,
    pub value: Option<BigRational>,
}

impl Verdict {
    pub fn top() -> Verdict {
        Verdict { natures: Natures::ALL, nonzero: Nonzero::Unknown, value: None }
    }

    pub fn with(natures: Natures) -> Verdict {
        Verdict { natures, nonzero: Nonzero::Unknown, value: None }.normalized()
    }

    pub fn trans() -> Verdict {
        Verdict::with(Natures::TRANS)
    }

    pub fn rational(q: BigRational) -> Verdict {
        let nonzero = if q.is_zero() { Nonzero::Unknown } else { Nonzero::Yes };
        Verdict { natures: Natures::RAT, nonzero, value: Some(q) }
    }

    pub fn nonzero_only() -> Verdict {
        Verdict { natures: Natures::ALL, nonzero: Nonzero::Yes, value: None }
    }

    /// Irrational values are nonzero; a known nonzero value means nonzero.
    pub fn normalized(mut self) -> Verdict {
        if !self.natures.contains(Nature::Rat) {
            self.nonzero = Nonzero::Yes;
        }
        if matches!(&self.value, Some(q) if !q.is_zero()) {
            self.nonzero = Nonzero::Yes;
        }
        self
    }

    pub fn is_trans(&self) -> bool {
        self.natures == Natures::TRANS
    }

    pub fn is_alg(&self) -> bool {
        self.natures.is_subset(Natures::ALG)
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.value, Some(q) if q.is_zero())
    }

    /// Greatest lower bound; None when the two are incompatible.
    pub fn meet(&self, o: &Verdict) -> Option<Verdict> {
        let natures = self.natures.intersect(o.natures);
        if natures.is_empty() {
            return None;
        }
        let value = match (&self.value, &o.value) {
            (Some(a), Some(b)) if a != b => return None,
            (Some(a), _) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        if value.is_some() && !natures.contains(Nature::Rat) {
            return None;
        }
        let nonzero = if self.nonzero == Nonzero::Yes || o.nonzero == Nonzero::Yes {
            Nonzero::Yes
        } else {
            Nonzero::Unknown
        };
        if nonzero == Nonzero::Yes && matches!(&value, Some(q) if q.is_zero()) {
            return None;
        }
        let natures = if value.is_some() { Natures::RAT } else { natures };
        Some(Verdict { natures, nonzero, value }.normalized())
    }

    /// True when `self` carries at least the information of `o`.
    pub fn refines(&self, o: &Verdict) -> bool {
        self.natures.is_subset(o.natures)
            && (o.nonzero == Nonzero::Unknown || self.nonzero == Nonzero::Yes)
            && (o.value.is_none() || self.value == o.value)
    }

    /// Upper-case summary used by the CLI.
    pub fn label(&self) -> String {
        let n = self.natures;
        let mut s = if n == Natures::RAT {
            match &self.value {
                Some(q) => format!("RATIONAL (= {q})"),
                None => "RATIONAL".to_string(),
            }
        } else if n == Natures::ALGIRR {
            "ALGEBRAIC IRRATIONAL".into()
        } else if n == Natures::TRANS {
            "TRANSCENDENTAL".into()
        } else if n == Natures::ALG {
            "ALGEBRAIC".into()
        } else if n == Natures::IRRATIONAL {
            "IRRATIONAL".into()
        } else if n == Natures::RAT_OR_TRANS {
            "RATIONAL OR TRANSCENDENTAL".into()
        } else {
            "UNKNOWN (rational, algebraic-irrational, or transcendental)".into()
        };
        if self.nonzero == Nonzero::Yes && n.contains(Nature::Rat) && self.value.is_none() {
            s.push_str("; nonzero");
        }
        s
    }

    /// Lower-case phrase used in proof sketches.
    pub fn phrase(&self) -> String {
        let n = self.natures;
        let mut s = if n == Natures::RAT {
            match &self.value {
                Some(q) => format!("rational, = {q}"),
                None => "rational".into(),
            }
        } else if n == Natures::ALGIRR {
            "algebraic irrational".into()
        } else if n == Natures::TRANS {
            "transcendental".into()
        } else if n == Natures::ALG {
            "algebraic".into()
        } else if n == Natures::IRRATIONAL {
            "irrational".into()
        } else if n == Natures::RAT_OR_TRANS {
            "rational or transcendental".into()
        } else {
            "unknown".into()
        };
        if self.nonzero == Nonzero::Yes && n.contains(Nature::Rat) && self.value.is_none() {
            s.push_str(", nonzero");
        }
        s
    }
}

/// Class of a disjunctive fact: at least k members lie in it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NatureClass {
    Trans,
    Irrational,
}

impl NatureClass {
    pub fn natures(self) -> Natures {
        match self {
            NatureClass::Trans => Natures::TRANS,
            NatureClass::Irrational => Natures::IRRATIONAL,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            NatureClass::Trans => "TRANS",
            NatureClass::Irrational => "IRRATIONAL",
        }
    }

    pub fn from_tag(s: &str) -> Option<NatureClass> {
        match s {
            "TRANS" => Some(NatureClass::Trans),
            "IRRATIONAL" => Some(NatureClass::Irrational),
            _ => None,
        }
    }

    pub fn word(self) -> &'static str {
        match self {
            NatureClass::Trans => "transcendental",
            NatureClass::Irrational => "irrational",
        }
    }
}
