use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Named constants of the language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constant {
    Pi,
    E,
    I,
}

impl Constant {
    pub fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
            Constant::I => "i",
        }
    }
}

/// The six circular functions; also indexes their inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TrigFn {
    Sin,
    Cos,
    Tan,
    Sec,
    Csc,
    Cot,
}

impl TrigFn {
    pub const ALL: [TrigFn; 6] = [
        TrigFn::Sin,
        TrigFn::Cos,
        TrigFn::Tan,
        TrigFn::Sec,
        TrigFn::Csc,
        TrigFn::Cot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TrigFn::Sin => "sin",
            TrigFn::Cos => "cos",
            TrigFn::Tan => "tan",
            TrigFn::Sec => "sec",
            TrigFn::Csc => "csc",
            TrigFn::Cot => "cot",
        }
    }

    pub fn arc_name(self) -> &'static str {
        match self {
            TrigFn::Sin => "asin",
            TrigFn::Cos => "acos",
            TrigFn::Tan => "atan",
            TrigFn::Sec => "asec",
            TrigFn::Csc => "acsc",
            TrigFn::Cot => "acot",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HypFn {
    Sinh,
    Cosh,
    Tanh,
}

impl HypFn {
    pub fn name(self) -> &'static str {
        match self {
            HypFn::Sinh => "sinh",
            HypFn::Cosh => "cosh",
            HypFn::Tanh => "tanh",
        }
    }
}

/// Abstract syntax tree of a constant expression.
///
/// Values built through [`crate::grammar::canonicalize`] or the smart
/// constructors in this module are canonical: rational literals are reduced,
/// sums and products are flattened and sorted, subtraction and division are
/// desugared into `Add`/`Mul`/`Pow`, and square roots use `Sqrt`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Rational(BigRational),
    Const(Constant),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Exp(Box<Expr>),
    Ln(Box<Expr>),
    Sqrt(Box<Expr>),
    Trig(TrigFn, Box<Expr>),
    ArcTrig(TrigFn, Box<Expr>),
    Hyp(HypFn, Box<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Expr {
        Expr::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn pi() -> Expr {
        Expr::Const(Constant::Pi)
    }

    pub fn e() -> Expr {
        Expr::Const(Constant::E)
    }

    pub fn i() -> Expr {
        Expr::Const(Constant::I)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Expr::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_rational_value(&self, value: i64) -> bool {
        matches!(self, Expr::Rational(q) if *q == BigRational::from_integer(BigInt::from(value)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Rational(q) if q.is_one())
    }

    pub fn is_const(&self, c: Constant) -> bool {
        matches!(self, Expr::Const(k) if *k == c)
    }

    /// Children in a fixed left-to-right order.
    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Rational(_) | Expr::Const(_) => Vec::new(),
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().collect(),
            Expr::Pow(b, x) => vec![b, x],
            Expr::Exp(a)
            | Expr::Ln(a)
            | Expr::Sqrt(a)
            | Expr::Trig(_, a)
            | Expr::ArcTrig(_, a)
            | Expr::Hyp(_, a) => vec![a],
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Factors of a product view: a `Mul` yields its children, anything else
    /// is a single factor.
    pub fn factors(&self) -> &[Expr] {
        match self {
            Expr::Mul(xs) => xs,
            other => std::slice::from_ref(other),
        }
    }

    /// Terms of a sum view.
    pub fn terms(&self) -> &[Expr] {
        match self {
            Expr::Add(xs) => xs,
            other => std::slice::from_ref(other),
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Expr::Rational(_) => 0,
            Expr::Const(_) => 1,
            Expr::Add(_) => 2,
            Expr::Mul(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Exp(_) => 5,
            Expr::Ln(_) => 6,
            Expr::Sqrt(_) => 7,
            Expr::Trig(..) => 8,
            Expr::ArcTrig(..) => 9,
            Expr::Hyp(..) => 10,
        }
    }

    fn literal_cmp(&self, other: &Expr) -> Ordering {
        match (self, other) {
            (Expr::Rational(a), Expr::Rational(b)) => a.cmp(b),
            (Expr::Const(a), Expr::Const(b)) => a.cmp(b),
            (Expr::Trig(a, _), Expr::Trig(b, _)) | (Expr::ArcTrig(a, _), Expr::ArcTrig(b, _)) => {
                a.cmp(b)
            }
            (Expr::Hyp(a, _), Expr::Hyp(b, _)) => a.cmp(b),
            _ => Ordering::Equal,
        }
    }
}

impl Ord for Expr {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind_rank()
            .cmp(&other.kind_rank())
            .then_with(|| {
                let a = self.children();
                let b = other.children();
                for (x, y) in a.iter().zip(b.iter()) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                a.len().cmp(&b.len())
            })
            .then_with(|| self.literal_cmp(other))
    }
}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::grammar::render(self))
    }
}
