use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

macro_rules! functions {
    ($($variant:ident => $name:literal / $arity:literal),* $(,)?) => {
        /// Named functions accepted by the grammar.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum Func { $($variant),* }

        impl Func {
            pub const ALL: &'static [Func] = &[$(Func::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(Func::$variant => $name),* }
            }

            pub fn arity(self) -> usize {
                match self { $(Func::$variant => $arity),* }
            }

            pub fn from_name(name: &str) -> Option<Func> {
                match name { $($name => Some(Func::$variant),)* _ => None }
            }
        }
    };
}

functions! {
    Sin => "sin" / 1,
    Cos => "cos" / 1,
    Tan => "tan" / 1,
    Asin => "asin" / 1,
    Acos => "acos" / 1,
    Atan => "atan" / 1,
    Sinh => "sinh" / 1,
    Cosh => "cosh" / 1,
    Tanh => "tanh" / 1,
    Asinh => "asinh" / 1,
    Acosh => "acosh" / 1,
    Atanh => "atanh" / 1,
    Exp => "exp" / 1,
    Ln => "ln" / 1,
    Log => "log" / 2,
    Sqrt => "sqrt" / 1,
    Abs => "abs" / 1,
    Erf => "erf" / 1,
    Erfc => "erfc" / 1,
    Phi => "phi" / 1,
    LambertW0 => "lambertw0" / 1,
    LambertWm1 => "lambertw_1" / 1,
    Ei => "ei" / 1,
    Li => "li" / 1,
    Erfinv => "erfinv" / 1,
    Erfcinv => "erfcinv" / 1,
    Probit => "probit" / 1,
    WrightOmega => "wrightomega" / 1,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(f64),
    Var,
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Call(Func, Vec<Node>),
}

impl Node {
    pub fn binary(op: BinOp, a: Node, b: Node) -> Node {
        Node::Binary(op, Box::new(a), Box::new(b))
    }

    /// A literal that survives printing and reparsing: negative values are
    /// stored as a negated positive literal.
    pub fn literal(v: f64) -> Node {
        if v.is_sign_negative() && v != 0.0 {
            Node::Neg(Box::new(Node::Const(-v)))
        } else {
            Node::Const(v)
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Node::Const(_) => true,
            Node::Var => false,
            Node::Neg(a) => a.is_constant(),
            Node::Binary(_, a, b) => a.is_constant() && b.is_constant(),
            Node::Call(_, args) => args.iter().all(Node::is_constant),
        }
    }

    /// Count of top-level additive terms.
    pub fn summands(&self) -> usize {
        match self {
            Node::Binary(BinOp::Add | BinOp::Sub, a, b) => a.summands() + b.summands(),
            _ => 1,
        }
    }

    pub(crate) fn write(&self, var: &str, out: &mut impl fmt::Write) -> fmt::Result {
        match self {
            Node::Const(v) => {
                if v.is_infinite() {
                    out.write_str("inf")
                } else {
                    write!(out, "{v:?}")
                }
            }
            Node::Var => out.write_str(var),
            Node::Neg(a) => {
                out.write_str("(-")?;
                a.write(var, out)?;
                out.write_char(')')
            }
            Node::Binary(op, a, b) => {
                out.write_char('(')?;
                a.write(var, out)?;
                write!(out, " {} ", op.symbol())?;
                b.write(var, out)?;
                out.write_char(')')
            }
            Node::Call(f, args) => {
                write!(out, "{}(", f.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.write_str(", ")?;
                    }
                    a.write(var, out)?;
                }
                out.write_char(')')
            }
        }
    }
}
