use std::fmt;

use linmod_core::Name;

/// `T ::= * | T -> T`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimpleType {
    Base,
    Arrow(Box<SimpleType>, Box<SimpleType>),
}

impl SimpleType {
    pub fn arrow(dom: SimpleType, cod: SimpleType) -> Self {
        SimpleType::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn size(&self) -> usize {
        match self {
            SimpleType::Base => 1,
            SimpleType::Arrow(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Argument types `a1..an` with `self = a1 -> .. -> an -> target`, if
    /// `target` is a suffix of `self`.
    pub fn args_to(&self, target: &SimpleType) -> Option<Vec<SimpleType>> {
        let mut args = Vec::new();
        let mut cur = self;
        loop {
            if cur == target {
                return Some(args);
            }
            match cur {
                SimpleType::Arrow(a, b) => {
                    args.push((**a).clone());
                    cur = b;
                }
                SimpleType::Base => return None,
            }
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Base => f.write_str("*"),
            SimpleType::Arrow(a, b) => {
                if matches!(**a, SimpleType::Arrow(..)) {
                    write!(f, "({a}) -> {b}")
                } else {
                    write!(f, "{a} -> {b}")
                }
            }
        }
    }
}

impl fmt::Debug for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A variable of a τ-set: a name in the fiber of its type.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypedVar {
    pub name: Name,
    pub ty: SimpleType,
}

impl TypedVar {
    pub fn new(name: &str, ty: SimpleType) -> Self {
        TypedVar {
            name: Name::new(name),
            ty,
        }
    }
}

impl fmt::Display for TypedVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.ty)
    }
}

impl fmt::Debug for TypedVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Types used by the generators: `*`, `* -> *`, `* -> * -> *` and
/// `(* -> *) -> *`.
pub fn small_types() -> Vec<SimpleType> {
    let b = || SimpleType::Base;
    vec![
        b(),
        SimpleType::arrow(b(), b()),
        SimpleType::arrow(b(), SimpleType::arrow(b(), b())),
        SimpleType::arrow(SimpleType::arrow(b(), b()), b()),
    ]
}
