use std::fmt;
use std::sync::Arc;

/// A variable name from the free alphabet.
///
/// User-written identifiers are `Id`. `Fresh(k)` is a marker that no parser
/// produces; it stands for the extra point added by the `Maybe` extension
/// when a module is derived, or for a bound slot opened during a fold.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Name {
    Id(Arc<str>),
    Fresh(u32),
}

impl Name {
    pub fn new(id: &str) -> Self {
        Name::Id(Arc::from(id))
    }

    pub fn fresh(k: u32) -> Self {
        Name::Fresh(k)
    }

    pub fn is_fresh(&self) -> bool {
        matches!(self, Name::Fresh(_))
    }

    pub fn fresh_index(&self) -> Option<u32> {
        match self {
            Name::Fresh(k) => Some(*k),
            Name::Id(_) => None,
        }
    }

    pub fn as_id(&self) -> Option<&str> {
        match self {
            Name::Id(s) => Some(s),
            Name::Fresh(_) => None,
        }
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Name::Id(s) => f.write_str(s),
            Name::Fresh(k) => write!(f, "*{k}"),
        }
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Variable occurrence: a free name or a de Bruijn index counted from the
/// innermost enclosing binder slot.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum VarRef {
    Free(Name),
    Bound(u32),
}

impl VarRef {
    pub fn free(id: &str) -> Self {
        VarRef::Free(Name::new(id))
    }
}

/// True for identifiers accepted by the term grammars.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_names_do_not_collide_with_identifiers() {
        assert_ne!(Name::fresh(0), Name::new("*0"));
        assert_eq!(Name::fresh(3).to_string(), "*3");
        assert!(!is_identifier("*3"));
        assert!(is_identifier("x'"));
        assert!(is_identifier("_tmp1"));
        assert!(!is_identifier("1x"));
    }
}
