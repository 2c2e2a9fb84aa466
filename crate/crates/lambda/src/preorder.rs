//! The βη reduction preorder: `t1 <= t2` when `t1` rewrites to `t2` by
//! β- and η-contractions anywhere in the term.

use std::collections::{HashSet, VecDeque};

use linmod_core::VarRef;

use crate::term::{subst_top, LcTerm};

/// Cap on the number of distinct terms a single query may visit.
pub const SEARCH_LIMIT: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeqOutcome {
    /// A rewrite path of this many steps exists.
    Related(usize),
    NotRelatedWithinDepth,
    /// The search space within `depth` exceeded [`SEARCH_LIMIT`].
    SearchLimit,
}

impl LeqOutcome {
    pub fn is_related(&self) -> bool {
        matches!(self, LeqOutcome::Related(_))
    }
}

/// All terms reachable from `t` by one contraction at any position.
pub fn one_step_reducts(t: &LcTerm) -> Vec<LcTerm> {
    let mut out = Vec::new();
    match t {
        LcTerm::Var(_) => {}
        LcTerm::App(f, a) => {
            if let LcTerm::Abs(body) = &**f {
                out.push(subst_top(body, a, 0));
            }
            for f2 in one_step_reducts(f) {
                out.push(LcTerm::app(f2, (**a).clone()));
            }
            for a2 in one_step_reducts(a) {
                out.push(LcTerm::app((**f).clone(), a2));
            }
        }
        LcTerm::Abs(body) => {
            if let LcTerm::App(u, arg) = &**body {
                if **arg == LcTerm::Var(VarRef::Bound(0)) && !u.uses_bound(0) {
                    out.push(u.unshifted(0));
                }
            }
            for b2 in one_step_reducts(body) {
                out.push(LcTerm::abs(b2));
            }
        }
    }
    out
}

/// Breadth-first search for a path `t1 ->* t2` of at most `depth` steps.
pub fn preorder_leq(t1: &LcTerm, t2: &LcTerm, depth: usize) -> LeqOutcome {
    if t1 == t2 {
        return LeqOutcome::Related(0);
    }
    let mut seen: HashSet<LcTerm> = HashSet::from([t1.clone()]);
    let mut queue = VecDeque::from([(t1.clone(), 0usize)]);
    while let Some((t, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for r in one_step_reducts(&t) {
            if &r == t2 {
                return LeqOutcome::Related(d + 1);
            }
            if seen.len() >= SEARCH_LIMIT {
                return LeqOutcome::SearchLimit;
            }
            if seen.insert(r.clone()) {
                queue.push_back((r, d + 1));
            }
        }
    }
    LeqOutcome::NotRelatedWithinDepth
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn p(s: &str) -> LcTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            preorder_leq(&p("(\\x. x) y"), &p("y"), 1),
            LeqOutcome::Related(1)
        );
        let t = p("\\x. x x");
        assert_eq!(preorder_leq(&t, &t, 0), LeqOutcome::Related(0));
        assert_eq!(
            preorder_leq(&p("y"), &p("(\\x. x) y"), 5),
            LeqOutcome::NotRelatedWithinDepth
        );
    }

    #[test]
    fn congruence_reaches_inner_redexes() {
        let t = p("f ((\\x. x) a) (\\z. g z)");
        assert!(preorder_leq(&t, &p("f a g"), 2).is_related());
        assert!(!preorder_leq(&t, &p("f a g"), 1).is_related());
    }

    #[test]
    fn eta_is_oriented() {
        assert!(preorder_leq(&p("\\x. y x"), &p("y"), 1).is_related());
        assert!(!preorder_leq(&p("y"), &p("\\x. y x"), 3).is_related());
    }
}
