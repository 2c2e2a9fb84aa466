//! Typed lists over the sorts `* | list τ`, encoded by nesting depth.
//!
//! Substitution replaces variables by terms of the same sort; it has
//! nothing to do with flattening.

use std::fmt;

use linmod_core::gen::{pick, sample_size};
use linmod_core::{
    check_equations, BindError, Equation, LawReport, LinearityCheck, ModuleInstance, MonadInstance,
    Name, Rng, Subst,
};
use rand::Rng as _;
use thiserror::Error;

/// `list^depth *`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ListSort(pub u32);

impl ListSort {
    pub fn list(self) -> ListSort {
        ListSort(self.0 + 1)
    }

    pub fn shift(self, n: u32) -> ListSort {
        ListSort(self.0 + n)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TListVar {
    pub name: Name,
    pub sort: ListSort,
}

impl TListVar {
    pub fn new(name: &str, sort: u32) -> Self {
        TListVar {
            name: Name::new(name),
            sort: ListSort(sort),
        }
    }
}

impl fmt::Debug for TListVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.name, self.sort.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TListTerm {
    Var(TListVar),
    /// The empty list whose elements have the given sort.
    Nil(ListSort),
    Cons(Box<TListTerm>, Box<TListTerm>),
}

impl TListTerm {
    pub fn var(name: &str, sort: u32) -> Self {
        TListTerm::Var(TListVar::new(name, sort))
    }

    pub fn nil(elem: u32) -> Self {
        TListTerm::Nil(ListSort(elem))
    }

    pub fn cons(h: TListTerm, t: TListTerm) -> Self {
        TListTerm::Cons(Box::new(h), Box::new(t))
    }
}

impl fmt::Display for TListTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TListTerm::Var(v) => write!(f, "{v:?}"),
            TListTerm::Nil(s) => write!(f, "nil@{}", s.0),
            TListTerm::Cons(h, t) => write!(f, "cons({h}, {t})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SortError {
    #[error("cons of {head} onto a list of sort {tail}")]
    Cons { head: u32, tail: u32 },
    #[error("image of {var:?} has sort {found}")]
    Image { var: TListVar, found: u32 },
}

pub fn sort_of(t: &TListTerm) -> Result<ListSort, SortError> {
    match t {
        TListTerm::Var(v) => Ok(v.sort),
        TListTerm::Nil(s) => Ok(s.list()),
        TListTerm::Cons(h, tl) => {
            let hs = sort_of(h)?;
            let ts = sort_of(tl)?;
            if ts == hs.list() {
                Ok(ts)
            } else {
                Err(SortError::Cons {
                    head: hs.0,
                    tail: ts.0,
                })
            }
        }
    }
}

pub fn tlist_subst(s: &Subst<TListVar, TListTerm>, t: &TListTerm) -> Result<TListTerm, SortError> {
    for (v, img) in s.iter() {
        let found = sort_of(img)?;
        if found != v.sort {
            return Err(SortError::Image {
                var: v.clone(),
                found: found.0,
            });
        }
    }
    Ok(subst(s, t))
}

fn subst(s: &Subst<TListVar, TListTerm>, t: &TListTerm) -> TListTerm {
    match t {
        TListTerm::Var(v) => s.get(v).cloned().unwrap_or_else(|| t.clone()),
        TListTerm::Nil(_) => t.clone(),
        TListTerm::Cons(h, tl) => TListTerm::cons(subst(s, h), subst(s, tl)),
    }
}

/// `X[n]`: every sort raised by `n`.
pub fn shift_sorts(n: u32, t: &TListTerm) -> TListTerm {
    match t {
        TListTerm::Var(v) => TListTerm::Var(shift_var(n, v)),
        TListTerm::Nil(s) => TListTerm::Nil(s.shift(n)),
        TListTerm::Cons(h, tl) => TListTerm::cons(shift_sorts(n, h), shift_sorts(n, tl)),
    }
}

fn shift_var(n: u32, v: &TListVar) -> TListVar {
    TListVar {
        name: v.name.clone(),
        sort: v.sort.shift(n),
    }
}

/// Parses `x@k`, `nil@k` and `cons(h, t)`.
pub fn parse_tlist(src: &str) -> Result<TListTerm, String> {
    let mut rest = src.trim_start();
    let t = parse_at(&mut rest)?;
    if !rest.trim().is_empty() {
        return Err(format!("unexpected input `{}`", rest.trim()));
    }
    Ok(t)
}

fn parse_at(rest: &mut &str) -> Result<TListTerm, String> {
    *rest = rest.trim_start();
    if let Some(after) = rest.strip_prefix("cons(") {
        *rest = after;
        let h = parse_at(rest)?;
        *rest = rest
            .trim_start()
            .strip_prefix(',')
            .ok_or("expected `,` in cons")?;
        let t = parse_at(rest)?;
        *rest = rest
            .trim_start()
            .strip_prefix(')')
            .ok_or("expected `)` after cons")?;
        return Ok(TListTerm::cons(h, t));
    }
    let end = rest
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '@'))
        .unwrap_or(rest.len());
    let (word, after) = rest.split_at(end);
    *rest = after;
    let (name, sort) = word
        .split_once('@')
        .ok_or_else(|| format!("expected `name@sort`, found `{word}`"))?;
    let sort: u32 = sort.parse().map_err(|_| format!("bad sort `{sort}`"))?;
    if name == "nil" {
        Ok(TListTerm::nil(sort))
    } else if linmod_core::is_identifier(name) {
        Ok(TListTerm::var(name, sort))
    } else {
        Err(format!("bad variable `{name}`"))
    }
}

pub fn tlist_pool() -> Vec<TListVar> {
    vec![
        TListVar::new("a", 0),
        TListVar::new("b", 0),
        TListVar::new("xs", 1),
        TListVar::new("ys", 1),
        TListVar::new("xss", 2),
    ]
}

/// Sorts the generators range over.
pub const MAX_SORT: u32 = 3;

/// Random term of sort `sort`.
pub fn gen_tlist_of(rng: &mut Rng, pool: &[TListVar], sort: ListSort, size: usize) -> TListTerm {
    let vars: Vec<&TListVar> = pool.iter().filter(|v| v.sort == sort).collect();
    if sort.0 == 0 {
        return match pick(rng, &vars) {
            Some(v) => TListTerm::Var((*v).clone()),
            None => TListTerm::Var(TListVar {
                name: Name::new("a"),
                sort,
            }),
        };
    }
    let elem = ListSort(sort.0 - 1);
    if size >= 3 && rng.gen_bool(0.7) {
        let l = rng.gen_range(1..=size - 2);
        return TListTerm::cons(
            gen_tlist_of(rng, pool, elem, l),
            gen_tlist_of(rng, pool, sort, size - 1 - l),
        );
    }
    match pick(rng, &vars) {
        Some(v) if rng.gen_bool(0.5) => TListTerm::Var((*v).clone()),
        _ => TListTerm::Nil(elem),
    }
}

pub fn gen_tlist(rng: &mut Rng, pool: &[TListVar], size: usize) -> TListTerm {
    let sort = ListSort(rng.gen_range(0..=MAX_SORT));
    gen_tlist_of(rng, pool, sort, size)
}

pub fn tlist_monad() -> MonadInstance<TListVar, TListTerm> {
    MonadInstance::new(
        "tlist",
        tlist_pool(),
        |v: &TListVar| TListTerm::Var(v.clone()),
        |s, t| tlist_subst(s, t).map_err(|e| BindError::Rejected(e.to_string())),
        gen_tlist,
    )
    .with_image_gen(|rng, v, pool, size| gen_tlist_of(rng, pool, v.sort, size))
    .with_show(|t: &TListTerm| t.to_string())
    .with_max_size(12)
}

/// The fiber `L_k` of terms of sort `k`.
pub fn tlist_fiber(sort: ListSort) -> ModuleInstance<TListVar, TListTerm, TListTerm> {
    let m = tlist_monad();
    let bind = m.clone();
    ModuleInstance::new(
        format!("tlist@{}", sort.0),
        &m,
        move |rng: &mut Rng, pool: &[TListVar], size: usize| gen_tlist_of(rng, pool, sort, size),
        move |s, t| bind.bind(s, t),
    )
    .with_show(|t: &TListTerm| t.to_string())
}

/// `L[n]`: the fiber at `k` is `L_{k+n}`; elements are terms of sort at
/// least `n`.
pub fn shifted_module(n: u32) -> ModuleInstance<TListVar, TListTerm, TListTerm> {
    let m = tlist_monad();
    let bind = m.clone();
    ModuleInstance::new(
        format!("tlist[{n}]"),
        &m,
        move |rng: &mut Rng, pool: &[TListVar], size: usize| {
            let sort = ListSort(n + rng.gen_range(0..=MAX_SORT));
            gen_tlist_of(rng, pool, sort, size)
        },
        move |s, t| bind.bind(s, t),
    )
    .with_show(|t: &TListTerm| t.to_string())
}

/// `L[1] x L` glued over all sorts: pairs `(h, t)` with `t` of sort one
/// above `h`.
pub fn cons_source() -> ModuleInstance<TListVar, TListTerm, (TListTerm, TListTerm)> {
    let m = tlist_monad();
    let bind = m.clone();
    ModuleInstance::new(
        "tlist x tlist[1]",
        &m,
        |rng: &mut Rng, pool: &[TListVar], size: usize| {
            let sort = ListSort(rng.gen_range(0..MAX_SORT));
            (
                gen_tlist_of(rng, pool, sort, size),
                gen_tlist_of(rng, pool, sort.list(), size),
            )
        },
        move |s, (h, t): &(TListTerm, TListTerm)| Ok((bind.bind(s, h)?, bind.bind(s, t)?)),
    )
    .with_show(|(h, t): &(TListTerm, TListTerm)| format!("({h}, {t})"))
}

/// `nil` and `cons` squares, and compatibility of the sort shift with
/// substitution.
pub fn tlist_linearity_suite(samples: usize, seed: u64) -> LawReport {
    let mut laws = Vec::new();
    let all = shifted_module(0);
    for k in 0..MAX_SORT {
        let unit = ModuleInstance::constant(&tlist_monad(), ());
        let nil_dst = tlist_fiber(ListSort(k + 1));
        let r = LinearityCheck::new(format!("nil@{k}"), &unit, &nil_dst, move |_: &()| {
            Ok(TListTerm::nil(k))
        })
        .run(samples, seed);
        laws.extend(r.laws);
    }
    let src = cons_source();
    let r = LinearityCheck::new("cons", &src, &all, |(h, t): &(TListTerm, TListTerm)| {
        Ok(TListTerm::cons(h.clone(), t.clone()))
    })
    .run(samples, seed);
    laws.extend(r.laws);

    let m = tlist_monad();
    let r = check_equations(
        "linearity",
        "tlist",
        &["shift[1]"],
        samples,
        seed,
        |a: &TListTerm, b: &TListTerm| a == b,
        |t: &TListTerm| t.to_string(),
        |rng| {
            let size = sample_size(rng, m.max_size());
            let t = m.generate(rng, m.vars(), size);
            let s = m.random_subst(rng, size);
            let shifted_s: Subst<TListVar, TListTerm> = s
                .iter()
                .map(|(v, img)| (shift_var(1, v), shift_sorts(1, img)))
                .collect();
            let lhs = m.bind(&s, &t).map(|u| shift_sorts(1, &u));
            let rhs = tlist_subst(&shifted_s, &shift_sorts(1, &t))
                .map_err(|e| BindError::Rejected(e.to_string()));
            vec![vec![Equation::new(
                lhs,
                rhs,
                format!("t = {t}; s = {}", m.show_subst(&s)),
            )]]
        },
    );
    laws.extend(r.laws);
    LawReport {
        suite: "linearity".to_string(),
        instance: "tlist nil/cons".to_string(),
        samples,
        seed,
        laws,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> TListTerm {
        parse_tlist(s).unwrap()
    }

    #[test]
    fn sorts() {
        assert_eq!(sort_of(&p("nil@0")), Ok(ListSort(1)));
        assert_eq!(sort_of(&p("cons(a@0, nil@0)")), Ok(ListSort(1)));
        assert_eq!(
            sort_of(&p("cons(xs@1, cons(nil@0, nil@1))")),
            Ok(ListSort(2))
        );
        assert!(sort_of(&p("cons(a@0, nil@1)")).is_err());
    }

    #[test]
    fn subst_examples() {
        let t = p("cons(x@0, nil@0)");
        assert_eq!(tlist_subst(&Subst::identity(), &t).unwrap(), t);
        let s = Subst::singleton(TListVar::new("x", 0), p("y@0"));
        assert_eq!(tlist_subst(&s, &t).unwrap(), p("cons(y@0, nil@0)"));
        let bad = Subst::singleton(TListVar::new("x", 0), p("nil@0"));
        assert!(tlist_subst(&bad, &t).is_err());
    }

    #[test]
    fn printing_roundtrips() {
        for src in ["a@0", "nil@2", "cons(a@0, cons(b@0, xs@1))"] {
            assert_eq!(p(src).to_string(), src);
        }
        assert!(parse_tlist("cons(a@0 nil@0)").is_err());
        assert!(parse_tlist("a").is_err());
    }

    #[test]
    fn generated_terms_are_sorted() {
        let pool = tlist_pool();
        for i in 0..300 {
            let mut rng = linmod_core::sample_rng(5, i);
            for k in 0..=MAX_SORT {
                let t = gen_tlist_of(&mut rng, &pool, ListSort(k), 10);
                assert_eq!(sort_of(&t), Ok(ListSort(k)), "{t}");
            }
        }
    }
}
