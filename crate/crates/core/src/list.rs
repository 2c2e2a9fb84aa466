//! The list monad and its algebras (monoids).

use std::fmt;
use std::sync::Arc;

use rand::Rng as _;

use crate::gen::{pick, Rng};
use crate::instance::{Carrier, EqFn, ModuleInstance, MonadInstance, ShowFn};

/// A finite list over a ground set.
pub type ListVal<A> = Vec<A>;

pub fn list_unit<A>(x: A) -> ListVal<A> {
    vec![x]
}

/// Flattening of a list of lists, order preserved.
pub fn list_join<A>(xss: Vec<ListVal<A>>) -> ListVal<A> {
    xss.into_iter().flatten().collect()
}

/// `bind f = join . map f`.
pub fn list_bind<A, B>(f: impl Fn(&A) -> ListVal<B>, xs: &[A]) -> ListVal<B> {
    list_join(xs.iter().map(f).collect())
}

/// Concatenation `L x L -> L`.
pub fn concat<A: Clone>(pair: &(ListVal<A>, ListVal<A>)) -> ListVal<A> {
    let mut out = pair.0.clone();
    out.extend(pair.1.iter().cloned());
    out
}

/// Ground set used by the list instance.
pub const LIST_ALPHABET: [i64; 6] = [0, 1, 2, 3, 4, 5];

fn gen_list(rng: &mut Rng, pool: &[i64], size: usize) -> ListVal<i64> {
    let len = rng.gen_range(0..=size.min(6));
    (0..len).filter_map(|_| pick(rng, pool).copied()).collect()
}

/// Lists of small integers as a monad over the integers.
pub fn list_monad() -> MonadInstance<i64, ListVal<i64>> {
    MonadInstance::new(
        "list",
        LIST_ALPHABET.to_vec(),
        |x| list_unit(*x),
        |s, xs: &ListVal<i64>| {
            Ok(list_bind(
                |x| s.get(x).cloned().unwrap_or_else(|| list_unit(*x)),
                xs,
            ))
        },
        gen_list,
    )
    .with_max_size(6)
}

pub fn list_module() -> ModuleInstance<i64, ListVal<i64>, ListVal<i64>> {
    ModuleInstance::tautological(&list_monad())
}

type OpFn<A> = Arc<dyn Fn(&A, &A) -> A + Send + Sync>;

/// A monoid presented as an algebra over the list monad: the action sends
/// a list to its product, folded from the unit.
pub struct MonoidAlgebra<A> {
    name: String,
    unit: A,
    op: OpFn<A>,
    gen: Arc<dyn Fn(&mut Rng) -> A + Send + Sync>,
    eq: EqFn<A>,
    show: ShowFn<A>,
}

impl<A: Carrier + PartialEq + fmt::Debug> MonoidAlgebra<A> {
    pub fn new(
        name: impl Into<String>,
        unit: A,
        op: impl Fn(&A, &A) -> A + Send + Sync + 'static,
        gen: impl Fn(&mut Rng) -> A + Send + Sync + 'static,
    ) -> Self {
        MonoidAlgebra {
            name: name.into(),
            unit,
            op: Arc::new(op),
            gen: Arc::new(gen),
            eq: Arc::new(|a, b| a == b),
            show: Arc::new(|a| format!("{a:?}")),
        }
    }
}

impl<A: Carrier> MonoidAlgebra<A> {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn action(&self, xs: &[A]) -> A {
        xs.iter()
            .fold(self.unit.clone(), |acc, x| (self.op)(&acc, x))
    }

    pub fn generate(&self, rng: &mut Rng) -> A {
        (self.gen)(rng)
    }

    pub fn equal(&self, a: &A, b: &A) -> bool {
        (self.eq)(a, b)
    }

    pub fn show(&self, a: &A) -> String {
        (self.show)(a)
    }

    pub fn show_nested(&self, xss: &[Vec<A>]) -> String {
        let inner: Vec<String> = xss
            .iter()
            .map(|xs| {
                let items: Vec<String> = xs.iter().map(|a| self.show(a)).collect();
                format!("[{}]", items.join(","))
            })
            .collect();
        format!("[{}]", inner.join(","))
    }
}

impl MonoidAlgebra<i64> {
    /// `(Z, +, 0)`.
    pub fn integer_sum() -> Self {
        MonoidAlgebra::new("int-sum", 0, |a, b| a + b, |rng| rng.gen_range(-20..=20))
    }

    /// `(Z, -, 0)`: not a monoid, so not an algebra.
    pub fn integer_difference() -> Self {
        MonoidAlgebra::new(
            "int-difference",
            0,
            |a, b| a - b,
            |rng| rng.gen_range(-20..=20),
        )
    }
}

impl MonoidAlgebra<()> {
    pub fn one_point() -> Self {
        MonoidAlgebra::new("one-point", (), |_, _| (), |_| ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{algebra_check, check_linearity, check_module_laws, check_monad_laws};
    use crate::subst::Subst;

    #[test]
    fn unit_is_singleton() {
        assert_eq!(list_unit(7), vec![7]);
        assert_eq!(list_unit("a"), vec!["a"]);
    }

    #[test]
    fn join_flattens_in_order() {
        assert_eq!(list_join(vec![vec![1, 2], vec![3]]), vec![1, 2, 3]);
        assert_eq!(list_join::<i64>(vec![]), Vec::<i64>::new());
        assert_eq!(list_join(vec![vec![], vec![5], vec![]]), vec![5]);
    }

    #[test]
    fn bind_maps_then_joins() {
        assert_eq!(list_bind(|n: &i64| vec![*n, *n], &[1, 2]), vec![1, 1, 2, 2]);
        assert_eq!(
            list_bind(|n: &i64| list_unit(*n), &[1, 2, 3]),
            vec![1, 2, 3]
        );
        assert_eq!(
            list_bind(|_: &i64| Vec::<i64>::new(), &[1, 2]),
            Vec::<i64>::new()
        );
    }

    #[test]
    fn list_instance_is_lawful() {
        let r = check_monad_laws(&list_monad(), 1000, 0);
        assert!(r.all_hold(), "{r}");
    }

    #[test]
    fn dropping_last_element_breaks_right_unit() {
        let broken = list_monad().with_bind(|s, xs: &Vec<i64>| {
            let mut out = list_bind(|x| s.get(x).cloned().unwrap_or_else(|| vec![*x]), xs);
            out.pop();
            Ok(out)
        });
        let r = check_monad_laws(&broken, 1000, 0);
        assert!(!r.all_hold());
        assert!(
            r.law("unit-bind").unwrap().counterexample().is_some(),
            "{r}"
        );
    }

    #[test]
    fn tautological_and_constant_modules_are_lawful() {
        let r = check_module_laws(&list_module(), 1000, 0);
        assert!(r.all_hold(), "{r}");
        let point = ModuleInstance::constant(&list_monad(), ());
        assert!(check_module_laws(&point, 50, 3).all_hold());
    }

    #[test]
    fn concatenation_is_linear() {
        let m = list_monad();
        let taut = list_module();
        let pair = ModuleInstance::new(
            "list x list",
            &m,
            |rng, pool, size| (gen_list(rng, pool, size), gen_list(rng, pool, size)),
            |s: &Subst<i64, Vec<i64>>, (a, b): &(Vec<i64>, Vec<i64>)| {
                let act = |xs: &Vec<i64>| {
                    list_bind(|x| s.get(x).cloned().unwrap_or_else(|| vec![*x]), xs)
                };
                Ok((act(a), act(b)))
            },
        );
        let r = check_linearity(&pair, &taut, |p| Ok(concat(p)), 1000, 0);
        assert!(r.all_hold(), "{r}");
    }

    #[test]
    fn integer_sum_is_an_algebra() {
        let r = algebra_check(&MonoidAlgebra::integer_sum(), 1000, 0);
        assert!(r.all_hold(), "{r}");
    }

    #[test]
    fn subtraction_breaks_associativity_square() {
        let alg = MonoidAlgebra::integer_difference();
        // [[1,2],[3]]: inner products -3 and -3 give 6, the flattened list gives -6.
        let xss = vec![vec![1, 2], vec![3]];
        let inner: Vec<i64> = xss.iter().map(|xs| alg.action(xs)).collect();
        assert_eq!(alg.action(&inner), 6);
        assert_eq!(alg.action(&list_join(xss)), -6);
        let r = algebra_check(&alg, 1000, 0);
        assert!(
            r.law("associativity").unwrap().counterexample().is_some(),
            "{r}"
        );
    }
}
