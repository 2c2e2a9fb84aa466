use std::collections::BTreeMap;

/// A Kleisli arrow `X -> R Y` presented as a finite map.
///
/// Names outside the map are sent to the unit of whichever monad applies the
/// substitution, so the map stands for a total function on the alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subst<V, T> {
    map: BTreeMap<V, T>,
}

impl<V: Ord, T> Default for Subst<V, T> {
    fn default() -> Self {
        Subst {
            map: BTreeMap::new(),
        }
    }
}

impl<V: Ord, T> Subst<V, T> {
    /// The identity substitution (every name goes to its own unit).
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn singleton(v: V, t: T) -> Self {
        let mut s = Self::default();
        s.insert(v, t);
        s
    }

    pub fn insert(&mut self, v: V, t: T) -> Option<T> {
        self.map.insert(v, t)
    }

    pub fn remove(&mut self, v: &V) -> Option<T> {
        self.map.remove(v)
    }

    pub fn get(&self, v: &V) -> Option<&T> {
        self.map.get(v)
    }

    pub fn contains(&self, v: &V) -> bool {
        self.map.contains_key(v)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&V, &T)> {
        self.map.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &V> {
        self.map.keys()
    }

    pub fn map_images<U, E>(&self, mut f: impl FnMut(&T) -> Result<U, E>) -> Result<Subst<V, U>, E>
    where
        V: Clone,
    {
        let mut out = Subst::default();
        for (v, t) in &self.map {
            out.insert(v.clone(), f(t)?);
        }
        Ok(out)
    }
}

impl<V: Ord, T> FromIterator<(V, T)> for Subst<V, T> {
    fn from_iter<I: IntoIterator<Item = (V, T)>>(iter: I) -> Self {
        Subst {
            map: iter.into_iter().collect(),
        }
    }
}

impl<V: Ord, T> IntoIterator for Subst<V, T> {
    type Item = (V, T);
    type IntoIter = std::collections::btree_map::IntoIter<V, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.map.into_iter()
    }
}
