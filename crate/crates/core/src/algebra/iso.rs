//! Isomorphism search by backtracking over generator images.
//!
//! The source is covered by a greedy generating sequence: each generator is
//! the least element outside the subalgebra generated so far. Every element
//! below the next generator is therefore determined by earlier images, so
//! trying candidate images in ascending order visits maps in lexicographic
//! order of the full map vector and the first success is the least witness.

use rayon::prelude::*;

use super::morphism::closure;
use super::{Algebra, Morphism, Structure, TableAlgebra};
use crate::error::{Error, Result};

#[derive(Clone)]
struct Partial {
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    elems: Vec<usize>,
}

struct Search<'a, T: TableAlgebra> {
    a: &'a T,
    b: &'a T,
    pa: Vec<Vec<u64>>,
    pb: Vec<Vec<u64>>,
    gens: Vec<usize>,
}

impl<T: TableAlgebra> Search<'_, T> {
    fn assign(&self, st: &mut Partial, x: usize, y: usize) -> bool {
        match st.map[x] {
            Some(old) => old == y,
            None => {
                if st.used[y] || self.pa[x] != self.pb[y] {
                    return false;
                }
                st.map[x] = Some(y);
                st.used[y] = true;
                st.elems.push(x);
                true
            }
        }
    }

    /// Adds `g -> img` and closes; false on any conflict.
    fn extend(&self, st: &mut Partial, g: usize, img: usize) -> bool {
        let mut done = st.elems.len();
        if !self.assign(st, g, img) {
            return false;
        }
        let (a, b) = (self.a, self.b);
        while done < st.elems.len() {
            let u = st.elems[done];
            done += 1;
            let fu = st.map[u].unwrap();
            for op in 0..a.unary_count() {
                if !self.assign(st, a.unary(op, u), b.unary(op, fu)) {
                    return false;
                }
            }
            for i in 0..done {
                let w = st.elems[i];
                let fw = st.map[w].unwrap();
                for op in 0..a.binary_count() {
                    if !self.assign(st, a.binary(op, u, w), b.binary(op, fu, fw))
                        || !self.assign(st, a.binary(op, w, u), b.binary(op, fw, fu))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn candidates(&self, st: &Partial, g: usize) -> Vec<usize> {
        (0..self.b.order())
            .filter(|&y| !st.used[y] && self.pb[y] == self.pa[g])
            .collect()
    }

    fn solve(&self, st: &Partial, depth: usize) -> Option<Vec<usize>> {
        if depth == self.gens.len() {
            return Some(st.map.iter().map(|m| m.unwrap()).collect());
        }
        let g = self.gens[depth];
        for c in self.candidates(st, g) {
            let mut next = st.clone();
            if self.extend(&mut next, g, c) {
                if let Some(m) = self.solve(&next, depth + 1) {
                    return Some(m);
                }
            }
        }
        None
    }
}

fn greedy_generators<S: Structure>(s: &S) -> Vec<usize> {
    let n = s.order();
    let mut gens = Vec::new();
    let mut covered = vec![false; n];
    while let Some(g) = (0..n).find(|&x| !covered[x]) {
        gens.push(g);
        for x in closure(s, &gens) {
            covered[x] = true;
        }
    }
    gens
}

/// Least isomorphism `a -> b` in lexicographic map order, if one exists.
pub fn is_isomorphic<T: TableAlgebra + Sync>(a: &T, b: &T) -> Option<Morphism> {
    is_isomorphic_with_jobs(a, b, 1)
}

/// As [`is_isomorphic`], splitting the first generator's candidates over `jobs` workers.
pub fn is_isomorphic_with_jobs<T: TableAlgebra + Sync>(a: &T, b: &T, jobs: usize) -> Option<Morphism> {
    let n = a.order();
    if n != b.order() || a.binary_count() != b.binary_count() {
        return None;
    }
    let pa = a.profiles();
    let pb = b.profiles();
    let (mut sa, mut sb) = (pa.clone(), pb.clone());
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let search = Search {
        a,
        b,
        pa,
        pb,
        gens: greedy_generators(a),
    };
    let root = Partial {
        map: vec![None; n],
        used: vec![false; n],
        elems: Vec::new(),
    };
    let found = if jobs <= 1 || search.gens.is_empty() {
        search.solve(&root, 0)
    } else {
        let g = search.gens[0];
        let cands = search.candidates(&root, g);
        let run = || {
            cands.par_iter().find_map_first(|&c| {
                let mut st = root.clone();
                if search.extend(&mut st, g, c) {
                    search.solve(&st, 1)
                } else {
                    None
                }
            })
        };
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    };
    found.map(|map| Morphism::check(a, b, map).expect("map is total"))
}

impl Algebra {
    /// Isomorphism search between two algebras of the same kind.
    pub fn isomorphism_to(&self, other: &Algebra) -> Result<Option<Morphism>> {
        match (self, other) {
            (Algebra::Semiring(a), Algebra::Semiring(b)) => Ok(is_isomorphic(a, b)),
            (Algebra::Group(a), Algebra::Group(b)) => Ok(is_isomorphic(a, b)),
            _ => Err(Error::KindMismatch(format!(
                "cannot compare a {} with a {}",
                self.kind(),
                other.kind()
            ))),
        }
    }
}
