use super::{Algebra, FiniteGroup, FiniteSemiring, ProductView, Structure, TableAlgebra};
use crate::error::{Error, Result};
use crate::ORDER_CAP;

/// A total map between carriers with the results of an exhaustive check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source_order: usize,
    pub target_order: usize,
    pub map: Vec<usize>,
    pub verified_hom: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl Morphism {
    /// Checks `map` against every operation of the common signature.
    pub fn check<A: Structure, B: Structure>(src: &A, tgt: &B, map: Vec<usize>) -> Result<Self> {
        if map.len() != src.order() || map.iter().any(|&y| y >= tgt.order()) {
            return Err(Error::Dimension(
                "map must send every source element into the target".into(),
            ));
        }
        if src.binary_count() != tgt.binary_count() || src.unary_count() != tgt.unary_count() {
            return Err(Error::KindMismatch("signatures differ".into()));
        }
        let n = src.order();
        let verified_hom = (0..src.binary_count()).all(|op| {
            (0..n).all(|a| {
                (0..n).all(|b| map[src.binary(op, a, b)] == tgt.binary(op, map[a], map[b]))
            })
        }) && (0..src.unary_count())
            .all(|op| (0..n).all(|a| map[src.unary(op, a)] == tgt.unary(op, map[a])));
        Ok(Self::with_flags(tgt.order(), map, verified_hom))
    }

    fn with_flags(target_order: usize, map: Vec<usize>, verified_hom: bool) -> Self {
        let mut hit = vec![false; target_order];
        let mut injective = true;
        for &y in &map {
            if hit[y] {
                injective = false;
            }
            hit[y] = true;
        }
        Morphism {
            source_order: map.len(),
            target_order,
            surjective: hit.iter().all(|&h| h),
            map,
            verified_hom,
            injective,
        }
    }

    pub fn is_embedding(&self) -> bool {
        self.verified_hom && self.injective
    }

    pub fn is_isomorphism(&self) -> bool {
        self.verified_hom && self.injective && self.surjective
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

pub(crate) fn index_of(n: usize, elems: &[usize]) -> Vec<usize> {
    let mut index = vec![usize::MAX; n];
    for (i, &e) in elems.iter().enumerate() {
        index[e] = i;
    }
    index
}

/// Sorted carrier of the subalgebra generated by `gens`.
pub fn closure<S: Structure>(s: &S, gens: &[usize]) -> Vec<usize> {
    let n = s.order();
    let mut seen = vec![false; n];
    let mut elems: Vec<usize> = Vec::new();
    let push = |x: usize, seen: &mut Vec<bool>, elems: &mut Vec<usize>| {
        if !seen[x] {
            seen[x] = true;
            elems.push(x);
        }
    };
    for &g in gens {
        push(g, &mut seen, &mut elems);
    }
    let mut done = 0;
    while done < elems.len() {
        let u = elems[done];
        done += 1;
        for op in 0..s.unary_count() {
            push(s.unary(op, u), &mut seen, &mut elems);
        }
        let mut i = 0;
        while i < done {
            let w = elems[i];
            for op in 0..s.binary_count() {
                push(s.binary(op, u, w), &mut seen, &mut elems);
                push(s.binary(op, w, u), &mut seen, &mut elems);
            }
            i += 1;
        }
    }
    elems.sort_unstable();
    elems
}

/// The algebra induced on a closed subset together with its inclusion map.
pub fn induced<S: Structure, T: TableAlgebra>(s: &S, elems: &[usize]) -> Result<(T, Morphism)> {
    let sub = T::induced_from(s, elems)?;
    let inclusion = Morphism::with_flags(s.order(), elems.to_vec(), true);
    Ok((sub, inclusion))
}

/// Generated subalgebra and its embedding into `a`.
pub fn subalgebra_closure<T: TableAlgebra>(a: &T, gens: &[usize]) -> Result<(T, Morphism)> {
    if gens.is_empty() {
        return Err(Error::Precondition("empty generating set".into()));
    }
    if let Some(&g) = gens.iter().find(|&&g| g >= a.order()) {
        return Err(Error::Precondition(format!("generator {g} is outside the carrier")));
    }
    let elems = closure(a, gens);
    induced(a, &elems)
}

/// Subalgebra of a direct product generated by tuples, without materialising
/// the product's tables (only the generated part has to fit under the cap).
pub fn product_subalgebra<T: TableAlgebra>(factors: &[&T], gens: &[Vec<usize>]) -> Result<T> {
    product_subalgebra_tuples(factors, gens).map(|(t, _)| t)
}

/// As [`product_subalgebra`], also returning the coordinates of each element.
pub fn product_subalgebra_tuples<T: TableAlgebra>(
    factors: &[&T],
    gens: &[Vec<usize>],
) -> Result<(T, Vec<Vec<usize>>)> {
    let view = ProductView::new(factors.to_vec())?;
    if view.order() > 1 << 40 {
        return Err(Error::OrderCap {
            requested: view.order(),
            cap: ORDER_CAP,
        });
    }
    let codes: Vec<usize> = gens
        .iter()
        .map(|g| {
            if g.len() != factors.len() || g.iter().zip(factors).any(|(&c, f)| c >= f.order()) {
                Err(Error::Precondition(format!("bad generator tuple {g:?}")))
            } else {
                Ok(view.encode(g))
            }
        })
        .collect::<Result<_>>()?;
    // Sparse closure: the product carrier may be far above the cap.
    let mut elems: Vec<usize> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for &c in &codes {
        if seen.insert(c) {
            elems.push(c);
        }
    }
    let mut done = 0;
    while done < elems.len() {
        if elems.len() > ORDER_CAP {
            return Err(Error::OrderCap {
                requested: elems.len(),
                cap: ORDER_CAP,
            });
        }
        let u = elems[done];
        done += 1;
        let mut fresh = Vec::new();
        for op in 0..view.unary_count() {
            fresh.push(view.unary(op, u));
        }
        for &w in &elems[..done] {
            for op in 0..view.binary_count() {
                fresh.push(view.binary(op, u, w));
                fresh.push(view.binary(op, w, u));
            }
        }
        for x in fresh {
            if seen.insert(x) {
                elems.push(x);
            }
        }
    }
    elems.sort_unstable();
    let compact = Compacted {
        view: &view,
        elems: &elems,
    };
    let all: Vec<usize> = (0..elems.len()).collect();
    let sub = T::induced_from(&compact, &all)?;
    Ok((sub, elems.iter().map(|&e| view.decode(e)).collect()))
}

/// A closed subset of a structure re-indexed as `0..elems.len()`.
struct Compacted<'a, S: Structure> {
    view: &'a S,
    elems: &'a [usize],
}

impl<S: Structure> Compacted<'_, S> {
    fn index(&self, x: usize) -> usize {
        self.elems.binary_search(&x).expect("subset is closed")
    }
}

impl<S: Structure> Structure for Compacted<'_, S> {
    fn order(&self) -> usize {
        self.elems.len()
    }
    fn binary_count(&self) -> usize {
        self.view.binary_count()
    }
    fn binary(&self, op: usize, a: usize, b: usize) -> usize {
        self.index(self.view.binary(op, self.elems[a], self.elems[b]))
    }
    fn unary_count(&self) -> usize {
        self.view.unary_count()
    }
    fn unary(&self, op: usize, a: usize) -> usize {
        self.index(self.view.unary(op, self.elems[a]))
    }
    fn label(&self, x: usize) -> String {
        self.view.label(self.elems[x])
    }
}

fn product_of<T: TableAlgebra>(factors: &[&T]) -> Result<T> {
    let view = ProductView::new(factors.to_vec())?;
    if view.order() > ORDER_CAP {
        return Err(Error::OrderCap {
            requested: view.order(),
            cap: ORDER_CAP,
        });
    }
    let all: Vec<usize> = (0..view.order()).collect();
    T::induced_from(&view, &all)
}

/// Direct product over the lexicographically indexed product carrier.
pub fn direct_product(algebras: &[Algebra]) -> Result<Algebra> {
    if algebras.is_empty() {
        return Err(Error::Precondition("product of an empty list".into()));
    }
    if let Some(rings) = algebras
        .iter()
        .map(Algebra::as_semiring)
        .collect::<Option<Vec<&FiniteSemiring>>>()
    {
        return Ok(Algebra::Semiring(product_of(&rings)?));
    }
    if let Some(groups) = algebras
        .iter()
        .map(Algebra::as_group)
        .collect::<Option<Vec<&FiniteGroup>>>()
    {
        return Ok(Algebra::Group(product_of(&groups)?));
    }
    Err(Error::KindMismatch(
        "direct product needs all semirings or all groups".into(),
    ))
}

/// Projection of `product(factors)` onto coordinate `i`.
pub fn projection<T: Structure>(factors: &[&T], i: usize) -> Result<Vec<usize>> {
    let view = ProductView::new(factors.to_vec())?;
    if i >= factors.len() {
        return Err(Error::Precondition(format!("no coordinate {i}")));
    }
    Ok((0..view.order()).map(|x| view.decode(x)[i]).collect())
}

/// Extends generator images along the generated closure.
///
/// Fails with a witness when some element receives two different images, and
/// when the keys do not generate the source.
pub fn hom_from_generator_images<A: Structure, B: Structure>(
    src: &A,
    tgt: &B,
    gen_images: &[(usize, usize)],
) -> Result<Morphism> {
    if src.binary_count() != tgt.binary_count() || src.unary_count() != tgt.unary_count() {
        return Err(Error::KindMismatch("signatures differ".into()));
    }
    let n = src.order();
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut elems = Vec::new();
    let assign = |x: usize, y: usize, map: &mut Vec<Option<usize>>, elems: &mut Vec<usize>| {
        match map[x] {
            None => {
                map[x] = Some(y);
                elems.push(x);
                Ok(())
            }
            Some(old) if old == y => Ok(()),
            Some(old) => Err(Error::NotHomomorphism(format!(
                "element {} ({}) would map to both {} and {}",
                x,
                src.label(x),
                tgt.label(old),
                tgt.label(y)
            ))),
        }
    };
    for &(g, img) in gen_images {
        if g >= n || img >= tgt.order() {
            return Err(Error::Precondition(format!("generator pair ({g}, {img}) out of range")));
        }
        assign(g, img, &mut map, &mut elems)?;
    }
    let mut done = 0;
    while done < elems.len() {
        let u = elems[done];
        done += 1;
        let fu = map[u].unwrap();
        for op in 0..src.unary_count() {
            assign(src.unary(op, u), tgt.unary(op, fu), &mut map, &mut elems)?;
        }
        for i in 0..done {
            let w = elems[i];
            let fw = map[w].unwrap();
            for op in 0..src.binary_count() {
                assign(src.binary(op, u, w), tgt.binary(op, fu, fw), &mut map, &mut elems)?;
                assign(src.binary(op, w, u), tgt.binary(op, fw, fu), &mut map, &mut elems)?;
            }
        }
    }
    if elems.len() < n {
        return Err(Error::Precondition(format!(
            "generator images cover only {} of {} elements: the keys do not generate the source",
            elems.len(),
            n
        )));
    }
    let map: Vec<usize> = map.into_iter().map(Option::unwrap).collect();
    Ok(Morphism::with_flags(tgt.order(), map, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{validate_group, Table};

    fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::new(Table::from_fn(n, |a, b| (a + b) % n), None).unwrap()
    }

    #[test]
    fn closure_is_idempotent() {
        let g = cyclic(12);
        let c = closure(&g, &[4]);
        assert_eq!(c, vec![0, 4, 8]);
        assert_eq!(closure(&g, &c), c);
    }

    #[test]
    fn empty_product_is_an_error() {
        assert!(direct_product(&[]).is_err());
    }

    #[test]
    fn mixed_kinds_rejected() {
        let s = Algebra::Semiring(FiniteSemiring::trivial());
        let g = Algebra::Group(cyclic(2));
        assert!(matches!(direct_product(&[s, g]), Err(Error::KindMismatch(_))));
    }

    #[test]
    fn projections_are_surjective_homs() {
        let (a, b) = (cyclic(2), cyclic(3));
        let p = direct_product(&[a.clone().into(), b.clone().into()]).unwrap();
        let p = p.as_group().unwrap();
        assert_eq!(p.order(), 6);
        for (i, f) in [&a, &b].iter().enumerate() {
            let map = projection(&[&a, &b], i).unwrap();
            let m = Morphism::check(p, *f, map).unwrap();
            assert!(m.verified_hom && m.surjective);
        }
    }

    #[test]
    fn inconsistent_extension_reports_witness() {
        let z4 = cyclic(4);
        let z2 = cyclic(2);
        assert!(hom_from_generator_images(&z4, &z2, &[(1, 1)]).unwrap().verified_hom);
        let z3 = cyclic(3);
        assert!(matches!(
            hom_from_generator_images(&z4, &z3, &[(1, 1)]),
            Err(Error::NotHomomorphism(_))
        ));
        assert!(matches!(
            hom_from_generator_images(&z4, &z2, &[(2, 0)]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sparse_product_closure_matches_dense() {
        let rows: Vec<Vec<usize>> = (0..6).map(|a| (0..6).map(|b| (a + b) % 6).collect()).collect();
        let g = validate_group(&rows).unwrap();
        let sparse: FiniteGroup = product_subalgebra(&[&g, &g], &[vec![1, 2]]).unwrap();
        let dense = direct_product(&[g.clone().into(), g.clone().into()]).unwrap();
        let dense = dense.as_group().unwrap();
        let (sub, _) = subalgebra_closure(dense, &[1 * 6 + 2]).unwrap();
        assert_eq!(sparse.order(), 6);
        assert_eq!(sparse.mul_table(), sub.mul_table());
    }
}
