//! Canonical forms of small complexes, for isomorphism testing.
//!
//! Vertices are first split into classes by an invariant (the multiset of
//! facet sizes through each vertex); only permutations that respect the
//! class order are searched. Meant for the small complexes used in tests.

use crate::complex::SimplicialComplex;
use crate::vset::VertexSet;

fn vertex_signature(cx: &SimplicialComplex, v: usize) -> Vec<usize> {
    let mut sizes: Vec<usize> = cx
        .facets()
        .iter()
        .filter(|f| f.contains(v))
        .map(|f| f.len())
        .collect();
    sizes.sort_unstable();
    sizes
}

fn image(cx: &SimplicialComplex, perm: &[usize]) -> Vec<Vec<usize>> {
    let mut fs: Vec<Vec<usize>> = cx
        .facets()
        .iter()
        .map(|f| {
            let mut g: Vec<usize> = f.iter().map(|v| perm[v]).collect();
            g.sort_unstable();
            g
        })
        .collect();
    fs.sort();
    fs
}

struct Search<'a> {
    cx: &'a SimplicialComplex,
    classes: Vec<Vec<usize>>,
    best: Option<Vec<Vec<usize>>>,
}

impl Search<'_> {
    /// Assigns labels `next..` to the remaining vertices of class `ci` and on.
    fn run(&mut self, perm: &mut Vec<usize>, ci: usize, next: usize, used: VertexSet) {
        if ci == self.classes.len() {
            let img = image(self.cx, perm);
            if self.best.as_ref().is_none_or(|b| img < *b) {
                self.best = Some(img);
            }
            return;
        }
        let class = self.classes[ci].clone();
        let remaining: Vec<usize> = class
            .iter()
            .copied()
            .filter(|v| !used.contains(*v))
            .collect();
        if remaining.is_empty() {
            self.run(perm, ci + 1, next, used);
            return;
        }
        for v in remaining {
            perm[v] = next;
            let used = used.with(v);
            self.run(perm, ci, next + 1, used);
            perm[v] = usize::MAX;
        }
    }
}

/// A relabelling-invariant form: the lexicographically least sorted facet
/// list over all class-respecting vertex permutations.
pub fn canonical_form(cx: &SimplicialComplex) -> (usize, Vec<Vec<usize>>) {
    let n = cx.n();
    let mut keyed: Vec<(Vec<usize>, usize)> =
        (0..n).map(|v| (vertex_signature(cx, v), v)).collect();
    keyed.sort();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut last: Option<&Vec<usize>> = None;
    for (sig, v) in &keyed {
        if last == Some(sig) {
            classes.last_mut().unwrap().push(*v);
        } else {
            classes.push(vec![*v]);
        }
        last = Some(sig);
    }
    let mut search = Search {
        cx,
        classes,
        best: None,
    };
    let mut perm = vec![usize::MAX; n];
    search.run(&mut perm, 0, 0, VertexSet::EMPTY);
    (n, search.best.unwrap_or_default())
}

pub fn is_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    if a.n() != b.n() || a.facets().len() != b.facets().len() || a.f_vector() != b.f_vector() {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_pentagon_is_isomorphic() {
        let p = SimplicialComplex::from_facets(5, (0..5).map(|i| [i, (i + 1) % 5, (i + 2) % 5]))
            .unwrap();
        let q = p.relabel(&[3, 0, 4, 1, 2]);
        assert!(is_isomorphic(&p, &q));
    }

    #[test]
    fn path_and_star_differ() {
        let path = SimplicialComplex::from_facets(4, [[0, 1], [1, 2], [2, 3]]).unwrap();
        let star = SimplicialComplex::from_facets(4, [[0, 1], [0, 2], [0, 3]]).unwrap();
        assert!(!is_isomorphic(&path, &star));
    }
}
