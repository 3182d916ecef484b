//! Plane binary trees, planar cubic trees, the associahedron closed form and
//! the planar φ³ tree amplitude.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::genperm::{elements, genperm_dmv_closed_form, genperm_vars, subsets};
use crate::affine::{hyperplane_dual_mixed_volume_x, AffinePolytope};
use crate::error::{Error, Result};
use crate::exactnum::{unit_vector, Rational};
use crate::geometry::Polytope;
use crate::symfun::{LinearForm, RationalFunction, VariableTable};

pub const ASSOCIAHEDRON_MAX_N: usize = 12;
pub const PLANE_TREE_MAX_N: usize = 14;

/// Binary tree on nodes `1..=n` labelled in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneBinaryTree {
    root: usize,
    /// Children of node `k` at index `k - 1`.
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
}

impl PlaneBinaryTree {
    /// Checks that the child maps form a binary tree whose in-order
    /// traversal is `1, 2, …, n`.
    pub fn new(root: usize, left: Vec<Option<usize>>, right: Vec<Option<usize>>) -> Result<Self> {
        let n = left.len();
        if right.len() != n || root == 0 || root > n {
            return Err(Error::InvalidInput("malformed child maps".into()));
        }
        let t = PlaneBinaryTree { root, left, right };
        let mut order = Vec::with_capacity(n);
        let mut stack = Vec::new();
        let mut cur = Some(root);
        while cur.is_some() || !stack.is_empty() {
            while let Some(k) = cur {
                if k == 0 || k > n || stack.len() > n {
                    return Err(Error::InvalidInput(
                        "child label out of range or cycle".into(),
                    ));
                }
                stack.push(k);
                cur = t.left[k - 1];
            }
            let k = stack.pop().expect("nonempty stack");
            order.push(k);
            if order.len() > n {
                return Err(Error::InvalidInput("tree contains a cycle".into()));
            }
            cur = t.right[k - 1];
        }
        if order != (1..=n).collect::<Vec<_>>() {
            return Err(Error::InvalidInput("labels are not in order".into()));
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn left(&self, k: usize) -> Option<usize> {
        self.left[k - 1]
    }

    pub fn right(&self, k: usize) -> Option<usize> {
        self.right[k - 1]
    }

    /// `[l(k), r(k)]`, the labels below `k`, at index `k - 1`.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0); self.len()];
        self.fill(self.root, &mut out);
        out
    }

    fn fill(&self, k: usize, out: &mut [(usize, usize)]) -> (usize, usize) {
        let lo = self.left(k).map_or(k, |c| self.fill(c, out).0);
        let hi = self.right(k).map_or(k, |c| self.fill(c, out).1);
        out[k - 1] = (lo, hi);
        (lo, hi)
    }

    /// Non-root nodes; each names the edge to its parent.
    pub fn edges(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&k| k != self.root).collect()
    }

    /// The Loday vertex `((k - l + 1)(r - k + 1))_k`.
    pub fn loday_vertex(&self) -> Vec<usize> {
        self.intervals()
            .iter()
            .enumerate()
            .map(|(i, &(l, r))| (i + 2 - l) * (r - i))
            .collect()
    }
}

/// All `C_n` plane binary trees on `n` nodes.
pub fn enumerate_plane_binary_trees(n: usize) -> Result<Vec<PlaneBinaryTree>> {
    if n == 0 || n > PLANE_TREE_MAX_N {
        return Err(Error::DimensionTooLarge(n));
    }
    let shapes = build(1, n);
    let trees: Vec<PlaneBinaryTree> = shapes
        .into_iter()
        .map(|(root, links)| {
            let mut left = vec![None; n];
            let mut right = vec![None; n];
            for (k, l, r) in links {
                left[k - 1] = l;
                right[k - 1] = r;
            }
            PlaneBinaryTree { root, left, right }
        })
        .collect();
    assert_eq!(
        trees.len() as u64,
        catalan(n),
        "plane binary trees are counted by Catalan numbers"
    );
    Ok(trees)
}

type Links = Vec<(usize, Option<usize>, Option<usize>)>;

fn build(lo: usize, hi: usize) -> Vec<(usize, Links)> {
    let mut out = Vec::new();
    for k in lo..=hi {
        let lefts = if k > lo { build(lo, k - 1) } else { Vec::new() };
        let rights = if k < hi { build(k + 1, hi) } else { Vec::new() };
        let ls: Vec<Option<&(usize, Links)>> = if lefts.is_empty() {
            vec![None]
        } else {
            lefts.iter().map(Some).collect()
        };
        let rs: Vec<Option<&(usize, Links)>> = if rights.is_empty() {
            vec![None]
        } else {
            rights.iter().map(Some).collect()
        };
        for l in &ls {
            for r in &rs {
                let mut links = vec![(k, l.map(|x| x.0), r.map(|x| x.0))];
                if let Some(x) = l {
                    links.extend(x.1.iter().cloned());
                }
                if let Some(x) = r {
                    links.extend(x.1.iter().cloned());
                }
                out.push((k, links));
            }
        }
    }
    out
}

pub fn catalan(n: usize) -> u64 {
    // C_n = binom(2n, n) / (n + 1), built incrementally to stay exact.
    (0..n as u64).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// Tree with leaves labelled `1..=n` counterclockwise and interior
/// vertices of degree three.
///
/// Vertices `0..n` are the leaves (vertex `k` has label `k + 1`); interior
/// vertices follow. Degree counting forces `n - 2` interior vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarCubicTree {
    n: usize,
    adjacency: Vec<Vec<usize>>,
}

impl PlanarCubicTree {
    pub fn new(n: usize, adjacency: Vec<Vec<usize>>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(
                "a cubic tree needs at least three leaves".into(),
            ));
        }
        let v = adjacency.len();
        for (i, nb) in adjacency.iter().enumerate() {
            let want = if i < n { 1 } else { 3 };
            if nb.len() != want
                || nb
                    .iter()
                    .any(|&j| j >= v || j == i || !adjacency[j].contains(&i))
            {
                return Err(Error::InvalidInput(format!(
                    "vertex {i} has the wrong degree or a bad edge"
                )));
            }
        }
        let edges: usize = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        if edges + 1 != v {
            return Err(Error::InvalidInput("graph is not a tree".into()));
        }
        let t = PlanarCubicTree { n, adjacency };
        if t.side(0, usize::MAX).len() != v {
            return Err(Error::InvalidInput("graph is disconnected".into()));
        }
        for (a, b) in t.interior_edges() {
            if t.split(a, b).is_none() {
                return Err(Error::InvalidInput("leaf labels are not planar".into()));
            }
        }
        Ok(t)
    }

    pub fn leaves(&self) -> usize {
        self.n
    }

    pub fn interior_vertices(&self) -> usize {
        self.adjacency.len() - self.n
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn interior_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.n..self.adjacency.len() {
            for &b in &self.adjacency[a] {
                if b > a {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Vertices reachable from `start` without crossing to `blocked`.
    fn side(&self, start: usize, blocked: usize) -> Vec<usize> {
        let mut seen = vec![false; self.adjacency.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(x);
            for &y in &self.adjacency[x] {
                if y != blocked && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out
    }

    /// The leaf interval `L = [a, b]` on the side of edge `(x, y)` away from
    /// leaf `n`; `None` if the leaves there are not consecutive.
    pub fn split(&self, x: usize, y: usize) -> Option<(usize, usize)> {
        let side_x = self.side(x, y);
        let far = if side_x.contains(&(self.n - 1)) {
            self.side(y, x)
        } else {
            side_x
        };
        let mut labels: Vec<usize> = far
            .into_iter()
            .filter(|&v| v < self.n)
            .map(|v| v + 1)
            .collect();
        labels.sort_unstable();
        let (a, b) = (*labels.first()?, *labels.last()?);
        (b - a + 1 == labels.len()).then_some((a, b))
    }

    /// Every interior-edge interval, sorted.
    pub fn splits(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .interior_edges()
            .into_iter()
            .map(|(a, b)| self.split(a, b).expect("validated planar tree"))
            .collect();
        out.sort_unstable();
        out
    }
}

/// The bijection onto cubic trees with `n + 2` leaves: missing child slots
/// become leaves `1..=n+1` in order and the root gets leaf `n + 2`.
pub fn pb_to_pc(b: &PlaneBinaryTree) -> PlanarCubicTree {
    let n = b.len();
    let m = n + 2;
    let interior = |k: usize| m + k - 1;
    let mut adj = vec![Vec::new(); m + n];
    let link = |adj: &mut Vec<Vec<usize>>, x: usize, y: usize| {
        adj[x].push(y);
        adj[y].push(x);
    };
    for k in 1..=n {
        match b.left(k) {
            Some(c) => link(&mut adj, interior(k), interior(c)),
            None => link(&mut adj, interior(k), k - 1),
        }
        match b.right(k) {
            Some(c) => link(&mut adj, interior(k), interior(c)),
            None => link(&mut adj, interior(k), k),
        }
    }
    link(&mut adj, interior(b.root()), m - 1);
    PlanarCubicTree::new(m, adj).expect("image of a plane binary tree is a planar cubic tree")
}

/// Intervals `[i, j]` of `[n]` except `[1, n]`, ordered by `i` then `j`.
pub fn interval_list(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            if (i, j) != (1, n) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Variables `x{i}_{j}` for the intervals of [`interval_list`].
pub fn associahedron_vars(n: usize) -> Arc<VariableTable> {
    let names: Vec<String> = interval_list(n)
        .iter()
        .map(|(i, j)| format!("x{i}_{j}"))
        .collect();
    Arc::new(VariableTable::new(names).expect("distinct interval names"))
}

/// `Σ_{[i,j] ⊆ [a,b]} x_ij` for a proper interval.
fn interval_sum(n: usize, a: usize, b: usize) -> LinearForm {
    let mut f = LinearForm::zero();
    for (k, &(i, j)) in interval_list(n).iter().enumerate() {
        if a <= i && j <= b {
            f.add_term(k, &Rational::one());
        }
    }
    f
}

/// `(-1)^{n-1} Σ_B Π_{e ∈ B} 1/(Σ_{[i,j] ⊆ L_{B,e}} x_ij)` on `⟨x, 1⟩ = 0`.
pub fn associahedron_dmv(n: usize) -> Result<RationalFunction> {
    if n == 0 || n > ASSOCIAHEDRON_MAX_N {
        return Err(Error::DimensionTooLarge(n));
    }
    let sign = if n % 2 == 1 {
        Rational::one()
    } else {
        -Rational::one()
    };
    let mut out = RationalFunction::zero(associahedron_vars(n));
    for b in enumerate_plane_binary_trees(n)? {
        let iv = b.intervals();
        let factors = b
            .edges()
            .iter()
            .map(|&k| interval_sum(n, iv[k - 1].0, iv[k - 1].1))
            .collect();
        out.push_term(sign.clone(), vec![], factors)?;
    }
    Ok(out)
}

/// The genperm closed form with `x_T = 0` off intervals, in interval variables.
pub fn associahedron_from_genperm(n: usize) -> Result<RationalFunction> {
    let g = genperm_dmv_closed_form(n)?;
    let target = associahedron_vars(n);
    let mut map = BTreeMap::new();
    for t in subsets(n) {
        if t == (1u32 << n) - 1 {
            continue;
        }
        let e = elements(t);
        let (i, j) = (e[0], *e.last().expect("nonempty"));
        let name = format!("x{}", super::genperm::subset_label(t));
        let image = if j - i + 1 == e.len() {
            LinearForm::var(target.require(&format!("x{i}_{j}"))?)
        } else {
            LinearForm::zero()
        };
        map.insert(name, image);
    }
    debug_assert_eq!(map.len(), genperm_vars(n).len());
    g.substitute_named(target, &map)
}

/// `m̃(x, 0)` of the interval simplices `Δ_[i,j]` on `⟨x, 1⟩ = 0`.
pub fn associahedron_dmv_geometric(n: usize) -> Result<RationalFunction> {
    let mut intervals = interval_list(n);
    intervals.push((1, n));
    let seq = intervals
        .iter()
        .map(|&(i, j)| {
            let pts = (i..=j).map(|k| unit_vector(n, k - 1)).collect();
            AffinePolytope::new(Polytope::new(n, pts)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let f = hyperplane_dual_mixed_volume_x(&seq)?;
    let r = seq.len();
    let mut images: Vec<LinearForm> = (0..r - 1).map(LinearForm::var).collect();
    images.push(LinearForm::from_parts(
        Rational::zero(),
        (0..r - 1).map(|k| (k, -Rational::one())),
    ));
    f.substitute(associahedron_vars(n), &images)
}

/// Mandelstam symbols `s_ij` reduced to an independent set.
///
/// The independent symbols are `s_ij` with `i < j < n` except
/// `s_{n-2,n-1}`. Row sums give `s_in = -Σ_{j≠i,n} s_ij`, and the row sum of
/// `n` then forces `Σ_{i<j<n} s_ij = 0`, which determines `s_{n-2,n-1}`.
#[derive(Clone, Debug)]
pub struct MandelstamTable {
    n: usize,
    vars: Arc<VariableTable>,
    forms: BTreeMap<(usize, usize), LinearForm>,
}

impl MandelstamTable {
    pub fn new(n: usize) -> Result<Self> {
        if !(4..=ASSOCIAHEDRON_MAX_N + 2).contains(&n) {
            return Err(Error::DimensionTooLarge(n));
        }
        let mut names = Vec::new();
        let mut forms = BTreeMap::new();
        for i in 1..n {
            for j in i + 1..n {
                if (i, j) != (n - 2, n - 1) {
                    forms.insert((i, j), LinearForm::var(names.len()));
                    names.push(format!("s{i}_{j}"));
                }
            }
        }
        let rest = forms.values().fold(LinearForm::zero(), |a, f| a.add(f));
        forms.insert((n - 2, n - 1), rest.scale(&-Rational::one()));
        for i in 1..n {
            let row = (1..n).filter(|&j| j != i).fold(LinearForm::zero(), |a, j| {
                a.add(&forms[&(i.min(j), i.max(j))])
            });
            forms.insert((i, n), row.scale(&-Rational::one()));
        }
        let vars = Arc::new(VariableTable::new(names)?);
        Ok(MandelstamTable { n, vars, forms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Arc<VariableTable> {
        &self.vars
    }

    /// `s_ij` over the independent symbols; `s_ii = 0`.
    pub fn s(&self, i: usize, j: usize) -> LinearForm {
        if i == j {
            return LinearForm::zero();
        }
        self.forms[&(i.min(j), i.max(j))].clone()
    }

    /// `X_{[a,b]} = Σ_{a≤i<j≤b} s_ij`.
    pub fn x_interval(&self, a: usize, b: usize) -> LinearForm {
        let mut f = LinearForm::zero();
        for i in a..=b {
            for j in i + 1..=b {
                f = f.add(&self.s(i, j));
            }
        }
        f
    }

    /// `Σ_{i<j in S} s_ij` for an arbitrary leaf set.
    pub fn x_set(&self, set: &[usize]) -> LinearForm {
        let mut f = LinearForm::zero();
        for (k, &i) in set.iter().enumerate() {
            for &j in &set[k + 1..] {
                f = f.add(&self.s(i, j));
            }
        }
        f
    }
}

/// `Σ_T Π_e 1/X_e` over planar cubic trees with `n` leaves, built from plane
/// binary trees on `n - 2` nodes.
pub fn phi3_amplitude(n: usize, table: &MandelstamTable) -> Result<RationalFunction> {
    if table.n() != n {
        return Err(Error::Dimension(format!(
            "table for n = {} used with n = {n}",
            table.n()
        )));
    }
    let mut out = RationalFunction::zero(table.vars().clone());
    for b in enumerate_plane_binary_trees(n - 2)? {
        let t = pb_to_pc(&b);
        let factors = t
            .splits()
            .iter()
            .map(|&(a, c)| table.x_interval(a, c))
            .collect();
        out.push_term(Rational::one(), vec![], factors)?;
    }
    Ok(out)
}

/// Image of the associahedron closed form under `x_ij ↦ s_{i,j+1}`.
pub fn associahedron_to_mandelstam(n: usize, table: &MandelstamTable) -> Result<RationalFunction> {
    if table.n() != n + 2 {
        return Err(Error::Dimension("table must have n + 2 particles".into()));
    }
    let f = associahedron_dmv(n)?;
    let images: Vec<LinearForm> = interval_list(n)
        .iter()
        .map(|&(i, j)| table.s(i, j + 1))
        .collect();
    f.substitute(table.vars().clone(), &images)
}

/// `Some(±1)` when the associahedron image equals `±` the amplitude.
pub fn amplitude_sign(n: usize) -> Result<Option<i32>> {
    let table = MandelstamTable::new(n + 2)?;
    let lhs = associahedron_to_mandelstam(n, &table)?;
    let amp = phi3_amplitude(n + 2, &table)?;
    if lhs.equals(&amp)? {
        Ok(Some(1))
    } else if lhs.equals(&amp.neg())? {
        Ok(Some(-1))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn catalan_numbers() {
        let c: Vec<u64> = (1..=8).map(catalan).collect();
        assert_eq!(c, [1, 2, 5, 14, 42, 132, 429, 1430]);
        assert_eq!(enumerate_plane_binary_trees(4).unwrap().len(), 14);
    }

    #[test]
    fn intervals_and_validation() {
        // 2 is the root with children 1 and 3.
        let t =
            PlaneBinaryTree::new(2, vec![None, Some(1), None], vec![None, Some(3), None]).unwrap();
        assert_eq!(t.intervals(), [(1, 1), (1, 3), (3, 3)]);
        assert!(
            PlaneBinaryTree::new(1, vec![None, Some(1), None], vec![None, Some(3), None]).is_err()
        );
    }

    #[test]
    fn two_node_trees() {
        let f = associahedron_dmv(2).unwrap();
        let v = associahedron_vars(2);
        let x = |name: &str| LinearForm::var(v.require(name).unwrap());
        let expected = RationalFunction::from_term(v.clone(), rat(-1), vec![], vec![x("x1_1")])
            .unwrap()
            .add(&RationalFunction::from_term(v.clone(), rat(-1), vec![], vec![x("x2_2")]).unwrap())
            .unwrap();
        assert!(f.equals(&expected).unwrap());
    }

    #[test]
    fn mandelstam_rows_vanish() {
        for n in 4..=7 {
            let t = MandelstamTable::new(n).unwrap();
            for i in 1..=n {
                let row = (1..=n).fold(LinearForm::zero(), |a, j| a.add(&t.s(i, j)));
                assert!(row.is_zero(), "row {i} for n = {n}");
            }
        }
    }

    #[test]
    fn cubic_tree_rejects_bad_degree() {
        // A star with three leaves and one extra pendant leaf on the center.
        let adj = vec![vec![3], vec![3], vec![3], vec![0, 1, 2]];
        assert!(PlanarCubicTree::new(3, adj).is_ok());
        let bad = vec![vec![4], vec![4], vec![4], vec![4], vec![0, 1, 2, 3]];
        assert!(PlanarCubicTree::new(4, bad).is_err());
    }
}
