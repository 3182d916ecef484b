//! Generalized permutohedra `Σ_T x_T Δ_T` in the hyperplane `⟨y, 1⟩ = ⟨x, 1⟩`.
//!
//! Subsets of `[n]` are bitmasks, listed by size and then lexicographically,
//! so the full set comes last. Variable names concatenate the elements
//! (`x12` for `{1, 2}`), which is unambiguous for `n ≤ 9`.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine::{
    affine_fine_cell_dmv, hyperplane_dual_mixed_volume_x, AffineFineCell, AffinePolytope,
};
use crate::error::{Error, Result};
use crate::exactnum::{maximize, rat, unit_vector, LpOutcome, Rational};
use crate::geometry::Polytope;
use crate::mixed::{validate_mixed_subdivision, MinkowskiSequence, MixedCell, MixedSubdivision};
use crate::symfun::{LinearForm, RationalFunction, VariableTable};

/// Largest `n` accepted by the closed form.
pub const GENPERM_MAX_N: usize = 7;

/// Nonempty subsets of `[n]` ordered by size, then lexicographically.
pub fn subsets(n: usize) -> Vec<u32> {
    let mut all: Vec<u32> = (1..1u32 << n).collect();
    all.sort_by_key(|&m| (m.count_ones(), elements(m)));
    all
}

/// Elements of a bitmask, 1-based and increasing.
pub fn elements(mask: u32) -> Vec<usize> {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

pub fn subset_label(mask: u32) -> String {
    elements(mask).iter().map(usize::to_string).collect()
}

/// Parses `"12"` or `"{1,2}"` style subset labels.
pub fn parse_subset(s: &str, n: usize) -> Result<u32> {
    let mut mask = 0u32;
    for c in s.chars().filter(|c| !matches!(c, '{' | '}' | ',' | ' ')) {
        let k = c
            .to_digit(10)
            .filter(|&k| k >= 1 && k as usize <= n)
            .ok_or_else(|| Error::Parse(format!("bad subset `{s}` for n = {n}")))?;
        mask |= 1 << (k - 1);
    }
    if mask == 0 {
        return Err(Error::Parse(format!("empty subset `{s}`")));
    }
    Ok(mask)
}

/// Variables `x_T` over the proper nonempty subsets.
pub fn genperm_vars(n: usize) -> Arc<VariableTable> {
    let names: Vec<String> = subsets(n)
        .into_iter()
        .filter(|&m| m != full(n))
        .map(|m| format!("x{}", subset_label(m)))
        .collect();
    Arc::new(VariableTable::new(names).expect("distinct subset names"))
}

fn full(n: usize) -> u32 {
    (1u32 << n) - 1
}

fn check_n(n: usize) -> Result<()> {
    if !(2..=GENPERM_MAX_N).contains(&n) {
        return Err(Error::DimensionTooLarge(n));
    }
    Ok(())
}

fn sign(n: usize) -> Rational {
    if n % 2 == 1 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n)
            .rev()
            .find(|&j| p[j] > p[i - 1])
            .expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// `Σ_{∅≠T⊆S} x_T` for a proper subset `S`.
fn prefix_form(s: u32, order: &[u32]) -> LinearForm {
    let mut f = LinearForm::zero();
    for (k, &t) in order.iter().enumerate() {
        if t & !s == 0 {
            f.add_term(k, &Rational::one());
        }
    }
    f
}

/// `(-1)^{n-1} Σ_σ Π_{a<n} 1/(Σ_{∅≠T⊆σ[1:a]} x_T)` on `⟨x, 1⟩ = 0`.
pub fn genperm_dmv_closed_form(n: usize) -> Result<RationalFunction> {
    check_n(n)?;
    let order = subsets(n);
    let mut out = RationalFunction::zero(genperm_vars(n));
    for sigma in permutations(n) {
        let mut s = 0u32;
        let mut factors = Vec::with_capacity(n - 1);
        for &i in &sigma[..n - 1] {
            s |= 1 << i;
            factors.push(prefix_form(s, &order));
        }
        out.push_term(sign(n), vec![], factors)?;
    }
    Ok(out)
}

/// `x_T` as a form over the proper subsets, with `x_[n] = -Σ_{T≠[n]} x_T`.
fn x_form(k: usize, big_n: usize) -> LinearForm {
    if k + 1 == big_n {
        LinearForm::from_parts(
            Rational::zero(),
            (0..big_n - 1).map(|i| (i, -Rational::one())),
        )
    } else {
        LinearForm::var(k)
    }
}

/// The bipartite graph `G_J`: left vertex `k` joins right vertex `j` for `j ∈ J_k`.
struct TreeGraph {
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl TreeGraph {
    fn new(n: usize, j: &[u32]) -> Self {
        let mut right = vec![Vec::new(); n];
        let left: Vec<Vec<usize>> = j
            .iter()
            .map(|&m| elements(m).iter().map(|e| e - 1).collect())
            .collect();
        for (k, js) in left.iter().enumerate() {
            for &jj in js {
                right[jj].push(k);
            }
        }
        TreeGraph { left, right }
    }

    /// Left vertices reachable from right vertex `start` avoiding left vertex `skip`.
    fn component(&self, start: usize, skip: Option<usize>) -> (Vec<bool>, Vec<bool>) {
        let mut seen_l = vec![false; self.left.len()];
        let mut seen_r = vec![false; self.right.len()];
        seen_r[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(r) = queue.pop_front() {
            for &k in &self.right[r] {
                if Some(k) == skip || seen_l[k] {
                    continue;
                }
                seen_l[k] = true;
                for &j in &self.left[k] {
                    if !seen_r[j] {
                        seen_r[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
        (seen_l, seen_r)
    }
}

/// Checks `J_k ⊆ T_k`, nonempty, and that `G_J` is a spanning tree.
fn check_tree(n: usize, j: &[u32]) -> Result<TreeGraph> {
    let order = subsets(n);
    if j.len() != order.len() {
        return Err(Error::Dimension(format!(
            "expected {} subsets, got {}",
            order.len(),
            j.len()
        )));
    }
    for (k, (&jk, &t)) in j.iter().zip(&order).enumerate() {
        if jk == 0 || jk & !t != 0 {
            return Err(Error::NotSpanningTree(format!(
                "J_{} = {{{}}} is not a nonempty subset of {{{}}}",
                k + 1,
                subset_label(jk),
                subset_label(t)
            )));
        }
    }
    let edges: usize = j.iter().map(|m| m.count_ones() as usize).sum();
    let expected = (1usize << n) + n - 2;
    if edges != expected {
        return Err(Error::NotSpanningTree(format!(
            "{edges} edges, a spanning tree needs {expected}"
        )));
    }
    let g = TreeGraph::new(n, j);
    let (l, r) = g.component(0, None);
    if !l.iter().all(|&b| b) || !r.iter().all(|&b| b) {
        return Err(Error::NotSpanningTree("graph is disconnected".into()));
    }
    Ok(g)
}

/// `h^J_{i,j̄}` as a set of left vertices.
fn h_set(g: &TreeGraph, i: usize, j: usize) -> Vec<usize> {
    let (l, _) = g.component(j, Some(i));
    l.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(k, _)| k)
        .collect()
}

/// Cell formula `(-1)^{n-1} Π_{|J_i|>1} (-x_{T_i}) / Π_{j∈J_i} h_{i,j̄}` with
/// `x_[n]` eliminated.
pub fn genperm_cell_dmv(n: usize, j: &[u32]) -> Result<RationalFunction> {
    check_n(n)?;
    let g = check_tree(n, j)?;
    let big_n = j.len();
    let mut numer = Vec::new();
    let mut factors = Vec::new();
    let mut coeff = sign(n);
    for (i, js) in g.left.iter().enumerate() {
        if js.len() < 2 {
            continue;
        }
        coeff = -coeff;
        numer.push(x_form(i, big_n));
        for &jj in js {
            let h = h_set(&g, i, jj)
                .into_iter()
                .fold(LinearForm::zero(), |acc, k| acc.add(&x_form(k, big_n)));
            factors.push(h);
        }
    }
    RationalFunction::from_term(genperm_vars(n), coeff, numer, factors)
}

/// The simplices `Δ_T = conv(e_i : i ∈ T)` in subset order.
pub fn genperm_sequence(n: usize) -> Result<Vec<AffinePolytope>> {
    subsets(n)
        .into_iter()
        .map(|t| {
            let pts = elements(t).iter().map(|&i| unit_vector(n, i - 1)).collect();
            AffinePolytope::new(Polytope::new(n, pts)?)
        })
        .collect()
}

/// The mixed cell of `(Δ_T)_T` selecting the vertices `e_j, j ∈ J_T`.
pub fn genperm_mixed_cell(n: usize, j: &[u32]) -> Result<MixedCell> {
    let seq = genperm_sequence(n)?;
    if j.len() != seq.len() {
        return Err(Error::Dimension(format!(
            "expected {} subsets, got {}",
            seq.len(),
            j.len()
        )));
    }
    let mut parts = Vec::with_capacity(j.len());
    for (p, &m) in seq.iter().zip(j) {
        let mut idx = Vec::new();
        for e in elements(m) {
            let v = unit_vector(n, e - 1);
            idx.push(p.base().vertex_index(&v).ok_or_else(|| {
                Error::NotSpanningTree(format!("{{{}}} is not inside its simplex", subset_label(m)))
            })?);
        }
        parts.push(idx);
    }
    Ok(MixedCell::new(parts))
}

/// Geometric cell formula at `z = 0` on the slice, in the `x_T` variables.
pub fn genperm_cell_dmv_geometric(n: usize, j: &[u32]) -> Result<RationalFunction> {
    let seq = genperm_sequence(n)?;
    let cell = genperm_mixed_cell(n, j)?;
    let fc = AffineFineCell::new(&seq, &cell)?;
    let f = affine_fine_cell_dmv(&fc, true)?;
    let big_n = seq.len();
    let mut images: Vec<LinearForm> = (0..big_n).map(|k| x_form(k, big_n)).collect();
    images.extend((0..n).map(|_| LinearForm::zero()));
    f.substitute(genperm_vars(n), &images)
}

/// Geometric `m̃(x, 0)` of `(Δ_T)_T` on `⟨x, 1⟩ = 0`, in the `x_T` variables.
pub fn genperm_dmv_geometric(n: usize) -> Result<RationalFunction> {
    check_n(n)?;
    let seq = genperm_sequence(n)?;
    let f = hyperplane_dual_mixed_volume_x(&seq)?;
    let images: Vec<LinearForm> = (0..seq.len()).map(|k| x_form(k, seq.len())).collect();
    f.substitute(genperm_vars(n), &images)
}

fn minkowski_of(n: usize) -> Result<MinkowskiSequence> {
    let parts = genperm_sequence(n)?
        .into_iter()
        .map(|p| p.base().clone())
        .collect();
    MinkowskiSequence::new(parts)
}

/// Both sides of the specialization at `x_T = 1` for `T ≠ [n]`.
pub fn jm2_sides(n: usize, cells: &[Vec<u32>]) -> Result<(Rational, Rational)> {
    check_n(n)?;
    let mut lhs = Rational::from_integer((1..=n as i64).product::<i64>().into());
    for a in 1..n {
        lhs /= rat((1i64 << a) - 1);
    }
    let big_n = (1usize << n) - 1;
    let mut rhs = Rational::zero();
    for j in cells {
        let g = check_tree(n, j)?;
        let mut prod = Rational::one();
        for (i, js) in g.left.iter().enumerate() {
            if js.len() < 2 {
                continue;
            }
            for &jj in js {
                let a = h_set(&g, i, jj);
                let alpha = if a.contains(&(big_n - 1)) {
                    big_n - a.len()
                } else {
                    a.len()
                };
                prod /= rat(alpha as i64);
            }
        }
        if g.left[big_n - 1].len() > 1 {
            prod *= rat((1i64 << n) - 2);
        }
        rhs += prod;
    }
    Ok((lhs, rhs))
}

/// Validates the cells as a mixed subdivision of `(Δ_T)_T`, then checks the
/// closed form against the sum of cell formulas and the specialized identity.
pub fn verify_genperm_identities(n: usize, cells: &[Vec<u32>]) -> Result<bool> {
    check_n(n)?;
    let seq = minkowski_of(n)?;
    let mixed = cells
        .iter()
        .map(|j| genperm_mixed_cell(n, j))
        .collect::<Result<Vec<_>>>()?;
    validate_mixed_subdivision(&seq, &MixedSubdivision::new(mixed))?;
    let closed = genperm_dmv_closed_form(n)?;
    let mut sum = RationalFunction::zero(closed.vars().clone());
    for j in cells {
        sum = sum.add(&genperm_cell_dmv(n, j)?)?;
    }
    let (lhs, rhs) = jm2_sides(n, cells)?;
    Ok(closed.equals(&sum)? && lhs == rhs)
}

/// The seven cells of a fine mixed subdivision for `n = 3`.
pub fn fig4_cells() -> Vec<Vec<u32>> {
    let rows: [[&str; 7]; 7] = [
        ["1", "2", "3", "1", "1", "23", "12"],
        ["1", "2", "3", "12", "1", "23", "2"],
        ["1", "2", "3", "2", "13", "23", "2"],
        ["1", "2", "3", "2", "13", "3", "23"],
        ["1", "2", "3", "12", "13", "3", "3"],
        ["1", "2", "3", "1", "1", "3", "123"],
        ["1", "2", "3", "12", "1", "3", "23"],
    ];
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_subset(s, 3).expect("valid label"))
                .collect()
        })
        .collect()
}

/// All cells of a regular fine mixed subdivision of `(Δ_T)_T`.
///
/// Heights `ω_{T,j}` are drawn from `seed`. A cell is a spanning tree `J`
/// with potentials `u_T + w_j = ω_{T,j}` on its edges and `≤` elsewhere;
/// cells are found from one LP optimum by pivoting across every edge.
pub fn regular_genperm_subdivision(n: usize, seed: u64) -> Result<Vec<Vec<u32>>> {
    check_n(n)?;
    let order = subsets(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let omega: Vec<Vec<Rational>> = order
            .iter()
            .map(|&t| {
                (0..n)
                    .map(|j| {
                        if t >> j & 1 == 1 {
                            rat(rng.gen_range(1..=1_000_000))
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        if let Some(cells) = pivot_cells(n, &order, &omega) {
            return Ok(cells);
        }
    }
    Err(Error::NonGenericLifting { attempts: 20 })
}

fn edges_of(n: usize, order: &[u32]) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for (k, &t) in order.iter().enumerate() {
        for j in 0..n {
            if t >> j & 1 == 1 {
                e.push((k, j));
            }
        }
    }
    e
}

/// Potentials on a spanning tree, normalised by `w_0 = 0`.
fn potentials(
    n: usize,
    m: usize,
    tree: &[(usize, usize)],
    omega: &[Vec<Rational>],
) -> (Vec<Rational>, Vec<Rational>) {
    let mut u: Vec<Option<Rational>> = vec![None; m];
    let mut w: Vec<Option<Rational>> = vec![None; n];
    w[0] = Some(Rational::zero());
    let mut changed = true;
    while changed {
        changed = false;
        for &(k, j) in tree {
            match (&u[k], &w[j]) {
                (None, Some(wj)) => {
                    u[k] = Some(&omega[k][j] - wj);
                    changed = true;
                }
                (Some(uk), None) => {
                    w[j] = Some(&omega[k][j] - uk);
                    changed = true;
                }
                _ => {}
            }
        }
    }
    (
        u.into_iter().map(|x| x.expect("tree spans")).collect(),
        w.into_iter().map(|x| x.expect("tree spans")).collect(),
    )
}

fn tree_to_j(m: usize, tree: &[(usize, usize)]) -> Vec<u32> {
    let mut j = vec![0u32; m];
    for &(k, jj) in tree {
        j[k] |= 1 << jj;
    }
    j
}

fn pivot_cells(n: usize, order: &[u32], omega: &[Vec<Rational>]) -> Option<Vec<Vec<u32>>> {
    let m = order.len();
    let edges = edges_of(n, order);
    // Variables u⁺, u⁻, w⁺, w⁻, slacks; maximise Σ u_k + Σ b_j w_j with b the
    // barycentre of the uniform flow, an interior point of the Cayley cone.
    let width = 2 * m + 2 * n + edges.len();
    let mut rows = Vec::with_capacity(edges.len());
    let mut rhs = Vec::with_capacity(edges.len());
    for (e, &(k, j)) in edges.iter().enumerate() {
        let mut r = vec![Rational::zero(); width];
        r[k] = Rational::one();
        r[m + k] = -Rational::one();
        r[2 * m + j] = Rational::one();
        r[2 * m + n + j] = -Rational::one();
        r[2 * m + 2 * n + e] = Rational::one();
        rows.push(r);
        rhs.push(omega[k][j].clone());
    }
    let mut c = vec![Rational::zero(); width];
    for k in 0..m {
        c[k] = Rational::one();
        c[m + k] = -Rational::one();
    }
    for &(k, j) in &edges {
        let share = Rational::new(1.into(), (order[k].count_ones() as i64).into());
        c[2 * m + j] += &share;
        c[2 * m + n + j] -= &share;
    }
    let LpOutcome::Optimal { x, .. } = maximize(&c, &rows, &rhs) else {
        return None;
    };
    let first: Vec<(usize, usize)> = edges
        .iter()
        .enumerate()
        .filter(|(e, _)| x[2 * m + 2 * n + e].is_zero())
        .map(|(_, &edge)| edge)
        .collect();
    if first.len() != m + n - 1 {
        return None;
    }
    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let mut first = first;
    first.sort_unstable();
    seen.insert(first.clone());
    queue.push_back(first);
    while let Some(tree) = queue.pop_front() {
        let (u, w) = potentials(n, m, &tree, omega);
        for &(k0, j0) in &tree {
            let rest: Vec<(usize, usize)> =
                tree.iter().copied().filter(|&e| e != (k0, j0)).collect();
            // Component of k0 in the forest, marked on both sides.
            let mut in_l = vec![false; m];
            let mut in_r = vec![false; n];
            in_l[k0] = true;
            let mut grew = true;
            while grew {
                grew = false;
                for &(k, j) in &rest {
                    if in_l[k] != in_r[j] {
                        in_l[k] = true;
                        in_r[j] = true;
                        grew = true;
                    }
                }
            }
            let mut best: Option<(Rational, (usize, usize))> = None;
            let mut tie = false;
            for &(k, j) in &edges {
                if in_l[k] || !in_r[j] {
                    continue;
                }
                let cost = &omega[k][j] - &u[k] - &w[j];
                match &best {
                    Some((b, _)) if cost == *b => tie = true,
                    Some((b, _)) if cost > *b => {}
                    _ => {
                        best = Some((cost, (k, j)));
                        tie = false;
                    }
                }
            }
            let Some((cost, entering)) = best else {
                continue;
            };
            if tie || !cost.is_positive() {
                return None;
            }
            let mut next = rest;
            next.push(entering);
            next.sort_unstable();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Some(seen.iter().map(|t| tree_to_j(m, t)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(n: usize, labels: &[&str]) -> LinearForm {
        let vars = genperm_vars(n);
        labels.iter().fold(LinearForm::zero(), |acc, l| {
            acc.add(&LinearForm::var(vars.require(&format!("x{l}")).unwrap()))
        })
    }

    #[test]
    fn subset_order() {
        let labels: Vec<String> = subsets(3).into_iter().map(subset_label).collect();
        assert_eq!(labels, ["1", "2", "3", "12", "13", "23", "123"]);
    }

    #[test]
    fn example_cell_formula() {
        let j: Vec<u32> = ["1", "2", "3", "1", "1", "23", "12"]
            .iter()
            .map(|s| parse_subset(s, 3).unwrap())
            .collect();
        let f = genperm_cell_dmv(3, &j).unwrap();
        let all = ["1", "2", "3", "12", "13", "23"];
        let x123 = form(3, &all).scale(&-Rational::one());
        // -x123/((x1+x12+x13)(x2+x3+x23)) · -x23/((x1+x2+x12+x13+x123) x3)
        let expected = RationalFunction::from_term(
            genperm_vars(3),
            Rational::one(),
            vec![x123.clone(), form(3, &["23"])],
            vec![
                form(3, &["1", "12", "13"]),
                form(3, &["2", "3", "23"]),
                form(3, &["1", "2", "12", "13"]).add(&x123),
                form(3, &["3"]),
            ],
        )
        .unwrap();
        assert!(f.equals(&expected).unwrap());
        assert!(f
            .equals(&genperm_cell_dmv_geometric(3, &j).unwrap())
            .unwrap());
    }

    #[test]
    fn cycle_is_not_a_tree() {
        // J_12 = 12 and J_123 = 12 close a cycle through 1̄ and 2̄.
        let j: Vec<u32> = ["1", "2", "3", "12", "1", "3", "12"]
            .iter()
            .map(|s| parse_subset(s, 3).unwrap())
            .collect();
        assert!(matches!(
            genperm_cell_dmv(3, &j),
            Err(Error::NotSpanningTree(_))
        ));
        let short: Vec<u32> = ["1", "2", "3", "1", "1", "3", "3"]
            .iter()
            .map(|s| parse_subset(s, 3).unwrap())
            .collect();
        assert!(matches!(
            genperm_cell_dmv(3, &short),
            Err(Error::NotSpanningTree(_))
        ));
    }

    #[test]
    fn closed_form_matches_geometry() {
        for n in 2..=3 {
            let closed = genperm_dmv_closed_form(n).unwrap();
            assert!(
                closed.equals(&genperm_dmv_geometric(n).unwrap()).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn regular_subdivision_n3() {
        let cells = regular_genperm_subdivision(3, 1).unwrap();
        assert!(verify_genperm_identities(3, &cells).unwrap());
    }
}
