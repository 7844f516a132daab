//! Minimal vertex covers, the cover ideal `J(G)`, minimal generating sets
//! of powers `I^k`, and membership with certificate factorizations.
//!
//! Power expansion and generator minimization run on rayon when the
//! `parallel` feature is enabled; `power_seq` and [`minimalize_seq`] are
//! the sequential kernels, kept public so the benches can compare both.
//! Either path yields identical results.

use std::collections::BTreeSet;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::decomp::VariableOrder;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::monomial::{Factorization, Monomial};

/// Vertex budget for minimal cover enumeration.
pub const MAX_COVER_VERTICES: usize = 22;

/// Budget on `C(g + k - 1, k)`, the number of candidate products in `I^k`.
pub const MAX_POWER_PRODUCTS: u128 = 10_000_000;

// ---------------------------------------------------------------------------
// minimal vertex covers
// ---------------------------------------------------------------------------

/// All inclusion-minimal vertex covers, computed as complements of maximal
/// independent sets (Bron-Kerbosch with pivoting on the complement graph).
/// Covers come back sorted, each cover sorted by label.
pub fn minimal_vertex_covers(g: &Graph) -> Result<Vec<BTreeSet<String>>> {
    let n = g.vertex_count();
    if n > MAX_COVER_VERTICES {
        return Err(Error::BudgetExceeded(format!(
            "cover enumeration limited to {MAX_COVER_VERTICES} vertices, got {n}"
        )));
    }
    // complement adjacency as bitmasks
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut comp = vec![0u32; n];
    for i in 0..n {
        let mut mask = full & !(1 << i);
        for &j in g.adj_idx(i) {
            mask &= !(1 << j);
        }
        comp[i] = mask;
    }

    let mut independent: Vec<u32> = Vec::new();
    bron_kerbosch(0, full, 0, &comp, &mut independent);

    let mut covers: Vec<BTreeSet<String>> = independent
        .into_iter()
        .map(|mis| {
            (0..n)
                .filter(|i| mis & (1 << i) == 0)
                .map(|i| g.label(i).to_string())
                .collect()
        })
        .collect();
    covers.sort();
    Ok(covers)
}

/// Maximal cliques of the (complement) adjacency given by `adj` bitmasks;
/// these are the maximal independent sets of the original graph.
fn bron_kerbosch(r: u32, mut p: u32, mut x: u32, adj: &[u32], out: &mut Vec<u32>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // pivot with most neighbors in p
    let pivot = {
        let mut best = 0usize;
        let mut best_count = -1i32;
        let mut scan = p | x;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let count = (p & adj[v]).count_ones() as i32;
            if count > best_count {
                best_count = count;
                best = v;
            }
        }
        best
    };
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        let bit = 1u32 << v;
        bron_kerbosch(r | bit, p & adj[v], x & adj[v], adj, out);
        p &= !bit;
        x |= bit;
    }
}

/// The cover ideal `J(G)`: squarefree generators, one per minimal vertex
/// cover. Inclusion-minimality of the covers makes the set minimal.
pub fn cover_ideal(g: &Graph) -> Result<MonomialIdeal> {
    let gens = minimal_vertex_covers(g)?
        .into_iter()
        .map(Monomial::squarefree)
        .collect();
    Ok(MonomialIdeal::from_generators(gens))
}

// ---------------------------------------------------------------------------
// minimalization
// ---------------------------------------------------------------------------

fn minimalize_dense(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort();
    gens.dedup();
    // sort by total degree so divisors precede multiples
    let mut by_degree: Vec<(u32, Vec<u32>)> = gens
        .into_iter()
        .map(|v| (v.iter().sum::<u32>(), v))
        .collect();
    by_degree.sort();
    let items: Vec<(u32, Vec<u32>)> = by_degree;

    let keep = |idx: usize| -> bool {
        let (deg, m) = &items[idx];
        !items[..idx]
            .iter()
            .any(|(d, other)| d < deg && other.iter().zip(m.iter()).all(|(a, b)| a <= b))
    };

    #[cfg(feature = "parallel")]
    let kept: Vec<bool> = (0..items.len()).into_par_iter().map(keep).collect();
    #[cfg(not(feature = "parallel"))]
    let kept: Vec<bool> = (0..items.len()).map(keep).collect();

    items
        .into_iter()
        .zip(kept)
        .filter_map(|((_, m), k)| k.then_some(m))
        .collect()
}

fn minimalize_dense_seq(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort();
    gens.dedup();
    let mut by_degree: Vec<(u32, Vec<u32>)> = gens
        .into_iter()
        .map(|v| (v.iter().sum::<u32>(), v))
        .collect();
    by_degree.sort();
    let mut out: Vec<(u32, Vec<u32>)> = Vec::new();
    for (deg, m) in by_degree {
        let redundant = out
            .iter()
            .any(|(d, other)| *d < deg && other.iter().zip(m.iter()).all(|(a, b)| a <= b));
        if !redundant {
            out.push((deg, m));
        }
    }
    out.into_iter().map(|(_, m)| m).collect()
}

/// Drops every monomial strictly divisible by another in the set, and
/// deduplicates. Idempotent; the surviving set generates the same ideal.
pub fn minimalize(gens: Vec<Monomial>) -> Vec<Monomial> {
    let table = VariableOrder::label_lex(
        gens.iter()
            .flat_map(|m| m.iter().map(|(l, _)| l.to_string()).collect::<Vec<_>>()),
    );
    let dense: Vec<Vec<u32>> = gens.iter().map(|m| table.dense(m).unwrap()).collect();
    let mut kept = minimalize_dense(dense);
    kept.sort_by(|x, y| y.cmp(x)); // descending lex, like ideal generators
    kept.into_iter().map(|v| table.monomial(&v)).collect()
}

/// Sequential variant of [`minimalize`]; identical output.
pub fn minimalize_seq(gens: Vec<Monomial>) -> Vec<Monomial> {
    let table = VariableOrder::label_lex(
        gens.iter()
            .flat_map(|m| m.iter().map(|(l, _)| l.to_string()).collect::<Vec<_>>()),
    );
    let dense: Vec<Vec<u32>> = gens.iter().map(|m| table.dense(m).unwrap()).collect();
    let mut kept = minimalize_dense_seq(dense);
    kept.sort_by(|x, y| y.cmp(x)); // descending lex, like ideal generators
    kept.into_iter().map(|v| table.monomial(&v)).collect()
}

// ---------------------------------------------------------------------------
// monomial ideals
// ---------------------------------------------------------------------------

/// A monomial ideal held by its minimal generating set, optionally tagged
/// with the ambient variable order that sorts the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
    order: Option<VariableOrder>,
}

impl MonomialIdeal {
    /// Minimalizes the given set and sorts it (descending lexicographic by
    /// label order until an ambient order is attached).
    pub fn from_generators(gens: Vec<Monomial>) -> MonomialIdeal {
        let gens = minimalize(gens);
        let mut ideal = MonomialIdeal { gens, order: None };
        ideal.sort_generators();
        ideal
    }

    /// Attaches an ambient order (it must cover every variable that occurs)
    /// and re-sorts the generators descending lexicographically under it.
    pub fn with_order(mut self, order: VariableOrder) -> Result<MonomialIdeal> {
        for gen in &self.gens {
            for (label, _) in gen.iter() {
                order.require(label)?;
            }
        }
        self.order = Some(order);
        self.sort_generators();
        Ok(self)
    }

    fn effective_order(&self) -> VariableOrder {
        match &self.order {
            Some(ord) => ord.clone(),
            None => VariableOrder::label_lex(
                self.gens
                    .iter()
                    .flat_map(|m| m.iter().map(|(l, _)| l.to_string()).collect::<Vec<_>>()),
            ),
        }
    }

    fn sort_generators(&mut self) {
        let table = self.effective_order();
        self.gens.sort_by_cached_key(|m| {
            let dense = table.dense(m).expect("order covers generators");
            std::cmp::Reverse(dense)
        });
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn order(&self) -> Option<&VariableOrder> {
        self.order.as_ref()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Ideal membership of a single monomial: some generator divides it.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Minimal generating set of `I^k` by expanding all k-multisets of
    /// generators and minimalizing. `k = 1` returns the ideal unchanged.
    pub fn power(&self, k: usize) -> Result<MonomialIdeal> {
        self.power_impl(k, false)
    }

    /// Sequential variant of [`MonomialIdeal::power`]; identical output.
    pub fn power_seq(&self, k: usize) -> Result<MonomialIdeal> {
        self.power_impl(k, true)
    }

    fn power_impl(&self, k: usize, force_seq: bool) -> Result<MonomialIdeal> {
        if k == 0 {
            return Err(Error::InvalidInput("power requires k >= 1".into()));
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let count = multiset_count(self.gens.len() as u128, k as u128);
        if count > MAX_POWER_PRODUCTS {
            return Err(Error::BudgetExceeded(format!(
                "I^{k} would need {count} products (limit {MAX_POWER_PRODUCTS})"
            )));
        }
        let table = self.effective_order();
        let dense: Vec<Vec<u32>> = self
            .gens
            .iter()
            .map(|m| table.dense(m).expect("order covers generators"))
            .collect();

        let expand_from = |first: usize| -> Vec<Vec<u32>> {
            let mut out = Vec::new();
            let mut stack: Vec<(usize, usize, Vec<u32>)> = vec![(first, 1, dense[first].clone())];
            while let Some((lo, depth, acc)) = stack.pop() {
                if depth == k {
                    out.push(acc);
                    continue;
                }
                for next in lo..dense.len() {
                    let sum: Vec<u32> = acc
                        .iter()
                        .zip(dense[next].iter())
                        .map(|(a, b)| a + b)
                        .collect();
                    stack.push((next, depth + 1, sum));
                }
            }
            out
        };

        let products: Vec<Vec<u32>> = if force_seq {
            (0..dense.len()).flat_map(expand_from).collect()
        } else {
            #[cfg(feature = "parallel")]
            {
                (0..dense.len())
                    .into_par_iter()
                    .flat_map_iter(expand_from)
                    .collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..dense.len()).flat_map(expand_from).collect()
            }
        };

        let mut kept = if force_seq {
            minimalize_dense_seq(products)
        } else {
            minimalize_dense(products)
        };
        kept.sort_by(|x, y| y.cmp(x)); // descending lex, like ideal generators
        let gens = kept.into_iter().map(|v| table.monomial(&v)).collect();
        let mut ideal = MonomialIdeal {
            gens,
            order: self.order.clone(),
        };
        ideal.sort_generators();
        Ok(ideal)
    }

    /// Finds `k` generators (repetition allowed) whose product divides `m`,
    /// i.e. a certificate that `m` lies in `I^k`. The search backtracks over
    /// generators in their sorted order with non-decreasing indices and
    /// prunes on exponent overflow, so the first hit is deterministic.
    /// Returns the factors together with the cofactor `m / product`.
    pub fn membership(&self, k: usize, m: &Monomial) -> Option<Factorization> {
        let table = self.membership_table(m);
        let base = DenseBase::build(self, &table);
        self.membership_dense(&base, k, m)
    }

    /// Enumerates factorizations (at most `cap`) in the same deterministic
    /// order as [`MonomialIdeal::membership`].
    pub fn membership_all(&self, k: usize, m: &Monomial, cap: usize) -> Vec<Factorization> {
        let mut out = Vec::new();
        if cap == 0 {
            return out;
        }
        let table = self.membership_table(m);
        let base = DenseBase::build(self, &table);
        self.membership_search(&base, k, m, &mut |fact| {
            out.push(fact);
            out.len() >= cap
        });
        out
    }

    /// [`MonomialIdeal::membership`] against a prebuilt dense view, for hot
    /// loops that query many targets against the same base.
    pub(crate) fn membership_dense(
        &self,
        base: &DenseBase,
        k: usize,
        m: &Monomial,
    ) -> Option<Factorization> {
        let mut found = None;
        self.membership_search(base, k, m, &mut |fact| {
            found = Some(fact);
            true
        });
        found
    }

    /// Membership for a target already in dense form over `base.table`.
    pub(crate) fn membership_dense_target(
        &self,
        base: &DenseBase,
        k: usize,
        target: Vec<u32>,
    ) -> Option<Factorization> {
        let mut found = None;
        self.membership_core(base, k, target, &mut |fact| {
            found = Some(fact);
            true
        });
        found
    }

    fn membership_table(&self, m: &Monomial) -> VariableOrder {
        VariableOrder::label_lex(
            self.gens
                .iter()
                .flat_map(|g| g.iter().map(|(l, _)| l.to_string()).collect::<Vec<_>>())
                .chain(m.iter().map(|(l, _)| l.to_string())),
        )
    }

    fn membership_search(
        &self,
        base: &DenseBase,
        k: usize,
        m: &Monomial,
        sink: &mut dyn FnMut(Factorization) -> bool,
    ) {
        let target = match base.table.dense(m) {
            Ok(t) => t,
            // a variable the base never uses cannot obstruct membership:
            // retry with a widened table, splitting it off into the cofactor
            Err(_) => {
                let table = self.membership_table(m);
                let widened = DenseBase::build(self, &table);
                let target = widened.table.dense(m).expect("widened table covers m");
                return self.membership_core(&widened, k, target, sink);
            }
        };
        self.membership_core(base, k, target, sink)
    }

    /// Core backtracking search; `sink` returns true to stop. On a complete
    /// pick the leftover exponents are exactly the cofactor.
    fn membership_core(
        &self,
        base: &DenseBase,
        k: usize,
        target: Vec<u32>,
        sink: &mut dyn FnMut(Factorization) -> bool,
    ) {
        if k == 0 {
            return;
        }
        let target_degree: u32 = target.iter().sum();
        let mut remaining = target;
        let mut picks: Vec<usize> = Vec::with_capacity(k);

        fn recurse(
            dense: &[Vec<u32>],
            degrees: &[u32],
            min_degree: u32,
            k: usize,
            remaining: &mut Vec<u32>,
            remaining_degree: u32,
            lo: usize,
            picks: &mut Vec<usize>,
            sink: &mut dyn FnMut(&[usize], &[u32]) -> bool,
        ) -> bool {
            if picks.len() == k {
                return sink(picks, remaining);
            }
            let slots = (k - picks.len()) as u32;
            for idx in lo..dense.len() {
                // degree prune: the cheapest way to fill remaining slots
                if remaining_degree < degrees[idx] + (slots - 1) * min_degree {
                    continue;
                }
                if dense[idx].iter().zip(remaining.iter()).any(|(a, b)| a > b) {
                    continue;
                }
                for (r, a) in remaining.iter_mut().zip(dense[idx].iter()) {
                    *r -= a;
                }
                picks.push(idx);
                let stop = recurse(
                    dense,
                    degrees,
                    min_degree,
                    k,
                    remaining,
                    remaining_degree - degrees[idx],
                    idx,
                    picks,
                    sink,
                );
                picks.pop();
                for (r, a) in remaining.iter_mut().zip(dense[idx].iter()) {
                    *r += a;
                }
                if stop {
                    return true;
                }
            }
            false
        }

        let gens = &self.gens;
        let table = &base.table;
        let mut emit = |picks: &[usize], leftover: &[u32]| -> bool {
            let factors: Vec<Monomial> = picks.iter().map(|&i| gens[i].clone()).collect();
            sink(Factorization::new(factors, table.monomial(leftover)))
        };
        recurse(
            &base.gens,
            &base.degrees,
            base.min_degree,
            k,
            &mut remaining,
            target_degree,
            0,
            &mut picks,
            &mut emit,
        );
    }

    /// Pairwise non-divisibility of the generating set; the stored set
    /// should always satisfy this.
    pub fn is_minimal(&self) -> bool {
        for (i, a) in self.gens.iter().enumerate() {
            for (j, b) in self.gens.iter().enumerate() {
                if i != j && a.divides(b) {
                    return false;
                }
            }
        }
        true
    }
}

/// Dense view of an ideal's generators against a fixed variable table.
/// Built once per batch of membership queries.
pub(crate) struct DenseBase {
    pub(crate) table: VariableOrder,
    pub(crate) gens: Vec<Vec<u32>>,
    pub(crate) degrees: Vec<u32>,
    pub(crate) min_degree: u32,
}

impl DenseBase {
    /// `table` must cover the ideal's variables.
    pub(crate) fn build(ideal: &MonomialIdeal, table: &VariableOrder) -> DenseBase {
        let gens: Vec<Vec<u32>> = ideal
            .gens
            .iter()
            .map(|g| table.dense(g).expect("table covers generators"))
            .collect();
        let degrees: Vec<u32> = gens.iter().map(|v| v.iter().sum()).collect();
        let min_degree = degrees.iter().copied().min().unwrap_or(0);
        DenseBase {
            table: table.clone(),
            gens,
            degrees,
            min_degree,
        }
    }

    /// Checked constructor for an externally supplied order.
    pub(crate) fn try_build(ideal: &MonomialIdeal, table: &VariableOrder) -> Result<DenseBase> {
        for gen in &ideal.gens {
            for (label, _) in gen.iter() {
                table.require(label)?;
            }
        }
        Ok(DenseBase::build(ideal, table))
    }
}

/// `C(g + k - 1, k)` with saturation, for the power budget check.
fn multiset_count(g: u128, k: u128) -> u128 {
    if g == 0 {
        return 0;
    }
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul(g + i);
        result /= i + 1;
        if result > MAX_POWER_PRODUCTS * 2 {
            return u128::MAX;
        }
    }
    result
}
