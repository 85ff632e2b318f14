//! Exact isomorphism search: colour refinement shared across both automata,
//! then backtracking over same-coloured candidates.

use std::collections::{BTreeMap, BTreeSet};

use super::TreeAutomaton;

type Colour = usize;

/// Refines state colours of `a` and `b` jointly until the number of
/// classes stops growing.
fn refine(a: &TreeAutomaton, b: &TreeAutomaton) -> (Vec<Colour>, Vec<Colour>) {
    let mut table: BTreeMap<Vec<u64>, Colour> = BTreeMap::new();
    let mut intern = |sig: Vec<u64>| {
        let next = table.len();
        *table.entry(sig).or_insert(next)
    };
    let symbol_ids: BTreeMap<&str, u64> = a
        .transitions()
        .iter()
        .chain(b.transitions())
        .map(|t| t.symbol.as_str())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i as u64))
        .collect();

    let initial = |x: &TreeAutomaton| -> Vec<Vec<u64>> {
        (0..x.num_states())
            .map(|q| vec![u64::from(x.is_final(q))])
            .collect()
    };
    let mut ca: Vec<Colour> = initial(a).into_iter().map(&mut intern).collect();
    let mut cb: Vec<Colour> = initial(b).into_iter().map(&mut intern).collect();
    let mut classes = count(&ca, &cb);
    loop {
        let sig = |x: &TreeAutomaton, col: &[Colour]| -> Vec<Vec<u64>> {
            let mut per_state: Vec<Vec<Vec<u64>>> = vec![Vec::new(); x.num_states()];
            for t in x.transitions() {
                // the rule as seen from each of its participants
                let mut shape = vec![symbol_ids[t.symbol.as_str()], col[t.target] as u64];
                shape.extend(t.sources.iter().map(|&q| col[q] as u64));
                for (role, &q) in std::iter::once(&t.target).chain(&t.sources).enumerate() {
                    let mut entry = vec![role as u64];
                    entry.extend_from_slice(&shape);
                    per_state[q].push(entry);
                }
            }
            per_state
                .into_iter()
                .enumerate()
                .map(|(q, mut entries)| {
                    entries.sort();
                    let mut s = vec![col[q] as u64];
                    for e in entries {
                        s.push(u64::MAX);
                        s.extend(e);
                    }
                    s
                })
                .collect()
        };
        let na: Vec<Colour> = sig(a, &ca).into_iter().map(&mut intern).collect();
        let nb: Vec<Colour> = sig(b, &cb).into_iter().map(&mut intern).collect();
        let n = count(&na, &nb);
        ca = na;
        cb = nb;
        if n == classes {
            return (ca, cb);
        }
        classes = n;
    }
}

fn count(a: &[Colour], b: &[Colour]) -> usize {
    a.iter().chain(b).collect::<BTreeSet<_>>().len()
}

pub(super) fn find(a: &TreeAutomaton, b: &TreeAutomaton) -> Option<Vec<usize>> {
    if a.num_states() != b.num_states()
        || a.num_transitions() != b.num_transitions()
        || a.finals().len() != b.finals().len()
    {
        return None;
    }
    let (ca, cb) = refine(a, b);
    let mut hist_a = BTreeMap::new();
    let mut hist_b = BTreeMap::new();
    for &c in &ca {
        *hist_a.entry(c).or_insert(0) += 1;
    }
    for &c in &cb {
        *hist_b.entry(c).or_insert(0) += 1;
    }
    if hist_a != hist_b {
        return None;
    }

    // rules of `a` indexed by participant
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); a.num_states()];
    for (i, t) in a.transitions().iter().enumerate() {
        for &q in std::iter::once(&t.target).chain(&t.sources) {
            if touching[q].last() != Some(&i) {
                touching[q].push(i);
            }
        }
    }
    // most constrained states first
    let mut order: Vec<usize> = (0..a.num_states()).collect();
    order.sort_by_key(|&q| (hist_a[&ca[q]], std::cmp::Reverse(touching[q].len()), q));

    let mut search = Search {
        a,
        b,
        ca: &ca,
        cb: &cb,
        touching: &touching,
        order: &order,
        phi: vec![usize::MAX; a.num_states()],
        used: vec![false; b.num_states()],
    };
    if search.extend(0) {
        debug_assert!(a.is_isomorphism(b, &search.phi));
        Some(search.phi)
    } else {
        None
    }
}

struct Search<'x> {
    a: &'x TreeAutomaton,
    b: &'x TreeAutomaton,
    ca: &'x [Colour],
    cb: &'x [Colour],
    touching: &'x [Vec<usize>],
    order: &'x [usize],
    phi: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        let Some(&q) = self.order.get(depth) else {
            return true;
        };
        for r in 0..self.b.num_states() {
            if self.used[r] || self.cb[r] != self.ca[q] {
                continue;
            }
            self.phi[q] = r;
            self.used[r] = true;
            if self.consistent(q) && self.extend(depth + 1) {
                return true;
            }
            self.used[r] = false;
            self.phi[q] = usize::MAX;
        }
        false
    }

    /// Every fully mapped rule touching `q` has its image in `b`.
    fn consistent(&self, q: usize) -> bool {
        self.touching[q].iter().all(|&i| {
            let t = &self.a.transitions()[i];
            let target = self.phi[t.target];
            if target == usize::MAX {
                return true;
            }
            let mut sources = Vec::with_capacity(t.sources.len());
            for &s in &t.sources {
                let m = self.phi[s];
                if m == usize::MAX {
                    return true;
                }
                sources.push(m);
            }
            self.b.has_transition(target, &t.symbol, &sources)
        })
    }
}
