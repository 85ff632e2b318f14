//! The verification battery run by `compare`.

use std::fmt;

use crate::automaton::{Partition, TreeAutomaton};
use crate::construct::{
    f_inverse, ContinuationAutomaton, EquationAutomaton, FollowAutomaton, PositionAutomaton,
};
use crate::error::Result;
use crate::posfun::{first_of_any, PositionFunctions};
use crate::relations::{
    combined_quotient, equation_quotient, follow_quotient, rel_follow,
    VMerge, VMergeOptions,
};
use crate::terms::{enumerate_language, RankedAlphabet, RegExpr, TreeTable};

#[derive(Debug, Clone)]
pub struct Claim {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Every construction of one expression, built once.
pub struct Constructions {
    pub position: PositionAutomaton,
    pub follow: FollowAutomaton,
    pub equation: EquationAutomaton,
    pub continuation: ContinuationAutomaton,
    pub vmerge: VMerge,
}

impl Constructions {
    pub fn build(e: &RegExpr, sigma: &RankedAlphabet) -> Result<Self> {
        Ok(Constructions {
            position: PositionAutomaton::build(e, sigma)?,
            follow: FollowAutomaton::build(e, sigma)?,
            equation: EquationAutomaton::build(e, sigma)?,
            continuation: ContinuationAutomaton::build(e, sigma)?,
            vmerge: VMerge::build(e, sigma, &VMergeOptions::default())?,
        })
    }

    pub fn named(&self) -> [(&'static str, &TreeAutomaton); 5] {
        [
            ("kpos", &self.position.automaton),
            ("follow", &self.follow.automaton),
            ("equation", &self.equation.automaton),
            ("kcc", &self.continuation.automaton),
            ("vmerge", &self.vmerge.automaton),
        ]
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }

    fn push(&mut self, name: &'static str, holds: bool, detail: impl Into<String>) {
        self.claims.push(Claim {
            name,
            holds,
            detail: detail.into(),
        });
    }
}

fn iso_claim(report: &mut Report, name: &'static str, a: &TreeAutomaton, b: &TreeAutomaton) {
    let found = a.isomorphic(b).is_some();
    let detail = format!(
        "{}/{} vs {}/{}",
        a.num_states(),
        a.num_transitions(),
        b.num_states(),
        b.num_transitions()
    );
    report.push(name, found, detail);
}

/// Whether `part` is a similarity on `a` and no single merge of two of its
/// blocks is.
pub fn is_largest_similarity(a: &TreeAutomaton, part: &Partition) -> bool {
    if !a.is_similarity(part) {
        return false;
    }
    let reps: Vec<usize> = part.blocks().iter().map(|b| b[0]).collect();
    reps.iter().enumerate().all(|(i, &p)| {
        reps[i + 1..]
            .iter()
            .all(|&q| !a.is_similarity(&part.merge(p, q)))
    })
}

/// Runs every claim on `e`, comparing languages on all trees of at most
/// `depth` nodes.
pub fn verify(e: &RegExpr, sigma: &RankedAlphabet, depth: usize) -> Result<Report> {
    let c = Constructions::build(e, sigma)?;
    let mut report = Report::default();

    let table = TreeTable::new(sigma, depth);
    let oracle = enumerate_language(e, depth);
    let expected: Vec<bool> = table.trees.iter().map(|t| oracle.contains(t)).collect();
    for (name, a) in c.named() {
        let got = a.accepts_table(&table)?;
        let bad = table
            .trees
            .iter()
            .zip(got.iter().zip(&expected))
            .find(|(_, (g, x))| g != x);
        let detail = match bad {
            Some((t, (g, _))) => format!("{name} {} {t}", if *g { "accepts" } else { "rejects" }),
            None => format!("{name}, {} trees", table.len()),
        };
        report.push("language matches enumeration", bad.is_none(), detail);
    }

    let p = &c.position;
    let cc = &c.continuation;
    let identity: Vec<usize> = (0..p.automaton.num_states()).collect();
    report.push(
        "P and C are isomorphic through f^k -> (f^k, C_f^k)",
        p.automaton.isomorphic(&cc.automaton).is_some()
            && p.automaton.is_isomorphism(&cc.automaton, &identity),
        "",
    );
    iso_claim(&mut report, "P/~F is isomorphic to F", &follow_quotient(p)?, &c.follow.automaton);
    iso_claim(&mut report, "C/~e is isomorphic to A", &equation_quotient(cc)?, &c.equation.automaton);
    iso_claim(&mut report, "C/== is isomorphic to F", &combined_quotient(cc)?, &c.follow.automaton);

    let positions_ok = if p.positions.is_empty() {
        true
    } else {
        let pf = PositionFunctions::new(&p.linear)?;
        let mut ok = true;
        for s in &cc.states {
            let follow = pf.follow_position(&s.position);
            ok &= first_of_any(&s.continuation) == follow;
            for (g, _) in pf.letters() {
                ok &= f_inverse(g, &s.continuation).is_empty() != follow.contains(g);
            }
        }
        ok
    };
    report.push("First(C_x) = Follow(x) and g^-1(C_x) nonempty iff g in Follow(x)", positions_ok, "");

    let sim = rel_follow(&p.linear, &p.positions)?;
    report.push(
        "~F is the largest similarity on P",
        is_largest_similarity(&p.automaton, &sim),
        format!("{} blocks", sim.len()),
    );

    let v = c.vmerge.automaton.num_states();
    let bound = c.follow.automaton.num_states().min(c.equation.automaton.num_states());
    report.push("states(V) <= min(states(F), states(A))", v <= bound, format!("{v} <= {bound}"));

    Ok(report)
}
