//! Crossing-replacement transforms that raise the unknotting number of a
//! diagram without changing its link type.

use std::collections::BTreeSet;

use super::template::{splice, TangleTemplate};
use crate::bracket::CrossingSet;
use crate::diagram::{CrossingId, Diagram, Role, RoleLabel};
use crate::error::{Error, Result};
use crate::moves::{certify_trivial, SearchBudget, Verdict};
use crate::search::{unknotting_number_of_diagram, UStatus};

#[derive(Clone, Debug, Default)]
pub struct TaniyamaOptions {
    /// Skip the check that the set is a minimum unknotting set.
    pub allow_non_minimal: bool,
    pub budget: SearchBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformed {
    pub diagram: Diagram,
    /// Crossings of the new diagram whose change gives a trivial link.
    pub certificate: CrossingSet,
}

/// Checks that changing `s` unknots `d` and that no smaller set does.
pub fn check_minimal_set(d: &Diagram, s: &CrossingSet, budget: &SearchBudget) -> Result<()> {
    s.validate(d)?;
    let v = certify_trivial(&s.apply(d)?, budget).verdict();
    if v != Verdict::Trivial {
        return Err(Error::NotMinimal(format!("changing {s} gives verdict {v:?}")));
    }
    check_size(d, s, budget)
}

fn check_size(d: &Diagram, s: &CrossingSet, budget: &SearchBudget) -> Result<()> {
    let r = unknotting_number_of_diagram(d, budget)?;
    match r.status {
        UStatus::Exact { k } if k == s.len() => Ok(()),
        status => Err(Error::NotMinimal(format!("{s} has {} crossings, u(D) is {status}", s.len()))),
    }
}

/// Index in the spliced diagram of each original crossing's first copy.
fn offsets(d: &Diagram, replaced: &BTreeSet<usize>, size: usize) -> Vec<usize> {
    let mut at = 0;
    (0..d.crossing_count())
        .map(|i| {
            let here = at;
            at += if replaced.contains(&i) { size } else { 1 };
            here
        })
        .collect()
}

/// Splices `gadget` in place of the last crossing of `s` and of every crossing
/// outside `s`. The returned certificate is `s` together with the `A1`, `A2`
/// crossings of the gadget that replaced the last crossing of `s`.
///
/// Unless `opts.allow_non_minimal` is set, `s` must be a minimum unknotting
/// set of `d`.
pub fn taniyama_transform(
    d: &Diagram,
    s: &CrossingSet,
    gadget: &TangleTemplate,
    opts: &TaniyamaOptions,
) -> Result<Transformed> {
    s.validate(d)?;
    let Some(last) = s.iter().map(|c| c.0).max() else {
        return Err(Error::NotMinimal("the crossing set is empty".into()));
    };
    if !opts.allow_non_minimal {
        check_minimal_set(d, s, &opts.budget)?;
    }
    let d = d.without_roles();
    let replaced: BTreeSet<usize> = (0..d.crossing_count()).filter(|&i| i == last || !s.contains(CrossingId(i))).collect();
    let at: Vec<_> = replaced.iter().map(|&i| (CrossingId(i), gadget)).collect();
    let mut out = splice(&d, &at)?;
    let off = offsets(&d, &replaced, gadget.crossing_count());
    let mut cert = Vec::new();
    for i in s.iter().map(|c| c.0).filter(|&i| i != last) {
        out.set_role(CrossingId(off[i]), Some(RoleLabel { role: Role::C, group: i + 1 }));
        cert.push(CrossingId(off[i]));
    }
    for role in [Role::C, Role::A1, Role::A2] {
        cert.extend(out.crossings_with_role(role, Some(last + 1)));
    }
    Ok(Transformed {
        diagram: out,
        certificate: CrossingSet::new(cert),
    })
}

/// Applies the transform `m` times, each time with the previous certificate
/// as the crossing set. Only the first set is checked for minimality.
pub fn iterate_taniyama(
    d: &Diagram,
    m: usize,
    s: &CrossingSet,
    gadget: &TangleTemplate,
    opts: &TaniyamaOptions,
) -> Result<Transformed> {
    let mut cur = Transformed {
        diagram: d.clone(),
        certificate: s.clone(),
    };
    for step in 0..m {
        let o = TaniyamaOptions {
            allow_non_minimal: opts.allow_non_minimal || step > 0,
            budget: opts.budget,
        };
        cur = taniyama_transform(&cur.diagram, &cur.certificate, gadget, &o)?;
    }
    Ok(cur)
}

/// Replaces every crossing of `d` by `template`.
pub fn doubling_transform(d: &Diagram, template: &TangleTemplate) -> Result<Diagram> {
    let at: Vec<_> = (0..d.crossing_count()).map(|i| (CrossingId(i), template)).collect();
    splice(&d.without_roles(), &at)
}

/// The crossings of a doubled diagram standing for the crossings `s` of the
/// original: the designated pair of each corresponding template copy.
pub fn doubled_set(d: &Diagram, s: &CrossingSet, template: &TangleTemplate) -> Result<CrossingSet> {
    s.validate(d)?;
    let idx = template.role_indices(template.pair())?;
    let n = template.crossing_count();
    Ok(CrossingSet::new(
        s.iter().flat_map(|i| idx.iter().map(move |k| CrossingId(i.0 * n + k))),
    ))
}
