use std::collections::BTreeMap;

use crate::expr::{canonical_cable, canonical_sum, GraphKit, KnotExpr, Label};

use super::level::{replay, Birth, Core, Def, OuterCore, Replay, SaddleCase, Step, VarId};
use super::validate::Violation;
use super::Rhd;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtractError {
    #[error("invalid decomposition: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidDecomposition(Vec<Violation>),
    #[error("{0} is not a critical knot of the decomposition")]
    UnknownComponent(String),
    #[error("knot type of the core of {0} is never fixed")]
    Unresolved(String),
}

/// Key of the `witness_gamma` map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KitNode {
    Target,
    Label(Label),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractionResult {
    pub target: String,
    /// Canonical expression of the target knot.
    pub expr: KnotExpr,
    /// Canonical expression of every critical knot.
    pub knot_exprs: BTreeMap<String, KnotExpr>,
    pub kit: GraphKit,
    /// A level component whose solid torus has the label's knot as core.
    pub witness_r: BTreeMap<Label, String>,
    /// A level component whose core is the companion the node is a cable of.
    pub witness_gamma: BTreeMap<KitNode, String>,
    /// One step per saddle, in order.
    pub steps: Vec<Step>,
    /// Core of every component that ever existed.
    pub component_cores: BTreeMap<String, KnotExpr>,
}

/// What a critical knot is, before variables are solved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Term {
    Var(VarId),
    Torus(OuterCore),
    Trivial,
}

/// A validated replay with every knot variable solved.
pub(crate) struct Solved {
    pub replay: Replay,
    pub var_exprs: Vec<KnotExpr>,
    pub knots: BTreeMap<String, Term>,
}

impl Solved {
    pub fn expr(&self, t: &Term) -> KnotExpr {
        match t {
            Term::Var(v) => self.var_exprs[*v].clone(),
            Term::Torus(o) => canonical_cable(o.p, o.q, KnotExpr::Unknot),
            Term::Trivial => KnotExpr::Unknot,
        }
    }

    pub fn def(&self, v: VarId) -> &Def {
        self.replay.state.vars[v].def.as_ref().expect("solved variables are defined")
    }

    /// Critical knot born with the variable, if it is a source.
    pub fn source_of(&self, v: VarId) -> Option<&str> {
        match &self.replay.state.vars[v].birth {
            Birth::Source(s) => Some(s),
            _ => None,
        }
    }
}

pub(crate) fn solve(r: &Rhd) -> Result<Solved, ExtractError> {
    let replay = replay(r, false);
    if !replay.violations.is_empty() {
        return Err(ExtractError::InvalidDecomposition(replay.violations));
    }
    let vars = &replay.state.vars;
    let mut memo: Vec<Option<KnotExpr>> = vec![None; vars.len()];
    for v in 0..vars.len() {
        resolve(v, &replay, &mut memo)?;
    }
    let var_exprs: Vec<KnotExpr> = memo.into_iter().map(Option::unwrap).collect();

    let mut knots = BTreeMap::new();
    for (s, v) in &replay.source_vars {
        knots.insert(s.clone(), Term::Var(*v));
    }
    for step in &replay.steps {
        let term = match &step.case {
            SaddleCase::Cable { cable, .. } => Term::Var(*cable),
            SaddleCase::Hopf { p, q, first, .. } => Term::Torus(OuterCore {
                p: *p,
                q: *q,
                inner: *first,
                gamma_comp: step.consumed[0].clone(),
            }),
            _ => Term::Trivial,
        };
        knots.insert(step.saddle.clone(), term);
    }
    for sink in &replay.sinks {
        let term = match &sink.outer {
            Some(o) => Term::Torus(o.clone()),
            None => Term::Trivial,
        };
        knots.insert(sink.sink.clone(), term);
    }
    Ok(Solved {
        replay,
        var_exprs,
        knots,
    })
}

fn resolve(v: VarId, replay: &Replay, memo: &mut Vec<Option<KnotExpr>>) -> Result<KnotExpr, ExtractError> {
    if let Some(e) = &memo[v] {
        return Ok(e.clone());
    }
    let info = &replay.state.vars[v];
    let e = match &info.def {
        None => return Err(ExtractError::Unresolved(info.birth_comp.clone())),
        Some(Def::Unknot) => KnotExpr::Unknot,
        Some(Def::Cable { p, q, of }) => canonical_cable(*p, *q, resolve(*of, replay, memo)?),
        Some(Def::Sum(a, b)) => canonical_sum(vec![resolve(*a, replay, memo)?, resolve(*b, replay, memo)?]),
    };
    memo[v] = Some(e.clone());
    Ok(e)
}

/// Summands of the variable's knot, stopping at non-sum definitions.
fn flatten(s: &Solved, v: VarId, out: &mut Vec<VarId>) {
    match s.def(v) {
        Def::Sum(a, b) => {
            flatten(s, *a, out);
            flatten(s, *b, out);
        }
        _ => out.push(v),
    }
}

/// `Γ` of a nontrivial variable: the summands of its companion. A sum is its
/// own companion.
fn gamma_vars(s: &Solved, v: VarId) -> Vec<VarId> {
    let mut out = Vec::new();
    match s.def(v) {
        Def::Cable { of, .. } => flatten(s, *of, &mut out),
        Def::Sum(..) => flatten(s, v, &mut out),
        Def::Unknot => {}
    }
    out
}

/// Graph kit of critical knot `k`, with witness components.
pub fn extract(r: &Rhd, k: &str) -> Result<ExtractionResult, ExtractError> {
    let solved = solve(r)?;
    let term = solved
        .knots
        .get(k)
        .cloned()
        .ok_or_else(|| ExtractError::UnknownComponent(k.to_string()))?;
    let expr = solved.expr(&term);
    let mut kit = GraphKit::default();
    let mut witness_r = BTreeMap::new();
    let mut witness_gamma = BTreeMap::new();

    if expr != KnotExpr::Unknot {
        let vars = &solved.replay.state.vars;
        let (root, root_gamma) = match &term {
            Term::Var(v) => (gamma_vars(&solved, *v), vars[*v].gamma_comp.clone()),
            Term::Torus(o) => (vec![o.inner], Some(o.gamma_comp.clone())),
            Term::Trivial => unreachable!("trivial terms have trivial expressions"),
        };
        if let Some(c) = root_gamma {
            witness_gamma.insert(KitNode::Target, c);
        }
        let mut next = 0usize;
        let mut queue = std::collections::VecDeque::new();
        let mut label_vars = |vs: Vec<VarId>, kit: &mut GraphKit, queue: &mut std::collections::VecDeque<_>| {
            let mut labels = Vec::new();
            for v in vs {
                let label = Label(next);
                next += 1;
                kit.elements.insert(label, solved.var_exprs[v].clone());
                witness_r.insert(label, vars[v].birth_comp.clone());
                labels.push(label);
                if solved.var_exprs[v] != KnotExpr::Unknot {
                    queue.push_back((label, v));
                }
            }
            labels
        };
        kit.root = label_vars(root, &mut kit, &mut queue);
        while let Some((label, v)) = queue.pop_front() {
            if let Some(c) = &vars[v].gamma_comp {
                witness_gamma.insert(KitNode::Label(label), c.clone());
            }
            let children = label_vars(gamma_vars(&solved, v), &mut kit, &mut queue);
            kit.gamma.insert(label, children);
        }
    }

    let knot_exprs = solved
        .knots
        .iter()
        .map(|(id, t)| (id.clone(), solved.expr(t)))
        .collect();
    let component_cores = solved
        .replay
        .created
        .iter()
        .filter_map(|(name, core)| {
            let e = match core {
                Core::Inner(v) => solved.var_exprs[*v].clone(),
                Core::Outer(o) => solved.expr(&Term::Torus(o.clone())),
                Core::Opaque => return None,
            };
            Some((name.clone(), e))
        })
        .collect();
    Ok(ExtractionResult {
        target: k.to_string(),
        expr,
        knot_exprs,
        kit,
        witness_r,
        witness_gamma,
        steps: solved.replay.steps,
        component_cores,
    })
}

/// Checks the kit and the witness tori: each label's knot is the core of its
/// `witness_r` component, and each nontrivial node is a cable of the core of
/// its `witness_gamma` component.
pub fn check_witnesses(res: &ExtractionResult) -> Result<(), String> {
    res.kit.check(&res.expr).map_err(|e| e.to_string())?;
    let core = |c: &String| {
        res.component_cores
            .get(c)
            .ok_or_else(|| format!("witness {c} is not a component"))
    };
    for (label, e) in &res.kit.elements {
        let c = res.witness_r.get(label).ok_or_else(|| format!("{label} has no witness tube"))?;
        if core(c)? != e {
            return Err(format!("core of {c} is {}, not {e}", core(c)?));
        }
    }
    let mut nodes: Vec<(KitNode, &KnotExpr)> = res
        .kit
        .elements
        .iter()
        .map(|(l, e)| (KitNode::Label(*l), e))
        .collect();
    nodes.push((KitNode::Target, &res.expr));
    for (node, e) in nodes {
        if *e == KnotExpr::Unknot {
            continue;
        }
        let c = res
            .witness_gamma
            .get(&node)
            .ok_or_else(|| format!("{node:?} has no companion witness"))?;
        let companion = core(c)?;
        let woven = match e {
            KnotExpr::Cable { companion: inner, .. } => inner.as_ref() == companion || e == companion,
            _ => e == companion,
        };
        if !woven {
            return Err(format!("{e} is not a cable of the core {companion} of {c}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{kit_of, KnotExpr as K};
    use crate::rhd::{build, build_cable, build_sum, build_unknot, parse_rhd};

    #[test]
    fn unknot_base_case() {
        let r = build_unknot();
        for k in ["s0", "k0"] {
            let res = extract(&r, k).unwrap();
            assert_eq!(res.expr, K::Unknot);
            assert!(res.kit.is_empty());
            check_witnesses(&res).unwrap();
        }
    }

    #[test]
    fn trefoil() {
        let r = build_cable(&build_unknot(), "s0", 2, 3).unwrap();
        let res = extract(&r, "s0").unwrap();
        assert_eq!(res.expr, K::torus(2, 3));
        assert_eq!(res.kit.element_multiset().unwrap(), vec!["U"]);
        assert_eq!(res.knot_exprs["x0"], K::torus(2, 3));
        assert_eq!(res.knot_exprs["k0"], K::Unknot);
        assert_eq!(res.steps.len(), 1);
        check_witnesses(&res).unwrap();
    }

    #[test]
    fn longitude_cable_is_the_same_knot() {
        let t = build_cable(&build_unknot(), "s0", 2, 5).unwrap();
        let r = build_cable(&t, "s0", 1, 5).unwrap();
        assert_eq!(extract(&r, "s0").unwrap().expr, extract(&t, "s0").unwrap().expr);
    }

    #[test]
    fn sum_kit() {
        let a = build_cable(&build_unknot(), "s0", 2, 3).unwrap();
        let b = build_cable(&build_unknot(), "s0", 2, 5).unwrap();
        let r = build_sum(&a, &b, "s0", "s0").unwrap();
        let res = extract(&r, "s0").unwrap();
        assert_eq!(res.expr, K::sum([K::torus(2, 3), K::torus(2, 5)]));
        assert_eq!(
            res.kit.element_multiset().unwrap(),
            vec!["U", "U", "cable(2,3,U)", "cable(2,5,U)"]
        );
        check_witnesses(&res).unwrap();
    }

    #[test]
    fn kits_match_the_expression() {
        let e = K::cable(3, 2, K::sum([K::torus(2, 3), K::cable(2, 7, K::torus(2, 3)), K::torus(3, 4)]));
        let res = extract(&build(&e).unwrap(), "s0").unwrap();
        assert_eq!(res.expr, crate::expr::normalize(&e).unwrap());
        assert_eq!(
            res.kit.element_multiset().unwrap(),
            kit_of(&e).unwrap().element_multiset().unwrap()
        );
        check_witnesses(&res).unwrap();
    }

    #[test]
    fn hopf_saddle_is_a_torus_knot() {
        let r = parse_rhd("source a split\nsource b hopf a\nsaddle x a:(2,3) b:(3,2)\nsink k x").unwrap();
        let res = extract(&r, "x").unwrap();
        assert_eq!(res.expr, K::torus(2, 3));
        assert_eq!(res.knot_exprs["a"], K::Unknot);
        assert_eq!(res.knot_exprs["b"], K::Unknot);
        assert_eq!(res.knot_exprs["k"], K::torus(2, 3));
        check_witnesses(&res).unwrap();
        check_witnesses(&extract(&r, "k").unwrap()).unwrap();
    }

    #[test]
    fn errors() {
        let r = build_unknot();
        assert_eq!(extract(&r, "zz"), Err(ExtractError::UnknownComponent("zz".into())));
        let bad = parse_rhd("sink k0 s0\nsource s0 split").unwrap();
        assert!(matches!(extract(&bad, "s0"), Err(ExtractError::InvalidDecomposition(_))));
    }
}
