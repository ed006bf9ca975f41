use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use super::{equal_normalized, normalize, KnotExpr, MalformedExpression};

/// Fresh label of a kit element. Distinct labels may carry isotopic knots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub usize);

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.0)
    }
}

/// A graph kit: the knots a graph knot is woven from, with the `Γ` map
/// sending each nontrivial element to the summands of its companion.
///
/// `root` is `Γ` of the knot the kit belongs to; that knot itself is not an
/// element.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphKit {
    pub elements: BTreeMap<Label, KnotExpr>,
    pub gamma: BTreeMap<Label, Vec<Label>>,
    pub root: Vec<Label>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KitDefect {
    #[error("gamma refers to unknown label {0}")]
    UnknownLabel(Label),
    #[error("gamma is cyclic through {0}")]
    Cycle(Label),
    #[error("gamma must be defined exactly on nontrivial elements; {0} violates this")]
    GammaDomain(Label),
    #[error("{0} is not a cable of the sum of its gamma")]
    NotWoven(String),
    #[error(transparent)]
    Malformed(#[from] MalformedExpression),
}

impl GraphKit {
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Element expressions in canonical form, as a sorted multiset of
    /// serializations.
    pub fn element_multiset(&self) -> Result<Vec<String>, MalformedExpression> {
        let mut out = self
            .elements
            .values()
            .map(|e| normalize(e).map(|n| n.serialize()))
            .collect::<Result<Vec<_>, _>>()?;
        out.sort();
        Ok(out)
    }

    /// Connected sum of the elements behind `labels` (a single element is
    /// returned as is, none gives the unknot).
    pub fn sum_of(&self, labels: &[Label]) -> Result<KnotExpr, KitDefect> {
        let mut parts = labels
            .iter()
            .map(|l| self.elements.get(l).cloned().ok_or(KitDefect::UnknownLabel(*l)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(match parts.len() {
            0 => KnotExpr::Unknot,
            1 => parts.pop().unwrap(),
            _ => KnotExpr::Sum(parts),
        })
    }

    /// Checks well-foundedness, the domain of `Γ`, and that every nontrivial
    /// element (and `target`, through `root`) is a cable of the connected sum
    /// of its `Γ`.
    pub fn check(&self, target: &KnotExpr) -> Result<(), KitDefect> {
        for (label, children) in &self.gamma {
            if !self.elements.contains_key(label) {
                return Err(KitDefect::UnknownLabel(*label));
            }
            if let Some(bad) = children.iter().find(|c| !self.elements.contains_key(c)) {
                return Err(KitDefect::UnknownLabel(*bad));
            }
        }
        self.check_acyclic()?;
        for (label, e) in &self.elements {
            let trivial = normalize(e)? == KnotExpr::Unknot;
            if trivial == self.gamma.contains_key(label) {
                return Err(KitDefect::GammaDomain(*label));
            }
            if let Some(children) = self.gamma.get(label) {
                woven(e, &self.sum_of(children)?)?;
            }
        }
        if normalize(target)? != KnotExpr::Unknot {
            woven(target, &self.sum_of(&self.root)?)?;
        } else if !self.root.is_empty() || !self.elements.is_empty() {
            return Err(KitDefect::NotWoven(format!("trivial {target} with a nonempty kit")));
        }
        Ok(())
    }

    fn check_acyclic(&self) -> Result<(), KitDefect> {
        // 0 = unseen, 1 = on stack, 2 = done
        let mut state: BTreeMap<Label, u8> = BTreeMap::new();
        for &start in self.gamma.keys() {
            if state.get(&start).copied().unwrap_or(0) == 2 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            state.insert(start, 1);
            while let Some((node, idx)) = stack.pop() {
                let children = self.gamma.get(&node).map(Vec::as_slice).unwrap_or(&[]);
                if idx < children.len() {
                    stack.push((node, idx + 1));
                    let child = children[idx];
                    match state.get(&child).copied().unwrap_or(0) {
                        1 => return Err(KitDefect::Cycle(child)),
                        0 => {
                            state.insert(child, 1);
                            stack.push((child, 0));
                        }
                        _ => {}
                    }
                } else {
                    state.insert(node, 2);
                }
            }
        }
        Ok(())
    }
}

/// `e` must be canonically `Cable(p, q, companion)` for some primitive
/// `(p, q)`; `p = 1` means `e` is the companion itself.
fn woven(e: &KnotExpr, companion: &KnotExpr) -> Result<(), KitDefect> {
    if equal_normalized(e, companion)? {
        return Ok(());
    }
    if let KnotExpr::Cable { companion: c, .. } = normalize(e)? {
        if equal_normalized(&c, companion)? {
            return Ok(());
        }
    }
    Err(KitDefect::NotWoven(format!("{e} over {companion}")))
}

/// Immediate `Γ` of a nontrivial canonical expression: the summands of its
/// companion. A bare sum is read as its own `(1, r)` cable.
pub(crate) fn gamma_children(e: &KnotExpr) -> Vec<KnotExpr> {
    match e {
        KnotExpr::Unknot => Vec::new(),
        KnotExpr::Cable { companion, .. } => match companion.as_ref() {
            KnotExpr::Sum(xs) => xs.clone(),
            other => vec![other.clone()],
        },
        KnotExpr::Sum(xs) => xs.clone(),
    }
}

/// The graph kit obtained by unrolling the canonical form of `e` as the fixed
/// expression. The kit of a trivial knot is empty.
pub fn kit_of(e: &KnotExpr) -> Result<GraphKit, MalformedExpression> {
    let e = normalize(e)?;
    let mut kit = GraphKit::default();
    if e == KnotExpr::Unknot {
        return Ok(kit);
    }
    let mut next = 0usize;
    let mut queue: VecDeque<(Option<Label>, KnotExpr)> = VecDeque::new();
    queue.push_back((None, e));
    while let Some((owner, expr)) = queue.pop_front() {
        let mut labels = Vec::new();
        for child in gamma_children(&expr) {
            let label = Label(next);
            next += 1;
            kit.elements.insert(label, child.clone());
            labels.push(label);
            if child != KnotExpr::Unknot {
                queue.push_back((Some(label), child));
            }
        }
        match owner {
            None => kit.root = labels,
            Some(l) => {
                kit.gamma.insert(l, labels);
            }
        }
    }
    Ok(kit)
}
