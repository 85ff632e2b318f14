use std::collections::BTreeSet;
use std::fmt;

use super::Letter;

/// A finite ordered ranked tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    pub label: Letter,
    pub children: Vec<Tree>,
}

impl Tree {
    pub fn leaf(label: impl Into<Letter>) -> Self {
        Tree {
            label: label.into(),
            children: Vec::new(),
        }
    }

    pub fn node(label: impl Into<Letter>, children: Vec<Tree>) -> Self {
        Tree {
            label: label.into(),
            children,
        }
    }

    /// Node count.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Tree::size).sum::<usize>()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// The set of leaf labels.
    pub fn leaves(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut BTreeSet<Letter>) {
        if self.is_leaf() {
            out.insert(self.label.clone());
        }
        for c in &self.children {
            c.collect_leaves(out);
        }
    }

    /// Preorder traversal of all subtrees, `self` first.
    pub fn subtrees(&self) -> Vec<&Tree> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let t = out[i];
            out.extend(t.children.iter());
            i += 1;
        }
        out
    }

    /// Erases all marks.
    pub fn unmark(&self) -> Tree {
        Tree {
            label: self.label.unmarked(),
            children: self.children.iter().map(Tree::unmark).collect(),
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        if !self.children.is_empty() {
            f.write_str("(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
