//! Breadth-first closure of finite matrix groups.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::ZMatrix;

/// A finite matrix group listed in breadth-first order over generator words.
#[derive(Clone, Debug)]
pub struct Closure {
    pub elements: Vec<ZMatrix>,
    /// `elements[i] = gens[g] * elements[p]` for `parent[i] = Some((p, g))`.
    pub parent: Vec<Option<(usize, usize)>>,
    index: HashMap<ZMatrix, usize>,
}

impl Closure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn position(&self, m: &ZMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &ZMatrix) -> bool {
        self.index.contains_key(m)
    }

    /// Generator indices of a word for element `i`, first applied first.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, g)) = self.parent[i] {
            w.push(g);
            i = p;
        }
        w.reverse();
        w
    }
}

/// Closes `gens` (square, size `n`) under multiplication. Fails when more than
/// `bound` elements appear.
pub fn close(n: usize, gens: &[ZMatrix], bound: usize) -> Result<Closure> {
    let id = ZMatrix::identity(n);
    let mut elements = vec![id.clone()];
    let mut parent = vec![None];
    let mut index = HashMap::new();
    index.insert(id, 0);
    let mut head = 0;
    while head < elements.len() {
        for (gi, g) in gens.iter().enumerate() {
            let h = g * &elements[head];
            if index.contains_key(&h) {
                continue;
            }
            if elements.len() >= bound {
                return Err(Error::GroupTooLarge(bound));
            }
            index.insert(h.clone(), elements.len());
            elements.push(h);
            parent.push(Some((head, gi)));
        }
        head += 1;
    }
    Ok(Closure { elements, parent, index })
}
