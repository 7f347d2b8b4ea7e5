//! A level-linked skip list with a finger, used as a finger search index.
//!
//! Items are opaque `usize` handles kept in a caller-defined order; the list
//! never compares items itself. Searches take a monotone predicate (true on
//! a prefix of the list) and return the last node where it holds, starting
//! from the finger left by the previous operation. The expected number of
//! hops is logarithmic in the distance between the finger and the answer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NIL: u32 = u32::MAX;
const HEAD: u32 = 0;
const MAX_HEIGHT: usize = 32;

#[derive(Debug, Clone)]
struct Node {
    item: usize,
    next: Vec<u32>,
    prev: Vec<u32>,
}

/// Handle of a node in a [`FingerList`].
pub type NodeId = u32;

#[derive(Debug, Clone)]
pub struct FingerList {
    nodes: Vec<Node>,
    finger: u32,
    rng: ChaCha8Rng,
    /// Hops made by searches.
    pub nav_steps: u64,
    /// Hops made while splicing new nodes in.
    pub link_steps: u64,
}

impl FingerList {
    pub fn new(seed: u64) -> Self {
        Self {
            nodes: vec![Node {
                item: usize::MAX,
                next: vec![NIL; MAX_HEIGHT],
                prev: vec![NIL; MAX_HEIGHT],
            }],
            finger: HEAD,
            rng: ChaCha8Rng::seed_from_u64(seed),
            nav_steps: 0,
            link_steps: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn item(&self, node: NodeId) -> usize {
        self.nodes[node as usize].item
    }

    #[inline]
    fn height(&self, x: u32) -> usize {
        self.nodes[x as usize].next.len()
    }

    #[inline]
    fn next(&self, x: u32, l: usize) -> u32 {
        self.nodes[x as usize].next[l]
    }

    #[inline]
    fn prev(&self, x: u32, l: usize) -> u32 {
        self.nodes[x as usize].prev[l]
    }

    pub fn successor(&self, node: Option<NodeId>) -> Option<NodeId> {
        let n = self.next(node.unwrap_or(HEAD), 0);
        (n != NIL).then_some(n)
    }

    pub fn predecessor(&self, node: NodeId) -> Option<NodeId> {
        let p = self.prev(node, 0);
        (p != HEAD).then_some(p)
    }

    pub fn finger(&self) -> Option<NodeId> {
        (self.finger != HEAD).then_some(self.finger)
    }

    pub fn set_finger(&mut self, node: Option<NodeId>) {
        self.finger = node.unwrap_or(HEAD);
    }

    /// The last node whose item satisfies `pred` (`None` if no node does).
    /// `pred` must be true on a prefix of the list. The finger moves to the
    /// answer.
    pub fn last_true(&mut self, mut pred: impl FnMut(usize) -> bool) -> Option<NodeId> {
        let f = self.finger;
        let found = if f == HEAD || pred(self.nodes[f as usize].item) {
            self.search_forward(f, &mut pred)
        } else {
            self.search_backward(f, &mut pred)
        };
        self.finger = found;
        (found != HEAD).then_some(found)
    }

    /// From a node where `pred` holds, climb while the next node at the
    /// current top level still satisfies it, then descend.
    fn search_forward(&mut self, mut x: u32, pred: &mut impl FnMut(usize) -> bool) -> u32 {
        // The leftmost node known to fail the predicate.
        let mut bound = NIL;
        loop {
            let top = self.height(x) - 1;
            let y = self.next(x, top);
            if y == NIL || y == bound {
                break;
            }
            if pred(self.nodes[y as usize].item) {
                x = y;
                self.nav_steps += 1;
            } else {
                bound = y;
                break;
            }
        }
        for l in (0..self.height(x)).rev() {
            loop {
                let y = self.next(x, l);
                if y == NIL || y == bound {
                    break;
                }
                if pred(self.nodes[y as usize].item) {
                    x = y;
                    self.nav_steps += 1;
                } else {
                    bound = y;
                    break;
                }
            }
        }
        x
    }

    /// From a node where `pred` fails, find the first failing node by
    /// climbing and descending leftwards; the answer is its predecessor.
    fn search_backward(&mut self, mut x: u32, pred: &mut impl FnMut(usize) -> bool) -> u32 {
        // The rightmost node known to satisfy the predicate.
        let mut bound = HEAD;
        loop {
            let top = self.height(x) - 1;
            let y = self.prev(x, top);
            if y == HEAD || y == bound {
                break;
            }
            if pred(self.nodes[y as usize].item) {
                bound = y;
                break;
            }
            x = y;
            self.nav_steps += 1;
        }
        for l in (0..self.height(x)).rev() {
            loop {
                let y = self.prev(x, l);
                if y == HEAD || y == bound {
                    break;
                }
                if pred(self.nodes[y as usize].item) {
                    bound = y;
                    break;
                }
                x = y;
                self.nav_steps += 1;
            }
        }
        self.prev(x, 0)
    }

    fn random_height(&mut self) -> usize {
        let bits: u32 = self.rng.gen();
        (bits.trailing_ones() as usize + 1).min(MAX_HEIGHT - 1)
    }

    /// Splices a new node right after `after` (`None` = at the front).
    pub fn insert_after(&mut self, after: Option<NodeId>, item: usize) -> NodeId {
        let h = self.random_height();
        let new = self.nodes.len() as u32;
        self.nodes.push(Node {
            item,
            next: vec![NIL; h],
            prev: vec![NIL; h],
        });
        let mut x = after.unwrap_or(HEAD);
        for l in 0..h {
            while self.height(x) <= l {
                x = self.prev(x, l - 1);
                self.link_steps += 1;
            }
            let nx = self.next(x, l);
            self.nodes[new as usize].next[l] = nx;
            self.nodes[new as usize].prev[l] = x;
            if nx != NIL {
                self.nodes[nx as usize].prev[l] = new;
            }
            self.nodes[x as usize].next[l] = new;
        }
        new
    }

    /// Items in list order.
    pub fn items(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut x = self.next(HEAD, 0);
        while x != NIL {
            out.push(self.nodes[x as usize].item);
            x = self.next(x, 0);
        }
        out
    }
}
